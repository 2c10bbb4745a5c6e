#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gencx/dolbeault.hpp"
#include "gencx/geometry.hpp"

namespace gencx {

/// Connections come in two presentations. Invariant: the fiber generators θ_j are coframe
/// generators with dθ_j = π^*χ_j. Chart: the base is a coordinate chart, the fiber carries
/// angle coordinates t_j and θ_j = dt_j + π^*β_j.
enum class BundleFlavor { Invariant, Chart };

struct BundleModel {
  ModelPtr base;
  ModelPtr total;
  int l = 0;
  BundleFlavor flavor = BundleFlavor::Invariant;
  std::vector<Form> beta;        // base 1-forms; zero in the invariant presentation unless shifted
  std::vector<Form> theta;       // connection forms on the total model
  std::vector<Form> fiber;       // flat fiber frame: dt_j (chart) or the generators θ_j (invariant)
  std::vector<Form> curvature;   // χ_j on the base
  Form omega;                    // Σ θ_{2j-1} ∧ θ_{2j}
  Form Omega;                    // π^*(dz_1 ∧ ... ∧ dz_n)

  int fiber_rank() const { return 2 * l; }
  int n() const { return mask_size(base->mask_of(Grade::H)); }

  /// Same masks and coefficients: base generators and variables keep their positions in the total model.
  Form pullback(const Form& f) const {
    if (f.is_zero()) return Form(total);
    if (f.model() != base) throw Error("pullback needs a form on the base model");
    return Form(total, f.terms());
  }
  /// Inverse of pullback on forms with no fiber generators and no angle dependence.
  Form pushdown(const Form& f) const {
    Mask fib = total->mask_of(Grade::F);
    FormTerms out;
    for (const auto& [m, c] : f.terms()) {
      if (m & fib) throw Error("form has fiber components: " + Form::monomial(total, m, c).str());
      for (VarRef v : c.support())
        if (v.kind == VarKind::Angle) throw Error("form depends on the fiber angles: " + Form::monomial(total, m, c).str());
      out.emplace(m, c);
    }
    return Form(base, out);
  }
  /// pr_2^*ω_T = Σ f_{2j-1} ∧ f_{2j} over the flat fiber frame.
  Form omega_T() const {
    Form w(total);
    for (int j = 0; j < l; ++j) w += wedge(fiber[2 * j], fiber[2 * j + 1]);
    return w;
  }
};

namespace detail {

inline void require_complex_base(const CoframeModel& base) {
  for (const auto& g : base.generators())
    if (g.grade != Grade::H && g.grade != Grade::A)
      throw Error("bundle base must be complex: generator '" + g.name + "' is tagged " + grade_name(g.grade));
  if (!base.vars().real().empty() || !base.vars().angle().empty())
    throw Error("bundle base may only declare complex chart variables");
  if (!base.has_tag(Grade::H)) throw Error("bundle base has no holomorphic generators");
}

/// Copies the base generators, in order, into a builder over `vars`.
inline void copy_base(ModelBuilder& b, const CoframeModel& base) {
  for (const auto& g : base.generators()) {
    if (g.exact) b.add_exact(g.name, base.vars().name(*g.exact));
    else b.add_generator(g.name, g.grade);
  }
  for (const auto& g : base.generators())
    if (!g.exact && g.conj >= 0) b.set_conjugate(g.name, base.generators()[g.conj].name);
  for (const auto& g : base.generators())
    if (!g.diff.empty()) b.set_diff(g.name, Form(b.draft(), g.diff));
}

inline Form holomorphic_volume(const ModelPtr& model) {
  Form Omega = Form::scalar(model, 1);
  const auto& gens = model->generators();
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (gens[k].grade == Grade::H) Omega = wedge(Omega, Form::generator(model, static_cast<int>(k)));
  return Omega;
}

inline void finish(BundleModel& B) {
  B.omega = Form(B.total);
  for (int j = 0; j < B.l; ++j) B.omega += wedge(B.theta[2 * j], B.theta[2 * j + 1]);
  B.Omega = holomorphic_volume(B.total);
  B.curvature.clear();
  for (int j = 0; j < B.fiber_rank(); ++j) {
    Form dtheta = B.theta[j].d();
    try {
      B.curvature.push_back(B.pushdown(dtheta));
    } catch (const Error& e) {
      throw Error("d theta" + std::to_string(j + 1) + " is not a pullback from the base: " + e.what());
    }
  }
}

inline std::string index_name(const std::string& stem, int j) { return stem + std::to_string(j); }

}  // namespace detail

/// Chart presentation: base is a coordinate chart, θ_j = dt_j + π^*β_j.
inline BundleModel build_bundle(const ModelPtr& base, int l, const std::vector<Form>& beta) {
  if (!base) throw Error("bundle needs a base model");
  detail::require_complex_base(*base);
  if (l < 0) throw Error("fiber half-rank l must be nonnegative");
  if (static_cast<int>(beta.size()) != 2 * l)
    throw Error("expected " + std::to_string(2 * l) + " connection 1-forms, got " + std::to_string(beta.size()));
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const Form& b = beta[j];
    if (b.is_zero()) continue;
    if (b.model() != base) throw Error("beta" + std::to_string(j + 1) + " must be a form on the base (no fiber generators)");
    if (!b.is_homogeneous(1)) throw Error("beta" + std::to_string(j + 1) + " must be a 1-form");
    if (!b.is_real()) throw Error("beta" + std::to_string(j + 1) + " must be real");
  }
  std::vector<std::string> angles;
  for (int j = 1; j <= 2 * l; ++j) angles.push_back(detail::index_name("t", j));
  VariableTable vars(base->vars().chart(), {}, angles);
  ModelBuilder b(vars, base->label() + " x T" + std::to_string(2 * l));
  detail::copy_base(b, *base);
  for (const auto& t : angles) b.add_exact("d" + t, t);

  BundleModel B;
  B.base = base;
  B.total = b.build();
  B.l = l;
  B.flavor = BundleFlavor::Chart;
  for (int j = 0; j < 2 * l; ++j) {
    B.beta.push_back(beta[j].is_zero() ? Form(base) : beta[j]);
    B.fiber.push_back(Form::generator(B.total, "d" + angles[j]));
    B.theta.push_back(B.fiber[j] + B.pullback(B.beta[j]));
  }
  detail::finish(B);
  return B;
}

/// Invariant presentation: fiber generators θ_1..θ_{2l} with dθ_j = π^*χ_j.
inline BundleModel build_invariant_bundle(const ModelPtr& base, int l, const std::vector<Form>& curvature) {
  if (!base) throw Error("bundle needs a base model");
  detail::require_complex_base(*base);
  require_invariant(*base, "an invariant bundle");
  if (l < 0) throw Error("fiber half-rank l must be nonnegative");
  if (static_cast<int>(curvature.size()) != 2 * l)
    throw Error("expected " + std::to_string(2 * l) + " curvature 2-forms, got " + std::to_string(curvature.size()));
  for (std::size_t j = 0; j < curvature.size(); ++j) {
    const Form& c = curvature[j];
    if (c.is_zero()) continue;
    if (c.model() != base) throw Error("curvature" + std::to_string(j + 1) + " must be a form on the base");
    check_real_two_form(c, "curvature" + std::to_string(j + 1));
    if (!c.d().is_zero()) throw Error("curvature" + std::to_string(j + 1) + " is not closed");
  }
  ModelBuilder b(VariableTable{}, base->label() + " bundle T" + std::to_string(2 * l));
  detail::copy_base(b, *base);
  std::vector<std::string> names;
  for (int j = 1; j <= 2 * l; ++j) {
    names.push_back(detail::index_name("theta", j));
    if (base->find(names.back())) throw Error("base already has a generator named '" + names.back() + "'");
    b.add_generator(names.back(), Grade::F);
  }
  for (int j = 0; j < 2 * l; ++j)
    if (!curvature[j].is_zero()) b.set_diff(names[j], Form(b.draft(), curvature[j].terms()));

  BundleModel B;
  B.base = base;
  B.total = b.build();
  B.l = l;
  B.flavor = BundleFlavor::Invariant;
  for (int j = 0; j < 2 * l; ++j) {
    B.beta.push_back(Form(base));
    B.fiber.push_back(Form::generator(B.total, names[j]));
    B.theta.push_back(B.fiber[j]);
  }
  detail::finish(B);
  return B;
}

/// Another connection on the same bundle: θ'_j = θ_j + π^*γ_j.
inline BundleModel shift_connection(const BundleModel& B, const std::vector<Form>& gamma) {
  if (gamma.size() != B.theta.size()) throw Error("connection shift needs one 1-form per fiber direction");
  BundleModel out = B;
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    if (gamma[j].is_zero()) continue;
    if (!gamma[j].is_homogeneous(1) || !gamma[j].is_real())
      throw Error("connection shift " + std::to_string(j + 1) + " must be a real 1-form");
    out.theta[j] = out.theta[j] + B.pullback(gamma[j]);
    out.beta[j] = out.beta[j] + gamma[j];
  }
  detail::finish(out);
  return out;
}

/// θ_j - θ'_j has no fiber generators and no angle dependence, for every j.
struct ConnectionDifference {
  bool pullback = true;
  int index = -1;  // first offending direction
  Form difference;
};

inline ConnectionDifference connection_difference(const BundleModel& a, const BundleModel& b) {
  if (a.total != b.total) throw Error("connections live on different bundles");
  ConnectionDifference out;
  for (std::size_t j = 0; j < a.theta.size(); ++j) {
    Form diff = a.theta[j] - b.theta[j];
    try {
      a.pushdown(diff);
    } catch (const Error&) {
      out.pullback = false;
      out.index = static_cast<int>(j);
      out.difference = diff;
      return out;
    }
  }
  return out;
}

struct CurvatureComponent {
  int index = 0;  // 0-based fiber direction
  int p = 0, q = 0;
  Form value;
};

struct CurvatureType {
  bool is_11 = true;
  std::vector<CurvatureComponent> offending;  // nonzero (2,0) and (0,2) parts
};

inline CurvatureType curvature_type(const BundleModel& B) {
  CurvatureType out;
  for (std::size_t j = 0; j < B.curvature.size(); ++j) {
    const Form& chi = B.curvature[j];
    if (chi.is_zero()) continue;
    for (auto [p, q] : {std::pair{2, 0}, std::pair{0, 2}}) {
      Form part = chi.type_part(p, q);
      if (!part.is_zero()) out.offending.push_back({static_cast<int>(j), p, q, part});
    }
  }
  out.is_11 = out.offending.empty();
  return out;
}

/// ∂̄β_j^{01}: in the invariant presentation this is the (0,2) part of the curvature.
inline Form dbar_beta01(const BundleModel& B, int j) {
  if (B.flavor == BundleFlavor::Chart) return B.beta[j].type_part(0, 1).delbar();
  return B.curvature[j].type_part(0, 2);
}

/// ρ = e^{η + iω} ∧ π^*Ω for a closed real 2-form η (zero by default).
inline Form construct_rho(const BundleModel& B, const Form& eta = Form()) {
  Form e = eta.is_zero() ? Form(B.total) : eta;
  if (e.model() != B.total) throw Error("eta must be a form on the total space");
  if (!e.is_zero()) {
    check_real_two_form(e, "eta");
    if (!e.d().is_zero()) throw Error("eta must be closed; d eta = " + e.d().str());
  }
  return wedge((e + CoeffFn(GaussRational::i()) * B.omega).exp(), B.Omega);
}

/// Status of one identity, with the nonzero residual when it fails.
struct EquationStatus {
  std::string name;
  bool holds = true;
  Form residual;
};

/// Components A^{rpq} of an exponent 2-form C on a product chart, with the equations forced by
/// dC ∧ Ω = 0 and, when supplied, the closedness components of a candidate B̂.
struct ComponentReport {
  std::map<Trigrade, Form> components;
  std::vector<EquationStatus> equations;

  Form component(int r, int p, int q) const {
    auto it = components.find(Trigrade{r, p, q});
    return it == components.end() ? Form() : it->second;
  }
  bool all_hold() const {
    for (const auto& e : equations)
      if (!e.holds) return false;
    return true;
  }
  const EquationStatus* first_failure() const {
    for (const auto& e : equations)
      if (!e.holds) return &e;
    return nullptr;
  }
};

struct ComponentOptions {
  std::optional<Form> Bhat;     // adds the (0,1,2) and (1,1,1) parts of dB̂
  std::optional<Form> omega_T;  // adds the check that A^{200} = i pr_2^*ω_T
};

inline ComponentReport component_equations_check(const Form& C, const ComponentOptions& opt = {}) {
  if (!C.model()) throw Error("exponent form must be attached to a model");
  if (!C.is_homogeneous(2)) throw Error("exponent must be a 2-form");
  const ModelPtr& model = C.model();
  if (!model->has_tag(Grade::F) || !model->has_tag(Grade::H))
    throw Error("component equations need a product chart with fiber and holomorphic generators");
  ComponentReport rep;
  rep.components = C.trigrade_decompose();
  auto A = [&](int r, int p, int q) {
    Form f = rep.component(r, p, q);
    return f.model() ? f : Form(model);
  };
  auto add = [&rep](const std::string& name, const Form& residual) {
    rep.equations.push_back({name, residual.is_zero(), residual});
  };
  add("dbar A002 = 0", A(0, 0, 2).delbar());
  add("dbar A101 + dF A002 = 0", A(1, 0, 1).delbar() + A(0, 0, 2).d_fiber());
  add("dbar A200 + dF A101 = 0", A(2, 0, 0).delbar() + A(1, 0, 1).d_fiber());
  add("dF A200 = 0", A(2, 0, 0).d_fiber());
  if (opt.Bhat) {
    Form dB = opt.Bhat->d();
    add("(dB)012 = del A002 + dbar Ahat = 0", dB.trigrade_part(0, 1, 2));
    add("(dB)111 = del A101 + conj(del A101) + dF Ahat = 0", dB.trigrade_part(1, 1, 1));
  }
  if (opt.omega_T) add("A200 = i pr2* omega_T", A(2, 0, 0) - CoeffFn(GaussRational::i()) * *opt.omega_T);
  return rep;
}

/// Same, after confirming ρ = e^C ∧ Ω with Ω the product of the holomorphic generators.
inline ComponentReport component_equations_check(const Form& rho, const Form& C, const ComponentOptions& opt = {}) {
  Form Omega = detail::holomorphic_volume(C.model());
  if (wedge(C.exp(), Omega) != rho) throw Error("input is not of the form e^C ^ Omega for the given exponent C");
  return component_equations_check(C, opt);
}

namespace detail {

inline int conj_generator(const CoframeModel& model, std::size_t a) {
  return model.exact_generator(VarRef{VarKind::Conj, static_cast<std::uint16_t>(a)});
}

/// ∫ c dz̄_a, monomial by monomial.
inline CoeffFn integrate_conj(const CoeffFn& c, std::size_t a) {
  VarRef v{VarKind::Conj, static_cast<std::uint16_t>(a)};
  CoeffFn out;
  for (const auto& [m, x] : c.terms())
    out.add_term(m * Monomial::variable(v), x * GaussRational::fraction(1, m.exponent(v) + 1));
  return out;
}

inline int polynomial_degree(const Monomial& m) {
  int d = 0;
  for (auto [s, e] : m.entries()) {
    VarKind k = VarRef::from_slot(s).kind;
    if (k == VarKind::Chart || k == VarKind::Conj) d += e;
  }
  return d;
}

/// Radial homotopy h with (d h + h d) = id on polynomial forms of positive degree in the chart
/// directions (angles are parameters): h(μ dx_I) = μ ι_E dx_I / (deg μ + |I|).
inline Form radial_homotopy(const Form& f) {
  const ModelPtr& model = f.model();
  VectorField E(model);
  const auto& chart = model->vars().chart();
  for (std::size_t a = 0; a < chart.size(); ++a) {
    VarRef z{VarKind::Chart, static_cast<std::uint16_t>(a)};
    VarRef zb{VarKind::Conj, static_cast<std::uint16_t>(a)};
    E.set(model->exact_generator(z), CoeffFn::variable(z));
    E.set(model->exact_generator(zb), CoeffFn::variable(zb));
  }
  Form out(model);
  for (const auto& [m, c] : f.terms()) {
    if (m == 0) continue;
    Form contracted = interior(E, Form::monomial(model, m));
    for (const auto& [mono, x] : c.terms()) {
      int w = polynomial_degree(mono) + mask_size(m);
      out += CoeffFn::monomial(mono, x * GaussRational::fraction(1, w)) * contracted;
    }
  }
  return out;
}

}  // namespace detail

/// η with ∂̄η = A for a ∂̄-closed (0,q) polynomial form, q ≥ 1. The lowest-index conjugate
/// variable is integrated first; each step removes one dz̄_a from the residual.
inline Form dbar_poincare_solve(const Form& A) {
  if (!A.model()) {
    if (A.is_zero()) return A;
    throw Error("form must be attached to a model");
  }
  const ModelPtr& model = A.model();
  if (A.is_zero()) return Form(model);
  int q = A.degree();
  if (q < 1) throw Error("dbar-Poincare needs a homogeneous form of positive degree");
  if (A.trigrade_part(0, 0, q) != A) throw Error("dbar-Poincare needs a form of pure type (0," + std::to_string(q) + ")");
  Form dA = A.delbar();
  if (!dA.is_zero()) throw Error("form is not dbar-closed; residual " + dA.str());
  Form eta(model), R = A;
  for (std::size_t a = 0; a < model->vars().chart().size() && !R.is_zero(); ++a) {
    Mask g = Mask{1} << detail::conj_generator(*model, a);
    Form G(model);
    for (const auto& [m, c] : R.terms()) {
      if (!(m & g)) continue;
      Mask rest = m & ~g;
      int s = wedge_sign(g, rest);
      CoeffFn ic = detail::integrate_conj(c, a);
      G.add_term(rest, s > 0 ? ic : -ic);
    }
    eta += G;
    R -= G.delbar();
  }
  if (!R.is_zero()) throw Error("dbar-Poincare left a residual " + R.str(), ErrorKind::Falsified);
  if (eta.delbar() != A) throw Error("dbar-Poincare verification failed", ErrorKind::Falsified);
  return eta;
}

/// Real χ with i∂∂̄χ = A - ∂η - conj(∂η). The residue is first integrated radially to a real
/// 1-form P, its (0,1) part is written as ∂̄g, and χ = -i(g - ḡ).
inline CoeffFn ddbar_solve(const Form& A, const Form& eta = Form()) {
  if (!A.model()) throw Error("form must be attached to a model");
  const ModelPtr& model = A.model();
  Form e = eta.is_zero() ? Form(model) : eta;
  if (e.model() != model) throw Error("eta must live on the same model");
  if (!e.is_zero() && e.trigrade_part(0, 0, 1) != e) throw Error("eta must be of type (0,1)");
  if (!A.is_zero() && A.trigrade_part(0, 1, 1) != A) throw Error("ddbar solver needs a form of type (1,1)");
  if (!A.is_real()) throw Error("ddbar solver needs a real form");
  Form de = e.del();
  Form R = A - de - de.conj();
  if (!R.del().is_zero() || !R.delbar().is_zero())
    throw Error("residue A - del eta - conj(del eta) is not closed: " + (R.del() + R.delbar()).str());
  if (R.is_zero()) return CoeffFn{};
  Form P = detail::radial_homotopy(R);
  Form g = dbar_poincare_solve(P.trigrade_part(0, 0, 1));
  CoeffFn gc = g.coefficient(0);
  CoeffFn chi = CoeffFn(-GaussRational::i()) * (gc - gc.conj());
  Form X = Form::scalar(model, chi);
  if (CoeffFn(GaussRational::i()) * X.delbar().del() != R) throw Error("ddbar verification failed", ErrorKind::Falsified);
  return chi;
}

/// Data showing that ρ̃ = e^{iω'} ∧ Ω is equivalent to ρ'_1 = e^{i pr_2^*ω_T} ∧ Ω on a product
/// chart: the fiber gauge G(z, t) = (z, t + ψ(z)) followed by the B-field B̂,
/// e^{B̂} ∧ ρ'_1 = (G^{-1})^*ρ̃. When every ψ_j vanishes this is a pure B-transform.
struct ProductCertificate {
  std::vector<CoeffFn> gauge;  // ψ_j, real polynomials on the base
  Form Bhat;                   // real, closed
  Form eta;                    // (0,1) with ∂̄η = A^{02}
  Form eta_prime;              // (1,0) with ∂̄η' = A^{11} - ∂η
  CoeffFn chi;                 // real, A^{11} = ∂η + conj(∂η) + i∂∂̄χ
  Form rho_tilde;              // e^{iω'} ∧ Ω
  Form rho_gauged;             // (G^{-1})^*ρ̃
  Form rho1;                   // e^{i pr_2^*ω_T} ∧ Ω
  Form ungauged_residual;      // dB̂ for the same assembly without the gauge
  ComponentReport components;
  bool closed = false;
  bool reproduces = false;

  bool pure_b() const {
    for (const auto& g : gauge)
      if (!g.is_zero()) return false;
    return true;
  }
};

/// A violated curvature condition on one fiber direction.
struct CurvatureViolation {
  int index = 0;
  std::string predicate;
  Form value;
};

struct LocalProductResult {
  bool ok = false;
  std::optional<ProductCertificate> certificate;
  std::vector<CurvatureViolation> violations;
};

inline const char* kFlatPredicate = "del beta01_j + conj(del beta01_j) = 0";
inline const char* kTypePredicate = "dbar beta01_j = 0";

namespace detail {

/// Pullback along a map acting on generators only: generator k goes to images[k].
/// Coefficients must not depend on the variables the map moves.
inline Form substitute_generators(const Form& f, const std::vector<Form>& images) {
  Form out(f.model());
  for (const auto& [m, c] : f.terms()) {
    Form term = Form::scalar(f.model(), c);
    for (Mask rest = m; rest; rest &= rest - 1) term = wedge(term, images[std::countr_zero(rest)]);
    out += term;
  }
  return out;
}

/// Monomials z^a zb^b with a > 0 and b > 0; the rest is pluriharmonic.
inline CoeffFn mixed_part(const CoeffFn& f) {
  CoeffFn out;
  for (const auto& [m, x] : f.terms()) {
    bool hol = false, anti = false;
    for (auto [s, e] : m.entries()) {
      VarKind k = VarRef::from_slot(s).kind;
      hol = hol || k == VarKind::Chart;
      anti = anti || k == VarKind::Conj;
    }
    if (hol && anti) out.add_term(m, x);
  }
  return out;
}

/// B̂ = A^{101} + conj + A^{002} + conj + A^{11} from the exponent C, with A^{11} fixed by η, χ.
struct Assembly {
  Form Bhat, eta, eta_prime;
};

inline Assembly assemble_b(const Form& C, const CoeffFn& chi) {
  const ModelPtr& T = C.model();
  const CoeffFn I(GaussRational::i());
  Assembly a;
  Form A101 = C.trigrade_part(1, 0, 1);
  Form A002 = C.trigrade_part(0, 0, 2);
  a.eta = dbar_poincare_solve(A002);
  Form X = Form::scalar(T, chi);
  Form deta = a.eta.del();
  Form A11 = deta + deta.conj() + I * X.delbar().del();
  a.eta_prime = a.eta.conj() - I * X.del();
  if (a.eta_prime.delbar() != A11 - deta) throw Error("eta' verification failed", ErrorKind::Falsified);
  a.Bhat = A101 + A101.conj() + A002 + A002.conj() + A11;
  if (!a.Bhat.is_real()) throw Error("assembled B is not real", ErrorKind::Falsified);
  return a;
}

}  // namespace detail

/// Flat chart bundles are locally equivalent to the product structure; otherwise the
/// (1,1) part of the curvature, ∂β^{01} + conj(∂β^{01}), or ∂̄β^{01} is reported.
/// The B-field alone suffices exactly when every ∂β_j^{01} vanishes; the mixed monomials of a
/// primitive of β_j are moved into the fiber gauge first.
inline LocalProductResult local_product_B(const BundleModel& B, const CoeffFn& chi = CoeffFn{}) {
  if (B.flavor != BundleFlavor::Chart) throw Error("local product construction needs a chart bundle");
  LocalProductResult out;
  for (int j = 0; j < B.fiber_rank(); ++j) {
    if (B.curvature[j].is_zero()) continue;
    Form b01 = B.beta[j].type_part(0, 1);
    Form del = b01.del();
    Form flat = del + del.conj();
    if (!flat.is_zero()) out.violations.push_back({j, kFlatPredicate, flat});
    Form db = b01.delbar();
    if (!db.is_zero()) out.violations.push_back({j, kTypePredicate, db});
  }
  if (!out.violations.empty()) return out;
  if (!chi.is_real()) throw Error("chi must be real");
  for (VarRef v : chi.support())
    if (v.kind == VarKind::Angle) throw Error("chi must be a function on the base");

  const ModelPtr& T = B.total;
  const CoeffFn I(GaussRational::i());
  ProductCertificate cert;
  Form C = I * B.omega;
  cert.rho_tilde = wedge(C.exp(), B.Omega);
  cert.rho1 = wedge((I * B.omega_T()).exp(), B.Omega);
  cert.chi = chi;

  // fiber gauge: t_j -> t_j + ψ_j, so (G^{-1})^* sends dt_j to dt_j - dψ_j
  std::vector<Form> images;
  for (std::size_t k = 0; k < T->rank(); ++k) images.push_back(Form::generator(T, static_cast<int>(k)));
  for (int j = 0; j < B.fiber_rank(); ++j) {
    Form phi = detail::radial_homotopy(B.beta[j]);
    if (phi.degree() > 0 || phi.d() != B.beta[j]) throw Error("flat connection form has no polynomial primitive", ErrorKind::Falsified);
    CoeffFn psi = detail::mixed_part(phi.coefficient(0));
    cert.gauge.push_back(psi);
    int k = T->index("d" + T->vars().angle()[j]);
    images[k] = images[k] - B.pullback(Form::scalar(B.base, psi).d());
  }
  cert.ungauged_residual = detail::assemble_b(C, chi).Bhat.d();
  Form Cg = detail::substitute_generators(C, images);
  cert.rho_gauged = detail::substitute_generators(cert.rho_tilde, images);
  auto a = detail::assemble_b(Cg, chi);
  cert.Bhat = a.Bhat;
  cert.eta = a.eta;
  cert.eta_prime = a.eta_prime;
  cert.components = component_equations_check(Cg, {cert.Bhat, B.omega_T()});
  cert.closed = cert.Bhat.d().is_zero();
  cert.reproduces = wedge(cert.Bhat.exp(), cert.rho1) == cert.rho_gauged;
  out.ok = cert.closed && cert.reproduces;
  out.certificate = std::move(cert);
  return out;
}

/// Solvability of d_F f = -rhs·σ for a d_F-closed fiber 1-form σ: exactly when σ has no
/// zero Fourier mode, i.e. [σ] = 0 in fiber H^1.
struct ObstructionVerdict {
  bool solvable = false;
  std::vector<CoeffFn> class_witness;  // zero-mode coefficient of σ on each fiber generator dt_k
  Form g;                              // d_F g = σ when solvable
  Form f;                              // f = -rhs·g
};

inline ObstructionVerdict fiber_exactness_obstruction(const Form& sigma, const CoeffFn& rhs) {
  if (!sigma.model()) throw Error("sigma must be attached to a model");
  const ModelPtr& model = sigma.model();
  Mask fib = model->mask_of(Grade::F);
  for (const auto& [m, c] : sigma.terms())
    if (mask_size(m) != 1 || !(m & fib)) throw Error("sigma must be a 1-form along the fiber generators");
  Form dsigma = sigma.d_fiber();
  if (!dsigma.is_zero()) throw Error("sigma is not closed along the fiber: dF sigma = " + dsigma.str());
  for (VarRef v : rhs.support())
    if (v.kind == VarKind::Angle) throw Error("rhs must not depend on the fiber angles");

  for (std::size_t k = 0; k < model->rank(); ++k)
    if ((fib >> k) & 1 && !model->generators()[k].exact)
      throw Error("fiber generator '" + model->generators()[k].name + "' has no angle coordinate");
  std::size_t na = model->vars().angle().size();
  std::vector<int> gen_of(na);
  for (std::size_t a = 0; a < na; ++a) gen_of[a] = model->exact_generator(VarRef{VarKind::Angle, static_cast<std::uint16_t>(a)});
  ObstructionVerdict out;
  out.class_witness.assign(na, CoeffFn{});
  CoeffFn g;
  for (std::size_t a = 0; a < na; ++a) {
    CoeffFn c = sigma.coefficient(Mask{1} << gen_of[a]);
    for (const auto& [mono, x] : c.terms()) {
      int first = -1;
      for (std::size_t b = 0; b < na && first < 0; ++b)
        if (mono.exponent(VarRef{VarKind::Angle, static_cast<std::uint16_t>(b)}) != 0) first = static_cast<int>(b);
      if (first < 0) {
        out.class_witness[a].add_term(mono, x);
      } else if (first == static_cast<int>(a)) {
        int k = mono.exponent(VarRef{VarKind::Angle, static_cast<std::uint16_t>(a)});
        g.add_term(mono, x / (GaussRational::i() * GaussRational(k)));
      }
    }
  }
  bool exact_class = true;
  for (const auto& w : out.class_witness)
    if (!w.is_zero()) exact_class = false;
  out.g = Form::scalar(model, exact_class ? g : CoeffFn{});
  if (rhs.is_zero()) {
    out.solvable = true;
    out.f = Form(model);
    return out;
  }
  out.solvable = exact_class;
  if (!out.solvable) return out;
  if (out.g.d_fiber() != sigma) throw Error("fiber primitive verification failed", ErrorKind::Falsified);
  out.f = Form::scalar(model, -rhs * g);
  if (out.f.d_fiber() != -rhs * sigma)
    throw Error("fiber equation verification failed", ErrorKind::Falsified);
  return out;
}

}  // namespace gencx
