#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "gencx/exterior.hpp"

namespace gencx::testing {

/// Small random elements for the property tests. Deterministic for a given seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  GaussRational scalar() {
    static const int dens[] = {1, 1, 2, 3};
    int d1 = dens[integer(0, 3)], d2 = dens[integer(0, 3)];
    return GaussRational(mpq_class(integer(-3, 3), d1), mpq_class(coin() ? integer(-3, 3) : 0, d2));
  }
  GaussRational nonzero_scalar() {
    GaussRational s;
    while (s.is_zero()) s = scalar();
    return s;
  }

  /// Up to `terms` monomials in the model variables; angle characters in [-2, 2].
  CoeffFn coeff(const CoframeModel& model, int terms = 3, int max_exp = 2) {
    CoeffFn f;
    auto vars = model.vars().all();
    if (vars.empty()) return CoeffFn(scalar());
    for (int k = integer(1, terms); k > 0; --k) {
      Monomial m;
      for (VarRef v : vars) {
        int e = v.kind == VarKind::Angle ? integer(-2, 2) : integer(0, max_exp);
        if (e != 0 && integer(0, 2) == 0) m = m * Monomial::variable(v, e);
      }
      f.add_term(m, scalar());
    }
    return f;
  }

  Mask subset(const CoframeModel& model, int degree) {
    int n = static_cast<int>(model.rank());
    std::vector<int> idx(n);
    for (int k = 0; k < n; ++k) idx[k] = k;
    std::shuffle(idx.begin(), idx.end(), rng_);
    Mask m = 0;
    for (int k = 0; k < degree && k < n; ++k) m |= Mask{1} << idx[k];
    return m;
  }

  Form form(const ModelPtr& model, int degree, int terms = 3) {
    Form f(model);
    if (degree < 0 || degree > static_cast<int>(model->rank())) return f;
    for (int k = integer(1, terms); k > 0; --k) f += Form::monomial(model, subset(*model, degree), coeff(*model));
    return f;
  }
  /// Mixed-degree form.
  Form mixed_form(const ModelPtr& model, int terms = 4) {
    Form f(model);
    for (int k = integer(1, terms); k > 0; --k) f += form(model, integer(0, static_cast<int>(model->rank())), 1);
    return f;
  }
  VectorField vector(const ModelPtr& model) {
    VectorField v(model);
    for (std::size_t k = 0; k < model->rank(); ++k)
      if (coin()) v.set(static_cast<int>(k), coeff(*model, 2, 1));
    return v;
  }
  /// Constant-coefficient vector field.
  VectorField constant_vector(const ModelPtr& model) {
    VectorField v(model);
    for (std::size_t k = 0; k < model->rank(); ++k)
      if (coin()) v.set(static_cast<int>(k), CoeffFn(scalar()));
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gencx::testing

#include <map>

#include "gencx/linalg.hpp"

namespace gencx::testing {

/// Plain oracle: Betti numbers of the invariant complex (Λ•, d), straight from the mask basis.
inline std::map<int, int> de_rham_dims(const ModelPtr& model) {
  int n = static_cast<int>(model->rank());
  std::map<int, std::vector<Mask>> by_degree;
  for (Mask m = 0; m < (Mask{1} << n); ++m) by_degree[mask_size(m)].push_back(m);
  std::map<int, int> ranks;  // rank of d : Λ^k -> Λ^{k+1}
  for (int k = 0; k <= n; ++k) {
    const auto& src = by_degree[k];
    const auto& dst = by_degree[k + 1];
    Matrix a(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      Form df = Form::monomial(model, src[c]).d();
      for (std::size_t r = 0; r < dst.size(); ++r) a(r, c) = df.coefficient(dst[r]).constant_term();
    }
    ranks[k] = static_cast<int>(rank(a));
  }
  std::map<int, int> b;
  for (int k = 0; k <= n; ++k)
    b[k] = static_cast<int>(by_degree[k].size()) - ranks[k] - (k > 0 ? ranks[k - 1] : 0);
  return b;
}

/// Plain oracle: h^{p,q} of (Λ^{p,•}, ∂̄) on an invariant H/A-tagged model.
inline std::map<std::pair<int, int>, int> dolbeault_dims(const ModelPtr& model) {
  int n = static_cast<int>(model->rank());
  std::map<std::pair<int, int>, std::vector<Mask>> by_type;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    Trigrade g = Form::monomial(model, m).trigrade_of(m);
    by_type[{g.p, g.q}].push_back(m);
  }
  const std::vector<Mask> none;
  auto masks_of = [&](int p, int q) -> const std::vector<Mask>& {
    auto it = by_type.find({p, q});
    return it == by_type.end() ? none : it->second;
  };
  auto dbar_rank = [&](int p, int q) {
    const auto& src = masks_of(p, q);
    const auto& dst = masks_of(p, q + 1);
    Matrix a(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      Form df = Form::monomial(model, src[c]).delbar();
      for (std::size_t r = 0; r < dst.size(); ++r) a(r, c) = df.coefficient(dst[r]).constant_term();
    }
    return static_cast<int>(rank(a));
  };
  std::map<std::pair<int, int>, int> h;
  for (const auto& [pq, masks] : by_type) {
    auto [p, q] = pq;
    h[pq] = static_cast<int>(masks.size()) - dbar_rank(p, q) - (q > 0 ? dbar_rank(p, q - 1) : 0);
  }
  return h;
}

}  // namespace gencx::testing

#include "gencx/bundles.hpp"
#include "gencx/models.hpp"

namespace gencx::testing {

/// Random real constant 2-form X + conj(X) on an invariant complex base.
inline Form real_two_form(Gen& g, const ModelPtr& base) {
  Form x(base);
  for (int k = g.integer(1, 3); k > 0; --k) x += Form::monomial(base, g.subset(*base, 2), CoeffFn(g.scalar()));
  return x + x.conj();
}

/// Invariant T^2-bundle over T^2_C or T^4_C with random real curvature; over T^4_C the
/// curvature types are mixed, over T^2_C every 2-form is (1,1).
inline BundleModel random_invariant_bundle(Gen& g, int n) {
  ModelPtr base = models::complex_torus(n);
  std::vector<Form> chi;
  for (int j = 0; j < 2; ++j) chi.push_back(g.coin() ? real_two_form(g, base) : Form(base));
  return build_invariant_bundle(base, 1, chi);
}

/// Same, with every curvature component of type (1,1).
inline BundleModel random_11_bundle(Gen& g, int n) {
  ModelPtr base = models::complex_torus(n);
  std::vector<Form> chi;
  for (int j = 0; j < 2; ++j) {
    Form x = real_two_form(g, base).type_part(1, 1);
    chi.push_back(x);
  }
  return build_invariant_bundle(base, 1, chi);
}

/// Real polynomial p + conj(p) in the chart variables.
inline CoeffFn real_polynomial(Gen& g, const ModelPtr& chart) {
  CoeffFn p = g.coeff(*chart, 3, 2);
  return p + p.conj();
}

/// Flat chart bundle over C^n: β_j = dφ_j with φ_j real polynomials.
inline BundleModel flat_chart_bundle(Gen& g, int n, int l = 1) {
  ModelPtr base = models::complex_chart(n);
  std::vector<Form> beta;
  for (int j = 0; j < 2 * l; ++j) beta.push_back(Form::scalar(base, real_polynomial(g, base)).d());
  return build_bundle(base, l, beta);
}

/// Flat chart bundle with pluriharmonic potentials φ_j = h_j + conj(h_j), h_j holomorphic.
inline BundleModel pluriharmonic_chart_bundle(Gen& g, int n, int l = 1) {
  ModelPtr base = models::complex_chart(n);
  std::vector<Form> beta;
  for (int j = 0; j < 2 * l; ++j) {
    CoeffFn h;
    for (int t = g.integer(1, 3); t > 0; --t) {
      Monomial m;
      for (int a = 0; a < n; ++a) m = m * Monomial::variable(VarRef{VarKind::Chart, static_cast<std::uint16_t>(a)}, g.integer(0, 2));
      h.add_term(m, g.scalar());
    }
    beta.push_back(Form::scalar(base, h + h.conj()).d());
  }
  return build_bundle(base, l, beta);
}

/// Chart connection with (1,1) curvature: β = γ + conj(γ) for a random (0,1) polynomial form γ
/// whose ∂̄ vanishes (coefficients holomorphic in the barred variables they multiply).
inline BundleModel nonflat_chart_bundle(Gen& g, int n) {
  ModelPtr base = models::complex_chart(n);
  for (;;) {
    std::vector<Form> beta;
    for (int j = 0; j < 2; ++j) {
      Form gamma(base);
      for (int a = 0; a < n; ++a) {
        int k = base->exact_generator(VarRef{VarKind::Conj, static_cast<std::uint16_t>(a)});
        // coefficient z_a^e: ∂̄-closed since it has no barred variable
        CoeffFn c = CoeffFn::monomial(Monomial::variable(VarRef{VarKind::Chart, static_cast<std::uint16_t>(a)}, g.integer(1, 2)),
                                      g.scalar());
        gamma += Form::generator(base, k, c);
      }
      beta.push_back(gamma + gamma.conj());
    }
    BundleModel B = build_bundle(base, 1, beta);
    bool flat = true;
    for (const auto& c : B.curvature) flat = flat && c.is_zero();
    if (!flat) return B;
  }
}

/// Kodaira-Thurston in the invariant presentation: base T^2_C, dθ_2 = e1^e2 = (i/2) dz^dzb.
inline BundleModel kt_invariant_bundle() {
  ModelPtr base = models::complex_torus(1);
  Form chi2 = GaussRational::fraction(1, 2) * GaussRational::i() * wedge(Form::generator(base, "dz"), Form::generator(base, "dzb"));
  return build_invariant_bundle(base, 1, {Form(base), chi2});
}

/// Kodaira-Thurston on a chart: β_2 = (i/4)(z dzb - zb dz), curvature (i/2) dz^dzb.
inline BundleModel kt_chart_bundle() {
  ModelPtr base = models::complex_chart(1);
  CoeffFn z = CoeffFn::variable(VarRef{VarKind::Chart, 0});
  CoeffFn zb = CoeffFn::variable(VarRef{VarKind::Conj, 0});
  GaussRational c = GaussRational::fraction(1, 4) * GaussRational::i();
  Form beta2 = c * (Form::generator(base, "dzb") * z - Form::generator(base, "dz") * zb);
  return build_bundle(base, 1, {Form(base), beta2});
}

}  // namespace gencx::testing

namespace gencx::testing {

/// Trivial bundle C x T^2 with fiber form ω_F = dt1^dt2 and closed fiber 1-form σ = dt1,
/// twisted by a (1,0)- or (0,1)-form A: iω = iω_F + (A - conj A)^σ.
struct TwistedProduct {
  ModelPtr model;
  Form A, sigma, omega_F, omega;
  CoeffFn z, zb;

  Form dz() const { return Form::generator(model, "dz"); }
  Form dzb() const { return Form::generator(model, "dzb"); }
};

inline TwistedProduct twisted_product(const std::function<Form(const TwistedProduct&)>& make_A) {
  TwistedProduct t;
  t.model = models::product_chart(1, 1);
  t.z = CoeffFn::variable(VarRef{VarKind::Chart, 0});
  t.zb = CoeffFn::variable(VarRef{VarKind::Conj, 0});
  t.sigma = Form::generator(t.model, "dt1");
  t.omega_F = wedge(t.sigma, Form::generator(t.model, "dt2"));
  t.A = make_A(t);
  // ω = ω_F - i(A - Ā)^σ
  t.omega = t.omega_F - GaussRational::i() * wedge(t.A - t.A.conj(), t.sigma);
  return t;
}

/// A = i z zb dz: locally not B-equivalent to the product.
inline TwistedProduct non_product_example() {
  return twisted_product([](const TwistedProduct& t) { return GaussRational::i() * (t.z * t.zb * t.dz()); });
}

/// A_1 = (z^2/2 + z zb) dzb and A_2 = z dzb: B-equivalent to the product.
inline TwistedProduct product_example(int j) {
  return twisted_product([j](const TwistedProduct& t) {
    if (j == 1) return (GaussRational::fraction(1, 2) * t.z * t.z + t.z * t.zb) * t.dzb();
    return t.z * t.dzb();
  });
}

}  // namespace gencx::testing

#include "gencx/spectral.hpp"

namespace gencx::testing {

/// Random filtered complex in degrees 0..top. Differentials are built from the top down:
/// each column of d_k is a random element of ker d_{k+1} ∩ F^{level}, so d^2 = 0 and d
/// preserves the filtration by construction.
inline FilteredComplex random_filtered_complex(Gen& g, int max_dim = 4, int max_level = 3) {
  FilteredComplex fc;
  int top = g.integer(1, 3);
  fc.level.resize(top + 1);
  for (int k = 0; k <= top; ++k)
    for (int i = g.integer(1, max_dim); i > 0; --i) fc.level[k].push_back(g.integer(0, max_level));
  fc.d.resize(top);
  auto small = [&g]() { return GaussRational(g.integer(-2, 2), g.coin() ? 0 : g.integer(-1, 1)); };
  for (int k = top - 1; k >= 0; --k) {
    Matrix dk(fc.dim(k + 1), fc.dim(k));
    for (std::size_t j = 0; j < fc.dim(k); ++j) {
      int p = fc.level[k][j];
      std::vector<std::size_t> allowed;
      for (std::size_t i = 0; i < fc.dim(k + 1); ++i)
        if (fc.level[k + 1][i] >= p) allowed.push_back(i);
      if (allowed.empty() || g.integer(0, 3) == 0) continue;
      Matrix next = k + 1 < top ? fc.d[k + 1] : Matrix(0, fc.dim(k + 1));
      Matrix sub(next.rows(), allowed.size());
      for (std::size_t i = 0; i < next.rows(); ++i)
        for (std::size_t a = 0; a < allowed.size(); ++a) sub(i, a) = next(i, allowed[a]);
      for (const auto& v : nullspace(sub)) {
        GaussRational c = small();
        for (std::size_t a = 0; a < allowed.size(); ++a) dk(allowed[a], j) += c * v[a];
      }
    }
    fc.d[k] = dk;
  }
  return fc;
}

/// Two-degree complex a0, a1, a2 → b0, b1, b2 with d a0 = b1 crossing one filtration step.
inline FilteredComplex six_dimensional_complex() {
  FilteredComplex fc;
  fc.level = {{0, 1, 1}, {0, 1, 2}};
  fc.labels = {{"a0", "a1", "a2"}, {"b0", "b1", "b2"}};
  Matrix d(3, 3);
  d(1, 0) = 1;
  fc.d = {d};
  return fc;
}

}  // namespace gencx::testing
