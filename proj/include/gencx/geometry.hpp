#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gencx/exterior.hpp"
#include "gencx/linalg.hpp"

namespace gencx {

/// Section X + ξ of (T ⊕ T*) ⊗ C.
struct GenVector {
  VectorField vec;
  Form cov;

  GenVector() = default;
  GenVector(VectorField v, Form c) : vec(std::move(v)), cov(std::move(c)) {
    if (!vec.model()) vec = VectorField(cov.model());
    if (!cov.model()) cov = Form(vec.model());
    if (!cov.is_homogeneous(1)) throw Error("covector part must be a 1-form");
  }
  static GenVector vector(const VectorField& v) { return {v, Form(v.model())}; }
  static GenVector covector(const Form& f) { return {VectorField(f.model()), f}; }
  /// e_k for k < N is the frame vector E_k, for k >= N the coframe element e^{k-N}.
  static GenVector unit(const ModelPtr& model, int k) {
    int n = static_cast<int>(model->rank());
    if (k < n) return vector(VectorField::frame(model, k));
    return covector(Form::generator(model, k - n));
  }
  static GenVector from_coordinates(const ModelPtr& model, const std::vector<GaussRational>& x) {
    std::size_t n = model->rank();
    if (x.size() != 2 * n) throw Error("coordinate vector length mismatch");
    VectorField v(model);
    Form c(model);
    for (std::size_t k = 0; k < n; ++k) {
      v.set(static_cast<int>(k), CoeffFn(x[k]));
      c += Form::generator(model, static_cast<int>(k), CoeffFn(x[n + k]));
    }
    return {v, c};
  }

  const ModelPtr& model() const { return vec.model() ? vec.model() : cov.model(); }
  bool is_zero() const { return vec.is_zero() && cov.is_zero(); }
  bool has_constant_coefficients() const {
    for (const auto& [k, f] : vec.components())
      if (!f.is_constant()) return false;
    return cov.has_constant_coefficients();
  }
  /// Frame coordinates (X^1..X^N, ξ_1..ξ_N) of a constant section.
  std::vector<GaussRational> coordinates() const {
    std::size_t n = model()->rank();
    std::vector<GaussRational> x(2 * n);
    for (const auto& [k, f] : vec.components()) x[k] = f.constant_value();
    for (const auto& [m, f] : cov.terms()) x[n + std::countr_zero(m)] = f.constant_value();
    return x;
  }

  GenVector operator+(const GenVector& o) const { return {vec + o.vec, cov + o.cov}; }
  GenVector operator-(const GenVector& o) const { return {vec - o.vec, cov - o.cov}; }
  GenVector operator-() const { return {-vec, -cov}; }
  friend GenVector operator*(const CoeffFn& f, const GenVector& u) { return {f * u.vec, f * u.cov}; }
  friend bool operator==(const GenVector& a, const GenVector& b) { return a.vec == b.vec && a.cov == b.cov; }
  GenVector conj() const { return {vec.conj(), cov.conj()}; }
  GenVector at(const ExactPoint& p) const { return {vec.at(p), cov.at(p)}; }

  std::string str() const {
    if (is_zero()) return "0";
    if (cov.is_zero()) return vec.str();
    if (vec.is_zero()) return cov.str();
    std::string c = cov.str();
    return vec.str() + (c[0] == '-' ? " - " + c.substr(1) : " + " + c);
  }
};

/// <X+ξ, Y+η> = (ξ(Y) + η(X)) / 2.
inline CoeffFn inner_pairing(const GenVector& u, const GenVector& v) {
  CoeffFn s = interior(v.vec, u.cov).coefficient(0) + interior(u.vec, v.cov).coefficient(0);
  return s * CoeffFn(GaussRational::fraction(1, 2));
}

/// [X+ξ, Y+η] = [X,Y] + L_X η - L_Y ξ - d(ι_X η - ι_Y ξ)/2.
inline GenVector courant_bracket(const GenVector& u, const GenVector& v) {
  Form corr = interior(u.vec, v.cov) - interior(v.vec, u.cov);
  Form cov = lie(u.vec, v.cov) - lie(v.vec, u.cov) - CoeffFn(GaussRational::fraction(1, 2)) * corr.d();
  return {lie_bracket(u.vec, v.vec), cov};
}

/// (X+ξ)·φ = ι_X φ + ξ ∧ φ.
inline Form spinor_action(const GenVector& u, const Form& phi) { return interior(u.vec, phi) + wedge(u.cov, phi); }

/// (σ1, σ2) = (α(σ1) ∧ σ2)_top.
inline Form mukai_pairing(const Form& s1, const Form& s2) { return wedge(s1.alpha(), s2).top_component(); }

/// e^B(X + ξ) = X + ξ - ι_X B.
inline GenVector b_shear(const GenVector& u, const Form& B) { return {u.vec, u.cov - interior(u.vec, B)}; }

/// Deterministic rational sample points. Angle values are unit Gaussian rationals e^{it}.
inline std::vector<ExactPoint> sample_grid(const VariableTable& vars, int count = 16) {
  auto q = [](long a, long b) { return mpq_class(a, b); };
  const std::vector<GaussRational> chart = {
      {q(1, 2), q(1, 3)},  {q(-1, 3), q(1, 4)}, {q(2, 3), q(-1, 2)}, {q(1, 5), q(2, 5)},
      {q(-3, 4), q(-1, 5)}, {q(1, 7), q(0, 1)}, {q(0, 1), q(2, 5)},  {q(-1, 2), q(1, 2)},
      {q(3, 5), q(1, 6)},  {q(-2, 7), q(-3, 7)}, {q(1, 1), q(1, 9)},  {q(-1, 6), q(5, 6)},
      {q(2, 9), q(-4, 9)}, {q(5, 8), q(3, 8)},  {q(-1, 1), q(0, 1)}, {q(3, 10), q(-7, 10)}};
  const std::vector<GaussRational> unit = {
      {q(1, 1), q(0, 1)},     {q(0, 1), q(1, 1)},      {q(3, 5), q(4, 5)},      {q(-4, 5), q(3, 5)},
      {q(5, 13), q(12, 13)},  {q(-12, 13), q(-5, 13)}, {q(8, 17), q(-15, 17)},  {q(7, 25), q(24, 25)},
      {q(-3, 5), q(-4, 5)},   {q(20, 29), q(21, 29)},  {q(-1, 1), q(0, 1)},     {q(12, 37), q(-35, 37)},
      {q(-9, 41), q(40, 41)}, {q(0, 1), q(-1, 1)},     {q(28, 53), q(45, 53)},  {q(-11, 61), q(-60, 61)}};
  const std::vector<mpq_class> reals = {q(1, 2),  q(-1, 3), q(2, 3),  q(1, 5),  q(-3, 4), q(1, 7),
                                        q(5, 2),  q(-1, 2), q(3, 5),  q(-2, 7), q(1, 1),  q(-1, 6),
                                        q(2, 9),  q(5, 8),  q(-1, 1), q(3, 10)};
  std::vector<ExactPoint> pts;
  for (int k = 0; k < count; ++k) {
    ExactPoint p;
    for (std::size_t a = 0; a < vars.chart().size(); ++a) p.chart.push_back(chart[(k + 5 * a) % chart.size()]);
    for (std::size_t a = 0; a < vars.real().size(); ++a) p.real.push_back(reals[(k + 7 * a) % reals.size()]);
    for (std::size_t a = 0; a < vars.angle().size(); ++a)
      p.angle_character.push_back(unit[(k + 3 * a) % unit.size()]);
    pts.push_back(std::move(p));
  }
  return pts;
}

inline std::string point_str(const VariableTable& vars, const ExactPoint& p) {
  std::string out;
  auto add = [&out](const std::string& s) { out += (out.empty() ? "" : ", ") + s; };
  for (std::size_t a = 0; a < p.chart.size() && a < vars.chart().size(); ++a)
    add(vars.chart()[a] + "=" + p.chart[a].str());
  for (std::size_t a = 0; a < p.real.size() && a < vars.real().size(); ++a)
    add(vars.real()[a] + "=" + p.real[a].get_str());
  for (std::size_t a = 0; a < p.angle_character.size() && a < vars.angle().size(); ++a)
    add("E(" + vars.angle()[a] + ")=" + p.angle_character[a].str());
  return out.empty() ? "(invariant)" : out;
}

/// Pure-spinor datum ρ = e^{B + iω} ∧ Ω.
struct GcsSpec {
  Form B;
  Form omega;
  Form Omega;
};

/// Throws unless Ω is a nonzero homogeneous decomposable form: (ι_S Ω) ∧ Ω = 0 for all (k-1)-subsets S.
inline void check_decomposable(const Form& Omega) {
  int k = Omega.degree();
  if (Omega.is_zero() || k < 0) throw Error("Omega must be a nonzero homogeneous form");
  if (k <= 1) return;
  const ModelPtr& model = Omega.model();
  int n = static_cast<int>(model->rank());
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    if (mask_size(s) != k - 1) continue;
    Form c = Omega;
    for (Mask rest = s; rest; rest &= rest - 1) c = interior(VectorField::frame(model, std::countr_zero(rest)), c);
    if (!wedge(c, Omega).is_zero()) throw Error("Omega is not decomposable (contraction by " + model->mask_str(s) + ")");
  }
}

inline void check_real_two_form(const Form& f, const std::string& what) {
  if (!f.is_homogeneous(2)) throw Error(what + " must be a 2-form");
  if (!f.is_real()) throw Error(what + " must be real");
}

struct PureSpinor {
  Form rho;
  CoeffFn pairing;          // top coefficient of (ρ, ρ̄)
  bool symbolic = false;    // pairing is a nonzero constant
  int points_checked = 0;
};

/// Expands ρ and certifies (ρ, ρ̄) ≠ 0: exactly when the top coefficient is a nonzero constant,
/// otherwise at every sample point. Degeneracy is reported as a falsified claim with the point.
inline PureSpinor pure_spinor(const GcsSpec& spec, const std::vector<ExactPoint>& extra_points = {}) {
  const ModelPtr& model = spec.Omega.model();
  if (!model) throw Error("Omega must be attached to a model");
  check_real_two_form(spec.B, "B");
  check_real_two_form(spec.omega, "omega");
  check_decomposable(spec.Omega);
  PureSpinor out;
  out.rho = wedge((spec.B + CoeffFn(GaussRational::i()) * spec.omega).exp(), spec.Omega);
  Form top = mukai_pairing(out.rho, out.rho.conj());
  Mask full = model->rank() == 64 ? ~Mask{0} : (Mask{1} << model->rank()) - 1;
  out.pairing = top.coefficient(full);
  if (out.pairing.is_zero()) throw Error("not a GCS: Mukai pairing vanishes identically", ErrorKind::Falsified);
  if (out.pairing.is_constant()) {
    out.symbolic = true;
    return out;
  }
  std::vector<ExactPoint> pts = sample_grid(model->vars());
  pts.insert(pts.end(), extra_points.begin(), extra_points.end());
  for (const auto& p : pts) {
    ++out.points_checked;
    if (out.pairing.evaluate(p).is_zero())
      throw Error("not a GCS: Mukai pairing vanishes at " + point_str(model->vars(), p), ErrorKind::Falsified);
  }
  return out;
}

/// Type of the spinor line at a point: lowest degree present.
inline int type_at(const Form& rho, const ExactPoint& p) {
  Form v = rho.at(p);
  if (v.is_zero()) throw Error("not a spinor line at point " + point_str(rho.need_model().vars(), p), ErrorKind::Falsified);
  return v.lowest_degree();
}

/// Matrix whose columns are the frame coordinates of constant sections.
inline Matrix coordinate_matrix(const std::vector<GenVector>& basis, std::size_t n) {
  std::vector<std::vector<GaussRational>> cols;
  for (const auto& u : basis) cols.push_back(u.coordinates());
  return Matrix::from_columns(cols, 2 * n);
}

/// L = ann(ρ) for a constant-coefficient spinor; verifies rank N, isotropy and L ∩ L̄ = 0.
inline std::vector<GenVector> annihilator(const Form& rho) {
  const ModelPtr& model = rho.model();
  if (!model) throw Error("spinor must be attached to a model");
  if (!rho.has_constant_coefficients())
    throw Error("annihilator needs constant coefficients; evaluate the spinor at a point first");
  std::size_t n = model->rank();
  std::vector<Form> images;
  std::map<Mask, std::size_t, MaskOrder> rows;
  for (std::size_t k = 0; k < 2 * n; ++k) {
    images.push_back(spinor_action(GenVector::unit(model, static_cast<int>(k)), rho));
    for (const auto& [m, c] : images.back().terms()) rows.try_emplace(m, 0);
  }
  std::size_t r = 0;
  for (auto& [m, idx] : rows) idx = r++;
  Matrix a(rows.size(), 2 * n);
  for (std::size_t k = 0; k < 2 * n; ++k)
    for (const auto& [m, c] : images[k].terms()) a(rows[m], k) = c.constant_value();
  auto ns = nullspace(a);
  if (ns.size() != n)
    throw Error("not maximal isotropic / not a pure spinor: annihilator has rank " + std::to_string(ns.size()) +
                    ", expected " + std::to_string(n),
                ErrorKind::Falsified);
  std::vector<GenVector> basis;
  for (const auto& x : ns) basis.push_back(GenVector::from_coordinates(model, x));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!inner_pairing(basis[i], basis[j]).is_zero())
        throw Error("annihilator is not isotropic", ErrorKind::Falsified);
  std::vector<GenVector> both = basis;
  for (const auto& u : basis) both.push_back(u.conj());
  if (rank(coordinate_matrix(both, n)) != 2 * n)
    throw Error("L and its conjugate intersect: rho is not of real index zero", ErrorKind::Falsified);
  return basis;
}

inline std::vector<GenVector> annihilator_at(const Form& rho, const ExactPoint& p) { return annihilator(rho.at(p)); }

/// True when the columns of `span` contain `v`.
inline bool in_span(const Matrix& span, const std::vector<GaussRational>& v) {
  if (span.cols() == 0) {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }
  return solve(span, v).has_value();
}

struct InvolutivityResult {
  bool involutive = true;
  int first = -1, second = -1;  // offending pair
  GenVector bracket;            // their Courant bracket
  std::optional<ExactPoint> point;
};

/// Courant closure of span(basis). Constant brackets of constant sections are decided by an exact
/// solve; otherwise membership is decided pointwise on the sample grid.
inline InvolutivityResult involutivity_check(const std::vector<GenVector>& basis,
                                             const std::vector<ExactPoint>& extra_points = {}) {
  InvolutivityResult out;
  if (basis.empty()) return out;
  ModelPtr model = basis.front().model();
  std::size_t n = model->rank();
  bool constant = true;
  for (const auto& u : basis) constant = constant && u.has_constant_coefficients();
  Matrix span = constant ? coordinate_matrix(basis, n) : Matrix();
  std::vector<ExactPoint> pts;
  if (!model->invariant()) {
    pts = sample_grid(model->vars());
    pts.insert(pts.end(), extra_points.begin(), extra_points.end());
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      GenVector w = courant_bracket(basis[i], basis[j]);
      if (constant && w.has_constant_coefficients()) {
        if (!in_span(span, w.coordinates())) {
          out = {false, static_cast<int>(i), static_cast<int>(j), w, std::nullopt};
          return out;
        }
        continue;
      }
      for (const auto& p : pts) {
        std::vector<GenVector> at;
        for (const auto& u : basis) at.push_back(u.at(p));
        if (!in_span(coordinate_matrix(at, n), w.at(p).coordinates())) {
          out = {false, static_cast<int>(i), static_cast<int>(j), w, p};
          return out;
        }
      }
    }
  return out;
}

struct IntegrabilityResult {
  enum class Status { Closed, Witness, NoWitness };
  Status status = Status::Closed;
  GenVector u;
  Form drho;
};

inline const char* status_name(IntegrabilityResult::Status s) {
  switch (s) {
    case IntegrabilityResult::Status::Closed: return "closed";
    case IntegrabilityResult::Status::Witness: return "witness";
    case IntegrabilityResult::Status::NoWitness: return "no witness in coefficient ring";
  }
  return "?";
}

/// Solves dρ = u·ρ for u with coefficients among the monomials m with m·(term of ρ) = (term of dρ).
inline IntegrabilityResult integrability_witness(const Form& rho) {
  IntegrabilityResult out;
  const ModelPtr& model = rho.model();
  out.drho = rho.d();
  out.u = GenVector{VectorField(model), Form(model)};
  if (out.drho.is_zero()) return out;
  std::set<Monomial> cand = {Monomial{}};
  for (const auto& [md, cd] : out.drho.terms())
    for (const auto& [mu, fd] : cd.terms())
      for (const auto& [mr, cr] : rho.terms())
        for (const auto& [nu, fr] : cr.terms())
          if (auto q = divide(mu, nu)) cand.insert(*q);
  std::size_t n = model->rank();
  std::vector<Monomial> monos(cand.begin(), cand.end());
  std::vector<Form> base;
  for (std::size_t k = 0; k < 2 * n; ++k) base.push_back(spinor_action(GenVector::unit(model, static_cast<int>(k)), rho));
  using Key = std::pair<Mask, Monomial>;
  std::map<Key, std::size_t> rows;
  auto row = [&rows](Mask m, const Monomial& mono) {
    auto [it, ins] = rows.try_emplace({m, mono}, rows.size());
    return it->second;
  };
  std::vector<std::vector<std::pair<std::size_t, GaussRational>>> cols;
  for (std::size_t k = 0; k < 2 * n; ++k)
    for (const auto& mono : monos) {
      std::vector<std::pair<std::size_t, GaussRational>> col;
      for (const auto& [m, c] : base[k].terms())
        for (const auto& [nu, v] : c.terms()) col.emplace_back(row(m, mono * nu), v);
      cols.push_back(std::move(col));
    }
  std::vector<std::pair<std::size_t, GaussRational>> rhs;
  for (const auto& [m, c] : out.drho.terms())
    for (const auto& [nu, v] : c.terms()) rhs.emplace_back(row(m, nu), v);
  Matrix a(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, v] : cols[j]) a(i, j) += v;
  std::vector<GaussRational> b(rows.size());
  for (const auto& [i, v] : rhs) b[i] += v;
  auto x = solve(a, b);
  if (!x) {
    out.status = IntegrabilityResult::Status::NoWitness;
    return out;
  }
  GenVector u{VectorField(model), Form(model)};
  for (std::size_t k = 0; k < 2 * n; ++k) {
    CoeffFn f;
    for (std::size_t j = 0; j < monos.size(); ++j) f.add_term(monos[j], (*x)[k * monos.size() + j]);
    u = u + f * GenVector::unit(model, static_cast<int>(k));
  }
  if (spinor_action(u, rho) != out.drho) throw std::logic_error("integrability witness failed verification");
  out.status = IntegrabilityResult::Status::Witness;
  out.u = u;
  return out;
}

/// e^B ∧ ρ for a closed real 2-form B.
inline Form b_transform(const Form& rho, const Form& B) {
  if (B.is_zero()) return rho;
  check_real_two_form(B, "B-field");
  if (!B.d().is_zero()) throw Error("B-field must be closed");
  Form out = wedge(B.exp(), rho);
  if (rho.d().is_zero() && !out.d().is_zero()) throw std::logic_error("B-transform of a closed spinor is not closed");
  return out;
}

/// J on the fiber of T ⊕ T* at a point, in the frame (E_1..E_N, e^1..e^N).
struct PointFrameJ {
  Matrix J;
  Matrix pairing;  // Gram matrix of <,>
};

/// Gram matrix of the natural pairing in the frame basis.
inline Matrix pairing_matrix(std::size_t n) {
  Matrix g(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) g(k, n + k) = g(n + k, k) = GaussRational::fraction(1, 2);
  return g;
}

/// Matrix of complex conjugation on frame coordinates (x ↦ C x̄).
inline Matrix conjugation_matrix(const CoframeModel& model) {
  std::size_t n = model.rank();
  Matrix c(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t j = static_cast<std::size_t>(model.generators()[k].conj);
    c(j, k) = 1;
    c(n + j, n + k) = 1;
  }
  return c;
}

inline Matrix entrywise_conj(const Matrix& m) {
  Matrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).conj();
  return r;
}

inline Matrix transpose(const Matrix& m) {
  Matrix r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
  return r;
}

/// The automorphism with +i-eigenbundle L = ann(ρ) and -i-eigenbundle L̄; checks that it is real,
/// squares to -1 and preserves the pairing.
inline PointFrameJ endomorphism_from_spinor(const Form& rho, const ExactPoint& p) {
  const ModelPtr& model = rho.model();
  std::size_t n = model->rank();
  Form at = rho.at(p);
  if (mukai_pairing(at, at.conj()).is_zero())
    throw Error("spinor is degenerate at " + point_str(model->vars(), p), ErrorKind::Falsified);
  auto L = annihilator(at);
  std::vector<GenVector> cols = L;
  for (const auto& u : L) cols.push_back(u.conj());
  Matrix P = coordinate_matrix(cols, n);
  Matrix D(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    D(k, k) = GaussRational::i();
    D(n + k, n + k) = -GaussRational::i();
  }
  PointFrameJ out{P * D * inverse(P), pairing_matrix(n)};
  Matrix C = conjugation_matrix(*model);
  if (!(C * entrywise_conj(out.J) * C == out.J)) throw std::logic_error("J is not real");
  if (!(out.J * out.J == Matrix::identity(2 * n).scaled(-1))) throw std::logic_error("J^2 != -1");
  if (!(transpose(out.J) * out.pairing * out.J == out.pairing)) throw std::logic_error("J is not orthogonal");
  return out;
}

/// Matrix of the shear X + ξ ↦ X + ξ - ι_X B in the frame basis (constant B).
inline Matrix b_shear_matrix(const Form& B) {
  const ModelPtr& model = B.model();
  std::size_t n = model->rank();
  std::vector<std::vector<GaussRational>> cols;
  for (std::size_t k = 0; k < 2 * n; ++k)
    cols.push_back(b_shear(GenVector::unit(model, static_cast<int>(k)), B).coordinates());
  return Matrix::from_columns(cols, 2 * n);
}

}  // namespace gencx
