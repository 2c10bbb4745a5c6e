#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gencx/bundles.hpp"
#include "gencx/dolbeault.hpp"
#include "gencx/linalg.hpp"
#include "gencx/models.hpp"

namespace gencx {

/// Finite cochain complex C^0 → ... → C^K over Q(i) with an adapted basis:
/// F^p C^k is spanned by the basis vectors of level ≥ p.
struct FilteredComplex {
  std::vector<std::vector<int>> level;  // level[k][i]
  std::vector<Matrix> d;                // d[k]: C^k → C^{k+1}, one per degree below the top
  std::vector<std::vector<std::string>> labels;

  int top() const { return static_cast<int>(level.size()) - 1; }
  std::size_t dim(int k) const { return k < 0 || k > top() ? 0 : level[k].size(); }
  Matrix differential(int k) const {
    if (k >= 0 && k < top()) return d[k];
    return Matrix(dim(k + 1), dim(k));
  }
  int min_level() const {
    std::vector<int> all;
    for (const auto& lv : level) all.insert(all.end(), lv.begin(), lv.end());
    return all.empty() ? 0 : *std::min_element(all.begin(), all.end());
  }
  int max_level() const {
    std::vector<int> all;
    for (const auto& lv : level) all.insert(all.end(), lv.begin(), lv.end());
    return all.empty() ? 0 : *std::max_element(all.begin(), all.end());
  }

  /// Throws unless shapes agree, d² = 0 and d F^p ⊆ F^p.
  void validate() const {
    if (level.empty()) throw Error("filtered complex has no degrees");
    if (static_cast<int>(d.size()) != top()) throw Error("filtered complex needs one differential per degree below the top");
    for (int k = 0; k < top(); ++k)
      if (d[k].rows() != dim(k + 1) || d[k].cols() != dim(k))
        throw Error("differential in degree " + std::to_string(k) + " has the wrong shape");
    for (int k = 0; k + 1 < top(); ++k)
      if (!(d[k + 1] * d[k]).is_zero()) throw Error("d^2 != 0 from degree " + std::to_string(k));
    for (int k = 0; k < top(); ++k)
      for (std::size_t j = 0; j < dim(k); ++j)
        for (std::size_t i = 0; i < dim(k + 1); ++i)
          if (!d[k](i, j).is_zero() && level[k + 1][i] < level[k][j])
            throw Error("differential lowers the filtration: " + name(k, j) + " -> " + name(k + 1, i));
  }

  std::string name(int k, std::size_t i) const {
    if (k < static_cast<int>(labels.size()) && i < labels[k].size()) return labels[k][i];
    return "c" + std::to_string(k) + "_" + std::to_string(i);
  }
};

namespace detail {

inline Matrix empty_columns(std::size_t rows) { return Matrix(rows, 0); }

/// Columns of m forming a basis of their span.
inline Matrix column_basis(const Matrix& m) {
  if (m.cols() == 0) return m;
  auto piv = independent_columns(m);
  Matrix out(m.rows(), piv.size());
  for (std::size_t j = 0; j < piv.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, piv[j]);
  return out;
}

inline Matrix span_sum(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0) return column_basis(b);
  if (b.cols() == 0) return column_basis(a);
  return column_basis(Matrix::hcat(a, b));
}

/// Coordinate basis of F^p C^k.
inline Matrix filtration_part(const FilteredComplex& fc, int k, int p) {
  std::size_t n = fc.dim(k);
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < n; ++i)
    if (fc.level[k][i] >= p) cols.push_back(i);
  Matrix out(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) out(cols[j], j) = 1;
  return out;
}

/// Z_r^{p,k} = {x ∈ F^p C^k : dx ∈ F^{p+r} C^{k+1}}.
inline Matrix cycles(const FilteredComplex& fc, int k, int p, int r) {
  if (k < 0 || k > fc.top()) return Matrix(0, 0);
  Matrix F = filtration_part(fc, k, p);
  if (F.cols() == 0) return F;
  Matrix dF = fc.differential(k) * F;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < dF.rows(); ++i)
    if (fc.level[k + 1][i] < p + r) rows.push_back(i);
  if (rows.empty()) return F;
  Matrix low(rows.size(), F.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < F.cols(); ++j) low(i, j) = dF(rows[i], j);
  auto ns = nullspace(low);
  std::vector<std::vector<GaussRational>> cols;
  for (const auto& y : ns) cols.push_back(F.apply(y));
  return Matrix::from_columns(cols, fc.dim(k));
}

/// Z_{r-1}^{p+1,k} + d Z_{r-1}^{p-r+1,k-1}, the subspace divided out of Z_r^{p,k}.
inline Matrix page_denominator(const FilteredComplex& fc, int k, int p, int r) {
  Matrix a = cycles(fc, k, p + 1, r - 1);
  if (a.rows() == 0) a = empty_columns(fc.dim(k));
  Matrix b = empty_columns(fc.dim(k));
  if (k > 0) {
    Matrix z = cycles(fc, k - 1, p - r + 1, r - 1);
    if (z.cols() > 0) b = fc.differential(k - 1) * z;
  }
  return span_sum(a, b);
}

}  // namespace detail

/// One cell E_r^{p,q} (total degree k = p + q) with representatives in Z_r^{p,k}.
struct PageCell {
  Matrix denominator;      // basis of the subspace divided out
  Matrix representatives;  // completes the denominator to a basis of Z_r^{p,k}
  std::size_t dim() const { return representatives.cols(); }

  /// Coordinates of w ∈ Z_r^{p,k} in the quotient basis.
  std::vector<GaussRational> coordinates(const std::vector<GaussRational>& w) const {
    Matrix both = Matrix::hcat(denominator, representatives);
    if (both.cols() == 0) return {};
    auto y = solve(both, w);
    if (!y) throw std::logic_error("page element outside Z_r");
    return std::vector<GaussRational>(y->begin() + static_cast<long>(denominator.cols()), y->end());
  }
};

using Bidegree = std::pair<int, int>;  // (p, q)

struct Page {
  int r = 0;
  std::map<Bidegree, std::size_t> dims;
  std::map<Bidegree, Matrix> differential;  // d_r: E_r^{p,q} → E_r^{p+r,q-r+1}

  std::size_t at(int p, int q) const {
    auto it = dims.find({p, q});
    return it == dims.end() ? 0 : it->second;
  }
  bool differential_zero() const {
    for (const auto& [pq, m] : differential)
      if (!m.is_zero()) return false;
    return true;
  }
  std::size_t total(int k) const {
    std::size_t s = 0;
    for (const auto& [pq, n] : dims)
      if (pq.first + pq.second == k) s += n;
    return s;
  }
};

struct PageReport {
  std::vector<Page> pages;      // r = 0, 1, ..., last; the last page is E_∞
  int stabilization = 0;        // least r with d_s = 0 for every s ≥ r
  std::map<int, std::size_t> cohomology;  // H^k of the total complex
  bool recurrence_ok = true;    // E_{r+1} from (E_r, d_r) equals the direct subquotient
  bool d_squared_ok = true;
  bool converged = true;        // Σ_{p+q=k} dim E_∞^{p,q} = dim H^k
  std::vector<std::string> issues;

  const Page& page(int r) const {
    if (pages.empty()) throw Error("empty page report");
    return pages[std::min<std::size_t>(static_cast<std::size_t>(r), pages.size() - 1)];
  }
  const Page& infinity() const { return pages.back(); }
  bool ok() const { return recurrence_ok && d_squared_ok && converged; }
};

namespace detail {

inline std::map<Bidegree, PageCell> page_cells(const FilteredComplex& fc, int r) {
  std::map<Bidegree, PageCell> cells;
  int lo = fc.min_level(), hi = fc.max_level();
  for (int k = 0; k <= fc.top(); ++k)
    for (int p = lo; p <= hi; ++p) {
      Matrix Z = cycles(fc, k, p, r);
      if (Z.cols() == 0) continue;
      PageCell c;
      c.denominator = page_denominator(fc, k, p, r);
      std::size_t off = c.denominator.cols();
      Matrix both = Matrix::hcat(c.denominator, Z);
      std::vector<std::vector<GaussRational>> reps;
      for (auto j : independent_columns(both))
        if (j >= off) reps.push_back(both.column(j));
      if (reps.empty()) continue;
      c.representatives = Matrix::from_columns(reps, fc.dim(k));
      cells.emplace(Bidegree{p, k - p}, std::move(c));
    }
  return cells;
}

inline std::size_t rank_or_zero(const std::map<Bidegree, Matrix>& m, Bidegree at) {
  auto it = m.find(at);
  return it == m.end() ? 0 : rank(it->second);
}

}  // namespace detail

/// Pages E_0 .. E_{max(r_max, ∞)} of the spectral sequence of a bounded filtration.
inline PageReport pages(const FilteredComplex& fc, int r_max = 3) {
  fc.validate();
  PageReport out;
  for (int k = 0; k <= fc.top(); ++k) {
    std::size_t rk_out = rank(fc.differential(k));
    std::size_t rk_in = k > 0 ? rank(fc.differential(k - 1)) : 0;
    out.cohomology[k] = fc.dim(k) - rk_out - rk_in;
  }
  // d_r vanishes once r exceeds the filtration length
  int r_inf = fc.max_level() - fc.min_level() + 1;
  int last = std::max(r_max, r_inf);
  for (int r = 0; r <= last; ++r) {
    auto cells = detail::page_cells(fc, r);
    Page pg;
    pg.r = r;
    for (const auto& [pq, c] : cells) {
      pg.dims[pq] = c.dim();
      auto [p, q] = pq;
      int k = p + q;
      Bidegree target{p + r, q - r + 1};
      auto tc = cells.find(target);
      Matrix m(tc == cells.end() ? 0 : tc->second.dim(), c.dim());
      for (std::size_t j = 0; j < c.dim(); ++j) {
        auto w = fc.differential(k).apply(c.representatives.column(j));
        if (tc == cells.end()) continue;
        auto y = tc->second.coordinates(w);
        for (std::size_t i = 0; i < y.size(); ++i) m(i, j) = y[i];
      }
      pg.differential[pq] = m;
    }
    out.pages.push_back(std::move(pg));
  }
  // d_r ∘ d_r = 0 and the two routes to E_{r+1}
  for (std::size_t r = 0; r + 1 < out.pages.size(); ++r) {
    const Page& cur = out.pages[r];
    const Page& next = out.pages[r + 1];
    int ri = static_cast<int>(r);
    for (const auto& [pq, m] : cur.differential) {
      Bidegree mid{pq.first + ri, pq.second - ri + 1};
      auto it = cur.differential.find(mid);
      if (it != cur.differential.end() && m.rows() > 0 && !(it->second * m).is_zero()) {
        out.d_squared_ok = false;
        out.issues.push_back("d_" + std::to_string(r) + "^2 != 0 at (" + std::to_string(pq.first) + "," +
                             std::to_string(pq.second) + ")");
      }
    }
    std::set<Bidegree> keys;
    for (const auto& [pq, n] : cur.dims) keys.insert(pq);
    for (const auto& [pq, n] : next.dims) keys.insert(pq);
    for (const auto& pq : keys) {
      std::size_t e = cur.at(pq.first, pq.second);
      std::size_t rk_out = detail::rank_or_zero(cur.differential, pq);
      std::size_t rk_in = detail::rank_or_zero(cur.differential, {pq.first - ri, pq.second + ri - 1});
      std::size_t via_homology = e - rk_out - rk_in;
      if (via_homology != next.at(pq.first, pq.second)) {
        out.recurrence_ok = false;
        out.issues.push_back("E_" + std::to_string(r + 1) + "(" + std::to_string(pq.first) + "," +
                             std::to_string(pq.second) + "): homology of E_" + std::to_string(r) + " gives " +
                             std::to_string(via_homology) + ", subquotient gives " +
                             std::to_string(next.at(pq.first, pq.second)));
      }
    }
  }
  out.stabilization = static_cast<int>(out.pages.size()) - 1;
  while (out.stabilization > 0 && out.pages[out.stabilization - 1].differential_zero()) --out.stabilization;
  for (const auto& [k, h] : out.cohomology)
    if (out.infinity().total(k) != h) {
      out.converged = false;
      out.issues.push_back("degree " + std::to_string(k) + ": sum of E_inf is " +
                           std::to_string(out.infinity().total(k)) + ", total cohomology is " + std::to_string(h));
    }
  return out;
}

/// Text grid of one page: rows q from top to bottom, columns p.
inline std::string page_grid(const Page& pg) {
  int pmax = 0, qmax = 0;
  for (const auto& [pq, n] : pg.dims) pmax = std::max(pmax, pq.first), qmax = std::max(qmax, pq.second);
  std::string out = "E_" + std::to_string(pg.r) + "\n";
  for (int q = qmax; q >= 0; --q) {
    std::string row = "q=" + std::to_string(q) + " |";
    for (int p = 0; p <= pmax; ++p) {
      std::string v = std::to_string(pg.at(p, q));
      row += std::string(4 - std::min<std::size_t>(v.size(), 3), ' ') + v;
    }
    out += row + "\n";
  }
  out += "     +";
  for (int p = 0; p <= pmax; ++p) out += "----";
  out += "\n      ";
  for (int p = 0; p <= pmax; ++p) {
    std::string v = "p" + std::to_string(p);
    out += std::string(4 - v.size(), ' ') + v;
  }
  return out + "\n";
}

/// Invariant Λ•L* with the Chevalley-Eilenberg differential, L-basis ordered with S first.
struct LieAlgebroidComplex {
  ModelPtr model;
  Form rho;
  std::vector<GenVector> basis;
  std::size_t s_rank = 0;
  std::map<std::pair<int, int>, std::vector<GaussRational>> structure;  // [u_i, u_j] = Σ c^k u_k, i < j
  FilteredComplex filtered;

  int rank() const { return static_cast<int>(basis.size()); }
};

namespace detail {

inline std::vector<Mask> masks_of_degree(int n, int k) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    if (mask_size(m) == k) out.push_back(m);
  std::sort(out.begin(), out.end(), MaskOrder{});
  return out;
}

}  // namespace detail

/// Filtration of the invariant Lie algebroid complex of L = ann(ρ) by a Courant subalgebra S ⊆ L:
/// φ ∈ F^p Λ^{p+q} when φ vanishes as soon as q+1 arguments lie in S. In a basis adapted to S,
/// u^I has level |I \ S|.
inline LieAlgebroidComplex build_filtration(const Form& rho, const std::vector<GenVector>& S_basis) {
  const ModelPtr& model = rho.model();
  if (!model) throw Error("spinor must be attached to a model");
  require_invariant(*model, "the Lie algebroid complex");
  std::size_t N = model->rank();
  auto L = annihilator(rho);
  Matrix Lm = coordinate_matrix(L, N);
  for (std::size_t k = 0; k < S_basis.size(); ++k) {
    const GenVector& s = S_basis[k];
    if (s.model() != model) throw Error("S element " + std::to_string(k + 1) + " lives on another model");
    if (!s.has_constant_coefficients()) throw Error("S element " + std::to_string(k + 1) + " must have constant coefficients");
    if (!in_span(Lm, s.coordinates()))
      throw Error("S is not contained in L = ann(rho): element " + std::to_string(k + 1) + " = " + s.str());
  }
  if (!S_basis.empty() && ::gencx::rank(coordinate_matrix(S_basis, N)) != S_basis.size())
    throw Error("S basis is linearly dependent");
  auto inv = involutivity_check(S_basis);
  if (!inv.involutive)
    throw Error("S is not a Courant subalgebra: [s" + std::to_string(inv.first + 1) + ", s" +
                std::to_string(inv.second + 1) + "] = " + inv.bracket.str() + " leaves S");

  LieAlgebroidComplex out;
  out.model = model;
  out.rho = rho;
  out.basis = S_basis;
  out.s_rank = S_basis.size();
  for (const auto& u : L) {
    auto cand = out.basis;
    cand.push_back(u);
    if (::gencx::rank(coordinate_matrix(cand, N)) == cand.size()) out.basis = std::move(cand);
  }
  int n = out.rank();
  Matrix Bm = coordinate_matrix(out.basis, N);
  // anchor terms vanish: invariant cochains have constant coefficients
  std::vector<std::vector<std::pair<Mask, GaussRational>>> du(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      GenVector w = courant_bracket(out.basis[i], out.basis[j]);
      auto c = solve(Bm, w.coordinates());
      if (!c) throw Error("L is not Courant involutive: bracket of basis elements " + std::to_string(i + 1) + ", " +
                              std::to_string(j + 1) + " is " + w.str(),
                          ErrorKind::Falsified);
      out.structure[{i, j}] = *c;
      // d u^k (u_i, u_j) = -u^k([u_i, u_j])
      for (int k = 0; k < n; ++k)
        if (!(*c)[k].is_zero()) du[k].emplace_back((Mask{1} << i) | (Mask{1} << j), -(*c)[k]);
    }

  FilteredComplex& fc = out.filtered;
  std::vector<std::vector<Mask>> deg(n + 1);
  std::vector<std::map<Mask, std::size_t>> pos(n + 1);
  Mask s_mask = out.s_rank ? (Mask{1} << out.s_rank) - 1 : 0;
  fc.level.resize(n + 1);
  fc.labels.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    deg[k] = detail::masks_of_degree(n, k);
    for (std::size_t a = 0; a < deg[k].size(); ++a) {
      Mask m = deg[k][a];
      pos[k][m] = a;
      fc.level[k].push_back(mask_size(m & ~s_mask));
      std::string label;
      for (Mask rest = m; rest; rest &= rest - 1) {
        if (!label.empty()) label += "^";
        label += "u" + std::to_string(std::countr_zero(rest) + 1);
      }
      fc.labels[k].push_back(label.empty() ? "1" : label);
    }
  }
  for (int k = 0; k < n; ++k) {
    Matrix dk(deg[k + 1].size(), deg[k].size());
    for (std::size_t a = 0; a < deg[k].size(); ++a) {
      Mask m = deg[k][a];
      int below = 0;
      for (Mask rest = m; rest; rest &= rest - 1, ++below) {
        int g = std::countr_zero(rest);
        Mask others = m & ~(Mask{1} << g);
        for (const auto& [md, c] : du[g]) {
          int s = wedge_sign(md, others);
          if (s == 0) continue;
          if (below & 1) s = -s;
          dk(pos[k + 1].at(md | others), a) += s > 0 ? c : -c;
        }
      }
    }
    fc.d.push_back(std::move(dk));
  }
  fc.validate();
  return out;
}

/// S = {X - ι_X(η + iω) : X vertical}, the fiber part of L for the bundle spinor e^{η+iω} ∧ Ω.
inline std::vector<GenVector> fiber_null_space(const BundleModel& B, const Form& eta = Form()) {
  Form A = CoeffFn(GaussRational::i()) * B.omega;
  if (!eta.is_zero()) A += eta;
  std::vector<GenVector> out;
  Mask fib = B.total->mask_of(Grade::F);
  for (Mask rest = fib; rest; rest &= rest - 1) {
    VectorField X = VectorField::frame(B.total, std::countr_zero(rest));
    out.push_back({X, -interior(X, A)});
  }
  return out;
}

/// Invariant de Rham dimensions of a constant-coefficient model.
inline CohomologyTable invariant_de_rham(const ModelPtr& model) {
  require_invariant(*model, "invariant de Rham cohomology");
  int n = static_cast<int>(model->rank());
  std::vector<std::vector<Mask>> deg(n + 1);
  for (int k = 0; k <= n; ++k) deg[k] = detail::masks_of_degree(n, k);
  std::vector<std::size_t> rk(n + 1, 0);
  for (int k = 0; k < n; ++k) {
    std::map<Mask, std::size_t> row;
    for (std::size_t i = 0; i < deg[k + 1].size(); ++i) row[deg[k + 1][i]] = i;
    Matrix m(deg[k + 1].size(), deg[k].size());
    for (std::size_t j = 0; j < deg[k].size(); ++j) {
      Form df = Form::monomial(model, deg[k][j]).d();
      for (const auto& [mk, c] : df.terms()) m(row.at(mk), j) = c.constant_value();
    }
    rk[k] = ::gencx::rank(m);
  }
  CohomologyTable t;
  for (int k = 0; k <= n; ++k)
    t.dims[k] = static_cast<int>(deg[k].size() - rk[k] - (k > 0 ? rk[k - 1] : 0));
  return t;
}

/// Spectral sequence of the bundle spinor filtered by the fiber null space, with the abutment
/// compared against GH of the total space: Σ_{p+q=k} dim E_∞^{p,q} = GH^{n+l-k}.
struct BundleSpectral {
  LieAlgebroidComplex complex;
  PageReport report;
  CohomologyTable gh;
  int n_total = 0;
  bool converges_to_gh = true;
};

inline BundleSpectral bundle_spectral(const BundleModel& B, const Form& eta = Form(), int r_max = 3) {
  if (B.flavor != BundleFlavor::Invariant) throw Error("the spectral sequence needs an invariant bundle model");
  Form rho = construct_rho(B, eta);
  BundleSpectral out;
  out.complex = build_filtration(rho, fiber_null_space(B, eta));
  out.report = pages(out.complex.filtered, r_max);
  out.gh = gh_cohomology(rho);
  out.n_total = B.n() + B.l;
  for (int k = 0; k <= out.complex.rank(); ++k)
    if (static_cast<int>(out.report.infinity().total(k)) != out.gh.at(out.n_total - k)) out.converges_to_gh = false;
  return out;
}

/// Symplectic torus (T^{2l}, e1^e2 + ... ) spinor e^{iω}.
inline Form symplectic_torus_spinor(int l) {
  ModelPtr t = models::invariant_real_torus(2 * l);
  Form w(t);
  for (int j = 0; j < l; ++j) w += wedge(Form::generator(t, 2 * j), Form::generator(t, 2 * j + 1));
  if (l == 0) return Form::scalar(t, 1);
  return (CoeffFn(GaussRational::i()) * w).exp();
}

/// E_2^{p,q} = GH^{n-p}(M) · dim H^q(T^{2l}) for a flat invariant bundle over a complex base.
inline std::map<Bidegree, std::size_t> e2_identification(const BundleModel& B) {
  if (B.flavor != BundleFlavor::Invariant) throw Error("E2 identification needs an invariant bundle model");
  for (std::size_t j = 0; j < B.curvature.size(); ++j)
    if (!B.curvature[j].is_zero())
      throw Error("bundle is not flat: curvature" + std::to_string(j + 1) + " = " + B.curvature[j].str());
  CohomologyTable base = gh_cohomology(detail::holomorphic_volume(B.base));
  CohomologyTable fiber = invariant_de_rham(models::invariant_real_torus(2 * B.l));
  int n = B.n();
  std::map<Bidegree, std::size_t> out;
  for (int p = 0; p <= 2 * n; ++p)
    for (int q = 0; q <= 2 * B.l; ++q) {
      int v = base.at(n - p) * fiber.at(q);
      if (v) out[{p, q}] = static_cast<std::size_t>(v);
    }
  return out;
}

/// GH^k(M × T^{2l}) against Σ_{a+b=k} GH^a(T^{2l}) · GH^b(M) for the trivial bundle.
struct KunnethReport {
  int n = 0, l = 0;
  CohomologyTable lhs;    // computed on the product model
  CohomologyTable base;   // GH(M)
  CohomologyTable fiber;  // GH(T^{2l}, ω_T)
  CohomologyTable rhs;    // convolution of the factor tables
  bool holds() const { return lhs == rhs; }
};

inline KunnethReport kunneth_check(const ModelPtr& base, int l) {
  BundleModel E = build_invariant_bundle(base, l, std::vector<Form>(2 * l, Form(base)));
  KunnethReport out;
  out.n = E.n();
  out.l = l;
  out.lhs = gh_cohomology(construct_rho(E));
  out.base = gh_cohomology(detail::holomorphic_volume(base));
  out.fiber = gh_cohomology(symplectic_torus_spinor(l));
  for (int k = -(out.n + l); k <= out.n + l; ++k) {
    int s = 0;
    for (const auto& [a, fa] : out.fiber.dims) s += fa * out.base.at(k - a);
    out.rhs.dims[k] = s;
  }
  return out;
}

}  // namespace gencx
