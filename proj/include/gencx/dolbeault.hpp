#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gencx/geometry.hpp"
#include "gencx/linalg.hpp"

namespace gencx {

/// Index of each generator subset in the full exterior algebra (degree, then lexicographic).
class MaskIndex {
 public:
  explicit MaskIndex(std::size_t rank) {
    std::vector<Mask> all;
    for (Mask m = 0; m < (Mask{1} << rank); ++m) all.push_back(m);
    std::sort(all.begin(), all.end(), MaskOrder{});
    masks_ = all;
    for (std::size_t k = 0; k < all.size(); ++k) pos_[all[k]] = k;
  }
  std::size_t size() const { return masks_.size(); }
  Mask mask(std::size_t k) const { return masks_[k]; }
  std::size_t position(Mask m) const { return pos_.at(m); }

  std::vector<GaussRational> coordinates(const Form& f) const {
    std::vector<GaussRational> x(size());
    for (const auto& [m, c] : f.terms()) x[position(m)] = c.constant_value();
    return x;
  }
  Form form(const ModelPtr& model, const std::vector<GaussRational>& x) const {
    Form f(model);
    for (std::size_t k = 0; k < x.size(); ++k)
      if (!x[k].is_zero()) f.add_term(masks_[k], CoeffFn(x[k]));
    return f;
  }

 private:
  std::vector<Mask> masks_;
  std::map<Mask, std::size_t> pos_;
};

/// Λ•T* ⊗ C = ⊕_{i=-n}^{n} U^i with U^{n-k} = Λ^k L̄ · ρ.
struct UDecomposition {
  ModelPtr model;
  int n = 0;                               // half the model rank
  Form rho;
  std::vector<GenVector> L;
  std::map<int, std::vector<Form>> bases;  // i -> basis of U^i
  std::map<int, std::size_t> offset;       // column offset of U^i in the change of basis
  Matrix change;                           // columns: all basis forms, in degree order -n..n
  Matrix change_inv;

  std::size_t dim(int i) const {
    auto it = bases.find(i);
    return it == bases.end() ? 0 : it->second.size();
  }
};

inline void require_invariant(const CoframeModel& model, const std::string& what) {
  if (!model.invariant())
    throw Error(what + " needs an invariant (constant-coefficient) model; chart model '" + model.label() +
                "' has no finite invariant complex");
}

inline UDecomposition ui_decomposition(const Form& rho) {
  const ModelPtr& model = rho.model();
  if (!model) throw Error("spinor must be attached to a model");
  require_invariant(*model, "the U-decomposition");
  std::size_t N = model->rank();
  if (N % 2) throw Error("model has odd rank " + std::to_string(N));
  if (N > 16) throw Error("model rank too large for the dense invariant complex");
  UDecomposition ud;
  ud.model = model;
  ud.n = static_cast<int>(N / 2);
  ud.rho = rho;
  ud.L = annihilator(rho);
  std::vector<GenVector> Lbar;
  for (const auto& u : ud.L) Lbar.push_back(u.conj());
  MaskIndex idx(N);
  // ū_S · ρ for subsets S of the L̄ basis; |S| = k lands in U^{n-k}
  std::vector<std::vector<GaussRational>> cols;
  for (int k = static_cast<int>(N); k >= 0; --k) {
    int i = ud.n - k;
    std::vector<Form>& basis = ud.bases[i];
    for (Mask s = 0; s < (Mask{1} << N); ++s) {
      if (mask_size(s) != k) continue;
      Form f = rho;
      for (int j = static_cast<int>(N) - 1; j >= 0; --j)
        if (s & (Mask{1} << j)) f = spinor_action(Lbar[j], f);
      basis.push_back(f);
    }
    ud.offset[i] = cols.size();
    for (const auto& f : basis) cols.push_back(idx.coordinates(f));
  }
  ud.change = Matrix::from_columns(cols, idx.size());
  if (rank(ud.change) != idx.size()) throw Error("rho is not pure on this model: the U^i do not span", ErrorKind::Falsified);
  ud.change_inv = inverse(ud.change);
  return ud;
}

/// d = ∂ + ∂̄ on the invariant complex, as matrices between the U^i bases.
struct SplitD {
  std::map<int, Matrix> del;   // U^i -> U^{i+1}
  std::map<int, Matrix> dbar;  // U^i -> U^{i-1}
};

inline SplitD split_d(const UDecomposition& ud) {
  MaskIndex idx(ud.model->rank());
  SplitD out;
  for (int i = -ud.n; i <= ud.n; ++i) {
    std::size_t di = ud.dim(i);
    out.del[i] = Matrix(ud.dim(i + 1), di);
    out.dbar[i] = Matrix(ud.dim(i - 1), di);
    for (std::size_t c = 0; c < di; ++c) {
      auto x = ud.change_inv.apply(idx.coordinates(ud.bases.at(i)[c].d()));
      for (int j = -ud.n; j <= ud.n; ++j) {
        std::size_t off = ud.offset.at(j);
        for (std::size_t r = 0; r < ud.dim(j); ++r) {
          const GaussRational& v = x[off + r];
          if (v.is_zero()) continue;
          if (j == i + 1) out.del[i](r, c) = v;
          else if (j == i - 1) out.dbar[i](r, c) = v;
          else
            throw Error("d does not respect U-grading: structure not integrable on invariant complex (U^" +
                            std::to_string(i) + " -> U^" + std::to_string(j) + ")",
                        ErrorKind::Falsified);
        }
      }
    }
  }
  return out;
}

/// Dimensions per degree.
struct CohomologyTable {
  std::map<int, int> dims;

  int total() const {
    int t = 0;
    for (const auto& [k, d] : dims) t += d;
    return t;
  }
  int at(int k) const {
    auto it = dims.find(k);
    return it == dims.end() ? 0 : it->second;
  }
  friend bool operator==(const CohomologyTable& a, const CohomologyTable& b) {
    for (const auto& [k, d] : a.dims)
      if (b.at(k) != d) return false;
    for (const auto& [k, d] : b.dims)
      if (a.at(k) != d) return false;
    return true;
  }
  std::string str(const std::string& name = "GH") const {
    std::string head, row;
    for (const auto& [k, d] : dims) {
      std::string h = name + "^" + std::to_string(k);
      std::string v = std::to_string(d);
      std::size_t w = std::max(h.size(), v.size()) + 2;
      head += std::string(w - h.size(), ' ') + h;
      row += std::string(w - v.size(), ' ') + v;
    }
    return head + "\n" + row + "\n";
  }
};

/// GH^i = dim U^i - rank ∂̄_i - rank ∂̄_{i+1}.
inline CohomologyTable gh_from_split(const UDecomposition& ud, const SplitD& s) {
  CohomologyTable t;
  for (int i = -ud.n; i <= ud.n; ++i) {
    int out_rank = static_cast<int>(rank(s.dbar.at(i)));
    int in_rank = i < ud.n ? static_cast<int>(rank(s.dbar.at(i + 1))) : 0;
    t.dims[i] = static_cast<int>(ud.dim(i)) - out_rank - in_rank;
  }
  return t;
}

inline CohomologyTable gh_cohomology(const Form& rho) {
  auto ud = ui_decomposition(rho);
  return gh_from_split(ud, split_d(ud));
}

struct BTransformComparison {
  CohomologyTable before, after;
  bool equal() const { return before == after; }
};

inline BTransformComparison compare_b_transform(const Form& rho, const Form& B) {
  if (!B.is_zero() && !B.d().is_zero()) throw Error("B-field must be closed");
  return {gh_cohomology(rho), gh_cohomology(b_transform(rho, B))};
}

}  // namespace gencx
