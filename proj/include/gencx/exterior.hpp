#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gencx/coeff.hpp"
#include "gencx/error.hpp"

namespace gencx {

/// Generator tag: fiber, holomorphic base, antiholomorphic base, or real untyped.
/// Only F/H/A generators take part in the (r,p,q) tri-grading.
enum class Grade : std::uint8_t { F, H, A, R };

inline const char* grade_name(Grade g) {
  switch (g) {
    case Grade::F: return "F";
    case Grade::H: return "H";
    case Grade::A: return "A";
    case Grade::R: return "R";
  }
  return "?";
}

/// Subset of generators, bit k set when generator k is present.
using Mask = std::uint64_t;

inline int mask_size(Mask m) { return std::popcount(m); }

/// Degree first, then lexicographic on the sorted index list.
struct MaskOrder {
  bool operator()(Mask a, Mask b) const {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    Mask diff = a ^ b;
    return (diff & (~diff + 1) & a) != 0;
  }
};

/// Sign of e_a ^ e_b relative to e_{a|b} in increasing order; 0 when a and b overlap.
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    Mask above = (j == 63) ? 0 : (a >> (j + 1));
    swaps += std::popcount(above);
  }
  return (swaps & 1) ? -1 : 1;
}

using FormTerms = std::map<Mask, CoeffFn, MaskOrder>;

struct Generator {
  std::string name;
  Grade grade = Grade::R;
  std::optional<VarRef> exact;  // generator is dv
  FormTerms diff;               // declared differential (empty for exact generators)
  int conj = -1;                // index of the conjugate generator
};

class Form;

/// Finitely presented coframe model: variables, degree-1 generators and their differentials.
class CoframeModel {
 public:
  const VariableTable& vars() const { return vars_; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t rank() const { return gens_.size(); }
  /// Coefficients are constants (no variables declared).
  bool invariant() const { return vars_.empty(); }
  const std::string& label() const { return label_; }

  std::optional<int> find(const std::string& name) const {
    for (std::size_t k = 0; k < gens_.size(); ++k)
      if (gens_[k].name == name) return static_cast<int>(k);
    return std::nullopt;
  }
  int index(const std::string& name) const {
    auto k = find(name);
    if (!k) throw Error("unknown generator '" + name + "'");
    return *k;
  }
  /// Index of the generator dv.
  int exact_generator(VarRef v) const {
    for (std::size_t k = 0; k < gens_.size(); ++k)
      if (gens_[k].exact && *gens_[k].exact == v) return static_cast<int>(k);
    throw Error("variable '" + vars_.name(v) + "' has no exact generator");
  }
  bool has_tag(Grade g) const {
    for (const auto& x : gens_)
      if (x.grade == g) return true;
    return false;
  }
  Mask mask_of(Grade g) const {
    Mask m = 0;
    for (std::size_t k = 0; k < gens_.size(); ++k)
      if (gens_[k].grade == g) m |= Mask{1} << k;
    return m;
  }
  std::string mask_str(Mask m) const {
    std::string out;
    for (Mask rest = m; rest; rest &= rest - 1) {
      if (!out.empty()) out += "^";
      out += gens_[std::countr_zero(rest)].name;
    }
    return out;
  }

 private:
  friend class ModelBuilder;
  VariableTable vars_;
  std::vector<Generator> gens_;
  std::string label_;
};

using ModelPtr = std::shared_ptr<const CoframeModel>;

/// Multi-degree (r,p,q) = number of F, H, A factors.
struct Trigrade {
  int r = 0, p = 0, q = 0;
  friend bool operator<(const Trigrade& a, const Trigrade& b) {
    return std::tie(a.r, a.p, a.q) < std::tie(b.r, b.p, b.q);
  }
  friend bool operator==(const Trigrade& a, const Trigrade& b) {
    return a.r == b.r && a.p == b.p && a.q == b.q;
  }
  std::string str() const { return std::to_string(r) + std::to_string(p) + std::to_string(q); }
};

/// Sparse mixed-degree exterior form over a coframe model.
class Form {
 public:
  Form() = default;
  explicit Form(ModelPtr model) : model_(std::move(model)) {}
  Form(ModelPtr model, FormTerms terms) : model_(std::move(model)), t_(std::move(terms)) { prune(); }

  static Form scalar(ModelPtr model, const CoeffFn& f) {
    Form r(std::move(model));
    if (!f.is_zero()) r.t_.emplace(Mask{0}, f);
    return r;
  }
  static Form generator(ModelPtr model, int k, const CoeffFn& f = 1) {
    if (k < 0 || static_cast<std::size_t>(k) >= model->rank()) throw Error("generator index out of range");
    Form r(std::move(model));
    if (!f.is_zero()) r.t_.emplace(Mask{1} << k, f);
    return r;
  }
  static Form generator(const ModelPtr& model, const std::string& name) {
    return generator(model, model->index(name));
  }
  static Form monomial(ModelPtr model, Mask m, const CoeffFn& f = 1) {
    Form r(std::move(model));
    if (!f.is_zero()) r.t_.emplace(m, f);
    return r;
  }

  const ModelPtr& model() const { return model_; }
  const FormTerms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  CoeffFn coefficient(Mask m) const {
    auto it = t_.find(m);
    return it == t_.end() ? CoeffFn{} : it->second;
  }

  /// Degree if all terms share one, -1 for zero or mixed forms.
  int degree() const {
    if (t_.empty()) return -1;
    int d = mask_size(t_.begin()->first);
    for (const auto& [m, c] : t_)
      if (mask_size(m) != d) return -1;
    return d;
  }
  bool is_homogeneous(int k) const {
    for (const auto& [m, c] : t_)
      if (mask_size(m) != k) return false;
    return true;
  }
  Form degree_part(int k) const {
    Form r(model_);
    for (const auto& [m, c] : t_)
      if (mask_size(m) == k) r.t_.emplace(m, c);
    return r;
  }
  /// Component of degree equal to the model rank.
  Form top_component() const { return degree_part(static_cast<int>(need_model().rank())); }
  /// Lowest degree carrying a nonzero term, -1 for zero.
  int lowest_degree() const { return t_.empty() ? -1 : mask_size(t_.begin()->first); }

  bool has_constant_coefficients() const {
    for (const auto& [m, c] : t_)
      if (!c.is_constant()) return false;
    return true;
  }

  Form operator-() const {
    Form r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  Form& operator+=(const Form& o) {
    adopt(o);
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    adopt(o);
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const CoeffFn& f, const Form& a) {
    Form r(a.model_);
    if (f.is_zero()) return r;
    for (const auto& [m, c] : a.t_) r.add_term(m, f * c);
    return r;
  }
  friend Form operator*(const Form& a, const CoeffFn& f) { return f * a; }

  friend Form wedge(const Form& a, const Form& b) {
    Form r(a.model_ ? a.model_ : b.model_);
    r.check_same(b);
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) {
        int s = wedge_sign(ma, mb);
        if (s == 0) continue;
        CoeffFn c = ca * cb;
        r.add_term(ma | mb, s > 0 ? c : -c);
      }
    return r;
  }
  friend Form operator^(const Form& a, const Form& b) { return wedge(a, b); }

  friend bool operator==(const Form& a, const Form& b) {
    if (a.t_.empty() && b.t_.empty()) return true;
    if (a.model_ && b.model_ && a.model_ != b.model_) return false;
    return a.t_ == b.t_;
  }
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  /// Exterior derivative.
  Form d() const {
    Form r(model_);
    if (t_.empty()) return r;
    const CoframeModel& M = need_model();
    for (const auto& [m, c] : t_) {
      for (VarRef v : c.support()) {
        CoeffFn dc = c.derivative(v);
        if (dc.is_zero()) continue;
        Mask g = Mask{1} << M.exact_generator(v);
        int s = wedge_sign(g, m);
        if (s != 0) r.add_term(g | m, s > 0 ? dc : -dc);
      }
      int below = 0;
      for (Mask rest = m; rest; rest &= rest - 1, ++below) {
        int k = std::countr_zero(rest);
        const FormTerms& dk = M.generators()[k].diff;
        if (dk.empty()) continue;
        Mask others = m & ~(Mask{1} << k);
        for (const auto& [md, cd] : dk) {
          int s = wedge_sign(md, others);
          if (s == 0) continue;
          if (below & 1) s = -s;
          CoeffFn cc = cd * c;
          r.add_term(md | others, s > 0 ? cc : -cc);
        }
      }
    }
    return r;
  }

  /// Degree reversal: degree-k part times (-1)^{k(k-1)/2}.
  Form alpha() const {
    Form r = *this;
    for (auto& [m, c] : r.t_) {
      int k = mask_size(m);
      if ((k * (k - 1) / 2) & 1) c = -c;
    }
    return r;
  }

  /// Complex conjugate: coefficients conjugated, generators mapped to their declared conjugates.
  Form conj() const {
    Form r(model_);
    if (t_.empty()) return r;
    const CoframeModel& M = need_model();
    for (const auto& [m, c] : t_) {
      Mask img = 0;
      int sign = 1;
      for (Mask rest = m; rest; rest &= rest - 1) {
        Mask g = Mask{1} << M.generators()[std::countr_zero(rest)].conj;
        int s = wedge_sign(img, g);
        if (s == 0) throw Error("conjugation map is not injective on generators");
        sign *= s;
        img |= g;
      }
      CoeffFn cc = c.conj();
      r.add_term(img, sign > 0 ? cc : -cc);
    }
    return r;
  }
  bool is_real() const { return conj() == *this; }

  Trigrade trigrade_of(Mask m) const {
    const CoframeModel& M = need_model();
    Trigrade g;
    for (Mask rest = m; rest; rest &= rest - 1) {
      switch (M.generators()[std::countr_zero(rest)].grade) {
        case Grade::F: ++g.r; break;
        case Grade::H: ++g.p; break;
        case Grade::A: ++g.q; break;
        case Grade::R: throw Error("tri-grading needs F/H/A tags; generator '" +
                                   M.generators()[std::countr_zero(rest)].name + "' is untyped");
      }
    }
    return g;
  }

  /// Components A^{rpq}; they sum to the input.
  std::map<Trigrade, Form> trigrade_decompose() const {
    std::map<Trigrade, Form> out;
    for (const auto& [m, c] : t_) {
      auto [it, inserted] = out.try_emplace(trigrade_of(m), model_);
      it->second.t_.emplace(m, c);
    }
    return out;
  }
  Form trigrade_part(int r, int p, int q) const {
    Form out(model_);
    for (const auto& [m, c] : t_)
      if (trigrade_of(m) == Trigrade{r, p, q}) out.t_.emplace(m, c);
    return out;
  }
  /// (p,q) type part, ignoring fiber degree.
  Form type_part(int p, int q) const {
    Form out(model_);
    for (const auto& [m, c] : t_) {
      Trigrade g = trigrade_of(m);
      if (g.p == p && g.q == q) out.t_.emplace(m, c);
    }
    return out;
  }

  /// Component of d raising the tri-degree by (dr,dp,dq); on product models d = d_F + ∂ + ∂̄.
  Form d_shift(int dr, int dp, int dq) const {
    Form out(model_);
    for (const auto& [g, part] : trigrade_decompose()) {
      Form dp_ = part.d();
      out += dp_.trigrade_part(g.r + dr, g.p + dp, g.q + dq);
    }
    return out;
  }
  Form d_fiber() const { return d_shift(1, 0, 0); }
  Form del() const { return d_shift(0, 1, 0); }
  Form delbar() const { return d_shift(0, 0, 1); }

  /// e^{a} for a form with vanishing degree-0 part, expanded until nilpotency.
  Form exp() const {
    if (!coefficient(0).is_zero()) throw Error("exponential needs a form without scalar part");
    Form result = scalar(model_, 1);
    Form power = result;
    for (long k = 1;; ++k) {
      power = wedge(power, *this) * CoeffFn(GaussRational::fraction(1, k));
      if (power.is_zero()) break;
      result += power;
    }
    return result;
  }

  /// Pointwise value: constant-coefficient form.
  Form at(const ExactPoint& p) const {
    Form r(model_);
    for (const auto& [m, c] : t_) r.add_term(m, CoeffFn(c.evaluate(p)));
    return r;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    const VariableTable empty;
    const VariableTable& vars = model_ ? model_->vars() : empty;
    std::string out;
    for (const auto& [m, c] : t_) {
      std::string term;
      if (m == 0) {
        term = c.str(vars);
        if (t_.size() > 1 && c.terms().size() > 1) term = "(" + term + ")";
      } else {
        std::string ms = need_model().mask_str(m);
        std::string cs = c.str(vars);
        bool paren = c.terms().size() > 1 ||
                     (c.is_constant() && sgn(c.constant_term().re()) != 0 && !c.constant_term().is_real());
        if (paren) term = "(" + cs + ")*" + ms;
        else if (cs == "1") term = ms;
        else if (cs == "-1") term = "-" + ms;
        else term = cs + "*" + ms;
      }
      if (out.empty()) out = term;
      else if (term[0] == '-') out += " - " + term.substr(1);
      else out += " + " + term;
    }
    return out;
  }

  void add_term(Mask m, const CoeffFn& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  const CoframeModel& need_model() const {
    if (!model_) throw Error("form is not attached to a model");
    return *model_;
  }

 private:
  void prune() {
    for (auto it = t_.begin(); it != t_.end();) it = it->second.is_zero() ? t_.erase(it) : std::next(it);
  }
  void check_same(const Form& o) const {
    if (model_ && o.model_ && model_ != o.model_) throw Error("forms belong to different models");
  }
  void adopt(const Form& o) {
    check_same(o);
    if (!model_) model_ = o.model_;
  }

  ModelPtr model_;
  FormTerms t_;
};

inline Form operator*(const GaussRational& s, const Form& a) { return CoeffFn(s) * a; }

/// Tangent vector over the dual frame: X = Σ X^k E_k.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(ModelPtr model) : model_(std::move(model)) {}

  static VectorField frame(ModelPtr model, int k, const CoeffFn& f = 1) {
    VectorField v(std::move(model));
    v.set(k, f);
    return v;
  }
  static VectorField frame(const ModelPtr& model, const std::string& name, const CoeffFn& f = 1) {
    return frame(model, model->index(name), f);
  }

  const ModelPtr& model() const { return model_; }
  const std::map<int, CoeffFn>& components() const { return c_; }
  CoeffFn component(int k) const {
    auto it = c_.find(k);
    return it == c_.end() ? CoeffFn{} : it->second;
  }
  void set(int k, const CoeffFn& f) {
    if (!model_ || k < 0 || static_cast<std::size_t>(k) >= model_->rank())
      throw Error("vector component outside the model frame");
    if (f.is_zero()) c_.erase(k);
    else c_[k] = f;
  }
  bool is_zero() const { return c_.empty(); }

  VectorField& operator+=(const VectorField& o) {
    if (!model_) model_ = o.model_;
    for (const auto& [k, f] : o.c_) set(k, component(k) + f);
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    if (!model_) model_ = o.model_;
    for (const auto& [k, f] : o.c_) set(k, component(k) - f);
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  VectorField operator-() const {
    VectorField r(model_);
    for (const auto& [k, f] : c_) r.c_[k] = -f;
    return r;
  }
  friend VectorField operator*(const CoeffFn& f, const VectorField& v) {
    VectorField r(v.model_);
    for (const auto& [k, g] : v.c_) r.set(k, f * g);
    return r;
  }
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.c_ == b.c_; }

  VectorField conj() const {
    VectorField r(model_);
    for (const auto& [k, f] : c_) r.set(model_->generators()[k].conj, f.conj());
    return r;
  }

  /// Directional derivative X(f) = ι_X df.
  CoeffFn apply(const CoeffFn& f) const {
    CoeffFn r;
    for (VarRef v : f.support()) {
      CoeffFn xk = component(model_->exact_generator(v));
      if (!xk.is_zero()) r += xk * f.derivative(v);
    }
    return r;
  }

  VectorField at(const ExactPoint& p) const {
    VectorField r(model_);
    for (const auto& [k, f] : c_) r.set(k, CoeffFn(f.evaluate(p)));
    return r;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (const auto& [k, f] : c_) {
      std::string cs = f.str(model_->vars());
      std::string name = "E(" + model_->generators()[k].name + ")";
      std::string term;
      if (cs == "1") term = name;
      else if (cs == "-1") term = "-" + name;
      else if (f.terms().size() > 1 || (f.is_constant() && sgn(f.constant_term().re()) != 0 &&
                                        !f.constant_term().is_real()))
        term = "(" + cs + ")*" + name;
      else term = cs + "*" + name;
      if (out.empty()) out = term;
      else if (term[0] == '-') out += " - " + term.substr(1);
      else out += " + " + term;
    }
    return out;
  }

 private:
  ModelPtr model_;
  std::map<int, CoeffFn> c_;
};

/// Contraction ι_X, a graded derivation of degree -1.
inline Form interior(const VectorField& X, const Form& a) {
  Form r(a.model() ? a.model() : X.model());
  for (const auto& [m, c] : a.terms()) {
    int below = 0;
    for (Mask rest = m; rest; rest &= rest - 1, ++below) {
      int k = std::countr_zero(rest);
      CoeffFn xk = X.component(k);
      if (xk.is_zero()) continue;
      CoeffFn cc = xk * c;
      r.add_term(m & ~(Mask{1} << k), (below & 1) ? -cc : cc);
    }
  }
  return r;
}

/// Lie derivative by the Cartan formula L_X = d ι_X + ι_X d.
inline Form lie(const VectorField& X, const Form& a) { return interior(X, a).d() + interior(X, a.d()); }

/// Lie bracket: e^c([X,Y]) = X(Y^c) - Y(X^c) - de^c(X,Y).
inline VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  ModelPtr model = X.model() ? X.model() : Y.model();
  VectorField r(model);
  if (!model) return r;
  for (std::size_t c = 0; c < model->rank(); ++c) {
    int k = static_cast<int>(c);
    CoeffFn v = X.apply(Y.component(k)) - Y.apply(X.component(k));
    const FormTerms& dc = model->generators()[c].diff;
    if (!dc.empty()) {
      Form de(model, dc);
      Form val = interior(Y, interior(X, de));
      v -= val.coefficient(0);
    }
    r.set(k, v);
  }
  return r;
}

/// Two-phase construction: generators are declared first, differentials may then be written
/// as forms over the draft model, and build() validates and freezes it.
class ModelBuilder {
 public:
  explicit ModelBuilder(VariableTable vars, std::string label = {})
      : draft_(std::make_shared<CoframeModel>()) {
    draft_->vars_ = std::move(vars);
    draft_->label_ = std::move(label);
  }

  /// Generator dv; its tag follows the variable kind.
  int add_exact(const std::string& name, VarRef v) {
    if (!draft_->vars_.declares(v)) throw Error("exact generator '" + name + "' refers to an undeclared variable");
    Grade g = Grade::R;
    switch (v.kind) {
      case VarKind::Chart: g = Grade::H; break;
      case VarKind::Conj: g = Grade::A; break;
      case VarKind::Real: g = Grade::R; break;
      case VarKind::Angle: g = Grade::F; break;
    }
    int k = push(name, g);
    draft_->gens_[k].exact = v;
    return k;
  }
  int add_exact(const std::string& name, const std::string& var) {
    auto v = draft_->vars_.lookup(var);
    if (!v) throw Error("unknown variable '" + var + "'");
    return add_exact(name, *v);
  }
  int add_generator(const std::string& name, Grade g) { return push(name, g); }
  /// Declare a and b as complex conjugates (H with A, or a real generator with itself).
  void set_conjugate(const std::string& a, const std::string& b) {
    int ia = draft_->index(a), ib = draft_->index(b);
    draft_->gens_[ia].conj = ib;
    draft_->gens_[ib].conj = ia;
  }
  void set_diff(const std::string& name, const Form& diff) {
    int k = draft_->index(name);
    if (draft_->gens_[k].exact) throw Error("generator '" + name + "' is exact; its differential is zero");
    if (!diff.is_homogeneous(2)) throw Error("differential of '" + name + "' must have pure degree 2");
    if (diff.model() && diff.model() != draft_) throw Error("differential of '" + name + "' uses another model");
    draft_->gens_[k].diff = diff.terms();
  }

  ModelPtr draft() const { return draft_; }
  Form gen(const std::string& name) const { return Form::generator(draft_, name); }
  Form scalar(const CoeffFn& f) const { return Form::scalar(draft_, f); }
  CoeffFn var(const std::string& name) const {
    auto v = draft_->vars_.lookup(name);
    if (!v) throw Error("unknown variable '" + name + "'");
    return CoeffFn::variable(*v);
  }

  ModelPtr build() {
    if (!draft_) throw Error("model already built");
    CoframeModel& M = *draft_;
    if (M.gens_.size() > 64) throw Error("at most 64 generators are supported");
    // exact generators: exactly one per variable, conjugate pairs dz <-> dzb
    for (VarRef v : M.vars_.all()) {
      int count = 0;
      for (const auto& g : M.gens_)
        if (g.exact && *g.exact == v) ++count;
      if (count != 1)
        throw Error("variable '" + M.vars_.name(v) + "' needs exactly one exact generator, found " +
                    std::to_string(count));
    }
    for (std::size_t k = 0; k < M.gens_.size(); ++k) {
      auto& g = M.gens_[k];
      if (!g.exact) continue;
      VarRef w = *g.exact;
      if (w.kind == VarKind::Chart) w.kind = VarKind::Conj;
      else if (w.kind == VarKind::Conj) w.kind = VarKind::Chart;
      g.conj = M.exact_generator(w);
    }
    for (std::size_t k = 0; k < M.gens_.size(); ++k) {
      auto& g = M.gens_[k];
      if (g.conj < 0) {
        if (g.grade == Grade::H || g.grade == Grade::A)
          throw Error("generator '" + g.name + "' is complex and needs a declared conjugate");
        g.conj = static_cast<int>(k);
      }
      const auto& partner = M.gens_[g.conj];
      bool ok = (g.grade == Grade::H && partner.grade == Grade::A) ||
                (g.grade == Grade::A && partner.grade == Grade::H) ||
                ((g.grade == Grade::F || g.grade == Grade::R) && g.conj == static_cast<int>(k));
      if (!ok || partner.conj != static_cast<int>(k))
        throw Error("inconsistent conjugate declaration for generator '" + g.name + "'");
    }
    ModelPtr frozen = draft_;
    for (std::size_t k = 0; k < M.gens_.size(); ++k) {
      const auto& g = M.gens_[k];
      if (g.diff.empty()) continue;
      Form dg(frozen, g.diff);
      if (!dg.d().is_zero())
        throw Error("structure equations violate d^2 = 0 at generator '" + g.name + "'");
    }
    for (std::size_t k = 0; k < M.gens_.size(); ++k) {
      const auto& g = M.gens_[k];
      Form lhs = Form(frozen, g.diff).conj();
      Form rhs(frozen, M.gens_[g.conj].diff);
      if (lhs != rhs) throw Error("differential of '" + g.name + "' is incompatible with conjugation");
    }
    draft_.reset();
    return frozen;
  }

 private:
  int push(const std::string& name, Grade g) {
    if (!draft_) throw Error("model already built");
    if (name.empty()) throw Error("empty generator name");
    if (draft_->find(name)) throw Error("duplicate generator '" + name + "'");
    if (draft_->vars_.lookup(name)) throw Error("generator '" + name + "' clashes with a variable name");
    Generator gen;
    gen.name = name;
    gen.grade = g;
    draft_->gens_.push_back(std::move(gen));
    return static_cast<int>(draft_->gens_.size() - 1);
  }

  std::shared_ptr<CoframeModel> draft_;
};

}  // namespace gencx
