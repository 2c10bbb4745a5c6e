#pragma once

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gencx/error.hpp"
#include "gencx/gaussian.hpp"

namespace gencx {

/// Variable kinds, in the order they appear in the canonical exponent vector (a, b, r, k).
enum class VarKind : std::uint8_t { Chart = 0, Conj = 1, Real = 2, Angle = 3 };

struct VarRef {
  VarKind kind = VarKind::Chart;
  std::uint16_t index = 0;

  std::uint16_t slot() const { return static_cast<std::uint16_t>((static_cast<unsigned>(kind) << 12) | index); }
  static VarRef from_slot(std::uint16_t s) {
    return {static_cast<VarKind>(s >> 12), static_cast<std::uint16_t>(s & 0x0fff)};
  }
  friend bool operator==(VarRef a, VarRef b) { return a.kind == b.kind && a.index == b.index; }
  friend bool operator<(VarRef a, VarRef b) { return a.slot() < b.slot(); }
};

/// z^a zbar^b x^r e^{i k.t}, stored sparsely as (slot, exponent) pairs sorted by slot.
/// Angle exponents may be negative; all other exponents are positive.
class Monomial {
 public:
  using Entry = std::pair<std::uint16_t, int>;

  Monomial() = default;
  static Monomial variable(VarRef v, int power = 1) {
    Monomial m;
    if (power != 0) m.e_.emplace_back(v.slot(), power);
    return m;
  }
  static Monomial character(const std::vector<int>& k) {
    Monomial m;
    for (std::size_t j = 0; j < k.size(); ++j)
      if (k[j] != 0) m.e_.emplace_back(VarRef{VarKind::Angle, static_cast<std::uint16_t>(j)}.slot(), k[j]);
    return m;
  }

  const std::vector<Entry>& entries() const { return e_; }
  bool is_one() const { return e_.empty(); }

  int exponent(VarRef v) const {
    auto s = v.slot();
    auto it = std::lower_bound(e_.begin(), e_.end(), Entry{s, 0},
                               [](const Entry& x, const Entry& y) { return x.first < y.first; });
    return (it != e_.end() && it->first == s) ? it->second : 0;
  }

  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    Monomial r;
    r.e_.reserve(x.e_.size() + y.e_.size());
    std::size_t i = 0, j = 0;
    while (i < x.e_.size() || j < y.e_.size()) {
      if (j == y.e_.size() || (i < x.e_.size() && x.e_[i].first < y.e_[j].first)) {
        r.e_.push_back(x.e_[i++]);
      } else if (i == x.e_.size() || y.e_[j].first < x.e_[i].first) {
        r.e_.push_back(y.e_[j++]);
      } else {
        int e = x.e_[i].second + y.e_[j].second;
        if (e != 0) r.e_.emplace_back(x.e_[i].first, e);
        ++i;
        ++j;
      }
    }
    return r;
  }

  /// Quotient x / y when it exists in the ring (non-angle exponents stay nonnegative).
  friend std::optional<Monomial> divide(const Monomial& x, const Monomial& y) {
    Monomial inv;
    for (auto [s, e] : y.e_) inv.e_.emplace_back(s, -e);
    Monomial q = x * inv;
    for (auto [s, e] : q.e_)
      if (VarRef::from_slot(s).kind != VarKind::Angle && e < 0) return std::nullopt;
    return q;
  }

  /// Complex conjugate: z <-> zbar, k -> -k, real variables fixed.
  Monomial conj() const {
    Monomial r;
    for (auto [s, e] : e_) {
      VarRef v = VarRef::from_slot(s);
      if (v.kind == VarKind::Chart) v.kind = VarKind::Conj;
      else if (v.kind == VarKind::Conj) v.kind = VarKind::Chart;
      else if (v.kind == VarKind::Angle) e = -e;
      r.e_.emplace_back(v.slot(), e);
    }
    std::sort(r.e_.begin(), r.e_.end());
    return r;
  }

  /// Lexicographic order on the dense exponent vector (a, b, r, k).
  friend bool operator<(const Monomial& x, const Monomial& y) {
    std::size_t i = 0, j = 0;
    while (i < x.e_.size() || j < y.e_.size()) {
      if (i < x.e_.size() && j < y.e_.size() && x.e_[i] == y.e_[j]) {
        ++i;
        ++j;
        continue;
      }
      // first differing slot
      std::uint16_t s;
      if (j == y.e_.size()) s = x.e_[i].first;
      else if (i == x.e_.size()) s = y.e_[j].first;
      else s = std::min(x.e_[i].first, y.e_[j].first);
      int ex = (i < x.e_.size() && x.e_[i].first == s) ? x.e_[i].second : 0;
      int ey = (j < y.e_.size() && y.e_[j].first == s) ? y.e_[j].second : 0;
      return ex < ey;
    }
    return false;
  }
  friend bool operator==(const Monomial& x, const Monomial& y) { return x.e_ == y.e_; }
  friend bool operator!=(const Monomial& x, const Monomial& y) { return !(x == y); }

 private:
  std::vector<Entry> e_;
};

/// Ordered variable names of a model. Every chart variable `z1` has an implicit
/// conjugate named by inserting `b` before its trailing digits (`zb1`; `z` -> `zb`).
class VariableTable {
 public:
  VariableTable() = default;
  VariableTable(std::vector<std::string> chart, std::vector<std::string> real, std::vector<std::string> angle)
      : chart_(std::move(chart)), real_(std::move(real)), angle_(std::move(angle)) {
    std::vector<std::string> all;
    for (const auto& n : chart_) {
      all.push_back(n);
      all.push_back(conjugate_name(n));
    }
    all.insert(all.end(), real_.begin(), real_.end());
    all.insert(all.end(), angle_.begin(), angle_.end());
    std::vector<std::string> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw Error("duplicate variable name '" + *dup + "'");
    if (all.size() > 0x0fff) throw Error("too many variables");
  }

  static std::string conjugate_name(const std::string& n) {
    std::size_t k = n.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(n[k - 1]))) --k;
    return n.substr(0, k) + "b" + n.substr(k);
  }

  const std::vector<std::string>& chart() const { return chart_; }
  const std::vector<std::string>& real() const { return real_; }
  const std::vector<std::string>& angle() const { return angle_; }
  bool empty() const { return chart_.empty() && real_.empty() && angle_.empty(); }

  std::optional<VarRef> lookup(const std::string& name) const {
    for (std::size_t a = 0; a < chart_.size(); ++a) {
      if (chart_[a] == name) return VarRef{VarKind::Chart, static_cast<std::uint16_t>(a)};
      if (conjugate_name(chart_[a]) == name) return VarRef{VarKind::Conj, static_cast<std::uint16_t>(a)};
    }
    for (std::size_t a = 0; a < real_.size(); ++a)
      if (real_[a] == name) return VarRef{VarKind::Real, static_cast<std::uint16_t>(a)};
    for (std::size_t a = 0; a < angle_.size(); ++a)
      if (angle_[a] == name) return VarRef{VarKind::Angle, static_cast<std::uint16_t>(a)};
    return std::nullopt;
  }

  std::string name(VarRef v) const {
    switch (v.kind) {
      case VarKind::Chart: return chart_.at(v.index);
      case VarKind::Conj: return conjugate_name(chart_.at(v.index));
      case VarKind::Real: return real_.at(v.index);
      case VarKind::Angle: return angle_.at(v.index);
    }
    return {};
  }

  bool declares(VarRef v) const {
    switch (v.kind) {
      case VarKind::Chart:
      case VarKind::Conj: return v.index < chart_.size();
      case VarKind::Real: return v.index < real_.size();
      case VarKind::Angle: return v.index < angle_.size();
    }
    return false;
  }

  /// All variables (including conjugates) in canonical order.
  std::vector<VarRef> all() const {
    std::vector<VarRef> out;
    for (std::size_t a = 0; a < chart_.size(); ++a) out.push_back({VarKind::Chart, static_cast<std::uint16_t>(a)});
    for (std::size_t a = 0; a < chart_.size(); ++a) out.push_back({VarKind::Conj, static_cast<std::uint16_t>(a)});
    for (std::size_t a = 0; a < real_.size(); ++a) out.push_back({VarKind::Real, static_cast<std::uint16_t>(a)});
    for (std::size_t a = 0; a < angle_.size(); ++a) out.push_back({VarKind::Angle, static_cast<std::uint16_t>(a)});
    return out;
  }

  friend bool operator==(const VariableTable& x, const VariableTable& y) {
    return x.chart_ == y.chart_ && x.real_ == y.real_ && x.angle_ == y.angle_;
  }

 private:
  std::vector<std::string> chart_;
  std::vector<std::string> real_;
  std::vector<std::string> angle_;
};

/// Floating point sample: complex chart values, real values, angle values in radians.
struct FloatPoint {
  std::vector<std::complex<double>> chart;
  std::vector<double> real;
  std::vector<double> angle;
};

/// Exact sample point. Angles are given by the character value c_j = e^{i t_j},
/// which must be a unit Gaussian rational (e.g. 3/5+4/5i).
struct ExactPoint {
  std::vector<GaussRational> chart;
  std::vector<mpq_class> real;
  std::vector<GaussRational> angle_character;

  void validate() const {
    for (const auto& c : angle_character)
      if (c.norm() != 1) throw Error("angle character " + c.str() + " is not of unit modulus");
  }
};

/// Finite sum of monomials with Gaussian-rational coefficients. Canonical: no zero terms,
/// terms ordered by the monomial order, so structural equality is ring equality.
class CoeffFn {
 public:
  using Terms = std::map<Monomial, GaussRational>;

  CoeffFn() = default;
  CoeffFn(const GaussRational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) t_.emplace(Monomial{}, c);
  }
  CoeffFn(int c) : CoeffFn(GaussRational(c)) {}  // NOLINT(google-explicit-constructor)
  static CoeffFn monomial(const Monomial& m, const GaussRational& c = 1) {
    CoeffFn f;
    if (!c.is_zero()) f.t_.emplace(m, c);
    return f;
  }
  static CoeffFn variable(VarRef v) { return monomial(Monomial::variable(v)); }
  static CoeffFn character(const std::vector<int>& k) { return monomial(Monomial::character(k)); }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
  GaussRational constant_term() const {
    auto it = t_.find(Monomial{});
    return it == t_.end() ? GaussRational{} : it->second;
  }
  /// Value of a constant function; throws for non-constants.
  GaussRational constant_value() const {
    if (!is_constant()) throw Error("coefficient is not constant");
    return constant_term();
  }

  void add_term(const Monomial& m, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  CoeffFn operator-() const {
    CoeffFn r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  CoeffFn& operator+=(const CoeffFn& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  CoeffFn& operator-=(const CoeffFn& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend CoeffFn operator+(CoeffFn a, const CoeffFn& b) { return a += b; }
  friend CoeffFn operator-(CoeffFn a, const CoeffFn& b) { return a -= b; }
  friend CoeffFn operator*(const CoeffFn& a, const CoeffFn& b) {
    CoeffFn r;
    if (a.is_zero() || b.is_zero()) return r;
    if (b.is_constant()) return a.scaled(b.constant_term());
    if (a.is_constant()) return b.scaled(a.constant_term());
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  CoeffFn& operator*=(const CoeffFn& o) { return *this = *this * o; }
  CoeffFn scaled(const GaussRational& s) const {
    CoeffFn r;
    if (s.is_zero()) return r;
    r.t_ = t_;
    if (!s.is_one())
      for (auto& [m, c] : r.t_) c *= s;
    return r;
  }
  friend bool operator==(const CoeffFn& a, const CoeffFn& b) { return a.t_ == b.t_; }
  friend bool operator!=(const CoeffFn& a, const CoeffFn& b) { return !(a == b); }

  CoeffFn conj() const {
    CoeffFn r;
    for (const auto& [m, c] : t_) r.add_term(m.conj(), c.conj());
    return r;
  }
  bool is_real() const { return conj() == *this; }

  /// Formal partial derivative; d/dt_j e^{ik.t} = i k_j e^{ik.t}.
  CoeffFn derivative(VarRef v) const {
    CoeffFn r;
    for (const auto& [m, c] : t_) {
      int e = m.exponent(v);
      if (e == 0) continue;
      if (v.kind == VarKind::Angle) {
        r.add_term(m, c * GaussRational(mpq_class(0), mpq_class(e)));
      } else {
        r.add_term(m * Monomial::variable(v, -1), c * GaussRational(e));
      }
    }
    return r;
  }

  /// Variables (including conjugates and angles) that appear in some term.
  std::vector<VarRef> support() const {
    std::vector<VarRef> out;
    for (const auto& [m, c] : t_)
      for (auto [s, e] : m.entries()) out.push_back(VarRef::from_slot(s));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::complex<double> evaluate(const FloatPoint& p) const {
    std::complex<double> total = 0;
    for (const auto& [m, c] : t_) {
      std::complex<double> v = c.to_complex();
      for (auto [s, e] : m.entries()) {
        VarRef var = VarRef::from_slot(s);
        switch (var.kind) {
          case VarKind::Chart: v *= std::pow(lookup(p.chart, var), e); break;
          case VarKind::Conj: v *= std::pow(std::conj(lookup(p.chart, var)), e); break;
          case VarKind::Real: v *= std::pow(lookup(p.real, var), e); break;
          case VarKind::Angle: v *= std::polar(1.0, e * lookup(p.angle, var)); break;
        }
      }
      total += v;
    }
    return total;
  }

  GaussRational evaluate(const ExactPoint& p) const {
    GaussRational total;
    for (const auto& [m, c] : t_) {
      GaussRational v = c;
      for (auto [s, e] : m.entries()) {
        VarRef var = VarRef::from_slot(s);
        GaussRational base;
        switch (var.kind) {
          case VarKind::Chart: base = lookup(p.chart, var); break;
          case VarKind::Conj: base = lookup(p.chart, var).conj(); break;
          case VarKind::Real: base = GaussRational(lookup(p.real, var)); break;
          case VarKind::Angle: base = lookup(p.angle_character, var); break;
        }
        v *= power(base, e);
      }
      total += v;
    }
    return total;
  }

  /// Canonical text, e.g. `3/2*z1^2*zb1 + i*E(1,0)`. `0` for the zero function.
  std::string str(const VariableTable& vars) const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : t_) {
      std::string term = term_str(m, c, vars);
      if (first) {
        out = term;
      } else if (term[0] == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
      first = false;
    }
    return out;
  }

  static std::string monomial_str(const Monomial& m, const VariableTable& vars) {
    std::string out;
    std::vector<int> k(vars.angle().size(), 0);
    bool has_char = false;
    for (auto [s, e] : m.entries()) {
      VarRef v = VarRef::from_slot(s);
      if (v.kind == VarKind::Angle) {
        if (v.index >= k.size()) throw Error("angle index out of range for variable table");
        k[v.index] = e;
        has_char = true;
        continue;
      }
      if (!out.empty()) out += "*";
      out += vars.name(v);
      if (e != 1) out += "^" + std::to_string(e);
    }
    if (has_char) {
      if (!out.empty()) out += "*";
      out += "E(";
      for (std::size_t j = 0; j < k.size(); ++j) out += (j ? "," : "") + std::to_string(k[j]);
      out += ")";
    }
    return out;
  }

 private:
  template <class T>
  static const T& lookup(const std::vector<T>& values, VarRef v) {
    if (v.index >= values.size()) throw Error("evaluation point is missing a value for a variable");
    return values[v.index];
  }

  static GaussRational power(const GaussRational& b, int e) {
    GaussRational r = 1;
    GaussRational base = e < 0 ? GaussRational(1) / b : b;
    for (int n = e < 0 ? -e : e; n > 0; --n) r *= base;
    return r;
  }

  static std::string term_str(const Monomial& m, const GaussRational& c, const VariableTable& vars) {
    if (m.is_one()) return c.str();
    std::string mono = monomial_str(m, vars);
    if (c.is_one()) return mono;
    if (c == GaussRational(-1)) return "-" + mono;
    bool simple = c.is_real() || sgn(c.re()) == 0;
    std::string cs = c.str();
    if (simple) return cs + "*" + mono;
    return "(" + cs + ")*" + mono;
  }

  Terms t_;
};

}  // namespace gencx
