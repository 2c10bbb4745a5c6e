#pragma once

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gencx/bundles.hpp"
#include "gencx/geometry.hpp"

namespace gencx {

/// Where expression names resolve: generators and variables of `model`, plus named forms.
struct ExprScope {
  ModelPtr model;
  const std::vector<std::pair<std::string, Form>>* forms = nullptr;
  bool structure_equation = false;  // inside a generator differential: no d(), conj(), exp()
};

namespace detail {

struct Token {
  enum Kind { Number, Ident, Op, End } kind = End;
  std::string text;
  GaussRational value;
  bool integer = false;  // plain digits
  int column = 0;        // 1-based, in the source line
};

class ExprParser {
 public:
  ExprParser(const std::string& text, int line, int column, const ExprScope& scope)
      : line_(line), scope_(scope) {
    lex(text, column);
  }

  Form parse() {
    Form f = expr();
    if (peek().kind != Token::End) fail("unexpected '" + peek().text + "'", peek());
    return f;
  }

 private:
  void lex(const std::string& s, int col0) {
    std::size_t k = 0;
    while (k < s.size()) {
      char c = s[k];
      int col = col0 + static_cast<int>(k);
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++k;
        continue;
      }
      Token t;
      t.column = col;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        mpq_class v(s.substr(start, k - start));
        t.integer = true;
        if (k + 1 < s.size() && s[k] == '/' && std::isdigit(static_cast<unsigned char>(s[k + 1]))) {
          std::size_t ds = ++k;
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
          mpz_class den(s.substr(ds, k - ds));
          if (den == 0) throw ParseError("division by zero in number literal", line_, col);
          v /= den;
          v.canonicalize();
          t.integer = false;
        }
        bool imag = k < s.size() && s[k] == 'i' &&
                    (k + 1 == s.size() || !(std::isalnum(static_cast<unsigned char>(s[k + 1])) || s[k + 1] == '_'));
        if (imag) {
          ++k;
          t.integer = false;
          t.value = GaussRational(mpq_class(0), v);
        } else {
          t.value = GaussRational(v);
        }
        t.kind = Token::Number;
        t.text = s.substr(start, k - start);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = k;
        while (k < s.size() && (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_')) ++k;
        t.kind = Token::Ident;
        t.text = s.substr(start, k - start);
      } else if (std::string("+-*/^(),").find(c) != std::string::npos) {
        t.kind = Token::Op;
        t.text = std::string(1, c);
        ++k;
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col);
      }
      toks_.push_back(std::move(t));
    }
    Token end;
    end.column = col0 + static_cast<int>(s.size());
    end.text = "end of expression";
    toks_.push_back(end);
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(const std::string& op) {
    if (peek().kind == Token::Op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& op) {
    if (!accept(op)) fail("expected '" + op + "' but found '" + peek().text + "'", peek());
  }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw ParseError(msg, line_, at.column); }

  Form scalar(const CoeffFn& c) const { return Form::scalar(scope_.model, c); }

  Form expr() {
    Form f = term();
    for (;;) {
      if (accept("+")) f += term();
      else if (accept("-")) f -= term();
      else return f;
    }
  }
  Form term() {
    Form f = unary();
    for (;;) {
      if (accept("*")) {
        f = wedge(f, unary());
      } else if (peek().kind == Token::Op && peek().text == "/") {
        Token at = next();
        Form g = unary();
        if (!g.is_homogeneous(0) || g.is_zero() || !g.coefficient(0).is_constant())
          fail("division needs a nonzero constant divisor", at);
        f = GaussRational(1) / g.coefficient(0).constant_value() * f;
      } else {
        return f;
      }
    }
  }
  Form unary() {
    if (accept("-")) return -unary();
    if (accept("+")) return unary();
    return power();
  }
  Form power() {
    Form f = atom();
    while (peek().kind == Token::Op && peek().text == "^") {
      next();
      if (peek().kind == Token::Number && peek().integer) {
        const Token& e = next();
        long n = mpz_class(e.value.re().get_num()).get_si();
        if (n > 64) fail("exponent too large", e);
        Form p = scalar(1);
        for (long k = 0; k < n; ++k) p = wedge(p, f);
        f = p;
      } else {
        f = wedge(f, atom());
      }
    }
    return f;
  }
  Form atom() {
    const Token& t = peek();
    if (t.kind == Token::Number) {
      next();
      return scalar(t.value);
    }
    if (accept("(")) {
      Form f = expr();
      expect(")");
      return f;
    }
    if (t.kind != Token::Ident) fail("expected a term but found '" + t.text + "'", t);
    Token id = next();
    if (peek().kind == Token::Op && peek().text == "(") return call(id);
    return name(id);
  }
  Form call(const Token& id) {
    next();  // (
    if (id.text == "E") {
      std::vector<int> k;
      if (!(peek().kind == Token::Op && peek().text == ")")) {
        do {
          bool neg = accept("-");
          const Token& n = peek();
          if (n.kind != Token::Number || !n.integer) fail("character exponents must be integers", n);
          next();
          long v = mpz_class(n.value.re().get_num()).get_si();
          k.push_back(static_cast<int>(neg ? -v : v));
        } while (accept(","));
      }
      expect(")");
      std::size_t angles = scope_.model->vars().angle().size();
      if (k.size() != angles)
        fail("E() needs one exponent per angle variable (" + std::to_string(angles) + ")", id);
      return scalar(CoeffFn::character(k));
    }
    if (id.text != "d" && id.text != "conj" && id.text != "exp") fail("unknown function '" + id.text + "'", id);
    if (scope_.structure_equation) fail(id.text + "() is not available in a structure equation", id);
    Form arg = expr();
    expect(")");
    try {
      if (id.text == "d") return arg.d();
      if (id.text == "conj") return arg.conj();
      return arg.exp();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(e.what(), id);
    }
  }
  Form name(const Token& id) {
    if (id.text == "i") return scalar(GaussRational::i());
    const CoframeModel& M = *scope_.model;
    if (auto g = M.find(id.text)) return Form::generator(scope_.model, *g);
    if (auto v = M.vars().lookup(id.text)) return scalar(CoeffFn::variable(*v));
    if (scope_.forms)
      for (const auto& [n, f] : *scope_.forms)
        if (n == id.text) return f;
    fail("unknown name '" + id.text + "'", id);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
  const ExprScope& scope_;
};

}  // namespace detail

/// Parses one expression; `line`/`column` locate its first character for diagnostics.
inline Form parse_expression(const std::string& text, const ExprScope& scope, int line = 0, int column = 1) {
  if (!scope.model) throw Error("expression scope has no model");
  return detail::ExprParser(text, line, column, scope).parse();
}

inline Form parse_expression(const std::string& text, const ModelPtr& model) {
  return parse_expression(text, ExprScope{model, nullptr, false});
}

struct BundleSection {
  std::string base_ref;  // path of the base document; empty when this document is the base
  int l = 0;
  bool chart = false;    // connection given by beta (chart) or curvature (invariant)
  std::vector<Form> data;  // beta_j or curvature_j on the base
  Form eta;              // closed real 2-form on the total space
  BundleModel bundle;
};

/// A parsed model file: one coframe model plus optional forms, GCS and bundle sections.
struct ModelDocument {
  std::string source;
  std::string name;
  ModelPtr model;
  std::vector<std::pair<std::string, Form>> forms;
  std::optional<GcsSpec> gcs;
  std::optional<BundleSection> bundle;

  const Form& form(const std::string& n) const {
    for (const auto& [k, f] : forms)
      if (k == n) return f;
    throw Error("document has no form named '" + n + "'");
  }
};

using DocumentLoader = std::function<ModelDocument(const std::string&)>;

namespace detail {

struct Entry {
  std::string key, value;
  int line = 0, key_col = 1, value_col = 1;
};

struct Section {
  std::string name;  // e.g. "vars", "generator.e4"
  int line = 0;
  std::vector<Entry> entries;

  const Entry* find(const std::string& k) const {
    for (const auto& e : entries)
      if (e.key == k) return &e;
    return nullptr;
  }
};

inline std::string trim(const std::string& s, std::size_t* lead = nullptr) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

inline bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string body = raw.substr(0, raw.find('#'));
    std::size_t lead = 0;
    std::string t = trim(body, &lead);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError("section header must end with ']'", line, static_cast<int>(lead + t.size()));
      Section s;
      s.name = trim(t.substr(1, t.size() - 2));
      s.line = line;
      if (s.name.empty()) throw ParseError("empty section name", line, static_cast<int>(lead + 1));
      for (const auto& prev : out)
        if (prev.name == s.name) throw ParseError("duplicate section [" + s.name + "]", line, static_cast<int>(lead + 1));
      out.push_back(std::move(s));
      continue;
    }
    std::size_t eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line, static_cast<int>(lead + 1));
    if (out.empty()) throw ParseError("entry outside of any section", line, static_cast<int>(lead + 1));
    Entry e;
    e.line = line;
    std::size_t klead = 0, vlead = 0;
    e.key = trim(body.substr(0, eq), &klead);
    e.key_col = static_cast<int>(klead + 1);
    std::string v = body.substr(eq + 1);
    e.value = trim(v, &vlead);
    e.value_col = static_cast<int>(eq + 1 + vlead + 1);
    if (e.value.size() >= 2 && e.value.front() == '"' && e.value.back() == '"') {
      e.value = e.value.substr(1, e.value.size() - 2);
      ++e.value_col;
    }
    if (!valid_identifier(e.key)) throw ParseError("invalid key '" + e.key + "'", line, e.key_col);
    if (out.back().find(e.key)) throw ParseError("duplicate key '" + e.key + "'", line, e.key_col);
    out.back().entries.push_back(std::move(e));
  }
  return out;
}

inline void allow_keys(const Section& s, std::initializer_list<const char*> keys) {
  for (const auto& e : s.entries) {
    bool ok = false;
    for (const char* k : keys) ok = ok || e.key == k;
    if (!ok) throw ParseError("unknown key '" + e.key + "' in [" + s.name + "]", e.line, e.key_col);
  }
}

/// Comma-separated names.
inline std::vector<std::string> name_list(const Entry& e) {
  std::vector<std::string> out;
  if (trim(e.value).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = e.value.find(',', start);
    std::size_t lead = 0;
    std::string item = trim(e.value.substr(start, comma == std::string::npos ? std::string::npos : comma - start), &lead);
    if (!valid_identifier(item))
      throw ParseError("invalid name '" + item + "'", e.line, e.value_col + static_cast<int>(start + lead));
    out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

/// `[a, b, ...]` split at top-level commas; each item with its column.
inline std::vector<std::pair<std::string, int>> bracket_list(const Entry& e) {
  const std::string& v = e.value;
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw ParseError("expected a list '[...]'", e.line, e.value_col);
  std::vector<std::pair<std::string, int>> out;
  std::string inner = v.substr(1, v.size() - 2);
  if (trim(inner).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= inner.size(); ++k) {
    if (k < inner.size()) {
      if (inner[k] == '(') ++depth;
      if (inner[k] == ')') --depth;
    }
    if (k == inner.size() || (inner[k] == ',' && depth == 0)) {
      std::size_t lead = 0;
      std::string item = trim(inner.substr(start, k - start), &lead);
      int col = e.value_col + 1 + static_cast<int>(start + lead);
      if (item.empty()) throw ParseError("empty list item", e.line, col);
      out.emplace_back(item, col);
      start = k + 1;
    }
  }
  return out;
}

inline Grade parse_grade(const Entry& e) {
  if (e.value == "F") return Grade::F;
  if (e.value == "H") return Grade::H;
  if (e.value == "A") return Grade::A;
  if (e.value == "R") return Grade::R;
  throw ParseError("grade must be one of F, H, A, R", e.line, e.value_col);
}

inline Form entry_form(const Entry& e, const ExprScope& scope) {
  return parse_expression(e.value, scope, e.line, e.value_col);
}

/// Rethrows library errors raised while interpreting an entry as located diagnostics.
template <class F>
auto located(int line, int col, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), line, col);
  }
}

inline ModelPtr build_document_model(const std::vector<Section>& secs, const std::string& label) {
  VariableTable vars;
  for (const auto& s : secs)
    if (s.name == "vars") {
      allow_keys(s, {"chart", "real", "angle"});
      std::vector<std::string> chart, real, angle;
      if (auto e = s.find("chart")) chart = name_list(*e);
      if (auto e = s.find("real")) real = name_list(*e);
      if (auto e = s.find("angle")) angle = name_list(*e);
      vars = located(s.line, 1, [&] { return VariableTable(chart, real, angle); });
    }
  ModelBuilder b(vars, label);
  std::vector<const Section*> gens;
  for (const auto& s : secs)
    if (s.name.rfind("generator.", 0) == 0) gens.push_back(&s);
  if (gens.empty()) throw ParseError("document declares no generators", secs.empty() ? 0 : 1, 1);
  for (const Section* s : gens) {
    allow_keys(*s, {"grade", "exact", "diff", "conj"});
    std::string name = s->name.substr(10);
    if (!valid_identifier(name)) throw ParseError("invalid generator name '" + name + "'", s->line, 1);
    const Entry* exact = s->find("exact");
    const Entry* grade = s->find("grade");
    if (exact) {
      if (s->find("diff")) throw ParseError("exact generator '" + name + "' cannot declare a differential", s->find("diff")->line, 1);
      int k = located(exact->line, exact->value_col, [&] { return b.add_exact(name, exact->value); });
      if (grade && parse_grade(*grade) != b.draft()->generators()[k].grade)
        throw ParseError("grade of exact generator '" + name + "' contradicts its variable", grade->line, grade->value_col);
    } else {
      if (!grade) throw ParseError("generator '" + name + "' needs 'grade' or 'exact'", s->line, 1);
      located(s->line, 1, [&] { return b.add_generator(name, parse_grade(*grade)); });
    }
  }
  for (const Section* s : gens)
    if (const Entry* c = s->find("conj")) {
      std::string name = s->name.substr(10);
      located(c->line, c->value_col, [&] {
        if (!b.draft()->find(c->value)) throw Error("unknown generator '" + c->value + "'");
        b.set_conjugate(name, c->value);
        return 0;
      });
    }
  ExprScope scope{b.draft(), nullptr, true};
  for (const Section* s : gens)
    if (const Entry* e = s->find("diff")) {
      std::string name = s->name.substr(10);
      Form f = entry_form(*e, scope);
      located(e->line, e->value_col, [&] {
        b.set_diff(name, f);
        return 0;
      });
    }
  int first = gens.front()->line;
  return located(first, 1, [&] { return b.build(); });
}

}  // namespace detail

/// Parses a model document. `loader` resolves `[bundle] base = <path>` references.
inline ModelDocument parse_model(const std::string& text, const DocumentLoader& loader = {}) {
  using namespace detail;
  auto secs = split_sections(text);
  for (const auto& s : secs) {
    bool known = s.name == "model" || s.name == "vars" || s.name == "gcs" || s.name == "bundle" ||
                 s.name.rfind("generator.", 0) == 0 || s.name.rfind("form.", 0) == 0;
    if (!known) throw ParseError("unknown section [" + s.name + "]", s.line, 1);
  }
  ModelDocument doc;
  doc.source = text;
  doc.name = "model";
  for (const auto& s : secs)
    if (s.name == "model") {
      allow_keys(s, {"name"});
      if (auto e = s.find("name")) doc.name = e->value;
    }

  const Section* bundle = nullptr;
  for (const auto& s : secs)
    if (s.name == "bundle") bundle = &s;
  const Entry* base_ref = bundle ? bundle->find("base") : nullptr;
  if (base_ref) {
    for (const auto& s : secs)
      if (s.name == "vars" || s.name.rfind("generator.", 0) == 0)
        throw ParseError("a document with '[bundle] base' may not declare its own [" + s.name + "]", s.line, 1);
    if (!loader) throw ParseError("base documents need a file loader", base_ref->line, base_ref->value_col);
    ModelDocument base = located(base_ref->line, base_ref->value_col, [&] { return loader(base_ref->value); });
    doc.model = base.model;
  } else {
    doc.model = build_document_model(secs, doc.name);
  }

  ExprScope scope{doc.model, &doc.forms, false};
  for (const auto& s : secs)
    if (s.name.rfind("form.", 0) == 0) {
      allow_keys(s, {"value"});
      std::string name = s.name.substr(5);
      if (!valid_identifier(name)) throw ParseError("invalid form name '" + name + "'", s.line, 1);
      if (doc.model->find(name) || doc.model->vars().lookup(name) || name == "i")
        throw ParseError("form name '" + name + "' shadows a generator or variable", s.line, 1);
      const Entry* v = s.find("value");
      if (!v) throw ParseError("form '" + name + "' needs a value", s.line, 1);
      doc.forms.emplace_back(name, entry_form(*v, scope));
    }

  for (const auto& s : secs)
    if (s.name == "gcs") {
      allow_keys(s, {"B", "omega", "Omega"});
      GcsSpec g{Form(doc.model), Form(doc.model), Form::scalar(doc.model, 1)};
      if (auto e = s.find("B")) g.B = entry_form(*e, scope);
      if (auto e = s.find("omega")) g.omega = entry_form(*e, scope);
      if (auto e = s.find("Omega")) g.Omega = entry_form(*e, scope);
      if (g.B.is_zero()) g.B = Form(doc.model);
      if (g.omega.is_zero()) g.omega = Form(doc.model);
      doc.gcs = g;
    }

  if (bundle) {
    allow_keys(*bundle, {"base", "l", "beta", "curvature", "eta"});
    BundleSection b;
    if (base_ref) b.base_ref = base_ref->value;
    const Entry* l = bundle->find("l");
    if (!l) throw ParseError("[bundle] needs 'l'", bundle->line, 1);
    if (l->value.empty() || l->value.find_first_not_of("0123456789") != std::string::npos || l->value.size() > 2)
      throw ParseError("l must be a small nonnegative integer", l->line, l->value_col);
    b.l = std::stoi(l->value);
    const Entry* beta = bundle->find("beta");
    const Entry* curv = bundle->find("curvature");
    if (!!beta == !!curv) throw ParseError("[bundle] needs exactly one of 'beta' or 'curvature'", bundle->line, 1);
    const Entry* data = beta ? beta : curv;
    b.chart = beta != nullptr;
    for (const auto& [item, col] : bracket_list(*data)) {
      Form f = parse_expression(item, scope, data->line, col);
      b.data.push_back(f.is_zero() ? Form(doc.model) : f);
    }
    b.bundle = located(data->line, data->value_col, [&] {
      return b.chart ? build_bundle(doc.model, b.l, b.data) : build_invariant_bundle(doc.model, b.l, b.data);
    });
    b.eta = Form(b.bundle.total);
    if (const Entry* e = bundle->find("eta")) {
      ExprScope total{b.bundle.total, nullptr, false};
      Form eta = entry_form(*e, total);
      if (!eta.is_zero()) b.eta = eta;
      located(e->line, e->value_col, [&] { return construct_rho(b.bundle, b.eta); });
    }
    doc.bundle = std::move(b);
  }
  return doc;
}

/// Canonical text of a document; parse_model(print_model(d)) prints back identically.
inline std::string print_model(const ModelDocument& doc) {
  std::ostringstream out;
  out << "[model]\nname = " << doc.name << "\n";
  bool external = doc.bundle && !doc.bundle->base_ref.empty();
  if (!external) {
    const CoframeModel& M = *doc.model;
    const VariableTable& v = M.vars();
    auto join = [](const std::vector<std::string>& xs) {
      std::string s;
      for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
      return s;
    };
    if (!v.empty()) {
      out << "\n[vars]\n";
      if (!v.chart().empty()) out << "chart = " << join(v.chart()) << "\n";
      if (!v.real().empty()) out << "real = " << join(v.real()) << "\n";
      if (!v.angle().empty()) out << "angle = " << join(v.angle()) << "\n";
    }
    const auto& gens = M.generators();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const auto& g = gens[k];
      out << "\n[generator." << g.name << "]\n";
      if (g.exact) {
        out << "exact = " << v.name(*g.exact) << "\n";
        continue;
      }
      out << "grade = " << grade_name(g.grade) << "\n";
      if (g.conj > static_cast<int>(k)) out << "conj = " << gens[g.conj].name << "\n";
      if (!g.diff.empty()) out << "diff = " << Form(doc.model, g.diff).str() << "\n";
    }
  }
  for (const auto& [n, f] : doc.forms) out << "\n[form." << n << "]\nvalue = " << f.str() << "\n";
  if (doc.gcs) {
    out << "\n[gcs]\n";
    out << "B = " << doc.gcs->B.str() << "\n";
    out << "omega = " << doc.gcs->omega.str() << "\n";
    out << "Omega = " << doc.gcs->Omega.str() << "\n";
  }
  if (doc.bundle) {
    const auto& b = *doc.bundle;
    out << "\n[bundle]\n";
    if (external) out << "base = " << b.base_ref << "\n";
    out << "l = " << b.l << "\n";
    out << (b.chart ? "beta = [" : "curvature = [");
    for (std::size_t j = 0; j < b.data.size(); ++j) out << (j ? ", " : "") << b.data[j].str();
    out << "]\n";
    if (!b.eta.is_zero()) out << "eta = " << b.eta.str() << "\n";
  }
  return out.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Reads and parses a document; base references resolve relative to its directory.
inline ModelDocument load_document(const std::string& path, int depth = 0) {
  if (depth > 8) throw Error("base references nest too deeply at '" + path + "'");
  std::string dir;
  if (auto slash = path.find_last_of('/'); slash != std::string::npos) dir = path.substr(0, slash + 1);
  std::string text = read_file(path);
  try {
    return parse_model(text, [&](const std::string& ref) {
      return load_document(!ref.empty() && ref[0] == '/' ? ref : dir + ref, depth + 1);
    });
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.line(), e.column());
  }
}

/// Exact point from `name=value` assignments; unspecified coordinates are 0 and characters 1.
inline ExactPoint parse_point(const VariableTable& vars, const std::vector<std::string>& assignments) {
  ExactPoint p;
  p.chart.assign(vars.chart().size(), GaussRational());
  p.real.assign(vars.real().size(), mpq_class(0));
  p.angle_character.assign(vars.angle().size(), GaussRational(1));
  ModelPtr scalars = ModelBuilder(VariableTable{}, "scalars").build();
  for (const auto& a : assignments) {
    auto eq = a.find('=');
    if (eq == std::string::npos) throw Error("point assignment '" + a + "' must look like name=value");
    std::string name = detail::trim(a.substr(0, eq));
    Form v = parse_expression(a.substr(eq + 1), scalars);
    if (!v.is_homogeneous(0)) throw Error("point value for '" + name + "' must be a number");
    GaussRational x = v.coefficient(0).is_zero() ? GaussRational() : v.coefficient(0).constant_value();
    auto ref = vars.lookup(name);
    if (!ref) throw Error("unknown variable '" + name + "' in point");
    switch (ref->kind) {
      case VarKind::Chart: p.chart[ref->index] = x; break;
      case VarKind::Conj: throw Error("set '" + vars.chart()[ref->index] + "' instead of its conjugate");
      case VarKind::Real:
        if (!x.is_real()) throw Error("real variable '" + name + "' needs a real value");
        p.real[ref->index] = x.re();
        break;
      case VarKind::Angle: p.angle_character[ref->index] = x; break;
    }
  }
  p.validate();
  return p;
}

}  // namespace gencx
