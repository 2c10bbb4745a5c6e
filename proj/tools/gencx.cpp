#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "gencx/parser.hpp"
#include "gencx/spectral.hpp"

using namespace gencx;
using nlohmann::json;

namespace {

enum class Verdict { Verified = 0, Falsified = 1, InputError = 2 };

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Falsified: return "falsified";
    case Verdict::InputError: return "input error";
  }
  return "?";
}

struct Options {
  std::vector<std::string> files;
  bool json = false;
  std::uint64_t seed = 0;
  int l = 1;
  bool l_given = false;
  std::vector<std::string> point;
};

struct Result {
  json data = json::object();
  std::ostringstream text;
  Verdict verdict = Verdict::Verified;

  void fail() { verdict = Verdict::Falsified; }
};

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const char* yes(bool b) { return b ? "yes" : "no"; }

json table_json(const CohomologyTable& t) {
  json j = json::object();
  for (const auto& [k, d] : t.dims) j[std::to_string(k)] = d;
  return j;
}

json bidegree_json(const std::map<Bidegree, std::size_t>& dims) {
  json j = json::object();
  for (const auto& [pq, d] : dims)
    if (d) j[std::to_string(pq.first) + "," + std::to_string(pq.second)] = d;
  return j;
}

json strings(const std::vector<GenVector>& basis) {
  json j = json::array();
  for (const auto& u : basis) j.push_back(u.str());
  return j;
}

std::string indent(const std::string& block) {
  std::string out;
  std::istringstream in(block);
  for (std::string line; std::getline(in, line);) out += "  " + line + "\n";
  return out;
}

// Small Gaussian rationals for chart variables, Pythagorean characters for angles.
std::vector<ExactPoint> seeded_points(const VariableTable& vars, std::uint64_t seed, int count) {
  static const int triples[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}, {20, 21, 29}, {12, 35, 37}};
  std::mt19937_64 rng(seed);
  auto num = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto rational = [&]() { return mpq_class(num(-6, 6), num(1, 7)); };
  std::vector<ExactPoint> pts;
  for (int k = 0; k < count; ++k) {
    ExactPoint p;
    for (std::size_t a = 0; a < vars.chart().size(); ++a) p.chart.push_back({rational(), rational()});
    for (std::size_t a = 0; a < vars.real().size(); ++a) p.real.push_back(rational());
    for (std::size_t a = 0; a < vars.angle().size(); ++a) {
      const int* t = triples[num(0, 5)];
      mpq_class x(t[0], t[2]), y(t[1], t[2]);
      if (num(0, 1)) std::swap(x, y);
      if (num(0, 1)) x = -x;
      if (num(0, 1)) y = -y;
      p.angle_character.push_back({x, y});
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

const GcsSpec& need_gcs(const ModelDocument& doc) {
  if (!doc.gcs) throw Error("document has no [gcs] section");
  return *doc.gcs;
}

const BundleSection& need_bundle(const ModelDocument& doc) {
  if (!doc.bundle) throw Error("document has no [bundle] section");
  return *doc.bundle;
}

void run_check(const ModelDocument& doc, const Options& opt, Result& r) {
  const GcsSpec& spec = need_gcs(doc);
  const VariableTable& vars = doc.model->vars();
  std::vector<ExactPoint> pts;
  if (!opt.point.empty()) pts.push_back(parse_point(vars, opt.point));
  if (!doc.model->invariant()) {
    auto extra = seeded_points(vars, opt.seed, 4);
    pts.insert(pts.end(), extra.begin(), extra.end());
  }

  PureSpinor ps = pure_spinor(spec, pts);
  r.data["pure_spinor"] = {{"predicate", "(rho, conj rho) != 0"},
                           {"holds", true},
                           {"pairing", ps.pairing.str(vars)},
                           {"symbolic", ps.symbolic},
                           {"points_checked", ps.points_checked}};
  r.text << "rho = " << ps.rho.str() << "\n";
  r.text << "pure spinor: yes, (rho, conj rho) = " << ps.pairing.str(vars)
         << (ps.symbolic ? " (nonzero constant)" : " (nonzero at " + std::to_string(ps.points_checked) + " points)")
         << "\n";

  IntegrabilityResult ir = integrability_witness(ps.rho);
  bool integrable = ir.status != IntegrabilityResult::Status::NoWitness;
  json ij = {{"predicate", "d rho = u . rho"}, {"status", status_name(ir.status)}, {"holds", integrable}};
  if (ir.status == IntegrabilityResult::Status::Witness) ij["witness"] = ir.u.str();
  if (!ir.drho.is_zero()) ij["d_rho"] = ir.drho.str();
  r.data["integrability"] = ij;
  if (ir.status == IntegrabilityResult::Status::Closed)
    r.text << "d rho = 0\n";
  else if (integrable)
    r.text << "d rho = u . rho with u = " << ir.u.str() << "\n";
  else
    r.text << "integrability: no witness u with d rho = u . rho; d rho = " << ir.drho.str() << "\n";
  if (!integrable) r.fail();

  if (doc.model->invariant()) {
    int type = type_at(ps.rho, ExactPoint{});
    auto basis = annihilator(ps.rho);
    auto inv = involutivity_check(basis);
    r.data["type"] = type;
    json aj = {{"basis", strings(basis)}, {"involutive", inv.involutive}};
    if (!inv.involutive) aj["bracket"] = inv.bracket.str();
    r.data["annihilator"] = aj;
    r.text << "type " << type << "\n";
    r.text << "annihilator L (" << basis.size() << "):\n";
    for (const auto& u : basis) r.text << "  " << u.str() << "\n";
    r.text << "L Courant involutive: " << yes(inv.involutive) << "\n";
    if (!inv.involutive) {
      r.text << "  [u" << inv.first + 1 << ", u" << inv.second + 1 << "] = " << inv.bracket.str() << " leaves L\n";
      r.fail();
    }
    if (inv.involutive != integrable) {
      r.data["consistency"] = "annihilator involutivity disagrees with the integrability witness";
      r.text << "inconsistent: involutivity and witness disagree\n";
      r.fail();
    }
  } else {
    std::vector<ExactPoint> sample = sample_grid(vars, 4);
    sample.insert(sample.end(), pts.begin(), pts.end());
    json tj = json::array();
    r.text << "type at sample points:\n";
    for (const auto& p : sample) {
      int t = type_at(ps.rho, p);
      tj.push_back({{"point", point_str(vars, p)}, {"type", t}});
      r.text << "  " << point_str(vars, p) << ": " << t << "\n";
    }
    r.data["type"] = tj;
    const ExactPoint& p0 = sample.front();
    auto basis = annihilator_at(ps.rho, p0);
    r.data["annihilator"] = {{"point", point_str(vars, p0)}, {"basis", strings(basis)}};
    r.text << "annihilator at " << point_str(vars, p0) << " (" << basis.size() << "):\n";
    for (const auto& u : basis) r.text << "  " << u.str() << "\n";
  }
}

void run_cohomology(const ModelDocument& doc, const Options&, Result& r) {
  Form rho = pure_spinor(need_gcs(doc)).rho;
  CohomologyTable t = gh_cohomology(rho);
  r.data["gh"] = table_json(t);
  r.data["total"] = t.total();
  r.text << t.str("GH") << "total " << t.total() << "\n";
}

void run_bundle_verify(const ModelDocument& doc, const Options&, Result& r) {
  const BundleSection& bs = need_bundle(doc);
  const BundleModel& B = bs.bundle;
  bool chart = B.flavor == BundleFlavor::Chart;
  r.data["presentation"] = chart ? "chart" : "invariant";

  CurvatureType ct = curvature_type(B);
  json off = json::array();
  for (const auto& c : ct.offending)
    off.push_back({{"fiber", c.index + 1},
                   {"type", "(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")"},
                   {"value", c.value.str()}});
  r.data["curvature_type"] = {{"is_11", ct.is_11}, {"offending", off}};
  r.text << "curvature of type (1,1): " << yes(ct.is_11) << "\n";
  for (const auto& c : ct.offending)
    r.text << "  curvature" << c.index + 1 << " has (" << c.p << "," << c.q << ") part " << c.value.str() << "\n";

  Form rho = construct_rho(B, bs.eta);
  Form drho = rho.d();
  bool closed = drho.is_zero();
  json ij = {{"predicate", "d rho = 0"}, {"holds", closed}};
  if (!closed) ij["d_rho"] = drho.str();
  r.data["integrability"] = ij;
  r.text << "d rho = 0: " << yes(closed) << "\n";

  json witnesses = json::array();
  for (int j = 0; j < B.fiber_rank(); ++j) {
    Form w = dbar_beta01(B, j);
    if (!w.is_zero()) witnesses.push_back({{"fiber", j + 1}, {"value", w.str()}});
  }
  bool consistent = closed == witnesses.empty();
  r.data["type_criterion"] = {{"predicate", std::string("d rho = 0 iff ") + kTypePredicate + " for all j"},
                              {"holds", consistent},
                              {"witnesses", witnesses}};
  for (const auto& w : witnesses)
    r.text << "  " << kTypePredicate << " fails for j = " << w["fiber"].get<int>() << ": "
           << w["value"].get<std::string>() << "\n";
  if (!consistent) r.text << "inconsistent: d rho = 0 disagrees with the type criterion\n";
  if (!closed || !consistent) r.fail();

  if (!chart) {
    if (closed) {
      int type = type_at(rho, ExactPoint{});
      r.data["type"] = type;
      r.text << "type " << type << " (complex dimension of the base " << B.n() << ")\n";
      if (type != B.n()) r.fail();
    }
    return;
  }

  LocalProductResult lp = local_product_B(B);
  json lj = {{"predicate", kFlatPredicate}, {"holds", lp.ok}};
  json viol = json::array();
  for (const auto& v : lp.violations)
    viol.push_back({{"fiber", v.index + 1}, {"predicate", v.predicate}, {"value", v.value.str()}});
  lj["violations"] = viol;
  r.text << "locally equivalent to the product: " << yes(lp.ok) << "\n";
  for (const auto& v : lp.violations)
    r.text << "  " << v.predicate << " fails for j = " << v.index + 1 << ": " << v.value.str() << "\n";
  if (lp.certificate) {
    const ProductCertificate& c = *lp.certificate;
    json gauge = json::array();
    for (const auto& g : c.gauge) gauge.push_back(g.str(B.total->vars()));
    lj["certificate"] = {{"gauge", gauge},
                         {"B_hat", c.Bhat.str()},
                         {"closed", c.closed},
                         {"reproduces", c.reproduces},
                         {"pure_b_transform", c.pure_b()}};
    r.text << "  fiber gauge t_j -> t_j + psi_j:";
    for (std::size_t j = 0; j < c.gauge.size(); ++j) r.text << " psi" << j + 1 << " = " << c.gauge[j].str(B.total->vars());
    r.text << "\n  B_hat = " << c.Bhat.str() << "\n";
    r.text << "  d B_hat = 0: " << yes(c.closed) << ", e^B_hat ^ rho_1 matches gauged rho: " << yes(c.reproduces)
           << "\n";
  }
  r.data["local_product"] = lj;
  if (!lp.ok) r.fail();
}

void run_kunneth(const ModelDocument& doc, const Options& opt, Result& r) {
  ModelPtr base = doc.model;
  int l = opt.l;
  if (doc.bundle) {
    base = doc.bundle->bundle.base;
    if (!opt.l_given) l = doc.bundle->l;
  }
  if (l < 0) throw Error("--l must be nonnegative");
  KunnethReport k = kunneth_check(base, l);
  r.data["l"] = l;
  r.data["predicate"] = "GH^k(M x T^2l) = sum_{a+b=k} GH^a(T^2l) GH^b(M)";
  r.data["product"] = table_json(k.lhs);
  r.data["base"] = table_json(k.base);
  r.data["fiber"] = table_json(k.fiber);
  r.data["convolution"] = table_json(k.rhs);
  r.data["holds"] = k.holds();
  r.text << "base M:\n" << indent(k.base.str("GH")) << "fiber T^" << 2 * l << ":\n" << indent(k.fiber.str("GH"));
  r.text << "product M x T^" << 2 * l << ":\n" << indent(k.lhs.str("GH"));
  r.text << "convolution:\n" << indent(k.rhs.str("GH"));
  r.text << "Kunneth formula holds: " << yes(k.holds()) << "\n";
  if (!k.holds()) r.fail();
}

void run_spectral(const ModelDocument& doc, const Options&, Result& r) {
  const BundleSection& bs = need_bundle(doc);
  const BundleModel& B = bs.bundle;
  BundleSpectral s = bundle_spectral(B, bs.eta);
  const PageReport& rep = s.report;
  json pj = json::object();
  for (const auto& pg : rep.pages) pj[std::to_string(pg.r)] = bidegree_json(pg.dims);
  r.data["pages"] = pj;
  r.data["stabilization"] = rep.stabilization;
  r.data["recurrence"] = rep.recurrence_ok;
  r.data["d_squared"] = rep.d_squared_ok;
  r.data["converged"] = rep.converged;
  r.data["gh"] = table_json(s.gh);
  r.data["converges_to_gh"] = {{"predicate", "sum_{p+q=k} E_inf^{p,q} = GH^{n+l-k}"}, {"holds", s.converges_to_gh}};
  for (const auto& pg : rep.pages) r.text << page_grid(pg);
  r.text << "stabilizes at r = " << rep.stabilization << "\n";
  r.text << "pages agree with (E_r, d_r) homology: " << yes(rep.recurrence_ok) << "\n";
  r.text << "d_r^2 = 0: " << yes(rep.d_squared_ok) << "\n";
  r.text << "E_inf sums to H of the complex: " << yes(rep.converged) << "\n";
  r.text << "E_inf sums to GH of the total space: " << yes(s.converges_to_gh) << "\n";
  for (const auto& issue : rep.issues) r.text << "  " << issue << "\n";
  if (!rep.ok() || !s.converges_to_gh) r.fail();

  bool flat = true;
  for (const auto& c : B.curvature) flat = flat && c.is_zero();
  r.data["flat"] = flat;
  if (!flat) return;
  auto e2 = e2_identification(B);
  const Page& p2 = rep.page(2);
  bool match = true;
  for (const auto& [pq, d] : e2) match = match && p2.at(pq.first, pq.second) == d;
  for (const auto& [pq, d] : p2.dims) match = match && (d == 0 || e2.count(pq));
  bool degenerate = rep.stabilization <= 2;
  r.data["e2_identification"] = {{"predicate", "E_2^{p,q} = GH^{n-p}(M) dim H^q(T^2l)"},
                                 {"expected", bidegree_json(e2)},
                                 {"holds", match}};
  r.data["degenerates_at_e2"] = degenerate;
  r.text << "E_2 = GH(M) x H(T^" << 2 * B.l << "): " << yes(match) << "\n";
  r.text << "d_r = 0 for r >= 2: " << yes(degenerate) << "\n";
  if (!match || !degenerate) r.fail();
}

void run_btransform(const ModelDocument& doc, const Options&, Result& r) {
  Form rho = pure_spinor(need_gcs(doc)).rho;
  json cmp = json::array();
  for (const auto& [name, B] : doc.forms) {
    if (B.is_zero() || !B.is_homogeneous(2)) continue;
    check_real_two_form(B, "form " + name);
    BTransformComparison c = compare_b_transform(rho, B);
    cmp.push_back({{"form", name},
                   {"B", B.str()},
                   {"before", table_json(c.before)},
                   {"after", table_json(c.after)},
                   {"holds", c.equal()}});
    r.text << "B = " << name << " = " << B.str() << "\n" << indent(c.before.str("GH")) << "after e^B:\n"
           << indent(c.after.str("GH")) << "invariant: " << yes(c.equal()) << "\n";
    if (!c.equal()) r.fail();
  }
  if (cmp.empty()) throw Error("document declares no 2-forms to use as B-fields");
  r.data["predicate"] = "GH(e^B rho) = GH(rho) for closed real B";
  r.data["comparisons"] = cmp;
}

void run_format(const ModelDocument& doc, const Options&, Result& r) {
  std::string canon = print_model(doc);
  r.data["document"] = canon;
  r.data["canonical"] = canon == doc.source;
  r.text << canon;
}

using Handler = void (*)(const ModelDocument&, const Options&, Result&);

int run(const std::string& command, Handler handler, const Options& opt) {
  json results = json::array();
  Verdict overall = Verdict::Verified;
  bool raw = command == "format" && opt.files.size() == 1;
  for (const auto& path : opt.files) {
    Result r;
    r.data["input"] = {{"path", path}};
    try {
      std::string bytes = read_file(path);
      r.data["input"]["fnv1a64"] = fnv1a64(bytes);
      ModelDocument doc = load_document(path);
      r.data["model"] = doc.name;
      handler(doc, opt, r);
    } catch (const Error& e) {
      r.verdict = e.kind() == ErrorKind::Falsified ? Verdict::Falsified : Verdict::InputError;
      r.data["error"] = e.what();
      r.text << (r.verdict == Verdict::Falsified ? "falsified: " : "error: ") << e.what() << "\n";
    } catch (const std::exception& e) {
      r.verdict = Verdict::InputError;
      r.data["error"] = std::string("internal error: ") + e.what();
      r.text << "internal error: " << e.what() << "\n";
    }
    r.data["verdict"] = verdict_name(r.verdict);
    overall = std::max(overall, r.verdict);
    results.push_back(r.data);
    if (opt.json) continue;
    if (raw && r.verdict == Verdict::Verified) {
      std::cout << r.text.str();
      continue;
    }
    std::ostream& os = r.verdict == Verdict::InputError ? std::cerr : std::cout;
    os << "== " << command << " " << path << "\n" << r.text.str() << "verdict: " << verdict_name(r.verdict) << "\n";
  }
  if (opt.json) {
    json report = {{"schema", 1}, {"command", command}, {"results", results}, {"verdict", verdict_name(overall)}};
    report["options"] = {{"seed", opt.seed}, {"point", opt.point}};
    if (command == "kunneth") report["options"]["l"] = opt.l;
    std::cout << report.dump(2) << "\n";
  }
  return static_cast<int>(overall);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of generalized complex structures on coframe models", "gencx"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"check", "pure spinor, integrability witness, type and annihilator", run_check},
      {"cohomology", "generalized Dolbeault cohomology of the [gcs] spinor", run_cohomology},
      {"bundle-verify", "curvature type, d rho = 0 and local equivalence with the product", run_bundle_verify},
      {"kunneth", "GH of M x T^2l against the convolution of the factors", run_kunneth},
      {"spectral", "spectral sequence of the fiber null space filtration", run_spectral},
      {"btransform", "GH before and after each named 2-form B", run_btransform},
      {"format", "print the document in canonical form", run_format},
  };
  std::map<std::string, Handler> handlers;
  for (const auto& [name, help, handler] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("files", opt.files, "model files")->required();
    sub->add_flag("--json", opt.json, "JSON report on stdout");
    sub->add_option("--seed", opt.seed, "seed for generated sample points");
    sub->add_option("--point", opt.point, "sample point assignment name=value")->take_all();
    if (name == "kunneth") sub->add_option("--l", opt.l, "fiber torus half-dimension");
    handlers[name] = handler;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "gencx: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  if (sub->get_name() == "kunneth") opt.l_given = sub->count("--l") > 0;
  return run(sub->get_name(), handlers.at(sub->get_name()), opt);
}
