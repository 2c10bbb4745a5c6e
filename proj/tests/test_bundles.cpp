#include <catch_amalgamated.hpp>

#include "gencx/bundles.hpp"
#include "gencx/models.hpp"
#include "support.hpp"

using namespace gencx;
using gencx::testing::Gen;

namespace {

Form gen(const ModelPtr& m, const std::string& name) { return Form::generator(m, name); }
CoeffFn I() { return CoeffFn(GaussRational::i()); }
CoeffFn z(int a = 0) { return CoeffFn::variable(VarRef{VarKind::Chart, static_cast<std::uint16_t>(a)}); }
CoeffFn zb(int a = 0) { return CoeffFn::variable(VarRef{VarKind::Conj, static_cast<std::uint16_t>(a)}); }
GaussRational q(long a, long b) { return GaussRational::fraction(a, b); }

BundleModel trivial_invariant() {
  auto base = models::complex_torus(1);
  return build_invariant_bundle(base, 1, {Form(base), Form(base)});
}

/// Base T^4_C with dβ_2 = Re(dz1^dz2): curvature of type (2,0)+(0,2).
BundleModel mixed_type_bundle() {
  auto base = models::complex_torus(2);
  Form w = wedge(gen(base, "dz1"), gen(base, "dz2"));
  return build_invariant_bundle(base, 1, {Form(base), q(1, 2) * (w + w.conj())});
}

}  // namespace

TEST_CASE("bundle assembly", "[bundles]") {
  auto triv = trivial_invariant();
  CHECK(triv.total->rank() == 4);
  CHECK(triv.omega == wedge(gen(triv.total, "theta1"), gen(triv.total, "theta2")));
  for (const auto& c : triv.curvature) CHECK(c.is_zero());
  CHECK(triv.Omega == gen(triv.total, "dz"));

  // the assembled Kodaira-Thurston bundle has the Betti numbers of the real KT model
  auto kt = testing::kt_invariant_bundle();
  CHECK(gen(kt.total, "theta2").d() == q(1, 2) * GaussRational::i() * wedge(gen(kt.total, "dz"), gen(kt.total, "dzb")));
  CHECK(testing::de_rham_dims(kt.total) == testing::de_rham_dims(models::kodaira_thurston()));
  CHECK(testing::de_rham_dims(kt.total) == std::map<int, int>{{0, 1}, {1, 3}, {2, 4}, {3, 3}, {4, 1}});

  auto chart = testing::kt_chart_bundle();
  CHECK(chart.total->vars().angle().size() == 2);
  CHECK(chart.curvature[1] == q(1, 2) * GaussRational::i() * wedge(gen(chart.base, "dz"), gen(chart.base, "dzb")));
  CHECK(chart.theta[1] == gen(chart.total, "dt2") + chart.pullback(chart.beta[1]));
  CHECK(chart.theta[1].d() == chart.pullback(chart.curvature[1]));
}

TEST_CASE("bundle input validation", "[bundles]") {
  auto base = models::complex_chart(1);
  CHECK_THROWS_WITH(build_bundle(base, 1, {Form(base)}), Catch::Matchers::ContainsSubstring("expected 2"));
  CHECK_THROWS_WITH(build_bundle(base, 1, {Form(base), I() * gen(base, "dz")}),
                    Catch::Matchers::ContainsSubstring("real"));
  auto other = models::product_chart(1, 1);
  CHECK_THROWS_WITH(build_bundle(base, 1, {Form(base), gen(other, "dt1")}),
                    Catch::Matchers::ContainsSubstring("no fiber generators"));
  CHECK_THROWS_WITH(build_bundle(models::real_plane(), 1, {Form(), Form()}), Catch::Matchers::ContainsSubstring("complex"));
  auto torus = models::complex_torus(1);
  CHECK_THROWS_WITH(build_invariant_bundle(torus, 1, {Form(torus), wedge(gen(torus, "dz"), gen(torus, "dzb"))}),
                    Catch::Matchers::ContainsSubstring("real"));
}

TEST_CASE("curvature type", "[bundles]") {
  CHECK(curvature_type(trivial_invariant()).is_11);
  CHECK(curvature_type(testing::kt_invariant_bundle()).is_11);
  CHECK(curvature_type(testing::kt_chart_bundle()).is_11);
  auto mixed = curvature_type(mixed_type_bundle());
  REQUIRE_FALSE(mixed.is_11);
  REQUIRE(mixed.offending.size() == 2);
  CHECK(mixed.offending[0].index == 1);
  CHECK(mixed.offending[0].p == 2);
  CHECK(mixed.offending[1].q == 2);
}

TEST_CASE("spinor of the bundle family", "[bundles]") {
  auto triv = trivial_invariant();
  CHECK(construct_rho(triv).d().is_zero());

  auto kt = testing::kt_invariant_bundle();
  CHECK_FALSE(kt.omega.d().is_zero());
  Form rho = construct_rho(kt);
  CHECK(rho.d().is_zero());
  CHECK(type_at(rho, ExactPoint{}) == 1);
  // a nonzero closed real η keeps ρ closed
  Form eta = I() * wedge(gen(kt.total, "dz"), gen(kt.total, "dzb"));
  CHECK(construct_rho(kt, eta).d().is_zero());
  CHECK_THROWS_WITH(construct_rho(kt, wedge(gen(kt.total, "theta1"), gen(kt.total, "theta2"))),
                    Catch::Matchers::ContainsSubstring("closed"));

  auto mixed = mixed_type_bundle();
  CHECK_FALSE(construct_rho(mixed).d().is_zero());
  CHECK_FALSE(dbar_beta01(mixed, 1).is_zero());

  auto chart = testing::kt_chart_bundle();
  Form rc = construct_rho(chart);
  CHECK(rc.d().is_zero());
  for (const auto& p : sample_grid(chart.total->vars(), 4)) CHECK(type_at(rc, p) == 1);
}

TEST_CASE("closed spinor iff (1,1) curvature", "[bundles][property]") {
  Gen g(0xb0d1e5);
  int closed = 0, open = 0;
  for (int k = 0; k < 40; ++k) {
    BundleModel B = testing::random_invariant_bundle(g, k % 4 == 0 ? 1 : 2);
    bool d0 = construct_rho(B).d().is_zero();
    bool is11 = curvature_type(B).is_11;
    REQUIRE(d0 == is11);
    (d0 ? closed : open)++;
    if (!is11) {
      bool witness = false;
      for (int j = 0; j < B.fiber_rank(); ++j) witness = witness || !dbar_beta01(B, j).is_zero();
      CHECK(witness);
    } else {
      CHECK(type_at(construct_rho(B), ExactPoint{}) == B.n());
    }
  }
  CHECK(closed > 0);
  CHECK(open > 0);
}

TEST_CASE("component equations on product charts", "[bundles]") {
  auto base = models::complex_chart(1);
  auto triv = build_bundle(base, 1, {Form(base), Form(base)});
  Form C = I() * triv.omega;
  auto rep = component_equations_check(C, {std::nullopt, triv.omega_T()});
  CHECK(rep.all_hold());
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components.begin()->first == Trigrade{2, 0, 0});

  auto kt = testing::kt_chart_bundle();
  Form Ck = I() * kt.omega;
  auto rk = component_equations_check(construct_rho(kt), Ck, {std::nullopt, kt.omega_T()});
  CHECK(rk.all_hold());
  Form sum(kt.total);
  for (const auto& [g, f] : rk.components) sum += f;
  CHECK(sum == Ck);
  CHECK_THROWS_WITH(component_equations_check(construct_rho(triv), Ck), Catch::Matchers::ContainsSubstring("not of the form"));

  // γ = zb2 dzb1 has ∂̄γ ≠ 0
  auto c2 = models::complex_chart(2);
  Form gamma = zb(1) * gen(c2, "dzb1");
  auto bad = build_bundle(c2, 1, {Form(c2), gamma + gamma.conj()});
  auto rb = component_equations_check(I() * bad.omega);
  REQUIRE_FALSE(rb.all_hold());
  CHECK(rb.first_failure()->name == "dbar A101 + dF A002 = 0");
  CHECK_FALSE(construct_rho(bad).d().is_zero());
}

TEST_CASE("dbar-Poincare solver", "[bundles]") {
  auto c2 = models::complex_chart(2);
  Form A = wedge(gen(c2, "dzb1"), gen(c2, "dzb2"));
  CHECK(dbar_poincare_solve(A) == zb(0) * gen(c2, "dzb2"));
  CHECK(dbar_poincare_solve(Form(c2)).is_zero());
  auto c1 = models::complex_chart(1);
  CHECK(dbar_poincare_solve(zb() * gen(c1, "dzb")) == Form::scalar(c1, q(1, 2) * zb() * zb()));
  CHECK_THROWS_WITH(dbar_poincare_solve(zb(1) * gen(c2, "dzb1")), Catch::Matchers::ContainsSubstring("not dbar-closed"));
  CHECK_THROWS_WITH(dbar_poincare_solve(gen(c2, "dz1")), Catch::Matchers::ContainsSubstring("pure type"));

  Gen g(77);
  for (int k = 0; k < 40; ++k) {
    int qdeg = g.integer(1, 2);
    Form pre(c2);
    for (int t = 0; t < 2; ++t) {
      Mask m = 0;
      if (qdeg == 2) m = Mask{1} << c2->index(g.coin() ? "dzb1" : "dzb2");
      pre += Form::monomial(c2, m, g.coeff(*c2, 3, 2));
    }
    Form closed = pre.delbar();
    Form eta = dbar_poincare_solve(closed);
    REQUIRE(eta.delbar() == closed);
  }
}

TEST_CASE("ddbar solver", "[bundles]") {
  auto c1 = models::complex_chart(1);
  Form dzdzb = wedge(gen(c1, "dz"), gen(c1, "dzb"));
  CHECK(ddbar_solve(I() * dzdzb) == z() * zb());
  CHECK(ddbar_solve(CoeffFn(GaussRational(0, 2)) * z() * zb() * dzdzb) == CoeffFn(q(1, 2)) * z() * z() * zb() * zb());
  Form eta = z() * gen(c1, "dzb");
  Form de = eta.del();
  CHECK(ddbar_solve(de + de.conj(), eta).is_zero());

  auto c2 = models::complex_chart(2);
  Form bad = I() * (z(1) + zb(1)) * wedge(gen(c2, "dz1"), gen(c2, "dzb1"));
  CHECK_THROWS_WITH(ddbar_solve(bad), Catch::Matchers::ContainsSubstring("not closed"));

  Gen g(4242);
  for (int k = 0; k < 30; ++k) {
    CoeffFn chi0 = testing::real_polynomial(g, c2);
    Form A = I() * Form::scalar(c2, chi0).delbar().del();
    CoeffFn chi = ddbar_solve(A);
    REQUIRE(chi.is_real());
    REQUIRE(I() * Form::scalar(c2, chi).delbar().del() == A);
  }
}

TEST_CASE("local product certificate", "[bundles]") {
  auto base = models::complex_chart(1);
  auto triv = build_bundle(base, 1, {Form(base), Form(base)});
  auto rt = local_product_B(triv);
  REQUIRE(rt.ok);
  CHECK(rt.certificate->Bhat.is_zero());

  Gen g(31337);
  int gauged = 0;
  for (int k = 0; k < 12; ++k) {
    auto B = testing::flat_chart_bundle(g, k % 3 == 0 ? 2 : 1, 1);
    CoeffFn chi = k % 2 ? testing::real_polynomial(g, B.base) : CoeffFn{};
    auto r = local_product_B(B, chi);
    REQUIRE(r.ok);
    const auto& cert = *r.certificate;
    CHECK(cert.closed);
    CHECK(cert.reproduces);
    CHECK(cert.Bhat.is_real());
    CHECK(cert.components.all_hold());
    CHECK(b_transform(cert.rho1, cert.Bhat) == cert.rho_gauged);
    // the B-field alone is closed exactly when no gauge was needed
    CHECK(cert.ungauged_residual.is_zero() == cert.pure_b());
    if (!cert.pure_b()) ++gauged;
  }
  CHECK(gauged > 0);

  for (int k = 0; k < 10; ++k) {
    auto B = testing::pluriharmonic_chart_bundle(g, 1 + k % 2);
    auto r = local_product_B(B);
    REQUIRE(r.ok);
    CHECK(r.certificate->pure_b());
    CHECK(r.certificate->rho_gauged == r.certificate->rho_tilde);
    CHECK(b_transform(r.certificate->rho1, r.certificate->Bhat) == r.certificate->rho_tilde);
  }

  // β_2 = d(z zb): flat, but the B-field alone leaves (dB)^{111} = -2i dt1^dz^dzb
  auto c1 = models::complex_chart(1);
  auto zz = build_bundle(c1, 1, {Form(c1), Form::scalar(c1, z() * zb()).d()});
  auto rz = local_product_B(zz);
  REQUIRE(rz.ok);
  CHECK(rz.certificate->gauge[1] == z() * zb());
  CHECK(rz.certificate->Bhat.is_zero());
  CHECK(rz.certificate->ungauged_residual ==
        CoeffFn(GaussRational(0, -2)) * wedge(wedge(gen(zz.total, "dt1"), gen(zz.total, "dz")), gen(zz.total, "dzb")));

  for (int k = 0; k < 6; ++k) {
    auto B = testing::nonflat_chart_bundle(g, 1 + k % 2);
    auto r = local_product_B(B);
    REQUIRE_FALSE(r.ok);
    REQUIRE_FALSE(r.violations.empty());
    CHECK(r.violations.front().predicate == std::string(kFlatPredicate));
  }
  auto ktb = testing::kt_chart_bundle();
  auto kt = local_product_B(ktb);
  REQUIRE_FALSE(kt.ok);
  CHECK(kt.violations.front().index == 1);
  CHECK(kt.violations.front().value == ktb.curvature[1]);
  CHECK_THROWS_WITH(local_product_B(testing::kt_invariant_bundle()), Catch::Matchers::ContainsSubstring("chart"));
}

TEST_CASE("two connections differ by a pullback", "[bundles][property]") {
  Gen g(2024);
  for (int k = 0; k < 20; ++k) {
    auto B = k % 2 ? testing::flat_chart_bundle(g, 1) : testing::random_11_bundle(g, 2);
    std::vector<Form> gamma;
    for (int j = 0; j < B.fiber_rank(); ++j) {
      Form x = B.flavor == BundleFlavor::Chart ? Form::monomial(B.base, Mask{1} << g.integer(0, 1), g.coeff(*B.base, 2, 1))
                                               : Form::monomial(B.base, Mask{1} << g.integer(0, 3), CoeffFn(g.scalar()));
      gamma.push_back(x + x.conj());
    }
    auto B2 = shift_connection(B, gamma);
    REQUIRE(connection_difference(B, B2).pullback);
    for (int j = 0; j < B.fiber_rank(); ++j) CHECK(B2.curvature[j] == B.curvature[j] + gamma[j].d());
  }
  auto B = trivial_invariant();
  auto twisted = B;
  twisted.theta[0] = twisted.theta[0] + gen(B.total, "theta2");
  auto diff = connection_difference(B, twisted);
  CHECK_FALSE(diff.pullback);
  CHECK(diff.index == 0);
}

TEST_CASE("fiber exactness obstruction", "[bundles]") {
  auto t2 = models::flat_torus();
  auto harmonic = fiber_exactness_obstruction(gen(t2, "dt1"), 1);
  CHECK_FALSE(harmonic.solvable);
  REQUIRE(harmonic.class_witness.size() == 2);
  CHECK(harmonic.class_witness[0] == CoeffFn(1));
  CHECK(harmonic.class_witness[1].is_zero());

  CoeffFn cos1 = CoeffFn::character({1, 0}) + CoeffFn::character({-1, 0});
  Form exact = Form::scalar(t2, cos1).d();
  auto solved = fiber_exactness_obstruction(exact, 3);
  REQUIRE(solved.solvable);
  CHECK(solved.f.d_fiber() == CoeffFn(-3) * exact);

  auto zero_rhs = fiber_exactness_obstruction(gen(t2, "dt1"), CoeffFn{});
  CHECK(zero_rhs.solvable);
  CHECK(zero_rhs.f.is_zero());

  CHECK_THROWS_WITH(fiber_exactness_obstruction(CoeffFn::character({0, 1}) * gen(t2, "dt1"), 1),
                    Catch::Matchers::ContainsSubstring("not closed"));

  // mixed modes on a product chart: the zero mode alone decides
  auto p = models::product_chart(1, 1);
  Form sigma = gen(p, "dt2") + Form::scalar(p, CoeffFn::character({2, -1}) + CoeffFn::character({-2, 1})).d();
  auto mixed = fiber_exactness_obstruction(sigma, z() + zb());
  CHECK_FALSE(mixed.solvable);
  CHECK(mixed.class_witness[1] == CoeffFn(1));
}

TEST_CASE("structure not locally a product", "[bundles][example]") {
  auto t = testing::non_product_example();
  CHECK(t.omega.is_real());
  Form dA = (t.A - t.A.conj()).d();
  CHECK(dA == I() * (t.zb - t.z) * wedge(t.dz(), t.dzb()));
  CHECK_FALSE(t.omega.d().is_zero());
  CHECK(wedge((I() * t.omega).d(), t.dz()).is_zero());
  CHECK_FALSE(wedge(wedge(t.omega, t.dz()), t.dzb()).is_zero());
  // any closed C = B + iω_F with e^C ^ dz = ρ has C^{101} = -conj(A)^σ; the (1,1,1) part of dC
  // then reads i(dF f + (z + zb)σ) ^ dz ^ dzb
  Form C101 = -wedge(t.A.conj(), t.sigma);
  Form C110 = C101.conj();
  Form forced = C101.del() + C110.delbar();
  CHECK(forced == I() * (t.z + t.zb) * wedge(wedge(t.dz(), t.dzb()), t.sigma));
  auto v = fiber_exactness_obstruction(t.sigma, t.z + t.zb);
  CHECK_FALSE(v.solvable);
  Form exact = Form::scalar(t.model, CoeffFn::character({1, 0}) + CoeffFn::character({-1, 0})).d();
  CHECK(fiber_exactness_obstruction(exact, t.z + t.zb).solvable);
}

TEST_CASE("structures equivalent to the product", "[bundles][example]") {
  for (int j : {1, 2}) {
    auto t = testing::product_example(j);
    CHECK_FALSE(t.omega.d().is_zero());
    CHECK(wedge((I() * t.omega).d(), t.dz()).is_zero());
    Form B = wedge(t.A + t.A.conj(), t.sigma);
    CHECK(B.is_real());
    CHECK(B.d().is_zero());
    CHECK(wedge((B + I() * t.omega_F).exp(), t.dz()) == wedge((I() * t.omega).exp(), t.dz()));
  }
  auto t1 = testing::product_example(1);
  CHECK((t1.A - t1.A.conj()).d() == CoeffFn(2) * (t1.z + t1.zb) * wedge(t1.dz(), t1.dzb()));
}
