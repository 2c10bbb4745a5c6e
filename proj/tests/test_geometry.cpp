#include <catch_amalgamated.hpp>

#include "gencx/geometry.hpp"
#include "gencx/models.hpp"
#include "support.hpp"

using namespace gencx;

namespace {

Form gen(const ModelPtr& m, const std::string& name) { return Form::generator(m, name); }
VectorField vec(const ModelPtr& m, const std::string& name) { return VectorField::frame(m, name); }
CoeffFn I() { return CoeffFn(GaussRational::i()); }
CoeffFn var(const ModelPtr& m, const std::string& name) { return CoeffFn::variable(*m->vars().lookup(name)); }

std::size_t span_rank(const std::vector<GenVector>& vs, std::size_t n) { return rank(coordinate_matrix(vs, n)); }

bool same_span(const std::vector<GenVector>& a, const std::vector<GenVector>& b, std::size_t n) {
  std::vector<GenVector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return span_rank(a, n) == span_rank(b, n) && span_rank(both, n) == span_rank(a, n);
}

const ExactPoint kOrigin{};

}  // namespace

TEST_CASE("natural pairing", "[geometry]") {
  auto p = models::real_plane();
  GenVector u{vec(p, "dx"), gen(p, "dx")};
  CHECK(inner_pairing(u, u) == CoeffFn(1));
  CHECK(inner_pairing(GenVector::vector(vec(p, "dx")), GenVector::covector(gen(p, "dx"))) ==
        CoeffFn(GaussRational::fraction(1, 2)));
  GenVector a{vec(p, "dx"), -I() * gen(p, "dy")}, b{vec(p, "dy"), I() * gen(p, "dx")};
  CHECK(inner_pairing(a, b).is_zero());
}

TEST_CASE("Courant bracket", "[geometry]") {
  auto p = models::real_plane();
  GenVector a{vec(p, "dx"), gen(p, "dy")}, b{vec(p, "dy"), gen(p, "dx")};
  CHECK(courant_bracket(a, b).is_zero());
  GenVector X = GenVector::vector(vec(p, "dx"));
  GenVector xdy = GenVector::covector(var(p, "x") * gen(p, "dy"));
  CHECK(courant_bracket(X, xdy) == GenVector::covector(gen(p, "dy")));

  testing::Gen g(5);
  for (const auto& m : models::algebra_corpus()) {
    for (int trial = 0; trial < 25; ++trial) {
      GenVector u{g.vector(m), g.form(m, 1)}, v{g.vector(m), g.form(m, 1)};
      REQUIRE(courant_bracket(u, u).is_zero());
      REQUIRE(courant_bracket(u, v) == -courant_bracket(v, u));
      REQUIRE(courant_bracket(u, v).vec == lie_bracket(u.vec, v.vec));
    }
  }
}

TEST_CASE("spinor action and Clifford relation", "[geometry]") {
  auto p = models::real_plane();
  Form omega = gen(p, "dx") ^ gen(p, "dy");
  GenVector u{vec(p, "dx"), -I() * gen(p, "dy")};
  CHECK(spinor_action(u, (I() * omega).exp()).is_zero());
  auto c = models::complex_chart(1);
  CHECK(spinor_action(GenVector::covector(gen(c, "dz")), Form::scalar(c, 1)) == gen(c, "dz"));

  testing::Gen g(17);
  GenVector w{vec(p, "dx"), gen(p, "dx")};
  for (const auto& m : models::algebra_corpus()) {
    for (int trial = 0; trial < 25; ++trial) {
      GenVector s{g.vector(m), g.form(m, 1)};
      Form phi = g.mixed_form(m);
      REQUIRE(spinor_action(s, spinor_action(s, phi)) == inner_pairing(s, s) * phi);
    }
  }
  Form phi = g.mixed_form(p);
  CHECK(spinor_action(w, spinor_action(w, phi)) == phi);
}

TEST_CASE("Mukai pairing", "[geometry]") {
  auto p = models::real_plane();
  Form omega = gen(p, "dx") ^ gen(p, "dy");
  CHECK(mukai_pairing((I() * omega).exp(), (-I() * omega).exp()) == CoeffFn(GaussRational(mpq_class(0), mpq_class(-2))) * omega);
  CHECK(mukai_pairing(gen(p, "dx"), gen(p, "dy")) == omega);

  auto m = models::product_chart(1, 1);
  Form w = gen(m, "dt1") ^ gen(m, "dt2");
  Form rho = wedge((I() * w).exp(), gen(m, "dz"));
  Form top = mukai_pairing(rho, rho.conj());
  CHECK(top.terms().size() == 1);
  CHECK(top.terms().begin()->second.is_constant());
}

TEST_CASE("pure spinors and type", "[geometry]") {
  auto t = models::invariant_real_torus(2);
  Form omega = gen(t, "e1") ^ gen(t, "e2");
  auto s = pure_spinor({Form(t), omega, Form::scalar(t, 1)});
  CHECK(s.rho == Form::scalar(t, 1) + I() * omega);
  CHECK(s.symbolic);
  CHECK(type_at(s.rho, kOrigin) == 0);

  auto c = models::complex_chart(1);
  auto sc = pure_spinor({Form(c), Form(c), gen(c, "dz")});
  CHECK(sc.rho == gen(c, "dz"));
  CHECK(type_at(sc.rho, sample_grid(c->vars())[3]) == 1);

  auto kt = models::kodaira_thurston();
  auto sk = pure_spinor({Form(kt), gen(kt, "e3") ^ gen(kt, "e4"), gen(kt, "e1") + I() * gen(kt, "e2")});
  CHECK(sk.symbolic);
  CHECK(type_at(sk.rho, kOrigin) == 1);

  auto c2 = models::complex_chart(2);
  CHECK(type_at(pure_spinor({Form(c2), Form(c2), gen(c2, "dz1") ^ gen(c2, "dz2")}).rho, sample_grid(c2->vars())[0]) == 2);

  SECTION("degenerate data is rejected") {
    // Omega = dz^dzb is decomposable but rho = dz^dzb has (rho, rho-bar) = 0
    CHECK_THROWS_WITH(pure_spinor({Form(c), Form(c), gen(c, "dz") ^ gen(c, "dzb")}),
                      Catch::Matchers::ContainsSubstring("Mukai pairing vanishes"));
    auto t4 = models::invariant_real_torus(4);
    Form nd = (gen(t4, "e1") ^ gen(t4, "e2")) + (gen(t4, "e3") ^ gen(t4, "e4"));
    CHECK_THROWS_WITH(pure_spinor({Form(t4), Form(t4), nd}), Catch::Matchers::ContainsSubstring("decomposable"));
    CHECK_THROWS_WITH(pure_spinor({Form(t4), I() * nd, Form::scalar(t4, 1)}), Catch::Matchers::ContainsSubstring("real"));
  }
  SECTION("chart spinor vanishing at a sample point") {
    // Omega = z dz vanishes at z = 0, which we add as an extra point
    ExactPoint zero{{GaussRational(0)}, {}, {}};
    CHECK_THROWS_WITH(pure_spinor({Form(c), Form(c), var(c, "z") * gen(c, "dz")}, {zero}),
                      Catch::Matchers::ContainsSubstring("vanishes at z=0"));
  }
}

TEST_CASE("annihilators", "[geometry]") {
  auto t = models::invariant_real_torus(2);
  Form omega = gen(t, "e1") ^ gen(t, "e2");
  auto L = annihilator((I() * omega).exp());
  REQUIRE(L.size() == 2);
  std::vector<GenVector> expected = {{vec(t, "e1"), -I() * gen(t, "e2")}, {vec(t, "e2"), I() * gen(t, "e1")}};
  CHECK(same_span(L, expected, 2));

  auto c = models::complex_chart(1);
  auto Lc = annihilator_at(gen(c, "dz"), sample_grid(c->vars())[0]);
  CHECK(same_span(Lc, {GenVector::vector(vec(c, "dzb")), GenVector::covector(gen(c, "dz"))}, 2));

  auto m = models::product_chart(1, 1);
  Form w = gen(m, "dt1") ^ gen(m, "dt2");
  Form rho = wedge((I() * w).exp(), gen(m, "dz"));
  auto Lm = annihilator_at(rho, sample_grid(m->vars())[2]);
  std::vector<GenVector> exp_m = {GenVector::vector(vec(m, "dzb")), GenVector::covector(gen(m, "dz"))};
  for (auto name : {"dt1", "dt2"}) {
    VectorField X = vec(m, name);
    exp_m.push_back({X, -I() * interior(X, w)});
  }
  CHECK(same_span(Lm, exp_m, 4));

  CHECK_THROWS_WITH(annihilator(gen(c, "dz") + gen(c, "dzb")), Catch::Matchers::ContainsSubstring("not"));
}

TEST_CASE("involutivity", "[geometry]") {
  auto t = models::invariant_real_torus(2);
  Form omega = gen(t, "e1") ^ gen(t, "e2");
  CHECK(involutivity_check(annihilator((I() * omega).exp())).involutive);
  auto c = models::complex_chart(1);
  CHECK(involutivity_check({GenVector::vector(vec(c, "dzb")), GenVector::covector(gen(c, "dz"))}).involutive);
  // [E(dzb), dz + zb dzb] = d(zb)/2 = dzb/2, outside the span
  GenVector bent = GenVector::covector(gen(c, "dz") + var(c, "zb") * gen(c, "dzb"));
  auto r = involutivity_check({GenVector::vector(vec(c, "dzb")), bent});
  CHECK_FALSE(r.involutive);
  CHECK(r.bracket == GenVector::covector(CoeffFn(GaussRational::fraction(1, 2)) * gen(c, "dzb")));
  REQUIRE(r.point);
}

TEST_CASE("integrability witnesses", "[geometry]") {
  auto kt = models::kodaira_thurston();
  Form rho = wedge((I() * (gen(kt, "e3") ^ gen(kt, "e4"))).exp(), gen(kt, "e1") + I() * gen(kt, "e2"));
  CHECK(integrability_witness(rho).status == IntegrabilityResult::Status::Closed);

  // two-dimensional non-unimodular algebra: db = a^b, so d b = a·b
  ModelBuilder b(VariableTable{});
  b.add_generator("a", Grade::R);
  b.add_generator("b", Grade::R);
  b.set_diff("b", b.gen("a") ^ b.gen("b"));
  auto m = b.build();
  auto w = integrability_witness(gen(m, "b"));
  REQUIRE(w.status == IntegrabilityResult::Status::Witness);
  CHECK(spinor_action(w.u, gen(m, "b")) == gen(m, "b").d());

  // nondegenerate but non-closed omega = e1^e2 + e3^e4: u·e^{i omega} starts in degree 1, d rho in degree 3
  Form bad = (I() * ((gen(kt, "e1") ^ gen(kt, "e2")) + (gen(kt, "e3") ^ gen(kt, "e4")))).exp();
  auto r = integrability_witness(bad);
  CHECK(r.status == IntegrabilityResult::Status::NoWitness);
  CHECK_FALSE(r.drho.is_zero());
}

TEST_CASE("B-transforms", "[geometry]") {
  auto t = models::invariant_real_torus(4);
  Form omega = (gen(t, "e1") ^ gen(t, "e2")) + (gen(t, "e3") ^ gen(t, "e4"));
  Form rho = (I() * omega).exp();
  CHECK(b_transform(rho, Form(t)) == rho);
  Form B1 = gen(t, "e1") ^ gen(t, "e3"), B2 = CoeffFn(GaussRational::fraction(2, 3)) * (gen(t, "e2") ^ gen(t, "e4"));
  CHECK(b_transform(b_transform(rho, B2), B1) == b_transform(rho, B1 + B2));
  auto kt = models::kodaira_thurston();
  CHECK_THROWS_WITH(b_transform(Form::scalar(kt, 1), gen(kt, "e3") ^ gen(kt, "e4")),
                    Catch::Matchers::ContainsSubstring("closed"));
  CHECK_THROWS_AS(b_transform(Form::scalar(kt, 1), I() * (gen(kt, "e1") ^ gen(kt, "e2"))), Error);

  testing::Gen g(3);
  for (int trial = 0; trial < 50; ++trial) {
    Form B(t);
    for (int k = 0; k < 3; ++k) B += CoeffFn(GaussRational(g.scalar().re())) * Form::monomial(t, g.subset(*t, 2));
    GenVector u{g.constant_vector(t), g.form(t, 1)}, v{g.constant_vector(t), g.form(t, 1)};
    REQUIRE(inner_pairing(b_shear(u, B), b_shear(v, B)) == inner_pairing(u, v));
    if (!B.is_zero()) REQUIRE(type_at(b_transform(rho, B), kOrigin) == type_at(rho, kOrigin));
  }
}

TEST_CASE("pointwise generalized complex structure", "[geometry]") {
  auto t = models::invariant_real_torus(2);
  Form omega = gen(t, "e1") ^ gen(t, "e2");
  auto J = endomorphism_from_spinor((I() * omega).exp(), kOrigin).J;
  // frame order (E1, E2, e1, e2): J E1 = ι_{E1} ω = e2, J E2 = -e1, J e1 = E2, J e2 = -E1
  Matrix expected(4, 4);
  expected(3, 0) = 1;
  expected(2, 1) = -1;
  expected(1, 2) = 1;
  expected(0, 3) = -1;
  CHECK(J == expected);

  auto p = models::real_plane();
  ExactPoint at{{}, {mpq_class(1, 3), mpq_class(2)}, {}};
  auto Jc = endomorphism_from_spinor(gen(p, "dx") + I() * gen(p, "dy"), at).J;
  // +i-eigenspace contains ∂/∂zbar = (∂x + i ∂y)/2, so J ∂x = -∂y and J ∂y = ∂x
  CHECK(Jc(1, 0) == GaussRational(-1));
  CHECK(Jc(0, 1) == GaussRational(1));
  CHECK(Jc(0, 0).is_zero());

  Form B = omega;
  Matrix S = b_shear_matrix(B);
  auto JB = endomorphism_from_spinor(b_transform((I() * omega).exp(), B), kOrigin).J;
  CHECK(JB == S * J * inverse(S));
}
