#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sigchev/diffpoly.hpp"
#include "sigchev/expr.hpp"

using namespace sigchev;

namespace {

DiffPolyRing over_q(std::vector<std::string> vars = {"x"}) {
  return DiffPolyRing(identity_morphism(make_prime_field(0)), std::move(vars));
}

DiffPolyRing over_sqrt2_conj() {
  const Field q = make_prime_field(0);
  const Field k = extend_algebraic(q, "r", parse_upoly(q, "y^2 - 2", "y"));
  return DiffPolyRing(make_morphism(k, k, {k.neg(k.generator(0))}), {"x"});
}

}  // namespace

TEST_CASE("truncation rings and shifts") {
  const DiffPolyRing r = over_q({"x", "y"});
  const PolyRing t2 = r.truncation_ring(2);
  CHECK(t2.var_names() == std::vector<std::string>{"s2(y)", "s2(x)", "s1(y)", "s1(x)", "y", "x"});
  for (std::size_t idx = 0; idx < t2.nvars(); ++idx) {
    auto [v, s] = r.indeterminate(2, idx);
    CHECK(r.index_in(2, v, s) == idx);
  }
  const DiffPoly p = r.parse("x*s1(y) + 3");
  CHECK(p.order == 1);
  const DiffPoly q = sigma_shift(r, p, 2);
  CHECK(q == r.parse("s2(x)*s3(y) + 3"));
  CHECK(r.parse(r.to_string(q)) == q);
}

TEST_CASE("sigma on coefficients is applied by shifts") {
  const DiffPolyRing r = over_sqrt2_conj();
  CHECK(sigma_shift(r, r.parse("x - r"), 1) == r.parse("s1(x) + r"));
  CHECK(sigma_shift(r, r.parse("x - r"), 2) == r.parse("s2(x) - r"));
}

TEST_CASE("leaders and initials") {
  const DiffPolyRing r = over_q({"x", "u"});
  const auto li = leader_initial(r, r.parse("u*s1(x)^3 + x*s1(x)"));
  CHECK(li.var == 0);
  CHECK(li.shift == 1);
  CHECK(li.degree == 3);
  CHECK(li.initial == r.parse("u"));
  try {
    leader_initial(r, r.parse("5"));
    FAIL("expected error");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::ConstantPolynomial);
  }
}

TEST_CASE("Ritt reduction examples") {
  const DiffPolyRing r = over_q();
  const auto res = ritt_reduce(r, r.parse("s1(x)^2 - 2"), {r.parse("x^2 - 2")});
  CHECK(r.is_zero(res.remainder));
  CHECK(r.is_zero(ritt_defect(r, r.parse("s1(x)^2 - 2"), {r.parse("x^2 - 2")}, res)));
  const auto keep = ritt_reduce(r, r.parse("x"), {r.parse("s1(x)")});
  CHECK(keep.remainder == r.parse("x"));
  CHECK(keep.steps.empty());
}

TEST_CASE("Ritt reduction certificate holds on random inputs") {
  const DiffPolyRing r = over_q({"x", "y"});
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3), exp(0, 2), shift(0, 2), var(0, 1);
  auto rand_poly = [&](int terms) {
    std::string s = "0";
    for (int k = 0; k < terms; ++k) {
      s += " + (" + std::to_string(coef(rng)) + ")";
      for (int f = 0; f < 2; ++f) {
        const char* v = var(rng) ? "y" : "x";
        s += "*s" + std::to_string(shift(rng)) + "(" + v + ")^" + std::to_string(exp(rng));
      }
    }
    return r.parse(s);
  };
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const DiffPoly b = rand_poly(3);
    const PolyRing br = r.truncation_ring(b.order);
    if (br.is_constant(b.poly)) continue;
    const DiffPoly p = rand_poly(4);
    const auto res = ritt_reduce(r, p, {b});
    CHECK(r.is_zero(ritt_defect(r, p, {b}, res)));
    // reduced: no indeterminate of the remainder is a shift of b's leader with enough degree
    const auto lb = leader_initial(r, b);
    const PolyRing rr = r.truncation_ring(res.remainder.order);
    for (unsigned s = lb.shift; s <= res.remainder.order; ++s)
      CHECK(rr.degree_in(res.remainder.poly, r.index_in(res.remainder.order, lb.var, s)) < lb.degree);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("reinterpretation as a sigma^d ring") {
  const DiffPolyRing r = over_q();
  const auto re = reinterpret_power(r, 2);
  CHECK(re.ring.vars() == std::vector<std::string>{"x", "x_s1"});
  const DiffPoly p = r.parse("s3(x)*x + s2(x)");
  const DiffPoly np = re.translate(r, p);
  CHECK(np == re.ring.parse("s1(x_s1)*x + s1(x)"));
  CHECK(re.translate_back(r, np) == p);
}

TEST_CASE("limit degree of the benign quadratic tower") {
  const Field tower = benign_quadratic_tower(10);
  const auto degs = presentation_degrees(tower, 0);
  REQUIRE(degs.size() == 10);
  CHECK(!degs[0]);
  for (unsigned d = 1; d <= 3; ++d) {
    const auto ld = limit_degree(degs, d);
    // independent count: degree of the block of d generators above level d
    const auto expected = tower.at_level(2 * d).degree_over(tower.at_level(d));
    CHECK(ld.value == expected.value());
    CHECK(ld.value == (1u << d));
  }
  CHECK(limit_degree({std::nullopt, 1, 1, 1}, 1).value == 1);
  CHECK_THROWS_AS(limit_degree({std::nullopt, 2, 3, 5}, 1), SigmaError);
}
