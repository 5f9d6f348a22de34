#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sigchev/expr.hpp"

using namespace sigchev;

namespace {

Field q_sqrt2() {
  const Field q = make_prime_field(0);
  return extend_algebraic(q, "r", parse_upoly(q, "y^2 - 2", "y"));
}

}  // namespace

TEST_CASE("expression parsing and rendering") {
  const PolyRing r(make_prime_field(0), {"x", "s1(x)", "s2(x)", "u"});
  const Poly p = parse_poly(r, "u*s^1(x)^2 - x");
  CHECK(p == parse_poly(r, "u*s1(x)^2 - x"));
  CHECK(p == parse_poly(r, "u*s(x)^2 - s0(x)"));
  CHECK(parse_poly(r, r.to_string(p)) == p);
  CHECK(parse_poly(r, "(x + 1)^2/2") == parse_poly(r, "x^2/2 + x + 1/2"));
  CHECK_THROWS_AS(parse_poly(r, "x +"), SigmaError);
  try {
    parse_poly(r, "w + 1");
    FAIL("expected error");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::UnknownName);
  }
  CHECK(split_shifted_name("s3(x)") == std::pair<std::string, unsigned>{"x", 3});
  CHECK(split_shifted_name("x") == std::pair<std::string, unsigned>{"x", 0});
}

TEST_CASE("groebner basics") {
  const PolyRing r(make_prime_field(0), {"x"});
  const auto g = groebner(r, {parse_poly(r, "x^2 - 2")});
  REQUIRE(g.size() == 1);
  CHECK(ideal_contains(r, g, parse_poly(r, "x^4 - 4")));
  CHECK_FALSE(ideal_contains(r, g, parse_poly(r, "x - 2")));

  const Field k = q_sqrt2();
  const PolyRing s(k, {"x", "y"}, MonomialOrder::lex());
  const auto e = eliminate(s, {parse_poly(s, "x - r"), parse_poly(s, "y - r")}, {0});
  REQUIRE(e.size() == 1);
  CHECK(e[0] == parse_poly(s, "y - r"));
}

TEST_CASE("intersection and saturation") {
  const Field k = q_sqrt2();
  const PolyRing r(k, {"x"});
  const auto i = intersect(r, {parse_poly(r, "x - r")}, {parse_poly(r, "x + r")});
  REQUIRE(i.size() == 1);
  CHECK(i[0] == parse_poly(r, "x^2 - 2"));
  const PolyRing s(make_prime_field(0), {"x", "y"});
  const auto sat = saturate(s, {parse_poly(s, "x*y"), parse_poly(s, "x^2")}, parse_poly(s, "x"));
  CHECK(is_unit_ideal(sat, s));
  const auto sat2 = saturate(s, {parse_poly(s, "x*y - x")}, parse_poly(s, "x"));
  CHECK(ideals_equal(s, sat2, {parse_poly(s, "y - 1")}));
}

TEST_CASE("groebner basis is independent of generator order and order choice") {
  const PolyRing lex(make_prime_field(0), {"x", "y", "z"}, MonomialOrder::lex());
  const std::vector<Poly> gens{parse_poly(lex, "x^2 + y*z - 1"), parse_poly(lex, "x*y - z"), parse_poly(lex, "z^2 - y")};
  std::vector<Poly> rev(gens.rbegin(), gens.rend());
  CHECK(groebner(lex, gens) == groebner(lex, rev));
  const PolyRing drl = lex.with_order(MonomialOrder::degrevlex());
  std::vector<Poly> moved;
  for (const auto& g : gens) moved.push_back(drl.normalize(g.terms));
  const auto b = groebner(drl, moved);
  for (const auto& g : groebner(lex, gens)) CHECK(ideal_contains(drl, b, drl.normalize(g.terms)));
}

TEST_CASE("principal membership agrees with naive division") {
  std::mt19937 rng(20240607);
  const PolyRing r(make_prime_field(0), {"x", "y", "z"});
  int agree = 0;
  for (int i = 0; i < 30; ++i) {
    const auto g = oracle::random_qpoly(rng, 3, 2, 3);
    if (g.empty()) continue;
    auto f = oracle::mul(g, oracle::random_qpoly(rng, 3, 2, 3));
    if (i % 2 == 1) f = oracle::add(f, oracle::random_qpoly(rng, 3, 1, 2));
    const bool expected = oracle::divides_exactly(f, g);
    const bool got = ideal_contains(r, groebner(r, {oracle::to_poly(r, g)}), oracle::to_poly(r, f));
    CHECK(expected == got);
    agree += expected == got;
  }
  CHECK(agree >= 20);
}

TEST_CASE("F2 membership agrees with exhaustive evaluation") {
  std::mt19937 rng(99);
  const Field f2 = make_prime_field(2);
  const PolyRing r(f2, {"x", "y"});
  std::uniform_int_distribution<int> bit(0, 1);
  auto random_f2 = [&]() {
    std::map<std::vector<unsigned>, int> p;
    for (unsigned a = 0; a <= 3; ++a)
      for (unsigned b = 0; a + b <= 3; ++b)
        if (bit(rng)) p[{a, b}] = 1;
    return p;
  };
  auto to_poly = [&](const std::map<std::vector<unsigned>, int>& p) {
    std::vector<Term> terms;
    for (const auto& [m, c] : p) terms.push_back(Term{Monomial(m.begin(), m.end()), f2.from_int(c)});
    return r.normalize(std::move(terms));
  };
  for (int i = 0; i < 40; ++i) {
    const auto g = random_f2();
    const auto f = random_f2();
    std::vector<Poly> gens{to_poly(g), parse_poly(r, "x^2 + x"), parse_poly(r, "y^2 + y")};
    bool vanishes = true;
    for (int x = 0; x <= 1; ++x)
      for (int y = 0; y <= 1; ++y)
        if (oracle::eval_f2(g, {x, y}) == 0 && oracle::eval_f2(f, {x, y}) != 0) vanishes = false;
    CHECK(ideal_contains(r, groebner(r, gens), to_poly(f)) == vanishes);
  }
}
