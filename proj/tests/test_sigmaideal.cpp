#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sigchev/expr.hpp"
#include "sigchev/sigmaideal.hpp"

using namespace sigchev;

namespace {

Field q_root(const std::string& name, const std::string& minpoly) {
  const Field q = make_prime_field(0);
  return extend_algebraic(q, name, parse_upoly(q, minpoly, "y"));
}

struct Intro {
  SigmaRing r, s;
  Inclusion inc;
};

// R = K[u] in S = K[x], u -> x^2, sigma(x) = -x, sigma = id on K
Intro intro(const Field& k) {
  const PolyRing rr(k, {"u"}), sr(k, {"x"});
  const auto id = identity_morphism(k);
  Intro out;
  out.r = make_sigma_ring(rr, id, {rr.var(0)});
  out.s = make_sigma_ring(sr, id, {sr.neg(sr.var(0))});
  out.inc = make_inclusion(out.r, out.s, {parse_poly(sr, "x^2")});
  return out;
}

struct StatementA {
  Inclusion inc;
  SigmaIdeal q;
};

StatementA statement_a(unsigned d) {
  const Field k = d % 2 ? make_prime_field(0) : q_root("i", "y^2 + 1");
  const Elem c = d % 2 ? k.from_int(-1) : k.generator(0);
  const auto id = identity_morphism(k);
  const PolyRing rr(k, {"t", "td"}), sr(k, {"t", "td", "s"});
  const auto r = make_sigma_ring(rr, id, {rr.var(0), rr.scale(rr.var(1), c)});
  const auto s = make_sigma_ring(sr, id, {sr.var(0), sr.scale(sr.var(1), c), sr.var(2)}, {parse_poly(sr, "s^2 - t")});
  auto inc = make_inclusion(r, s, {sr.var(0), sr.var(1)});
  return {inc, make_sigma_ideal(r, {parse_poly(rr, "t - td^2")}, d)};
}

}  // namespace

TEST_CASE("membership and elimination") {
  const Field k = q_root("r", "y^2 - 2");
  const PolyRing r(k, {"x", "y"}, MonomialOrder::lex());
  const auto amb = make_sigma_ring(r, identity_morphism(k), {r.var(0), r.var(1)});
  const auto I = make_sigma_ideal(amb, {parse_poly(r, "x - r"), parse_poly(r, "y - r")});
  const auto elim = eliminate(r, I.basis(), {0});
  REQUIRE(elim.size() == 1);
  CHECK(elim[0] == parse_poly(r, "y - r"));
  const PolyRing q1(make_prime_field(0), {"x"});
  const auto J = make_sigma_ideal(make_sigma_ring(q1, identity_morphism(q1.field()), {q1.var(0)}), {parse_poly(q1, "x^2 - 2")});
  CHECK(J.contains(parse_poly(q1, "x^4 - 4")));
}

TEST_CASE("sigma stability") {
  const Field k = q_root("r", "y^2 - 2");
  const auto in = intro(k);
  const auto I = make_sigma_ideal(in.s, {parse_poly(in.s.ring, "x - r")});
  const auto one = sigma_stability(I, 1);
  CHECK(!one.stable);
  REQUIRE(one.witness);
  const auto two = sigma_stability(I, 2);
  CHECK(two.stable);
  CHECK(two.reflexive_certified);
  CHECK(sigma_stability(make_sigma_ideal(in.s, {parse_poly(in.s.ring, "x^2 - 2")}), 1).stable);
  for (unsigned d = 1; d <= 3; ++d) {
    const auto a = statement_a(d);
    CHECK(sigma_stability(a.q, d).stable);
  }
}

TEST_CASE("notin_sigma") {
  const PolyRing r(make_prime_field(0), {"s1(x)", "x"}, MonomialOrder::lex());
  const auto trunc = make_sigma_ring(r, identity_morphism(r.field()), {std::nullopt, r.var(0)});
  const auto res = notin_sigma(r.var(1), make_sigma_ideal(trunc, {r.var(0)}), 5);
  CHECK(res.first_in == 1u);
  const PolyRing q1(make_prime_field(0), {"x"});
  const auto amb = make_sigma_ring(q1, identity_morphism(q1.field()), {q1.var(0)});
  CHECK(!notin_sigma(parse_poly(q1, "x^2 - 2"), make_sigma_ideal(amb, {parse_poly(q1, "x - 1")}), 10).first_in);
  const auto a = statement_a(3);
  const auto t = notin_sigma(parse_poly(a.inc.source.ring, "t"), a.q, 10);
  CHECK(!t.first_in);
  CHECK(t.scanned == 2);
}

TEST_CASE("pseudo-prime assembly") {
  const Field k = q_root("r", "y^2 - 2");
  const auto in = intro(k);
  const auto q = make_sigma_ideal(in.s, {parse_poly(in.s.ring, "x - r")}, 2u);
  const auto p = pseudo_prime_assemble(q, 2);
  CHECK(ideals_equal(in.s.ring, p.basis(), {parse_poly(in.s.ring, "x^2 - 2")}));
  const auto p1 = make_sigma_ideal(in.s, {parse_poly(in.s.ring, "x^2 - 2")}, 1u);
  CHECK(ideals_equal(in.s.ring, pseudo_prime_assemble(p1, 1).basis(), p1.basis()));
  CHECK_THROWS_AS(pseudo_prime_assemble(q, 1), SigmaError);
}

TEST_CASE("prime certification") {
  const PolyRing r(make_prime_field(0), {"x", "y"}, MonomialOrder::lex());
  const auto rf = certify_prime(r, {parse_poly(r, "x^2 - y")});
  CHECK(rf.transcendence_degree == 1);
  CHECK(rf.field.is_zero(evaluate(r, parse_poly(r, "x^4 - y^2"), rf)));
  CHECK(certify_prime(r, {parse_poly(r, "x*y - 1")}).transcendence_degree == 1);
  CHECK_THROWS_AS(certify_prime(r, {parse_poly(r, "x^2 - 4")}), SigmaError);
  CHECK_THROWS_AS(certify_prime(r, {parse_poly(r, "x*y")}), SigmaError);
  CHECK_THROWS_AS(certify_prime(r, {parse_poly(r, "1")}), SigmaError);
  const auto pt = certify_prime(r, {parse_poly(r, "x^2 - 2"), parse_poly(r, "y - x")});
  CHECK(pt.transcendence_degree == 0);
  CHECK(pt.field.degree_over(r.field()) == 2u);
}

TEST_CASE("intro example lifts") {
  for (int a : {2, 3, 5}) {
    const Field k = q_root("r", "y^2 - " + std::to_string(a));
    const auto in = intro(k);
    const auto q = make_sigma_ideal(in.r, {parse_poly(in.r.ring, "u - " + std::to_string(a))}, 1u);
    const auto rep = lift_search(in.inc, q, 1, 4);
    REQUIRE(rep.primes_above.size() == 2);
    CHECK(rep.lifts_at(1).empty());
    CHECK(rep.lifts_at(2).size() == 2);
    CHECK(rep.permutation[0] == 1u);
    CHECK(rep.permutation[1] == 0u);
    CHECK(rep.minimal_l() == 2u);
    for (const auto& l : rep.primes_above) {
      CHECK(l.contraction_verified);
      CHECK(l.prime_certified);
    }
    CHECK(rep.primes_above[0].generators == std::vector<Poly>{parse_poly(in.s.ring, "x + r")});
  }
  const auto in = intro(q_root("r", "y^2 - 2"));
  const auto rep = lift_search(in.inc, make_sigma_ideal(in.r, {in.r.ring.var(0)}, 1u), 1, 4);
  REQUIRE(rep.primes_above.size() == 1);
  CHECK(rep.lifts_at(1).size() == 1);
  CHECK(rep.primes_above[0].generators == std::vector<Poly>{in.s.ring.var(0)});
}

TEST_CASE("Statement A lifts only at twice the period") {
  for (unsigned d = 1; d <= 3; ++d) {
    const auto a = statement_a(d);
    const auto rep = lift_search(a.inc, a.q, d, 4);
    REQUIRE(rep.primes_above.size() == 2);
    CHECK(rep.lifts_at(1).empty());
    CHECK(rep.lifts_at(2).size() == 2);
    for (const auto& l : rep.primes_above) {
      CHECK(l.power == 2 * d);
      CHECK(l.contraction_verified);
    }
    const PolyRing& sr = a.inc.target.ring;
    CHECK(ideals_equal(sr, rep.primes_above[0].generators, {parse_poly(sr, "s + td"), parse_poly(sr, "t - td^2")}));
  }
}

TEST_CASE("witness tables") {
  std::vector<FamilyMember> intro_family;
  for (int a : {2, 3, 5}) {
    const auto in = intro(q_root("r", "y^2 - " + std::to_string(a)));
    intro_family.push_back({in.inc, make_sigma_ideal(in.r, {parse_poly(in.r.ring, "u - " + std::to_string(a))}), 1});
  }
  const auto t = chevalley_witness(intro_family, 4);
  CHECK(t.uniform_l == 2u);
  CHECK(!t.naive_holds);
  std::vector<FamilyMember> sa;
  for (unsigned d = 1; d <= 3; ++d) {
    const auto a = statement_a(d);
    sa.push_back({a.inc, a.q, d});
  }
  const auto ta = chevalley_witness(sa, 4);
  CHECK(ta.uniform_l == 2u);
  CHECK(!ta.naive_holds);
  const auto in = intro(q_root("r", "y^2 - 2"));
  const auto self = make_inclusion(in.s, in.s, {in.s.ring.var(0)});
  const auto ts = chevalley_witness({{self, make_sigma_ideal(in.s, {parse_poly(in.s.ring, "x^2 - 3")}), 1}}, 4);
  CHECK(ts.naive_holds);
}
