#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sigchev/expr.hpp"
#include "sigchev/kernels.hpp"

using namespace sigchev;

namespace {

Field q_sqrt2() {
  const Field q = make_prime_field(0);
  return extend_algebraic(q, "r", parse_upoly(q, "y^2 - 2", "y"));
}

PseudoField q_id() { return sigma_field(identity_morphism(make_prime_field(0))); }

PseudoField sqrt2_conj() {
  const Field k = q_sqrt2();
  return sigma_field(make_morphism(k, k, {k.neg(k.generator(0))}));
}

void check_truncation_law(const Realization& r) {
  CHECK(r.truncation_law);
  for (std::size_t s = 0; s + 1 < r.kernels.size(); ++s) {
    const auto& a = r.kernels[s];
    const auto& b = r.kernels[s + 1];
    for (std::size_t i = 0; i < a.components.size(); ++i) {
      CHECK(condition_one(b, i));
      // independent check: every generator of p_t lies in p_{t+1}, and every
      // element of p_{t+1} free of the top shift lies in p_t
      const auto& br = b.components[i].ring;
      const auto& ar = a.components[i].ring;
      std::vector<Poly> up;
      for (std::size_t idx = 0; idx < ar.nvars(); ++idx) up.push_back(br.var(idx + a.vars.size()));
      for (const auto& g : a.components[i].ideal) CHECK(ideal_contains(br, b.components[i].ideal, substitute(ar, br, g, up)));
      for (const auto& g : b.components[i].ideal) {
        bool top = false;
        for (std::size_t v = 0; v < a.vars.size(); ++v) top = top || br.uses_var(g, v);
        if (top) continue;
        std::vector<Poly> down(a.vars.size(), ar.zero());
        for (std::size_t idx = 0; idx < ar.nvars(); ++idx) down.push_back(ar.var(idx));
        CHECK(ideal_contains(ar, a.components[i].ideal, substitute(br, ar, g, down)));
      }
    }
  }
}

}  // namespace

TEST_CASE("kernel validation") {
  const auto generic = make_kernel(q_id(), {"x"}, 2, {{}});
  CHECK(generic.components[0].residue.transcendence_degree == 3);
  const auto intro = make_kernel(sqrt2_conj(), {"x"}, 1, {{"x - r", "s1(x) + r"}});
  CHECK(condition_one(intro, 0));
  try {
    make_kernel(q_id(), {"x"}, 1, {{"x - 1", "s1(x) - 2"}});
    FAIL("expected error");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::ConditionOneFails);
  }
  try {
    make_kernel(q_id(), {"x"}, 0, {{"x^2 - 4"}});
    FAIL("expected error");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::NotPrimeInScope);
  }
}

TEST_CASE("generic kernel stays generic") {
  const auto r = realize(make_kernel(q_id(), {"x"}, 0, {{}}), 5);
  REQUIRE(r.kernels.size() == 6);
  for (const auto& k : r.kernels) CHECK(k.components[0].ideal.empty());
  check_truncation_law(r);
}

TEST_CASE("intro kernels realize to order 6") {
  for (const auto& k : {make_kernel(sqrt2_conj(), {"x"}, 1, {{"x - r", "s1(x) + r"}}),
                        make_kernel(q_id(), {"x"}, 1, {{"x^2 - 2", "s1(x) + x"}})}) {
    const auto r = realize(k, 6);
    REQUIRE(r.kernels.size() == 6);
    check_truncation_law(r);
    const auto& top = r.kernels.back();
    const PolyRing& ring = top.components[0].ring;
    CHECK(ideal_contains(ring, top.components[0].ideal, parse_poly(ring, "s6(x) - x")));
    CHECK(ideal_contains(ring, top.components[0].ideal, parse_poly(ring, "s5(x) + x")));
    CHECK(kernel_degree(top) == kernel_degree(k));
  }
}

TEST_CASE("benign quadratic kernel doubles its degree") {
  const auto k = make_kernel(q_id(), {"x"}, 1, {{"s1(x)^2 - x"}});
  const auto r = realize(k, 4);
  check_truncation_law(r);
  for (const auto& kt : r.kernels) CHECK(kernel_degree(kt) == (1u << kt.length));
  const auto& top = r.kernels.back();
  const PolyRing& ring = top.components[0].ring;
  CHECK(ideal_contains(ring, top.components[0].ideal, parse_poly(ring, "s4(x)^2 - s3(x)")));
}

TEST_CASE("split twisted ideal picks the least factor") {
  // sigma = id on Q, p_0 = (x^2 - 2): prolongation meets s1(x)^2 - 2 over Q(x)
  const auto k = make_kernel(q_id(), {"x"}, 0, {{"x^2 - 2"}});
  const auto next = prolong(k);
  REQUIRE(next.log.size() == 1);
  CHECK(next.log[0].factors.size() == 2);
  CHECK(next.log[0].chosen == next.log[0].factors[0]);
  const PolyRing& ring = next.components[0].ring;
  const auto& ideal = next.components[0].ideal;
  const bool plus = ideal_contains(ring, ideal, parse_poly(ring, "s1(x) + x"));
  const bool minus = ideal_contains(ring, ideal, parse_poly(ring, "s1(x) - x"));
  CHECK(plus != minus);
  // replaying the same choices gives the same tower
  CHECK(realize(k, 3).kernels[1].components[0].ideal == ideal);
}

TEST_CASE("kernels over a period-two pseudo-field") {
  const PseudoField p = trivial_extension(q_id(), 2);
  const auto k = make_kernel(p, {"x"}, 1, {{"x - 1", "s1(x) - 2"}, {"x - 2", "s1(x) - 1"}});
  const auto r = realize(k, 3);
  check_truncation_law(r);
  CHECK_THROWS_AS(make_kernel(p, {"x"}, 1, {{"x - 1", "s1(x) - 2"}, {"x - 1", "s1(x) - 2"}}), SigmaError);
}

TEST_CASE("inversive closure of x -> x^2") {
  const PolyRing r(make_prime_field(0), {"x"});
  const auto c = inversive_closure(make_sigma_ring(r, identity_morphism(r.field()), {parse_poly(r, "x^2")}));
  const ClosureElem half{r.var(0), 1};
  CHECK(c.normalize(half).n == 1);
  const auto s = c.sigma(half);
  CHECK(s.n == 0);
  CHECK(s.r == r.var(0));
  CHECK(c.equal(c.mul(half, half), c.u(r.var(0))));
  CHECK(c.normalize({parse_poly(r, "x^4 + 1"), 2}).r == parse_poly(r, "x + 1"));
  CHECK(c.u_injective_on({r.var(0), parse_poly(r, "x - 1")}));

  const auto zero = inversive_closure(make_sigma_ring(r, identity_morphism(r.field()), {r.zero()}));
  CHECK(zero.annihilated_after(r.var(0)) == 1u);
  CHECK(!zero.u_injective_on({r.var(0)}));
}

TEST_CASE("transport of sigma^d-primes is a bijection on examples") {
  const PolyRing r(make_prime_field(0), {"x"});
  const auto sq = make_sigma_ring(r, identity_morphism(r.field()), {parse_poly(r, "x^2")});
  const auto c = inversive_closure(sq);
  for (const char* g : {"x", "x - 1", "x^2 + x + 1", "x^4 + x^3 + x^2 + x + 1"}) {
    const auto q = make_sigma_ideal(sq, {parse_poly(r, g)}, 1u);
    const auto qs = spec_transport(c, q, 1);
    CHECK(ideals_equal(r, contract(qs).basis(), q.basis()));
    CHECK(qs.period() == ideal_period(q));
    CHECK(qs.contains({r.var(0), 3}) == (std::string(g) == "x"));
  }
  const auto neg = make_sigma_ring(r, identity_morphism(r.field()), {parse_poly(r, "-x")});
  const auto ci = inversive_closure(neg);
  CHECK(ci.normalize({r.var(0), 3}).n == 0);
  for (const auto& [g, period] : std::vector<std::pair<const char*, unsigned>>{{"x", 1}, {"x^2 - 2", 1}, {"x - 1", 2}}) {
    const auto q = make_sigma_ideal(neg, {parse_poly(r, g)}, period);
    const auto qs = spec_transport(ci, q, period);
    CHECK(ideals_equal(r, contract(qs).basis(), q.basis()));
    CHECK(ideal_period(q) == period);
    CHECK(qs.period() == period);
  }
}
