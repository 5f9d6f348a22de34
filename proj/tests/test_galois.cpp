#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sigchev/expr.hpp"
#include "sigchev/galois.hpp"

using namespace sigchev;

namespace {

// Q(sqrt 2)(x), delta = x d/dx, sigma(x) = q x
DeltaSigmaField example_field(long q = 2) {
  const Field base = make_prime_field(0);
  const Field r2 = extend_algebraic(base, "r", parse_upoly(base, "y^2 - 2", "y"));
  const Field k = extend_transcendental(r2, "x");
  const Elem x = k.generator(1);
  const auto sigma = make_morphism(k, k, {k.generator(0), k.mul(k.from_int(q), x)});
  return make_deltasigma_field(k, {{"x", x}}, sigma);
}

}  // namespace

TEST_CASE("delta-sigma fields") {
  const auto k = example_field();
  const Field& f = k.field;
  const Elem x = f.generator(1);
  CHECK(k.delta(f.pow(x, 3)) == f.mul(f.from_int(3), f.pow(x, 3)));
  CHECK(k.delta(f.inv(x)) == f.neg(f.inv(x)));
  CHECK(f.is_zero(k.delta(f.generator(0))));
  // Leibniz on samples
  const Elem a = parse_elem(f, "(x^2 + r)/(x - 1)"), b = parse_elem(f, "x^3 - 2*r*x");
  CHECK(k.delta(f.mul(a, b)) == f.add(f.mul(k.delta(a), b), f.mul(a, k.delta(b))));
  const auto shift = make_morphism(f, f, {f.generator(0), f.add(x, f.one())});
  try {
    make_deltasigma_field(f, {{"x", x}}, shift);
    FAIL("expected error");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::CommutationFails);
  }
  CHECK_NOTHROW(make_deltasigma_field(f, {}, shift));
}

TEST_CASE("PV rings for delta(y) = y/2") {
  const auto k = example_field();
  const Field& f = k.field;
  const Elem half = f.from_rational(Rational(1, 2));
  const auto plus = pv_construct(k, half, 1);
  const auto minus = pv_construct(k, half, -1);
  CHECK(plus.shape == PVRing::Shape::Quadratic);
  CHECK(plus.sigma_factor == f.generator(0));
  CHECK(minus.sigma_factor == f.neg(f.generator(0)));
  for (const auto* r : {&plus, &minus}) {
    const Field& l = r->ring.field;
    CHECK(r->ring.delta(r->y) == l.mul(l.embed(half, f.level()), r->y));
    CHECK(r->ring.delta(r->ring.sigma.apply(r->y)) == r->ring.sigma.apply(r->ring.delta(r->y)));
  }
  const auto trivial = pv_construct(k, f.zero());
  CHECK(trivial.shape == PVRing::Shape::InBase);
  CHECK(trivial.y == f.one());
}

TEST_CASE("D-matrix") {
  const auto k = example_field();
  const Field& f = k.field;
  const Elem half = f.from_rational(Rational(1, 2));
  const auto plus = pv_construct(k, half, 1);
  const auto minus = pv_construct(k, half, -1);
  const auto same = dmatrix(plus, plus);
  CHECK(same.delta_vanishes);
  CHECK(same.sigma_verified);
  CHECK(same.sigma_ratio == f.one());
  const auto opp = dmatrix(plus, minus);
  CHECK(opp.delta_vanishes);
  CHECK(opp.sigma_verified);
  CHECK(opp.sigma_ratio == f.from_int(-1));
  const auto z = dmatrix(pv_construct(k, f.zero()), pv_construct(k, f.zero()));
  CHECK(z.d == "1");
  CHECK_THROWS_AS(dmatrix(plus, pv_construct(k, f.one())), SigmaError);
}

TEST_CASE("sigma^l isomorphism search") {
  const auto k = example_field();
  const Field& f = k.field;
  const Elem half = f.from_rational(Rational(1, 2));
  const auto plus = pv_construct(k, half, 1);
  const auto minus = pv_construct(k, half, -1);
  const auto opp = sigma_l_isomorphism_search(plus, minus, 4);
  CHECK(opp.minimal_l == 2u);
  CHECK(opp.doubled_check);
  CHECK(opp.candidates.size() == 2);
  CHECK(sigma_l_isomorphism_search(plus, plus, 4).minimal_l == 1u);
  CHECK(sigma_l_isomorphism_search(minus, minus, 4).minimal_l == 1u);
  CHECK(sigma_l_isomorphism_search(pv_construct(k, f.zero()), pv_construct(k, f.zero()), 4).minimal_l == 1u);
  CHECK(!sigma_l_isomorphism_search(plus, minus, 1).minimal_l);
}

TEST_CASE("delta constants") {
  const auto k = example_field();
  for (unsigned bound : {1u, 2u, 4u}) {
    const auto c = delta_constants(k, bound);
    REQUIRE(c.basis.size() == 1);
    CHECK(c.basis[0] == k.field.one());
    CHECK(c.searched == 2 * bound + 1);
  }
  const auto pv = pv_construct(k, k.field.from_rational(Rational(1, 2)), 1);
  const auto cp = delta_constants(pv.ring, 4);
  CHECK(cp.basis.size() == 1);
  CHECK(cp.searched == 18);
  const Field& f = k.field;
  const auto zero = make_deltasigma_field(f, {}, identity_morphism(f));
  CHECK(delta_constants(zero, 2).basis.size() == 5);
}

TEST_CASE("sigma separability") {
  const auto k = example_field();
  const Field& f = k.field;
  const Elem x = f.generator(1);
  CHECK(sigma_separability_witness(k, {f.one(), x, f.mul(x, x)}).pass);
  const auto degenerate = DeltaSigmaField{f, {std::nullopt, f.zero()}, make_morphism_unchecked(f, f, {f.generator(0), f.zero()})};
  const auto res = sigma_separability_witness(degenerate, {f.one(), x});
  CHECK(!res.pass);
  CHECK(res.dependency.size() == 2);
  try {
    sigma_separability_witness(k, {x, f.mul(f.from_int(2), x)});
    FAIL("expected error");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::SampleDependent);
  }
}

TEST_CASE("pseudo-simplicity and constraints") {
  const Field q = make_prime_field(0);
  const PseudoField kq = sigma_field(identity_morphism(q));
  CHECK(pseudo_simple_probe({trivial_extension(kq, 3), std::nullopt, {q.one()}, true}, 4).verdict == ProbeResult::Verdict::Simple);
  const auto free = pseudo_simple_probe({kq, std::nullopt, {q.one()}, false}, 4);
  CHECK(free.verdict == ProbeResult::Verdict::NotSimple);
  CHECK(free.witness == "(c)");
  CHECK(pseudo_simple_probe({kq, std::nullopt, {q.zero(), q.one()}, false}, 4).witness == "(c - 1)");
  // c^2 - 2 over Q is a field: simple; c^2 - 1 splits into two sigma-fixed factors
  CHECK(pseudo_simple_probe({kq, parse_upoly(q, "c^2 - 2", "c"), {q.one()}, false}, 4).verdict == ProbeResult::Verdict::Simple);
  const auto split = pseudo_simple_probe({kq, parse_upoly(q, "c^2 - 1", "c"), {q.one()}, false}, 4);
  CHECK(split.verdict == ProbeResult::Verdict::NotSimple);
  CHECK(pseudo_simple_probe({kq, parse_upoly(q, "c^2 - 1", "c"), parse_upoly(q, "c - 1", "c"), false}, 4).verdict ==
        ProbeResult::Verdict::Simple);
  // over (Q(i), conjugation) the factors c - i, c + i are swapped: one orbit
  const Field qi = extend_algebraic(q, "i", parse_upoly(q, "y^2 + 1", "y"));
  const PseudoField conj = sigma_field(make_morphism(qi, qi, {qi.neg(qi.generator(0))}));
  CHECK(pseudo_simple_probe({conj, parse_upoly(qi, "c^2 + 1", "c"), {qi.one()}, false}, 4).verdict ==
        ProbeResult::Verdict::Simple);

  const auto alg = constraint_search(kq, parse_upoly(q, "c^2 - 1", "c"), 3);
  CHECK(alg.constrained);
  const auto in_k = constraint_search(kq, parse_upoly(q, "c - 5", "c"), 3);
  CHECK(in_k.constrained);
  CHECK(in_k.b == UPoly{q.one()});
  const auto trans = constraint_search(kq, std::nullopt, 3);
  CHECK(!trans.constrained);
  CHECK(trans.tried.size() == 5);
}
