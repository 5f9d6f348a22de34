#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sigchev/fieldtower.hpp"

using namespace sigchev;

namespace {

UPoly ints(const Field& f, std::initializer_list<long> cs) {
  UPoly p;
  for (long c : cs) p.push_back(f.from_int(c));
  upoly::trim(f, p);
  return p;
}

Field q_sqrt(long a) { return extend_algebraic(make_prime_field(0), "r", ints(make_prime_field(0), {-a, 0, 1})); }

Field gf(std::uint64_t p, std::initializer_list<long> minpoly) {
  const Field base = make_prime_field(p);
  return extend_algebraic(base, "y", ints(base, minpoly));
}

Elem random_elem(const Field& f, std::mt19937& rng) {
  std::uniform_int_distribution<long> dist(-5, 5);
  Elem e = f.from_int(dist(rng));
  for (std::size_t i = 0; i < f.level(); ++i) e = f.add(e, f.mul(f.from_int(dist(rng)), f.generator(i)));
  if (f.level() > 0) e = f.add(e, f.mul(f.from_int(dist(rng)), f.pow(f.generator(f.level() - 1), 2)));
  return e;
}

}  // namespace

TEST_CASE("prime fields") {
  CHECK(make_prime_field(0).characteristic() == 0);
  CHECK(make_prime_field(5).size() == 5u);
  try {
    make_prime_field(4);
    FAIL("expected error");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::NonPrimeCharacteristic);
  }
  const Field f5 = make_prime_field(5);
  CHECK(f5.mul(f5.from_int(3), f5.from_int(2)) == f5.one());
  CHECK(f5.to_string(f5.from_int(-1)) == "4");
}

TEST_CASE("algebraic steps") {
  const Field k = q_sqrt(2);
  const Elem r = k.generator(0);
  CHECK(k.mul(r, r) == k.from_int(2));
  CHECK(k.degree_over(k.base()) == 2u);
  CHECK(k.to_string(k.add(r, k.one())) == "r + 1");
  CHECK(k.mul(k.inv(k.add(r, k.one())), k.add(r, k.one())) == k.one());
  try {
    extend_algebraic(make_prime_field(0), "y", ints(make_prime_field(0), {-4, 0, 1}));
    FAIL("expected error");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::ReduciblePolynomial);
  }
  try {
    extend_algebraic(k, "r", ints(k, {-3, 0, 1}));
    FAIL("expected error");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::DuplicateGenerator);
  }
  const Field f4 = gf(2, {1, 1, 1});
  CHECK(f4.size() == 4u);
  CHECK(f4.elements().size() == 4u);
}

TEST_CASE("transcendental steps reduce fractions") {
  const Field k = extend_transcendental(make_prime_field(0), "x");
  const Elem x = k.generator(0);
  const Elem num = k.sub(k.mul(x, x), k.one());
  const Elem den = k.sub(x, k.one());
  CHECK(k.div(num, den) == k.add(x, k.one()));
  CHECK(k.to_string(k.inv(x)) == "(1)/(x)");
  CHECK(k.sqrt(k.mul(num, num)) == num);
  CHECK_FALSE(k.sqrt(x).has_value());
}

TEST_CASE("field axioms hold on random samples") {
  std::mt19937 rng(7);
  const Field k = extend_transcendental(q_sqrt(3), "x");
  for (int i = 0; i < 60; ++i) {
    const Elem a = random_elem(k, rng), b = random_elem(k, rng), c = random_elem(k, rng);
    CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
    CHECK(k.mul(k.mul(a, b), c) == k.mul(a, k.mul(b, c)));
    if (!k.is_zero(a)) CHECK(k.mul(a, k.inv(a)) == k.one());
  }
}

TEST_CASE("square roots in quadratic fields") {
  const Field k = q_sqrt(2);
  const Elem r = k.generator(0);
  const Elem a = k.add(k.from_int(3), k.mul(k.from_int(2), r));  // (1 + r)^2
  auto s = k.sqrt(a);
  REQUIRE(s.has_value());
  CHECK(k.mul(*s, *s) == a);
  CHECK(k.sqrt(r) == std::nullopt);
  auto t = k.sqrt(k.from_int(2));
  REQUIRE(t.has_value());
  CHECK(k.mul(*t, *t) == k.from_int(2));
}

TEST_CASE("factorization") {
  const Field q = make_prime_field(0);
  CHECK(is_irreducible(q, ints(q, {1, 0, 0, 0, 1})));
  const auto f = factor_univariate(q, ints(q, {4, 0, 0, 0, 1}));  // (x^2+2x+2)(x^2-2x+2)
  CHECK(f.factors.size() == 2);
  const auto cube = factor_univariate(q, upoly::pow(q, ints(q, {-1, 1}), 3));
  REQUIRE(cube.factors.size() == 1);
  CHECK(cube.factors[0].second == 3);
  const Field k = q_sqrt(2);
  CHECK(factor_univariate(k, ints(k, {-2, 0, 1})).factors.size() == 2);
  CHECK(is_irreducible(k, ints(k, {-3, 0, 1})));
  const Field f2 = make_prime_field(2);
  CHECK(is_irreducible(f2, ints(f2, {1, 0, 1, 0, 0, 1})));
  CHECK(factor_univariate(f2, ints(f2, {1, 0, 0, 0, 0, 1})).factors.size() == 2);
}

TEST_CASE("morphisms") {
  const Field k = q_sqrt(2);
  const Elem r = k.generator(0);
  const auto conj = make_morphism(k, k, {k.neg(r)});
  CHECK(conj.apply(k.add(r, k.one())) == k.sub(k.one(), r));
  CHECK(automorphism_order(conj) == 2);
  try {
    make_morphism(k, k, {k.one()});
    FAIL("expected error");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::NotWellDefined);
  }
  const Field f4 = gf(2, {1, 1, 1});
  const Elem y = f4.generator(0);
  const auto frob = make_morphism(f4, f4, {f4.mul(y, y)});
  CHECK(automorphism_order(frob) == 2);
  CHECK_FALSE(frob.is_identity());
}

TEST_CASE("tensor decompositions") {
  const Field q = make_prime_field(0);
  CHECK(tensor_decompose(q_sqrt(2), q_sqrt(2), q).size() == 2);
  CHECK(tensor_decompose(q_sqrt(2), q_sqrt(3), q).size() == 1);
  const Field f4 = gf(2, {1, 1, 1});
  const auto comps = tensor_decompose(f4, f4, f4.base());
  REQUIRE(comps.size() == 2);
  for (const auto& c : comps) CHECK(c.field.degree_over(f4) == 1u);
  const Field f8 = gf(2, {1, 1, 0, 1});
  CHECK(tensor_decompose(f4, f8, f4.base()).size() == 1);
}
