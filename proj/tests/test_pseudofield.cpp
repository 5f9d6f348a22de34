#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sigchev/pseudofield.hpp"

using namespace sigchev;

namespace {

UPoly ints(const Field& f, std::initializer_list<long> cs) {
  UPoly p;
  for (long c : cs) p.push_back(f.from_int(c));
  upoly::trim(f, p);
  return p;
}

Field q_sqrt2() { return extend_algebraic(make_prime_field(0), "r", ints(make_prime_field(0), {-2, 0, 1})); }

PseudoField frobenius(const Field& f) {
  const Elem y = f.generator(0);
  return sigma_field(make_morphism(f, f, {f.pow(y, 2)}));
}

}  // namespace

TEST_CASE("construction and cyclic structure") {
  const Field q = make_prime_field(0);
  CHECK(sigma_field(identity_morphism(q)).period() == 1);
  const Field k = q_sqrt2();
  const auto conj = make_morphism(k, k, {k.neg(k.generator(0))});
  CHECK(make_pseudofield({k, k}, {conj, conj}).period() == 2);
  try {
    make_pseudofield({q, k}, {inclusion_morphism(q, k), inclusion_morphism(q, k)});
    FAIL("expected error");
  } catch (const SigmaError& e) {
    CHECK(e.kind() == ErrorKind::CyclicStructureBroken);
  }
}

TEST_CASE("idempotents rotate under sigma") {
  const PseudoField k = trivial_extension(sigma_field(identity_morphism(make_prime_field(0))), 3);
  const auto e = k.idempotents();
  REQUIRE(e.size() == 3);
  CHECK(k.apply_sigma(e[0]) == e[1]);
  CHECK(k.apply_sigma(e[1]) == e[2]);
  CHECK(k.apply_sigma(e[2]) == e[0]);
  CHECK(k.is_zero(k.mul(e[0], e[1])));
  CHECK(k.add(k.add(e[0], e[1]), e[2]) == k.one());
  CHECK(k.is_zero_divisor(e[0]));
  CHECK_FALSE(k.is_invertible(e[0]));
}

TEST_CASE("sigma on a period-one conjugation field") {
  const Field k = q_sqrt2();
  const PseudoField p = sigma_field(make_morphism(k, k, {k.neg(k.generator(0))}));
  const PseudoElem r{{k.generator(0)}};
  CHECK(p.apply_sigma(r) == PseudoElem{{k.neg(k.generator(0))}});
  const PseudoField t = trivial_extension(p, 2);
  const PseudoElem d = t.diagonal(k, k.generator(0));
  CHECK(t.apply_sigma(d) == t.diagonal(k, k.neg(k.generator(0))));
}

TEST_CASE("compatibility periods") {
  const Field q = make_prime_field(0);
  const Field k = q_sqrt2();
  const auto id = sigma_field(identity_morphism(k));
  const auto conj = sigma_field(make_morphism(k, k, {k.neg(k.generator(0))}));
  CHECK(compat_test(id, id, q).minimal_period == 1);
  CHECK(compat_test(conj, id, q).minimal_period == 2);

  const Field f2 = make_prime_field(2);
  const Field f8 = extend_algebraic(f2, "y", ints(f2, {1, 1, 0, 1}));
  const auto res = compat_test(frobenius(f8), sigma_field(identity_morphism(f8)), f2);
  CHECK(res.components == 3);
  CHECK(res.minimal_period == 3);
  CHECK_FALSE(compat_test(frobenius(f8), sigma_field(identity_morphism(f8)), f2, 2).minimal_period.has_value());
}
