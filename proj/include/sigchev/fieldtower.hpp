#pragma once

// Exact arithmetic in towers of simple field extensions over Q or F_p.
//
// A tower is an ordered list of steps. Each step is either algebraic (a
// generator with a monic irreducible minimal polynomial over the tower below)
// or transcendental (a new indeterminate, elements are reduced fractions with
// monic denominator). A Field value is a view of a tower at some level, so the
// base field of a level is the same tower one level down and elements move
// between levels by embedding.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sigchev/error.hpp"

namespace sigchev {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical element of some level of a tower. The level is not stored; the
/// owning Field interprets the value.
///  - level 0: `q` (reduced modulo p in characteristic p),
///  - algebraic level: `num` holds coordinates w.r.t. 1, g, g^2, ... (trimmed),
///  - transcendental level: `num / den` with `den` monic and coprime to `num`.
/// Zero at a positive level is `num` and `den` both empty.
struct Elem {
  Rational q;
  std::vector<Elem> num;
  std::vector<Elem> den;

  friend bool operator==(const Elem&, const Elem&) = default;
};

/// Dense univariate polynomial, coefficient i multiplies y^i. Trimmed: the
/// leading coefficient is non-zero; the zero polynomial is empty.
using UPoly = std::vector<Elem>;

struct TowerStep {
  enum class Kind { Algebraic, Transcendental };
  Kind kind;
  std::string name;
  UPoly minpoly;  // over the level below; empty for transcendental steps
};

struct TowerData {
  std::uint64_t characteristic = 0;
  std::vector<std::shared_ptr<const TowerStep>> steps;
};

class Field {
 public:
  Field() = default;

  std::size_t level() const noexcept { return level_; }
  std::uint64_t characteristic() const noexcept { return data_->characteristic; }
  Field base() const;
  Field at_level(std::size_t level) const;
  const TowerStep& step(std::size_t index) const { return *data_->steps.at(index); }
  const TowerStep& top() const { return step(level_ - 1); }
  bool top_is_algebraic() const { return level_ > 0 && top().kind == TowerStep::Kind::Algebraic; }
  bool top_is_transcendental() const { return level_ > 0 && top().kind == TowerStep::Kind::Transcendental; }
  bool has_transcendental_step() const;
  std::vector<std::string> generator_names() const;
  std::optional<std::size_t> generator_index(const std::string& name) const;

  /// True when every element of this field is an element of `other` (same
  /// characteristic, identical step prefix).
  bool is_subfield_of(const Field& other) const;
  friend bool operator==(const Field& a, const Field& b) { return a.is_subfield_of(b) && b.is_subfield_of(a); }

  /// Degree over the prime field; nullopt when a transcendental step occurs.
  std::optional<std::uint64_t> absolute_degree() const;
  /// Degree over the given subfield; nullopt when not finite.
  std::optional<std::uint64_t> degree_over(const Field& sub) const;
  bool is_finite() const { return characteristic() != 0 && !has_transcendental_step(); }
  std::optional<std::uint64_t> size() const;
  /// All elements of a finite field with at most `limit` elements.
  std::vector<Elem> elements(std::uint64_t limit = 1u << 16) const;

  Elem zero() const { return Elem{}; }
  Elem one() const;
  Elem from_int(long value) const { return from_rational(Rational(value)); }
  Elem from_rational(const Rational& value) const;
  /// Generator of step `index` (0-based) viewed in this field.
  Elem generator(std::size_t index) const;
  /// Embed an element of level `from_level` (<= level()) into this field.
  Elem embed(const Elem& e, std::size_t from_level) const;
  /// Inverse of embed: the element seen at a lower level, if it lies there.
  std::optional<Elem> descend(const Elem& e, std::size_t to_level) const;

  bool is_zero(const Elem& e) const;
  bool is_one(const Elem& e) const { return e == one(); }
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, long exponent) const;
  std::strong_ordering compare(const Elem& a, const Elem& b) const;

  /// Is `e` a rational number (an element of the prime field)?
  std::optional<Rational> as_rational(const Elem& e) const;
  std::string to_string(const Elem& e) const;

  /// Square root inside the field: nullopt when `a` is not a square.
  /// Throws UnsupportedFactorization outside the supported shapes.
  std::optional<Elem> sqrt(const Elem& a) const;

  const std::shared_ptr<const TowerData>& data() const { return data_; }

 private:
  Field(std::shared_ptr<const TowerData> data, std::size_t level) : data_(std::move(data)), level_(level) {}

  Elem normalize_fraction(UPoly num, UPoly den) const;

  std::shared_ptr<const TowerData> data_;
  std::size_t level_ = 0;

  friend Field make_prime_field(std::uint64_t characteristic);
  friend Field extend_algebraic(const Field& base, const std::string& name, const UPoly& minpoly);
  friend Field extend_transcendental(const Field& base, const std::string& name);
  friend Field append_step_unchecked(const Field& base, TowerStep step);
};

Field make_prime_field(std::uint64_t characteristic);
/// Adjoin a root of a monic irreducible polynomial. Irreducibility is checked
/// with factor_univariate; reducible inputs raise ReduciblePolynomial.
Field extend_algebraic(const Field& base, const std::string& name, const UPoly& minpoly);
Field extend_transcendental(const Field& base, const std::string& name);
/// Used by constructions that already certified irreducibility.
Field append_step_unchecked(const Field& base, TowerStep step);

/// Univariate polynomial arithmetic over a field.
namespace upoly {
void trim(const Field& f, UPoly& p);
inline long degree(const UPoly& p) { return static_cast<long>(p.size()) - 1; }
UPoly constant(const Field& f, const Elem& c);
UPoly monomial(const Field& f, const Elem& c, std::size_t deg);
UPoly x(const Field& f);
UPoly add(const Field& f, const UPoly& a, const UPoly& b);
UPoly sub(const Field& f, const UPoly& a, const UPoly& b);
UPoly neg(const Field& f, const UPoly& a);
UPoly mul(const Field& f, const UPoly& a, const UPoly& b);
UPoly scale(const Field& f, const UPoly& a, const Elem& c);
UPoly pow(const Field& f, const UPoly& a, unsigned exponent);
/// Returns (quotient, remainder).
std::pair<UPoly, UPoly> divmod(const Field& f, const UPoly& a, const UPoly& b);
UPoly rem(const Field& f, const UPoly& a, const UPoly& b);
UPoly monic(const Field& f, const UPoly& a);
UPoly gcd(const Field& f, const UPoly& a, const UPoly& b);
/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
std::tuple<UPoly, UPoly, UPoly> xgcd(const Field& f, const UPoly& a, const UPoly& b);
UPoly derivative(const Field& f, const UPoly& a);
Elem eval(const Field& f, const UPoly& a, const Elem& at);
/// Evaluate a polynomial over `f` at a point of a larger field `g`.
Elem eval_in(const Field& g, const UPoly& a, std::size_t coeff_level, const Elem& at);
UPoly embed(const Field& big, const UPoly& a, std::size_t from_level);
std::strong_ordering compare(const Field& f, const UPoly& a, const UPoly& b);
std::string to_string(const Field& f, const UPoly& a, const std::string& var);
}  // namespace upoly

struct Factorization {
  Elem unit;
  std::vector<std::pair<UPoly, int>> factors;  // monic irreducible, sorted
};

/// Factor a non-zero univariate polynomial into monic irreducibles.
/// Supported: any degree over finite fields; degree <= 4 over Q; degree <= 2
/// over other characteristic-zero towers (square roots through quadratic and
/// transcendental steps). Everything else raises UnsupportedFactorization.
Factorization factor_univariate(const Field& f, const UPoly& p);
bool is_irreducible(const Field& f, const UPoly& p);

/// Ring morphism between towers, given by the images of every generator of
/// the source. Prime fields map identically.
class FieldMorphism {
 public:
  FieldMorphism() = default;
  const Field& source() const { return source_; }
  const Field& target() const { return target_; }
  const std::vector<Elem>& images() const { return images_; }

  Elem apply(const Elem& e) const { return apply_at(e, source_.level()); }
  /// Apply to an element of a lower level of the source.
  Elem apply_at(const Elem& e, std::size_t level) const;
  UPoly apply(const UPoly& p, std::size_t level) const;

  bool is_identity() const;
  friend bool operator==(const FieldMorphism& a, const FieldMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.images_ == b.images_;
  }

 private:
  Field source_;
  Field target_;
  std::vector<Elem> images_;

  friend FieldMorphism make_morphism(const Field& source, const Field& target, std::vector<Elem> images);
  friend FieldMorphism make_morphism_unchecked(const Field& source, const Field& target, std::vector<Elem> images);
};

/// Verifies that each algebraic generator's minimal polynomial vanishes at its
/// image (NotWellDefined otherwise) and that transcendental images keep
/// denominators non-zero on the generators.
FieldMorphism make_morphism(const Field& source, const Field& target, std::vector<Elem> images);
FieldMorphism make_morphism_unchecked(const Field& source, const Field& target, std::vector<Elem> images);
FieldMorphism identity_morphism(const Field& f);
/// Inclusion of a subfield into a field sharing its step prefix.
FieldMorphism inclusion_morphism(const Field& sub, const Field& f);
FieldMorphism compose(const FieldMorphism& outer, const FieldMorphism& inner);
/// Inverse of an automorphism of finite order <= max_order; nullopt otherwise.
std::optional<FieldMorphism> inverse_automorphism(const FieldMorphism& m, int max_order = 64);
std::optional<int> automorphism_order(const FieldMorphism& m, int max_order = 64);

struct TensorComponent {
  Field field;               // extends `right`
  FieldMorphism left_embedding;
  FieldMorphism right_embedding;
  std::vector<std::string> chosen_factors;  // rendered factor per left step
};

/// Decompose left (x)_over right into fields. `left` must be a finite
/// algebraic extension of `over`; `over` must be a subfield of `right`.
std::vector<TensorComponent> tensor_decompose(const Field& left, const Field& right, const Field& over);

}  // namespace sigchev
