#pragma once

// Sparse multivariate polynomials over a field tower, with Buchberger's
// algorithm and the ideal operations built on elimination.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sigchev/fieldtower.hpp"

namespace sigchev {

using Monomial = std::vector<std::uint32_t>;

struct Term {
  Monomial mono;
  Elem coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Terms sorted by decreasing monomial order of the owning ring, no zero
/// coefficients. The zero polynomial has no terms.
struct Poly {
  std::vector<Term> terms;
  friend bool operator==(const Poly&, const Poly&) = default;
};

struct MonomialOrder {
  enum class Kind { Lex, DegRevLex, Block };
  Kind kind = Kind::DegRevLex;
  std::size_t block = 0;  // Block: the first `block` variables are eliminated
  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder degrevlex() { return {Kind::DegRevLex, 0}; }
  static MonomialOrder elimination(std::size_t k) { return {Kind::Block, k}; }
};

class PolyRing {
 public:
  PolyRing() = default;
  PolyRing(Field k, std::vector<std::string> vars, MonomialOrder order = MonomialOrder::degrevlex());

  const Field& field() const { return field_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& var_names() const { return vars_; }
  const MonomialOrder& order() const { return order_; }
  std::optional<std::size_t> var_index(const std::string& name) const;
  PolyRing with_order(MonomialOrder order) const { return PolyRing(field_, vars_, order); }

  /// Negative, zero or positive as a is below, equal to or above b.
  int cmp(const Monomial& a, const Monomial& b) const;

  Poly zero() const { return {}; }
  Poly one() const { return constant(field_.one()); }
  Poly constant(const Elem& c) const;
  Poly var(std::size_t i) const;
  Poly var(const std::string& name) const;
  Poly term(Monomial mono, const Elem& c) const;

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, const Elem& c) const;
  Poly mul_term(const Poly& a, const Monomial& m, const Elem& c) const;
  Poly pow(const Poly& a, unsigned exponent) const;
  Poly monic(const Poly& a) const;

  bool is_zero(const Poly& a) const { return a.terms.empty(); }
  bool is_constant(const Poly& a) const;
  const Monomial& lead(const Poly& a) const { return a.terms.front().mono; }
  const Elem& lc(const Poly& a) const { return a.terms.front().coeff; }
  std::uint32_t degree_in(const Poly& a, std::size_t var) const;
  std::uint32_t total_degree(const Poly& a) const;
  bool uses_var(const Poly& a, std::size_t var) const { return degree_in(a, var) > 0; }
  std::vector<std::size_t> support(const Poly& a) const;

  /// Reorder terms after an external change (e.g. a different ring order).
  Poly normalize(std::vector<Term> terms) const;

  /// View `a` as univariate in `var`: coefficient i multiplies var^i.
  std::vector<Poly> coefficients_in(const Poly& a, std::size_t var) const;

  std::string to_string(const Poly& a) const;
  std::string monomial_string(const Monomial& m) const;

 private:
  Field field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

/// Ring homomorphism from `from` to `to` given by variable images and a map
/// on coefficients (defaults to the embedding of from.field() into to.field()).
using CoeffMap = std::function<Elem(const Elem&)>;
Poly substitute(const PolyRing& from, const PolyRing& to, const Poly& a, const std::vector<Poly>& images,
                const CoeffMap& coeff = nullptr);

// ---------------------------------------------------------------- Groebner bases

/// Remainder of f on division by `divisors` (full reduction, every term).
Poly normal_form(const PolyRing& r, const Poly& f, const std::vector<Poly>& divisors);
/// Reduced Groebner basis, monic, sorted by increasing leading monomial.
std::vector<Poly> groebner(const PolyRing& r, const std::vector<Poly>& gens);
bool is_unit_ideal(const std::vector<Poly>& basis, const PolyRing& r);
bool ideal_contains(const PolyRing& r, const std::vector<Poly>& basis, const Poly& f);
bool ideals_equal(const PolyRing& r, const std::vector<Poly>& a, const std::vector<Poly>& b);

/// Generators of I intersected with the subring in the variables not listed
/// in `drop`, as polynomials of `r`. The result is a reduced Groebner basis
/// of the elimination ideal for the order induced on the remaining variables.
std::vector<Poly> eliminate(const PolyRing& r, const std::vector<Poly>& gens, const std::vector<std::size_t>& drop);
std::vector<Poly> intersect(const PolyRing& r, const std::vector<Poly>& a, const std::vector<Poly>& b);
/// I : f^infinity.
std::vector<Poly> saturate(const PolyRing& r, const std::vector<Poly>& gens, const Poly& f);

/// Polynomial ring with extra variables appended; returns the ring and the
/// embedding of `r`'s polynomials.
PolyRing extend_ring(const PolyRing& r, const std::vector<std::string>& extra, MonomialOrder order);
Poly embed_poly(const PolyRing& from, const PolyRing& to, const Poly& a);

}  // namespace sigchev
