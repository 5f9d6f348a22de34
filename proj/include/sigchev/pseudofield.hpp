#pragma once

// Difference pseudo fields: finite products of fields e_1K x ... x e_dK with
// sigma carrying component i into component i+1 (indices mod d).

#include <optional>
#include <vector>

#include "sigchev/fieldtower.hpp"

namespace sigchev {

struct PseudoElem {
  std::vector<Elem> coords;
  friend bool operator==(const PseudoElem&, const PseudoElem&) = default;
};

class PseudoField {
 public:
  PseudoField() = default;

  std::size_t period() const { return components_.size(); }
  const std::vector<Field>& components() const { return components_; }
  const Field& component(std::size_t i) const { return components_.at(i); }
  /// Map from component i to component i+1 (mod period).
  const FieldMorphism& sigma_map(std::size_t i) const { return maps_.at(i); }

  PseudoElem zero() const;
  PseudoElem one() const;
  /// Element with the given coordinate in every component (all components
  /// must contain `f` as a subfield).
  PseudoElem diagonal(const Field& f, const Elem& c) const;
  std::vector<PseudoElem> idempotents() const;

  PseudoElem add(const PseudoElem& a, const PseudoElem& b) const;
  PseudoElem sub(const PseudoElem& a, const PseudoElem& b) const;
  PseudoElem neg(const PseudoElem& a) const;
  PseudoElem mul(const PseudoElem& a, const PseudoElem& b) const;
  /// Throws InvalidArgument on zero divisors.
  PseudoElem inv(const PseudoElem& a) const;
  bool is_zero(const PseudoElem& a) const;
  bool is_invertible(const PseudoElem& a) const;
  /// Some b != 0 with a*b = 0 exists.
  bool is_zero_divisor(const PseudoElem& a) const;
  PseudoElem apply_sigma(const PseudoElem& a) const;

  std::string to_string(const PseudoElem& a) const;

 private:
  std::vector<Field> components_;
  std::vector<FieldMorphism> maps_;

  friend PseudoField make_pseudofield(std::vector<Field> components, std::vector<FieldMorphism> maps);
};

PseudoField make_pseudofield(std::vector<Field> components, std::vector<FieldMorphism> maps);
/// Period-1 pseudo field (K, sigma).
PseudoField sigma_field(const FieldMorphism& sigma);
/// d copies of a period-1 pseudo field with the cyclic shift twisted by sigma.
PseudoField trivial_extension(const PseudoField& k, std::size_t d);

struct CompatResult {
  std::optional<int> minimal_period;   // nullopt means none up to max_period
  int max_period = 0;
  std::size_t components = 0;
  std::vector<std::size_t> permutation;  // component j is pulled back from permutation[j]
  std::vector<std::size_t> cycle_lengths;
};

/// Decide whether two finite sigma-field extensions of `over` are compatible
/// as sigma^d-fields, returning the least such d. Both inputs must have
/// period 1 and induce the same sigma on `over`.
CompatResult compat_test(const PseudoField& l, const PseudoField& lp, const Field& over, int max_period = 16);

}  // namespace sigchev
