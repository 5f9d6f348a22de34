#pragma once

// Difference polynomial rings K{x_1..x_n} over a sigma-field, their truncations
// K[x, s1(x), ..., st(x)], Ritt reduction under the standard ranking
// x_1 < ... < x_n < s1(x_1) < ..., and limit degrees of presented towers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigchev/sigmaring.hpp"

namespace sigchev {

/// A polynomial in the indeterminates s^j(x_i), j <= order.
struct DiffPoly {
  unsigned order = 0;
  Poly poly;  // lives in DiffPolyRing::truncation_ring(order)
  friend bool operator==(const DiffPoly&, const DiffPoly&) = default;
};

class DiffPolyRing {
 public:
  DiffPolyRing() = default;
  DiffPolyRing(FieldMorphism sigma_k, std::vector<std::string> vars);

  const Field& field() const { return sigma_k_.source(); }
  const FieldMorphism& sigma_k() const { return sigma_k_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }

  /// Lex order with the highest-ranked indeterminate first.
  PolyRing truncation_ring(unsigned t) const;
  /// The cutoff-t truncation as a presented sigma-ring (top shifts have no image).
  SigmaRing truncation(unsigned t) const;
  std::size_t index_in(unsigned t, std::size_t var, unsigned shift) const;
  /// (variable, shift) of an index of truncation_ring(t).
  std::pair<std::size_t, unsigned> indeterminate(unsigned t, std::size_t index) const;
  unsigned rank(std::size_t var, unsigned shift) const { return shift * static_cast<unsigned>(nvars()) + static_cast<unsigned>(var); }

  DiffPoly from_poly(unsigned t, const Poly& p) const;
  DiffPoly lift(const DiffPoly& p, unsigned t) const;
  DiffPoly parse(const std::string& text) const;
  DiffPoly constant(const Elem& c) const;

  DiffPoly add(const DiffPoly& a, const DiffPoly& b) const;
  DiffPoly sub(const DiffPoly& a, const DiffPoly& b) const;
  DiffPoly mul(const DiffPoly& a, const DiffPoly& b) const;
  bool is_zero(const DiffPoly& a) const { return a.poly.terms.empty(); }
  std::string to_string(const DiffPoly& a) const;

 private:
  FieldMorphism sigma_k_;
  std::vector<std::string> vars_;
};

DiffPoly sigma_shift(const DiffPolyRing& r, const DiffPoly& p, unsigned e);

struct LeaderInitial {
  std::size_t var = 0;
  unsigned shift = 0;
  std::uint32_t degree = 0;
  DiffPoly initial;
};
/// ConstantPolynomial when p involves no indeterminate.
LeaderInitial leader_initial(const DiffPolyRing& r, const DiffPoly& p);

struct RittStep {
  std::size_t basis_index;
  unsigned shift;
  DiffPoly multiplier;
};
struct RittResult {
  DiffPoly remainder;
  DiffPoly certificate;          // product of the initials used
  std::vector<RittStep> steps;   // certificate * p - remainder = sum multiplier * s^shift(basis)
};
RittResult ritt_reduce(const DiffPolyRing& r, const DiffPoly& p, const std::vector<DiffPoly>& basis);
/// certificate * p - remainder - sum of the recorded multiples, expected zero.
DiffPoly ritt_defect(const DiffPolyRing& r, const DiffPoly& p, const std::vector<DiffPoly>& basis, const RittResult& res);

/// K{x}_sigma viewed as a ring in n*d variables over (K, sigma^d).
struct Reinterpretation {
  DiffPolyRing ring;
  unsigned d = 1;
  std::vector<std::string> original_vars;
  /// (new variable index, new shift) of s^j(x_i).
  std::pair<std::size_t, unsigned> to_new(std::size_t var, unsigned shift) const;
  std::pair<std::size_t, unsigned> to_old(std::size_t new_var, unsigned new_shift) const;
  DiffPoly translate(const DiffPolyRing& old_ring, const DiffPoly& p) const;
  DiffPoly translate_back(const DiffPolyRing& old_ring, const DiffPoly& p) const;
};
Reinterpretation reinterpret_power(const DiffPolyRing& r, unsigned d);

// ---------------------------------------------------------------- limit degrees

/// Degree of each step of `tower` above `base_level`; nullopt for
/// transcendental steps.
std::vector<std::optional<std::uint64_t>> presentation_degrees(const Field& tower, std::size_t base_level);

struct LimitDegree {
  std::uint64_t value = 0;
  std::vector<std::uint64_t> sequence;  // relative degree for m = 1, 2, ...
};
/// level_degrees[j] = [K(a..s^j a) : K(a..s^{j-1} a)]. NotStabilized when two
/// consecutive relative degrees never agree within the presentation.
LimitDegree limit_degree(const std::vector<std::optional<std::uint64_t>>& level_degrees, unsigned d);

/// Q(a)(a_1)...(a_{depth-1}) with a transcendental and a_{j+1}^2 = a_j: the
/// generic point of s(x)^2 = x, where sigma sends a_j to a_{j+1}.
Field benign_quadratic_tower(std::size_t depth);

}  // namespace sigchev
