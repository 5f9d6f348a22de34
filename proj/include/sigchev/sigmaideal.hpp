#pragma once

// Ideals of presented sigma-rings: stability, the notin_sigma test, assembly of
// sigma-pseudo prime ideals from sigma^d-primes, residue fields of primes in
// triangular form, and the searches for primes lying over a given one.

#include <optional>
#include <string>
#include <vector>

#include "sigchev/pseudofield.hpp"
#include "sigchev/sigmaring.hpp"

namespace sigchev {

struct SigmaIdeal {
  SigmaRing ambient;
  std::vector<Poly> generators;
  std::optional<unsigned> period;  // claimed sigma^d-stability

  /// Reduced Groebner basis of generators + relations of the ambient.
  std::vector<Poly> basis() const { return ideal_basis(ambient, generators); }
  bool contains(const Poly& p) const;
};

/// The ambient must be over a field: a pseudo-field of period > 1 raises
/// CoefficientNotField (pass one of its components instead).
SigmaIdeal make_sigma_ideal(const SigmaRing& ambient, std::vector<Poly> gens, std::optional<unsigned> period = {});
void require_field_coefficients(const PseudoField& base);

std::vector<Poly> groebner(const SigmaIdeal& ideal, MonomialOrder order);

struct StabilityReport {
  bool stable = false;
  std::optional<Poly> witness;        // a generator g with sigma^d(g) outside I
  bool reflexive_certified = false;   // sigma^{-d}(I) = I checked by preimage
  bool forward_only = false;          // preimage not computable on this ambient
};
StabilityReport sigma_stability(const SigmaIdeal& ideal, unsigned d);

struct NotInSigma {
  std::optional<unsigned> first_in;  // least i with sigma^i(r) in I
  unsigned scanned = 0;              // largest i examined
};
NotInSigma notin_sigma(const Poly& r, const SigmaIdeal& ideal, unsigned bound);

/// p = q, sigma^{-1}(q), ..., sigma^{-(d-1)}(q) intersected; sigma(p) in p is
/// verified (InvalidArgument otherwise).
SigmaIdeal pseudo_prime_assemble(const SigmaIdeal& q, unsigned d);

// ---------------------------------------------------------------- residue fields

/// Quotient field of ring/P for a prime P certified through a triangular
/// Groebner basis: each variable is free, linear over the lower ones, or
/// algebraic over them with an irreducible minimal polynomial.
struct ResidueField {
  Field field;                          // ring.field() extended by new steps
  std::vector<Elem> residues;           // image of each ring variable
  std::vector<std::size_t> step_var;    // ring variable behind each new step
  std::size_t transcendence_degree = 0;
};
/// NotPrimeInScope when the ideal is shown not to be prime or its shape is not
/// triangular in the ring's lex order.
ResidueField certify_prime(const PolyRing& ring, const std::vector<Poly>& gens);
/// Value of p at the residues.
Elem evaluate(const PolyRing& ring, const Poly& p, const ResidueField& rf);
/// Sanitized field generator name for a ring variable ("s2(x)" becomes "x_2").
std::string generator_name_for(const std::string& var, const Field& avoid);

// ---------------------------------------------------------------- lifts

/// sigma-equivariant homomorphism R -> S given by the images of R's variables.
struct Inclusion {
  SigmaRing source;
  SigmaRing target;
  std::vector<Poly> images;
};
/// Checks that images respect relations and commute with sigma.
Inclusion make_inclusion(const SigmaRing& source, const SigmaRing& target, std::vector<Poly> images);

struct Lift {
  std::vector<Poly> generators;  // reduced basis in the target
  unsigned cycle = 0;            // length of the sigma^d-orbit, 0 if none found
  unsigned power = 0;            // cycle * d
  bool contraction_verified = false;
  bool prime_certified = false;
};

struct LiftReport {
  std::string source;
  unsigned d = 1;
  unsigned l_max = 1;
  std::vector<Lift> primes_above;            // sorted by rendering
  std::vector<std::optional<std::size_t>> permutation;  // sigma^d(Q_i) in Q_perm[i]
  std::vector<std::string> fiber_factors;

  /// Primes above q that are sigma^{ld}-stable: cycle divides l.
  std::vector<std::size_t> lifts_at(unsigned l) const;
  /// Least l <= l_max with a lift at power ld.
  std::optional<unsigned> minimal_l() const;
};
LiftReport lift_search(const Inclusion& inc, const SigmaIdeal& q, unsigned d, unsigned l_max);

struct WitnessRow {
  std::string prime;
  unsigned d = 1;
  std::optional<unsigned> minimal_l;
  std::size_t lifts = 0;
};
struct WitnessTable {
  std::vector<WitnessRow> rows;
  std::optional<unsigned> uniform_l;  // lcm of the per-prime minimal l
  bool naive_holds = false;           // l = 1 works for every prime
};
struct FamilyMember {
  Inclusion inclusion;
  SigmaIdeal prime;
  unsigned d = 1;
};
WitnessTable chevalley_witness(const std::vector<FamilyMember>& family, unsigned l_max);

}  // namespace sigchev
