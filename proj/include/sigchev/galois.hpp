#pragma once

// Delta-sigma fields, rank-one Picard-Vessiot rings with a sigma-structure,
// the D-matrix of two solutions, sigma^l-isomorphism search, bounded
// delta-constants, and the constrainedness probes over pseudo-fields.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigchev/poly.hpp"
#include "sigchev/pseudofield.hpp"

namespace sigchev {

/// A field tower with a derivation (given on transcendental generators,
/// derived on algebraic ones) commuting with an endomorphism sigma.
struct DeltaSigmaField {
  Field field;
  std::vector<std::optional<Elem>> delta_gen;  // per step; nullopt for algebraic steps
  FieldMorphism sigma;

  Elem delta(const Elem& e) const;
  /// Level below the first transcendental step: the presented constants.
  std::size_t constant_level() const;
};

/// delta_images maps transcendental generator names to their derivatives
/// (missing names get 0). CommutationFails names the first generator where
/// delta(sigma(g)) != sigma(delta(g)).
DeltaSigmaField make_deltasigma_field(const Field& field, const std::map<std::string, Elem>& delta_images,
                                      const FieldMorphism& sigma);

struct PVRing {
  DeltaSigmaField base;
  Elem a;                 // delta(y) = a y
  DeltaSigmaField ring;   // base, or base extended by y
  Elem y;
  Elem sigma_factor;      // sigma(y) = sigma_factor * y, in the base
  enum class Shape { InBase, Quadratic, Transcendental } shape = Shape::InBase;
  int choice = 1;

  /// y^2 for the quadratic shape.
  std::optional<Elem> square() const;
};

/// choice = +1 or -1 selects the sign of sigma(y) = c y (the larger root of
/// c^2 = sigma(y^2)/y^2 under Field::compare is "+").
PVRing pv_construct(const DeltaSigmaField& k, const Elem& a, int choice = 1);

struct DMatrix {
  std::string d;                 // D = y1^{-1} y2 in the tensor presentation
  bool delta_vanishes = false;   // delta(D) reduces to 0
  Elem sigma_ratio;              // sigma(D) = sigma_ratio * D
  bool sigma_verified = false;
  std::vector<std::string> tensor_relations;
};
DMatrix dmatrix(const PVRing& r1, const PVRing& r2);

struct IsoSearch {
  std::optional<unsigned> minimal_l;
  std::optional<Elem> map_factor;   // y1 -> c y2
  std::vector<std::string> candidates;
  bool doubled_check = false;       // the map found is also sigma^{2l}-equivariant
};
IsoSearch sigma_l_isomorphism_search(const PVRing& r1, const PVRing& r2, unsigned l_max);

struct DeltaConstants {
  unsigned bound = 0;
  std::vector<Elem> basis;         // over the constant level
  std::vector<std::string> rendered;
  std::size_t searched = 0;        // dimension of the searched space
};
/// Kernel of delta on Laurent monomials t^e y^j with |e| <= bound, where t is
/// the first transcendental generator and y the optional next one.
DeltaConstants delta_constants(const DeltaSigmaField& k, unsigned bound);

struct SeparabilityResult {
  bool pass = false;
  std::vector<Elem> dependency;  // coefficients of a vanishing combination of sigma(sample)
};
/// Over the constant level of k. SampleDependent when the sample itself is
/// linearly dependent.
SeparabilityResult sigma_separability_witness(const DeltaSigmaField& k, const std::vector<Elem>& sample);

// ---------------------------------------------------------------- constrained extensions

/// K[c]/(relation)[1/invert] over a sigma-field K (period 1) with sigma(c) = c,
/// or, when `as_product` is set, the pseudo-field itself as an algebra over
/// its first component.
struct PresentedAlgebra {
  PseudoField base;
  std::optional<UPoly> relation;
  UPoly invert;
  bool as_product = false;
};

struct ProbeResult {
  enum class Verdict { Simple, NotSimple, Inconclusive } verdict = Verdict::Inconclusive;
  std::string witness;
  std::string searched;
};
ProbeResult pseudo_simple_probe(const PresentedAlgebra& alg, unsigned candidate_bound);

struct ConstraintWitness {
  bool constrained = false;
  std::optional<UPoly> b;
  std::vector<std::string> tried;
};
/// a is given by its minimal polynomial over K (nullopt: transcendental with sigma(a) = a).
ConstraintWitness constraint_search(const PseudoField& k, const std::optional<UPoly>& minpoly, unsigned bound);

std::string verdict_name(ProbeResult::Verdict v);

}  // namespace sigchev
