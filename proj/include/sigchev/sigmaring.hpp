#pragma once

// Finitely presented sigma-algebras K[y_1..y_m]/J over a sigma-field (K, sigma_K),
// with sigma given by the images of the variables. An image may be absent:
// truncations of difference polynomial rings are only closed under sigma below
// their cutoff.

#include <optional>
#include <string>
#include <vector>

#include "sigchev/poly.hpp"

namespace sigchev {

struct SigmaRing {
  PolyRing ring;
  FieldMorphism sigma_k;
  std::vector<std::optional<Poly>> sigma_images;
  std::vector<Poly> relations;

  const Field& field() const { return ring.field(); }
};

SigmaRing make_sigma_ring(const PolyRing& ring, const FieldMorphism& sigma_k, std::vector<std::optional<Poly>> images,
                          std::vector<Poly> relations = {});

/// sigma^times(p); AmbientNotClosed when p uses a variable whose image is absent.
Poly apply_sigma(const SigmaRing& r, const Poly& p, unsigned times = 1);
/// Reduced Groebner basis of J + extra.
std::vector<Poly> ideal_basis(const SigmaRing& r, const std::vector<Poly>& extra);
/// Inverse of sigma on K, when sigma_K has finite order.
std::optional<FieldMorphism> sigma_k_inverse(const SigmaRing& r);
/// Order of sigma as an automorphism of the presentation (variables and K),
/// checked by iteration modulo J. nullopt when it is not of finite order <= max.
std::optional<unsigned> sigma_order(const SigmaRing& r, unsigned max_order = 32);

/// {f : sigma(f) in I + J} restricted to the variables with defined images.
/// Requires sigma_K to be invertible; raises PreimageNotComputable otherwise.
std::vector<Poly> sigma_preimage(const SigmaRing& r, const std::vector<Poly>& ideal);
/// Iterated preimage sigma^{-times}(I).
std::vector<Poly> sigma_preimage(const SigmaRing& r, const std::vector<Poly>& ideal, unsigned times);

/// Convert a field element into a fraction of polynomials of `ring` by sending
/// the generators of `f` with index >= first_gen to `gen_images` (the lower
/// generators stay coefficients, so `f.at_level(first_gen)` must be a subfield
/// of ring.field()).
std::pair<Poly, Poly> elem_as_fraction(const Field& f, const Elem& e, std::size_t first_gen, const PolyRing& ring,
                                       const std::vector<Poly>& gen_images);

}  // namespace sigchev
