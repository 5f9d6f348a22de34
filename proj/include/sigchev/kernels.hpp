#pragma once

// Difference kernels over sigma-pseudo fields, prolongation and realization,
// and inversive closures of presented sigma-rings with the transport of
// sigma^d-prime ideals along the canonical map.

#include <optional>
#include <string>
#include <vector>

#include "sigchev/diffpoly.hpp"
#include "sigchev/pseudofield.hpp"
#include "sigchev/sigmaideal.hpp"

namespace sigchev {

/// Variables of the cutoff-t truncation in the order used by DiffPolyRing.
std::vector<std::string> truncation_names(const std::vector<std::string>& vars, unsigned t);

struct KernelComponent {
  PolyRing ring;             // truncation of order `length` over the component field, lex
  std::vector<Poly> ideal;   // reduced basis of p_t restricted to this component
  ResidueField residue;
};

struct ProvenanceEntry {
  unsigned order = 0;        // shift that received new relations
  std::size_t component = 0;
  std::vector<std::string> factors;
  std::string chosen;
};

struct DiffKernel {
  PseudoField base;
  std::vector<std::string> vars;
  unsigned length = 0;
  std::vector<KernelComponent> components;
  std::vector<ProvenanceEntry> log;
};

/// ideals[i] lists generators (as text) of the component-i ideal in the
/// cutoff-t truncation. Raises NotPrimeInScope or ConditionOneFails with the
/// offending component in the message.
DiffKernel make_kernel(const PseudoField& base, const std::vector<std::string>& vars, unsigned t,
                       const std::vector<std::vector<std::string>>& ideals);

/// Condition (i) on component i: the preimage of p_t on component i+1 under
/// sigma equals p_t on component i cut to order t-1.
bool condition_one(const DiffKernel& k, std::size_t component);
/// p_t cut to order s (< t) on a component.
std::vector<Poly> restrict_to(const DiffKernel& k, std::size_t component, unsigned s);

DiffKernel prolong(const DiffKernel& k);

struct Realization {
  std::vector<DiffKernel> kernels;  // lengths k.length .. up_to
  bool truncation_law = true;       // p_{t+1} cut to t equals p_t throughout
};
Realization realize(const DiffKernel& k, unsigned up_to);

/// Product of the algebraic step degrees in the residue field of component 0:
/// its degree over the purely transcendental part.
std::uint64_t kernel_degree(const DiffKernel& k);

// ---------------------------------------------------------------- inversive closures

/// sigma^{-n}(u(r)).
struct ClosureElem {
  Poly r;
  unsigned n = 0;
};

class InversiveClosure {
 public:
  InversiveClosure() = default;
  InversiveClosure(SigmaRing base, unsigned nilpotence_bound = 8);

  const SigmaRing& base() const { return base_; }
  unsigned nilpotence_bound() const { return bound_; }

  ClosureElem u(const Poly& r) const { return normalize({r, 0}); }
  /// Cancels sigma while the representative lies in sigma(R).
  ClosureElem normalize(ClosureElem e) const;
  ClosureElem sigma(const ClosureElem& e) const;
  ClosureElem sigma_inverse(const ClosureElem& e) const { return normalize({e.r, e.n + 1}); }
  ClosureElem add(const ClosureElem& a, const ClosureElem& b) const;
  ClosureElem mul(const ClosureElem& a, const ClosureElem& b) const;
  bool equal(const ClosureElem& a, const ClosureElem& b) const;
  /// Least k <= bound with sigma^k(r) = 0 in R.
  std::optional<unsigned> annihilated_after(const Poly& r) const;
  bool u_injective_on(const std::vector<Poly>& samples) const;
  std::string to_string(const ClosureElem& e) const;

  /// Preimage of r under sigma on the presentation, when r is a polynomial in
  /// the sigma(y_j).
  std::optional<Poly> sigma_preimage_of(const Poly& r) const;

 private:
  ClosureElem lift_to(const ClosureElem& e, unsigned n) const;
  SigmaRing base_;
  unsigned bound_ = 8;
};

InversiveClosure inversive_closure(const SigmaRing& r, unsigned nilpotence_bound = 8);

/// q* = {(r, n) : sigma^{md - n}(r) in q for some m <= n_max with md >= n}.
struct TransportedPrime {
  const InversiveClosure* closure = nullptr;
  SigmaIdeal q;
  unsigned d = 1;
  unsigned n_max = 32;
  bool contains(const ClosureElem& e) const;
  /// Least p <= max with sigma^p(q*) = q* on the generators.
  std::optional<unsigned> period(unsigned max = 8) const;
};
TransportedPrime spec_transport(const InversiveClosure& c, const SigmaIdeal& q, unsigned d, unsigned n_max = 32);
/// Contraction along u: the union of sigma^{-md}(q), BoundExceeded when it does
/// not stabilize by n_max.
SigmaIdeal contract(const TransportedPrime& qs);
/// Least p <= max with sigma^{-p}(q) = q in R.
std::optional<unsigned> ideal_period(const SigmaIdeal& q, unsigned max = 8);

}  // namespace sigchev
