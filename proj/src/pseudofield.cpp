#include "sigchev/pseudofield.hpp"

#include <algorithm>

namespace sigchev {

PseudoField make_pseudofield(std::vector<Field> components, std::vector<FieldMorphism> maps) {
  if (components.empty()) fail(ErrorKind::InvalidArgument, "a pseudo field needs at least one component");
  if (components.size() != maps.size())
    fail(ErrorKind::CyclicStructureBroken, "one sigma map per component is required");
  const std::size_t d = components.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (!(maps[i].source() == components[i]) || !(maps[i].target() == components[(i + 1) % d]))
      fail(ErrorKind::CyclicStructureBroken, "map " + std::to_string(i) + " does not go to the next component");
  }
  PseudoField k;
  k.components_ = std::move(components);
  k.maps_ = std::move(maps);
  return k;
}

PseudoField sigma_field(const FieldMorphism& sigma) { return make_pseudofield({sigma.source()}, {sigma}); }

PseudoField trivial_extension(const PseudoField& k, std::size_t d) {
  if (k.period() != 1) fail(ErrorKind::InvalidArgument, "trivial extensions start from a sigma-field");
  if (d == 0) fail(ErrorKind::InvalidArgument, "period must be positive");
  return make_pseudofield(std::vector<Field>(d, k.component(0)), std::vector<FieldMorphism>(d, k.sigma_map(0)));
}

PseudoElem PseudoField::zero() const { return PseudoElem{std::vector<Elem>(period())}; }

PseudoElem PseudoField::one() const {
  PseudoElem e;
  for (const auto& f : components_) e.coords.push_back(f.one());
  return e;
}

PseudoElem PseudoField::diagonal(const Field& f, const Elem& c) const {
  PseudoElem e;
  for (const auto& comp : components_) {
    if (!f.is_subfield_of(comp)) fail(ErrorKind::BaseMismatch, "diagonal field is not a common subfield");
    e.coords.push_back(comp.embed(c, f.level()));
  }
  return e;
}

std::vector<PseudoElem> PseudoField::idempotents() const {
  std::vector<PseudoElem> out;
  for (std::size_t i = 0; i < period(); ++i) {
    PseudoElem e = zero();
    e.coords[i] = components_[i].one();
    out.push_back(std::move(e));
  }
  return out;
}

PseudoElem PseudoField::add(const PseudoElem& a, const PseudoElem& b) const {
  PseudoElem r;
  for (std::size_t i = 0; i < period(); ++i) r.coords.push_back(components_[i].add(a.coords[i], b.coords[i]));
  return r;
}

PseudoElem PseudoField::sub(const PseudoElem& a, const PseudoElem& b) const { return add(a, neg(b)); }

PseudoElem PseudoField::neg(const PseudoElem& a) const {
  PseudoElem r;
  for (std::size_t i = 0; i < period(); ++i) r.coords.push_back(components_[i].neg(a.coords[i]));
  return r;
}

PseudoElem PseudoField::mul(const PseudoElem& a, const PseudoElem& b) const {
  PseudoElem r;
  for (std::size_t i = 0; i < period(); ++i) r.coords.push_back(components_[i].mul(a.coords[i], b.coords[i]));
  return r;
}

PseudoElem PseudoField::inv(const PseudoElem& a) const {
  if (!is_invertible(a)) fail(ErrorKind::InvalidArgument, "element has a zero coordinate");
  PseudoElem r;
  for (std::size_t i = 0; i < period(); ++i) r.coords.push_back(components_[i].inv(a.coords[i]));
  return r;
}

bool PseudoField::is_zero(const PseudoElem& a) const {
  for (std::size_t i = 0; i < period(); ++i)
    if (!components_[i].is_zero(a.coords[i])) return false;
  return true;
}

bool PseudoField::is_invertible(const PseudoElem& a) const {
  for (std::size_t i = 0; i < period(); ++i)
    if (components_[i].is_zero(a.coords[i])) return false;
  return true;
}

bool PseudoField::is_zero_divisor(const PseudoElem& a) const {
  // The witness is the idempotent of a component where a vanishes.
  for (const auto& e : idempotents())
    if (is_zero(mul(a, e))) return true;
  return false;
}

PseudoElem PseudoField::apply_sigma(const PseudoElem& a) const {
  const std::size_t d = period();
  PseudoElem r = zero();
  for (std::size_t i = 0; i < d; ++i) r.coords[(i + 1) % d] = maps_[i].apply(a.coords[i]);
  return r;
}

std::string PseudoField::to_string(const PseudoElem& a) const {
  if (period() == 1) return components_[0].to_string(a.coords[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < period(); ++i) {
    if (i) s += ", ";
    s += components_[i].to_string(a.coords[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------- compatibility

namespace {

// sigma on a tensor component: tau with tau o lambda_i = lambda_j o sigma_L and
// tau o rho_i = rho_j o sigma_L'. Returns false when no such map exists.
bool component_map_exists(const TensorComponent& ci, const TensorComponent& cj, const FieldMorphism& sl,
                          const FieldMorphism& slp, const Field& left) {
  const Field& src = ci.field;
  const Field& right = slp.source();
  std::vector<Elem> images;
  for (std::size_t g = 0; g < right.level(); ++g)
    images.push_back(cj.right_embedding.apply(slp.apply(right.generator(g))));
  // Steps added on top of `right` are images of left generators.
  for (std::size_t s = right.level(); s < src.level(); ++s) {
    bool found = false;
    for (std::size_t g = 0; g < left.level() && !found; ++g) {
      if (ci.left_embedding.apply(left.generator(g)) == src.generator(s)) {
        images.push_back(cj.left_embedding.apply(sl.apply(left.generator(g))));
        found = true;
      }
    }
    if (!found) fail(ErrorKind::NotWellDefined, "tensor component step without a left generator");
  }
  FieldMorphism tau;
  try {
    tau = make_morphism(src, cj.field, images);
  } catch (const SigmaError& e) {
    if (e.kind() == ErrorKind::NotWellDefined) return false;
    throw;
  }
  for (std::size_t g = 0; g < left.level(); ++g) {
    const Elem l = left.generator(g);
    if (tau.apply(ci.left_embedding.apply(l)) != cj.left_embedding.apply(sl.apply(l))) return false;
  }
  return true;
}

}  // namespace

CompatResult compat_test(const PseudoField& l, const PseudoField& lp, const Field& over, int max_period) {
  if (l.period() != 1 || lp.period() != 1)
    fail(ErrorKind::OutOfScope, "compatibility is decided for sigma-field extensions (period 1)");
  const FieldMorphism& sl = l.sigma_map(0);
  const FieldMorphism& slp = lp.sigma_map(0);
  const Field& left = l.component(0);
  const Field& right = lp.component(0);
  for (std::size_t g = 0; g < over.level(); ++g) {
    const auto a = left.descend(sl.apply(left.generator(g)), over.level());
    const auto b = right.descend(slp.apply(right.generator(g)), over.level());
    if (!a || !b || *a != *b) fail(ErrorKind::BaseMismatch, "the two sigmas disagree on the common base");
  }
  const auto comps = tensor_decompose(left, right, over);
  CompatResult result;
  result.max_period = max_period;
  result.components = comps.size();
  for (std::size_t j = 0; j < comps.size(); ++j) {
    std::optional<std::size_t> source;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (!component_map_exists(comps[i], comps[j], sl, slp, left)) continue;
      if (source) fail(ErrorKind::NotWellDefined, "component has two sigma preimages");
      source = i;
    }
    if (!source) fail(ErrorKind::NotWellDefined, "component has no sigma preimage");
    result.permutation.push_back(*source);
  }
  std::vector<bool> seen(comps.size(), false);
  for (std::size_t start = 0; start < comps.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t k = start; !seen[k]; k = result.permutation[k]) {
      seen[k] = true;
      ++len;
    }
    result.cycle_lengths.push_back(len);
  }
  const std::size_t shortest = *std::min_element(result.cycle_lengths.begin(), result.cycle_lengths.end());
  if (static_cast<int>(shortest) <= max_period) result.minimal_period = static_cast<int>(shortest);
  return result;
}

}  // namespace sigchev
