#include "sigchev/sigmaring.hpp"

namespace sigchev {

SigmaRing make_sigma_ring(const PolyRing& ring, const FieldMorphism& sigma_k, std::vector<std::optional<Poly>> images,
                          std::vector<Poly> relations) {
  if (images.size() != ring.nvars()) fail(ErrorKind::InvalidArgument, "one sigma image per variable is required");
  if (!(sigma_k.source() == ring.field()) || !(sigma_k.target() == ring.field()))
    fail(ErrorKind::BaseMismatch, "sigma on the coefficients must be an endomorphism of the coefficient field");
  return SigmaRing{ring, sigma_k, std::move(images), std::move(relations)};
}

Poly apply_sigma(const SigmaRing& r, const Poly& p, unsigned times) {
  Poly cur = p;
  for (unsigned n = 0; n < times; ++n) {
    std::vector<Poly> images;
    for (std::size_t v = 0; v < r.ring.nvars(); ++v) {
      if (r.sigma_images[v]) {
        images.push_back(*r.sigma_images[v]);
      } else {
        if (r.ring.uses_var(cur, v)) fail(ErrorKind::AmbientNotClosed, "sigma of " + r.ring.var_names()[v]);
        images.push_back(r.ring.zero());
      }
    }
    cur = substitute(r.ring, r.ring, cur, images, [&](const Elem& c) { return r.sigma_k.apply(c); });
  }
  return cur;
}

std::vector<Poly> ideal_basis(const SigmaRing& r, const std::vector<Poly>& extra) {
  std::vector<Poly> gens = r.relations;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return groebner(r.ring, gens);
}

std::optional<FieldMorphism> sigma_k_inverse(const SigmaRing& r) { return inverse_automorphism(r.sigma_k); }

std::optional<unsigned> sigma_order(const SigmaRing& r, unsigned max_order) {
  for (const auto& img : r.sigma_images)
    if (!img) return std::nullopt;
  auto k_order = automorphism_order(r.sigma_k, static_cast<int>(max_order));
  if (!k_order) return std::nullopt;
  const auto rel = ideal_basis(r, {});
  std::vector<Poly> cur;
  for (std::size_t v = 0; v < r.ring.nvars(); ++v) cur.push_back(r.ring.var(v));
  for (unsigned n = 1; n <= max_order; ++n) {
    bool identity = n % static_cast<unsigned>(*k_order) == 0;
    for (std::size_t v = 0; v < r.ring.nvars(); ++v) {
      cur[v] = normal_form(r.ring, apply_sigma(r, cur[v]), rel);
      if (cur[v] != normal_form(r.ring, r.ring.var(v), rel)) identity = false;
    }
    if (identity) return n;
  }
  return std::nullopt;
}

std::vector<Poly> sigma_preimage(const SigmaRing& r, const std::vector<Poly>& ideal) {
  auto tau = sigma_k_inverse(r);
  if (!tau) fail(ErrorKind::PreimageNotComputable, "sigma on the coefficients has no computable inverse");
  const std::size_t m = r.ring.nvars();
  std::vector<std::string> names = r.ring.var_names();
  std::vector<std::size_t> domain;
  for (std::size_t v = 0; v < m; ++v) {
    if (!r.sigma_images[v]) continue;
    domain.push_back(v);
    names.push_back("_pre:" + r.ring.var_names()[v]);
  }
  const PolyRing e(r.field(), names, r.ring.order());
  const CoeffMap twist = [&](const Elem& c) { return tau->apply(c); };
  std::vector<Poly> code_images;
  for (std::size_t v = 0; v < m; ++v) code_images.push_back(e.var(v));
  std::vector<Poly> gens;
  for (const auto& g : ideal) gens.push_back(substitute(r.ring, e, g, code_images, twist));
  for (const auto& g : r.relations) gens.push_back(substitute(r.ring, e, g, code_images, twist));
  for (std::size_t k = 0; k < domain.size(); ++k)
    gens.push_back(e.sub(e.var(m + k), substitute(r.ring, e, *r.sigma_images[domain[k]], code_images, twist)));
  std::vector<std::size_t> drop;
  for (std::size_t v = 0; v < m; ++v) drop.push_back(v);
  std::vector<Poly> back_images(m, r.ring.zero());
  for (std::size_t k = 0; k < domain.size(); ++k) back_images.push_back(r.ring.var(domain[k]));
  std::vector<Poly> out;
  for (const auto& g : eliminate(e, gens, drop)) out.push_back(substitute(e, r.ring, g, back_images));
  return groebner(r.ring, out);
}

std::vector<Poly> sigma_preimage(const SigmaRing& r, const std::vector<Poly>& ideal, unsigned times) {
  std::vector<Poly> cur = groebner(r.ring, ideal);
  for (unsigned n = 0; n < times; ++n) cur = sigma_preimage(r, cur);
  return cur;
}

namespace {

using Frac = std::pair<Poly, Poly>;

Frac frac_add(const PolyRing& r, const Frac& a, const Frac& b) {
  if (a.second == b.second) return {r.add(a.first, b.first), a.second};
  return {r.add(r.mul(a.first, b.second), r.mul(b.first, a.second)), r.mul(a.second, b.second)};
}

Frac frac_mul(const PolyRing& r, const Frac& a, const Frac& b) {
  return {r.mul(a.first, b.first), r.mul(a.second, b.second)};
}

Frac convert(const Field& f, const Elem& e, std::size_t level, std::size_t first_gen, const PolyRing& ring,
             const std::vector<Poly>& gen_images) {
  if (level == first_gen) return {ring.constant(ring.field().embed(e, first_gen)), ring.one()};
  const Field here = f.at_level(level);
  if (here.is_zero(e)) return {ring.zero(), ring.one()};
  const Poly& g = gen_images.at(level - 1 - first_gen);
  auto horner = [&](const UPoly& p) {
    Frac acc{ring.zero(), ring.one()};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      acc = frac_mul(ring, acc, Frac{g, ring.one()});
      acc = frac_add(ring, acc, convert(f, *it, level - 1, first_gen, ring, gen_images));
    }
    return acc;
  };
  const Frac num = horner(e.num);
  if (here.top_is_algebraic()) return num;
  const Frac den = horner(e.den);
  return {ring.mul(num.first, den.second), ring.mul(num.second, den.first)};
}

}  // namespace

std::pair<Poly, Poly> elem_as_fraction(const Field& f, const Elem& e, std::size_t first_gen, const PolyRing& ring,
                                       const std::vector<Poly>& gen_images) {
  if (!f.at_level(first_gen).is_subfield_of(ring.field()))
    fail(ErrorKind::BaseMismatch, "coefficient field does not contain the untouched generators");
  return convert(f, e, f.level(), first_gen, ring, gen_images);
}

}  // namespace sigchev
