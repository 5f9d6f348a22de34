#include "sigchev/diffpoly.hpp"

#include "sigchev/expr.hpp"

namespace sigchev {

namespace {

FieldMorphism power_of(const FieldMorphism& m, unsigned e) {
  FieldMorphism out = identity_morphism(m.source());
  for (unsigned k = 0; k < e; ++k) out = compose(m, out);
  return out;
}

}  // namespace

DiffPolyRing::DiffPolyRing(FieldMorphism sigma_k, std::vector<std::string> vars)
    : sigma_k_(std::move(sigma_k)), vars_(std::move(vars)) {
  if (!(sigma_k_.source() == sigma_k_.target())) fail(ErrorKind::BaseMismatch, "sigma must be an endomorphism");
  if (vars_.empty()) fail(ErrorKind::InvalidArgument, "at least one difference variable is required");
  for (const auto& v : vars_) {
    if (split_shifted_name(v).second != 0) fail(ErrorKind::InvalidArgument, "variable name looks like a shift: " + v);
    if (field().generator_index(v)) fail(ErrorKind::DuplicateGenerator, v);
  }
}

PolyRing DiffPolyRing::truncation_ring(unsigned t) const {
  std::vector<std::string> names;
  for (unsigned j = t + 1; j-- > 0;)
    for (std::size_t i = nvars(); i-- > 0;) names.push_back(shifted_name(vars_[i], j));
  return PolyRing(field(), names, MonomialOrder::lex());
}

std::size_t DiffPolyRing::index_in(unsigned t, std::size_t var, unsigned shift) const {
  return static_cast<std::size_t>(t - shift) * nvars() + (nvars() - 1 - var);
}

std::pair<std::size_t, unsigned> DiffPolyRing::indeterminate(unsigned t, std::size_t index) const {
  const unsigned shift = t - static_cast<unsigned>(index / nvars());
  return {nvars() - 1 - index % nvars(), shift};
}

SigmaRing DiffPolyRing::truncation(unsigned t) const {
  const PolyRing ring = truncation_ring(t);
  std::vector<std::optional<Poly>> images(ring.nvars());
  for (std::size_t idx = 0; idx < ring.nvars(); ++idx) {
    auto [var, shift] = indeterminate(t, idx);
    if (shift < t) images[idx] = ring.var(index_in(t, var, shift + 1));
  }
  return make_sigma_ring(ring, sigma_k_, std::move(images));
}

DiffPoly DiffPolyRing::from_poly(unsigned t, const Poly& p) const {
  const PolyRing ring = truncation_ring(t);
  unsigned order = 0;
  for (std::size_t idx = 0; idx < ring.nvars(); ++idx)
    if (ring.uses_var(p, idx)) order = std::max(order, indeterminate(t, idx).second);
  if (order == t) return DiffPoly{t, p};
  return DiffPoly{order, embed_poly(ring, truncation_ring(order), p)};
}

DiffPoly DiffPolyRing::lift(const DiffPoly& p, unsigned t) const {
  if (t < p.order) fail(ErrorKind::InvalidArgument, "cannot lower the order of a difference polynomial");
  if (t == p.order) return p;
  return DiffPoly{t, embed_poly(truncation_ring(p.order), truncation_ring(t), p.poly)};
}

DiffPoly DiffPolyRing::parse(const std::string& text) const {
  const ExprPtr e = parse_expr(text);
  unsigned order = 0;
  for (const auto& name : expr_names(e)) {
    auto [base, shift] = split_shifted_name(name);
    if (std::find(vars_.begin(), vars_.end(), base) != vars_.end()) order = std::max(order, shift);
  }
  return from_poly(order, eval_poly(truncation_ring(order), e));
}

DiffPoly DiffPolyRing::constant(const Elem& c) const { return DiffPoly{0, truncation_ring(0).constant(c)}; }

DiffPoly DiffPolyRing::add(const DiffPoly& a, const DiffPoly& b) const {
  const unsigned t = std::max(a.order, b.order);
  return from_poly(t, truncation_ring(t).add(lift(a, t).poly, lift(b, t).poly));
}

DiffPoly DiffPolyRing::sub(const DiffPoly& a, const DiffPoly& b) const {
  const unsigned t = std::max(a.order, b.order);
  return from_poly(t, truncation_ring(t).sub(lift(a, t).poly, lift(b, t).poly));
}

DiffPoly DiffPolyRing::mul(const DiffPoly& a, const DiffPoly& b) const {
  const unsigned t = std::max(a.order, b.order);
  return from_poly(t, truncation_ring(t).mul(lift(a, t).poly, lift(b, t).poly));
}

std::string DiffPolyRing::to_string(const DiffPoly& a) const { return truncation_ring(a.order).to_string(a.poly); }

DiffPoly sigma_shift(const DiffPolyRing& r, const DiffPoly& p, unsigned e) {
  if (e == 0) return p;
  const unsigned t = p.order + e;
  const PolyRing from = r.truncation_ring(p.order);
  const PolyRing to = r.truncation_ring(t);
  std::vector<Poly> images;
  for (std::size_t idx = 0; idx < from.nvars(); ++idx) {
    auto [var, shift] = r.indeterminate(p.order, idx);
    images.push_back(to.var(r.index_in(t, var, shift + e)));
  }
  const FieldMorphism se = power_of(r.sigma_k(), e);
  return r.from_poly(t, substitute(from, to, p.poly, images, [&](const Elem& c) { return se.apply(c); }));
}

LeaderInitial leader_initial(const DiffPolyRing& r, const DiffPoly& p) {
  const PolyRing ring = r.truncation_ring(p.order);
  if (ring.is_constant(p.poly)) fail(ErrorKind::ConstantPolynomial, ring.to_string(p.poly));
  const Monomial& lead = ring.lead(p.poly);
  std::size_t idx = 0;
  while (lead[idx] == 0) ++idx;
  LeaderInitial out;
  std::tie(out.var, out.shift) = r.indeterminate(p.order, idx);
  out.degree = lead[idx];
  out.initial = r.from_poly(p.order, ring.coefficients_in(p.poly, idx)[out.degree]);
  return out;
}

RittResult ritt_reduce(const DiffPolyRing& r, const DiffPoly& p, const std::vector<DiffPoly>& basis) {
  std::vector<LeaderInitial> leaders;
  for (const auto& b : basis) leaders.push_back(leader_initial(r, b));
  RittResult res;
  res.remainder = p;
  res.certificate = r.constant(r.field().one());
  while (true) {
    const unsigned t = res.remainder.order;
    const PolyRing ring = r.truncation_ring(t);
    std::optional<std::pair<std::size_t, std::size_t>> hit;  // (index in ring, basis index)
    for (std::size_t idx = 0; idx < ring.nvars() && !hit; ++idx) {
      const auto deg = ring.degree_in(res.remainder.poly, idx);
      if (deg == 0) continue;
      auto [var, shift] = r.indeterminate(t, idx);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (leaders[k].var == var && leaders[k].shift <= shift && leaders[k].degree <= deg) {
          hit = std::make_pair(idx, k);
          break;
        }
      }
    }
    if (!hit) break;
    const auto [idx, k] = *hit;
    const unsigned s = r.indeterminate(t, idx).second - leaders[k].shift;
    const DiffPoly shifted = r.lift(sigma_shift(r, basis[k], s), t);
    const DiffPoly init = r.lift(sigma_shift(r, leaders[k].initial, s), t);
    const auto deg = ring.degree_in(res.remainder.poly, idx);
    const Poly lead_coeff = ring.coefficients_in(res.remainder.poly, idx)[deg];
    Monomial m(ring.nvars(), 0);
    m[idx] = deg - leaders[k].degree;
    const Poly mult = ring.mul(lead_coeff, ring.term(m, r.field().one()));
    for (auto& st : res.steps) st.multiplier = r.mul(st.multiplier, init);
    res.steps.push_back(RittStep{k, s, r.from_poly(t, mult)});
    res.certificate = r.mul(res.certificate, init);
    res.remainder = r.from_poly(t, ring.sub(ring.mul(init.poly, res.remainder.poly), ring.mul(mult, shifted.poly)));
  }
  return res;
}

DiffPoly ritt_defect(const DiffPolyRing& r, const DiffPoly& p, const std::vector<DiffPoly>& basis, const RittResult& res) {
  DiffPoly acc = r.sub(r.mul(res.certificate, p), res.remainder);
  for (const auto& st : res.steps) acc = r.sub(acc, r.mul(st.multiplier, sigma_shift(r, basis[st.basis_index], st.shift)));
  return acc;
}

// ---------------------------------------------------------------- reinterpretation

std::pair<std::size_t, unsigned> Reinterpretation::to_new(std::size_t var, unsigned shift) const {
  return {var * d + shift % d, shift / d};
}

std::pair<std::size_t, unsigned> Reinterpretation::to_old(std::size_t new_var, unsigned new_shift) const {
  return {new_var / d, new_shift * d + static_cast<unsigned>(new_var % d)};
}

DiffPoly Reinterpretation::translate(const DiffPolyRing& old_ring, const DiffPoly& p) const {
  const unsigned t = p.order / d;
  const PolyRing from = old_ring.truncation_ring(p.order);
  const PolyRing to = ring.truncation_ring(t);
  std::vector<Poly> images;
  for (std::size_t idx = 0; idx < from.nvars(); ++idx) {
    auto [var, shift] = old_ring.indeterminate(p.order, idx);
    auto [nv, ns] = to_new(var, shift);
    images.push_back(to.var(ring.index_in(t, nv, ns)));
  }
  return ring.from_poly(t, substitute(from, to, p.poly, images));
}

DiffPoly Reinterpretation::translate_back(const DiffPolyRing& old_ring, const DiffPoly& p) const {
  const unsigned t = p.order * d + d - 1;
  const PolyRing from = ring.truncation_ring(p.order);
  const PolyRing to = old_ring.truncation_ring(t);
  std::vector<Poly> images;
  for (std::size_t idx = 0; idx < from.nvars(); ++idx) {
    auto [nv, ns] = ring.indeterminate(p.order, idx);
    auto [var, shift] = to_old(nv, ns);
    images.push_back(to.var(old_ring.index_in(t, var, shift)));
  }
  return old_ring.from_poly(t, substitute(from, to, p.poly, images));
}

Reinterpretation reinterpret_power(const DiffPolyRing& r, unsigned d) {
  if (d == 0) fail(ErrorKind::InvalidArgument, "power must be positive");
  std::vector<std::string> names;
  for (const auto& v : r.vars())
    for (unsigned k = 0; k < d; ++k) names.push_back(k == 0 ? v : v + "_s" + std::to_string(k));
  Reinterpretation out;
  out.ring = DiffPolyRing(power_of(r.sigma_k(), d), names);
  out.d = d;
  out.original_vars = r.vars();
  return out;
}

// ---------------------------------------------------------------- limit degrees

std::vector<std::optional<std::uint64_t>> presentation_degrees(const Field& tower, std::size_t base_level) {
  std::vector<std::optional<std::uint64_t>> out;
  for (std::size_t i = base_level; i < tower.level(); ++i) {
    const auto& st = tower.step(i);
    if (st.kind == TowerStep::Kind::Transcendental) out.push_back(std::nullopt);
    else out.push_back(static_cast<std::uint64_t>(upoly::degree(st.minpoly)));
  }
  return out;
}

LimitDegree limit_degree(const std::vector<std::optional<std::uint64_t>>& level_degrees, unsigned d) {
  if (d == 0) fail(ErrorKind::InvalidArgument, "power must be positive");
  LimitDegree out;
  for (std::size_t m = 1; (m + 1) * d <= level_degrees.size(); ++m) {
    std::uint64_t deg = 1;
    for (std::size_t j = m * d; j < (m + 1) * d; ++j) {
      if (!level_degrees[j]) fail(ErrorKind::OutOfScope, "limit degree of a transcendental level");
      deg *= *level_degrees[j];
    }
    out.sequence.push_back(deg);
    const std::size_t n = out.sequence.size();
    if (n >= 2 && out.sequence[n - 1] == out.sequence[n - 2]) {
      out.value = deg;
      return out;
    }
  }
  std::string seq;
  for (auto v : out.sequence) seq += (seq.empty() ? "" : ", ") + std::to_string(v);
  fail(ErrorKind::NotStabilized, "relative degrees [" + seq + "]");
}

Field benign_quadratic_tower(std::size_t depth) {
  const Field q = make_prime_field(0);
  Field f = extend_transcendental(q, "a");
  for (std::size_t j = 1; j < depth; ++j) {
    const std::string prev = j == 1 ? "a" : "a" + std::to_string(j - 1);
    UPoly m{f.neg(f.generator(f.generator_index(prev).value())), f.zero(), f.one()};
    f = extend_algebraic(f, "a" + std::to_string(j), m);
  }
  return f;
}

}  // namespace sigchev
