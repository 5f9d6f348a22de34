#include "sigchev/kernels.hpp"

#include <algorithm>

#include "sigchev/expr.hpp"

namespace sigchev {

std::vector<std::string> truncation_names(const std::vector<std::string>& vars, unsigned t) {
  std::vector<std::string> names;
  for (unsigned j = t + 1; j-- > 0;)
    for (std::size_t i = vars.size(); i-- > 0;) names.push_back(shifted_name(vars[i], j));
  return names;
}

namespace {

std::size_t index_of(std::size_t nvars, unsigned t, std::size_t var, unsigned shift) {
  return static_cast<std::size_t>(t - shift) * nvars + (nvars - 1 - var);
}

PolyRing component_ring(const PseudoField& base, std::size_t i, const std::vector<std::string>& vars, unsigned t) {
  return PolyRing(base.component(i), truncation_names(vars, t), MonomialOrder::lex());
}

FieldMorphism inverse_map(const FieldMorphism& m) {
  if (!(m.source() == m.target()))
    fail(ErrorKind::PreimageNotComputable, "sigma between distinct component fields is not inverted");
  auto inv = inverse_automorphism(m);
  if (!inv) fail(ErrorKind::PreimageNotComputable, "sigma on the coefficients has no computable inverse");
  return *inv;
}

std::string component_tag(std::size_t i) { return "component " + std::to_string(i); }

// Field element of `f` (steps above base_level sent to gen_images) times var^e, summed.
std::pair<Poly, Poly> pull_back_upoly(const Field& f, const UPoly& h, std::size_t base_level, const PolyRing& target,
                                      const Poly& var, const std::vector<Poly>& gen_images) {
  Poly num = target.zero(), den = target.one();
  for (std::size_t e = 0; e < h.size(); ++e) {
    if (f.is_zero(h[e])) continue;
    auto [cn, cd] = elem_as_fraction(f, h[e], base_level, target, gen_images);
    cn = target.mul(cn, target.pow(var, static_cast<unsigned>(e)));
    if (cd == den) {
      num = target.add(num, cn);
    } else {
      num = target.add(target.mul(num, cd), target.mul(cn, den));
      den = target.mul(den, cd);
    }
  }
  return {num, den};
}

struct ChosenPrime {
  Field field;
  std::vector<Elem> residues;                        // per fiber variable
  std::vector<std::size_t> step_var;                 // fiber variable behind each new step
  std::vector<std::pair<std::size_t, UPoly>> chain;  // (fiber variable, relation over the final field)
  std::vector<ProvenanceEntry> log;
};

// A prime component of the ideal generated by `gens` in fr, chosen
// deterministically: variables bottom-up, least irreducible factor first.
ChosenPrime choose_component(const PolyRing& fr, const std::vector<Poly>& gens) {
  const auto g = groebner(fr, gens);
  if (is_unit_ideal(g, fr)) fail(ErrorKind::ConditionOneFails, "the twisted ideal generates the unit ideal");
  ChosenPrime out;
  out.field = fr.field();
  out.residues.assign(fr.nvars(), out.field.zero());
  std::vector<std::pair<std::size_t, std::pair<UPoly, std::size_t>>> raw;  // relation with its field level
  ResidueField tmp;
  for (std::size_t v = fr.nvars(); v-- > 0;) {
    std::optional<Poly> pick;
    for (const auto& p : g) {
      const auto& m = fr.lead(p);
      std::size_t lv = 0;
      while (lv < m.size() && m[lv] == 0) ++lv;
      if (lv == v && (!pick || fr.degree_in(p, v) < fr.degree_in(*pick, v))) pick = p;
    }
    const std::size_t old_level = out.field.level();
    if (!pick) {
      out.field = extend_transcendental(out.field, generator_name_for(fr.var_names()[v], out.field));
      for (auto& e : out.residues) e = out.field.embed(e, old_level);
      out.residues[v] = out.field.generator(old_level);
      out.step_var.push_back(v);
      continue;
    }
    tmp.field = out.field;
    tmp.residues = out.residues;
    const auto coeffs = fr.coefficients_in(*pick, v);
    UPoly f;
    for (const auto& c : coeffs) f.push_back(evaluate(fr, c, tmp));
    upoly::trim(out.field, f);
    if (upoly::degree(f) != static_cast<long>(coeffs.size()) - 1)
      fail(ErrorKind::UnsupportedFactorization, "initial vanishes on the chosen component");
    f = upoly::monic(out.field, f);
    const auto fac = factor_univariate(out.field, f);
    UPoly h = fac.factors.front().first;
    if (fac.factors.size() > 1 || fac.factors.front().second > 1) {
      ProvenanceEntry entry;
      for (const auto& [q, mult] : fac.factors) {
        (void)mult;
        entry.factors.push_back(upoly::to_string(out.field, q, fr.var_names()[v]));
      }
      entry.chosen = entry.factors.front();
      out.log.push_back(entry);
    }
    raw.push_back({v, {h, old_level}});
    if (upoly::degree(h) == 1) {
      out.residues[v] = out.field.neg(h[0]);
      continue;
    }
    out.field = append_step_unchecked(out.field,
                                      TowerStep{TowerStep::Kind::Algebraic, generator_name_for(fr.var_names()[v], out.field), h});
    for (auto& e : out.residues) e = out.field.embed(e, old_level);
    out.residues[v] = out.field.generator(old_level);
    out.step_var.push_back(v);
  }
  tmp.field = out.field;
  tmp.residues = out.residues;
  for (const auto& p : g)
    if (!out.field.is_zero(evaluate(fr, p, tmp)))
      fail(ErrorKind::UnsupportedFactorization, "twisted ideal is not triangular over the residue field");
  for (const auto& [v, hl] : raw) {
    UPoly h;
    for (const auto& c : hl.first) h.push_back(out.field.embed(c, hl.second));
    out.chain.push_back({v, h});
  }
  return out;
}

}  // namespace

std::vector<Poly> restrict_to(const DiffKernel& k, std::size_t component, unsigned s) {
  const auto& c = k.components.at(component);
  std::vector<std::size_t> drop;
  for (std::size_t idx = 0; idx < c.ring.nvars(); ++idx)
    if (k.length - idx / k.vars.size() > s) drop.push_back(idx);
  if (drop.empty()) return c.ideal;
  return eliminate(c.ring, c.ideal, drop);
}

bool condition_one(const DiffKernel& k, std::size_t i) {
  const unsigned t = k.length;
  if (t == 0) return true;
  const std::size_t d = k.base.period();
  const std::size_t n = k.vars.size();
  const auto& a = k.components.at(i);
  const auto& b = k.components.at((i + 1) % d);
  const FieldMorphism inv = inverse_map(k.base.sigma_map(i));
  std::vector<std::string> names;
  for (const auto& v : b.ring.var_names()) names.push_back("_B:" + v);
  for (const auto& v : a.ring.var_names()) names.push_back(v);
  const PolyRing joint(a.ring.field(), names, MonomialOrder::lex());
  const std::size_t m = b.ring.nvars();
  std::vector<Poly> b_images;
  for (std::size_t idx = 0; idx < m; ++idx) b_images.push_back(joint.var(idx));
  std::vector<Poly> gens;
  for (const auto& p : b.ideal)
    gens.push_back(substitute(b.ring, joint, p, b_images, [&](const Elem& c) { return inv.apply(c); }));
  for (std::size_t v = 0; v < n; ++v)
    for (unsigned j = 0; j < t; ++j)
      gens.push_back(joint.sub(joint.var(m + index_of(n, t, v, j)), joint.var(index_of(n, t, v, j + 1))));
  std::vector<std::size_t> drop;
  for (std::size_t idx = 0; idx < m; ++idx) drop.push_back(idx);
  std::vector<Poly> back(m, a.ring.zero());
  for (std::size_t idx = 0; idx < a.ring.nvars(); ++idx) back.push_back(a.ring.var(idx));
  std::vector<Poly> pre;
  for (const auto& p : eliminate(joint, gens, drop)) pre.push_back(substitute(joint, a.ring, p, back));
  return ideals_equal(a.ring, groebner(a.ring, pre), restrict_to(k, i, t - 1));
}

DiffKernel make_kernel(const PseudoField& base, const std::vector<std::string>& vars, unsigned t,
                       const std::vector<std::vector<std::string>>& ideals) {
  if (ideals.size() != base.period())
    fail(ErrorKind::InvalidArgument, "one ideal per component of the pseudo-field is required");
  DiffKernel k;
  k.base = base;
  k.vars = vars;
  k.length = t;
  for (std::size_t i = 0; i < base.period(); ++i) {
    KernelComponent c;
    c.ring = component_ring(base, i, vars, t);
    std::vector<Poly> gens;
    for (const auto& text : ideals[i]) gens.push_back(parse_poly(c.ring, text));
    c.ideal = groebner(c.ring, gens);
    try {
      c.residue = certify_prime(c.ring, c.ideal);
    } catch (const SigmaError& e) {
      if (e.kind() != ErrorKind::NotPrimeInScope) throw;
      fail(ErrorKind::NotPrimeInScope, component_tag(i) + ": " + e.what());
    }
    k.components.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < base.period(); ++i)
    if (!condition_one(k, i))
      fail(ErrorKind::ConditionOneFails, component_tag(i) + ": preimage of the next component differs from the cut-off ideal");
  return k;
}

DiffKernel prolong(const DiffKernel& k) {
  const unsigned t = k.length;
  const std::size_t d = k.base.period();
  const std::size_t n = k.vars.size();
  DiffKernel out;
  out.base = k.base;
  out.vars = k.vars;
  out.length = t + 1;
  out.log = k.log;
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t prev = (i + d - 1) % d;
    const FieldMorphism& m = k.base.sigma_map(prev);
    const auto& cur = k.components[i];
    const auto& pc = k.components[prev];
    const PolyRing big = component_ring(k.base, i, k.vars, t + 1);

    // psi(p_t of the previous component), shifted up by one
    std::vector<Poly> shift_images;
    for (std::size_t idx = 0; idx < pc.ring.nvars(); ++idx) {
      const unsigned j = t - static_cast<unsigned>(idx / n);
      const std::size_t v = n - 1 - idx % n;
      shift_images.push_back(big.var(index_of(n, t + 1, v, j + 1)));
    }
    std::vector<Poly> twisted;
    for (const auto& p : pc.ideal)
      twisted.push_back(substitute(pc.ring, big, p, shift_images, [&](const Elem& c) { return m.apply(c); }));

    // fiber over the residue field of the current component
    const ResidueField& rf = cur.residue;
    std::vector<std::string> top(big.var_names().begin(), big.var_names().begin() + static_cast<long>(n));
    const PolyRing fr(rf.field, top, MonomialOrder::lex());
    std::vector<Poly> to_fiber;
    for (std::size_t idx = 0; idx < big.nvars(); ++idx)
      to_fiber.push_back(idx < n ? fr.var(idx) : fr.constant(rf.residues[idx - n]));
    std::vector<Poly> fiber;
    for (const auto& p : twisted) {
      Poly q = substitute(big, fr, p, to_fiber);
      if (!fr.is_zero(q)) fiber.push_back(q);
    }

    KernelComponent nc;
    nc.ring = big;
    std::vector<Poly> gens;
    std::vector<Poly> lower_images;
    for (std::size_t idx = 0; idx < cur.ring.nvars(); ++idx) lower_images.push_back(big.var(idx + n));
    for (const auto& p : cur.ideal) gens.push_back(substitute(cur.ring, big, p, lower_images));
    if (!fiber.empty()) {
      const ChosenPrime cp = choose_component(fr, fiber);
      std::vector<Poly> gen_images;
      for (std::size_t v : rf.step_var) gen_images.push_back(big.var(v + n));
      for (std::size_t v : cp.step_var) gen_images.push_back(big.var(v));
      Poly dens = big.one();
      for (const auto& [v, h] : cp.chain) {
        auto [num, den] = pull_back_upoly(cp.field, h, k.base.component(i).level(), big, big.var(v), gen_images);
        gens.push_back(num);
        if (!big.is_constant(den)) dens = big.mul(dens, den);
      }
      for (auto entry : cp.log) {
        entry.order = t + 1;
        entry.component = i;
        out.log.push_back(entry);
      }
      nc.ideal = big.is_constant(dens) ? groebner(big, gens) : saturate(big, gens, dens);
    } else {
      nc.ideal = groebner(big, gens);
    }
    nc.residue = certify_prime(big, nc.ideal);
    out.components.push_back(std::move(nc));
  }
  for (std::size_t i = 0; i < d; ++i)
    if (!condition_one(out, i)) fail(ErrorKind::ConditionOneFails, component_tag(i) + " after prolongation");
  return out;
}

Realization realize(const DiffKernel& k, unsigned up_to) {
  Realization r;
  r.kernels.push_back(k);
  while (r.kernels.back().length < up_to) {
    const DiffKernel next = prolong(r.kernels.back());
    const DiffKernel& last = r.kernels.back();
    for (std::size_t i = 0; i < k.base.period(); ++i) {
      const auto cut = restrict_to(next, i, last.length);
      const auto& lc = last.components[i];
      std::vector<Poly> lifted;
      std::vector<Poly> images;
      for (std::size_t idx = 0; idx < lc.ring.nvars(); ++idx) images.push_back(next.components[i].ring.var(idx + k.vars.size()));
      for (const auto& p : lc.ideal) lifted.push_back(substitute(lc.ring, next.components[i].ring, p, images));
      if (!ideals_equal(next.components[i].ring, cut, groebner(next.components[i].ring, lifted))) r.truncation_law = false;
    }
    r.kernels.push_back(next);
  }
  return r;
}

std::uint64_t kernel_degree(const DiffKernel& k) {
  const Field& f = k.components.at(0).residue.field;
  std::uint64_t deg = 1;
  for (std::size_t s = k.base.component(0).level(); s < f.level(); ++s)
    if (f.step(s).kind == TowerStep::Kind::Algebraic) deg *= static_cast<std::uint64_t>(upoly::degree(f.step(s).minpoly));
  return deg;
}

// ---------------------------------------------------------------- inversive closures

InversiveClosure::InversiveClosure(SigmaRing base, unsigned nilpotence_bound)
    : base_(std::move(base)), bound_(nilpotence_bound) {
  for (std::size_t v = 0; v < base_.ring.nvars(); ++v)
    if (!base_.sigma_images[v]) fail(ErrorKind::AmbientNotClosed, "sigma of " + base_.ring.var_names()[v]);
}

InversiveClosure inversive_closure(const SigmaRing& r, unsigned nilpotence_bound) {
  return InversiveClosure(r, nilpotence_bound);
}

std::optional<Poly> InversiveClosure::sigma_preimage_of(const Poly& r) const {
  const auto tau = sigma_k_inverse(base_);
  if (!tau) return std::nullopt;
  const PolyRing& br = base_.ring;
  const std::size_t m = br.nvars();
  std::vector<std::string> names = br.var_names();
  for (const auto& v : br.var_names()) names.push_back("_w:" + v);
  const PolyRing joint(br.field(), names, MonomialOrder::elimination(m));
  std::vector<Poly> ys;
  for (std::size_t v = 0; v < m; ++v) ys.push_back(joint.var(v));
  std::vector<Poly> gens;
  for (const auto& j : base_.relations) gens.push_back(substitute(br, joint, j, ys));
  for (std::size_t v = 0; v < m; ++v)
    gens.push_back(joint.sub(joint.var(m + v), substitute(br, joint, *base_.sigma_images[v], ys)));
  const Poly nf = normal_form(joint, substitute(br, joint, r, ys), groebner(joint, gens));
  for (std::size_t v = 0; v < m; ++v)
    if (joint.uses_var(nf, v)) return std::nullopt;
  std::vector<Poly> back(m, br.zero());
  for (std::size_t v = 0; v < m; ++v) back.push_back(br.var(v));
  return substitute(joint, br, nf, back, [&](const Elem& c) { return tau->apply(c); });
}

ClosureElem InversiveClosure::normalize(ClosureElem e) const {
  const auto rel = ideal_basis(base_, {});
  e.r = normal_form(base_.ring, e.r, rel);
  while (e.n > 0) {
    auto p = sigma_preimage_of(e.r);
    if (!p) break;
    e = {normal_form(base_.ring, *p, rel), e.n - 1};
  }
  return e;
}

ClosureElem InversiveClosure::lift_to(const ClosureElem& e, unsigned n) const {
  return {apply_sigma(base_, e.r, n - e.n), n};
}

ClosureElem InversiveClosure::sigma(const ClosureElem& e) const { return normalize({apply_sigma(base_, e.r), e.n}); }

ClosureElem InversiveClosure::add(const ClosureElem& a, const ClosureElem& b) const {
  const unsigned n = std::max(a.n, b.n);
  return normalize({base_.ring.add(lift_to(a, n).r, lift_to(b, n).r), n});
}

ClosureElem InversiveClosure::mul(const ClosureElem& a, const ClosureElem& b) const {
  const unsigned n = std::max(a.n, b.n);
  return normalize({base_.ring.mul(lift_to(a, n).r, lift_to(b, n).r), n});
}

std::optional<unsigned> InversiveClosure::annihilated_after(const Poly& r) const {
  const auto rel = ideal_basis(base_, {});
  Poly cur = r;
  for (unsigned k = 0; k <= bound_; ++k) {
    if (base_.ring.is_zero(normal_form(base_.ring, cur, rel))) return k;
    cur = apply_sigma(base_, cur);
  }
  return std::nullopt;
}

bool InversiveClosure::equal(const ClosureElem& a, const ClosureElem& b) const {
  const unsigned n = std::max(a.n, b.n);
  return annihilated_after(base_.ring.sub(lift_to(a, n).r, lift_to(b, n).r)).has_value();
}

bool InversiveClosure::u_injective_on(const std::vector<Poly>& samples) const {
  for (const auto& s : samples) {
    const auto k = annihilated_after(s);
    if (k && *k > 0) return false;
  }
  return true;
}

std::string InversiveClosure::to_string(const ClosureElem& e) const {
  const std::string r = base_.ring.to_string(e.r);
  if (e.n == 0) return r;
  return "s^-" + std::to_string(e.n) + "(" + r + ")";
}

bool TransportedPrime::contains(const ClosureElem& e) const {
  const SigmaRing& base = closure->base();
  const auto basis = q.basis();
  const unsigned m0 = (e.n + d - 1) / d;
  Poly cur = apply_sigma(base, e.r, m0 * d - e.n);
  for (unsigned m = m0; m <= n_max; ++m) {
    cur = normal_form(base.ring, cur, basis);
    if (base.ring.is_zero(cur)) return true;
    // sigma^d(q) lies in q, so reducing before shifting is harmless
    cur = apply_sigma(base, cur, d);
  }
  return false;
}

std::optional<unsigned> TransportedPrime::period(unsigned max) const {
  const SigmaRing& base = closure->base();
  const auto basis = q.basis();
  for (unsigned p = 1; p <= max; ++p) {
    bool ok = true;
    for (const auto& g : basis) {
      if (!contains({apply_sigma(base, g, p), 0}) || !contains({g, p})) {
        ok = false;
        break;
      }
    }
    if (ok) return p;
  }
  return std::nullopt;
}

TransportedPrime spec_transport(const InversiveClosure& c, const SigmaIdeal& q, unsigned d, unsigned n_max) {
  if (!sigma_stability(q, d).stable) fail(ErrorKind::InvalidArgument, "ideal is not sigma^" + std::to_string(d) + "-stable");
  return TransportedPrime{&c, q, d, n_max};
}

SigmaIdeal contract(const TransportedPrime& qs) {
  const SigmaRing& base = qs.closure->base();
  std::vector<Poly> sum = qs.q.basis();
  std::vector<Poly> pre = sum;
  for (unsigned m = 1; m <= qs.n_max; ++m) {
    pre = sigma_preimage(base, pre, qs.d);
    std::vector<Poly> gens = sum;
    gens.insert(gens.end(), pre.begin(), pre.end());
    auto next = groebner(base.ring, gens);
    if (ideals_equal(base.ring, next, sum)) return SigmaIdeal{base, sum, qs.d};
    sum = std::move(next);
  }
  fail(ErrorKind::BoundExceeded, "contraction did not stabilize within " + std::to_string(qs.n_max) + " steps");
}

std::optional<unsigned> ideal_period(const SigmaIdeal& q, unsigned max) {
  const auto basis = q.basis();
  for (unsigned p = 1; p <= max; ++p)
    if (ideals_equal(q.ambient.ring, sigma_preimage(q.ambient, basis, p), basis)) return p;
  return std::nullopt;
}

}  // namespace sigchev
