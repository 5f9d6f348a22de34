#include "sigchev/sigmaideal.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "sigchev/expr.hpp"

namespace sigchev {

namespace {

std::vector<Poly> reorder(const PolyRing& to, const std::vector<Poly>& ps) {
  std::vector<Poly> out;
  for (const auto& p : ps) out.push_back(to.normalize(p.terms));
  return out;
}

std::size_t leading_var(const PolyRing& r, const Poly& p) {
  const Monomial& m = r.lead(p);
  std::size_t v = 0;
  while (v < m.size() && m[v] == 0) ++v;
  return v;
}

std::string render(const PolyRing& r, const std::vector<Poly>& gens) {
  std::string s = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + r.to_string(gens[i]);
  return s + ")";
}

}  // namespace

bool SigmaIdeal::contains(const Poly& p) const { return ideal_contains(ambient.ring, basis(), p); }

SigmaIdeal make_sigma_ideal(const SigmaRing& ambient, std::vector<Poly> gens, std::optional<unsigned> period) {
  if (period && *period == 0) fail(ErrorKind::InvalidArgument, "period must be positive");
  return SigmaIdeal{ambient, std::move(gens), period};
}

void require_field_coefficients(const PseudoField& base) {
  if (base.period() > 1)
    fail(ErrorKind::CoefficientNotField,
         "coefficients form a product of " + std::to_string(base.period()) + " fields; pass a component");
}

std::vector<Poly> groebner(const SigmaIdeal& ideal, MonomialOrder order) {
  const PolyRing r = ideal.ambient.ring.with_order(order);
  std::vector<Poly> gens = reorder(r, ideal.generators);
  for (const auto& p : reorder(r, ideal.ambient.relations)) gens.push_back(p);
  return groebner(r, gens);
}

StabilityReport sigma_stability(const SigmaIdeal& ideal, unsigned d) {
  const PolyRing& r = ideal.ambient.ring;
  const auto basis = ideal.basis();
  StabilityReport rep;
  for (const auto& g : ideal.generators) {
    if (!r.is_zero(normal_form(r, apply_sigma(ideal.ambient, g, d), basis))) {
      rep.witness = g;
      return rep;
    }
  }
  rep.stable = true;
  try {
    rep.reflexive_certified = ideals_equal(r, sigma_preimage(ideal.ambient, basis, d), basis);
  } catch (const SigmaError& e) {
    if (e.kind() != ErrorKind::PreimageNotComputable) throw;
    rep.forward_only = true;
  }
  for (const auto& img : ideal.ambient.sigma_images)
    if (!img) rep.forward_only = true;
  return rep;
}

NotInSigma notin_sigma(const Poly& r, const SigmaIdeal& ideal, unsigned bound) {
  const unsigned limit = ideal.period ? std::min(bound, *ideal.period - 1) : bound;
  const auto basis = ideal.basis();
  NotInSigma out;
  Poly cur = r;
  for (unsigned i = 0; i <= limit; ++i) {
    out.scanned = i;
    if (ideal_contains(ideal.ambient.ring, basis, cur)) {
      out.first_in = i;
      return out;
    }
    if (i == limit) break;
    try {
      cur = apply_sigma(ideal.ambient, cur);
    } catch (const SigmaError& e) {
      if (e.kind() != ErrorKind::AmbientNotClosed) throw;
      break;
    }
  }
  return out;
}

SigmaIdeal pseudo_prime_assemble(const SigmaIdeal& q, unsigned d) {
  if (d == 0) fail(ErrorKind::InvalidArgument, "period must be positive");
  const PolyRing& r = q.ambient.ring;
  std::vector<Poly> cur = q.basis();
  std::vector<Poly> acc = cur;
  for (unsigned k = 1; k < d; ++k) {
    cur = sigma_preimage(q.ambient, cur);
    acc = intersect(r, acc, cur);
  }
  for (const auto& g : acc)
    if (!ideal_contains(r, acc, apply_sigma(q.ambient, g)))
      fail(ErrorKind::InvalidArgument, "assembled ideal is not sigma-stable: " + r.to_string(g));
  return SigmaIdeal{q.ambient, acc, 1u};
}

// ---------------------------------------------------------------- residue fields

std::string generator_name_for(const std::string& var, const Field& avoid) {
  auto [base, shift] = split_shifted_name(var);
  std::string name = shift ? base + "_" + std::to_string(shift) : var;
  for (auto& c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
  const std::string stem = name;
  for (int k = 1; avoid.generator_index(name); ++k) name = stem + "_" + std::to_string(k);
  return name;
}

Elem evaluate(const PolyRing& ring, const Poly& p, const ResidueField& rf) {
  const Field& f = rf.field;
  const std::size_t from = ring.field().level();
  Elem acc = f.zero();
  for (const auto& t : p.terms) {
    Elem m = f.embed(t.coeff, from);
    for (std::size_t v = 0; v < t.mono.size(); ++v)
      if (t.mono[v]) m = f.mul(m, f.pow(rf.residues.at(v), t.mono[v]));
    acc = f.add(acc, m);
  }
  return acc;
}

ResidueField certify_prime(const PolyRing& ring, const std::vector<Poly>& gens) {
  const PolyRing lr = ring.with_order(MonomialOrder::lex());
  const auto g = groebner(lr, reorder(lr, gens));
  if (is_unit_ideal(g, lr)) fail(ErrorKind::NotPrimeInScope, "unit ideal");
  ResidueField rf;
  rf.field = ring.field();
  rf.residues.assign(lr.nvars(), rf.field.zero());
  std::vector<Poly> chain;
  Poly initials = lr.one();
  for (std::size_t v = lr.nvars(); v-- > 0;) {
    std::optional<Poly> pick;
    for (const auto& p : g)
      if (leading_var(lr, p) == v && (!pick || lr.degree_in(p, v) < lr.degree_in(*pick, v))) pick = p;
    const std::size_t old_level = rf.field.level();
    const std::string name = generator_name_for(lr.var_names()[v], rf.field);
    if (!pick) {
      rf.field = extend_transcendental(rf.field, name);
      for (auto& e : rf.residues) e = rf.field.embed(e, old_level);
      rf.residues[v] = rf.field.generator(old_level);
      rf.step_var.push_back(v);
      ++rf.transcendence_degree;
      continue;
    }
    chain.push_back(*pick);
    const auto coeffs = lr.coefficients_in(*pick, v);
    UPoly f;
    for (const auto& c : coeffs) f.push_back(evaluate(lr, c, rf));
    upoly::trim(rf.field, f);
    const auto deg = upoly::degree(f);
    if (deg != static_cast<long>(coeffs.size()) - 1)
      fail(ErrorKind::NotPrimeInScope, "initial of " + lr.to_string(*pick) + " vanishes on the lower variables");
    if (!lr.is_constant(coeffs.back())) initials = lr.mul(initials, coeffs.back());
    if (deg == 1) {
      rf.residues[v] = rf.field.neg(rf.field.div(f[0], f[1]));
      continue;
    }
    f = upoly::monic(rf.field, f);
    if (!is_irreducible(rf.field, f))
      fail(ErrorKind::NotPrimeInScope, lr.to_string(*pick) + " factors over the residue field of the lower variables");
    rf.field = append_step_unchecked(rf.field, TowerStep{TowerStep::Kind::Algebraic, name, f});
    for (auto& e : rf.residues) e = rf.field.embed(e, old_level);
    rf.residues[v] = rf.field.generator(old_level);
    rf.step_var.push_back(v);
  }
  for (const auto& p : g)
    if (!rf.field.is_zero(evaluate(lr, p, rf)))
      fail(ErrorKind::NotPrimeInScope, "basis is not triangular in the chosen variable order");
  if (!lr.is_constant(initials) && !ideals_equal(lr, saturate(lr, chain, initials), g))
    fail(ErrorKind::NotPrimeInScope, "ideal is strictly smaller than the saturation of its characteristic set");
  return rf;
}

// ---------------------------------------------------------------- lifts

Inclusion make_inclusion(const SigmaRing& source, const SigmaRing& target, std::vector<Poly> images) {
  if (images.size() != source.ring.nvars()) fail(ErrorKind::InvalidArgument, "one image per source variable is required");
  if (!(source.field() == target.field())) fail(ErrorKind::BaseMismatch, "source and target have different coefficients");
  for (const auto& g : source.field().generator_names()) {
    const Elem x = source.field().generator(source.field().generator_index(g).value());
    if (source.sigma_k.apply(x) != target.sigma_k.apply(x))
      fail(ErrorKind::BaseMismatch, "sigma differs on the coefficient " + g);
  }
  const auto rel = ideal_basis(target, {});
  for (const auto& j : source.relations)
    if (!ideal_contains(target.ring, rel, substitute(source.ring, target.ring, j, images)))
      fail(ErrorKind::NotWellDefined, "relation " + source.ring.to_string(j) + " does not map into the target relations");
  for (std::size_t v = 0; v < images.size(); ++v) {
    if (!source.sigma_images[v]) continue;
    const Poly lhs = substitute(source.ring, target.ring, *source.sigma_images[v], images);
    const Poly rhs = apply_sigma(target, images[v]);
    if (!ideal_contains(target.ring, rel, target.ring.sub(lhs, rhs)))
      fail(ErrorKind::NotWellDefined, "map does not commute with sigma on " + source.ring.var_names()[v]);
  }
  return Inclusion{source, target, std::move(images)};
}

std::vector<std::size_t> LiftReport::lifts_at(unsigned l) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < primes_above.size(); ++i)
    if (primes_above[i].cycle && l % primes_above[i].cycle == 0) out.push_back(i);
  return out;
}

std::optional<unsigned> LiftReport::minimal_l() const {
  for (unsigned l = 1; l <= l_max; ++l)
    if (!lifts_at(l).empty()) return l;
  return std::nullopt;
}

namespace {

struct FiberShape {
  PolyRing ring;          // target variables over the residue field, `last` at the end
  std::size_t last = 0;   // index in the target ring
  UPoly minpoly;
  std::vector<Poly> linear;  // w - g(last) for the other variables
};

// Zero-dimensional fiber in shape position for some choice of last variable.
std::optional<FiberShape> fiber_shape(const PolyRing& target, const Field& l, const std::vector<Poly>& fiber_gens,
                                      bool& unit) {
  const std::size_t n = target.nvars();
  bool zero_dim_seen = false;
  for (std::size_t pass = 0; pass < n; ++pass) {
    const std::size_t last = n - 1 - pass;
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v)
      if (v != last) names.push_back(target.var_names()[v]);
    names.push_back(target.var_names()[last]);
    const PolyRing fr(l, names, MonomialOrder::lex());
    std::vector<Poly> images;
    for (std::size_t v = 0; v < n; ++v) images.push_back(fr.var(target.var_names()[v]));
    std::vector<Poly> gens;
    for (const auto& g : fiber_gens) gens.push_back(substitute(target.with_order(MonomialOrder::lex()), fr, g, images));
    const auto g = groebner(fr, gens);
    if (is_unit_ideal(g, fr)) {
      unit = true;
      return std::nullopt;
    }
    std::vector<bool> bounded(n, false);
    for (const auto& p : g) {
      const auto& m = fr.lead(p);
      std::size_t nz = 0, at = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (m[v]) ++nz, at = v;
      if (nz == 1) bounded[at] = true;
    }
    if (std::count(bounded.begin(), bounded.end(), true) != static_cast<long>(n)) continue;
    zero_dim_seen = true;
    if (g.size() != n) continue;
    FiberShape fs{fr, last, {}, {}};
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      const Poly& p = g[k];
      const std::size_t lv = leading_var(fr, p);
      if (k == 0) {
        if (lv != n - 1) ok = false;
        for (const auto& c : fr.coefficients_in(p, n - 1)) fs.minpoly.push_back(c.terms.empty() ? l.zero() : c.terms[0].coeff);
      } else {
        ok = fr.lead(p)[lv] == 1 && fr.total_degree(fr.term(fr.lead(p), l.one())) == 1;
        fs.linear.push_back(p);
      }
    }
    if (ok) return fs;
  }
  if (zero_dim_seen) fail(ErrorKind::UnsupportedFactorization, "fiber is finite but not in shape position");
  fail(ErrorKind::FiberNotFinite, "the fiber over the residue field is not zero-dimensional");
}

// Clear the residue-field coefficients of p by sending the new generators back
// to the images of the source variables; returns (numerator, denominator).
std::pair<Poly, Poly> pull_back(const Poly& p, const ResidueField& rf, std::size_t base_level,
                                const PolyRing& target, const std::vector<Poly>& fr_var_images,
                                const std::vector<Poly>& gen_images) {
  Poly num = target.zero(), den = target.one();
  for (const auto& t : p.terms) {
    auto [cn, cd] = elem_as_fraction(rf.field, t.coeff, base_level, target, gen_images);
    Poly mono = target.one();
    for (std::size_t v = 0; v < t.mono.size(); ++v)
      if (t.mono[v]) mono = target.mul(mono, target.pow(fr_var_images[v], t.mono[v]));
    cn = target.mul(cn, mono);
    if (cd == den) {
      num = target.add(num, cn);
    } else {
      num = target.add(target.mul(num, cd), target.mul(cn, den));
      den = target.mul(den, cd);
    }
  }
  return {num, den};
}

}  // namespace

LiftReport lift_search(const Inclusion& inc, const SigmaIdeal& q, unsigned d, unsigned l_max) {
  const PolyRing& rr = inc.source.ring;
  const PolyRing& sr = inc.target.ring;
  LiftReport rep;
  rep.d = d;
  rep.l_max = l_max;
  const auto q_basis = q.basis();
  rep.source = render(rr, q_basis);
  const ResidueField rf = certify_prime(rr, q_basis);
  const std::size_t base_level = rr.field().level();

  // fiber: J_S + (phi(y_j) - residue_j) over k(q)
  const PolyRing sl = sr.with_order(MonomialOrder::lex());
  const PolyRing sl_over(rf.field, sl.var_names(), MonomialOrder::lex());
  std::vector<Poly> ident;
  for (std::size_t v = 0; v < sr.nvars(); ++v) ident.push_back(sl_over.var(v));
  std::vector<Poly> fiber;
  for (const auto& j : inc.target.relations) fiber.push_back(substitute(sr, sl_over, j, ident));
  for (std::size_t v = 0; v < rr.nvars(); ++v)
    fiber.push_back(sl_over.sub(substitute(sr, sl_over, inc.images[v], ident), sl_over.constant(rf.residues[v])));
  bool unit = false;
  const auto shape = fiber_shape(sl_over.with_order(MonomialOrder::lex()), rf.field, fiber, unit);
  if (unit) return rep;

  std::vector<Poly> gen_images;
  for (std::size_t v : rf.step_var) gen_images.push_back(inc.images[v]);
  std::vector<Poly> fr_var_images;
  for (const auto& name : shape->ring.var_names()) fr_var_images.push_back(sr.var(name));

  std::vector<Poly> base_gens = inc.target.relations;
  for (const auto& g : q_basis) base_gens.push_back(substitute(rr, sr, g, inc.images));

  const PolyRing& fr = shape->ring;
  const std::size_t z = fr.nvars() - 1;
  const auto fac = factor_univariate(rf.field, shape->minpoly);
  for (const auto& [h, mult] : fac.factors) {
    (void)mult;
    std::vector<Poly> comps;
    Poly hz = fr.zero();
    for (std::size_t e = 0; e < h.size(); ++e) {
      Monomial m(fr.nvars(), 0);
      m[z] = static_cast<std::uint32_t>(e);
      hz = fr.add(hz, fr.term(m, h[e]));
    }
    rep.fiber_factors.push_back(fr.to_string(hz));
    comps.push_back(hz);
    for (const auto& lin : shape->linear) comps.push_back(normal_form(fr, lin, {hz}));
    std::vector<Poly> gens = base_gens;
    Poly dens = sr.one();
    for (const auto& c : comps) {
      auto [num, den] = pull_back(c, rf, base_level, sr, fr_var_images, gen_images);
      gens.push_back(num);
      if (!sr.is_constant(den)) dens = sr.mul(dens, den);
    }
    Lift lift;
    lift.generators = sr.is_constant(dens) ? groebner(sr, gens) : saturate(sr, gens, dens);

    // contraction by elimination in S x R
    std::vector<std::string> names = sr.var_names();
    for (const auto& v : rr.var_names()) names.push_back("_R:" + v);
    const PolyRing joint(sr.field(), names, sr.order());
    std::vector<Poly> s_in_joint, r_in_joint;
    for (std::size_t v = 0; v < sr.nvars(); ++v) s_in_joint.push_back(joint.var(v));
    for (std::size_t v = 0; v < rr.nvars(); ++v) r_in_joint.push_back(joint.var(sr.nvars() + v));
    std::vector<Poly> jg;
    for (const auto& g : lift.generators) jg.push_back(substitute(sr, joint, g, s_in_joint));
    for (std::size_t v = 0; v < rr.nvars(); ++v)
      jg.push_back(joint.sub(r_in_joint[v], substitute(sr, joint, inc.images[v], s_in_joint)));
    std::vector<std::size_t> drop;
    for (std::size_t v = 0; v < sr.nvars(); ++v) drop.push_back(v);
    std::vector<Poly> back(sr.nvars(), rr.zero());
    for (std::size_t v = 0; v < rr.nvars(); ++v) back.push_back(rr.var(v));
    std::vector<Poly> contraction;
    for (const auto& g : eliminate(joint, jg, drop)) contraction.push_back(substitute(joint, rr, g, back));
    lift.contraction_verified = ideals_equal(rr, groebner(rr, contraction), q_basis);
    try {
      certify_prime(sr, lift.generators);
      lift.prime_certified = true;
    } catch (const SigmaError&) {
      lift.prime_certified = false;
    }
    rep.primes_above.push_back(std::move(lift));
  }
  std::sort(rep.primes_above.begin(), rep.primes_above.end(),
            [&](const Lift& a, const Lift& b) { return render(sr, a.generators) < render(sr, b.generators); });

  const std::size_t n = rep.primes_above.size();
  rep.permutation.assign(n, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Poly> imgs;
    try {
      for (const auto& g : rep.primes_above[i].generators) imgs.push_back(apply_sigma(inc.target, g, d));
    } catch (const SigmaError& e) {
      if (e.kind() != ErrorKind::AmbientNotClosed) throw;
      continue;
    }
    for (std::size_t j = 0; j < n && !rep.permutation[i]; ++j) {
      const auto& bj = rep.primes_above[j].generators;
      if (std::all_of(imgs.begin(), imgs.end(), [&](const Poly& p) { return ideal_contains(sr, bj, p); }))
        rep.permutation[i] = j;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cur = i;
    for (unsigned len = 1; len <= n; ++len) {
      if (!rep.permutation[cur]) break;
      cur = *rep.permutation[cur];
      if (cur == i) {
        rep.primes_above[i].cycle = len;
        rep.primes_above[i].power = len * d;
        break;
      }
    }
  }
  return rep;
}

WitnessTable chevalley_witness(const std::vector<FamilyMember>& family, unsigned l_max) {
  WitnessTable t;
  bool all = true;
  unsigned lcm = 1;
  t.naive_holds = true;
  for (const auto& m : family) {
    const auto rep = lift_search(m.inclusion, m.prime, m.d, l_max);
    WitnessRow row{rep.source, m.d, rep.minimal_l(), 0};
    if (row.minimal_l) {
      row.lifts = rep.lifts_at(*row.minimal_l).size();
      lcm = std::lcm(lcm, *row.minimal_l);
    } else {
      all = false;
    }
    if (row.minimal_l != 1u) t.naive_holds = false;
    t.rows.push_back(row);
  }
  if (all) t.uniform_l = lcm;
  return t;
}

}  // namespace sigchev
