#include "sigchev/galois.hpp"

#include <algorithm>
#include <set>

namespace sigchev {

// ---------------------------------------------------------------- derivations

namespace {

// Derivative of an element of level `level` of k.field, as an element of the top field.
Elem delta_at(const DeltaSigmaField& k, std::size_t level, const Elem& e) {
  const Field& top = k.field;
  if (level == 0) return top.zero();
  const Field here = top.at_level(level);
  if (here.is_zero(e)) return top.zero();
  const Elem g = top.generator(level - 1);
  Elem dg;
  const TowerStep& st = top.step(level - 1);
  if (st.kind == TowerStep::Kind::Transcendental) {
    dg = k.delta_gen.at(level - 1).value_or(top.zero());
  } else {
    // delta(g) = -m^delta(g) / m'(g)
    Elem md = top.zero(), mp = top.zero();
    for (std::size_t i = 0; i < st.minpoly.size(); ++i) {
      md = top.add(md, top.mul(delta_at(k, level - 1, st.minpoly[i]), top.pow(g, static_cast<long>(i))));
      if (i > 0)
        mp = top.add(mp, top.mul(top.from_int(static_cast<long>(i)),
                                 top.mul(top.embed(st.minpoly[i], level - 1), top.pow(g, static_cast<long>(i) - 1))));
    }
    dg = top.neg(top.div(md, mp));
  }
  auto value_and_delta = [&](const UPoly& p) {
    Elem v = top.zero(), dv = top.zero(), dp = top.zero();
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Elem c = top.embed(p[i], level - 1);
      const Elem gi = top.pow(g, static_cast<long>(i));
      v = top.add(v, top.mul(c, gi));
      dv = top.add(dv, top.mul(delta_at(k, level - 1, p[i]), gi));
      if (i > 0)
        dp = top.add(dp, top.mul(top.from_int(static_cast<long>(i)), top.mul(c, top.pow(g, static_cast<long>(i) - 1))));
    }
    return std::make_pair(v, top.add(dv, top.mul(dp, dg)));
  };
  const auto [n, dn] = value_and_delta(e.num);
  if (e.den.empty()) return dn;
  const auto [d, dd] = value_and_delta(e.den);
  return top.div(top.sub(top.mul(dn, d), top.mul(n, dd)), top.mul(d, d));
}

void check_commutation(const DeltaSigmaField& k) {
  const Field& f = k.field;
  for (std::size_t i = 0; i < f.level(); ++i) {
    const Elem g = f.generator(i);
    if (k.delta(k.sigma.apply(g)) != k.sigma.apply(k.delta(g)))
      fail(ErrorKind::CommutationFails, "delta(sigma(" + f.step(i).name + ")) differs from sigma(delta(" + f.step(i).name + "))");
  }
}

std::string fresh_generator(const Field& f, const std::string& stem) {
  std::string name = stem;
  for (int k = 1; f.generator_index(name); ++k) name = stem + std::to_string(k);
  return name;
}

}  // namespace

Elem DeltaSigmaField::delta(const Elem& e) const { return delta_at(*this, field.level(), e); }

std::size_t DeltaSigmaField::constant_level() const {
  for (std::size_t i = 0; i < field.level(); ++i)
    if (field.step(i).kind == TowerStep::Kind::Transcendental) return i;
  return field.level();
}

DeltaSigmaField make_deltasigma_field(const Field& field, const std::map<std::string, Elem>& delta_images,
                                      const FieldMorphism& sigma) {
  if (!(sigma.source() == field) || !(sigma.target() == field))
    fail(ErrorKind::BaseMismatch, "sigma must be an endomorphism of the field");
  if (field.characteristic() != 0) fail(ErrorKind::OutOfScope, "delta-sigma fields are taken in characteristic zero");
  DeltaSigmaField k{field, {}, sigma};
  for (const auto& [name, img] : delta_images) {
    auto idx = field.generator_index(name);
    if (!idx) fail(ErrorKind::UnknownName, name);
    if (field.step(*idx).kind != TowerStep::Kind::Transcendental)
      fail(ErrorKind::InvalidArgument, "delta of the algebraic generator " + name + " is determined by its minimal polynomial");
  }
  for (std::size_t i = 0; i < field.level(); ++i) {
    if (field.step(i).kind == TowerStep::Kind::Algebraic) {
      k.delta_gen.push_back(std::nullopt);
      continue;
    }
    auto it = delta_images.find(field.step(i).name);
    k.delta_gen.push_back(it == delta_images.end() ? field.zero() : it->second);
  }
  check_commutation(k);
  return k;
}

std::optional<Elem> PVRing::square() const {
  if (shape != Shape::Quadratic) return std::nullopt;
  return ring.field.mul(y, y);
}

// ---------------------------------------------------------------- PV rings

PVRing pv_construct(const DeltaSigmaField& k, const Elem& a, int choice) {
  if (choice != 1 && choice != -1) fail(ErrorKind::InvalidArgument, "sigma choice must be +1 or -1");
  const Field& f = k.field;
  PVRing pv;
  pv.base = k;
  pv.a = a;
  pv.choice = choice;
  auto in_base = [&](const Elem& y) {
    pv.ring = k;
    pv.y = y;
    pv.sigma_factor = f.div(k.sigma.apply(y), y);
    pv.shape = PVRing::Shape::InBase;
    if (choice != 1) fail(ErrorKind::NoSigmaStructure, "the solution lies in the base, so sigma(y) is already determined");
    return pv;
  };
  if (f.is_zero(a)) return in_base(f.one());

  // a generator t with delta(t) = lambda t, lambda rational
  const auto ar = f.as_rational(a);
  for (std::size_t s = 0; s < f.level() && ar; ++s) {
    if (f.step(s).kind != TowerStep::Kind::Transcendental) continue;
    const Elem t = f.generator(s);
    const auto lambda = f.as_rational(f.div(k.delta(t), t));
    if (!lambda || *lambda == 0) continue;
    const Rational e2 = *ar * 2 / *lambda;
    if (e2.get_den() != 1) continue;
    const long two_e = e2.get_num().get_si();
    if (two_e % 2 == 0) return in_base(f.pow(t, two_e / 2));
    const Elem h = f.pow(t, two_e);
    if (auto sq = f.sqrt(h)) return in_base(*sq);
    const Field l = extend_algebraic(f, fresh_generator(f, "y"), {f.neg(h), f.zero(), f.one()});
    const auto root = f.sqrt(f.div(k.sigma.apply(h), h));
    if (!root) fail(ErrorKind::NoSigmaStructure, "sigma(y)^2 / y^2 has no square root in the base");
    const Elem plus = f.compare(*root, f.neg(*root)) == std::strong_ordering::greater ? *root : f.neg(*root);
    pv.sigma_factor = choice > 0 ? plus : f.neg(plus);
    const Elem y = l.generator(f.level());
    std::vector<Elem> images;
    for (std::size_t i = 0; i < f.level(); ++i) images.push_back(l.embed(k.sigma.apply(f.generator(i)), f.level()));
    images.push_back(l.mul(l.embed(pv.sigma_factor, f.level()), y));
    DeltaSigmaField ring{l, k.delta_gen, make_morphism(l, l, images)};
    for (auto& dg : ring.delta_gen)
      if (dg) dg = l.embed(*dg, f.level());
    ring.delta_gen.push_back(std::nullopt);
    check_commutation(ring);
    pv.ring = ring;
    pv.y = y;
    pv.shape = PVRing::Shape::Quadratic;
    return pv;
  }

  if (k.sigma.apply(a) != a) fail(ErrorKind::OutOfScope, "rank-one equation outside the supported shapes");
  const Field l = extend_transcendental(f, fresh_generator(f, "y"));
  const Elem y = l.generator(f.level());
  pv.sigma_factor = f.from_int(choice);
  std::vector<Elem> images;
  for (std::size_t i = 0; i < f.level(); ++i) images.push_back(l.embed(k.sigma.apply(f.generator(i)), f.level()));
  images.push_back(l.mul(l.from_int(choice), y));
  DeltaSigmaField ring{l, k.delta_gen, make_morphism_unchecked(l, l, images)};
  for (auto& dg : ring.delta_gen)
    if (dg) dg = l.embed(*dg, f.level());
  ring.delta_gen.push_back(l.mul(l.embed(a, f.level()), y));
  check_commutation(ring);
  pv.ring = ring;
  pv.y = y;
  pv.shape = PVRing::Shape::Transcendental;
  return pv;
}

// ---------------------------------------------------------------- D-matrix and isomorphisms

namespace {

void require_same_equation(const PVRing& r1, const PVRing& r2) {
  if (!(r1.base.field == r2.base.field)) fail(ErrorKind::BaseMismatch, "PV rings over different base fields");
  if (r1.a != r2.a) fail(ErrorKind::BaseMismatch, "PV rings for different equations");
}

// sigma^0(c) * ... * sigma^{l-1}(c)
Elem twisted_power(const DeltaSigmaField& k, const Elem& c, unsigned l) {
  Elem acc = k.field.one(), cur = c;
  for (unsigned i = 0; i < l; ++i) {
    acc = k.field.mul(acc, cur);
    cur = k.sigma.apply(cur);
  }
  return acc;
}

Elem sigma_pow(const DeltaSigmaField& k, const Elem& c, unsigned l) {
  Elem cur = c;
  for (unsigned i = 0; i < l; ++i) cur = k.sigma.apply(cur);
  return cur;
}

}  // namespace

DMatrix dmatrix(const PVRing& r1, const PVRing& r2) {
  require_same_equation(r1, r2);
  const DeltaSigmaField& k = r1.base;
  const Field& f = k.field;
  const PolyRing t(f, {"y1", "w1", "y2", "w2"});
  std::vector<Poly> rel{t.sub(t.mul(t.var(0), t.var(1)), t.one()), t.sub(t.mul(t.var(2), t.var(3)), t.one())};
  const PVRing* rs[2] = {&r1, &r2};
  for (std::size_t i = 0; i < 2; ++i) {
    const PVRing& r = *rs[i];
    const Poly yi = t.var(2 * i);
    if (r.shape == PVRing::Shape::InBase) rel.push_back(t.sub(yi, t.constant(r.y)));
    if (r.shape == PVRing::Shape::Quadratic) {
      const Elem h = r.ring.field.descend(*r.square(), f.level()).value();
      rel.push_back(t.sub(t.mul(yi, yi), t.constant(h)));
    }
  }
  const auto g = groebner(t, rel);
  DMatrix out;
  for (const auto& p : g) out.tensor_relations.push_back(t.to_string(p));

  auto delta = [&](const Poly& p) {
    std::vector<Term> terms;
    for (const auto& term : p.terms) {
      const long weight = static_cast<long>(term.mono[0]) - term.mono[1] + term.mono[2] - term.mono[3];
      const Elem c = f.add(k.delta(term.coeff), f.mul(term.coeff, f.mul(f.from_int(weight), r1.a)));
      if (!f.is_zero(c)) terms.push_back({term.mono, c});
    }
    return t.normalize(terms);
  };
  const Elem c1 = r1.sigma_factor, c2 = r2.sigma_factor;
  auto sigma = [&](const Poly& p) {
    std::vector<Term> terms;
    for (const auto& term : p.terms) {
      Elem c = k.sigma.apply(term.coeff);
      c = f.mul(c, f.pow(c1, static_cast<long>(term.mono[0]) - term.mono[1]));
      c = f.mul(c, f.pow(c2, static_cast<long>(term.mono[2]) - term.mono[3]));
      terms.push_back({term.mono, c});
    }
    return t.normalize(terms);
  };
  const Poly d = normal_form(t, t.mul(t.var(1), t.var(2)), g);
  out.d = t.to_string(d);
  out.delta_vanishes = t.is_zero(normal_form(t, delta(d), g));
  out.sigma_ratio = f.div(c2, c1);
  out.sigma_verified = t.is_zero(normal_form(t, t.sub(sigma(d), t.scale(d, out.sigma_ratio)), g));
  return out;
}

IsoSearch sigma_l_isomorphism_search(const PVRing& r1, const PVRing& r2, unsigned l_max) {
  require_same_equation(r1, r2);
  const DeltaSigmaField& k = r1.base;
  const Field& f = k.field;
  std::vector<Elem> cands;
  if (r1.shape != r2.shape) fail(ErrorKind::BaseMismatch, "PV rings presented with different shapes");
  if (r1.shape == PVRing::Shape::InBase) {
    cands.push_back(f.div(r1.y, r2.y));
  } else {
    // (c y2)^2 = y1^2 in the quadratic shape; constants +-1 otherwise
    Elem ratio = f.one();
    if (r1.shape == PVRing::Shape::Quadratic)
      ratio = f.div(r1.ring.field.descend(*r1.square(), f.level()).value(),
                    r2.ring.field.descend(*r2.square(), f.level()).value());
    const auto root = f.sqrt(ratio);
    if (root) {
      cands.push_back(*root);
      cands.push_back(f.neg(*root));
    }
  }
  std::sort(cands.begin(), cands.end(),
            [&](const Elem& x, const Elem& y) { return f.compare(x, y) == std::strong_ordering::greater; });
  IsoSearch out;
  std::vector<Elem> live;
  for (const auto& c : cands) {
    out.candidates.push_back(f.to_string(c));
    if (f.is_zero(k.delta(c))) live.push_back(c);
  }
  auto equivariant = [&](const Elem& c, unsigned l) {
    return f.mul(twisted_power(k, r1.sigma_factor, l), c) == f.mul(sigma_pow(k, c, l), twisted_power(k, r2.sigma_factor, l));
  };
  for (unsigned l = 1; l <= l_max && !out.minimal_l; ++l) {
    for (const auto& c : live) {
      if (!equivariant(c, l)) continue;
      out.minimal_l = l;
      out.map_factor = c;
      out.doubled_check = equivariant(c, 2 * l);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- linear algebra over a field

namespace {

using Matrix = std::vector<std::vector<Elem>>;

// Row-reduce in place; returns pivot columns.
std::vector<std::size_t> row_reduce(const Field& f, Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && f.is_zero(m[p][col])) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Elem inv = f.inv(m[row][col]);
    for (auto& x : m[row]) x = f.mul(x, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || f.is_zero(m[r][col])) continue;
      const Elem factor = m[r][col];
      for (std::size_t c = 0; c < ncols; ++c) m[r][c] = f.sub(m[r][c], f.mul(factor, m[row][c]));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Elem>> nullspace(const Field& f, Matrix m, std::size_t ncols) {
  const auto pivots = row_reduce(f, m, ncols);
  std::vector<std::vector<Elem>> out;
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(ncols, f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m[r][free]);
    out.push_back(v);
  }
  return out;
}

using Coords = std::map<std::pair<long, long>, Elem>;

// Laurent coordinates over the level `cl` of an element of k: monomials t^e y^j
// with t the generator of step cl and y the optional next generator.
Coords laurent_coords(const Field& top, std::size_t cl, const Elem& e) {
  const Field c = top.at_level(cl);
  auto in_t = [&](const Elem& x, long j, Coords& out) {
    const Field ct = top.at_level(cl + 1);
    if (ct.is_zero(x)) return;
    const UPoly& den = x.den;
    std::size_t k = 0;
    while (k < den.size() && c.is_zero(den[k])) ++k;
    if (k + 1 != den.size()) fail(ErrorKind::OutOfScope, "element is not a Laurent polynomial");
    const Elem u = c.inv(den[k]);
    for (std::size_t i = 0; i < x.num.size(); ++i)
      if (!c.is_zero(x.num[i])) out[{static_cast<long>(i) - static_cast<long>(k), j}] = c.mul(x.num[i], u);
  };
  Coords out;
  if (top.level() == cl + 1) {
    in_t(e, 0, out);
    return out;
  }
  if (top.level() != cl + 2) fail(ErrorKind::OutOfScope, "more than two generators above the constants");
  if (top.is_zero(e)) return out;
  const Field ct = top.at_level(cl + 1);
  long shift = 0;
  if (top.top_is_transcendental()) {
    std::size_t k = 0;
    while (k < e.den.size() && ct.is_zero(e.den[k])) ++k;
    if (k + 1 != e.den.size()) fail(ErrorKind::OutOfScope, "element is not a Laurent polynomial");
    shift = static_cast<long>(k);
  }
  for (std::size_t j = 0; j < e.num.size(); ++j) in_t(e.num[j], static_cast<long>(j) - shift, out);
  return out;
}

Matrix coordinate_matrix(const Field& c, const std::vector<Coords>& columns) {
  std::set<std::pair<long, long>> keys;
  for (const auto& col : columns)
    for (const auto& [key, v] : col) keys.insert(key);
  Matrix m;
  for (const auto& key : keys) {
    std::vector<Elem> row;
    for (const auto& col : columns) {
      auto it = col.find(key);
      row.push_back(it == col.end() ? c.zero() : it->second);
    }
    m.push_back(row);
  }
  return m;
}

}  // namespace

DeltaConstants delta_constants(const DeltaSigmaField& k, unsigned bound) {
  const Field& f = k.field;
  const std::size_t cl = k.constant_level();
  DeltaConstants out;
  out.bound = bound;
  if (cl == f.level()) {
    // algebraic over the prime field: delta vanishes identically
    out.basis.push_back(f.one());
    out.rendered.push_back("1");
    out.searched = 1;
    return out;
  }
  const Field c = f.at_level(cl);
  const Elem t = f.generator(cl);
  std::vector<long> js{0};
  if (f.level() == cl + 2) {
    js.clear();
    if (f.top_is_algebraic()) {
      for (long j = 0; j < upoly::degree(f.top().minpoly); ++j) js.push_back(j);
    } else {
      for (long j = -static_cast<long>(bound); j <= static_cast<long>(bound); ++j) js.push_back(j);
    }
  }
  std::vector<Elem> monomials;
  for (long e = -static_cast<long>(bound); e <= static_cast<long>(bound); ++e)
    for (long j : js) {
      Elem m = f.pow(t, e);
      if (f.level() == cl + 2) m = f.mul(m, f.pow(f.generator(cl + 1), j));
      monomials.push_back(m);
    }
  std::vector<Coords> cols;
  for (const auto& m : monomials) cols.push_back(laurent_coords(f, cl, k.delta(m)));
  out.searched = monomials.size();
  for (const auto& v : nullspace(c, coordinate_matrix(c, cols), monomials.size())) {
    Elem x = f.zero();
    for (std::size_t i = 0; i < v.size(); ++i) x = f.add(x, f.mul(f.embed(v[i], cl), monomials[i]));
    out.basis.push_back(x);
    out.rendered.push_back(f.to_string(x));
  }
  return out;
}

SeparabilityResult sigma_separability_witness(const DeltaSigmaField& k, const std::vector<Elem>& sample) {
  const Field& f = k.field;
  const std::size_t cl = k.constant_level();
  if (cl == f.level()) fail(ErrorKind::OutOfScope, "no transcendental generator above the constants");
  const Field c = f.at_level(cl);
  std::vector<Coords> cols, images;
  for (const auto& s : sample) {
    cols.push_back(laurent_coords(f, cl, s));
    images.push_back(laurent_coords(f, cl, k.sigma.apply(s)));
  }
  if (!nullspace(c, coordinate_matrix(c, cols), sample.size()).empty())
    fail(ErrorKind::SampleDependent, "the sample is linearly dependent over the constants");
  SeparabilityResult out;
  const auto ns = nullspace(c, coordinate_matrix(c, images), sample.size());
  out.pass = ns.empty();
  if (!ns.empty())
    for (const auto& x : ns.front()) out.dependency.push_back(f.embed(x, cl));
  return out;
}

// ---------------------------------------------------------------- constrained extensions

std::string verdict_name(ProbeResult::Verdict v) {
  switch (v) {
    case ProbeResult::Verdict::Simple: return "Simple";
    case ProbeResult::Verdict::NotSimple: return "NotSimple";
    case ProbeResult::Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

ProbeResult pseudo_simple_probe(const PresentedAlgebra& alg, unsigned candidate_bound) {
  ProbeResult out;
  if (alg.as_product) {
    out.verdict = ProbeResult::Verdict::Simple;
    out.searched = "product of " + std::to_string(alg.base.period()) + " fields permuted cyclically by sigma";
    return out;
  }
  if (alg.base.period() != 1) {
    out.searched = "presentations over pseudo-fields of period > 1 are not enumerated";
    return out;
  }
  const Field& k = alg.base.component(0);
  const FieldMorphism& s = alg.base.sigma_map(0);
  UPoly b = alg.invert;
  upoly::trim(k, b);
  if (b.empty()) fail(ErrorKind::InvalidArgument, "cannot invert zero");
  UPoly m = alg.relation.value_or(UPoly{});
  upoly::trim(k, m);
  if (m.empty()) {
    // K[c][1/b] with sigma(c) = c: (c - q) is a proper sigma-prime for any rational q with b(q) != 0
    for (long q = 0; q <= static_cast<long>(candidate_bound); ++q) {
      for (long v : {q, -q}) {
        if (!k.is_zero(upoly::eval(k, b, k.from_int(v)))) {
          out.verdict = ProbeResult::Verdict::NotSimple;
          out.witness = "(" + upoly::to_string(k, {k.from_int(-v), k.one()}, "c") + ")";
          out.searched = "linear ideals (c - q), |q| <= " + std::to_string(candidate_bound);
          return out;
        }
        if (q == 0) break;
      }
    }
    out.searched = "linear ideals (c - q), |q| <= " + std::to_string(candidate_bound);
    return out;
  }
  const auto fac = factor_univariate(k, m);
  std::vector<UPoly> alive;
  for (const auto& [p, mult] : fac.factors) {
    if (mult > 1) {
      out.searched = "relation is not square-free";
      return out;
    }
    if (upoly::degree(upoly::gcd(k, p, b)) > 0) continue;  // killed by inverting b
    alive.push_back(p);
  }
  out.searched = std::to_string(alive.size()) + " irreducible factors of the relation surviving 1/b";
  if (alive.empty()) return out;
  auto image = [&](const UPoly& p) {
    UPoly q;
    for (const auto& c : p) q.push_back(s.apply(c));
    return q;
  };
  std::vector<int> orbit(alive.size(), -1);
  int orbits = 0;
  for (std::size_t i = 0; i < alive.size(); ++i) {
    if (orbit[i] >= 0) continue;
    UPoly cur = alive[i];
    for (std::size_t step = 0; step <= alive.size(); ++step) {
      auto it = std::find(alive.begin(), alive.end(), cur);
      if (it == alive.end()) {
        out.searched += "; sigma does not permute the factors";
        return out;
      }
      const auto j = static_cast<std::size_t>(it - alive.begin());
      if (orbit[j] >= 0) break;
      orbit[j] = orbits;
      cur = image(cur);
    }
    ++orbits;
  }
  if (orbits == 1) {
    out.verdict = ProbeResult::Verdict::Simple;
    return out;
  }
  UPoly w{k.one()};
  for (std::size_t i = 0; i < alive.size(); ++i)
    if (orbit[i] == 0) w = upoly::mul(k, w, alive[i]);
  out.verdict = ProbeResult::Verdict::NotSimple;
  out.witness = "(" + upoly::to_string(k, w, "c") + ")";
  return out;
}

ConstraintWitness constraint_search(const PseudoField& k, const std::optional<UPoly>& minpoly, unsigned bound) {
  const Field& f = k.component(0);
  std::vector<UPoly> cands{{f.one()}};
  if (minpoly) {
    UPoly d = upoly::derivative(f, *minpoly);
    upoly::trim(f, d);
    if (!d.empty()) cands.push_back(d);
  }
  cands.push_back({f.zero(), f.one()});
  for (long q = 1; q <= static_cast<long>(bound); ++q) cands.push_back({f.from_int(-q), f.one()});
  ConstraintWitness out;
  for (const auto& b : cands) {
    const auto res = pseudo_simple_probe(PresentedAlgebra{k, minpoly, b, false}, bound);
    out.tried.push_back("b = " + upoly::to_string(f, b, "c") + ": " + verdict_name(res.verdict));
    if (res.verdict == ProbeResult::Verdict::Simple) {
      out.constrained = true;
      out.b = b;
      return out;
    }
  }
  return out;
}

}  // namespace sigchev
