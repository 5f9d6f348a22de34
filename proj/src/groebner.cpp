#include <algorithm>
#include <set>

#include "sigchev/poly.hpp"

namespace sigchev {

namespace {

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
  return m;
}

Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] - b[i];
  return m;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

Poly s_poly(const PolyRing& r, const Poly& f, const Poly& g) {
  const Monomial l = lcm(r.lead(f), r.lead(g));
  const Field& k = r.field();
  Poly a = r.mul_term(f, quotient(l, r.lead(f)), k.inv(r.lc(f)));
  Poly b = r.mul_term(g, quotient(l, r.lead(g)), k.inv(r.lc(g)));
  return r.sub(a, b);
}

void sort_basis(const PolyRing& r, std::vector<Poly>& basis) {
  std::sort(basis.begin(), basis.end(), [&](const Poly& a, const Poly& b) { return r.cmp(r.lead(a), r.lead(b)) < 0; });
}

}  // namespace

Poly normal_form(const PolyRing& r, const Poly& f, const std::vector<Poly>& divisors) {
  const Field& k = r.field();
  Poly p = f;
  std::vector<Term> rem;
  while (!p.terms.empty()) {
    const Term lt = p.terms.front();
    const Poly* hit = nullptr;
    for (const auto& g : divisors) {
      if (!g.terms.empty() && divides(r.lead(g), lt.mono)) {
        hit = &g;
        break;
      }
    }
    if (hit) {
      const Elem c = k.div(lt.coeff, r.lc(*hit));
      p = r.sub(p, r.mul_term(*hit, quotient(lt.mono, r.lead(*hit)), c));
    } else {
      rem.push_back(lt);
      p.terms.erase(p.terms.begin());
    }
  }
  return Poly{std::move(rem)};
}

std::vector<Poly> groebner(const PolyRing& r, const std::vector<Poly>& gens) {
  std::vector<Poly> basis;
  for (const auto& g : gens) {
    if (g.terms.empty()) continue;
    if (r.is_constant(g)) return {r.one()};
    basis.push_back(r.monic(g));
  }
  if (basis.empty()) return {};
  using Pair = std::pair<std::size_t, std::size_t>;
  std::set<Pair> pending;
  for (std::size_t j = 1; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});

  auto in_pending = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

  while (!pending.empty()) {
    // Normal selection strategy: smallest lcm first.
    auto best = pending.begin();
    Monomial best_lcm = lcm(r.lead(basis[best->first]), r.lead(basis[best->second]));
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = lcm(r.lead(basis[it->first]), r.lead(basis[it->second]));
      if (r.cmp(l, best_lcm) < 0) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    pending.erase(best);
    if (coprime(r.lead(basis[i]), r.lead(basis[j]))) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (divides(r.lead(basis[k]), best_lcm) && !in_pending(i, k) && !in_pending(j, k)) chain = true;
    }
    if (chain) continue;
    Poly h = normal_form(r, s_poly(r, basis[i], basis[j]), basis);
    if (h.terms.empty()) continue;
    if (r.is_constant(h)) return {r.one()};
    basis.push_back(r.monic(h));
    const std::size_t n = basis.size() - 1;
    for (std::size_t k = 0; k < n; ++k) pending.insert({k, n});
  }

  // Minimalize, then inter-reduce.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j || !divides(r.lead(basis[j]), r.lead(basis[i]))) continue;
      // equal leading monomials: keep the earlier one
      redundant = r.lead(basis[j]) != r.lead(basis[i]) || j < i;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const Poly& g = minimal[i];
    Poly tail{std::vector<Term>(g.terms.begin() + 1, g.terms.end())};
    Poly red = normal_form(r, tail, others);
    red.terms.insert(red.terms.begin(), g.terms.front());
    reduced.push_back(r.monic(red));
  }
  sort_basis(r, reduced);
  return reduced;
}

bool is_unit_ideal(const std::vector<Poly>& basis, const PolyRing& r) {
  return basis.size() == 1 && r.is_constant(basis[0]) && !basis[0].terms.empty();
}

bool ideal_contains(const PolyRing& r, const std::vector<Poly>& basis, const Poly& f) {
  return normal_form(r, f, basis).terms.empty();
}

bool ideals_equal(const PolyRing& r, const std::vector<Poly>& a, const std::vector<Poly>& b) {
  return groebner(r, a) == groebner(r, b);
}

std::vector<Poly> eliminate(const PolyRing& r, const std::vector<Poly>& gens, const std::vector<std::size_t>& drop) {
  std::vector<std::string> names;
  std::vector<bool> dropped(r.nvars(), false);
  for (auto v : drop) {
    if (v >= r.nvars()) fail(ErrorKind::InvalidArgument, "variable index out of range");
    if (!dropped[v]) names.push_back(r.var_names()[v]);
    dropped[v] = true;
  }
  const std::size_t block = names.size();
  for (std::size_t v = 0; v < r.nvars(); ++v)
    if (!dropped[v]) names.push_back(r.var_names()[v]);
  const PolyRing elim(r.field(), names, MonomialOrder::elimination(block));
  std::vector<Poly> mapped;
  for (const auto& g : gens) mapped.push_back(embed_poly(r, elim, g));
  std::vector<Poly> kept;
  for (const auto& g : groebner(elim, mapped)) {
    bool uses = false;
    for (std::size_t v = 0; v < block && !uses; ++v) uses = elim.uses_var(g, v);
    if (!uses) kept.push_back(embed_poly(elim, r, g));
  }
  return groebner(r, kept);
}

namespace {

std::string fresh_name(const PolyRing& r, const std::string& stem) {
  std::string name = stem;
  while (r.var_index(name)) name += "_";
  return name;
}

}  // namespace

std::vector<Poly> intersect(const PolyRing& r, const std::vector<Poly>& a, const std::vector<Poly>& b) {
  const std::string t = fresh_name(r, "_t");
  const PolyRing ext = extend_ring(r, {t}, r.order());
  const Poly tv = ext.var(t);
  const Poly one_minus_t = ext.sub(ext.one(), tv);
  std::vector<Poly> gens;
  for (const auto& g : a) gens.push_back(ext.mul(tv, embed_poly(r, ext, g)));
  for (const auto& g : b) gens.push_back(ext.mul(one_minus_t, embed_poly(r, ext, g)));
  std::vector<Poly> out;
  for (const auto& g : eliminate(ext, gens, {r.nvars()})) out.push_back(embed_poly(ext, r, g));
  return groebner(r, out);
}

std::vector<Poly> saturate(const PolyRing& r, const std::vector<Poly>& gens, const Poly& f) {
  const std::string z = fresh_name(r, "_z");
  const PolyRing ext = extend_ring(r, {z}, r.order());
  std::vector<Poly> all;
  for (const auto& g : gens) all.push_back(embed_poly(r, ext, g));
  all.push_back(ext.sub(ext.one(), ext.mul(ext.var(z), embed_poly(r, ext, f))));
  std::vector<Poly> out;
  for (const auto& g : eliminate(ext, all, {r.nvars()})) out.push_back(embed_poly(ext, r, g));
  return groebner(r, out);
}

}  // namespace sigchev
