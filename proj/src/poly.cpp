#include "sigchev/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sigchev {

namespace {

std::uint32_t deg_range(const Monomial& m, std::size_t lo, std::size_t hi) {
  std::uint32_t d = 0;
  for (std::size_t i = lo; i < hi; ++i) d += m[i];
  return d;
}

// degrevlex restricted to variables [lo, hi)
int cmp_degrevlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  const auto da = deg_range(a, lo, hi), db = deg_range(b, lo, hi);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

}  // namespace

PolyRing::PolyRing(Field k, std::vector<std::string> vars, MonomialOrder order)
    : field_(std::move(k)), vars_(std::move(vars)), order_(order) {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (std::size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i] == vars_[j]) fail(ErrorKind::DuplicateGenerator, vars_[i]);
  if (order_.block > vars_.size()) fail(ErrorKind::InvalidArgument, "elimination block larger than the ring");
}

std::optional<std::size_t> PolyRing::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

int PolyRing::cmp(const Monomial& a, const Monomial& b) const {
  switch (order_.kind) {
    case MonomialOrder::Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case MonomialOrder::Kind::DegRevLex:
      return cmp_degrevlex(a, b, 0, a.size());
    case MonomialOrder::Kind::Block:
      if (int c = cmp_degrevlex(a, b, 0, order_.block); c != 0) return c;
      return cmp_degrevlex(a, b, order_.block, a.size());
  }
  return 0;
}

Poly PolyRing::constant(const Elem& c) const {
  if (field_.is_zero(c)) return {};
  return Poly{{Term{Monomial(nvars(), 0), c}}};
}

Poly PolyRing::var(std::size_t i) const {
  Monomial m(nvars(), 0);
  m.at(i) = 1;
  return Poly{{Term{std::move(m), field_.one()}}};
}

Poly PolyRing::var(const std::string& name) const {
  auto i = var_index(name);
  if (!i) fail(ErrorKind::UnknownName, name);
  return var(*i);
}

Poly PolyRing::term(Monomial mono, const Elem& c) const {
  if (field_.is_zero(c)) return {};
  return Poly{{Term{std::move(mono), c}}};
}

Poly PolyRing::normalize(std::vector<Term> terms) const {
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return cmp(a.mono, b.mono) > 0; });
  Poly out;
  for (auto& t : terms) {
    if (!out.terms.empty() && out.terms.back().mono == t.mono) {
      out.terms.back().coeff = field_.add(out.terms.back().coeff, t.coeff);
      if (field_.is_zero(out.terms.back().coeff)) out.terms.pop_back();
    } else if (!field_.is_zero(t.coeff)) {
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  Poly out;
  out.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size()) {
      out.terms.push_back(a.terms[i++]);
    } else if (i == a.terms.size()) {
      out.terms.push_back(b.terms[j++]);
    } else {
      const int c = cmp(a.terms[i].mono, b.terms[j].mono);
      if (c > 0) {
        out.terms.push_back(a.terms[i++]);
      } else if (c < 0) {
        out.terms.push_back(b.terms[j++]);
      } else {
        Elem s = field_.add(a.terms[i].coeff, b.terms[j].coeff);
        if (!field_.is_zero(s)) out.terms.push_back(Term{a.terms[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
  }
  return out;
}

Poly PolyRing::neg(const Poly& a) const {
  Poly out = a;
  for (auto& t : out.terms) t.coeff = field_.neg(t.coeff);
  return out;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyRing::scale(const Poly& a, const Elem& c) const {
  if (field_.is_zero(c)) return {};
  Poly out = a;
  for (auto& t : out.terms) t.coeff = field_.mul(t.coeff, c);
  return out;
}

Poly PolyRing::mul_term(const Poly& a, const Monomial& m, const Elem& c) const {
  if (field_.is_zero(c)) return {};
  Poly out;
  out.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) {
    Monomial mm = t.mono;
    for (std::size_t i = 0; i < mm.size(); ++i) mm[i] += m[i];
    out.terms.push_back(Term{std::move(mm), field_.mul(t.coeff, c)});
  }
  return out;  // monomial orders are multiplicative, so the order is kept
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.terms.size() < b.terms.size()) return mul(b, a);
  Poly out;
  for (const auto& t : b.terms) out = add(out, mul_term(a, t.mono, t.coeff));
  return out;
}

Poly PolyRing::pow(const Poly& a, unsigned exponent) const {
  Poly result = one();
  Poly base = a;
  while (exponent > 0) {
    if (exponent & 1u) result = mul(result, base);
    exponent >>= 1u;
    if (exponent) base = mul(base, base);
  }
  return result;
}

Poly PolyRing::monic(const Poly& a) const {
  if (a.terms.empty()) return a;
  return scale(a, field_.inv(a.terms.front().coeff));
}

bool PolyRing::is_constant(const Poly& a) const {
  return a.terms.empty() || (a.terms.size() == 1 && deg_range(a.terms[0].mono, 0, nvars()) == 0);
}

std::uint32_t PolyRing::degree_in(const Poly& a, std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : a.terms) d = std::max(d, t.mono[var]);
  return d;
}

std::uint32_t PolyRing::total_degree(const Poly& a) const {
  std::uint32_t d = 0;
  for (const auto& t : a.terms) d = std::max(d, deg_range(t.mono, 0, nvars()));
  return d;
}

std::vector<std::size_t> PolyRing::support(const Poly& a) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < nvars(); ++v)
    if (uses_var(a, v)) out.push_back(v);
  return out;
}

std::vector<Poly> PolyRing::coefficients_in(const Poly& a, std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree_in(a, var) + 1);
  for (const auto& t : a.terms) {
    Term u = t;
    u.mono[var] = 0;
    buckets[t.mono[var]].push_back(std::move(u));
  }
  std::vector<Poly> out;
  for (auto& b : buckets) out.push_back(normalize(std::move(b)));
  return out;
}

std::string PolyRing::monomial_string(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars_[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

std::string PolyRing::to_string(const Poly& a) const {
  if (a.terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : a.terms) {
    std::string cs = field_.to_string(t.coeff);
    bool negative = false;
    if (cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos) {
      cs = "(" + cs + ")";
    } else if (cs[0] == '-') {
      negative = true;
      cs = cs.substr(1);
    }
    const std::string ms = monomial_string(t.mono);
    std::string body;
    if (ms.empty()) body = cs;
    else if (cs == "1") body = ms;
    else body = cs + "*" + ms;
    if (first) out << (negative ? "-" : "") << body;
    else out << (negative ? " - " : " + ") << body;
    first = false;
  }
  return out.str();
}

Poly substitute(const PolyRing& from, const PolyRing& to, const Poly& a, const std::vector<Poly>& images,
                const CoeffMap& coeff) {
  if (images.size() != from.nvars()) fail(ErrorKind::InvalidArgument, "one image per variable is required");
  const std::size_t from_level = from.field().level();
  auto map_coeff = [&](const Elem& c) {
    if (coeff) return coeff(c);
    return to.field().embed(c, from_level);
  };
  // Cache powers of each image.
  std::vector<std::vector<Poly>> powers(from.nvars());
  auto power = [&](std::size_t v, std::uint32_t e) -> const Poly& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(to.one());
    while (list.size() <= e) list.push_back(to.mul(list.back(), images[v]));
    return list[e];
  };
  Poly out;
  for (const auto& t : a.terms) {
    Poly acc = to.constant(map_coeff(t.coeff));
    for (std::size_t v = 0; v < from.nvars() && !acc.terms.empty(); ++v)
      if (t.mono[v] > 0) acc = to.mul(acc, power(v, t.mono[v]));
    out = to.add(out, acc);
  }
  return out;
}

PolyRing extend_ring(const PolyRing& r, const std::vector<std::string>& extra, MonomialOrder order) {
  std::vector<std::string> vars = r.var_names();
  vars.insert(vars.end(), extra.begin(), extra.end());
  return PolyRing(r.field(), vars, order);
}

Poly embed_poly(const PolyRing& from, const PolyRing& to, const Poly& a) {
  std::vector<std::optional<std::size_t>> target(from.nvars());
  for (std::size_t i = 0; i < from.nvars(); ++i) target[i] = to.var_index(from.var_names()[i]);
  const bool same_field = from.field() == to.field();
  if (!same_field && !from.field().is_subfield_of(to.field()))
    fail(ErrorKind::BaseMismatch, "coefficient field does not embed");
  std::vector<Term> terms;
  terms.reserve(a.terms.size());
  for (const auto& t : a.terms) {
    Monomial m(to.nvars(), 0);
    for (std::size_t i = 0; i < from.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!target[i]) fail(ErrorKind::UnknownName, from.var_names()[i]);
      m[*target[i]] = t.mono[i];
    }
    terms.push_back(Term{std::move(m), same_field ? t.coeff : to.field().embed(t.coeff, from.field().level())});
  }
  return to.normalize(std::move(terms));
}

}  // namespace sigchev
