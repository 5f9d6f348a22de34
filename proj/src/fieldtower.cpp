#include "sigchev/fieldtower.hpp"

#include <algorithm>
#include <sstream>

namespace sigchev {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::UnsupportedFactorization: return "UnsupportedFactorization";
    case ErrorKind::DuplicateGenerator: return "DuplicateGenerator";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::CyclicStructureBroken: return "CyclicStructureBroken";
    case ErrorKind::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorKind::CoefficientNotField: return "CoefficientNotField";
    case ErrorKind::AmbientNotClosed: return "AmbientNotClosed";
    case ErrorKind::PreimageNotComputable: return "PreimageNotComputable";
    case ErrorKind::FiberNotFinite: return "FiberNotFinite";
    case ErrorKind::ConditionOneFails: return "ConditionOneFails";
    case ErrorKind::NotPrimeInScope: return "NotPrimeInScope";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::CommutationFails: return "CommutationFails";
    case ErrorKind::NoSigmaStructure: return "NoSigmaStructure";
    case ErrorKind::OutOfScope: return "OutOfScope";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::SampleDependent: return "SampleDependent";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Rational reduce_mod(const Rational& r, std::uint64_t p) {
  Integer mod(static_cast<unsigned long>(p));
  Integer n = r.get_num() % mod;
  if (n < 0) n += mod;
  Integer d = r.get_den() % mod;
  if (d < 0) d += mod;
  if (d == 0) fail(ErrorKind::InvalidArgument, "denominator divisible by the characteristic");
  Integer dinv;
  mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
  Integer v = (n * dinv) % mod;
  return Rational(v);
}

bool wrap_needed(const std::string& s) {
  return s.find(' ') != std::string::npos || s.find('/') != std::string::npos;
}

}  // namespace

// ---------------------------------------------------------------- construction

Field make_prime_field(std::uint64_t characteristic) {
  if (characteristic != 0 && !is_prime(characteristic))
    fail(ErrorKind::NonPrimeCharacteristic, std::to_string(characteristic) + " is not prime");
  auto data = std::make_shared<TowerData>();
  data->characteristic = characteristic;
  return Field(std::move(data), 0);
}

Field append_step_unchecked(const Field& base, TowerStep step) {
  auto data = std::make_shared<TowerData>();
  data->characteristic = base.characteristic();
  data->steps.assign(base.data_->steps.begin(), base.data_->steps.begin() + static_cast<long>(base.level()));
  data->steps.push_back(std::make_shared<const TowerStep>(std::move(step)));
  const std::size_t level = data->steps.size();
  return Field(std::move(data), level);
}

Field extend_transcendental(const Field& base, const std::string& name) {
  if (base.generator_index(name)) fail(ErrorKind::DuplicateGenerator, name);
  return append_step_unchecked(base, TowerStep{TowerStep::Kind::Transcendental, name, {}});
}

Field extend_algebraic(const Field& base, const std::string& name, const UPoly& minpoly) {
  if (base.generator_index(name)) fail(ErrorKind::DuplicateGenerator, name);
  UPoly m = minpoly;
  upoly::trim(base, m);
  if (upoly::degree(m) < 2) fail(ErrorKind::InvalidArgument, "minimal polynomial must have degree >= 2");
  if (!base.is_one(m.back())) fail(ErrorKind::InvalidArgument, "minimal polynomial must be monic");
  if (!is_irreducible(base, m))
    fail(ErrorKind::ReduciblePolynomial, upoly::to_string(base, m, name) + " is reducible");
  return append_step_unchecked(base, TowerStep{TowerStep::Kind::Algebraic, name, std::move(m)});
}

// ---------------------------------------------------------------- structure

Field Field::base() const {
  if (level_ == 0) fail(ErrorKind::InvalidArgument, "prime field has no base");
  return Field(data_, level_ - 1);
}

Field Field::at_level(std::size_t level) const {
  if (level > level_) fail(ErrorKind::InvalidArgument, "level above the field");
  return Field(data_, level);
}

bool Field::has_transcendental_step() const {
  for (std::size_t i = 0; i < level_; ++i)
    if (step(i).kind == TowerStep::Kind::Transcendental) return true;
  return false;
}

std::vector<std::string> Field::generator_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < level_; ++i) out.push_back(step(i).name);
  return out;
}

std::optional<std::size_t> Field::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < level_; ++i)
    if (step(i).name == name) return i;
  return std::nullopt;
}

bool Field::is_subfield_of(const Field& other) const {
  if (!data_ || !other.data_) return false;
  if (characteristic() != other.characteristic() || level_ > other.level_) return false;
  for (std::size_t i = 0; i < level_; ++i) {
    const auto& a = data_->steps[i];
    const auto& b = other.data_->steps[i];
    if (a == b) continue;
    if (a->kind != b->kind || a->name != b->name || a->minpoly != b->minpoly) return false;
  }
  return true;
}

std::optional<std::uint64_t> Field::absolute_degree() const { return degree_over(at_level(0)); }

std::optional<std::uint64_t> Field::degree_over(const Field& sub) const {
  if (!sub.is_subfield_of(*this)) fail(ErrorKind::BaseMismatch, "not a subfield");
  std::uint64_t d = 1;
  for (std::size_t i = sub.level(); i < level_; ++i) {
    if (step(i).kind == TowerStep::Kind::Transcendental) return std::nullopt;
    d *= static_cast<std::uint64_t>(upoly::degree(step(i).minpoly));
  }
  return d;
}

std::optional<std::uint64_t> Field::size() const {
  if (!is_finite()) return std::nullopt;
  std::uint64_t n = 1;
  const std::uint64_t deg = *absolute_degree();
  for (std::uint64_t i = 0; i < deg; ++i) {
    if (n > (std::uint64_t{1} << 40) / characteristic()) return std::nullopt;
    n *= characteristic();
  }
  return n;
}

std::vector<Elem> Field::elements(std::uint64_t limit) const {
  auto n = size();
  if (!n || *n > limit) fail(ErrorKind::UnsupportedFactorization, "field too large to enumerate");
  if (level_ == 0) {
    std::vector<Elem> out;
    for (std::uint64_t i = 0; i < characteristic(); ++i) out.push_back(from_rational(Rational(static_cast<unsigned long>(i))));
    return out;
  }
  const Field b = base();
  const auto lower = b.elements(limit);
  const auto deg = static_cast<std::size_t>(upoly::degree(top().minpoly));
  std::vector<Elem> out;
  std::vector<std::size_t> idx(deg, 0);
  while (true) {
    UPoly coords;
    for (std::size_t i = 0; i < deg; ++i) coords.push_back(lower[idx[i]]);
    upoly::trim(b, coords);
    out.push_back(Elem{0, std::move(coords), {}});
    std::size_t k = 0;
    while (k < deg && ++idx[k] == lower.size()) idx[k++] = 0;
    if (k == deg) break;
  }
  return out;
}

// ---------------------------------------------------------------- elements

Elem Field::one() const { return from_rational(Rational(1)); }

Elem Field::from_rational(const Rational& value) const {
  Elem base_elem;
  base_elem.q = characteristic() == 0 ? value : reduce_mod(value, characteristic());
  return embed(base_elem, 0);
}

Elem Field::generator(std::size_t index) const {
  if (index >= level_) fail(ErrorKind::InvalidArgument, "generator index out of range");
  const Field below = at_level(index);
  Elem g;
  g.num = {below.zero(), below.one()};
  if (step(index).kind == TowerStep::Kind::Transcendental) g.den = {below.one()};
  return embed(g, index + 1);
}

Elem Field::embed(const Elem& e, std::size_t from_level) const {
  if (from_level > level_) fail(ErrorKind::InvalidArgument, "cannot embed from a higher level");
  Elem cur = e;
  for (std::size_t lvl = from_level + 1; lvl <= level_; ++lvl) {
    const Field below = at_level(lvl - 1);
    if (below.is_zero(cur)) {
      cur = Elem{};
      continue;
    }
    Elem next;
    next.num = {std::move(cur)};
    if (step(lvl - 1).kind == TowerStep::Kind::Transcendental) next.den = {below.one()};
    cur = std::move(next);
  }
  return cur;
}

std::optional<Elem> Field::descend(const Elem& e, std::size_t to_level) const {
  Elem cur = e;
  for (std::size_t lvl = level_; lvl > to_level; --lvl) {
    const Field here = at_level(lvl);
    if (here.is_zero(cur)) {
      cur = Elem{};
      continue;
    }
    if (cur.num.size() != 1) return std::nullopt;
    if (step(lvl - 1).kind == TowerStep::Kind::Transcendental && !(cur.den.size() == 1)) return std::nullopt;
    Elem next = cur.num[0];
    cur = std::move(next);
  }
  return cur;
}

bool Field::is_zero(const Elem& e) const { return level_ == 0 ? sgn(e.q) == 0 : e.num.empty(); }

Elem Field::normalize_fraction(UPoly num, UPoly den) const {
  const Field b = base();
  upoly::trim(b, num);
  upoly::trim(b, den);
  if (den.empty()) fail(ErrorKind::InvalidArgument, "division by zero");
  if (num.empty()) return Elem{};
  if (upoly::degree(den) > 0 && upoly::degree(num) > 0) {
    UPoly g = upoly::gcd(b, num, den);
    if (upoly::degree(g) > 0) {
      num = upoly::divmod(b, num, g).first;
      den = upoly::divmod(b, den, g).first;
    }
  }
  const Elem lc_inv = b.inv(den.back());
  Elem out;
  out.num = upoly::scale(b, num, lc_inv);
  out.den = upoly::scale(b, den, lc_inv);
  return out;
}

Elem Field::add(const Elem& a, const Elem& b) const {
  if (level_ == 0) {
    Elem r;
    r.q = a.q + b.q;
    if (characteristic() != 0) r.q = reduce_mod(r.q, characteristic());
    return r;
  }
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  const Field bs = base();
  if (top_is_algebraic()) {
    Elem r;
    r.num = upoly::add(bs, a.num, b.num);
    return r;
  }
  if (a.den == b.den) return normalize_fraction(upoly::add(bs, a.num, b.num), a.den);
  return normalize_fraction(upoly::add(bs, upoly::mul(bs, a.num, b.den), upoly::mul(bs, b.num, a.den)),
                            upoly::mul(bs, a.den, b.den));
}

Elem Field::neg(const Elem& a) const {
  if (level_ == 0) {
    Elem r;
    r.q = -a.q;
    if (characteristic() != 0) r.q = reduce_mod(r.q, characteristic());
    return r;
  }
  if (is_zero(a)) return a;
  Elem r;
  r.num = upoly::neg(base(), a.num);
  r.den = a.den;
  return r;
}

Elem Field::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Field::mul(const Elem& a, const Elem& b) const {
  if (level_ == 0) {
    Elem r;
    r.q = a.q * b.q;
    if (characteristic() != 0) r.q = reduce_mod(r.q, characteristic());
    return r;
  }
  if (is_zero(a) || is_zero(b)) return Elem{};
  const Field bs = base();
  if (top_is_algebraic()) {
    Elem r;
    r.num = upoly::rem(bs, upoly::mul(bs, a.num, b.num), top().minpoly);
    return r;
  }
  if (upoly::degree(a.den) == 0 && upoly::degree(b.den) == 0) {
    Elem r;
    r.num = upoly::mul(bs, a.num, b.num);
    r.den = a.den;
    return r;
  }
  return normalize_fraction(upoly::mul(bs, a.num, b.num), upoly::mul(bs, a.den, b.den));
}

Elem Field::inv(const Elem& a) const {
  if (is_zero(a)) fail(ErrorKind::InvalidArgument, "inverse of zero");
  if (level_ == 0) {
    Elem r;
    r.q = 1 / a.q;
    if (characteristic() != 0) r.q = reduce_mod(r.q, characteristic());
    return r;
  }
  const Field bs = base();
  if (top_is_algebraic()) {
    auto [g, s, t] = upoly::xgcd(bs, a.num, top().minpoly);
    if (upoly::degree(g) != 0) fail(ErrorKind::NotWellDefined, "minimal polynomial is not irreducible");
    Elem r;
    r.num = upoly::scale(bs, s, bs.inv(g[0]));
    return r;
  }
  return normalize_fraction(a.den, a.num);
}

Elem Field::pow(const Elem& a, long exponent) const {
  if (exponent < 0) return pow(inv(a), -exponent);
  Elem result = one();
  Elem b = a;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, b);
    exponent >>= 1;
    if (exponent) b = mul(b, b);
  }
  return result;
}

std::strong_ordering Field::compare(const Elem& a, const Elem& b) const {
  if (level_ == 0) {
    const int c = cmp(a.q, b.q);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  const Field bs = base();
  if (auto c = upoly::compare(bs, a.num, b.num); c != 0) return c;
  return upoly::compare(bs, a.den, b.den);
}

std::optional<Rational> Field::as_rational(const Elem& e) const {
  auto d = descend(e, 0);
  if (!d) return std::nullopt;
  return d->q;
}

std::string Field::to_string(const Elem& e) const {
  if (level_ == 0) return e.q.get_str();
  if (is_zero(e)) return "0";
  const Field bs = base();
  std::string num = upoly::to_string(bs, e.num, top().name);
  if (top_is_algebraic() || e.den.size() == 1) return num;
  return "(" + num + ")/(" + upoly::to_string(bs, e.den, top().name) + ")";
}

// ---------------------------------------------------------------- square roots

namespace {

std::optional<Elem> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return std::nullopt;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  Elem out;
  out.q = Rational(n, d);
  out.q.canonicalize();
  return out;
}

// Square root of a polynomial over f, determined from the top coefficient down.
std::optional<UPoly> poly_sqrt(const Field& f, const UPoly& p) {
  if (p.empty()) return UPoly{};
  const long deg = upoly::degree(p);
  if (deg % 2 != 0) return std::nullopt;
  const auto lead = f.sqrt(p.back());
  if (!lead) return std::nullopt;
  const long m = deg / 2;
  UPoly s(static_cast<std::size_t>(m + 1), f.zero());
  s[static_cast<std::size_t>(m)] = *lead;
  const Elem two_lead_inv = f.inv(f.add(*lead, *lead));
  for (long k = 1; k <= m; ++k) {
    // coefficient of y^(2m-k) in s^2 = 2 s_m s_{m-k} + sum_{0<i<k} s_{m-i} s_{m-k+i}
    Elem acc = p[static_cast<std::size_t>(2 * m - k)];
    for (long i = 1; i < k; ++i)
      acc = f.sub(acc, f.mul(s[static_cast<std::size_t>(m - i)], s[static_cast<std::size_t>(m - k + i)]));
    s[static_cast<std::size_t>(m - k)] = f.mul(acc, two_lead_inv);
  }
  upoly::trim(f, s);
  if (upoly::mul(f, s, s) != p) return std::nullopt;
  return s;
}

}  // namespace

std::optional<Elem> Field::sqrt(const Elem& a) const {
  if (is_zero(a)) return a;
  if (is_finite()) {
    if (*size() > (1u << 16)) fail(ErrorKind::UnsupportedFactorization, "finite field too large for root search");
    for (const auto& e : elements())
      if (mul(e, e) == a) return e;
    return std::nullopt;
  }
  if (level_ == 0) return rational_sqrt(a.q);
  if (characteristic() == 2) fail(ErrorKind::UnsupportedFactorization, "square roots in characteristic 2");
  const Field bs = base();
  if (top_is_transcendental()) {
    auto n = poly_sqrt(bs, a.num);
    if (!n) return std::nullopt;
    auto d = poly_sqrt(bs, a.den);
    if (!d) return std::nullopt;
    return normalize_fraction(*n, *d);
  }
  const UPoly& m = top().minpoly;
  if (upoly::degree(m) != 2)
    fail(ErrorKind::UnsupportedFactorization, "square roots over algebraic steps of degree > 2");
  // Shift the generator so that g' = g + b1/2 satisfies g'^2 = disc.
  const Elem half = bs.from_rational(Rational(1, 2));
  const Elem shift = bs.mul(m[1], half);
  const Elem disc = bs.sub(bs.mul(shift, shift), m[0]);
  const Elem u = a.num.size() > 0 ? a.num[0] : bs.zero();
  const Elem v = a.num.size() > 1 ? a.num[1] : bs.zero();
  const Elem u1 = bs.sub(u, bs.mul(v, shift));  // a = u1 + v * g'
  auto assemble = [&](const Elem& s, const Elem& t) {
    // s + t g' = (s + t*shift) + t g
    UPoly coords{bs.add(s, bs.mul(t, shift)), t};
    upoly::trim(bs, coords);
    return Elem{0, std::move(coords), {}};
  };
  std::optional<Elem> result;
  if (bs.is_zero(v)) {
    if (auto s = bs.sqrt(u1)) {
      result = assemble(*s, bs.zero());
    } else if (auto t = bs.sqrt(bs.div(u1, disc))) {
      result = assemble(bs.zero(), *t);
    }
  } else {
    const Elem norm = bs.sub(bs.mul(u1, u1), bs.mul(disc, bs.mul(v, v)));
    if (auto r = bs.sqrt(norm)) {
      const Elem denom = bs.inv(bs.add(disc, disc));
      for (const Elem& cand : {bs.mul(bs.add(u1, *r), denom), bs.mul(bs.sub(u1, *r), denom)}) {
        if (bs.is_zero(cand)) continue;
        if (auto t = bs.sqrt(cand)) {
          const Elem s = bs.div(v, bs.add(*t, *t));
          result = assemble(s, *t);
          break;
        }
      }
    }
  }
  if (result && mul(*result, *result) != a) fail(ErrorKind::NotWellDefined, "square root verification failed");
  return result;
}

// ---------------------------------------------------------------- univariate polynomials

namespace upoly {

void trim(const Field& f, UPoly& p) {
  while (!p.empty() && f.is_zero(p.back())) p.pop_back();
}

UPoly constant(const Field& f, const Elem& c) { return f.is_zero(c) ? UPoly{} : UPoly{c}; }

UPoly monomial(const Field& f, const Elem& c, std::size_t deg) {
  if (f.is_zero(c)) return {};
  UPoly p(deg + 1, f.zero());
  p[deg] = c;
  return p;
}

UPoly x(const Field& f) { return {f.zero(), f.one()}; }

UPoly add(const Field& f, const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size()) r[i] = f.add(a[i], b[i]);
    else r[i] = i < a.size() ? a[i] : b[i];
  }
  trim(f, r);
  return r;
}

UPoly neg(const Field& f, const UPoly& a) {
  UPoly r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(f.neg(c));
  return r;
}

UPoly sub(const Field& f, const UPoly& a, const UPoly& b) { return add(f, a, neg(f, b)); }

UPoly mul(const Field& f, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (f.is_zero(b[j])) continue;
      r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
  }
  trim(f, r);
  return r;
}

UPoly scale(const Field& f, const UPoly& a, const Elem& c) {
  if (f.is_zero(c)) return {};
  UPoly r;
  r.reserve(a.size());
  for (const auto& e : a) r.push_back(f.mul(e, c));
  trim(f, r);
  return r;
}

UPoly pow(const Field& f, const UPoly& a, unsigned exponent) {
  UPoly r = constant(f, f.one());
  for (unsigned i = 0; i < exponent; ++i) r = mul(f, r, a);
  return r;
}

std::pair<UPoly, UPoly> divmod(const Field& f, const UPoly& a, const UPoly& b) {
  if (b.empty()) fail(ErrorKind::InvalidArgument, "polynomial division by zero");
  UPoly r = a;
  trim(f, r);
  if (r.size() < b.size()) return {{}, r};
  UPoly q(r.size() - b.size() + 1, f.zero());
  const Elem lc_inv = f.inv(b.back());
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Elem c = f.mul(r.back(), lc_inv);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = f.sub(r[shift + i], f.mul(c, b[i]));
    r.pop_back();
    trim(f, r);
  }
  trim(f, q);
  return {q, r};
}

UPoly rem(const Field& f, const UPoly& a, const UPoly& b) {
  if (a.size() < b.size()) return a;
  return divmod(f, a, b).second;
}

UPoly monic(const Field& f, const UPoly& a) {
  if (a.empty()) return a;
  return scale(f, a, f.inv(a.back()));
}

UPoly gcd(const Field& f, const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  trim(f, x);
  trim(f, y);
  while (!y.empty()) {
    UPoly r = rem(f, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(f, x);
}

std::tuple<UPoly, UPoly, UPoly> xgcd(const Field& f, const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0 = constant(f, f.one()), s1{};
  UPoly t0{}, t1 = constant(f, f.one());
  trim(f, r0);
  trim(f, r1);
  while (!r1.empty()) {
    auto [q, r] = divmod(f, r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, sub(f, s0, mul(f, q, s1)));
    t0 = std::exchange(t1, sub(f, t0, mul(f, q, t1)));
  }
  if (r0.empty()) return {r0, s0, t0};
  const Elem inv = f.inv(r0.back());
  return {scale(f, r0, inv), scale(f, s0, inv), scale(f, t0, inv)};
}

UPoly derivative(const Field& f, const UPoly& a) {
  UPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(f.mul(f.from_int(static_cast<long>(i)), a[i]));
  trim(f, r);
  return r;
}

Elem eval(const Field& f, const UPoly& a, const Elem& at) {
  Elem acc = f.zero();
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = f.add(f.mul(acc, at), *it);
  return acc;
}

Elem eval_in(const Field& g, const UPoly& a, std::size_t coeff_level, const Elem& at) {
  Elem acc = g.zero();
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = g.add(g.mul(acc, at), g.embed(*it, coeff_level));
  return acc;
}

UPoly embed(const Field& big, const UPoly& a, std::size_t from_level) {
  UPoly r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(big.embed(c, from_level));
  return r;
}

std::strong_ordering compare(const Field& f, const UPoly& a, const UPoly& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (auto c = f.compare(a[i], b[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

std::string to_string(const Field& f, const UPoly& a, const std::string& var) {
  if (a.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = a.size(); k-- > 0;) {
    if (f.is_zero(a[k])) continue;
    std::string cs = f.to_string(a[k]);
    bool negative = false;
    if (wrap_needed(cs)) {
      cs = "(" + cs + ")";
    } else if (!cs.empty() && cs[0] == '-') {
      negative = true;
      cs = cs.substr(1);
    }
    std::string term;
    const std::string power = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (k == 0) term = cs;
    else if (cs == "1") term = power;
    else term = cs + "*" + power;
    if (first) out << (negative ? "-" : "") << term;
    else out << (negative ? " - " : " + ") << term;
    first = false;
  }
  return out.str();
}

}  // namespace upoly

// ---------------------------------------------------------------- morphisms

Elem FieldMorphism::apply_at(const Elem& e, std::size_t level) const {
  if (level > images_.size()) fail(ErrorKind::InvalidArgument, "morphism not defined at this level");
  if (level == 0) return target_.from_rational(e.q);
  const Field src = source_.at_level(level);
  if (src.is_zero(e)) return target_.zero();
  const Elem& img = images_[level - 1];
  auto horner = [&](const UPoly& p) {
    Elem acc = target_.zero();
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = target_.add(target_.mul(acc, img), apply_at(*it, level - 1));
    return acc;
  };
  const Elem num = horner(e.num);
  if (src.top_is_algebraic()) return num;
  const Elem den = horner(e.den);
  if (target_.is_zero(den)) fail(ErrorKind::NotWellDefined, "denominator maps to zero");
  return target_.div(num, den);
}

UPoly FieldMorphism::apply(const UPoly& p, std::size_t level) const {
  UPoly r;
  r.reserve(p.size());
  for (const auto& c : p) r.push_back(apply_at(c, level));
  upoly::trim(target_, r);
  return r;
}

bool FieldMorphism::is_identity() const {
  if (!(source_ == target_)) return false;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != target_.generator(i)) return false;
  return true;
}

FieldMorphism make_morphism_unchecked(const Field& source, const Field& target, std::vector<Elem> images) {
  if (source.characteristic() != target.characteristic())
    fail(ErrorKind::NotWellDefined, "characteristics differ");
  FieldMorphism m;
  m.source_ = source;
  m.target_ = target;
  m.images_ = std::move(images);
  return m;
}

FieldMorphism make_morphism(const Field& source, const Field& target, std::vector<Elem> images) {
  if (images.size() != source.level())
    fail(ErrorKind::InvalidArgument, "one image per generator is required");
  FieldMorphism m = make_morphism_unchecked(source, target, std::move(images));
  for (std::size_t i = 0; i < source.level(); ++i) {
    const TowerStep& st = source.step(i);
    if (st.kind != TowerStep::Kind::Algebraic) continue;
    Elem acc = target.zero();
    for (auto it = st.minpoly.rbegin(); it != st.minpoly.rend(); ++it)
      acc = target.add(target.mul(acc, m.images()[i]), m.apply_at(*it, i));
    if (!target.is_zero(acc)) fail(ErrorKind::NotWellDefined, st.name);
  }
  return m;
}

FieldMorphism identity_morphism(const Field& f) {
  std::vector<Elem> images;
  for (std::size_t i = 0; i < f.level(); ++i) images.push_back(f.generator(i));
  return make_morphism_unchecked(f, f, std::move(images));
}

FieldMorphism inclusion_morphism(const Field& sub, const Field& f) {
  if (!sub.is_subfield_of(f)) fail(ErrorKind::BaseMismatch, "not a subfield");
  std::vector<Elem> images;
  for (std::size_t i = 0; i < sub.level(); ++i) images.push_back(f.generator(i));
  return make_morphism_unchecked(sub, f, std::move(images));
}

FieldMorphism compose(const FieldMorphism& outer, const FieldMorphism& inner) {
  if (!(inner.target() == outer.source())) fail(ErrorKind::BaseMismatch, "morphisms do not compose");
  std::vector<Elem> images;
  for (const auto& img : inner.images()) images.push_back(outer.apply(img));
  return make_morphism_unchecked(inner.source(), outer.target(), std::move(images));
}

std::optional<int> automorphism_order(const FieldMorphism& m, int max_order) {
  if (!(m.source() == m.target())) return std::nullopt;
  FieldMorphism power = m;
  for (int n = 1; n <= max_order; ++n) {
    if (power.is_identity()) return n;
    power = compose(m, power);
  }
  return std::nullopt;
}

std::optional<FieldMorphism> inverse_automorphism(const FieldMorphism& m, int max_order) {
  auto order = automorphism_order(m, max_order);
  if (!order) return std::nullopt;
  FieldMorphism inv = identity_morphism(m.source());
  for (int i = 1; i < *order; ++i) inv = compose(m, inv);
  return inv;
}

// ---------------------------------------------------------------- tensor products

std::vector<TensorComponent> tensor_decompose(const Field& left, const Field& right, const Field& over) {
  if (!over.is_subfield_of(left) || !over.is_subfield_of(right))
    fail(ErrorKind::BaseMismatch, "common base is not a subfield of both factors");
  for (std::size_t i = over.level(); i < left.level(); ++i)
    if (left.step(i).kind != TowerStep::Kind::Algebraic) fail(ErrorKind::NotFinite, left.step(i).name);

  struct Partial {
    Field field;
    std::vector<Elem> images;
    std::vector<std::string> chosen;
  };
  std::vector<Partial> parts;
  {
    Partial p{right, {}, {}};
    for (std::size_t i = 0; i < over.level(); ++i) p.images.push_back(right.generator(i));
    parts.push_back(std::move(p));
  }
  for (std::size_t s = over.level(); s < left.level(); ++s) {
    const TowerStep& st = left.step(s);
    std::vector<Partial> next;
    for (const auto& part : parts) {
      const FieldMorphism lam = make_morphism_unchecked(left.at_level(s), part.field, part.images);
      const UPoly m = lam.apply(st.minpoly, s);
      const Factorization fac = factor_univariate(part.field, m);
      for (const auto& [g, mult] : fac.factors) {
        (void)mult;
        Partial np;
        np.chosen = part.chosen;
        np.chosen.push_back(upoly::to_string(part.field, g, st.name));
        if (upoly::degree(g) == 1) {
          np.field = part.field;
          np.images = part.images;
          np.images.push_back(part.field.neg(g[0]));
        } else {
          std::string name = st.name;
          while (part.field.generator_index(name)) name += "'";
          np.field = append_step_unchecked(part.field, TowerStep{TowerStep::Kind::Algebraic, name, g});
          for (const auto& img : part.images) np.images.push_back(np.field.embed(img, part.field.level()));
          np.images.push_back(np.field.generator(np.field.level() - 1));
        }
        next.push_back(std::move(np));
      }
    }
    parts = std::move(next);
  }
  std::vector<TensorComponent> out;
  for (auto& part : parts) {
    TensorComponent c;
    c.left_embedding = make_morphism_unchecked(left, part.field, part.images);
    c.right_embedding = inclusion_morphism(right, part.field);
    c.field = part.field;
    c.chosen_factors = std::move(part.chosen);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace sigchev
