#include <algorithm>
#include <cstdlib>

#include "sigchev/fieldtower.hpp"

namespace sigchev {
namespace {

using Parts = std::vector<std::pair<UPoly, int>>;

void sort_factors(const Field& f, Parts& parts) {
  std::sort(parts.begin(), parts.end(), [&](const auto& a, const auto& b) {
    if (auto c = upoly::compare(f, a.first, b.first); c != 0) return c < 0;
    return a.second < b.second;
  });
}

// Every monic polynomial of the given degree over a finite field.
std::vector<UPoly> monic_polys(const Field& f, const std::vector<Elem>& elems, std::size_t deg) {
  std::vector<UPoly> out;
  std::vector<std::size_t> idx(deg, 0);
  while (true) {
    UPoly p;
    for (std::size_t i = 0; i < deg; ++i) p.push_back(elems[idx[i]]);
    p.push_back(f.one());
    out.push_back(std::move(p));
    std::size_t k = 0;
    while (k < deg && ++idx[k] == elems.size()) idx[k++] = 0;
    if (k == deg) break;
  }
  return out;
}

// Trial division by monic candidates of increasing degree. Each candidate that
// divides is irreducible because every smaller factor is already removed.
Parts factor_finite(const Field& f, UPoly p) {
  const auto elems = f.elements();
  Parts out;
  for (std::size_t d = 1; 2 * d <= static_cast<std::size_t>(upoly::degree(p)); ++d) {
    double count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= static_cast<double>(elems.size());
    if (count > static_cast<double>(1u << 20))
      fail(ErrorKind::UnsupportedFactorization, "finite field trial division too large");
    for (const auto& g : monic_polys(f, elems, d)) {
      if (2 * d > static_cast<std::size_t>(upoly::degree(p))) break;
      int mult = 0;
      while (upoly::degree(p) >= static_cast<long>(d)) {
        auto [q, r] = upoly::divmod(f, p, g);
        if (!r.empty()) break;
        p = std::move(q);
        ++mult;
      }
      if (mult > 0) out.emplace_back(g, mult);
    }
  }
  if (upoly::degree(p) >= 1) {
    bool merged = false;
    for (auto& [g, m] : out)
      if (g == p) {
        ++m;
        merged = true;
      }
    if (!merged) out.emplace_back(p, 1);
  }
  return out;
}

// Yun's square-free decomposition of a monic polynomial in characteristic 0.
Parts square_free(const Field& f, const UPoly& p) {
  Parts out;
  const UPoly dp = upoly::derivative(f, p);
  UPoly a = upoly::gcd(f, p, dp);
  UPoly b = upoly::divmod(f, p, a).first;
  UPoly c = upoly::divmod(f, dp, a).first;
  UPoly d = upoly::sub(f, c, upoly::derivative(f, b));
  int i = 1;
  while (upoly::degree(b) > 0) {
    a = upoly::gcd(f, b, d);
    b = upoly::divmod(f, b, a).first;
    c = upoly::divmod(f, d, a).first;
    d = upoly::sub(f, c, upoly::derivative(f, b));
    if (upoly::degree(a) > 0) out.emplace_back(a, i);
    ++i;
  }
  return out;
}

std::vector<UPoly> factor_quadratic(const Field& f, const UPoly& p) {
  // p = y^2 + b y + c, roots (-b +- sqrt(b^2 - 4c)) / 2
  const Elem disc = f.sub(f.mul(p[1], p[1]), f.mul(f.from_int(4), p[0]));
  auto r = f.sqrt(disc);
  if (!r) return {p};
  const Elem half = f.from_rational(Rational(1, 2));
  const Elem r1 = f.mul(f.sub(*r, p[1]), half);
  const Elem r2 = f.mul(f.sub(f.neg(*r), p[1]), half);
  return {UPoly{f.neg(r1), f.one()}, UPoly{f.neg(r2), f.one()}};
}

// Monic rational polynomial -> monic integer polynomial in y = L x.
std::vector<Integer> integer_scaled(const UPoly& p, Integer& scale) {
  scale = 1;
  for (const auto& c : p) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.q.get_den_mpz_t());
  const std::size_t n = p.size() - 1;
  std::vector<Integer> out(p.size());
  Integer power = 1;
  for (std::size_t k = n + 1; k-- > 0;) {
    Rational v = p[k].q * power;
    out[k] = v.get_num();
    power *= scale;
  }
  return out;
}

Integer eval_int(const std::vector<Integer>& a, const Integer& y) {
  Integer acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * y + *it;
  return acc;
}

std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  if (n == 0) return out;
  if (n > Integer(1000000000)) fail(ErrorKind::UnsupportedFactorization, "constant term too large for divisor search");
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  return out;
}

std::vector<UPoly> factor_rational_small(const Field& f, UPoly p) {
  std::vector<UPoly> out;
  // Rational roots first.
  while (upoly::degree(p) >= 1) {
    Integer scale;
    const auto ip = integer_scaled(p, scale);
    if (ip[0] == 0) {
      out.push_back(upoly::x(f));
      p = upoly::divmod(f, p, upoly::x(f)).first;
      continue;
    }
    bool found = false;
    for (const auto& d : divisors(ip[0])) {
      for (const Integer& y : {d, Integer(-d)}) {
        if (eval_int(ip, y) != 0) continue;
        const Rational root(y, scale);
        UPoly lin{f.from_rational(-Rational(root.get_num(), root.get_den())), f.one()};
        out.push_back(lin);
        p = upoly::divmod(f, p, lin).first;
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  if (upoly::degree(p) <= 0) return out;
  if (upoly::degree(p) <= 3) {
    out.push_back(p);
    return out;
  }
  if (upoly::degree(p) > 4) fail(ErrorKind::UnsupportedFactorization, "degree above 4 over Q");
  // Quartic without rational roots: (y^2 + a y + b)(y^2 + c y + d) over Z.
  Integer scale;
  const auto ip = integer_scaled(p, scale);
  const Integer &A = ip[3], &B = ip[2], &C = ip[1], &D = ip[0];
  auto to_rational_factor = [&](const Integer& lin, const Integer& cst) {
    // y = scale x: y^2 + lin y + cst -> x^2 + (lin/scale) x + cst/scale^2
    Rational l(lin, scale), c(cst, Integer(scale * scale));
    l.canonicalize();
    c.canonicalize();
    return UPoly{f.from_rational(c), f.from_rational(l), f.one()};
  };
  for (const auto& dv : divisors(D)) {
    for (const Integer& b : {dv, Integer(-dv)}) {
      const Integer d = D / b;
      if (b != d) {
        const Integer num = C - b * A;
        const Integer den = d - b;
        if (num % den != 0) continue;
        const Integer a = num / den;
        const Integer c = A - a;
        if (b + d + a * c != B) continue;
        out.push_back(to_rational_factor(a, b));
        out.push_back(to_rational_factor(c, d));
        return out;
      }
      if (C != b * A) continue;
      // a + c = A, a c = B - 2b
      const Integer disc = A * A - 4 * (B - 2 * b);
      if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) continue;
      Integer s;
      mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
      if ((A + s) % 2 != 0) continue;
      const Integer a = (A + s) / 2;
      out.push_back(to_rational_factor(a, b));
      out.push_back(to_rational_factor(A - a, d));
      return out;
    }
  }
  out.push_back(p);
  return out;
}

std::vector<UPoly> factor_square_free(const Field& f, const UPoly& p) {
  const long deg = upoly::degree(p);
  if (deg <= 1) return {p};
  if (f.level() == 0) {
    if (deg == 2) return factor_quadratic(f, p);
    return factor_rational_small(f, p);
  }
  if (deg == 2) return factor_quadratic(f, p);
  // Coefficients that all live in Q are handled there, then checked for
  // further splitting only when the result is quadratic.
  UPoly down;
  for (const auto& c : p) {
    auto d = f.descend(c, 0);
    if (!d) fail(ErrorKind::UnsupportedFactorization, "degree above 2 over an extension of Q");
    down.push_back(*d);
  }
  const Field q = f.at_level(0);
  std::vector<UPoly> out;
  for (const auto& g : factor_rational_small(q, down)) {
    const UPoly up = upoly::embed(f, g, 0);
    if (upoly::degree(up) == 2) {
      for (auto& h : factor_quadratic(f, up)) out.push_back(std::move(h));
    } else if (upoly::degree(up) <= 1) {
      out.push_back(up);
    } else {
      fail(ErrorKind::UnsupportedFactorization, "degree above 2 over an extension of Q");
    }
  }
  return out;
}

}  // namespace

Factorization factor_univariate(const Field& f, const UPoly& input) {
  UPoly p = input;
  upoly::trim(f, p);
  if (p.empty()) fail(ErrorKind::InvalidArgument, "cannot factor the zero polynomial");
  Factorization result;
  result.unit = p.back();
  p = upoly::monic(f, p);
  if (upoly::degree(p) == 0) return result;
  if (f.is_finite()) {
    result.factors = factor_finite(f, p);
  } else if (f.characteristic() != 0) {
    if (upoly::degree(p) > 1) fail(ErrorKind::UnsupportedFactorization, "positive characteristic with transcendental steps");
    result.factors.emplace_back(p, 1);
  } else {
    for (const auto& [part, mult] : square_free(f, p))
      for (auto& g : factor_square_free(f, part)) result.factors.emplace_back(std::move(g), mult);
  }
  sort_factors(f, result.factors);
  return result;
}

bool is_irreducible(const Field& f, const UPoly& p) {
  if (upoly::degree(p) < 1) return false;
  const auto fac = factor_univariate(f, p);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace sigchev
