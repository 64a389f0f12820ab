#include "quatlat/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "quatlat/error.hpp"

namespace quatlat {

std::string to_string(const Rational& r) {
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw Error("cannot parse rational '" + s + "'");
  }
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) { return -floor_div(-a, b); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Integer round_nearest(const Rational& r) {
  // floor(r + 1/2)
  const Integer num = mp::numerator(r) * 2 + mp::denominator(r);
  return floor_div(num, Integer(mp::denominator(r) * 2));
}

uint128 isqrt(uint128 n) {
  if (n < 2) return n;
  // Newton iteration from an overestimate.
  uint128 x = static_cast<uint128>(std::sqrt(static_cast<long double>(n))) + 2;
  while (x * x > n) x = (x + n / x) / 2;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  return mp::sqrt(n);
}

bool is_square(const Integer& n) {
  if (n < 0) return false;
  const Integer s = mp::sqrt(n);
  return s * s == n;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

Integer ipow(const Integer& base, unsigned exp) { return mp::pow(base, exp); }

Rational rpow(std::int64_t p, int exp) {
  if (exp >= 0) return Rational(mp::pow(Integer(p), static_cast<unsigned>(exp)));
  return Rational(Integer(1), mp::pow(Integer(p), static_cast<unsigned>(-exp)));
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int valuation(const Integer& n, std::int64_t p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  if (p == 2) return static_cast<int>(mp::lsb(mp::abs(n)));
  int v = 0;
  Integer m = n;
  const Integer pp(p);
  while (m % pp == 0) {
    m /= pp;
    ++v;
  }
  return v;
}

int valuation(const Rational& r, std::int64_t p) {
  return valuation(mp::numerator(r), p) - valuation(mp::denominator(r), p);
}

int valuation_or(const Rational& r, std::int64_t p, int cap) {
  if (r == 0) return cap;
  return valuation(r, p);
}

bool is_p_integral(const Rational& r, std::int64_t p) {
  return mp::denominator(r) % p != 0;
}

Integer residue(const Rational& r, const Integer& m) {
  const Integer& den = mp::denominator(r);
  Integer inv;
  if (mpz_invert(inv.backend().data(), den.backend().data(), m.backend().data()) == 0)
    throw std::domain_error("residue of non-integral rational");
  Integer out = (mp::numerator(r) * inv) % m;
  if (out < 0) out += m;
  return out;
}

std::int64_t residue(const Rational& r, std::int64_t m) {
  return static_cast<std::int64_t>(residue(r, Integer(m)));
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  const int128 r = static_cast<int128>(a) * b % m;
  return static_cast<std::int64_t>(r < 0 ? r + m : r);
}

std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t m) {
  std::int64_t base = mod(a, m), r = 1 % m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

std::int64_t invmod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    const std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::domain_error("invmod of non-unit");
  return mod(x, m);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  n = std::abs(n);
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t size = out.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t divisor_count(std::int64_t n) {
  if (n < 1) throw PreconditionViolated("divisor_count needs n >= 1");
  std::int64_t d = 1;
  for (const auto& [p, e] : factorize(n)) d *= e + 1;
  return d;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

int omega(std::int64_t n) { return static_cast<int>(factorize(n).size()); }

namespace {

// Jacobi symbol (a / n), n odd positive.
int jacobi(std::int64_t a, std::int64_t n) {
  a = mod(a, n);
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

}  // namespace

int kronecker(std::int64_t d, std::int64_t m) {
  if (m == 0) return (d == 1 || d == -1) ? 1 : 0;
  int sign = 1;
  if (m < 0) {
    m = -m;
    if (d < 0) sign = -1;
  }
  int v = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++v;
  }
  if (v > 0) {
    if (d % 2 == 0) return 0;
    const std::int64_t r = mod(d, 8);
    if ((v % 2 == 1) && (r == 3 || r == 5)) sign = -sign;
  }
  if (m == 1) return sign;
  return sign * jacobi(d, m);
}

int kronecker(const Integer& d, std::int64_t m) {
  // Only d modulo 4|m| matters.
  const std::int64_t modulus = 4 * (m == 0 ? 1 : std::abs(m));
  if (m == 0) return (d == 1 || d == -1) ? 1 : 0;
  Integer r = d % modulus;
  // Keep the sign of d so that the m < 0 rule still sees it.
  std::int64_t small = static_cast<std::int64_t>(r);
  if (d < 0 && small >= 0) small -= modulus;
  if (d > 0 && small <= 0) small += modulus;
  return kronecker(small, m);
}

}  // namespace quatlat
