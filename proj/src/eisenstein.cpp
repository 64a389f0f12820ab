#include "quatlat/eisenstein.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <mutex>
#include <numbers>

#include "quatlat/error.hpp"

namespace quatlat {

namespace {

std::mutex cache_mutex;
std::map<std::pair<std::string, double>, LValue> cache;

LValue compute_L2(const Integer& d, double tol) {
  LValue out;
  out.char_disc = d;
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6;
  if (d > 0 && is_square(d)) {
    // Principal character: zeta(2) without the Euler factors at p | D.
    long double v = zeta2;
    for (const auto p : prime_divisors(d.convert_to<std::int64_t>()))
      v *= 1.0L - 1.0L / (static_cast<long double>(p) * p);
    out.value = {static_cast<double>(v), 8 * DBL_EPSILON * static_cast<double>(v)};
    return out;
  }
  const Integer r4 = ((d % 4) + 4) % 4;
  const std::int64_t ad = mp::abs(d).convert_to<std::int64_t>();
  const std::int64_t period = (r4 == 0 || r4 == 1) ? ad : 4 * ad;
  std::vector<signed char> chi(static_cast<std::size_t>(period));
  for (std::int64_t m = 0; m < period; ++m) chi[static_cast<std::size_t>(m)] = static_cast<signed char>(kronecker(d, m));
  // Partial character sums are bounded by period/2, so after a whole
  // number of periods the tail is at most (period/2) / (M+1)^2.
  std::int64_t m_end = std::max<std::int64_t>(period, static_cast<std::int64_t>(std::ceil(std::sqrt(period / tol))));
  m_end = (m_end + period - 1) / period * period;
  long double s = 0;
  for (std::int64_t m = 1; m <= m_end; ++m) {
    const int c = chi[static_cast<std::size_t>(m % period)];
    if (c != 0) s += c / (static_cast<long double>(m) * m);
  }
  const double tail = 0.5 * static_cast<double>(period) / (static_cast<double>(m_end + 1) * (m_end + 1));
  const double rounding = static_cast<double>(m_end) * LDBL_EPSILON * 2 + DBL_EPSILON;
  out.value = {static_cast<double>(s), tail + rounding};
  return out;
}

}  // namespace

LValue dirichlet_L2(const Integer& char_disc, double tol) {
  if (!(tol > 0)) throw PreconditionViolated("L-value tolerance must be positive");
  if (char_disc == 0) throw PreconditionViolated("character discriminant must be nonzero");
  const auto key = std::make_pair(to_string(char_disc), tol);
  {
    std::lock_guard lock(cache_mutex);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;
  }
  LValue v = compute_L2(char_disc, tol);
  std::lock_guard lock(cache_mutex);
  cache.emplace(key, v);
  return v;
}

EisensteinCoefficient eisenstein_coeff(const QuadForm& q, std::int64_t n, std::span<const std::int64_t> extra_primes,
                                       double tol) {
  if (n < 1) throw PreconditionViolated("n must be positive");
  const Integer d(q.disc());
  EisensteinCoefficient out;
  out.n = n;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double sqrt_d = std::sqrt(static_cast<double>(q.disc()));
  out.archimedean = 4 * pi2 * static_cast<double>(n) / sqrt_d;

  std::vector<std::int64_t> primes = prime_divisors(2 * n * q.disc());
  for (const auto p : extra_primes) {
    if (!is_prime(p)) throw PreconditionViolated("extra primes must be prime");
    primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  Rational e(n);
  for (const auto p : primes) {
    const DensityValue beta = density_recursive(q, n, p);
    out.local_factors.emplace(p, beta);
    const Rational euler = Rational(1) - Rational(kronecker(d, p), p * p);
    e *= beta.value / euler;
  }
  out.rational_factor = 4 * e;
  if (e == 0) {
    out.value = {0, 0};
    return out;
  }
  const LValue l = dirichlet_L2(d, tol);
  const long double f = out.rational_factor.convert_to<long double>();
  const double v = static_cast<double>(f * static_cast<long double>(pi2) / (sqrt_d * static_cast<long double>(l.value.value)));
  out.value = {v, v * (l.value.error / (l.value.value - l.value.error)) + 16 * DBL_EPSILON * v};
  return out;
}

Estimate cuspidal_coeff(const QuadForm& q, std::int64_t n, const EnumOptions& opt) {
  const auto r = represent_count(q, n, opt);
  const EisensteinCoefficient e = eisenstein_coeff(q, n);
  return {static_cast<double>(r) - e.value.value, e.value.error};
}

}  // namespace quatlat
