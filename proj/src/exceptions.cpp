#include "quatlat/exceptions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "quatlat/density.hpp"
#include "quatlat/discriminant.hpp"
#include "quatlat/error.hpp"
#include "quatlat/padic.hpp"

namespace quatlat {

namespace {

ExceptionRecord classify_known(const QuadForm& q, std::int64_t n, bool represented) {
  ExceptionRecord r;
  r.n = n;
  r.represented = represented;
  r.locally_represented = is_locally_represented(q, n);
  r.coprime_to_disc = std::gcd(n, q.disc()) == 1;
  r.strong = r.locally_represented && has_strong_local_solubility(q, n);
  r.primitive = r.locally_represented && is_primitively_locally_represented(q, n);
  return r;
}

double term(double n, double d, double a, double b, double eps) {
  return std::pow(n, a + eps) * std::pow(d, b + eps);
}

}  // namespace

ExceptionRecord classify(const QuadForm& q, std::int64_t n, const EnumOptions& opt) {
  if (n < 1) throw PreconditionViolated("n must be positive");
  return classify_known(q, n, represent_count(q, n, opt) > 0);
}

Escalator escalator_check(const QuadForm& q, std::int64_t n, int k_max, const EnumOptions& opt) {
  if (n < 1 || k_max < 0) throw PreconditionViolated("escalator_check needs n >= 1 and k_max >= 0");
  if (!is_locally_represented(q, n)) throw PreconditionViolated("n is not locally represented");
  if (represent_count(q, n, opt) != 0) throw PreconditionViolated("n is represented");
  for (const auto p : prime_divisors(2 * q.disc())) {
    if (n % (p * p) != 0) continue;
    if (valuation(n, p) <= valuation(q.level(), p)) continue;
    if (!is_anisotropic(q, p)) continue;
    Escalator e;
    e.p = p;
    e.k_max = k_max;
    std::int64_t m = n;
    for (int k = 0; k <= k_max; ++k) {
      e.counts.push_back(represent_count(q, m, opt));
      if (k < k_max) {
        if (m > std::numeric_limits<std::int64_t>::max() / (p * p)) throw ResourceLimit("n p^{2k} overflows");
        m *= p * p;
      }
    }
    e.verified = std::all_of(e.counts.begin(), e.counts.end(), [](std::uint64_t c) { return c == 0; });
    return e;
  }
  throw NoEscalatorFound("no anisotropic prime p with p^2 | n and ord_p(n) > ord_p(N)");
}

std::vector<ExceptionRecord> search_exceptions(const QuadForm& q, std::int64_t bound, int k_max,
                                               const EnumOptions& opt) {
  if (bound < 1) throw PreconditionViolated("bound must be positive");
  const auto theta = theta_coeffs(q, bound, opt);
  std::vector<ExceptionRecord> out;
  for (std::int64_t n = 1; n <= bound; ++n) {
    if (theta[static_cast<std::size_t>(n)] != 0 || !is_locally_represented(q, n)) continue;
    ExceptionRecord r = classify_known(q, n, false);
    if (k_max >= 0) {
      try {
        r.escalator = escalator_check(q, n, k_max, opt);
      } catch (const NoEscalatorFound&) {
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

ThresholdSet thresholds(const QuadForm& q, double eps, double constant) {
  if (eps < 0 || !(constant > 0)) throw PreconditionViolated("thresholds need eps >= 0 and constant > 0");
  const double n = static_cast<double>(q.level());
  const double d = static_cast<double>(q.disc());
  ThresholdSet t;
  t.eps = eps;
  t.constant = constant;
  t.t[0] = constant * std::max(term(n, d, 1.5, 1.25, eps), term(n, d, 2, 1, eps));
  t.t[1] = constant * std::max(term(n, d, 1.25, 1.25, eps), term(n, d, 3, 1, eps));
  t.t[2] = constant * std::max(term(n, d, 2.5, 2.25, eps), term(n, d, 3, 2, eps));
  t.t[3] = constant * std::max(term(n, d, 4.5, 1.25, eps), term(n, d, 5, 1, eps));
  return t;
}

std::int64_t cusp_form_dim_bound(std::int64_t level) { return (gamma0_index(level) + 11) / 12 + 1; }

double explicit_cusp_coeff_bound(const QuadForm& q, std::int64_t n, double cc_bound) {
  if (n < 1 || !(cc_bound >= 0)) throw PreconditionViolated("explicit bound needs n >= 1 and cc_bound >= 0");
  const std::int64_t level = q.level();
  const double pi = std::numbers::pi;
  double v = 4 * pi * std::exp(4 * pi);
  v *= std::sqrt(cc_bound * static_cast<double>(cusp_form_dim_bound(level)));
  v *= static_cast<double>(divisor_count(n)) * std::sqrt(static_cast<double>(n));
  v *= std::sqrt(static_cast<double>(level));
  for (const auto p : prime_divisors(level)) {
    const double pd = static_cast<double>(p);
    v *= std::cbrt(1 + 1 / pd) / std::sqrt(1 - std::pow(pd, -4));
  }
  return v;
}

}  // namespace quatlat
