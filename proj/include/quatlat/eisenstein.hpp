#pragma once

// Eisenstein part of the theta series: a_E(n) as a product of local
// densities, and the cuspidal remainder a_C(n) = r_Q(n) - a_E(n).

#include <cstdint>
#include <map>
#include <span>

#include "quatlat/arith.hpp"
#include "quatlat/density.hpp"
#include "quatlat/forms.hpp"

namespace quatlat {

inline constexpr double kDefaultLTolerance = 1e-9;

/// A real number with an absolute error bound.
struct Estimate {
  double value = 0;
  double error = 0;
};

struct LValue {
  Integer char_disc;
  Estimate value;  ///< L(2, chi) with chi = (char_disc / .)
};

/// L(2, chi_D) = sum chi(m) / m^2 to within `tol`.
LValue dirichlet_L2(const Integer& char_disc, double tol = kDefaultLTolerance);

struct EisensteinCoefficient {
  std::int64_t n = 0;
  Estimate value;
  double archimedean = 0;  ///< 4 pi^2 n / sqrt(D)
  std::map<std::int64_t, DensityValue> local_factors;
  /// a_E(n) = rational_factor * pi^2 / (sqrt(D) * L(2, chi_D)).
  Rational rational_factor;
};

/// `extra_primes` are treated like ramified primes (exact densities and
/// removed Euler factors); the result must not depend on them.
EisensteinCoefficient eisenstein_coeff(const QuadForm& q, std::int64_t n,
                                       std::span<const std::int64_t> extra_primes = {},
                                       double tol = kDefaultLTolerance);

/// r_Q(n) - a_E(n).
Estimate cuspidal_coeff(const QuadForm& q, std::int64_t n, const EnumOptions& opt = {});

}  // namespace quatlat
