#pragma once

// Exact scalar types and the elementary number theory used throughout.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace quatlat {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

using int128 = __int128;
using uint128 = unsigned __int128;

template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

using IntMatrix4 = Matrix4<std::int64_t>;
using IntVector4 = Vector4<std::int64_t>;

template <typename To, typename From>
Matrix4<To> cast_matrix(const Matrix4<From>& m) {
  Matrix4<To> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = To(m(i, j));
  return out;
}

/// "num/den" with den > 0, always including the denominator.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);
std::string to_string(uint128 v);

/// Parses "num/den" or "num".
Rational parse_rational(const std::string& s);

Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);
std::int64_t floor_div(std::int64_t a, std::int64_t b);
Integer round_nearest(const Rational& r);

/// Largest s with s*s <= n (n >= 0).
uint128 isqrt(uint128 n);
Integer isqrt(const Integer& n);
bool is_square(const Integer& n);

std::int64_t ipow(std::int64_t base, int exp);
Integer ipow(const Integer& base, unsigned exp);
Rational rpow(std::int64_t p, int exp);

/// p-adic valuation; the argument must be nonzero.
int valuation(std::int64_t n, std::int64_t p);
int valuation(const Integer& n, std::int64_t p);
int valuation(const Rational& r, std::int64_t p);
/// Valuation that returns `cap` for zero.
int valuation_or(const Rational& r, std::int64_t p, int cap);

/// Whether a rational has no p in its denominator.
bool is_p_integral(const Rational& r, std::int64_t p);
/// Image of a p-integral rational in Z/mZ, m a power of p; result in [0, m).
Integer residue(const Rational& r, const Integer& m);
std::int64_t residue(const Rational& r, std::int64_t m);

std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t m);
/// Inverse of a modulo m; a must be a unit.
std::int64_t invmod(std::int64_t a, std::int64_t m);

bool is_prime(std::int64_t n);
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::vector<std::int64_t> prime_divisors(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
std::int64_t divisor_count(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
/// Number of distinct prime factors.
int omega(std::int64_t n);

/// Kronecker symbol (d / m) for arbitrary integers.
int kronecker(std::int64_t d, std::int64_t m);
int kronecker(const Integer& d, std::int64_t m);

}  // namespace quatlat
