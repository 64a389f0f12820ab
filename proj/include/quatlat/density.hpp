#pragma once

// Local representation densities beta_p(Q; n).
//
// Three engines: blockwise residue counting over a Jordan splitting,
// the good/zero/bad reduction recursion, and closed formulas where they
// apply.  All values are exact rationals with p-power denominators.

#include <cstdint>
#include <string>

#include "quatlat/arith.hpp"
#include "quatlat/forms.hpp"
#include "quatlat/padic.hpp"

namespace quatlat {

enum class DensityMethod { Brute, Recursive, Closed };
std::string to_string(DensityMethod m);

struct DensityValue {
  Rational value;
  std::int64_t p = 2;
  std::int64_t n = 0;
  DensityMethod method = DensityMethod::Recursive;
  int level = 0;  ///< modulus exponent k where the count was certified (Brute)
};

struct SolutionTypeCensus {
  std::int64_t p = 2;
  int k = 0;
  uint128 total = 0;
  uint128 good = 0;
  uint128 zero = 0;
  uint128 bad_one = 0;
  uint128 bad_two = 0;
};

/// beta split by solution type; the four parts sum to beta.
struct DensityParts {
  Rational good, zero, bad_one, bad_two;
  Rational total() const { return good + zero + bad_one + bad_two; }
};

DensityValue density_bruteforce(const QuadForm& q, std::int64_t n, std::int64_t p);
SolutionTypeCensus census(const QuadForm& q, std::int64_t n, std::int64_t p, int k);
DensityValue density_recursive(const QuadForm& q, std::int64_t n, std::int64_t p);
DensityParts density_parts(const QuadForm& q, std::int64_t n, std::int64_t p);
DensityValue density_unramified(const QuadForm& q, std::int64_t n, std::int64_t p);
DensityValue yang_good_density(const QuadForm& q, std::int64_t n, std::int64_t p);

bool is_locally_represented(const QuadForm& q, std::int64_t n);
bool has_strong_local_solubility(const QuadForm& q, std::int64_t n);
bool is_primitively_locally_represented(const QuadForm& q, std::int64_t n);

enum class LocalCondition { Strong, Primitive, General };
std::string to_string(LocalCondition c);
/// Throws PreconditionViolated when the condition does not hold for (q, n).
Rational density_lower_bound(const QuadForm& q, std::int64_t n, std::int64_t p, LocalCondition c);

// Splitting-level entry points.  The splitting may have any dimension
// 1..4; `target` is a nonzero p-integral rational.

Rational splitting_density(const JordanSplitting& j, const Rational& target);
Rational splitting_density_bruteforce(const JordanSplitting& j, const Rational& target, int* level = nullptr);
/// Whether the splitting represents `target` over Z_p.
bool splitting_represents(const JordanSplitting& j, const Rational& target);
/// #{x mod p^k : Q(x) = target mod p^k} by blockwise convolution.
uint128 splitting_count(const JordanSplitting& j, const Rational& target, int k);

/// #{x in F_p^d : sum u_i x_i^2 = c}, p odd, u_i units.
Integer diagonal_count_mod_p(std::span<const Rational> units, std::int64_t c, std::int64_t p);

}  // namespace quatlat
