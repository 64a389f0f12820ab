#pragma once

// p-adic structure: Hilbert symbols, Hasse invariants, Jordan splittings
// and the anisotropy depth r_p.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "quatlat/arith.hpp"
#include "quatlat/forms.hpp"

namespace quatlat {

/// The real place, passed where a prime is expected.
inline constexpr std::int64_t kInfinity = 0;

/// (a, b)_p for nonzero rationals; p = kInfinity selects R.
int hilbert_symbol(const Rational& a, const Rational& b, std::int64_t p);

/// Whether a nonzero rational is a square in Q_p.
bool is_square_in_qp(const Rational& a, std::int64_t p);

/// Diagonal entries d_i of Q = sum d_i y_i^2 for some rational change of
/// basis, from the symmetric even Gram matrix (LDL of gram / 2).
std::vector<Rational> rational_diagonal(const Matrix4<Rational>& gram);

int hasse_invariant(std::span<const Rational> diagonal, std::int64_t p);
int hasse_invariant(const QuadForm& q, std::int64_t p);

/// One Jordan component p^scale * Q_i.  `unit` is the even Gram matrix of
/// Q_i (1x1 blocks store [2u] for Q_i = u x^2); its determinant is a unit.
struct JordanBlock {
  enum class Kind { Diagonal, Hyperbolic, Anisotropic };  ///< u x^2, xy, x^2+xy+y^2
  int scale = 0;
  int dim = 1;
  Kind kind = Kind::Diagonal;
  Matrix2<Rational> unit = Matrix2<Rational>::Zero();

  /// Q_i(w) / 1 with w the block coordinates (no p^scale factor).
  Rational unit_value(const Rational& w0, const Rational& w1 = Rational(0)) const;
};

struct JordanSplitting {
  std::int64_t p = 2;
  int precision = 0;  ///< entries certified modulo p^precision
  std::vector<JordanBlock> blocks;  ///< sorted by scale
  /// transform^T * gram * transform = block diagonal, exactly; the entries
  /// are p-integral with unit determinant.  Columns follow block order.
  Matrix4<Rational> transform = Matrix4<Rational>::Identity();

  int dim() const;
  /// Total dimension of blocks with scale in [lo, hi].
  int dim_scales(int lo, int hi) const;
  int max_scale() const;
  /// Block-diagonal even Gram matrix p^{a_i} U_i.
  Matrix4<Rational> block_gram() const;
};

int default_precision(const QuadForm& q, std::int64_t p);

/// K < 0 selects default_precision.  Throws PrecisionTooLow when K is below it.
JordanSplitting jordan_decompose(const QuadForm& q, std::int64_t p, int K = -1);

bool is_anisotropic(const QuadForm& q, std::int64_t p);

struct AnisotropyReport {
  std::int64_t p = 2;
  bool anisotropic = false;
  std::optional<int> r_p;  ///< empty means infinity
  /// Q(witness) = 0 mod p^{2M}, M = ord_p(N) + 3, original coordinates.
  std::optional<Vector4<Integer>> witness;
  int witness_modulus_exponent = 0;  ///< 2M
  bool hensel_certified = false;
};

AnisotropyReport anisotropy_depth(const QuadForm& q, std::int64_t p);

/// ord_p(Q(x)) >= 2 ord_p(A x) + 1: the Newton criterion for x to lie
/// near an exact Z_p zero.  `x` must be p-primitive or the test is vacuous.
bool hensel_liftable(const QuadForm& q, const Vector4<Integer>& x, std::int64_t p);

}  // namespace quatlat
