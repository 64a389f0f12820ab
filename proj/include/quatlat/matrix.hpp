#pragma once

// Exact dense linear algebra on small integer and rational matrices.
//
// Everything here works on fixed 4x4 Eigen types with an exact scalar;
// Eigen's own decompositions are floating-point oriented, so determinants,
// inverses and the integer normal forms are written out directly.

#include <array>
#include <utility>

#include "quatlat/arith.hpp"
#include "quatlat/error.hpp"

namespace quatlat {

/// Fraction-free (Bareiss) determinant; exact for integer scalars.
template <typename Scalar, int N>
Scalar determinant(const Eigen::Matrix<Scalar, N, N>& input) {
  Eigen::Matrix<Scalar, N, N> m = input;
  Scalar sign(1), prev(1);
  for (int k = 0; k < N - 1; ++k) {
    if (m(k, k) == Scalar(0)) {
      int swap = -1;
      for (int i = k + 1; i < N; ++i)
        if (m(i, k) != Scalar(0)) {
          swap = i;
          break;
        }
      if (swap < 0) return Scalar(0);
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i)
      for (int j = k + 1; j < N; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(N - 1, N - 1);
}

/// Leading principal minor of size k (k = 0 gives 1).
template <typename Scalar>
Scalar leading_minor(const Matrix4<Scalar>& m, int k) {
  switch (k) {
    case 0:
      return Scalar(1);
    case 1:
      return m(0, 0);
    case 2:
      return determinant<Scalar, 2>(m.template topLeftCorner<2, 2>());
    case 3:
      return determinant<Scalar, 3>(m.template topLeftCorner<3, 3>());
    default:
      return determinant<Scalar, 4>(m);
  }
}

/// Classical adjugate: adj(m) * m = det(m) * I.
template <typename Scalar>
Matrix4<Scalar> adjugate(const Matrix4<Scalar>& m) {
  Matrix4<Scalar> adj;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Eigen::Matrix<Scalar, 3, 3> minor;
      for (int r = 0, mr = 0; r < 4; ++r) {
        if (r == j) continue;
        for (int c = 0, mc = 0; c < 4; ++c) {
          if (c == i) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      const Scalar d = determinant<Scalar, 3>(minor);
      adj(i, j) = ((i + j) % 2 == 0) ? d : Scalar(-d);
    }
  }
  return adj;
}

/// Exact rational inverse of an integer matrix.
Matrix4<Rational> rational_inverse(const Matrix4<Integer>& m);
Matrix4<Rational> rational_inverse(const Matrix4<Rational>& m);

/// U * A * V = S with U, V unimodular and S = diag(d1 | d2 | d3 | d4), d_i >= 0.
struct SmithForm {
  Matrix4<Integer> U;
  Matrix4<Integer> S;
  Matrix4<Integer> V;
  std::array<Integer, 4> invariant_factors() const {
    return {S(0, 0), S(1, 1), S(2, 2), S(3, 3)};
  }
};

SmithForm smith_normal_form(const Matrix4<Integer>& a);

/// Basis (as columns) of the Z-lattice spanned by the given rational
/// generator columns, which must span a rank-4 lattice.
Matrix4<Rational> lattice_basis(const std::vector<Vector4<Rational>>& generators);

bool is_unimodular(const Matrix4<Integer>& m);

}  // namespace quatlat
