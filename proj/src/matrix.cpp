#include "quatlat/matrix.hpp"

#include <vector>

namespace quatlat {

namespace {

template <typename Scalar>
Matrix4<Rational> inverse_impl(const Matrix4<Scalar>& m) {
  const Scalar det = determinant<Scalar, 4>(m);
  if (det == Scalar(0)) throw Singular("matrix is singular");
  const Matrix4<Scalar> adj = adjugate(m);
  Matrix4<Rational> inv;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv(i, j) = Rational(adj(i, j)) / Rational(det);
  return inv;
}

// Extended gcd: returns (g, x, y) with a x + b y = g >= 0.
std::array<Integer, 3> xgcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Integer q = floor_div(old_r, r);
    old_r = old_r - q * r;
    std::swap(old_r, r);
    old_s = old_s - q * s;
    std::swap(old_s, s);
    old_t = old_t - q * t;
    std::swap(old_t, t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace

Matrix4<Rational> rational_inverse(const Matrix4<Integer>& m) { return inverse_impl(m); }
Matrix4<Rational> rational_inverse(const Matrix4<Rational>& m) { return inverse_impl(m); }

SmithForm smith_normal_form(const Matrix4<Integer>& a) {
  if (determinant<Integer, 4>(a) == 0) throw Singular("smith_normal_form needs det != 0");
  SmithForm f{Matrix4<Integer>::Identity(), a, Matrix4<Integer>::Identity()};
  auto& S = f.S;
  for (int t = 0; t < 4; ++t) {
    while (true) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      int pi = -1, pj = -1;
      for (int i = t; i < 4; ++i)
        for (int j = t; j < 4; ++j)
          if (S(i, j) != 0 && (pi < 0 || mp::abs(S(i, j)) < mp::abs(S(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi != t) {
        S.row(t).swap(S.row(pi));
        f.U.row(t).swap(f.U.row(pi));
      }
      if (pj != t) {
        S.col(t).swap(S.col(pj));
        f.V.col(t).swap(f.V.col(pj));
      }
      bool clean = true;
      for (int i = t + 1; i < 4; ++i) {
        const Integer q = floor_div(S(i, t), S(t, t));
        if (q != 0) {
          S.row(i) -= q * S.row(t);
          f.U.row(i) -= q * f.U.row(t);
        }
        if (S(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < 4; ++j) {
        const Integer q = floor_div(S(t, j), S(t, t));
        if (q != 0) {
          S.col(j) -= q * S.col(t);
          f.V.col(j) -= q * f.V.col(t);
        }
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any offending row into row t and repeat.
      int bad = -1;
      for (int i = t + 1; i < 4 && bad < 0; ++i)
        for (int j = t + 1; j < 4; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      S.row(t) += S.row(bad);
      f.U.row(t) += f.U.row(bad);
    }
    if (S(t, t) < 0) {
      S.row(t) = -S.row(t);
      f.U.row(t) = -f.U.row(t);
    }
  }
  return f;
}

Matrix4<Rational> lattice_basis(const std::vector<Vector4<Rational>>& generators) {
  Integer scale = 1;
  for (const auto& g : generators)
    for (int i = 0; i < 4; ++i) scale = mp::lcm(scale, Integer(mp::denominator(g(i))));
  const std::size_t m = generators.size();
  std::vector<Vector4<Integer>> cols(m);
  for (std::size_t c = 0; c < m; ++c)
    for (int i = 0; i < 4; ++i)
      cols[c](i) = mp::numerator(generators[c](i) * Rational(scale));

  // Column echelon form: after step r, column r is the only column with
  // index >= r that is nonzero in row r.
  for (int r = 0; r < 4; ++r) {
    std::size_t pivot = m;
    for (std::size_t c = r; c < m; ++c) {
      if (cols[c](r) == 0) continue;
      if (pivot == m) {
        pivot = c;
        continue;
      }
      const auto [g, x, y] = xgcd(cols[pivot](r), cols[c](r));
      const Integer a = cols[pivot](r) / g, b = cols[c](r) / g;
      const Vector4<Integer> p = cols[pivot], q = cols[c];
      cols[pivot] = x * p + y * q;
      cols[c] = a * q - b * p;
    }
    if (pivot == m) throw Singular("generators do not span a rank-4 lattice");
    std::swap(cols[r], cols[pivot]);
    if (cols[r](r) < 0) cols[r] = -cols[r];
  }
  Matrix4<Rational> basis;
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < 4; ++i) basis(i, c) = Rational(cols[c](i)) / Rational(scale);
  return basis;
}

bool is_unimodular(const Matrix4<Integer>& m) {
  const Integer d = determinant<Integer, 4>(m);
  return d == 1 || d == -1;
}

}  // namespace quatlat
