#pragma once

// Positive-definite quaternary integral quadratic forms.
//
// A form is held as its even Gram matrix A, so that Q(x) = x^T A x / 2.
// Coefficient strings use the row-major upper triangle
// "c11,c12,c13,c14,c22,c23,c24,c33,c34,c44" of
// Q = sum_{i<=j} c_ij x_i x_j.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quatlat/arith.hpp"

namespace quatlat {

struct FormInvariants {
  std::int64_t disc = 0;       ///< det(A)
  std::int64_t level = 0;      ///< least N with N A^{-1} integral, even diagonal
  std::int64_t char_disc = 0;  ///< d with chi_Q = (d / .)
};

class QuadForm {
 public:
  /// Validates symmetry, even diagonal and positive definiteness.
  explicit QuadForm(const IntMatrix4& gram);

  const IntMatrix4& gram() const { return gram_; }
  const FormInvariants& invariants() const { return inv_; }
  std::int64_t disc() const { return inv_.disc; }
  std::int64_t level() const { return inv_.level; }

  /// c_ij of Q = sum_{i<=j} c_ij x_i x_j.
  std::int64_t coefficient(int i, int j) const {
    return i == j ? gram_(i, i) / 2 : gram_(i, j);
  }
  std::array<std::int64_t, 10> coefficients() const;
  /// gcd of all c_ij equals 1.
  bool is_primitive() const;

  template <typename Scalar>
  Scalar value(const Vector4<Scalar>& x) const {
    Scalar s(0);
    for (int i = 0; i < 4; ++i) {
      s += Scalar(gram_(i, i) / 2) * x(i) * x(i);
      for (int j = i + 1; j < 4; ++j) s += Scalar(gram_(i, j)) * x(i) * x(j);
    }
    return s;
  }

  /// The form composed with x -> U x, i.e. Gram U^T A U.
  QuadForm transformed(const IntMatrix4& u) const;

  Matrix4<Integer> integer_gram() const { return cast_matrix<Integer>(gram_); }
  Matrix4<Rational> rational_gram() const { return cast_matrix<Rational>(gram_); }

  std::string to_string() const;

  friend bool operator==(const QuadForm& a, const QuadForm& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix4 gram_;
  FormInvariants inv_;
};

QuadForm parse_form(std::span<const std::int64_t> coeffs);
/// Parses the comma-separated coefficient string.
QuadForm parse_form(const std::string& text);
std::string format_form(const QuadForm& q);

std::int64_t discriminant(const QuadForm& q);
std::int64_t level(const QuadForm& q);
int kronecker_character(std::int64_t d, std::int64_t m);

/// Lattice-point budget for a single enumeration call. Reads
/// QUATLAT_ENUM_CAP when set, otherwise 10^8.
std::uint64_t default_enum_cap();

struct EnumOptions {
  std::uint64_t cap = default_enum_cap();
  unsigned jobs = 1;
};

/// #{x in Z^4 : Q(x) = n}.
std::uint64_t represent_count(const QuadForm& q, std::int64_t n, const EnumOptions& opt = {});
/// [r_Q(0), ..., r_Q(bound)] from one sweep over all x with Q(x) <= bound.
std::vector<std::uint64_t> theta_coeffs(const QuadForm& q, std::int64_t bound,
                                        const EnumOptions& opt = {});

/// Q(x) = sum_j d_j (x_j + sum_{i>j} mu(i,j) x_i)^2 in the reduced basis;
/// outer_coeffs lists d_3, d_2, d_1, d_0 so that a_i >= (3/4) a_{i+1}.
struct ReducedForm {
  QuadForm form;
  IntMatrix4 transform;  ///< transform^T * gram * transform = form.gram()
  std::array<Rational, 4> outer_coeffs;
  Matrix4<Rational> offdiag;  ///< mu(i, j) for j < i, zero elsewhere
};

ReducedForm reduce(const QuadForm& q);

/// Gram-Schmidt data of Q with respect to the standard basis:
/// d_j = Q(b_j*), mu(i, j) for j < i.
struct GramSchmidt {
  std::array<Rational, 4> d;
  Matrix4<Rational> mu;
};
GramSchmidt gram_schmidt(const IntMatrix4& gram);

}  // namespace quatlat
