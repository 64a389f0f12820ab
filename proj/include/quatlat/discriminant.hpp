#pragma once

// The discriminant form D = L'/L, its subquotients D^c, D_c and the
// coset D^{c*}; cusps of Gamma_0(N); the lattice T and rescaled form R;
// the cusp sum and its local factors.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "quatlat/arith.hpp"
#include "quatlat/forms.hpp"
#include "quatlat/matrix.hpp"

namespace quatlat {

/// L'/L = (+) Z/d_i with L = Z^4 and L' = A^{-1} Z^4.
struct DiscGroup {
  std::array<Integer, 4> factors;   ///< d1 | d2 | d3 | d4
  Matrix4<Rational> generators;     ///< column i has order d_i mod L
  Matrix4<Rational> bilinear;       ///< g_i . g_j mod 1, in [0, 1)
  std::array<Rational, 4> quadratic;  ///< g_i^2 / 2 mod 1
  IntMatrix4 gram;                  ///< the form's Gram matrix A
  Matrix4<Rational> to_coords;      ///< inverse of `generators`

  Integer order() const;
  /// x^2/2 and x.y for vectors of L' (not reduced mod 1).
  Rational q_value(const Vector4<Rational>& x) const;
  Rational b_value(const Vector4<Rational>& x, const Vector4<Rational>& y) const;
  /// Coordinates k_i mod d_i of x in L' on the generators.
  std::array<Integer, 4> coordinates(const Vector4<Rational>& x) const;
};

DiscGroup disc_group(const QuadForm& q);

struct SubgroupSizes {
  Integer image;   ///< |D^c|
  Integer kernel;  ///< |D_c|
};
SubgroupSizes subgroup_sizes(const DiscGroup& g, std::int64_t c);

struct DcStarCoset {
  Vector4<Rational> representative;  ///< alpha_0 in L', reduced mod L
  bool equal = false;                ///< D^{c*} = D^c
};
/// D^{c*} = alpha_0 + D^c.  Throws Inconsistent if the defining system
/// has no solution.
DcStarCoset dcstar_coset(const DiscGroup& g, std::int64_t c);

/// Whether x in L' lies in the preimage of D^c (the lattice cL' + L).
bool in_image(const DiscGroup& g, std::int64_t c, const Vector4<Rational>& x);

struct CuspDatum {
  std::int64_t c = 1;
  std::int64_t multiplicity = 1;  ///< phi(gcd(c, N/c))
  std::int64_t width = 1;         ///< N / gcd(c^2, N)
  // Form-dependent fields; left empty by cusps(N).
  Integer image_size;
  Integer kernel_size;
  bool coset_equal = false;
  Rational r_disc;
};

/// One entry per divisor c | N.
std::vector<CuspDatum> cusps(std::int64_t n);
std::vector<CuspDatum> cusp_table(const QuadForm& q);
/// [SL2(Z) : Gamma_0(N)].
std::int64_t gamma0_index(std::int64_t n);

struct RescaledLattice {
  std::int64_t c = 1;
  std::int64_t width = 1;
  Matrix4<Rational> basis;   ///< columns: a basis of T
  Integer index;             ///< [T : L]
  Matrix4<Rational> gram;    ///< 4w * basis^T A basis
  bool integral = false;
  bool even = false;
  Rational det;
  /// The closed form det R matches: (4w)^4 |D|/|D^c|^2 or 4^3 w^4 |D|/|D^c|^2.
  bool det_matches_full_scale = false;
};

/// Requires c | N.
RescaledLattice rescaled_lattice(const QuadForm& q, std::int64_t c);

/// (1/index) sum over cusps of w^2 / |D^c|, with multiplicity.
Rational cusp_sum(const QuadForm& q);
/// g(c) = |D_c| phi(gcd(c,N/c)) / (c^2 gcd(c,N/c)^2).
Rational cusp_g(const DiscGroup& g, std::int64_t n, std::int64_t c);
/// Factor of cusp_sum at p | N; the product over p | N is cusp_sum.
Rational cusp_sum_local(const DiscGroup& g, std::int64_t n, std::int64_t p);
/// The two-case bound h(p) from the p-Sylow exponents, p odd, p | N.
Rational h_of_p(const DiscGroup& g, std::int64_t n, std::int64_t p);

/// max{(N^2 D)^{1/4+eps}, N^{1+eps}}.
double petersson_bound(const QuadForm& q, double eps);

}  // namespace quatlat
