#include "quatlat/discriminant.hpp"

#include <cmath>
#include <numeric>

#include "quatlat/error.hpp"

namespace quatlat {

namespace {

Rational frac(const Rational& r) { return r - Rational(floor_div(mp::numerator(r), mp::denominator(r))); }

bool is_integral(const Vector4<Rational>& v) {
  for (int i = 0; i < 4; ++i)
    if (mp::denominator(v(i)) != 1) return false;
  return true;
}

Vector4<Rational> unit_vector(int i) {
  Vector4<Rational> e = Vector4<Rational>::Zero();
  e(i) = 1;
  return e;
}

Integer igcd(const Integer& a, std::int64_t b) { return mp::gcd(a, Integer(b)); }

// Basis of the preimage of D_c: L together with the c-torsion generators.
Matrix4<Rational> kernel_lattice(const DiscGroup& g, std::int64_t c) {
  std::vector<Vector4<Rational>> gens;
  for (int i = 0; i < 4; ++i) gens.push_back(unit_vector(i));
  for (int i = 0; i < 4; ++i) {
    const Integer step = g.factors[i] / igcd(g.factors[i], c);
    gens.push_back(Vector4<Rational>(g.generators.col(i) * Rational(step)));
  }
  return lattice_basis(gens);
}

Matrix4<Rational> image_lattice(const DiscGroup& g, std::int64_t c) {
  std::vector<Vector4<Rational>> gens;
  for (int i = 0; i < 4; ++i) gens.push_back(unit_vector(i));
  for (int i = 0; i < 4; ++i) gens.push_back(Vector4<Rational>(g.generators.col(i) * Rational(c)));
  return lattice_basis(gens);
}

std::int64_t checked_width(std::int64_t n, std::int64_t c) {
  return n / std::gcd(c * c, n);
}

}  // namespace

Integer DiscGroup::order() const { return factors[0] * factors[1] * factors[2] * factors[3]; }

Rational DiscGroup::q_value(const Vector4<Rational>& x) const {
  return Rational((x.transpose() * cast_matrix<Rational>(gram) * x)(0, 0)) / 2;
}

Rational DiscGroup::b_value(const Vector4<Rational>& x, const Vector4<Rational>& y) const {
  return (x.transpose() * cast_matrix<Rational>(gram) * y)(0, 0);
}

std::array<Integer, 4> DiscGroup::coordinates(const Vector4<Rational>& x) const {
  const Vector4<Rational> k = to_coords * x;
  std::array<Integer, 4> out;
  for (int i = 0; i < 4; ++i) {
    if (mp::denominator(k(i)) != 1) throw PreconditionViolated("vector is not in the dual lattice");
    out[i] = mp::numerator(k(i)) % factors[i];
    if (out[i] < 0) out[i] += factors[i];
  }
  return out;
}

DiscGroup disc_group(const QuadForm& q) {
  DiscGroup g;
  g.gram = q.gram();
  const SmithForm sf = smith_normal_form(q.integer_gram());
  for (int i = 0; i < 4; ++i) g.factors[i] = mp::abs(sf.S(i, i));
  const Matrix4<Rational> v = cast_matrix<Rational>(sf.V);
  for (int i = 0; i < 4; ++i) g.generators.col(i) = v.col(i) / Rational(g.factors[i]);
  g.to_coords = rational_inverse(g.generators);
  for (int i = 0; i < 4; ++i) {
    g.quadratic[i] = frac(g.q_value(g.generators.col(i)));
    for (int j = 0; j < 4; ++j) g.bilinear(i, j) = frac(g.b_value(g.generators.col(i), g.generators.col(j)));
  }
  return g;
}

SubgroupSizes subgroup_sizes(const DiscGroup& g, std::int64_t c) {
  if (c < 1) throw PreconditionViolated("c must be positive");
  SubgroupSizes s{1, 1};
  for (const auto& d : g.factors) {
    const Integer k = igcd(d, c);
    s.kernel *= k;
    s.image *= d / k;
  }
  return s;
}

bool in_image(const DiscGroup& g, std::int64_t c, const Vector4<Rational>& x) {
  return is_integral(Vector4<Rational>(rational_inverse(image_lattice(g, c)) * x));
}

DcStarCoset dcstar_coset(const DiscGroup& g, std::int64_t c) {
  if (c < 1) throw PreconditionViolated("c must be positive");
  // gamma -> c gamma^2/2 is additive mod 1 on D_c, so it suffices to meet
  // the condition on a basis H of the preimage of D_c.  With alpha = A^{-1} y
  // the system reads H^T y = -c q_H mod Z^4, solved by y = -c H^{-T} q_H.
  const Matrix4<Rational> h = kernel_lattice(g, c);
  Vector4<Rational> qh;
  for (int k = 0; k < 4; ++k) qh(k) = g.q_value(h.col(k));
  const Vector4<Rational> y = Rational(-c) * (rational_inverse(h).transpose() * qh);
  if (!is_integral(y)) throw Inconsistent("the D^{c*} congruence system has no solution");
  Vector4<Rational> alpha = rational_inverse(cast_matrix<Integer>(g.gram)) * y;
  for (int i = 0; i < 4; ++i) alpha(i) = frac(alpha(i));
  return {alpha, in_image(g, c, alpha)};
}

std::int64_t gamma0_index(std::int64_t n) {
  std::int64_t idx = n;
  for (const auto p : prime_divisors(n)) idx = idx / p * (p + 1);
  return idx;
}

std::vector<CuspDatum> cusps(std::int64_t n) {
  if (n < 1) throw PreconditionViolated("N must be positive");
  std::vector<CuspDatum> out;
  for (const auto c : divisors(n)) {
    CuspDatum d;
    d.c = c;
    d.multiplicity = euler_phi(std::gcd(c, n / c));
    d.width = checked_width(n, c);
    out.push_back(d);
  }
  return out;
}

RescaledLattice rescaled_lattice(const QuadForm& q, std::int64_t c) {
  const std::int64_t n = q.level();
  if (c < 1 || n % c != 0) throw PreconditionViolated("c must divide the level");
  const DiscGroup g = disc_group(q);
  const DcStarCoset coset = dcstar_coset(g, c);
  RescaledLattice r;
  r.c = c;
  r.width = checked_width(n, c);
  std::vector<Vector4<Rational>> gens;
  for (int i = 0; i < 4; ++i) gens.push_back(unit_vector(i));
  for (int i = 0; i < 4; ++i) gens.push_back(Vector4<Rational>(g.generators.col(i) * Rational(c)));
  gens.push_back(coset.representative);
  r.basis = lattice_basis(gens);
  const Rational vol = determinant(r.basis);
  // L = Z^4 has covolume 1, so the basis determinant is +-1/[T:L].
  if (mp::abs(mp::numerator(vol)) != 1) throw Inconsistent("T does not contain L");
  r.index = mp::denominator(vol);
  r.gram = Rational(4 * r.width) * (r.basis.transpose() * cast_matrix<Rational>(q.gram()) * r.basis);
  r.integral = true;
  r.even = true;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (mp::denominator(r.gram(i, j)) != 1) r.integral = false;
  for (int i = 0; i < 4; ++i)
    if (mp::denominator(r.gram(i, i)) != 1 || mp::numerator(r.gram(i, i)) % 2 != 0) r.even = false;
  r.det = determinant(r.gram);
  const Integer image = subgroup_sizes(g, c).image;
  const Integer w4 = mp::pow(Integer(r.width), 4);
  const Rational full = Rational(256 * w4 * g.order(), image * image);
  r.det_matches_full_scale = r.det == full;
  return r;
}

std::vector<CuspDatum> cusp_table(const QuadForm& q) {
  const DiscGroup g = disc_group(q);
  std::vector<CuspDatum> out = cusps(q.level());
  for (auto& d : out) {
    const SubgroupSizes s = subgroup_sizes(g, d.c);
    d.image_size = s.image;
    d.kernel_size = s.kernel;
    d.coset_equal = dcstar_coset(g, d.c).equal;
    d.r_disc = rescaled_lattice(q, d.c).det;
  }
  return out;
}

Rational cusp_sum(const QuadForm& q) {
  const DiscGroup g = disc_group(q);
  const std::int64_t n = q.level();
  Rational s = 0;
  for (const auto& d : cusps(n)) {
    const Integer w(d.width);
    s += Rational(d.multiplicity * w * w, subgroup_sizes(g, d.c).image);
  }
  return s / gamma0_index(n);
}

Rational cusp_g(const DiscGroup& g, std::int64_t n, std::int64_t c) {
  if (c < 1 || n % c != 0) throw PreconditionViolated("c must divide N");
  const std::int64_t gg = std::gcd(c, n / c);
  const Integer den = Integer(c) * c * gg * gg;
  return Rational(subgroup_sizes(g, c).kernel * euler_phi(gg), den);
}

Rational cusp_sum_local(const DiscGroup& g, std::int64_t n, std::int64_t p) {
  if (!is_prime(p) || n % p != 0) throw PreconditionViolated("p must be a prime dividing N");
  const int e = valuation(n, p);
  Rational f = 0;
  for (int i = 0; i <= e; ++i) f += cusp_g(g, n, ipow(p, i));
  const int od = valuation(g.order(), p);
  return f * rpow(p, e - od) / (Rational(1) + Rational(1, p));
}

Rational h_of_p(const DiscGroup& g, std::int64_t n, std::int64_t p) {
  if (p == 2) throw PreconditionViolated("h(p) is defined for odd p only");
  if (!is_prime(p) || n % p != 0) throw PreconditionViolated("p must be a prime dividing N");
  std::array<int, 4> v;
  for (int i = 0; i < 4; ++i) v[i] = valuation(g.factors[i], p);
  if (v[0] != 0) throw PreconditionViolated("h(p) needs a primitive form");
  const int a1 = v[1], a2 = v[2], a3 = v[3];
  const Rational pr(p);
  const Rational tail = pr / (p - 1) + Rational(1, p * p - 1);
  Rational first;
  if (2 * a1 <= a3) first = a1;
  else first = rpow(p, 2 * a1 - a3) * (Rational(1) + Rational(a1 - 1, p));
  return pr / (p + 1) * rpow(p, -a1 - a2) * (Rational(1) + Rational(p - 1, p) * (first + tail));
}

double petersson_bound(const QuadForm& q, double eps) {
  if (eps < 0) throw PreconditionViolated("eps must be nonnegative");
  const double n = static_cast<double>(q.level());
  const double d = static_cast<double>(q.disc());
  return std::max(std::pow(n * n * d, 0.25 + eps), std::pow(n, 1 + eps));
}

}  // namespace quatlat
