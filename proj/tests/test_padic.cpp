#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "quatlat/density.hpp"
#include "quatlat/error.hpp"
#include "quatlat/matrix.hpp"
#include "quatlat/padic.hpp"

using namespace quatlat;
using namespace quatlat::testing;

namespace {

std::int64_t pmod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Some primitive (x, y, z) mod p^k with z^2 - a x^2 - b y^2 = 0 mod p^k and
// k >= 2 ord_p(gradient) + 1.  With k = 2 (ord 2 + ord a + ord b) + 1 this
// is equivalent to a nontrivial Q_p zero.  The unit coordinate is scaled to 1.
bool naive_hilbert(std::int64_t a, std::int64_t b, std::int64_t p) {
  const int k = 2 * (valuation(Integer(2), p) + valuation(Integer(a), p) + valuation(Integer(b), p)) + 1;
  const std::int64_t pk = ipow(p, k);
  auto vgrad = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    int v = k;
    for (std::int64_t g : {2 * z, 2 * a * x, 2 * b * y})
      if (pmod(g, pk) != 0) v = std::min(v, valuation(Integer(pmod(g, pk)), p));
    return v;
  };
  auto ok = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    const Integer f = Integer(z) * z - Integer(a) * x * x - Integer(b) * y * y;
    if (f % pk != 0) return false;
    return k >= 2 * vgrad(x, y, z) + 1;
  };
  for (std::int64_t u = 0; u < pk; ++u)
    for (std::int64_t w = 0; w < pk; ++w) {
      if (ok(1, u, w) || ok(p * u % pk, 1, w) || ok(p * u % pk, p * w % pk, 1)) return true;
    }
  return false;
}

// Q_p-isotropy by a Hensel search over primitive vectors mod p^k,
// k = 2 ord_p(D) + 1 (for primitive x, ord_p(Ax) <= ord_p(D)).
bool naive_isotropic(const QuadForm& q, std::int64_t p) {
  const int k = 2 * valuation(Integer(q.disc()), p) + 1;
  const std::int64_t pk = ipow(p, k);
  const IntMatrix4 a = q.gram();
  IntVector4 x;
  for (int lead = 0; lead < 4; ++lead) {
    // x_lead = 1, earlier coordinates divisible by p.
    std::int64_t total = 1;
    for (int i = 0; i < 4; ++i)
      if (i != lead) total *= i < lead ? pk / p : pk;
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::int64_t rem = idx;
      for (int i = 0; i < 4; ++i) {
        if (i == lead) {
          x(i) = 1;
          continue;
        }
        const std::int64_t range = i < lead ? pk / p : pk;
        x(i) = (rem % range) * (i < lead ? p : 1);
        rem /= range;
      }
      if (pmod(q.value(x), pk) != 0) continue;
      const IntVector4 g = a * x;
      int v = k;
      for (int i = 0; i < 4; ++i)
        if (pmod(g(i), pk) != 0) v = std::min(v, valuation(Integer(pmod(g(i), pk)), p));
      if (k >= 2 * v + 1) return true;
    }
  }
  return false;
}

bool nonsingular_zero_mod_p(const QuadForm& q, std::int64_t p) {
  IntVector4 x;
  for (x(0) = 0; x(0) < p; ++x(0))
    for (x(1) = 0; x(1) < p; ++x(1))
      for (x(2) = 0; x(2) < p; ++x(2))
        for (x(3) = 0; x(3) < p; ++x(3)) {
          if (pmod(q.value(x), p) != 0) continue;
          const IntVector4 g = q.gram() * x;
          for (int i = 0; i < 4; ++i)
            if (pmod(g(i), p) != 0) return true;
        }
  return false;
}

Matrix4<Rational> random_rational_basis(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  for (;;) {
    Matrix4<Rational> m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = Rational(c(rng), 1 + (i + j) % 2);
    if (determinant(m) != 0) return m;
  }
}

}  // namespace

TEST_CASE("hilbert symbol examples") {
  CHECK(hilbert_symbol(-1, -1, 2) == -1);
  CHECK(hilbert_symbol(2, 5, 5) == -1);
  CHECK(hilbert_symbol(3, 7, 5) == 1);
  CHECK(hilbert_symbol(-1, -1, kInfinity) == -1);
  CHECK(hilbert_symbol(Rational(1, 3), 3, 3) == hilbert_symbol(3, 3, 3));
}

TEST_CASE("hilbert symbol against exhaustive solubility") {
  const std::vector<std::int64_t> vals{-15, -10, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 14, 15};
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (auto a : vals)
      for (auto b : vals) {
        const int k = 2 * (valuation(Integer(2), p) + valuation(Integer(a), p) + valuation(Integer(b), p)) + 1;
        if (ipow(p, 2 * k) > 3'000'000) continue;
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(p);
        CHECK((hilbert_symbol(a, b, p) == 1) == naive_hilbert(a, b, p));
      }
  }
}

TEST_CASE("hilbert reciprocity") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> d(-400, 400);
  for (int t = 0; t < 300; ++t) {
    const std::int64_t a = d(rng), b = d(rng);
    if (a == 0 || b == 0) continue;
    int prod = hilbert_symbol(a, b, kInfinity);
    for (auto p : prime_divisors(2 * a * b)) prod *= hilbert_symbol(a, b, p);
    CHECK(prod == 1);
  }
}

TEST_CASE("hasse invariant is independent of the diagonalization") {
  CHECK(hasse_invariant(four_squares(), 2) == 1);
  CHECK(hasse_invariant(four_squares(), 3) == 1);
  std::mt19937_64 rng(5);
  for (const auto& q : random_corpus(25)) {
    for (auto p : {std::int64_t{2}, std::int64_t{3}, std::int64_t{5}, std::int64_t{7}}) {
      const int h = hasse_invariant(q, p);
      for (int t = 0; t < 3; ++t) {
        const Matrix4<Rational> m = random_rational_basis(rng);
        const Matrix4<Rational> g = m.transpose() * q.rational_gram() * m;
        const auto d = rational_diagonal(g);
        CHECK(hasse_invariant(std::span<const Rational>(d), p) == h);
      }
    }
  }
}

TEST_CASE("jordan decomposition examples") {
  const auto j7 = jordan_decompose(watson(), 7);
  REQUIRE(j7.blocks.size() == 4);
  const std::vector<int> scales{0, 0, 1, 1};
  for (int i = 0; i < 4; ++i) {
    CHECK(j7.blocks[i].scale == scales[i]);
    CHECK(j7.blocks[i].dim == 1);
  }
  const auto j2 = jordan_decompose(four_squares(), 2);
  REQUIRE(j2.blocks.size() == 4);
  for (const auto& b : j2.blocks) CHECK(b.scale == 0);
  for (const auto& b : jordan_decompose(four_squares(), 7).blocks) CHECK(b.scale == 0);
  CHECK_THROWS_AS(jordan_decompose(watson(), 7, 2), PrecisionTooLow);
}

TEST_CASE("jordan decomposition reassembles with a p-adically invertible basis") {
  auto corpus = random_corpus(60, 20);
  corpus.push_back(watson());
  corpus.push_back(form_6780());
  for (const auto& q : corpus) {
    for (auto p : {std::int64_t{2}, std::int64_t{3}, std::int64_t{5}, std::int64_t{7}}) {
      const auto j = jordan_decompose(q, p);
      CAPTURE(q.to_string());
      CAPTURE(p);
      CHECK(j.dim() == 4);
      const Matrix4<Rational>& t = j.transform;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(is_p_integral(t(r, c), p));
      CHECK(valuation(determinant(t), p) == 0);
      CHECK(Matrix4<Rational>(t.transpose() * q.rational_gram() * t) == j.block_gram());
      int total = 0;
      for (std::size_t b = 0; b < j.blocks.size(); ++b) {
        const auto& blk = j.blocks[b];
        if (b > 0) CHECK(j.blocks[b - 1].scale <= blk.scale);
        if (p != 2) CHECK(blk.dim == 1);
        const Rational det = blk.dim == 1 ? blk.unit(0, 0) : Rational(blk.unit.determinant());
        // 1x1 blocks at 2 store 2u.
        CHECK(valuation(det, p) == (p == 2 && blk.dim == 1 ? 1 : 0));
        total += blk.scale * blk.dim + valuation(det, p);
        if (blk.dim == 2) {
          CHECK(is_p_integral(blk.unit(0, 0) / 2, 2));
          CHECK(is_p_integral(blk.unit(1, 1) / 2, 2));
        }
      }
      CHECK(total == valuation(Integer(q.disc()), p));
    }
  }
}

TEST_CASE("anisotropy examples") {
  CHECK(is_anisotropic(watson(), 7));
  CHECK_FALSE(is_anisotropic(watson(), 2));
  CHECK_FALSE(is_anisotropic(four_squares(), 3));
  CHECK(is_anisotropic(four_squares(), 2));

  CHECK_FALSE(anisotropy_depth(watson(), 7).r_p.has_value());
  CHECK(anisotropy_depth(watson(), 7).anisotropic);
  CHECK_FALSE(anisotropy_depth(four_squares(), 2).r_p.has_value());

  const auto r3 = anisotropy_depth(watson(), 3);
  REQUIRE(r3.r_p.has_value());
  CHECK(*r3.r_p == 0);
  REQUIRE(r3.witness.has_value());
  CHECK(r3.hensel_certified);
  // x^2 + y^2 + 9 z^2 + 9 w^2: x^2 + y^2 is anisotropic mod 3, so the best
  // zero has 3 | x, y with a unit in the scaled four-squares part.
  const auto r9 = anisotropy_depth(parse_form("1,0,0,0,1,0,0,9,0,9"), 3);
  REQUIRE(r9.r_p.has_value());
  CHECK(*r9.r_p == 1);
}

TEST_CASE("anisotropy agrees with a Hensel search") {
  int compared = 0;
  for (const auto& q : random_corpus(80)) {
    for (auto p : {std::int64_t{2}, std::int64_t{3}, std::int64_t{5}}) {
      const int k = 2 * valuation(Integer(q.disc()), p) + 1;
      if (ipow(p, 3 * k) > 3'000'000) continue;
      CAPTURE(q.to_string());
      CAPTURE(p);
      CHECK(is_anisotropic(q, p) == !naive_isotropic(q, p));
      ++compared;
    }
    for (auto p : {std::int64_t{3}, std::int64_t{5}, std::int64_t{7}, std::int64_t{11}})
      if ((2 * q.disc()) % p != 0) CHECK_FALSE(is_anisotropic(q, p));
  }
  CHECK(compared > 50);
}

TEST_CASE("anisotropy depth properties") {
  auto corpus = random_corpus(60, 20);
  corpus.push_back(watson());
  corpus.push_back(form_6780());
  corpus.push_back(parse_form("1,0,0,0,1,0,0,9,0,9"));
  corpus.push_back(parse_form("1,0,0,0,1,0,0,4,0,4"));
  for (const auto& q : corpus) {
    for (auto p : {std::int64_t{2}, std::int64_t{3}, std::int64_t{5}, std::int64_t{7}}) {
      CAPTURE(q.to_string());
      CAPTURE(p);
      const auto rep = anisotropy_depth(q, p);
      CHECK(rep.anisotropic == !rep.r_p.has_value());
      CHECK(rep.anisotropic == is_anisotropic(q, p));
      if (!rep.r_p) continue;
      CHECK(*rep.r_p <= valuation(Integer(q.level()), p));
      REQUIRE(rep.witness.has_value());
      const Vector4<Integer> w = *rep.witness;
      const Integer value = q.value(w);
      CHECK((value == 0 || valuation(value, p) >= rep.witness_modulus_exponent));
      CHECK(rep.witness_modulus_exponent == 2 * (valuation(Integer(q.level()), p) + 3));
      CHECK(rep.hensel_certified);
      CHECK(hensel_liftable(q, w, p));
      if (p != 2) CHECK((*rep.r_p == 0) == nonsingular_zero_mod_p(q, p));
    }
  }
}
