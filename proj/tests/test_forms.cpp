#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "corpus.hpp"
#include "quatlat/error.hpp"
#include "quatlat/forms.hpp"
#include "quatlat/matrix.hpp"

using namespace quatlat;
using namespace quatlat::testing;

namespace {

// Box enumeration: |x_i| <= sqrt(2 B (A^{-1})_{ii}) bounds the ellipsoid.
std::vector<std::uint64_t> naive_theta(const QuadForm& q, std::int64_t bound) {
  const Matrix4<Rational> inv = rational_inverse(q.integer_gram());
  std::array<std::int64_t, 4> r{};
  for (int i = 0; i < 4; ++i)
    r[i] = static_cast<std::int64_t>(std::sqrt(2.0 * bound * inv(i, i).convert_to<double>())) + 1;
  std::vector<std::uint64_t> out(bound + 1, 0);
  IntVector4 x;
  for (x(0) = -r[0]; x(0) <= r[0]; ++x(0))
    for (x(1) = -r[1]; x(1) <= r[1]; ++x(1))
      for (x(2) = -r[2]; x(2) <= r[2]; ++x(2))
        for (x(3) = -r[3]; x(3) <= r[3]; ++x(3)) {
          const std::int64_t v = q.value(x);
          if (v <= bound) ++out[v];
        }
  return out;
}

// Least N over divisors of 2D checked by brute force.
std::int64_t naive_level(const QuadForm& q) {
  const Matrix4<Rational> inv = rational_inverse(q.integer_gram());
  for (std::int64_t n = 1;; ++n) {
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i)
      for (int j = 0; j < 4 && ok; ++j) {
        const Rational v = inv(i, j) * n;
        if (mp::denominator(v) != 1) ok = false;
        else if (i == j && mp::numerator(v) % 2 != 0) ok = false;
      }
    if (ok) return n;
  }
}

IntMatrix4 random_unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 3), coef(-2, 2);
  IntMatrix4 u = IntMatrix4::Identity();
  for (int s = 0; s < 8; ++s) {
    const int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    IntMatrix4 e = IntMatrix4::Identity();
    e(i, j) = coef(rng);
    u = u * e;
  }
  return u;
}

}  // namespace

TEST_CASE("parse_form builds the Gram matrix") {
  const QuadForm f = four_squares();
  CHECK(f.gram() == IntMatrix4(IntMatrix4::Identity() * 2));
  IntMatrix4 w = IntMatrix4::Zero();
  w.diagonal() << 2, 2, 14, 14;
  CHECK(watson().gram() == w);
  IntMatrix4 g;
  g << 2, 0, 0, 0, 0, 6, 3, 3, 0, 3, 10, 1, 0, 3, 1, 68;
  CHECK(form_6780().gram() == g);
  CHECK(format_form(form_6780()) == "1,0,0,0,3,3,3,5,1,34");
}

TEST_CASE("parse_form errors") {
  CHECK_THROWS_AS(parse_form("1,0,0,0,1,0,0,1,0"), InvalidForm);
  CHECK_THROWS_AS(parse_form("1,0,0,0,1,0,0,1,0,1.5"), NotIntegral);
  CHECK_THROWS_AS(parse_form("1,0,0,0,1,0,0,1,0,x"), NotIntegral);
  CHECK_THROWS_AS(parse_form("1,0,0,0,1,0,0,-1,0,1"), NotPositiveDefinite);
  CHECK_THROWS_AS(parse_form("1,3,0,0,1,0,0,1,0,1"), NotPositiveDefinite);
}

TEST_CASE("discriminant and level") {
  CHECK(discriminant(four_squares()) == 16);
  CHECK(discriminant(watson()) == 784);
  CHECK(discriminant(form_6780()) == 6780);
  CHECK(level(four_squares()) == 4);
  CHECK(level(watson()) == 28);
  CHECK(level(form_6780()) == 6780);
  for (const auto& q : random_corpus(60)) {
    CHECK(q.level() == naive_level(q));
    CHECK((4 * q.disc()) % q.level() == 0);
    const Integer n4 = mp::pow(Integer(q.level()), 4);
    CHECK(n4 % q.disc() == 0);
  }
}

TEST_CASE("represent_count small values") {
  CHECK(represent_count(four_squares(), 0) == 1);
  CHECK(represent_count(four_squares(), 1) == 8);
  CHECK(represent_count(watson(), 3) == 0);
  CHECK(theta_coeffs(four_squares(), 4) == std::vector<std::uint64_t>{1, 8, 24, 32, 24});
  CHECK(theta_coeffs(watson(), 0) == std::vector<std::uint64_t>{1});
  CHECK(theta_coeffs(watson(), 3).back() == 0);
}

TEST_CASE("four squares theta matches 8 * sum of divisors not divisible by 4") {
  const auto t = theta_coeffs(four_squares(), 300);
  for (std::int64_t n = 1; n <= 300; ++n) {
    std::uint64_t s = 0;
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0 && d % 4 != 0) s += d;
    CHECK(t[n] == 8 * s);
  }
}

TEST_CASE("theta agrees with box enumeration on the corpus") {
  for (const auto& q : random_corpus(50)) {
    const auto fast = theta_coeffs(q, 30);
    CHECK(fast == naive_theta(q, 30));
    for (std::int64_t n : {1, 7, 19, 30}) CHECK(represent_count(q, n) == fast[n]);
  }
}

TEST_CASE("parallel enumeration is deterministic") {
  EnumOptions opt;
  opt.jobs = 3;
  CHECK(theta_coeffs(form_6780(), 200, opt) == theta_coeffs(form_6780(), 200));
  CHECK(represent_count(watson(), 7203, opt) == 0);
}

TEST_CASE("enumeration cap raises ResourceLimit") {
  EnumOptions opt;
  opt.cap = 1000;
  CHECK_THROWS_AS(theta_coeffs(four_squares(), 500, opt), ResourceLimit);
}

TEST_CASE("reduce") {
  const ReducedForm id = reduce(four_squares());
  CHECK(id.form == four_squares());
  CHECK(id.transform == IntMatrix4::Identity());

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const IntMatrix4 u = random_unimodular(rng);
    const QuadForm scrambled = four_squares().transformed(u);
    const ReducedForm r = reduce(scrambled);
    CHECK(r.form.gram() == IntMatrix4(IntMatrix4::Identity() * 2));
  }

  auto check_invariants = [](const QuadForm& q) {
    const ReducedForm r = reduce(q);
    CHECK(is_unimodular(cast_matrix<Integer>(r.transform)));
    CHECK(IntMatrix4(r.transform.transpose() * q.gram() * r.transform) == r.form.gram());
    CHECK(r.form.disc() == q.disc());
    Rational prod = 1;
    for (int i = 0; i < 4; ++i) {
      CHECK(r.outer_coeffs[i] > 0);
      prod *= r.outer_coeffs[i];
      if (i + 1 < 4) CHECK(r.outer_coeffs[i] >= Rational(3, 4) * r.outer_coeffs[i + 1]);
    }
    CHECK(prod == Rational(q.disc(), 16));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < i; ++j) CHECK(mp::abs(r.offdiag(i, j)) <= Rational(1, 2));
    CHECK(theta_coeffs(r.form, 20) == theta_coeffs(q, 20));
  };
  check_invariants(form_6780());
  for (const auto& q : random_corpus(30)) {
    check_invariants(q);
    const QuadForm s = q.transformed(random_unimodular(rng));
    CHECK(s.disc() == q.disc());
    CHECK(represent_count(s, 11) == represent_count(q, 11));
  }
}

TEST_CASE("primitivity flag") {
  CHECK(four_squares().is_primitive());
  CHECK_FALSE(parse_form("2,0,0,0,2,0,0,2,0,2").is_primitive());
  CHECK(parse_form("2,1,0,0,2,0,0,2,0,2").is_primitive());
}
