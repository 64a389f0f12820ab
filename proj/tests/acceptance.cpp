// Acceptance checks: one PASS/FAIL line per criterion.  The exit status is
// nonzero on any failure that is not a documented counterexample.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "quatlat/density.hpp"
#include "quatlat/discriminant.hpp"
#include "quatlat/eisenstein.hpp"
#include "quatlat/exceptions.hpp"
#include "quatlat/padic.hpp"

using namespace quatlat;
using namespace quatlat::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  /// Failure matches a documented counterexample to the criterion itself;
  /// still reported as FAIL but not counted in the exit status.
  std::string known;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> body;
};

// Every criterion quantifies over the same corpus.
const std::vector<QuadForm>& corpus() {
  static const std::vector<QuadForm> c = random_corpus(50, 10);
  return c;
}

Outcome genus_one() {
  const auto theta = theta_coeffs(four_squares(), 200);
  double worst = 0;
  for (std::int64_t n = 1; n <= 200; ++n)
    worst = std::max(worst, std::abs(eisenstein_coeff(four_squares(), n).value.value - static_cast<double>(theta[n])));
  std::ostringstream s;
  s << "max |a_E - r_Q| = " << worst;
  return {worst <= 1e-6, s.str()};
}

Outcome watson_phenomenon() {
  const QuadForm q = watson();
  std::int64_t missing = 0;
  for (std::int64_t n = 1; n <= 2000; ++n)
    if (!is_locally_represented(q, n)) ++missing;
  const auto r3 = represent_count(q, 3), r147 = represent_count(q, 147), r7203 = represent_count(q, 7203);
  const Escalator e = escalator_check(q, 147, 1);
  std::ostringstream s;
  s << "not local: " << missing << ", r(3,147,7203) = " << r3 << "," << r147 << "," << r7203 << ", escalator p = " << e.p;
  return {missing == 0 && r3 == 0 && r147 == 0 && r7203 == 0 && e.p == 7 && e.verified, s.str()};
}

Outcome form_6780_odd() {
  const auto theta = theta_coeffs(form_6780(), 1001);
  std::int64_t misses = 0;
  for (std::int64_t n = 1; n <= 1001; n += 2)
    if (theta[n] == 0) ++misses;
  return {misses == 0, "odd n <= 1001 missed: " + std::to_string(misses)};
}

Outcome cross_engine() {
  std::int64_t checked = 0, mismatches = 0;
  for (const auto& q : corpus())
    for (std::int64_t p : {2, 3, 5, 7})
      for (std::int64_t n = 1; n <= 50; ++n) {
        ++checked;
        if (density_bruteforce(q, n, p).value != density_recursive(q, n, p).value) ++mismatches;
      }
  return {mismatches == 0 && corpus().size() >= 50,
          std::to_string(corpus().size()) + " forms, " + std::to_string(checked) + " densities, " +
              std::to_string(mismatches) + " mismatches"};
}

Outcome lower_bounds() {
  std::int64_t checked = 0, violations = 0, unexplained = 0;
  std::string first;
  for (const auto& q : corpus()) {
    std::vector<std::int64_t> primes{2, 3, 5, 7};
    for (const auto p : prime_divisors(q.disc()))
      if (p > 7) primes.push_back(p);
    for (const auto p : primes)
      for (std::int64_t n = 1; n <= 50; ++n) {
        const Rational beta = density_recursive(q, n, p).value;
        for (auto c : {LocalCondition::Strong, LocalCondition::Primitive, LocalCondition::General}) {
          Rational bound;
          try {
            bound = density_lower_bound(q, n, p, c);
          } catch (const PreconditionViolated&) {
            continue;
          }
          ++checked;
          if (beta < bound) {
            ++violations;
            if (p != 2 || c != LocalCondition::General) ++unexplained;
            if (first.empty())
              first = "first: " + q.to_string() + " p=" + std::to_string(p) + " n=" + std::to_string(n) + " " +
                      to_string(c) + " beta=" + to_string(beta) + " < " + to_string(bound);
          }
        }
      }
  }
  Outcome o{violations == 0, std::to_string(checked) + " bounds, " + std::to_string(violations) + " violations"};
  if (!first.empty()) o.detail += "; " + first;
  if (violations > 0 && unexplained == 0)
    o.known = "the GENERAL bound at p = 2 is false when Q ~ A + 2B with A anisotropic and "
              "B(x) = 0 mod 8 for primitive x; see README";
  return o;
}

Outcome cusp_combinatorics() {
  std::int64_t violations = 0, cusps_seen = 0;
  for (const auto& q : corpus()) {
    const std::int64_t n = q.level();
    std::int64_t widths = 0;
    for (const auto& d : cusps(n)) widths += d.multiplicity * d.width;
    if (widths != gamma0_index(n)) ++violations;
    const DiscGroup g = disc_group(q);
    for (const auto c : divisors(n)) {
      const SubgroupSizes s = subgroup_sizes(g, c);
      if (s.image * s.kernel != g.order()) ++violations;
      const DcStarCoset coset = dcstar_coset(g, c);
      if (!in_image(g, c, Vector4<Rational>(coset.representative * Rational(2)))) ++violations;
    }
    for (const auto& d : cusp_table(q)) {
      ++cusps_seen;
      const RescaledLattice r = rescaled_lattice(q, d.c);
      if (!r.integral || !r.even) ++violations;
    }
  }
  return {violations == 0, std::to_string(cusps_seen) + " cusps, " + std::to_string(violations) + " violations"};
}

Outcome cusp_sum_bound() {
  std::int64_t violations = 0;
  Rational worst_h = 0;
  for (const auto& q : corpus()) {
    const DiscGroup g = disc_group(q);
    const std::int64_t n = q.level();
    Rational bound = 4;
    for (const auto p : prime_divisors(n)) {
      if (p == 2) continue;
      const Rational h = h_of_p(g, n, p);
      worst_h = std::max(worst_h, h);
      if (h > 2) ++violations;
      bound *= 2 * std::min(h, Rational(2));
    }
    if (cusp_sum(q) > bound) ++violations;
  }
  return {violations == 0, "max h(p) = " + to_string(worst_h) + ", " + std::to_string(violations) + " violations"};
}

Outcome reciprocity() {
  std::mt19937_64 rng(500);
  std::uniform_int_distribution<std::int64_t> d(-10000, 10000);
  int pairs = 0, violations = 0;
  while (pairs < 500) {
    const std::int64_t a = d(rng), b = d(rng);
    if (a == 0 || b == 0) continue;
    ++pairs;
    int prod = hilbert_symbol(Rational(a), Rational(b), kInfinity);
    for (const auto p : prime_divisors(2 * std::abs(a) * std::abs(b)))
      prod *= hilbert_symbol(Rational(a), Rational(b), p);
    if (prod != 1) ++violations;
  }
  return {violations == 0, std::to_string(pairs) + " pairs, " + std::to_string(violations) + " violations"};
}

bool close(double a, double b) { return std::abs(a / b - 1) <= 1e-12; }

Outcome evaluators() {
  const ThresholdSet w = thresholds(watson(), 0, 1);
  const ThresholdSet f = thresholds(four_squares(), 0, 1);
  const bool ok = close(w.t[0], 614656) && close(f.t[0], 256) && close(f.t[1], 1024) && close(f.t[2], 16384) &&
                  close(f.t[3], 16384) && close(petersson_bound(watson(), 0), 28) &&
                  close(petersson_bound(four_squares(), 0), 4);
  std::ostringstream s;
  s << "t1(watson) = " << w.t[0] << ", petersson(watson) = " << petersson_bound(watson(), 0);
  return {ok, s.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "genus-one oracle, four squares, n <= 200", 30, genus_one},
      {2, "x^2+y^2+7z^2+7w^2 exceptions and escalator", 60, watson_phenomenon},
      {3, "discriminant 6780 form represents odd n <= 1001", 120, form_6780_odd},
      {4, "recursive density equals brute force", 0, cross_engine},
      {5, "density lower bounds are sound", 0, lower_bounds},
      {6, "cusp combinatorics and integrality of R", 0, cusp_combinatorics},
      {7, "cusp sum bound and h(p) <= 2", 0, cusp_sum_bound},
      {8, "Hilbert reciprocity, 500 pairs", 0, reciprocity},
      {9, "threshold and Petersson evaluators", 0, evaluators},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      o.ok = false;
      o.detail += ", over time limit";
    }
    if (!o.ok && o.known.empty()) ++failures;
    std::printf("%s %d %s: %s (%.2fs)\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), secs);
    if (!o.ok && !o.known.empty()) std::printf("     known counterexample: %s\n", o.known.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
