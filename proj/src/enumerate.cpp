// Exact lattice-point enumeration for positive-definite quaternary forms.
//
// With y = (x_k, ..., x_3) and M_k the leading k x k minor of A, the
// minimum of x^T A x over real x_0..x_{k-1} is y^T S_k y where S_k is the
// Schur complement of the leading block; P_k = M_k S_k is integral, so
// the pruning test y^T P_k y <= 2 B M_k runs entirely in integers.

#include <algorithm>
#include <atomic>
#include <thread>

#include "quatlat/error.hpp"
#include "quatlat/forms.hpp"
#include "quatlat/matrix.hpp"

namespace quatlat {

namespace {

struct Level {
  int128 p[4][4]{};  // P_k on indices k..3, stored at absolute indices
  int128 minor = 1;  // M_k
};

int128 to_int128(const Integer& z) {
  if (mp::abs(z) > Integer("85070591730234615865843651857942052863"))
    throw ResourceLimit("enumeration coefficient overflow");
  // Two 64-bit halves; sign handled separately.
  const bool neg = z < 0;
  Integer a = mp::abs(z);
  const Integer two64 = Integer(1) << 64;
  const auto hi = static_cast<std::uint64_t>(a / two64);
  const auto lo = static_cast<std::uint64_t>(a % two64);
  const int128 v = static_cast<int128>((static_cast<uint128>(hi) << 64) | lo);
  return neg ? -v : v;
}

std::array<Level, 4> schur_levels(const IntMatrix4& gram) {
  const Matrix4<Rational> a = cast_matrix<Rational>(gram);
  std::array<Level, 4> levels;
  for (int k = 0; k < 4; ++k) {
    const Rational minor = leading_minor(a, k);
    Matrix4<Rational> s = a;
    if (k > 0) {
      // Gaussian elimination of the first k variables.
      for (int piv = 0; piv < k; ++piv)
        for (int i = piv + 1; i < 4; ++i) {
          const Rational f = s(i, piv) / s(piv, piv);
          for (int j = piv; j < 4; ++j) s(i, j) -= f * s(piv, j);
        }
    }
    levels[k].minor = to_int128(mp::numerator(minor));
    for (int i = k; i < 4; ++i)
      for (int j = k; j < 4; ++j) {
        // After elimination the trailing block is the Schur complement.
        const Rational v = s(i, j) * minor;
        if (mp::denominator(v) != 1) throw Inconsistent("scaled Schur complement not integral");
        levels[k].p[i][j] = to_int128(mp::numerator(v));
      }
  }
  return levels;
}

// ceil(a / b) and floor(a / b) for b > 0.
int128 ceil_div128(int128 a, int128 b) {
  int128 q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}
int128 floor_div128(int128 a, int128 b) {
  int128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

int128 isqrt128(int128 v) { return static_cast<int128>(isqrt(static_cast<uint128>(v))); }

class Enumerator {
 public:
  Enumerator(const IntMatrix4& gram, std::int64_t bound, std::uint64_t cap,
             std::atomic<std::uint64_t>& nodes)
      : levels_(schur_levels(gram)), bound_(bound), cap_(cap), nodes_(nodes) {}

  // Inclusive range of x_k given x_{k+1..3}; empty when lo > hi.
  std::pair<int128, int128> range(int k, const int128* x) const {
    const Level& lv = levels_[k];
    const int128 alpha = lv.p[k][k];
    int128 beta = 0, gamma = 0;
    for (int j = k + 1; j < 4; ++j) {
      beta += lv.p[k][j] * x[j];
      for (int i = k + 1; i < 4; ++i) gamma += lv.p[i][j] * x[i] * x[j];
    }
    const int128 c = 2 * static_cast<int128>(bound_) * lv.minor;
    const int128 disc = beta * beta - alpha * (gamma - c);
    if (disc < 0) return {1, 0};
    const int128 s = isqrt128(disc);
    return {ceil_div128(-beta - s, alpha), floor_div128(-beta + s, alpha)};
  }

  // Innermost coefficients of x^T A x = alpha x0^2 + 2 beta x0 + gamma.
  void inner(const int128* x, int128& alpha, int128& beta, int128& gamma) const {
    const Level& lv = levels_[0];
    alpha = lv.p[0][0];
    beta = 0;
    gamma = 0;
    for (int j = 1; j < 4; ++j) {
      beta += lv.p[0][j] * x[j];
      for (int i = 1; i < 4; ++i) gamma += lv.p[i][j] * x[i] * x[j];
    }
  }

  void tick(std::uint64_t amount) {
    local_ += amount;
    if (local_ >= 4096) flush();
  }
  void flush() {
    const std::uint64_t total = nodes_.fetch_add(local_) + local_;
    local_ = 0;
    if (total > cap_) throw ResourceLimit("enumeration exceeded " + std::to_string(cap_) + " lattice points");
  }

  // Calls leaf(x) for every (x_1, x_2, x_3) with x_3 in [lo3, hi3] whose
  // projection lies inside the ellipsoid.
  template <typename Leaf>
  void walk(int128 lo3, int128 hi3, Leaf&& leaf) {
    int128 x[4] = {0, 0, 0, 0};
    for (x[3] = lo3; x[3] <= hi3; ++x[3]) {
      const auto [lo2, hi2] = range(2, x);
      for (x[2] = lo2; x[2] <= hi2; ++x[2]) {
        const auto [lo1, hi1] = range(1, x);
        tick(1 + static_cast<std::uint64_t>(hi1 >= lo1 ? hi1 - lo1 + 1 : 0));
        for (x[1] = lo1; x[1] <= hi1; ++x[1]) leaf(x);
      }
    }
    flush();
  }

  std::pair<int128, int128> outer_range() const {
    int128 x[4] = {0, 0, 0, 0};
    return range(3, x);
  }

 private:
  std::array<Level, 4> levels_;
  std::int64_t bound_;
  std::uint64_t cap_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t local_ = 0;
};

// Runs body(lo, hi, index) over a partition of the outermost range.
template <typename Body>
void partitioned(int128 lo, int128 hi, unsigned jobs, Body&& body) {
  const int128 len = hi - lo + 1;
  if (len <= 0) return;
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<int128>(len, 64))));
  if (jobs == 1) {
    body(lo, hi, 0u);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    const int128 a = lo + len * t / jobs;
    const int128 b = lo + len * (t + 1) / jobs - 1;
    threads.emplace_back([&, a, b, t] {
      try {
        body(a, b, t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::uint64_t represent_count(const QuadForm& q, std::int64_t n, const EnumOptions& opt) {
  if (n < 0) throw PreconditionViolated("represent_count needs n >= 0");
  if (n == 0) return 1;
  const ReducedForm red = reduce(q);
  std::atomic<std::uint64_t> nodes{0};
  const Enumerator probe(red.form.gram(), n, opt.cap, nodes);
  const auto [lo, hi] = probe.outer_range();
  const unsigned jobs = std::max(1u, opt.jobs);
  std::vector<std::uint64_t> partial(jobs, 0);
  partitioned(lo, hi, jobs, [&](int128 a, int128 b, unsigned t) {
    Enumerator e(red.form.gram(), n, opt.cap, nodes);
    std::uint64_t count = 0;
    const int128 target = 2 * static_cast<int128>(n);
    e.walk(a, b, [&](const int128* x) {
      int128 alpha, beta, gamma;
      e.inner(x, alpha, beta, gamma);
      // alpha x0^2 + 2 beta x0 + gamma = 2n
      const int128 disc = beta * beta - alpha * (gamma - target);
      if (disc < 0) return;
      const int128 s = isqrt128(disc);
      if (s * s != disc) return;
      if ((-beta + s) % alpha == 0) ++count;
      if (s != 0 && (-beta - s) % alpha == 0) ++count;
    });
    partial[t] = count;
  });
  std::uint64_t total = 0;
  for (const auto c : partial) total += c;
  return total;
}

std::vector<std::uint64_t> theta_coeffs(const QuadForm& q, std::int64_t bound, const EnumOptions& opt) {
  if (bound < 0) throw PreconditionViolated("theta_coeffs needs bound >= 0");
  std::vector<std::uint64_t> out(static_cast<std::size_t>(bound) + 1, 0);
  out[0] = 1;
  if (bound == 0) return out;
  const ReducedForm red = reduce(q);
  std::atomic<std::uint64_t> nodes{0};
  const Enumerator probe(red.form.gram(), bound, opt.cap, nodes);
  const auto [lo, hi] = probe.outer_range();
  const unsigned jobs = std::max(1u, opt.jobs);
  std::vector<std::vector<std::uint64_t>> partial(jobs);
  partitioned(lo, hi, jobs, [&](int128 a, int128 b, unsigned t) {
    Enumerator e(red.form.gram(), bound, opt.cap, nodes);
    auto& counts = partial[t];
    counts.assign(out.size(), 0);
    e.walk(a, b, [&](const int128* x) {
      int128 xx[4] = {0, x[1], x[2], x[3]};
      const auto [lo0, hi0] = e.range(0, xx);
      if (lo0 > hi0) return;
      e.tick(static_cast<std::uint64_t>(hi0 - lo0 + 1));
      int128 alpha, beta, gamma;
      e.inner(x, alpha, beta, gamma);
      for (int128 x0 = lo0; x0 <= hi0; ++x0) {
        const int128 v = (alpha * x0 + 2 * beta) * x0 + gamma;
        counts[static_cast<std::size_t>(v / 2)] += 1;
      }
    });
  });
  // The origin is counted by the sweep as well.
  out[0] = 0;
  for (const auto& counts : partial)
    for (std::size_t i = 0; i < counts.size() && i < out.size(); ++i) out[i] += counts[i];
  return out;
}

}  // namespace quatlat
