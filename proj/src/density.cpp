#include "quatlat/density.hpp"

#include <algorithm>
#include <limits>

#include "quatlat/error.hpp"

namespace quatlat {

namespace {

using Counts = std::vector<uint128>;

constexpr std::int64_t kMaxModulus = std::int64_t{1} << 22;
constexpr int kAllScales = std::numeric_limits<int>::max();

std::int64_t checked_power(std::int64_t p, int k) {
  std::int64_t pk = 1;
  for (int i = 0; i < k; ++i) {
    if (pk > kMaxModulus / p) throw ResourceLimit("residue counting modulus p^" + std::to_string(k) + " too large");
    pk *= p;
  }
  return pk;
}

uint128 upow(std::int64_t p, int e) {
  uint128 r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<uint128>(p);
  return r;
}

std::int64_t mulmod128(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<int128>(a) * b % m);
}

// #{w mod 2^j : U(w) = r} for an even unimodular binary U; U is
// Z_2-equivalent to xy or to the norm form x^2+xy+y^2 of the unramified
// quadratic extension, whose counts are closed-form.
uint128 binary_unit_count(JordanBlock::Kind kind, int j, std::int64_t r) {
  if (j == 0) return 1;
  const std::int64_t m = std::int64_t{1} << j;
  r = mod(r, m);
  const uint128 half = uint128{1} << (j - 1);
  if (kind == JordanBlock::Kind::Hyperbolic) {
    if (r == 0) return static_cast<uint128>(j + 2) * half;
    return static_cast<uint128>(valuation(Integer(r), 2) + 1) * half;
  }
  if (r == 0) return uint128{1} << (2 * (j - (j + 1) / 2));
  return valuation(Integer(r), 2) % 2 == 0 ? 3 * half : 0;
}

// Count vector of one block: entry r is #{w mod p^k : p^a Q_i(w) = r}.
// `restricted` keeps only w = 0 mod p.
Counts block_counts(const JordanBlock& b, std::int64_t p, int k, std::int64_t pk, bool restricted) {
  Counts out(static_cast<std::size_t>(pk), 0);
  const int a = b.scale;
  if (a >= k) {
    out[0] = upow(p, (restricted ? k - 1 : k) * b.dim);
    return out;
  }
  const std::int64_t m = pk / static_cast<std::int64_t>(upow(p, a));
  const std::int64_t pa = pk / m;
  const uint128 mult = upow(p, a * b.dim);
  if (b.dim == 1) {
    const std::int64_t step = restricted ? p : 1;
    const std::int64_t c = residue(b.unit(0, 0) / Rational(2), m);
    for (std::int64_t w = 0; w < m; w += step) {
      const std::int64_t v = mulmod128(c, mulmod128(w, w, m), m);
      out[static_cast<std::size_t>(v * pa)] += mult;
    }
    return out;
  }
  const int j = k - a;
  for (std::int64_t r = 0; r < m; ++r) {
    uint128 c;
    if (!restricted) {
      c = binary_unit_count(b.kind, j, r);
    } else if (j == 1) {
      c = r == 0 ? 1 : 0;
    } else {
      // w = 2w', w' mod 2^{j-1}: U(w) = 4 U(w').
      c = r % 4 == 0 ? 4 * binary_unit_count(b.kind, j - 2, r / 4) : 0;
    }
    out[static_cast<std::size_t>(r * pa)] = c * mult;
  }
  return out;
}

// Count vectors are invariant under r -> s^2 r for units s, so a
// convolution only needs one evaluation per orbit.
class Orbits {
 public:
  Orbits(std::int64_t p, int k) : p_(p), k_(k), pk_(checked_power(p, k)), square_(static_cast<std::size_t>(p), false) {
    for (std::int64_t x = 1; x < p; ++x) square_[static_cast<std::size_t>(x * x % p)] = true;
  }
  std::size_t size() const { return static_cast<std::size_t>(1 + 8 * k_); }
  std::size_t key(std::int64_t r) const {
    if (r == 0) return 0;
    int e = 0;
    while (r % p_ == 0) {
      r /= p_;
      ++e;
    }
    std::size_t cls;
    if (p_ == 2) {
      const int bits = std::min(3, k_ - e);
      cls = static_cast<std::size_t>(r & ((std::int64_t{1} << bits) - 1));
    } else {
      cls = square_[static_cast<std::size_t>(r % p_)] ? 0 : 1;
    }
    return 1 + 8 * static_cast<std::size_t>(e) + cls;
  }
  std::int64_t modulus() const { return pk_; }

 private:
  std::int64_t p_;
  int k_;
  std::int64_t pk_;
  std::vector<bool> square_;
};

Counts convolve(const Counts& a, const Counts& b, const Orbits& orbits) {
  const std::size_t n = a.size();
  std::vector<std::size_t> nb;
  for (std::size_t j = 0; j < n; ++j)
    if (b[j] != 0) nb.push_back(j);
  std::vector<uint128> value(orbits.size(), 0);
  std::vector<bool> known(orbits.size(), false);
  Counts out(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t key = orbits.key(static_cast<std::int64_t>(r));
    if (!known[key]) {
      uint128 s = 0;
      for (const std::size_t j : nb) s += a[r >= j ? r - j : r + n - j] * b[j];
      value[key] = s;
      known[key] = true;
    }
    out[r] = value[key];
  }
  return out;
}

// #{x mod p^k : Q(x) = target}, blocks with scale <= restrict_upto
// limited to x_i = 0 mod p.
uint128 count_restricted(const JordanSplitting& j, const Rational& target, int k, int restrict_upto) {
  const std::int64_t p = j.p;
  const Orbits orbits(p, k);
  const std::int64_t pk = orbits.modulus();
  const std::int64_t t = residue(target, pk);
  std::vector<Counts> vecs;
  for (const auto& b : j.blocks) vecs.push_back(block_counts(b, p, k, pk, b.scale <= restrict_upto));
  if (vecs.empty()) return t == 0 ? 1 : 0;
  Counts acc = vecs[0];
  for (std::size_t i = 1; i + 1 < vecs.size(); ++i) acc = convolve(acc, vecs[i], orbits);
  if (vecs.size() == 1) return acc[static_cast<std::size_t>(t)];
  const Counts& last = vecs.back();
  uint128 total = 0;
  for (std::int64_t r = 0; r < pk; ++r) {
    if (acc[static_cast<std::size_t>(r)] == 0) continue;
    const std::int64_t s = mod(t - r, pk);
    total += acc[static_cast<std::size_t>(r)] * last[static_cast<std::size_t>(s)];
  }
  return total;
}

Rational normalized(uint128 count, std::int64_t p, int dim, int k) {
  const Integer num(to_string(count));
  return Rational(num, mp::pow(Integer(p), static_cast<unsigned>((dim - 1) * k)));
}

template <typename Map>
JordanSplitting shifted(const JordanSplitting& j, Map&& f) {
  JordanSplitting out = j;
  for (auto& b : out.blocks) b.scale = f(b.scale);
  std::stable_sort(out.blocks.begin(), out.blocks.end(),
                   [](const JordanBlock& x, const JordanBlock& y) { return x.scale < y.scale; });
  return out;
}

// Scale-0 <-> scale-1 swap with deeper scales moved up by one.
JordanSplitting bad_one_map(const JordanSplitting& j) {
  return shifted(j, [](int a) { return a == 0 ? 1 : (a == 1 ? 0 : a - 1); });
}

JordanSplitting bad_two_map(const JordanSplitting& j) {
  return shifted(j, [](int a) { return a >= 2 ? a - 2 : a; });
}

Rational good_density(const JordanSplitting& j, const Rational& n) {
  const std::int64_t p = j.p;
  const int d0 = j.dim_scales(0, 0);
  if (d0 == 0) return Rational(0);
  if (p != 2) {
    std::vector<Rational> units;
    for (const auto& b : j.blocks)
      if (b.scale == 0) units.push_back(b.unit(0, 0) / Rational(2));
    const std::int64_t c = residue(n, p);
    const Integer count = diagonal_count_mod_p(units, c, p) - (c == 0 ? 1 : 0);
    return Rational(count) * rpow(p, 1 - d0);
  }
  // Good-type solutions have ord_2(Ax) <= 1, so modulus 8 suffices; 16 confirms.
  const int r = j.dim();
  Rational values[2];
  for (int i = 0; i < 2; ++i) {
    const int k = 3 + i;
    const uint128 good = count_restricted(j, n, k, -1) - count_restricted(j, n, k, 0);
    values[i] = normalized(good, p, r, k);
  }
  if (values[0] != values[1]) throw Inconsistent("2-adic good-type count did not stabilize at modulus 8");
  return values[0];
}

Rational recursive_density(const JordanSplitting& j, const Rational& n, int depth) {
  if (depth < 0) throw Inconsistent("density recursion exceeded its depth bound");
  const std::int64_t p = j.p;
  const int t = valuation(n, p);
  const int r = j.dim();
  Rational beta = good_density(j, n);
  if (t >= 1) beta += rpow(p, 1 - j.dim_scales(0, 0)) * good_density(bad_one_map(j), n / Rational(p));
  if (t >= 2) {
    // Zero type plus bad type II in one step.
    const int d2 = j.dim_scales(2, kAllScales);
    beta += rpow(p, d2 + 2 - r) * recursive_density(bad_two_map(j), n / Rational(p * p), depth - 1);
  }
  return beta;
}

JordanSplitting split_for(const QuadForm& q, std::int64_t p) {
  if (!is_prime(p)) throw PreconditionViolated("p must be prime");
  return jordan_decompose(q, p);
}

void require_positive(std::int64_t n) {
  if (n < 1) throw PreconditionViolated("n must be positive");
}

}  // namespace

std::string to_string(DensityMethod m) {
  switch (m) {
    case DensityMethod::Brute:
      return "BRUTE";
    case DensityMethod::Recursive:
      return "RECURSIVE";
    default:
      return "CLOSED";
  }
}

std::string to_string(LocalCondition c) {
  switch (c) {
    case LocalCondition::Strong:
      return "STRONG";
    case LocalCondition::Primitive:
      return "PRIMITIVE";
    default:
      return "GENERAL";
  }
}

Integer diagonal_count_mod_p(std::span<const Rational> units, std::int64_t c, std::int64_t p) {
  const int d = static_cast<int>(units.size());
  if (d == 0) return c % p == 0 ? 1 : 0;
  Integer delta = 1;
  for (const auto& u : units) delta = delta * Integer(residue(u, p)) % p;
  const Integer pd1 = mp::pow(Integer(p), static_cast<unsigned>(d - 1));
  c = mod(c, p);
  if (d % 2 == 0) {
    const Integer sign = (d / 2) % 2 == 0 ? delta : Integer(-delta);
    const int eta = kronecker(sign, p);
    const Integer nu = c == 0 ? Integer(p - 1) : Integer(-1);
    return pd1 + nu * mp::pow(Integer(p), static_cast<unsigned>((d - 2) / 2)) * eta;
  }
  const Integer sign = ((d - 1) / 2) % 2 == 0 ? delta : Integer(-delta);
  const int eta = kronecker(sign * c, p);
  return pd1 + mp::pow(Integer(p), static_cast<unsigned>((d - 1) / 2)) * eta;
}

uint128 splitting_count(const JordanSplitting& j, const Rational& target, int k) {
  return count_restricted(j, target, k, -1);
}

Rational splitting_density_bruteforce(const JordanSplitting& j, const Rational& target, int* level) {
  if (target == 0) throw PreconditionViolated("density target must be nonzero");
  const std::int64_t p = j.p;
  const int t = valuation(target, p);
  const int e2 = p == 2 ? 1 : 0;
  // Every solution mod p^k (k > ord_p(2n)) has v = ord_p(Ax) <= min(ord_p(2n),
  // a_max + e2 + ord_p(n)/2); counts are exact multiples from k = 2v+1 on.
  const int v = std::min(t + e2, j.max_scale() + e2 + t / 2);
  int k = std::max(t + e2 + 1, 2 * v + 1);
  int od = e2;
  for (const auto& b : j.blocks) {
    od += b.scale * b.dim;
    od += b.dim == 1 ? valuation(b.unit(0, 0), p) : valuation(b.unit.determinant(), p);
  }
  const int cap = std::max(k, t + 2 * od + 3);
  const int r = j.dim();
  Rational prev = normalized(splitting_count(j, target, k), p, r, k);
  for (; k <= cap; ++k) {
    const Rational next = normalized(splitting_count(j, target, k + 1), p, r, k + 1);
    if (next == prev) {
      if (level) *level = k;
      return prev;
    }
    prev = next;
  }
  throw ResourceLimit("brute-force density did not stabilize");
}

Rational splitting_density(const JordanSplitting& j, const Rational& target) {
  if (target == 0) throw PreconditionViolated("density target must be nonzero");
  return recursive_density(j, target, valuation(target, j.p) + 2);
}

bool splitting_represents(const JordanSplitting& j, const Rational& target) {
  return splitting_density(j, target) > 0;
}

DensityValue density_bruteforce(const QuadForm& q, std::int64_t n, std::int64_t p) {
  require_positive(n);
  DensityValue out{Rational(0), p, n, DensityMethod::Brute, 0};
  out.value = splitting_density_bruteforce(split_for(q, p), Rational(n), &out.level);
  return out;
}

SolutionTypeCensus census(const QuadForm& q, std::int64_t n, std::int64_t p, int k) {
  require_positive(n);
  if (k < 1) throw PreconditionViolated("census needs k >= 1");
  const JordanSplitting j = split_for(q, p);
  SolutionTypeCensus c;
  c.p = p;
  c.k = k;
  const Rational target(n);
  c.total = count_restricted(j, target, k, -1);
  const uint128 z0 = count_restricted(j, target, k, 0);
  const uint128 z01 = count_restricted(j, target, k, 1);
  c.zero = count_restricted(j, target, k, kAllScales);
  c.good = c.total - z0;
  c.bad_one = z0 - z01;
  c.bad_two = z01 - c.zero;
  return c;
}

DensityValue density_recursive(const QuadForm& q, std::int64_t n, std::int64_t p) {
  require_positive(n);
  return {splitting_density(split_for(q, p), Rational(n)), p, n, DensityMethod::Recursive, 0};
}

DensityParts density_parts(const QuadForm& q, std::int64_t n, std::int64_t p) {
  require_positive(n);
  const JordanSplitting j = split_for(q, p);
  const Rational target(n);
  const int t = valuation(target, p);
  const int r = j.dim();
  DensityParts parts{good_density(j, target), 0, 0, 0};
  if (t >= 1) parts.bad_one = rpow(p, 1 - j.dim_scales(0, 0)) * good_density(bad_one_map(j), target / Rational(p));
  if (t >= 2) {
    const Rational quarter = target / Rational(p * p);
    parts.zero = rpow(p, 2 - r) * recursive_density(j, quarter, t);
    const int d2 = j.dim_scales(2, kAllScales);
    parts.bad_two = rpow(p, d2 + 2 - r) * recursive_density(bad_two_map(j), quarter, t) - parts.zero;
  }
  return parts;
}

DensityValue density_unramified(const QuadForm& q, std::int64_t n, std::int64_t p) {
  require_positive(n);
  if (q.level() % p == 0) throw PreconditionViolated("density_unramified needs p not dividing the level");
  if (n % p != 0) {
    const Rational v = Rational(1) - Rational(kronecker(q.invariants().char_disc, p), p * p);
    return {v, p, n, DensityMethod::Closed, 0};
  }
  return density_recursive(q, n, p);
}

DensityValue yang_good_density(const QuadForm& q, std::int64_t n, std::int64_t p) {
  require_positive(n);
  if (p == 2) throw PreconditionViolated("the closed good-type formula needs p odd");
  if (n % p == 0) throw PreconditionViolated("the closed good-type formula needs p not dividing n");
  const JordanSplitting j = split_for(q, p);
  Integer det = 1;
  int d = 0;
  for (const auto& b : j.blocks)
    if (b.scale == 0) {
      det = det * Integer(residue(b.unit(0, 0) / Rational(2), p)) % p;
      ++d;
    }
  const int sign_pow = d / 2;
  const int minus_one = kronecker(std::int64_t{-1}, p);
  const int lead = (sign_pow % 2 == 0 ? 1 : minus_one) * kronecker(det, p);
  Rational v;
  if (d % 2 == 0) {
    // f(n) = -1/p folds into p^{-d/2}.
    v = Rational(1) - Rational(lead) * rpow(p, -d / 2);
  } else {
    v = Rational(1) + Rational(lead * kronecker(n, p)) * rpow(p, (1 - d) / 2);
  }
  return {v, p, n, DensityMethod::Closed, 0};
}

bool is_locally_represented(const QuadForm& q, std::int64_t n) {
  require_positive(n);
  for (const auto p : prime_divisors(2 * q.disc()))
    if (density_recursive(q, n, p).value == 0) return false;
  return true;
}

bool has_strong_local_solubility(const QuadForm& q, std::int64_t n) {
  require_positive(n);
  for (const auto p : prime_divisors(2 * q.disc()))
    if (density_parts(q, n, p).good == 0) return false;
  return true;
}

bool is_primitively_locally_represented(const QuadForm& q, std::int64_t n) {
  require_positive(n);
  for (const auto p : prime_divisors(2 * q.disc())) {
    const DensityParts parts = density_parts(q, n, p);
    if (parts.total() - parts.zero == 0) return false;
  }
  return true;
}

Rational density_lower_bound(const QuadForm& q, std::int64_t n, std::int64_t p, LocalCondition c) {
  require_positive(n);
  const Rational one_minus = Rational(1) - Rational(1, p);
  switch (c) {
    case LocalCondition::Strong:
      if (!has_strong_local_solubility(q, n)) throw PreconditionViolated("n is not strongly locally soluble");
      return p == 2 ? Rational(1, 4) : one_minus;
    case LocalCondition::Primitive: {
      if (!is_primitively_locally_represented(q, n))
        throw PreconditionViolated("n is not primitively locally represented");
      const int od = valuation(q.disc(), p);
      if (p == 2) return Rational(1, 16) * rpow(2, -((od + 1) / 2));
      return rpow(p, -(od / 2)) * one_minus;
    }
    default: {
      if (!is_locally_represented(q, n)) throw PreconditionViolated("n is not locally represented");
      const int on = valuation(n, p);
      const AnisotropyReport rep = anisotropy_depth(q, p);
      const int m = rep.r_p ? std::min(*rep.r_p, on) : on;
      if (p == 2) return rpow(2, -1 - m);
      return one_minus * rpow(p, -m);
    }
  }
}

}  // namespace quatlat
