#include "quatlat/padic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "quatlat/density.hpp"
#include "quatlat/error.hpp"
#include "quatlat/matrix.hpp"

namespace quatlat {

namespace {

// a = p^alpha * u with u a p-adic unit, as (alpha, u) using the integer
// num * den which has the same square class.
std::pair<int, Integer> split_unit(const Rational& a, std::int64_t p) {
  Integer z = mp::numerator(a) * mp::denominator(a);
  int v = 0;
  const Integer pp(p);
  while (z % pp == 0) {
    z /= pp;
    ++v;
  }
  return {v, z};
}

int legendre(const Integer& u, std::int64_t p) { return kronecker(u, p); }

int mod8(const Integer& u) {
  Integer r = u % 8;
  if (r < 0) r += 8;
  return static_cast<int>(r);
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, std::int64_t p) {
  if (a == 0 || b == 0) throw PreconditionViolated("hilbert_symbol needs nonzero arguments");
  if (p == kInfinity) return (a < 0 && b < 0) ? -1 : 1;
  const auto [alpha, u] = split_unit(a, p);
  const auto [beta, v] = split_unit(b, p);
  if (p == 2) {
    const int uu = mod8(u), vv = mod8(v);
    const int eps_u = ((uu - 1) / 2) % 2, eps_v = ((vv - 1) / 2) % 2;
    const int om_u = ((uu * uu - 1) / 8) % 2, om_v = ((vv * vv - 1) / 8) % 2;
    const int e = eps_u * eps_v + alpha * om_v + beta * om_u;
    return e % 2 == 0 ? 1 : -1;
  }
  int s = 1;
  if ((alpha % 2 == 1) && (beta % 2 == 1) && (p % 4 == 3)) s = -s;
  if (beta % 2 == 1) s *= legendre(u, p);
  if (alpha % 2 == 1) s *= legendre(v, p);
  return s;
}

bool is_square_in_qp(const Rational& a, std::int64_t p) {
  if (a == 0) return true;
  if (p == kInfinity) return a > 0;
  const auto [alpha, u] = split_unit(a, p);
  if (alpha % 2 != 0) return false;
  if (p == 2) return mod8(u) == 1;
  return legendre(u, p) == 1;
}

std::vector<Rational> rational_diagonal(const Matrix4<Rational>& gram) {
  Matrix4<Rational> b = gram / Rational(2);
  std::vector<Rational> d;
  for (int i = 0; i < 4; ++i) {
    if (b(i, i) == 0) {
      int j = i + 1;
      while (j < 4 && b(j, j) == 0) ++j;
      if (j < 4) {
        b.row(i).swap(b.row(j));
        b.col(i).swap(b.col(j));
      } else {
        for (j = i + 1; j < 4 && b(i, j) == 0; ++j) {
        }
        if (j == 4) throw Singular("degenerate form");
        b.row(i) += b.row(j);
        b.col(i) += b.col(j);
      }
    }
    d.push_back(b(i, i));
    for (int k = i + 1; k < 4; ++k) {
      const Rational f = b(k, i) / b(i, i);
      b.row(k) -= f * b.row(i);
      b.col(k) -= f * b.col(i);
    }
  }
  return d;
}

int hasse_invariant(std::span<const Rational> diagonal, std::int64_t p) {
  int h = 1;
  for (std::size_t i = 0; i < diagonal.size(); ++i)
    for (std::size_t j = i + 1; j < diagonal.size(); ++j) h *= hilbert_symbol(diagonal[i], diagonal[j], p);
  return h;
}

int hasse_invariant(const QuadForm& q, std::int64_t p) {
  const auto d = rational_diagonal(q.rational_gram());
  return hasse_invariant(std::span<const Rational>(d), p);
}

Rational JordanBlock::unit_value(const Rational& w0, const Rational& w1) const {
  if (dim == 1) return unit(0, 0) / Rational(2) * w0 * w0;
  return unit(0, 0) / Rational(2) * w0 * w0 + unit(0, 1) * w0 * w1 + unit(1, 1) / Rational(2) * w1 * w1;
}

int JordanSplitting::dim() const {
  int d = 0;
  for (const auto& b : blocks) d += b.dim;
  return d;
}

int JordanSplitting::dim_scales(int lo, int hi) const {
  int d = 0;
  for (const auto& b : blocks)
    if (b.scale >= lo && b.scale <= hi) d += b.dim;
  return d;
}

int JordanSplitting::max_scale() const {
  int m = 0;
  for (const auto& b : blocks) m = std::max(m, b.scale);
  return m;
}

Matrix4<Rational> JordanSplitting::block_gram() const {
  Matrix4<Rational> g = Matrix4<Rational>::Zero();
  int at = 0;
  for (const auto& b : blocks) {
    const Rational f = rpow(p, b.scale);
    for (int i = 0; i < b.dim; ++i)
      for (int j = 0; j < b.dim; ++j) g(at + i, at + j) = f * b.unit(i, j);
    at += b.dim;
  }
  return g;
}

int default_precision(const QuadForm& q, std::int64_t p) {
  return valuation(Integer(2 * q.disc()), p) + 3;
}

namespace {

JordanSplitting compute_jordan(const QuadForm& q, std::int64_t p, int K);

using JordanKey = std::tuple<std::array<std::int64_t, 10>, std::int64_t, int>;
std::mutex jordan_mutex;
std::map<JordanKey, JordanSplitting> jordan_cache;
constexpr std::size_t kJordanCacheLimit = 1 << 14;

}  // namespace

JordanSplitting jordan_decompose(const QuadForm& q, std::int64_t p, int K) {
  const int need = default_precision(q, p);
  if (K < 0) K = need;
  if (K < need)
    throw PrecisionTooLow("precision " + std::to_string(K) + " below required " + std::to_string(need));
  const JordanKey key{q.coefficients(), p, K};
  {
    std::lock_guard lock(jordan_mutex);
    if (const auto it = jordan_cache.find(key); it != jordan_cache.end()) return it->second;
  }
  JordanSplitting out = compute_jordan(q, p, K);
  std::lock_guard lock(jordan_mutex);
  if (jordan_cache.size() >= kJordanCacheLimit) jordan_cache.clear();
  jordan_cache.emplace(key, out);
  return out;
}

namespace {

JordanSplitting compute_jordan(const QuadForm& q, std::int64_t p, int K) {
  const Matrix4<Rational> a = q.rational_gram();
  Matrix4<Rational> t = Matrix4<Rational>::Identity();
  auto gram = [&] { return Matrix4<Rational>(t.transpose() * a * t); };
  const int inf = std::numeric_limits<int>::max();

  JordanSplitting out;
  out.p = p;
  out.precision = K;
  std::vector<int> start;  // first column of each block
  int r = 0;
  while (r < 4) {
    Matrix4<Rational> g = gram();
    int best = inf, bi = -1, bj = -1;
    for (int i = r; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        const int v = valuation_or(g(i, j), p, inf);
        // Ties prefer the diagonal.
        if (v < best || (v == best && i == j && bi != bj)) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) throw Singular("degenerate form in jordan_decompose");

    if (bi != bj && p != 2) {
      // Make the diagonal carry the minimal valuation: e_i += e_j.
      t.col(bi) += t.col(bj);
      bj = bi;
    }
    if (bi == bj) {
      t.col(r).swap(t.col(bi));
      g = gram();
      for (int k = r + 1; k < 4; ++k) t.col(k) -= (g(k, r) / g(r, r)) * t.col(r);
      g = gram();
      JordanBlock blk;
      blk.dim = 1;
      blk.scale = valuation(g(r, r), p) - (p == 2 ? 1 : 0);
      blk.unit(0, 0) = g(r, r) / rpow(p, blk.scale);
      out.blocks.push_back(blk);
      start.push_back(r);
      r += 1;
      continue;
    }
    // p = 2 and the minimum sits strictly off the diagonal: 2x2 pivot.
    t.col(r).swap(t.col(bi));
    if (bj == r) bj = bi;
    t.col(r + 1).swap(t.col(bj));
    g = gram();
    Matrix2<Rational> m = g.block<2, 2>(r, r);
    const Rational det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Matrix2<Rational> minv;
    minv << m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det;
    for (int k = r + 2; k < 4; ++k) {
      Eigen::Matrix<Rational, 2, 1> rhs(g(r, k), g(r + 1, k));
      const Eigen::Matrix<Rational, 2, 1> c = minv * rhs;
      t.col(k) -= c(0) * t.col(r) + c(1) * t.col(r + 1);
    }
    g = gram();
    JordanBlock blk;
    blk.dim = 2;
    blk.scale = valuation(g(r, r + 1), p);
    blk.unit = g.block<2, 2>(r, r) / rpow(p, blk.scale);
    const Rational ac = blk.unit(0, 0) * blk.unit(1, 1) / Rational(4);
    blk.kind = valuation_or(ac, 2, inf) >= 1 ? JordanBlock::Kind::Hyperbolic : JordanBlock::Kind::Anisotropic;
    out.blocks.push_back(blk);
    start.push_back(r);
    r += 2;
  }

  // Stable sort by scale, carrying the transform columns along.
  std::vector<std::size_t> order(out.blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return out.blocks[x].scale < out.blocks[y].scale; });
  Matrix4<Rational> sorted_t;
  std::vector<JordanBlock> sorted_blocks;
  int col = 0;
  for (const auto idx : order) {
    for (int c = 0; c < out.blocks[idx].dim; ++c) sorted_t.col(col++) = t.col(start[idx] + c);
    sorted_blocks.push_back(out.blocks[idx]);
  }
  out.blocks = std::move(sorted_blocks);
  out.transform = sorted_t;
  if (Matrix4<Rational>(out.transform.transpose() * a * out.transform) != out.block_gram())
    throw Inconsistent("jordan_decompose failed to reassemble");
  return out;
}

}  // namespace

bool is_anisotropic(const QuadForm& q, std::int64_t p) {
  if (p == kInfinity) return true;
  if (!is_square_in_qp(Rational(q.disc()), p)) return false;
  return hasse_invariant(q, p) == -hilbert_symbol(Rational(-1), Rational(-1), p);
}

bool hensel_liftable(const QuadForm& q, const Vector4<Integer>& xi, std::int64_t p) {
  const Integer value = q.value(xi);
  const Vector4<Integer> g = q.integer_gram() * xi;
  int v = std::numeric_limits<int>::max();
  for (int i = 0; i < 4; ++i)
    if (g(i) != 0) v = std::min(v, valuation(g(i), p));
  if (v == std::numeric_limits<int>::max()) return false;
  if (value == 0) return true;
  return valuation(value, p) >= 2 * v + 1;
}

namespace {

// The splitting with block `skip` removed.
JordanSplitting without_block(const JordanSplitting& j, std::size_t skip) {
  JordanSplitting rest;
  rest.p = j.p;
  rest.precision = j.precision;
  for (std::size_t b = 0; b < j.blocks.size(); ++b)
    if (b != skip) rest.blocks.push_back(j.blocks[b]);
  return rest;
}

struct Candidate {
  std::size_t block = 0;
  int e = 0;
  Vector4<Rational> base;   // fixed coordinates (Jordan basis)
  std::vector<int> free;    // coordinates left to the digit search
};

// Column offset of each block in Jordan coordinates.
std::vector<int> block_offsets(const JordanSplitting& j) {
  std::vector<int> off;
  int col = 0;
  for (const auto& b : j.blocks) {
    off.push_back(col);
    col += b.dim;
  }
  return off;
}

// p-adic digit search over the free coordinates, stopping at the first
// prefix whose full vector passes the Newton criterion.
std::optional<Vector4<Rational>> digit_search(const JordanSplitting& j, const Candidate& c,
                                              std::uint64_t budget) {
  const std::int64_t p = j.p;
  const Matrix4<Rational> jg = j.block_gram();
  const int df = static_cast<int>(c.free.size());
  const int inf = std::numeric_limits<int>::max();
  std::uint64_t nodes = 0;
  std::function<bool(Vector4<Rational>&, int, const Integer&)> dfs =
      [&](Vector4<Rational>& x, int depth, const Integer& pk) -> bool {
    if (++nodes > budget) throw ResourceLimit("isotropic witness search exceeded budget");
    const Rational qx = (x.transpose() * jg * x)(0, 0) / Rational(2);
    if (depth > 0 && valuation_or(qx, p, inf) < depth) return false;
    const Vector4<Rational> g = jg * x;
    int v = inf;
    for (int i = 0; i < 4; ++i)
      if (g(i) != 0) v = std::min(v, valuation(g(i), p));
    if (v == inf) return false;
    if (qx == 0) return true;
    if (v < depth && depth >= 2 * v + 1) return true;
    if (depth > 64) return false;
    const std::int64_t children = ipow(p, df);
    for (std::int64_t idx = 0; idx < children; ++idx) {
      Vector4<Rational> next = x;
      std::int64_t rem = idx;
      for (int i = df - 1; i >= 0; --i) {
        next(c.free[i]) += Rational(Integer(rem % p) * pk);
        rem /= p;
      }
      if (dfs(next, depth + 1, pk * p)) {
        x = next;
        return true;
      }
    }
    return false;
  };
  Vector4<Rational> x = c.base;
  if (!dfs(x, 0, Integer(1))) return std::nullopt;
  return x;
}

// Tonelli-Shanks; a must be a square mod the odd prime p.
std::int64_t sqrt_mod(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  std::int64_t q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::int64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::int64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::int64_t i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    std::int64_t b = c;
    for (std::int64_t k = 0; k < m - i - 1; ++k) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

bool is_qr(std::int64_t a, std::int64_t p) { return mod(a, p) == 0 || powmod(mod(a, p), (p - 1) / 2, p) == 1; }

// Nonsingular solution mod p of sum u_i z_i^2 = nu over the unit
// coefficients u (odd p), or nothing.
std::optional<std::vector<std::int64_t>> solve_mod_p(const std::vector<std::int64_t>& u, std::int64_t nu,
                                                     std::int64_t p) {
  const std::size_t d = u.size();
  std::vector<std::int64_t> z(d, 0);
  nu = mod(nu, p);
  auto two = [&](std::size_t i, std::size_t j, std::int64_t target) -> bool {
    for (std::int64_t a = 0; a < p; ++a) {
      const std::int64_t rest = mulmod(mod(target - mulmod(u[i], mulmod(a, a, p), p), p), invmod(u[j], p), p);
      if (!is_qr(rest, p)) continue;
      z[i] = a;
      z[j] = sqrt_mod(rest, p);
      if (z[i] != 0 || z[j] != 0) return true;
    }
    return false;
  };
  if (nu != 0) {
    for (std::size_t i = 0; i < d; ++i)
      if (is_qr(mulmod(nu, invmod(u[i], p), p), p)) {
        z[i] = sqrt_mod(mulmod(nu, invmod(u[i], p), p), p);
        return z;
      }
    if (d >= 2 && two(0, 1, nu)) return z;
    return std::nullopt;
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (is_qr(mod(-mulmod(u[i], invmod(u[j], p), p), p), p)) {
        z[i] = 1;
        z[j] = sqrt_mod(mod(-mulmod(u[i], invmod(u[j], p), p), p), p);
        return z;
      }
  if (d >= 3) {
    z[2] = 1;
    if (two(0, 1, mod(-u[2], p))) return z;
  }
  return std::nullopt;
}

// Lifts a nonsingular solution of sum u_i z_i^2 = nu to precision p^K.
std::vector<Integer> hensel_lift(const std::vector<Rational>& u, const Rational& nu, std::vector<std::int64_t> z0,
                                 std::int64_t p, int K) {
  const Integer pk = mp::pow(Integer(p), static_cast<unsigned>(K));
  std::vector<Integer> z(z0.begin(), z0.end());
  std::size_t j = 0;
  while (z0[j] % p == 0) ++j;
  for (int iter = 0; iter < 2 * K + 4; ++iter) {
    Rational f = -nu;
    for (std::size_t i = 0; i < z.size(); ++i) f += u[i] * Rational(z[i] * z[i]);
    if (f == 0 || valuation(f, p) >= K) break;
    z[j] = residue(Rational(z[j]) - f / (Rational(2) * u[j] * Rational(z[j])), pk);
  }
  return z;
}

// y with sum p^{a_i} u_i y_i^2 = m to precision p^{ord m + K}, for odd p
// and a diagonal form known to represent m.
std::optional<std::vector<Integer>> solve_diagonal(const std::vector<int>& a, const std::vector<Rational>& u,
                                                   const Rational& m, std::int64_t p, int K) {
  const int s = valuation(m, p);
  const Rational mu = m / rpow(p, s);
  const std::size_t d = a.size();
  std::vector<Integer> y(d, Integer(0));
  auto pick = [&](auto pred) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d; ++i)
      if (pred(i)) idx.push_back(i);
    return idx;
  };
  auto residues = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::int64_t> r;
    std::vector<Rational> ur;
    for (const auto i : idx) {
      r.push_back(residue(u[i], p));
      ur.push_back(u[i]);
    }
    return std::pair{r, ur};
  };

  // Leading terms at ord m.
  const auto lead = pick([&](std::size_t i) { return a[i] <= s && (s - a[i]) % 2 == 0; });
  {
    const auto [r, ur] = residues(lead);
    if (const auto z0 = solve_mod_p(r, residue(mu, p), p)) {
      const auto z = hensel_lift(ur, mu, *z0, p, K);
      for (std::size_t k = 0; k < lead.size(); ++k)
        y[lead[k]] = z[k] * mp::pow(Integer(p), static_cast<unsigned>((s - a[lead[k]]) / 2));
      return y;
    }
  }
  // A hyperbolic plane at scale c <= ord m.
  for (int parity = 0; parity < 2; ++parity) {
    const auto cls = pick([&](std::size_t i) { return a[i] <= s && a[i] % 2 == parity; });
    if (cls.size() < 2) continue;
    const auto [r, ur] = residues(cls);
    const auto z0 = solve_mod_p(r, 0, p);
    if (!z0) continue;
    int c = 0;
    for (const auto i : cls) c = std::max(c, a[i]);
    const auto z = hensel_lift(ur, Rational(0), *z0, p, K + s);
    std::size_t j = 0;
    while ((*z0)[j] % p == 0) ++j;
    const Integer pk = mp::pow(Integer(p), static_cast<unsigned>(K + s));
    const Integer t = residue((m / rpow(p, c) - ur[j]) / (Rational(2) * ur[j] * Rational(z[j])), pk);
    for (std::size_t k = 0; k < cls.size(); ++k) {
      const Integer w = t * z[k] + (k == j ? 1 : 0);
      y[cls[k]] = w * mp::pow(Integer(p), static_cast<unsigned>((c - a[cls[k]]) / 2));
    }
    return y;
  }
  return std::nullopt;
}

}  // namespace

AnisotropyReport anisotropy_depth(const QuadForm& q, std::int64_t p) {
  AnisotropyReport rep;
  rep.p = p;
  if (is_anisotropic(q, p)) {
    rep.anisotropic = true;
    return rep;
  }
  const JordanSplitting j = jordan_decompose(q, p);
  const int cap = valuation(Integer(16 * q.disc()), p) + 4;

  const std::vector<int> off = block_offsets(j);
  std::optional<Candidate> best;
  int best_value = std::numeric_limits<int>::max();
  for (std::size_t b = 0; b < j.blocks.size(); ++b) {
    const JordanBlock& blk = j.blocks[b];
    const JordanSplitting rest = without_block(j, b);
    std::vector<int> rest_cols;
    for (int c = 0; c < 4; ++c)
      if (c < off[b] || c >= off[b] + blk.dim) rest_cols.push_back(c);
    for (int e = 0; blk.scale + e < std::min(best_value, cap + 1); ++e) {
      const Integer pe = mp::pow(Integer(p), static_cast<unsigned>(e));
      std::optional<Candidate> found;
      Candidate cand{b, e, Vector4<Rational>::Zero(), rest_cols};
      if (blk.kind == JordanBlock::Kind::Hyperbolic) {
        // A primitive zero of the block itself, with second coordinate 1.
        cand.base(off[b] + 1) = 1;
        cand.free = {off[b]};
        found = cand;
      } else if (blk.dim == 1) {
        const Rational m = -blk.unit_value(Rational(pe)) * rpow(p, blk.scale);
        if (splitting_represents(rest, m)) {
          cand.base(off[b]) = Rational(pe);
          found = cand;
        }
      } else {
        // x^2+xy+y^2: primitive w with entries below 4 reach every unit class.
        for (int w0 = 0; w0 < 4 && !found; ++w0)
          for (int w1 = 0; w1 < 4 && !found; ++w1) {
            if (w0 % 2 == 0 && w1 % 2 == 0) continue;
            const Rational m = -blk.unit_value(Rational(pe * w0), Rational(pe * w1)) * rpow(p, blk.scale);
            if (splitting_represents(rest, m)) {
              cand.base(off[b]) = Rational(pe * w0);
              cand.base(off[b] + 1) = Rational(pe * w1);
              found = cand;
            }
          }
      }
      if (found) {
        best_value = blk.scale + e;
        best = found;
        break;
      }
    }
  }
  if (!best) throw Inconsistent("isotropic form without an isotropic vector below the search cap");
  rep.r_p = best_value;

  // Witness: Jordan coordinates, then original coordinates, then Newton.
  const int m_exp = 2 * (valuation(Integer(q.level()), p) + 3);
  std::optional<Vector4<Rational>> xj;
  if (p == 2) {
    xj = digit_search(j, *best, 2'000'000);
  } else {
    // Odd p: the splitting is diagonal, so solve the rest directly.
    const JordanBlock& blk = j.blocks[best->block];
    const Rational m = -blk.unit_value(best->base(off[best->block])) * rpow(p, blk.scale);
    std::vector<int> a;
    std::vector<Rational> u;
    for (std::size_t b = 0; b < j.blocks.size(); ++b)
      if (b != best->block) {
        a.push_back(j.blocks[b].scale);
        u.push_back(j.blocks[b].unit_value(Rational(1)));
      }
    const int K = m_exp + 2 * valuation(Integer(q.disc()), p) + 10;
    if (const auto y = solve_diagonal(a, u, m, p, K)) {
      Vector4<Rational> x = best->base;
      for (std::size_t k = 0; k < best->free.size(); ++k) x(best->free[k]) = Rational((*y)[k]);
      xj = x;
    }
  }
  if (!xj) throw Inconsistent("no witness for a representable target");
  const Integer modulus = mp::pow(Integer(p), static_cast<unsigned>(m_exp + 8));
  const Vector4<Rational> xo = j.transform * *xj;
  Vector4<Integer> x;
  for (int i = 0; i < 4; ++i) x(i) = residue(xo(i), modulus);
  const Matrix4<Integer> a = q.integer_gram();
  for (int iter = 0; iter < 128; ++iter) {
    const Integer value = q.value(x);
    if (value == 0 || valuation(value, p) >= m_exp + 8) break;
    const Vector4<Integer> g = a * x;
    int v = std::numeric_limits<int>::max(), at = -1;
    for (int i = 0; i < 4; ++i)
      if (g(i) != 0 && valuation(g(i), p) < v) {
        v = valuation(g(i), p);
        at = i;
      }
    if (at < 0 || valuation(value, p) < 2 * v + 1) break;
    const Integer t = residue(Rational(-value, g(at)), modulus);
    x(at) = (x(at) + t) % modulus;
  }
  const Integer out_mod = mp::pow(Integer(p), static_cast<unsigned>(m_exp));
  Vector4<Integer> w;
  for (int i = 0; i < 4; ++i) {
    w(i) = x(i) % out_mod;
    if (w(i) < 0) w(i) += out_mod;
  }
  rep.witness = w;
  rep.witness_modulus_exponent = m_exp;
  const Integer value = q.value(w);
  rep.hensel_certified = (value == 0 || valuation(value, p) >= m_exp) && hensel_liftable(q, w, p);
  return rep;
}

}  // namespace quatlat
