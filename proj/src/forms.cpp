#include "quatlat/forms.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

#include "quatlat/error.hpp"
#include "quatlat/matrix.hpp"

namespace quatlat {

namespace {

std::int64_t to_int64(const Integer& z, const char* what) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    throw ResourceLimit(std::string(what) + " does not fit in 64 bits");
  return static_cast<std::int64_t>(z);
}

std::int64_t compute_level(const Matrix4<Integer>& a, const Integer& det) {
  const Matrix4<Integer> adj = adjugate(a);
  // N adj(A) / D integral and N adj(A)_ii / D even.
  Integer n = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Integer target = (i == j) ? Integer(2 * det) : det;
      const Integer need = target / mp::gcd(target, mp::abs(adj(i, j)));
      n = mp::lcm(n, need);
    }
  return to_int64(n, "level");
}

}  // namespace

QuadForm::QuadForm(const IntMatrix4& gram) : gram_(gram) {
  for (int i = 0; i < 4; ++i) {
    if (gram_(i, i) % 2 != 0) throw NotIntegral("Gram matrix must have even diagonal");
    for (int j = i + 1; j < 4; ++j)
      if (gram_(i, j) != gram_(j, i)) throw InvalidForm("Gram matrix must be symmetric");
  }
  const Matrix4<Integer> a = integer_gram();
  for (int k = 1; k <= 4; ++k)
    if (leading_minor(a, k) <= 0) throw NotPositiveDefinite("form is not positive definite");
  const Integer det = determinant<Integer, 4>(a);
  inv_.disc = to_int64(det, "discriminant");
  inv_.level = compute_level(a, det);
  inv_.char_disc = inv_.disc;
}

std::array<std::int64_t, 10> QuadForm::coefficients() const {
  std::array<std::int64_t, 10> c{};
  int t = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) c[t++] = coefficient(i, j);
  return c;
}

bool QuadForm::is_primitive() const {
  std::int64_t g = 0;
  for (const auto c : coefficients()) g = std::gcd(g, c);
  return g == 1;
}

QuadForm QuadForm::transformed(const IntMatrix4& u) const {
  return QuadForm(IntMatrix4(u.transpose() * gram_ * u));
}

std::string QuadForm::to_string() const { return format_form(*this); }

QuadForm parse_form(std::span<const std::int64_t> coeffs) {
  if (coeffs.size() != 10) throw InvalidForm("expected 10 coefficients");
  IntMatrix4 g;
  std::size_t t = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      const std::int64_t c = coeffs[t++];
      if (i == j) {
        g(i, i) = 2 * c;
      } else {
        g(i, j) = c;
        g(j, i) = c;
      }
    }
  return QuadForm(g);
}

QuadForm parse_form(const std::string& text) {
  std::vector<std::int64_t> coeffs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw InvalidForm("empty coefficient in '" + text + "'");
    tok = tok.substr(b, e - b + 1);
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::out_of_range&) {
      throw InvalidForm("coefficient out of range: '" + tok + "'");
    } catch (const std::invalid_argument&) {
      throw NotIntegral("coefficient is not an integer: '" + tok + "'");
    }
    if (pos != tok.size()) throw NotIntegral("coefficient is not an integer: '" + tok + "'");
    if (std::llabs(v) > (std::int64_t{1} << 20)) throw InvalidForm("coefficient too large: '" + tok + "'");
    coeffs.push_back(v);
  }
  if (!text.empty() && text.back() == ',') throw InvalidForm("trailing comma in '" + text + "'");
  return parse_form(std::span<const std::int64_t>(coeffs));
}

std::string format_form(const QuadForm& q) {
  std::string s;
  for (const auto c : q.coefficients()) {
    if (!s.empty()) s += ',';
    s += std::to_string(c);
  }
  return s;
}

std::int64_t discriminant(const QuadForm& q) { return q.disc(); }
std::int64_t level(const QuadForm& q) { return q.level(); }
int kronecker_character(std::int64_t d, std::int64_t m) { return kronecker(d, m); }

std::uint64_t default_enum_cap() {
  if (const char* env = std::getenv("QUATLAT_ENUM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 100'000'000ULL;
}

GramSchmidt gram_schmidt(const IntMatrix4& gram) {
  // Bilinear form B(u, v) = u^T A v / 2 so that B(v, v) = Q(v).
  const Matrix4<Rational> b = cast_matrix<Rational>(gram) / Rational(2);
  GramSchmidt gs;
  gs.mu = Matrix4<Rational>::Zero();
  // r(i, j) = B(b_i, b_j^*) for j <= i.
  Matrix4<Rational> r = Matrix4<Rational>::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j <= i; ++j) {
      Rational s = b(i, j);
      for (int k = 0; k < j; ++k) s -= gs.mu(j, k) * r(i, k);
      r(i, j) = s;
      if (j < i) gs.mu(i, j) = s / r(j, j);
    }
    gs.d[i] = r(i, i);
  }
  return gs;
}

}  // namespace quatlat
