#include "quatlat/forms.hpp"

namespace quatlat {

// Size reduction plus adjacent swaps whenever d_{k} < (3/4) d_{k-1}.
// Each swap strictly lowers one leading minor of the (integral) Gram
// matrix and leaves the others fixed, so the loop terminates.
ReducedForm reduce(const QuadForm& q) {
  IntMatrix4 u = IntMatrix4::Identity();
  IntMatrix4 g = q.gram();
  const Rational three_quarters(3, 4);
  int k = 1;
  while (k < 4) {
    for (int j = k - 1; j >= 0; --j) {
      const GramSchmidt gs = gram_schmidt(g);
      const Integer r = round_nearest(gs.mu(k, j));
      if (r == 0) continue;
      IntMatrix4 e = IntMatrix4::Identity();
      e(j, k) = -static_cast<std::int64_t>(r);
      u = u * e;
      g = e.transpose() * g * e;
    }
    const GramSchmidt gs = gram_schmidt(g);
    if (gs.d[k] < three_quarters * gs.d[k - 1]) {
      u.col(k).swap(u.col(k - 1));
      g.row(k).swap(g.row(k - 1));
      g.col(k).swap(g.col(k - 1));
      k = std::max(k - 1, 1);
    } else {
      ++k;
    }
  }
  const GramSchmidt gs = gram_schmidt(g);
  ReducedForm out{QuadForm(g), u, {gs.d[3], gs.d[2], gs.d[1], gs.d[0]}, gs.mu};
  return out;
}

}  // namespace quatlat
