#pragma once

// Locally represented integers that the form misses, their
// classification, the threshold evaluators and the escalator check.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "quatlat/forms.hpp"

namespace quatlat {

struct Escalator {
  std::int64_t p = 0;
  int k_max = 0;
  /// r_Q(n p^{2k}) for k = 0..k_max.
  std::vector<std::uint64_t> counts;
  bool verified = false;  ///< all counts are zero
};

struct ExceptionRecord {
  std::int64_t n = 0;
  bool locally_represented = false;
  bool coprime_to_disc = false;
  bool strong = false;
  bool primitive = false;
  bool represented = false;
  std::optional<Escalator> escalator;
};

ExceptionRecord classify(const QuadForm& q, std::int64_t n, const EnumOptions& opt = {});

/// Every n <= bound that is locally represented but not represented.
/// k_max >= 0 also runs escalator_check on each record (records without an
/// anisotropic escalator prime keep an empty `escalator`).
std::vector<ExceptionRecord> search_exceptions(const QuadForm& q, std::int64_t bound, int k_max = -1,
                                               const EnumOptions& opt = {});

/// An anisotropic p | 2D with p^2 | n and ord_p(n) > ord_p(N), then
/// r_Q(n p^{2k}) for 0 <= k <= k_max by enumeration.  Throws
/// NoEscalatorFound when no such prime exists.
Escalator escalator_check(const QuadForm& q, std::int64_t n, int k_max, const EnumOptions& opt = {});

struct ThresholdSet {
  double eps = 0;
  double constant = 1;
  std::array<double, 4> t{};
};

ThresholdSet thresholds(const QuadForm& q, double eps, double constant = 1);

/// ceil(index / 12) + 1, an upper bound for the weight-2 cusp form dimension.
std::int64_t cusp_form_dim_bound(std::int64_t level);

/// cc_bound >= 0 bounds <C, C>.
/// 4 pi e^{4 pi} (cc dim)^{1/2} d(n) sqrt(n) N^{1/2} prod_{p | N} (1+1/p)^{1/3} / sqrt(1 - p^-4).
double explicit_cusp_coeff_bound(const QuadForm& q, std::int64_t n, double cc_bound);

}  // namespace quatlat
