#pragma once

#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "orbitclock/bessel.hpp"
#include "orbitclock/errors.hpp"
#include "orbitclock/numeric.hpp"

namespace orbitclock {

struct EstimationResult {
  double alpha_hat = 0.0;
  double residual_norm = 0.0;  // sqrt of the minimized sum of squares
  int n_lines_used = 0;
};

namespace detail {

inline double sideband_residual_sq(
    const std::vector<std::pair<int, double>>& measured, double alpha) {
  int n_max = 0;
  for (const auto& [n, amp] : measured) n_max = std::max(n_max, std::abs(n));
  // One backward-recurrence pass serves every line.
  const std::vector<double> j = bessel_j_array(n_max, alpha);
  double sse = 0.0;
  for (const auto& [n, amp] : measured) {
    const double d = std::abs(j[static_cast<size_t>(std::abs(n))]) - amp;
    sse += d * d;
  }
  return sse;
}

}  // namespace detail

/// Scalar least squares for the modulation index: minimize
/// sum_n (|J_n(alpha)| - measured_n)^2 over the bracket, golden-section to
/// 1e-6 bracket width plus one quadratic-fit refinement.
inline EstimationResult estimate_modulation_index(
    const std::vector<std::pair<int, double>>& measured,
    std::pair<double, double> alpha_bracket) {
  if (measured.size() < 3) throw DomainError("need at least 3 measured lines");
  const auto [lo, hi] = alpha_bracket;
  if (!(lo >= 0.0 && lo < hi)) throw DomainError("require 0 <= lo < hi");

  auto f = [&](double a) { return detail::sideband_residual_sq(measured, a); };

  // Coarse scan to localize the basin; golden section needs unimodality.
  // The residual's features have O(1) width in alpha (Bessel line patterns
  // decorrelate after roughly one unit), so the scan step must stay well
  // below that no matter how wide the bracket is.
  const int kScan =
      std::max(96, static_cast<int>(std::ceil((hi - lo) / 0.25)));
  int best = 0;
  double best_f = f(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double x = lo + (hi - lo) * i / kScan;
    const double fx = f(x);
    if (fx < best_f) {
      best_f = fx;
      best = i;
    }
  }
  if (best == 0 || best == kScan)
    throw ConvergenceError(
        "estimate_modulation_index: bracket does not contain a minimum",
        best_f);

  const double step = (hi - lo) / kScan;
  const double blo = lo + (best - 1) * step;
  const double bhi = lo + (best + 1) * step;
  double alpha = detail::golden_section_min(f, blo, bhi, 1e-6);

  // One parabola through (alpha - h, alpha, alpha + h).
  const double h = 1e-6;
  const double fm = f(alpha - h), f0 = f(alpha), fp = f(alpha + h);
  const double denom = fp - 2.0 * f0 + fm;
  if (denom > 0.0) {
    const double refined = alpha - h * (fp - fm) / (2.0 * denom);
    if (refined > lo && refined < hi && f(refined) <= f0) alpha = refined;
  }

  EstimationResult res;
  res.alpha_hat = alpha;
  res.residual_norm = std::sqrt(f(alpha));
  res.n_lines_used = static_cast<int>(measured.size());
  return res;
}

}  // namespace orbitclock
