#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "orbitclock/errors.hpp"

namespace orbitclock {

namespace detail {

// Ascending power series; converges fast for x <= max(8, n/2). The leading
// term goes through logs so large-n / small-x cases underflow gracefully.
inline double bessel_j_series(int n, double x) {
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  const double half_x = 0.5 * x;
  const double log_lead = n * std::log(half_x) - std::lgamma(n + 1.0);
  if (log_lead < -745.0) return 0.0;  // below double underflow
  double term = std::exp(log_lead);
  double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -(half_x * half_x) / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

// Miller backward recurrence for the whole array J_0..J_n_max(x),
// normalized with J_0 + 2*sum_k J_{2k} = 1. Start order is pushed far
// enough into the exponential cutoff that the seed error is negligible.
inline std::vector<double> bessel_j_array_miller(int n_max, double x) {
  const double top = std::max(static_cast<double>(n_max), x);
  const int start =
      static_cast<int>(top + 15.0 * std::cbrt(top + 1.0) + 40.0);

  std::vector<double> out(static_cast<size_t>(n_max) + 1, 0.0);
  double y_hi = 0.0;        // y_{k+1}
  double y_mid = 1e-30;     // y_k, arbitrary seed
  double norm = 0.0;
  double scale_applied = 1.0;
  if (start % 2 == 0) norm += 2.0 * y_mid;  // counts even orders only
  if (start <= n_max) out[start] = y_mid;

  for (int k = start; k >= 1; --k) {
    double y_lo = (2.0 * k / x) * y_mid - y_hi;
    y_hi = y_mid;
    y_mid = y_lo;
    const int m = k - 1;
    if (m <= n_max) out[m] = y_mid;
    if (m == 0)
      norm += y_mid;
    else if (m % 2 == 0)
      norm += 2.0 * y_mid;
    if (std::abs(y_mid) > 1e250) {
      const double s = 1e-250;
      y_mid *= s;
      y_hi *= s;
      norm *= s;
      scale_applied *= s;
      for (auto& v : out) v *= s;  // already-stored high orders flush to ~0
    }
  }
  (void)scale_applied;
  for (auto& v : out) v /= norm;
  return out;
}

}  // namespace detail

/// J_0..J_n_max(x) for x >= 0.
inline std::vector<double> bessel_j_array(int n_max, double x) {
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  if (!(x >= 0.0)) throw DomainError("x must be >= 0");
  if (x == 0.0) {
    std::vector<double> out(static_cast<size_t>(n_max) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  return detail::bessel_j_array_miller(n_max, x);
}

/// Bessel function of the first kind, n >= 0, x >= 0; absolute error
/// <= 1e-12. Negative orders at call sites use J_{-n} = (-1)^n J_n.
inline double bessel_j(int n, double x) {
  if (n < 0) throw DomainError("order must be >= 0");
  if (!(x >= 0.0)) throw DomainError("x must be >= 0");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x <= std::max(8.0, 0.5 * n)) return detail::bessel_j_series(n, x);
  return detail::bessel_j_array_miller(n, x)[static_cast<size_t>(n)];
}

}  // namespace orbitclock
