#pragma once

#include <cmath>
#include <utility>

#include "orbitclock/errors.hpp"

namespace orbitclock::detail {

// Composite Simpson over [a, b] with n even subintervals.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("simpson: n must be even and >= 2");
  const double h = (b - a) / n;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; i += 2) odd += f(a + i * h);
  for (int i = 2; i < n; i += 2) even += f(a + i * h);
  return (h / 3.0) * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

// Golden-section minimization on [lo, hi]; stops when the bracket is
// narrower than tol. Assumes a unimodal f on the bracket.
template <class F>
double golden_section_min(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;  // 1/phi
  double c = hi - (hi - lo) * inv_phi;
  double d = lo + (hi - lo) * inv_phi;
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) * inv_phi;
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) * inv_phi;
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

// Compensated (Kahan) accumulator for long phase sums.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace orbitclock::detail
