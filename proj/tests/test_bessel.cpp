#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "orbitclock/bessel.hpp"

using namespace orbitclock;

namespace {

// Independent oracle: composite-Simpson quadrature of the integral
// representation J_n(x) = (1/pi) int_0^pi cos(n theta - x sin theta) dtheta.
// The panel count scales with the integrand's oscillation rate so the
// quadrature error stays below ~1e-13.
double bessel_oracle(int n, double x) {
  const double rate = std::max({static_cast<double>(n), x, 8.0});
  long long panels = 1;
  while (panels < static_cast<long long>(2048.0 * rate)) panels <<= 1;
  const double h = std::numbers::pi / static_cast<double>(panels);
  double odd = 0.0, even = 0.0;
  auto f = [&](double th) { return std::cos(n * th - x * std::sin(th)); };
  for (long long i = 1; i < panels; i += 2) odd += f(i * h);
  for (long long i = 2; i < panels; i += 2) even += f(i * h);
  const double integral = (h / 3.0) * (f(0.0) + f(std::numbers::pi) +
                                       4.0 * odd + 2.0 * even);
  return integral / std::numbers::pi;
}

}  // namespace

TEST_CASE("bessel_j anchors") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  // Frozen from the quadrature oracle.
  CHECK(bessel_j(1, 2.0) == Catch::Approx(0.576724807756873).margin(1e-12));
  CHECK(bessel_j(1, 2.0) == Catch::Approx(bessel_oracle(1, 2.0)).margin(1e-12));
  CHECK_THROWS_AS(bessel_j(-1, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(1, -1.0), DomainError);
}

TEST_CASE("bessel_j against the quadrature oracle across regimes") {
  struct Probe { int n; double x; };
  const Probe probes[] = {
      {0, 0.5},  {1, 0.05}, {2, 3.7},   {5, 3.7},   {0, 23.8},  {10, 23.8},
      {24, 23.8}, {40, 23.8}, {3, 100.0}, {100, 100.0}, {110, 100.0},
      {7, 8.0},  {16, 8.0}, {50, 12.5}, {0, 1699.0}, {800, 1699.0},
      {1699, 1699.0}, {1720, 1699.0},
  };
  for (const auto& p : probes) {
    INFO("n=" << p.n << " x=" << p.x);
    CHECK(bessel_j(p.n, p.x) ==
          Catch::Approx(bessel_oracle(p.n, p.x)).margin(1e-12));
  }
}

TEST_CASE("array evaluation is consistent with scalar evaluation") {
  for (double x : {0.5, 3.7, 23.8, 150.0}) {
    const auto arr = bessel_j_array(60, x);
    for (int n = 0; n <= 60; n += 5)
      CHECK(arr[n] == Catch::Approx(bessel_j(n, x)).margin(1e-12));
  }
}

TEST_CASE("normalization identity") {
  for (double x : {0.5, 3.7, 23.8, 100.0}) {
    const int n_max = static_cast<int>(x) + 60;
    const auto j = bessel_j_array(n_max, x);
    double sum = j[0] * j[0];
    for (int n = 1; n <= n_max; ++n) sum += 2.0 * j[n] * j[n];
    CHECK(sum == Catch::Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("three-term recurrence residual on sampled (n, x)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.1, 120.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = ux(rng);
    const int n = 1 + static_cast<int>(rng() % static_cast<uint64_t>(x + 30));
    const double resid = bessel_j(n - 1, x) + bessel_j(n + 1, x) -
                         (2.0 * n / x) * bessel_j(n, x);
    INFO("n=" << n << " x=" << x);
    CHECK(std::abs(resid) <= 1e-10);
  }
}

TEST_CASE("peak near n ~ x and exponential cutoff past it") {
  for (double x : {10.0, 23.8, 100.0, 1699.0}) {
    const int n_max = static_cast<int>(x + 30.0 * std::cbrt(x)) + 10;
    const auto j = bessel_j_array(n_max, x);
    int argmax = 0;
    for (int n = 1; n <= n_max; ++n)
      if (std::abs(j[n]) > std::abs(j[argmax])) argmax = n;
    const double w = 2.0 * std::cbrt(x);
    CHECK(argmax >= x - w);
    CHECK(argmax <= x + w);

    // Monotone decay beyond the cutoff.
    for (int n = static_cast<int>(std::ceil(x)) + 1; n < n_max; ++n)
      CHECK(std::abs(j[n + 1]) <= std::abs(j[n]) + 1e-300);
  }
}
