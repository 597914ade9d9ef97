#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "orbitclock/orbit.hpp"

using namespace orbitclock;

namespace {

// Independent oracle: bisection on f(E) = E - e sin E - M, tightened to
// machine precision. Never touches the Newton path under test.
double kepler_bisection_oracle(double m, double e) {
  double lo = 0.0, hi = 2.0 * std::numbers::pi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f = mid - e * std::sin(mid) - m;
    (f < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

OrbitalElements iss() {
  return OrbitalElements::from_apsides(6.800e6, 6.810e6, kEarthMu, 5400.0);
}

OrbitalElements galileo() {
  return OrbitalElements::from_apsides(2.3445e7, 3.2510e7, kEarthMu);
}

}  // namespace

TEST_CASE("from_apsides derives the documented elements") {
  const auto el_iss = iss();
  CHECK(el_iss.e == Catch::Approx(7.34e-4).epsilon(2e-3));
  CHECK(el_iss.e == (6.810e6 - 6.800e6) / (6.810e6 + 6.800e6));
  CHECK(el_iss.period == 5400.0);
  CHECK(el_iss.omega * el_iss.period == Catch::Approx(2.0 * std::numbers::pi));

  const auto el_g = galileo();
  CHECK(el_g.e == Catch::Approx(0.162).epsilon(1e-3));
  CHECK(el_g.r0 == Catch::Approx(2.79775e7).epsilon(1e-12));
  CHECK(el_g.a == el_g.r0);
  CHECK(el_g.period / 3600.0 == Catch::Approx(12.94).epsilon(1e-3));
  // Kepler's third law holds when no override is given.
  CHECK(el_g.period ==
        Catch::Approx(2.0 * std::numbers::pi *
                      std::sqrt(std::pow(el_g.a, 3) / el_g.mu)));
}

TEST_CASE("from_apsides circular orbit") {
  const auto el = OrbitalElements::from_apsides(7.0e6, 7.0e6, kEarthMu);
  CHECK(el.e == 0.0);
  CHECK(el.amplitude == 0.0);
  CHECK(el.r0 == 7.0e6);
}

TEST_CASE("from_apsides rejects bad inputs") {
  CHECK_THROWS_AS(OrbitalElements::from_apsides(-1.0, 7e6, kEarthMu), DomainError);
  CHECK_THROWS_AS(OrbitalElements::from_apsides(7e6, 6e6, kEarthMu), DomainError);
  CHECK_THROWS_AS(OrbitalElements::from_apsides(7e6, 8e6, 0.0), DomainError);
  CHECK_THROWS_AS(OrbitalElements::from_apsides(7e6, 8e6, kEarthMu, -5.0),
                  DomainError);
  CHECK_THROWS_AS(solve_kepler_equation(1.0, 1.5), DomainError);
}

TEST_CASE("Kepler solver hits the anchors") {
  CHECK(solve_kepler_equation(0.0, 0.5) == 0.0);
  CHECK(solve_kepler_equation(std::numbers::pi, 0.7) ==
        Catch::Approx(std::numbers::pi).margin(1e-12));
  // Frozen from the bisection oracle.
  const double e_oracle = kepler_bisection_oracle(1.0, 0.162);
  const double e_solved = solve_kepler_equation(1.0, 0.162);
  CHECK(e_solved == Catch::Approx(e_oracle).margin(1e-12));
  CHECK(std::abs(e_solved - 0.162 * std::sin(e_solved) - 1.0) <= 1e-12);
}

TEST_CASE("Kepler residual over random anomalies and eccentricities") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> um(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> ue(0.0, 0.9);
  for (int i = 0; i < 10'000; ++i) {
    const double m = um(rng);
    const double e = ue(rng);
    const double ecc = solve_kepler_equation(m, e);
    CHECK(std::abs(ecc - e * std::sin(ecc) - m) <= 1e-12);
  }
}

TEST_CASE("radius_exact at the apsides and against the oracle") {
  const auto el = galileo();
  CHECK(radius_exact(el, 0.0) == Catch::Approx(el.r_perigee).epsilon(1e-12));
  CHECK(radius_exact(el, el.period / 2.0) ==
        Catch::Approx(el.r_apogee).epsilon(1e-12));

  const double t = el.period / 4.0;
  const double e_oracle =
      kepler_bisection_oracle(el.omega * t, el.e);
  const double r_oracle = el.a * (1.0 - el.e * std::cos(e_oracle));
  CHECK(radius_exact(el, t) == Catch::Approx(r_oracle).epsilon(1e-12));
}

TEST_CASE("radius_exact stays within the apsides, symmetric about apogee") {
  const auto el = galileo();
  for (int i = 0; i <= 400; ++i) {
    const double t = el.period * i / 400.0;
    const double r = radius_exact(el, t);
    CHECK(r >= el.r_perigee * (1.0 - 1e-12));
    CHECK(r <= el.r_apogee * (1.0 + 1e-12));
    CHECK(radius_exact(el, el.period - t) == Catch::Approx(r).epsilon(1e-11));
  }
}

TEST_CASE("paper radius model basics") {
  const auto circ = OrbitalElements::from_apsides(7.0e6, 7.0e6, kEarthMu);
  for (double t : {0.0, 1000.0, 4321.0})
    CHECK(radius_paper_model(circ, t) == circ.r0);

  const auto el = galileo();
  CHECK(radius_paper_model(el, 0.0) ==
        Catch::Approx(el.r0 / (1.0 + el.e)).epsilon(1e-14));
  // At perigee the cosine model misses the exact radius by O(e^2), about
  // 2.6% for the Galileo eccentricity.
  const double rel =
      std::abs(radius_paper_model(el, 0.0) - radius_exact(el, 0.0)) /
      radius_exact(el, 0.0);
  CHECK(rel == Catch::Approx(el.e * el.e / (1.0 - el.e * el.e)).epsilon(1e-6));
  CHECK(rel < 2.0 * el.e * el.e);
}

TEST_CASE("paper-vs-exact radius discrepancy bounded by 2e^2") {
  for (double e : {0.01, 0.162, 0.5}) {
    const double rp = 1.0e7 * (1.0 - e);
    const double ra = 1.0e7 * (1.0 + e);
    const auto el = OrbitalElements::from_apsides(rp, ra, kEarthMu);
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double t = el.period * i / 2000.0;
      const double re = radius_exact(el, t);
      worst = std::max(worst, std::abs(radius_paper_model(el, t) - re) / re);
    }
    INFO("e = " << e << " worst rel = " << worst);
    CHECK(worst <= 2.0 * e * e);
  }
}

TEST_CASE("time-averaged 1/r equals 1/a for both models") {
  const auto el = galileo();
  CHECK(time_average_inverse_radius(el, RadiusModel::paper, 1 << 14) ==
        Catch::Approx(1.0 / el.r0).epsilon(1e-10));
  CHECK(time_average_inverse_radius(el, RadiusModel::exact, 1 << 14) ==
        Catch::Approx(1.0 / el.a).epsilon(1e-10));

  const auto circ = OrbitalElements::from_apsides(7.0e6, 7.0e6, kEarthMu);
  CHECK(time_average_inverse_radius(circ, RadiusModel::exact, 64) ==
        Catch::Approx(1.0 / circ.r0).epsilon(1e-12));

  CHECK_THROWS_AS(time_average_inverse_radius(el, RadiusModel::paper, 63),
                  DomainError);
}
