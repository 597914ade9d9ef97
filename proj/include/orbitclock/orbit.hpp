#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "orbitclock/constants.hpp"
#include "orbitclock/errors.hpp"
#include "orbitclock/numeric.hpp"

namespace orbitclock {

// Which r(t) to use: the exact Kepler-equation solution, or the cosine
// model of 1/r (exact in true anomaly, approximate in time).
enum class RadiusModel { exact, paper };

inline RadiusModel radius_model_from_string(const std::string& s) {
  if (s == "exact") return RadiusModel::exact;
  if (s == "paper") return RadiusModel::paper;
  throw ConfigError("unknown radius model '" + s + "' (expected exact|paper)");
}

inline const char* to_string(RadiusModel m) {
  return m == RadiusModel::exact ? "exact" : "paper";
}

/// Eccentric two-body orbit described by its apsides. Time origin is at
/// perigee; the problem is radial-only, so no orientation angles are kept.
struct OrbitalElements {
  double r_perigee = 0.0;  // m
  double r_apogee = 0.0;   // m
  double mu = 0.0;         // m^3/s^2

  // Derived.
  double r0 = 0.0;         // (r_a + r_p)/2, m
  double amplitude = 0.0;  // (r_a - r_p)/2, m
  double e = 0.0;
  double a = 0.0;          // semi-major axis == r0
  double period = 0.0;     // s
  double omega = 0.0;      // 2*pi/period, rad/s

  static OrbitalElements from_apsides(double r_perigee, double r_apogee,
                                      double mu,
                                      std::optional<double> period_override = {}) {
    if (!(r_perigee > 0.0)) throw DomainError("r_perigee must be positive");
    if (!(r_apogee >= r_perigee))
      throw DomainError("r_apogee must be >= r_perigee");
    if (!(mu > 0.0)) throw DomainError("mu must be positive");
    if (period_override && !(*period_override > 0.0))
      throw DomainError("period_override must be positive");

    OrbitalElements el;
    el.r_perigee = r_perigee;
    el.r_apogee = r_apogee;
    el.mu = mu;
    el.r0 = 0.5 * (r_apogee + r_perigee);
    el.amplitude = 0.5 * (r_apogee - r_perigee);
    el.e = el.amplitude / el.r0;
    el.a = el.r0;
    el.period = period_override
                    ? *period_override
                    : 2.0 * std::numbers::pi * std::sqrt(el.a * el.a * el.a / mu);
    el.omega = 2.0 * std::numbers::pi / el.period;
    return el;
  }
};

/// Solve E - e*sin(E) = M for the eccentric anomaly, |residual| <= 1e-12 rad.
/// M is reduced mod 2*pi; the returned E lies in [0, 2*pi).
inline double solve_kepler_equation(double mean_anomaly, double e) {
  if (!(e >= 0.0 && e < 1.0)) throw DomainError("eccentricity must be in [0, 1)");
  if (!std::isfinite(mean_anomaly)) throw DomainError("mean anomaly must be finite");

  constexpr double tol = 1e-12;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double m = std::fmod(mean_anomaly, two_pi);
  if (m < 0.0) m += two_pi;

  double ecc = (e < 0.8) ? m : std::numbers::pi;
  double resid = ecc - e * std::sin(ecc) - m;
  for (int i = 0; i < 50 && std::abs(resid) > tol; ++i) {
    ecc -= resid / (1.0 - e * std::cos(ecc));
    resid = ecc - e * std::sin(ecc) - m;
  }
  if (std::abs(resid) <= tol) return ecc;

  // Bisection fallback; f is strictly increasing in E.
  double lo = 0.0, hi = two_pi;
  for (int i = 0; i < 200; ++i) {
    ecc = 0.5 * (lo + hi);
    resid = ecc - e * std::sin(ecc) - m;
    if (std::abs(resid) <= tol) return ecc;
    (resid < 0.0 ? lo : hi) = ecc;
  }
  throw ConvergenceError("Kepler equation did not converge", resid);
}

/// Exact orbital radius at time t (t = 0 at perigee).
inline double radius_exact(const OrbitalElements& el, double t) {
  const double m = el.omega * t;
  const double ecc = solve_kepler_equation(m, el.e);
  return el.a * (1.0 - el.e * std::cos(ecc));
}

/// Cosine model of 1/r: 1/r = 1/r0 + (A/r0^2) cos(Omega t).
inline double radius_paper_model(const OrbitalElements& el, double t) {
  return el.r0 / (1.0 + el.e * std::cos(el.omega * t));
}

inline double radius(const OrbitalElements& el, double t, RadiusModel model) {
  return model == RadiusModel::exact ? radius_exact(el, t)
                                     : radius_paper_model(el, t);
}

/// Time average of 1/r over one period (composite Simpson, n_quad even >= 64).
/// Both models give 1/a: the cosine model exactly, the Kepler solution by the
/// two-body identity <1/r>_t = 1/a.
inline double time_average_inverse_radius(const OrbitalElements& el,
                                          RadiusModel model, int n_quad) {
  if (n_quad < 64 || n_quad % 2 != 0)
    throw DomainError("n_quad must be even and >= 64");
  const double integral = detail::simpson(
      [&](double t) { return 1.0 / radius(el, t, model); }, 0.0, el.period,
      n_quad);
  return integral / el.period;
}

}  // namespace orbitclock
