#pragma once

#include <cmath>

#include "orbitclock/constants.hpp"
#include "orbitclock/errors.hpp"
#include "orbitclock/numeric.hpp"
#include "orbitclock/orbit.hpp"
#include "orbitclock/transition.hpp"

namespace orbitclock {

/// Gravitational potential along the orbit, cosine model:
/// Phi(t) = -(mu/r0) * (1 + e cos(Omega t)). Always negative.
inline double potential_paper(const OrbitalElements& el, double t) {
  return -(el.mu / el.r0) * (1.0 + el.e * std::cos(el.omega * t));
}

/// Phi(t) = -mu / r(t) with r from the Kepler solution.
inline double potential_exact(const OrbitalElements& el, double t) {
  return -el.mu / radius_exact(el, t);
}

inline double potential(const OrbitalElements& el, double t, RadiusModel model) {
  return model == RadiusModel::paper ? potential_paper(el, t)
                                     : potential_exact(el, t);
}

/// AB phase (mass/hbar) * integral of an arbitrary potential over [0, t].
/// Exposed separately so tests can drive it with synthetic potentials.
template <class PotentialFn>
double ab_phase_of(PotentialFn&& phi, double mass, double t, int n_steps) {
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  if (n_steps < 2 || n_steps % 2 != 0)
    throw DomainError("n_steps must be even and >= 2");
  if (t == 0.0) return 0.0;
  return (mass / kHBar) * detail::simpson(phi, 0.0, t, n_steps);
}

/// Accumulated gravitational AB phase (mass/hbar) * int_0^t Phi dt'.
inline double ab_phase(double mass, const OrbitalElements& el, double t,
                       RadiusModel model, int n_steps = 10'000) {
  if (!(t >= 0.0)) throw DomainError("t must be >= 0");
  return ab_phase_of([&](double tp) { return potential(el, tp, model); }, mass,
                     t, n_steps);
}

/// Closed form of ab_phase for the cosine potential model:
/// -(mass*mu/(hbar*r0)) * (t + (e/Omega) sin(Omega t)).
inline double ab_phase_paper_closed_form(double mass, const OrbitalElements& el,
                                         double t) {
  return -(mass * el.mu / (kHBar * el.r0)) *
         (t + (el.e / el.omega) * std::sin(el.omega * t));
}

/// Dimensionless depth of gravitational phase modulation:
/// alpha = e * (mu/(r0 c^2)) * (2 pi f_ph0 / Omega). Stored non-negative;
/// sideband powers J_n(alpha)^2 are insensitive to its overall sign.
inline double modulation_index(const ClockTransition& tr,
                               const OrbitalElements& el) {
  return el.e * (el.mu / (el.r0 * kSpeedOfLight * kSpeedOfLight)) *
         (2.0 * std::numbers::pi * tr.f_ph0 / el.omega);
}

/// Accumulated phases at time t and the secular/oscillatory split of the
/// gravitational mixing angle delta_phi = phi_g_star - phi_g (cosine model).
/// The oscillatory part carries the sign that direct integration of the
/// potential gives, so secular + oscillatory reproduces the phase difference.
struct PhaseRecord {
  double t = 0.0;                  // s
  double phi_g = 0.0;              // ground-level AB phase (mass m_e), rad
  double phi_g_star = 0.0;         // excited-level AB phase (mass m_e*), rad
  double mixing_secular = 0.0;     // part linear in t, rad
  double mixing_oscillatory = 0.0; // part proportional to sin(Omega t), rad
};

inline PhaseRecord mixing_angle(const ClockTransition& tr,
                                const OrbitalElements& el, double t) {
  PhaseRecord rec;
  rec.t = t;
  rec.phi_g = ab_phase_paper_closed_form(tr.m_e, el, t);
  rec.phi_g_star = ab_phase_paper_closed_form(tr.m_e_star, el, t);
  rec.mixing_secular =
      -(tr.delta_e0 * el.mu / (kHBar * el.r0 * kSpeedOfLight * kSpeedOfLight)) * t;
  rec.mixing_oscillatory = -modulation_index(tr, el) * std::sin(el.omega * t);
  return rec;
}

}  // namespace orbitclock
