#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "orbitclock/phase.hpp"

namespace orbitclock {

/// State of the two-level clock, rotating frame. The ground amplitude is
/// never touched by propagation; only the excited amplitude picks up the
/// gravitational mixing phase.
struct TwoLevelState {
  std::complex<double> c_i{1.0, 0.0};
  std::complex<double> c_f{0.0, 0.0};

  double norm_sq() const { return std::norm(c_i) + std::norm(c_f); }
  bool is_normalized(double tol = 1e-12) const {
    return std::abs(norm_sq() - 1.0) <= tol;
  }
};

inline TwoLevelState equal_superposition() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {{inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}};
}

/// Potential-shifted level energies E_i = E_i0 + m_e Phi, E_f = E_f0 + m_e* Phi.
inline std::pair<double, double> level_energies(const ClockTransition& tr,
                                                const OrbitalElements& el,
                                                double t, RadiusModel model) {
  const double phi = potential(el, t, model);
  return {tr.e_i0 + tr.m_e * phi, tr.e_f0 + tr.m_e_star * phi};
}

namespace detail {
inline std::complex<double> apply_mixing_phase(const TwoLevelState& s,
                                               double delta_phi) {
  return s.c_f * std::exp(std::complex<double>(0.0, -delta_phi));
}
}  // namespace detail

/// Rotating-frame propagation over [0, t]: c_f picks up
/// exp(-i * delta_phi_g(t)); the fast carrier phase is factored out and
/// never accumulated numerically.
inline TwoLevelState propagate_analytic(const TwoLevelState& state0,
                                        const ClockTransition& tr,
                                        const OrbitalElements& el, double t,
                                        RadiusModel model,
                                        int n_steps = 10'000) {
  if (!state0.is_normalized()) throw DomainError("state must be normalized");
  double delta_phi;
  if (model == RadiusModel::paper) {
    const PhaseRecord rec = mixing_angle(tr, el, t);
    delta_phi = rec.mixing_secular + rec.mixing_oscillatory;
  } else {
    delta_phi = (tr.delta_m / kHBar) *
                orbitclock::detail::simpson(
                    [&](double tp) { return potential_exact(el, tp); }, 0.0, t,
                    n_steps);
  }
  TwoLevelState out = state0;
  out.c_f = detail::apply_mixing_phase(state0, delta_phi);
  return out;
}

/// Midpoint-rule propagation: accumulates (delta_m/hbar) Phi(t_mid) dt with
/// compensated summation, then applies a single unit-modulus phase factor.
/// Second-order accurate in dt; norm-preserving by construction.
inline TwoLevelState propagate_numerical(const TwoLevelState& state0,
                                         const ClockTransition& tr,
                                         const OrbitalElements& el, double t,
                                         RadiusModel model, double dt) {
  if (!state0.is_normalized()) throw DomainError("state must be normalized");
  if (!(dt > 0.0) || dt > el.period / 1000.0)
    throw DomainError("dt must satisfy 0 < dt <= T/1000");
  if (t == 0.0) return state0;

  const long long n = std::llround(t / dt);
  const double h = t / static_cast<double>(n);  // cover [0, t] exactly
  orbitclock::detail::KahanSum phase;
  for (long long k = 0; k < n; ++k) {
    const double t_mid = (static_cast<double>(k) + 0.5) * h;
    phase.add((tr.delta_m / kHBar) * potential(el, t_mid, model) * h);
  }
  TwoLevelState out = state0;
  out.c_f = detail::apply_mixing_phase(state0, phase.value());
  return out;
}

/// Transition energy shifted by the orbit-average potential (the DC term of
/// the sideband multiplet): delta_E = delta_E0 * (1 + mu/(r0 c^2)).
/// The sign follows the multiplet expression relative to zero potential;
/// relative to a ground clock the orbit clock is red shifted instead
/// (see ground_relative_shift in mission.hpp).
inline std::pair<double, double> redshifted_transition_energy(
    const ClockTransition& tr, const OrbitalElements& el) {
  const double fractional =
      el.mu / (el.r0 * kSpeedOfLight * kSpeedOfLight);
  return {tr.delta_e0 * (1.0 + fractional), fractional};
}

}  // namespace orbitclock
