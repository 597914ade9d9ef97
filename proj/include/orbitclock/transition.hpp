#pragma once

#include "orbitclock/constants.hpp"
#include "orbitclock/errors.hpp"

namespace orbitclock {

/// Two-level clock transition. The excited state carries the absorbed
/// photon's kinetic mass, so its effective electron mass is larger.
struct ClockTransition {
  double f_ph0 = 0.0;     // transition frequency at zero potential, Hz
  double e_i0 = 0.0;      // ground level energy at zero potential, J
  double e_f0 = 0.0;      // excited level energy, J
  double delta_e0 = 0.0;  // e_f0 - e_i0 == h * f_ph0, J
  double m_e = 0.0;       // kg
  double delta_m = 0.0;   // h * f_ph0 / c^2, kg
  double m_e_star = 0.0;  // m_e + delta_m, kg

  static ClockTransition from_frequency(double f_ph0, double ground_energy = 0.0) {
    if (!(f_ph0 > 0.0)) throw DomainError("transition frequency must be positive");
    ClockTransition tr;
    tr.f_ph0 = f_ph0;
    tr.delta_e0 = kPlanck * f_ph0;
    tr.e_i0 = ground_energy;
    tr.e_f0 = ground_energy + tr.delta_e0;
    tr.m_e = kElectronMass;
    tr.delta_m = tr.delta_e0 / (kSpeedOfLight * kSpeedOfLight);
    tr.m_e_star = tr.m_e + tr.delta_m;
    return tr;
  }
};

}  // namespace orbitclock
