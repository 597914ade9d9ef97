#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitclock/bessel.hpp"
#include "orbitclock/clock.hpp"
#include "orbitclock/constants.hpp"
#include "orbitclock/errors.hpp"

namespace orbitclock {

enum class ModulationRegime { no_sidebands, single_tone, over_modulated, deep_modulation };

inline const char* to_string(ModulationRegime r) {
  switch (r) {
    case ModulationRegime::no_sidebands: return "no_sidebands";
    case ModulationRegime::single_tone: return "single_tone";
    case ModulationRegime::over_modulated: return "over_modulated";
    default: return "deep_modulation";
  }
}

/// Band thresholds are conventions of this library; the boundary cases in
/// the literature are only qualitative (alpha << 1, alpha > 1, alpha >> 1).
inline ModulationRegime regime_classify(double alpha) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  if (alpha == 0.0) return ModulationRegime::no_sidebands;
  if (alpha <= 0.2) return ModulationRegime::single_tone;
  if (alpha <= 20.0) return ModulationRegime::over_modulated;
  return ModulationRegime::deep_modulation;
}

/// Default sideband truncation: covers the Airy transition zone past
/// n ~ alpha with margin.
inline int default_truncation(double alpha) {
  return static_cast<int>(std::ceil(alpha + 10.0 + 5.0 * std::cbrt(alpha)));
}

struct SidebandLine {
  int n = 0;
  double offset_hz = 0.0;   // n * orbital frequency
  double amplitude = 0.0;   // (-1)^n J_n(alpha), signed
  double power = 0.0;       // J_n(alpha)^2
};

struct SidebandSpectrum {
  double carrier_freq = 0.0;  // Hz
  double orbital_freq = 0.0;  // Hz
  double alpha = 0.0;
  std::vector<SidebandLine> lines;  // ordered by n, -n_max..n_max

  double total_power() const {
    double p = 0.0;
    for (const auto& l : lines) p += l.power;
    return p;
  }

  std::string to_csv() const {
    std::string out = "n,offset_hz,amplitude,power\n";
    char buf[128];
    for (const auto& l : lines) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", l.n, l.offset_hz,
                    l.amplitude, l.power);
      out += buf;
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["carrier_freq"] = carrier_freq;
    j["orbital_freq"] = orbital_freq;
    auto& arr = j["lines"] = nlohmann::json::array();
    for (const auto& l : lines)
      arr.push_back({{"n", l.n},
                     {"offset_hz", l.offset_hz},
                     {"amplitude", l.amplitude},
                     {"power", l.power}});
    return j;
  }
};

/// Carrier + sidebands at multiples of the orbital frequency with
/// amplitudes (-1)^n J_n(alpha); negative orders via J_{-n} = (-1)^n J_n.
inline SidebandSpectrum jacobi_anger_spectrum(double alpha, double orbital_freq,
                                              double carrier_freq,
                                              std::optional<int> n_max = {}) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  if (!(orbital_freq > 0.0) || !(carrier_freq > 0.0))
    throw DomainError("frequencies must be positive");
  const int nm = n_max ? *n_max : default_truncation(alpha);
  if (nm < 0) throw DomainError("n_max must be >= 0");

  const std::vector<double> j = bessel_j_array(nm, alpha);
  SidebandSpectrum spec;
  spec.carrier_freq = carrier_freq;
  spec.orbital_freq = orbital_freq;
  spec.alpha = alpha;
  spec.lines.reserve(2 * static_cast<size_t>(nm) + 1);
  for (int n = -nm; n <= nm; ++n) {
    const int m = std::abs(n);
    // amplitude = (-1)^n J_n: for n < 0 the two sign factors cancel.
    const double amp = (n >= 0 && n % 2 == 1) ? -j[m] : j[m];
    spec.lines.push_back({n, n * orbital_freq, amp, j[m] * j[m]});
  }
  return spec;
}

/// Multiplet energies delta_E0 (1 + mu/(r0 c^2)) + n hbar Omega for each
/// (signed) n requested.
inline std::vector<double> multiplet_energies(const ClockTransition& tr,
                                              const OrbitalElements& el,
                                              const std::vector<int>& n_list) {
  const double carrier = redshifted_transition_energy(tr, el).first;
  std::vector<double> out;
  out.reserve(n_list.size());
  for (int n : n_list) out.push_back(carrier + n * kHBar * el.omega);
  return out;
}

/// Smallest n_star with sum_{|n| <= n_star} J_n(alpha)^2 >= 1 - epsilon.
inline int significant_band(double alpha, double epsilon) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must be in (0, 1)");
  int nm = default_truncation(alpha);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const std::vector<double> j = bessel_j_array(nm, alpha);
    double cum = j[0] * j[0];
    if (cum >= 1.0 - epsilon) return 0;
    for (int n = 1; n <= nm; ++n) {
      cum += 2.0 * j[n] * j[n];
      if (cum >= 1.0 - epsilon) return n;
    }
    nm = nm * 3 / 2 + 16;  // tail not yet captured, widen
  }
  throw ConvergenceError("significant_band: cumulative power never reached 1 - epsilon",
                         epsilon);
}

}  // namespace orbitclock
