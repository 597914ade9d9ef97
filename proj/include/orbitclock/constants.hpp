#pragma once

#include <numbers>

namespace orbitclock {

// Physical constants, CODATA 2018 exact/recommended values.
inline constexpr double kSpeedOfLight = 299'792'458.0;      // m/s
inline constexpr double kPlanck = 6.626'070'15e-34;         // J s
inline constexpr double kHBar = kPlanck / (2.0 * std::numbers::pi);
inline constexpr double kElectronMass = 9.109'383'7139e-31; // kg

// Earth standard gravitational parameter (EGM96) and mean radius.
inline constexpr double kEarthMu = 3.986004418e14;          // m^3/s^2
inline constexpr double kEarthRadius = 6.371e6;             // m

// Stamped into reports so numbers are reproducible against a fixed table.
inline constexpr const char* kConstantsVersion = "codata2018-egm96.1";

}  // namespace orbitclock
