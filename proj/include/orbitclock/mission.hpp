#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orbitclock/clock.hpp"
#include "orbitclock/constants.hpp"
#include "orbitclock/errors.hpp"
#include "orbitclock/estimate.hpp"
#include "orbitclock/phase.hpp"
#include "orbitclock/signal.hpp"
#include "orbitclock/spectrum.hpp"

namespace orbitclock {

struct MissionClock {
  std::string label;
  double f_ph0 = 0.0;  // Hz
};

/// Built-in satellite mission: apsides plus the clocks it carries. The
/// period override keeps the commonly quoted round-number period where one
/// exists (ISS: 5400 s, vs ~5587 s from Kepler's third law on the same
/// apsides); elements(true) switches to the third-law period.
struct MissionPreset {
  std::string name;
  double r_perigee = 0.0;
  double r_apogee = 0.0;
  double mu = kEarthMu;
  std::optional<double> period_override;
  std::vector<MissionClock> clocks;

  OrbitalElements elements(bool kepler_period = false) const {
    return OrbitalElements::from_apsides(
        r_perigee, r_apogee, mu,
        kepler_period ? std::nullopt : period_override);
  }
};

inline std::vector<MissionPreset> builtin_presets() {
  return {
      {"iss",
       6.800e6,
       6.810e6,
       kEarthMu,
       5400.0,
       {{"h-maser", 1.42e9}, {"cs-pharao", 9.19263177e9}}},
      {"galileo",
       2.3445e7,
       3.2510e7,
       kEarthMu,
       std::nullopt,
       {{"h-maser", 1.42e9}}},
  };
}

inline MissionPreset find_preset(const std::string& name) {
  for (auto& p : builtin_presets())
    if (p.name == name) return p;
  throw ConfigError("unknown preset '" + name + "'");
}

/// Fractional frequency difference (gravitational term only) between the
/// orbit-average potential and a ground station at r_ground:
/// mu * (1/r_ground - 1/r0) / c^2. Positive means the orbit clock runs fast
/// relative to the ground clock.
inline double ground_relative_shift(const OrbitalElements& el,
                                    double r_ground = kEarthRadius) {
  if (!(r_ground > 0.0)) throw DomainError("r_ground must be positive");
  return el.mu * (1.0 / r_ground - 1.0 / el.r0) /
         (kSpeedOfLight * kSpeedOfLight);
}

struct ExplicitElements {
  double r_perigee = 0.0;
  double r_apogee = 0.0;
  double mu = kEarthMu;
  std::optional<double> period_override;

  bool operator==(const ExplicitElements&) const = default;
};

struct SynthesisConfig {
  std::optional<double> sample_rate;  // Hz; default derived from alpha
  std::optional<double> offset_freq;  // Hz; default derived from alpha
  int n_periods = 1;
  std::optional<double> snr_db;  // absent: noiseless
  uint64_t seed = 1;

  bool operator==(const SynthesisConfig&) const = default;
};

/// One reproducible pipeline run. Exactly one of preset / elements must be
/// set; for explicit elements the clock is given as a frequency.
struct RunConfig {
  std::optional<std::string> preset;
  std::optional<ExplicitElements> elements;
  std::optional<std::string> clock;      // preset clock label filter
  std::optional<double> clock_freq_hz;   // with explicit elements
  RadiusModel model = RadiusModel::paper;
  bool kepler_period = false;
  SynthesisConfig synthesis;
  double ground_radius = kEarthRadius;

  bool operator==(const RunConfig&) const = default;
};

inline nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  if (cfg.preset) j["preset"] = *cfg.preset;
  if (cfg.elements) {
    auto& e = j["elements"];
    e["r_perigee"] = cfg.elements->r_perigee;
    e["r_apogee"] = cfg.elements->r_apogee;
    e["mu"] = cfg.elements->mu;
    if (cfg.elements->period_override)
      e["period_override"] = *cfg.elements->period_override;
  }
  if (cfg.clock) j["clock"] = *cfg.clock;
  if (cfg.clock_freq_hz) j["clock_freq_hz"] = *cfg.clock_freq_hz;
  j["model"] = to_string(cfg.model);
  j["kepler_period"] = cfg.kepler_period;
  auto& s = j["synthesis"];
  if (cfg.synthesis.sample_rate) s["sample_rate"] = *cfg.synthesis.sample_rate;
  if (cfg.synthesis.offset_freq) s["offset_freq"] = *cfg.synthesis.offset_freq;
  s["n_periods"] = cfg.synthesis.n_periods;
  if (cfg.synthesis.snr_db) s["snr_db"] = *cfg.synthesis.snr_db;
  s["seed"] = cfg.synthesis.seed;
  j["ground_radius"] = cfg.ground_radius;
  return j;
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  if (j.contains("preset")) cfg.preset = j.at("preset").get<std::string>();
  if (j.contains("elements")) {
    const auto& e = j.at("elements");
    ExplicitElements el;
    el.r_perigee = e.at("r_perigee").get<double>();
    el.r_apogee = e.at("r_apogee").get<double>();
    el.mu = e.value("mu", kEarthMu);
    if (e.contains("period_override"))
      el.period_override = e.at("period_override").get<double>();
    cfg.elements = el;
  }
  if (j.contains("clock")) cfg.clock = j.at("clock").get<std::string>();
  if (j.contains("clock_freq_hz"))
    cfg.clock_freq_hz = j.at("clock_freq_hz").get<double>();
  if (j.contains("model"))
    cfg.model = radius_model_from_string(j.at("model").get<std::string>());
  cfg.kepler_period = j.value("kepler_period", false);
  if (j.contains("synthesis")) {
    const auto& s = j.at("synthesis");
    if (s.contains("sample_rate"))
      cfg.synthesis.sample_rate = s.at("sample_rate").get<double>();
    if (s.contains("offset_freq"))
      cfg.synthesis.offset_freq = s.at("offset_freq").get<double>();
    cfg.synthesis.n_periods = s.value("n_periods", 1);
    if (s.contains("snr_db")) cfg.synthesis.snr_db = s.at("snr_db").get<double>();
    cfg.synthesis.seed = s.value("seed", uint64_t{1});
  }
  cfg.ground_radius = j.value("ground_radius", kEarthRadius);
  if (cfg.preset.has_value() == cfg.elements.has_value())
    throw ConfigError("config must set exactly one of preset / elements");
  return cfg;
}

namespace detail {

template <class Fn>
auto with_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw DomainError(std::string("stage ") + stage + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("stage ") + stage + ": " + e.what());
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string("stage ") + stage + ": " + e.what(),
                           e.residual());
  }
}

inline int next_pow2_at_least(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace detail

struct ClockArtifacts {
  std::string label;
  std::string spectrum_csv;
  std::string timeseries_csv;
  std::string dft_csv;
  std::string estimation_json;
};

struct PipelineReport {
  nlohmann::json report;
  std::vector<ClockArtifacts> artifacts;

  std::string report_text() const { return report.dump(2) + "\n"; }

  void write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    auto dump = [&](const std::filesystem::path& p, const std::string& body) {
      std::ofstream out(p, std::ios::binary);
      out << body;
    };
    dump(dir / "report.json", report_text());
    for (const auto& art : artifacts) {
      dump(dir / (art.label + "_spectrum.csv"), art.spectrum_csv);
      if (!art.timeseries_csv.empty())
        dump(dir / (art.label + "_timeseries.csv"), art.timeseries_csv);
      if (!art.dft_csv.empty()) dump(dir / (art.label + "_dft.csv"), art.dft_csv);
      if (!art.estimation_json.empty())
        dump(dir / (art.label + "_estimation.json"), art.estimation_json);
    }
  }
};

/// Full orbit -> alpha -> spectrum -> synthesis -> estimation run.
/// Deterministic for a fixed config (including seed); every reported number
/// comes from a module operation.
inline PipelineReport run_pipeline(const RunConfig& cfg) {
  if (cfg.preset.has_value() == cfg.elements.has_value())
    throw ConfigError("config must set exactly one of preset / elements");

  OrbitalElements el;
  std::vector<MissionClock> clocks;
  std::string source_name;
  std::optional<double> period_override;
  detail::with_stage("orbit", [&] {
    if (cfg.preset) {
      const MissionPreset p = find_preset(*cfg.preset);
      el = p.elements(cfg.kepler_period);
      period_override = p.period_override;
      source_name = p.name;
      for (const auto& c : p.clocks)
        if (!cfg.clock || c.label == *cfg.clock) clocks.push_back(c);
      if (clocks.empty())
        throw ConfigError("preset '" + p.name + "' has no clock labelled '" +
                          cfg.clock.value_or("") + "'");
    } else {
      el = OrbitalElements::from_apsides(
          cfg.elements->r_perigee, cfg.elements->r_apogee, cfg.elements->mu,
          cfg.kepler_period ? std::nullopt : cfg.elements->period_override);
      period_override = cfg.elements->period_override;
      source_name = "custom";
      if (!cfg.clock_freq_hz)
        throw ConfigError("explicit elements require clock_freq_hz");
      clocks.push_back({cfg.clock.value_or("custom"), *cfg.clock_freq_hz});
    }
  });
  std::sort(clocks.begin(), clocks.end(),
            [](const auto& a, const auto& b) { return a.label < b.label; });

  PipelineReport out;
  nlohmann::json& rep = out.report;
  rep["constants_version"] = kConstantsVersion;
  rep["config"] = to_json(cfg);
  rep["source"] = source_name;
  rep["elements"] = {{"r_perigee", el.r_perigee}, {"r_apogee", el.r_apogee},
                     {"mu", el.mu},               {"r0", el.r0},
                     {"eccentricity", el.e},      {"period_s", el.period},
                     {"omega_rad_s", el.omega}};
  rep["ground_relative_shift"] = ground_relative_shift(el, cfg.ground_radius);
  rep["clocks"] = nlohmann::json::array();

  const double orbital_freq = 1.0 / el.period;
  for (const auto& clk : clocks) {
    nlohmann::json sec;
    sec["label"] = clk.label;
    sec["f_ph0"] = clk.f_ph0;
    const ClockTransition tr = ClockTransition::from_frequency(clk.f_ph0);

    const double alpha = detail::with_stage(
        "alpha", [&] { return modulation_index(tr, el); });
    sec["alpha"] = alpha;
    sec["regime"] = to_string(regime_classify(alpha));

    // The rounded preset period is a reproduction convention; surface the
    // third-law alpha too when the difference is material.
    if (period_override && !cfg.kepler_period) {
      const OrbitalElements kel = OrbitalElements::from_apsides(
          el.r_perigee, el.r_apogee, el.mu);
      const double alpha_kepler = modulation_index(tr, kel);
      if (std::abs(alpha_kepler - alpha) > 0.01 * alpha)
        sec["alpha_kepler_period"] = alpha_kepler;
    }

    const auto [delta_e, frac] = redshifted_transition_energy(tr, el);
    sec["redshift"] = {{"delta_e_j", delta_e}, {"fractional_shift", frac}};

    SidebandSpectrum spec = detail::with_stage("spectrum", [&] {
      return jacobi_anger_spectrum(alpha == 0.0 ? 0.0 : alpha, orbital_freq,
                                   delta_e / kPlanck);
    });
    sec["spectrum"] = {{"n_max", (static_cast<int>(spec.lines.size()) - 1) / 2},
                       {"total_power", spec.total_power()}};

    const NyquistRequirements nyq = nyquist_requirements(alpha, orbital_freq);
    sec["nyquist"] = {{"peak_sideband_freq_hz", nyq.peak_sideband_freq},
                      {"min_sample_rate_hz", nyq.min_sample_rate},
                      {"max_averaging_interval_s",
                       nyq.unbounded ? nlohmann::json(nullptr)
                                     : nlohmann::json(nyq.max_averaging_interval)},
                      {"unbounded", nyq.unbounded}};

    ClockArtifacts art;
    art.label = source_name + "_" + clk.label;
    art.spectrum_csv = spec.to_csv();

    if (alpha == 0.0) {
      sec["estimation"] = {{"skipped", "alpha is zero: single carrier line, "
                                       "nothing to estimate"}};
    } else {
      // Downconverted synthesis frame: frequencies in units of the orbital
      // frequency so bins align exactly; defaults scale with the band.
      const auto [ts, est, offset_freq, sample_rate, comparison, dft_csv] =
          detail::with_stage("synthesis", [&] {
            const int band = significant_band(alpha, 1e-6);
            const int off_mult =
                cfg.synthesis.offset_freq
                    ? static_cast<int>(
                          std::llround(*cfg.synthesis.offset_freq / orbital_freq))
                    : detail::next_pow2_at_least(band + 2);
            const double offset = cfg.synthesis.offset_freq
                                      ? *cfg.synthesis.offset_freq
                                      : off_mult * orbital_freq;
            const double rate = cfg.synthesis.sample_rate
                                    ? *cfg.synthesis.sample_rate
                                    : 4.0 * detail::next_pow2_at_least(off_mult) *
                                          orbital_freq;
            TimeSeries series = synthesize_beat(alpha, orbital_freq, offset,
                                                rate, cfg.synthesis.n_periods);
            if (cfg.synthesis.snr_db)
              add_complex_white_noise(series, *cfg.synthesis.snr_db,
                                      cfg.synthesis.seed);
            const DftSpectrum dspec = dft(series);
            const int n_est = std::max(2, significant_band(alpha, 1e-3));
            const auto measured = extract_sideband_amplitudes(
                dspec, offset, orbital_freq, 0, n_est);
            const EstimationResult res = detail::with_stage("estimation", [&] {
              return estimate_modulation_index(measured,
                                               {0.0, 2.0 * alpha + 5.0});
            });
            nlohmann::json cmp = nlohmann::json::array();
            for (const auto& [n, meas] : measured) {
              const double pred = std::abs(bessel_j(n, alpha));
              cmp.push_back({{"n", n},
                             {"predicted", pred},
                             {"measured", meas},
                             {"abs_error", std::abs(pred - meas)}});
            }
            return std::tuple(std::move(series), res, offset, rate,
                              std::move(cmp), dspec.to_csv());
          });

      sec["synthesis"] = {{"offset_freq_hz", offset_freq},
                          {"sample_rate_hz", sample_rate},
                          {"n_periods", cfg.synthesis.n_periods},
                          {"n_samples", ts.samples.size()},
                          {"snr_db", cfg.synthesis.snr_db
                                         ? nlohmann::json(*cfg.synthesis.snr_db)
                                         : nlohmann::json(nullptr)},
                          {"seed", cfg.synthesis.seed}};
      sec["estimation"] = {{"alpha_hat", est.alpha_hat},
                           {"residual_norm", est.residual_norm},
                           {"n_lines_used", est.n_lines_used},
                           {"seed", cfg.synthesis.seed}};
      sec["comparison"] = comparison;

      art.timeseries_csv = ts.to_csv();
      art.dft_csv = dft_csv;
      art.estimation_json = sec["estimation"].dump(2) + "\n";
    }

    rep["clocks"].push_back(std::move(sec));
    out.artifacts.push_back(std::move(art));
  }
  return out;
}

}  // namespace orbitclock
