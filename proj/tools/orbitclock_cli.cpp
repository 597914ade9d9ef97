// Command-line front end: mission presets, orbit tables, modulation index,
// sideband spectra, signal synthesis, and the full estimation pipeline.
// Exit codes: 0 success, 2 configuration error, 3 numerical non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitclock/mission.hpp"

namespace oc = orbitclock;

namespace {

struct CommonOpts {
  std::string preset;
  std::string clock;
  std::string model = "paper";
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  uint64_t seed = 1;
  bool kepler_period = false;

  // Explicit orbit / clock, alternative to --preset.
  double r_perigee = 0.0;
  double r_apogee = 0.0;
  double mu = oc::kEarthMu;
  double period_override = 0.0;
  double clock_freq = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--preset", o.preset, "Mission preset name (iss, galileo)");
  cmd->add_option("--clock", o.clock, "Clock label within the preset");
  cmd->add_option("--model", o.model, "Radius model: exact|paper")
      ->check(CLI::IsMember({"exact", "paper"}));
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--out", o.out_path, "Output path (default stdout)");
  cmd->add_option("--format", o.format, "Output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", o.seed, "RNG seed for noise injection");
  cmd->add_flag("--kepler-period", o.kepler_period,
                "Use the third-law period even when the preset overrides it");
  cmd->add_option("--rp", o.r_perigee, "Perigee radius, m");
  cmd->add_option("--ra", o.r_apogee, "Apogee radius, m");
  cmd->add_option("--mu", o.mu, "Gravitational parameter, m^3/s^2");
  cmd->add_option("--period", o.period_override, "Orbital period override, s");
  cmd->add_option("--freq", o.clock_freq, "Clock transition frequency, Hz");
}

void emit(const CommonOpts& o, const std::string& body) {
  if (o.out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) throw oc::ConfigError("cannot open output path " + o.out_path);
    out << body;
  }
}

oc::OrbitalElements resolve_elements(const CommonOpts& o) {
  if (!o.preset.empty())
    return oc::find_preset(o.preset).elements(o.kepler_period);
  if (o.r_perigee > 0.0 && o.r_apogee > 0.0) {
    std::optional<double> period;
    if (o.period_override > 0.0 && !o.kepler_period) period = o.period_override;
    return oc::OrbitalElements::from_apsides(o.r_perigee, o.r_apogee, o.mu,
                                             period);
  }
  throw oc::ConfigError("give --preset or --rp/--ra");
}

std::vector<oc::MissionClock> resolve_clocks(const CommonOpts& o) {
  if (!o.preset.empty()) {
    std::vector<oc::MissionClock> out;
    for (const auto& c : oc::find_preset(o.preset).clocks)
      if (o.clock.empty() || c.label == o.clock) out.push_back(c);
    if (out.empty())
      throw oc::ConfigError("preset has no clock labelled '" + o.clock + "'");
    return out;
  }
  if (o.clock_freq > 0.0)
    return {{o.clock.empty() ? "custom" : o.clock, o.clock_freq}};
  throw oc::ConfigError("give --preset or --freq");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_presets(const CommonOpts& o) {
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : oc::builtin_presets()) {
      const oc::OrbitalElements el = p.elements();
      nlohmann::json clocks = nlohmann::json::array();
      for (const auto& c : p.clocks)
        clocks.push_back({{"label", c.label}, {"f_ph0", c.f_ph0}});
      j.push_back({{"name", p.name},
                   {"r_perigee", p.r_perigee},
                   {"r_apogee", p.r_apogee},
                   {"eccentricity", el.e},
                   {"period_s", el.period},
                   {"period_override",
                    p.period_override ? nlohmann::json(*p.period_override)
                                      : nlohmann::json(nullptr)},
                   {"clocks", clocks}});
    }
    emit(o, j.dump(2) + "\n");
  } else {
    std::string out = "name,r_perigee,r_apogee,eccentricity,period_s,clocks\n";
    for (const auto& p : oc::builtin_presets()) {
      const oc::OrbitalElements el = p.elements();
      out += p.name + "," + fmt(p.r_perigee) + "," + fmt(p.r_apogee) + "," +
             fmt(el.e) + "," + fmt(el.period) + ",";
      for (size_t i = 0; i < p.clocks.size(); ++i)
        out += (i ? ";" : "") + p.clocks[i].label;
      out += "\n";
    }
    emit(o, out);
  }
  return 0;
}

int cmd_orbit(const CommonOpts& o, int samples) {
  const oc::OrbitalElements el = resolve_elements(o);
  const oc::RadiusModel model = oc::radius_model_from_string(o.model);
  std::string out = "t_s,r_m\n";
  for (int i = 0; i <= samples; ++i) {
    const double t = el.period * i / samples;
    out += fmt(t) + "," + fmt(oc::radius(el, t, model)) + "\n";
  }
  emit(o, out);
  return 0;
}

int cmd_alpha(const CommonOpts& o) {
  const oc::OrbitalElements el = resolve_elements(o);
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : resolve_clocks(o)) {
    const auto tr = oc::ClockTransition::from_frequency(c.f_ph0);
    const double alpha = oc::modulation_index(tr, el);
    j.push_back({{"clock", c.label},
                 {"f_ph0", c.f_ph0},
                 {"alpha", alpha},
                 {"regime", oc::to_string(oc::regime_classify(alpha))}});
  }
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_spectrum(const CommonOpts& o, double alpha_flag) {
  if (alpha_flag >= 0.0) {
    // Normalized frame: unit orbital frequency, nominal carrier.
    const auto spec = oc::jacobi_anger_spectrum(alpha_flag, 1.0, 1.0);
    emit(o, o.format == "json" ? spec.to_json().dump(2) + "\n" : spec.to_csv());
    return 0;
  }
  const oc::OrbitalElements el = resolve_elements(o);
  const auto clocks = resolve_clocks(o);
  if (clocks.size() != 1)
    throw oc::ConfigError("spectrum: select a single clock with --clock");
  const auto tr = oc::ClockTransition::from_frequency(clocks[0].f_ph0);
  const double alpha = oc::modulation_index(tr, el);
  const auto [delta_e, frac] = oc::redshifted_transition_energy(tr, el);
  const auto spec = oc::jacobi_anger_spectrum(alpha, 1.0 / el.period,
                                              delta_e / oc::kPlanck);
  emit(o, o.format == "json" ? spec.to_json().dump(2) + "\n" : spec.to_csv());
  return 0;
}

int cmd_synth(const CommonOpts& o, double alpha, double orbital_freq,
              double offset_freq, double sample_rate, int n_periods,
              double snr_db) {
  oc::TimeSeries ts = oc::synthesize_beat(alpha, orbital_freq, offset_freq,
                                          sample_rate, n_periods);
  if (snr_db > 0.0) oc::add_complex_white_noise(ts, snr_db, o.seed);
  emit(o, ts.to_csv());
  return 0;
}

int cmd_estimate(const CommonOpts& o, const std::string& in_path,
                 double offset_freq, double orbital_freq, int n_lines,
                 double lo, double hi) {
  std::ifstream in(in_path);
  if (!in) throw oc::ConfigError("cannot open input " + in_path);
  const oc::TimeSeries ts = oc::TimeSeries::from_csv(in);
  const oc::DftSpectrum spec = oc::dft(ts);
  const auto measured =
      oc::extract_sideband_amplitudes(spec, offset_freq, orbital_freq, 0,
                                      n_lines - 1);
  const oc::EstimationResult res =
      oc::estimate_modulation_index(measured, {lo, hi});
  nlohmann::json j = {{"alpha_hat", res.alpha_hat},
                      {"residual_norm", res.residual_norm},
                      {"n_lines_used", res.n_lines_used},
                      {"seed", o.seed}};
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_pipeline(const CommonOpts& o, bool seed_given,
                 const std::string& out_dir, double snr_db, int n_periods) {
  oc::RunConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw oc::ConfigError("cannot open config " + o.config_path);
    nlohmann::json j;
    in >> j;
    cfg = oc::run_config_from_json(j);
  }
  // Flags override file values.
  if (!o.preset.empty()) {
    cfg.preset = o.preset;
    cfg.elements.reset();
  } else if (o.r_perigee > 0.0 && o.r_apogee > 0.0) {
    oc::ExplicitElements el;
    el.r_perigee = o.r_perigee;
    el.r_apogee = o.r_apogee;
    el.mu = o.mu;
    if (o.period_override > 0.0) el.period_override = o.period_override;
    cfg.elements = el;
    cfg.preset.reset();
  }
  if (!o.clock.empty()) cfg.clock = o.clock;
  if (o.clock_freq > 0.0) cfg.clock_freq_hz = o.clock_freq;
  cfg.model = oc::radius_model_from_string(o.model);
  if (o.kepler_period) cfg.kepler_period = true;
  if (snr_db > 0.0) cfg.synthesis.snr_db = snr_db;
  if (n_periods > 0) cfg.synthesis.n_periods = n_periods;
  if (seed_given) cfg.synthesis.seed = o.seed;
  if (!cfg.preset && !cfg.elements)
    throw oc::ConfigError("pipeline: give --preset, --rp/--ra, or --config");

  const oc::PipelineReport report = oc::run_pipeline(cfg);
  emit(o, report.report_text());
  if (!out_dir.empty()) report.write(out_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eccentric-orbit atomic clock sideband simulator"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* presets = app.add_subcommand("presets", "List mission presets");
  add_common(presets, opts);

  auto* orbit = app.add_subcommand("orbit", "Tabulate r(t) over one period");
  add_common(orbit, opts);
  int orbit_samples = 360;
  orbit->add_option("--samples", orbit_samples, "Rows in the table");

  auto* alpha = app.add_subcommand("alpha", "Gravitational modulation index");
  add_common(alpha, opts);

  auto* spectrum = app.add_subcommand("spectrum", "Predicted sideband spectrum");
  add_common(spectrum, opts);
  double alpha_flag = -1.0;
  spectrum->add_option("--alpha", alpha_flag,
                       "Explicit modulation index (normalized frame)");

  auto* synth = app.add_subcommand("synth", "Synthesize the beat time series");
  add_common(synth, opts);
  double s_alpha = 0.0, s_forb = 1.0, s_foff = 32.0, s_rate = 1024.0,
         s_snr = 0.0;
  int s_periods = 1;
  synth->add_option("--alpha", s_alpha, "Modulation index")->required();
  synth->add_option("--orbital-freq", s_forb, "Modulation frequency, Hz");
  synth->add_option("--offset-freq", s_foff, "Downconverted carrier offset, Hz");
  synth->add_option("--sample-rate", s_rate, "Sample rate, Hz");
  synth->add_option("--periods", s_periods, "Modulation periods to synthesize");
  synth->add_option("--snr", s_snr, "Add complex white noise at this SNR, dB");

  auto* estimate =
      app.add_subcommand("estimate", "Estimate alpha from a time series CSV");
  add_common(estimate, opts);
  std::string e_in;
  double e_foff = 32.0, e_forb = 1.0, e_lo = 0.0, e_hi = 50.0;
  int e_lines = 8;
  estimate->add_option("--in", e_in, "Input time series CSV")->required();
  estimate->add_option("--offset-freq", e_foff, "Carrier offset, Hz");
  estimate->add_option("--orbital-freq", e_forb, "Modulation frequency, Hz");
  estimate->add_option("--n-lines", e_lines, "Sideband lines to use (n >= 0)");
  estimate->add_option("--lo", e_lo, "Bracket lower bound");
  estimate->add_option("--hi", e_hi, "Bracket upper bound");

  auto* pipeline = app.add_subcommand("pipeline", "Full report");
  add_common(pipeline, opts);
  std::string p_out_dir;
  double p_snr = 0.0;
  int p_periods = 0;
  pipeline->add_option("--out-dir", p_out_dir, "Directory for CSV/JSON artifacts");
  pipeline->add_option("--snr", p_snr, "Noise SNR for synthesis, dB");
  pipeline->add_option("--periods", p_periods, "Modulation periods");

  CLI11_PARSE(app, argc, argv);

  try {
    if (presets->parsed()) return cmd_presets(opts);
    if (orbit->parsed()) return cmd_orbit(opts, orbit_samples);
    if (alpha->parsed()) return cmd_alpha(opts);
    if (spectrum->parsed()) return cmd_spectrum(opts, alpha_flag);
    if (synth->parsed())
      return cmd_synth(opts, s_alpha, s_forb, s_foff, s_rate, s_periods, s_snr);
    if (estimate->parsed())
      return cmd_estimate(opts, e_in, e_foff, e_forb, e_lines, e_lo, e_hi);
    if (pipeline->parsed())
      return cmd_pipeline(opts, pipeline->count("--seed") > 0, p_out_dir,
                          p_snr, p_periods);
  } catch (const oc::ConvergenceError& e) {
    std::cerr << "numerical error: " << e.what()
              << " (residual " << e.residual() << ")\n";
    return 3;
  } catch (const oc::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const oc::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
