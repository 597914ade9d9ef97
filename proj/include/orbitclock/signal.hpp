#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <random>
#include <utility>
#include <sstream>
#include <string>
#include <vector>

#include "orbitclock/errors.hpp"
#include "orbitclock/spectrum.hpp"

namespace orbitclock {

/// Uniformly sampled complex signal.
struct TimeSeries {
  double t0 = 0.0;  // s
  double dt = 0.0;  // s
  std::vector<std::complex<double>> samples;

  std::string to_csv() const {
    std::string out = "t_s,re,im\n";
    char buf[160];
    for (size_t k = 0; k < samples.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t0 + k * dt,
                    samples[k].real(), samples[k].imag());
      out += buf;
    }
    return out;
  }

  static TimeSeries from_csv(std::istream& in) {
    TimeSeries ts;
    std::string line;
    std::getline(in, line);  // header
    double prev_t = 0.0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      double t, re, im;
      if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &t, &re, &im) != 3)
        throw ConfigError("time series CSV: malformed row '" + line + "'");
      if (ts.samples.empty())
        ts.t0 = t;
      else if (ts.samples.size() == 1)
        ts.dt = t - prev_t;
      ts.samples.emplace_back(re, im);
      prev_t = t;
    }
    if (ts.samples.size() < 2)
      throw ConfigError("time series CSV: need at least 2 samples");
    return ts;
  }
};

/// DFT output; bin k holds frequency k * bin_width for k < N/2, negative
/// frequencies above. Unitary normalization (1/sqrt(N)).
struct DftSpectrum {
  double bin_width = 0.0;  // Hz
  std::vector<std::complex<double>> bins;

  std::string to_csv() const {
    std::string out = "freq_hz,re,im,mag\n";
    char buf[200];
    const size_t n = bins.size();
    for (size_t k = 0; k < n; ++k) {
      const double f =
          (k < (n + 1) / 2 ? static_cast<double>(k)
                           : static_cast<double>(k) - static_cast<double>(n)) *
          bin_width;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", f,
                    bins[k].real(), bins[k].imag(), std::abs(bins[k]));
      out += buf;
    }
    return out;
  }
};

namespace detail {

inline bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 decimation-in-time FFT, in place, forward (e^{-i...}).
inline void fft_radix2(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    for (size_t i = 0; i < n; i += len) {
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> w =
            std::polar(1.0, ang * static_cast<double>(k));
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace detail

/// Phase-modulated clock-comparison beat in a downconverted frame:
/// s[k] = exp(i (2 pi f_off t_k + alpha sin(2 pi f_orb t_k))).
/// Both tones must land exactly on DFT bins and satisfy Nyquist with the
/// full significant sideband band.
inline TimeSeries synthesize_beat(double alpha, double orbital_freq,
                                  double offset_freq, double sample_rate,
                                  int n_periods) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  if (!(orbital_freq > 0.0) || !(offset_freq > 0.0) || !(sample_rate > 0.0))
    throw DomainError("frequencies must be positive");
  if (n_periods < 1) throw DomainError("n_periods must be >= 1");

  const int band = alpha > 0.0 ? significant_band(alpha, 1e-6) : 0;
  if (!(sample_rate > 2.0 * (offset_freq + band * orbital_freq)))
    throw ConfigError(
        "Nyquist violation: sample_rate must exceed 2*(offset_freq + "
        "n_band*orbital_freq)");

  const double duration = n_periods / orbital_freq;
  const double n_exact = sample_rate * duration;
  const auto n_samples = static_cast<long long>(std::llround(n_exact));
  if (std::abs(n_exact - n_samples) > 1e-9 || n_samples < 2)
    throw ConfigError(
        "bin misalignment: sample_rate * n_periods / orbital_freq must be an "
        "integer sample count");
  const double bin = sample_rate / static_cast<double>(n_samples);
  const double off_bins = offset_freq / bin;
  if (std::abs(off_bins - std::llround(off_bins)) > 1e-9)
    throw ConfigError(
        "bin misalignment: offset_freq must be an integer multiple of "
        "sample_rate/N");

  TimeSeries ts;
  ts.t0 = 0.0;
  ts.dt = 1.0 / sample_rate;
  ts.samples.resize(static_cast<size_t>(n_samples));
  const double two_pi = 2.0 * std::numbers::pi;
  for (size_t k = 0; k < ts.samples.size(); ++k) {
    const double t = k * ts.dt;
    const double phase =
        two_pi * offset_freq * t + alpha * std::sin(two_pi * orbital_freq * t);
    ts.samples[k] = std::polar(1.0, phase);
  }
  return ts;
}

/// Unitary DFT; radix-2 FFT for power-of-two lengths, direct O(N^2)
/// otherwise (N <= 4096).
inline DftSpectrum dft(const TimeSeries& series) {
  const size_t n = series.samples.size();
  if (n < 2) throw DomainError("dft: need at least 2 samples");
  DftSpectrum spec;
  spec.bin_width = 1.0 / (series.dt * static_cast<double>(n));
  if (detail::is_pow2(n)) {
    spec.bins = series.samples;
    detail::fft_radix2(spec.bins);
  } else if (n <= 4096) {
    spec.bins.assign(n, {0.0, 0.0});
    for (size_t k = 0; k < n; ++k) {
      std::complex<double> acc{0.0, 0.0};
      for (size_t m = 0; m < n; ++m)
        acc += series.samples[m] *
               std::polar(1.0, -2.0 * std::numbers::pi *
                                   static_cast<double>(k * m % n) /
                                   static_cast<double>(n));
      spec.bins[k] = acc;
    }
  } else {
    throw ConfigError("dft: length must be a power of two (or <= 4096)");
  }
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& b : spec.bins) b *= inv_sqrt_n;
  return spec;
}

/// Measured |J_n| at bins offset_freq + n*orbital_freq for n in
/// [n_lo, n_hi]. Bins must be exactly aligned (as synthesize_beat enforces).
inline std::vector<std::pair<int, double>> extract_sideband_amplitudes(
    const DftSpectrum& spec, double offset_freq, double orbital_freq, int n_lo,
    int n_hi) {
  if (n_lo > n_hi) throw DomainError("n_lo must be <= n_hi");
  const auto n = static_cast<long long>(spec.bins.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<std::pair<int, double>> out;
  out.reserve(static_cast<size_t>(n_hi - n_lo + 1));
  for (int m = n_lo; m <= n_hi; ++m) {
    const double f = offset_freq + m * orbital_freq;
    const double k_exact = f / spec.bin_width;
    const long long k = std::llround(k_exact);
    if (std::abs(k_exact - k) > 1e-6)
      throw ConfigError("extract: requested frequency is not bin-aligned");
    if (k <= -n || k >= n)
      throw std::out_of_range("extract: requested bin outside spectrum");
    const long long idx = k >= 0 ? k : k + n;
    out.emplace_back(m, std::abs(spec.bins[static_cast<size_t>(idx)]) * scale);
  }
  return out;
}

/// Additive complex white Gaussian noise at the given SNR (signal assumed
/// unit power per sample). Deterministic for a given seed.
inline void add_complex_white_noise(TimeSeries& series, double snr_db,
                                    uint64_t seed) {
  const double noise_var = std::pow(10.0, -snr_db / 10.0);
  const double sigma = std::sqrt(noise_var / 2.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  for (auto& s : series.samples) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    s += std::complex<double>(re, im);
  }
}

/// Sampling-cadence bound from the sideband cutoff n_max ~ alpha.
struct NyquistRequirements {
  double peak_sideband_freq = 0.0;    // alpha * orbital frequency, Hz
  double min_sample_rate = 0.0;       // 2 * peak, Hz
  double max_averaging_interval = 0.0;  // 1 / min_sample_rate, s
  bool unbounded = false;             // alpha == 0: no sidebands to resolve
};

inline NyquistRequirements nyquist_requirements(double alpha,
                                                double orbital_freq) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  if (!(orbital_freq > 0.0)) throw DomainError("orbital_freq must be positive");
  NyquistRequirements req;
  if (alpha == 0.0) {
    req.unbounded = true;
    req.max_averaging_interval = std::numeric_limits<double>::infinity();
    return req;
  }
  req.peak_sideband_freq = alpha * orbital_freq;
  req.min_sample_rate = 2.0 * req.peak_sideband_freq;
  req.max_averaging_interval = 1.0 / req.min_sample_rate;
  return req;
}

}  // namespace orbitclock
