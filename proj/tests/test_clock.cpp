#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "orbitclock/clock.hpp"

using namespace orbitclock;

namespace {

OrbitalElements iss() {
  return OrbitalElements::from_apsides(6.800e6, 6.810e6, kEarthMu, 5400.0);
}

OrbitalElements galileo() {
  return OrbitalElements::from_apsides(2.3445e7, 3.2510e7, kEarthMu);
}

double relative_phase(const TwoLevelState& s) {
  return std::arg(s.c_f / s.c_i);
}

// Unwrapped mixing phase accumulated by the numerical propagator, for
// error measurements that exceed one cycle never needed here (all
// comparisons are within a fraction of a cycle after secular removal).
double phase_error(const TwoLevelState& a, const TwoLevelState& b) {
  return std::abs(std::arg((a.c_f / a.c_i) * std::conj(b.c_f / b.c_i)));
}

}  // namespace

TEST_CASE("ClockTransition derived fields") {
  const auto tr = ClockTransition::from_frequency(1.42e9);
  CHECK(tr.delta_e0 == kPlanck * 1.42e9);
  CHECK(tr.delta_m == tr.delta_e0 / (kSpeedOfLight * kSpeedOfLight));
  CHECK(tr.m_e_star > tr.m_e);
  CHECK(tr.e_f0 - tr.e_i0 == tr.delta_e0);
  CHECK_THROWS_AS(ClockTransition::from_frequency(0.0), DomainError);
}

TEST_CASE("level energies shift with the potential") {
  const auto tr = ClockTransition::from_frequency(1.42e9);
  const auto el = galileo();

  // Gap reduction at perigee: delta_m * Phi(0).
  const auto [ei, ef] = level_energies(tr, el, 0.0, RadiusModel::paper);
  const double phi0 = -(el.mu / el.r0) * (1.0 + el.e);
  CHECK(ei == Catch::Approx(tr.e_i0 + tr.m_e * phi0));
  CHECK(ef - ei == Catch::Approx(tr.delta_e0 + tr.delta_m * phi0).epsilon(1e-12));

  for (double t : {0.0, 0.2 * el.period, 0.7 * el.period}) {
    const auto [i2, f2] = level_energies(tr, el, t, RadiusModel::exact);
    const double phi = potential_exact(el, t);
    CHECK(f2 - i2 == Catch::Approx(tr.delta_e0 + tr.delta_m * phi).epsilon(1e-12));
  }
}

TEST_CASE("analytic propagation basics") {
  const auto tr = ClockTransition::from_frequency(1.42e9);
  const auto el = iss();
  const TwoLevelState s0 = equal_superposition();

  const TwoLevelState at0 = propagate_analytic(s0, tr, el, 0.0, RadiusModel::paper);
  CHECK(at0.c_i == s0.c_i);
  CHECK(at0.c_f == s0.c_f);

  // Vanishing gravitational parameter: the rotating frame removes all
  // evolution.
  const auto weak = OrbitalElements::from_apsides(6.800e6, 6.810e6, 1e-6, 5400.0);
  const TwoLevelState free = propagate_analytic(s0, tr, weak, 2000.0, RadiusModel::paper);
  CHECK(std::abs(free.c_f - s0.c_f) < 1e-12);

  // One full orbit: oscillatory part gone, only the secular phase remains.
  const TwoLevelState orbit =
      propagate_analytic(s0, tr, el, el.period, RadiusModel::paper);
  const PhaseRecord rec = mixing_angle(tr, el, el.period);
  // c_f carries exp(-i * delta_phi), so the relative phase is minus the
  // accumulated mixing angle.
  const double expected = -rec.mixing_secular;
  const double got = relative_phase(orbit);
  // Compare modulo 2*pi.
  CHECK(std::abs(std::remainder(got - expected, 2.0 * std::numbers::pi)) < 1e-8);

  CHECK_THROWS_AS(propagate_analytic({{1.0, 0.0}, {1.0, 0.0}}, tr, el, 10.0,
                                     RadiusModel::paper),
                  DomainError);
}

TEST_CASE("numerical propagator: constant potential matches analytic") {
  const auto tr = ClockTransition::from_frequency(1.42e9);
  const auto circ = OrbitalElements::from_apsides(7.0e6, 7.0e6, kEarthMu);
  const TwoLevelState s0 = equal_superposition();
  const double t = circ.period / 8.0;
  const TwoLevelState an = propagate_analytic(s0, tr, circ, t, RadiusModel::paper);
  const TwoLevelState num = propagate_numerical(s0, tr, circ, t,
                                                RadiusModel::paper,
                                                circ.period / 4096.0);
  CHECK(phase_error(an, num) < 1e-10);
  CHECK(num.is_normalized());
}

TEST_CASE("numerical propagator converges at order 2 and hits 1e-8 per orbit") {
  const auto tr = ClockTransition::from_frequency(1.42e9);
  const auto el = iss();
  const TwoLevelState s0 = equal_superposition();

  // Full orbit, dt = T/1e6.
  const TwoLevelState an =
      propagate_analytic(s0, tr, el, el.period, RadiusModel::paper);
  const TwoLevelState num = propagate_numerical(
      s0, tr, el, el.period, RadiusModel::paper, el.period / 1'000'000.0);
  CHECK(phase_error(an, num) < 1e-8);
  CHECK(num.is_normalized());

  // Convergence order measured at 3/4 orbit, where the midpoint rule's
  // leading error term does not cancel (it telescopes to zero over a full
  // period).
  const double t = 0.75 * el.period;
  const TwoLevelState ref = propagate_analytic(s0, tr, el, t, RadiusModel::paper);
  double err_prev = 0.0;
  double order_sum = 0.0;
  int order_count = 0;
  for (int n : {1 << 11, 1 << 12, 1 << 13}) {
    const TwoLevelState y =
        propagate_numerical(s0, tr, el, t, RadiusModel::paper, t / n);
    const double err = phase_error(ref, y);
    if (err_prev > 0.0) {
      order_sum += std::log2(err_prev / err);
      ++order_count;
    }
    err_prev = err;
  }
  const double order = order_sum / order_count;
  INFO("observed order " << order);
  CHECK(order == Catch::Approx(2.0).margin(0.2));
}

TEST_CASE("propagation preserves the norm and never touches c_i") {
  const auto tr = ClockTransition::from_frequency(9.19263177e9);
  const auto el = iss();
  const TwoLevelState s0{{0.6, 0.0}, {0.0, 0.8}};
  for (double t : {100.0, 1700.0, el.period}) {
    const auto a = propagate_analytic(s0, tr, el, t, RadiusModel::paper);
    CHECK(a.is_normalized());
    CHECK(a.c_i == s0.c_i);
    const auto n = propagate_numerical(s0, tr, el, t, RadiusModel::paper,
                                       el.period / 2000.0);
    CHECK(n.is_normalized());
    CHECK(n.c_i == s0.c_i);
  }
}

TEST_CASE("propagation composes as a group action") {
  const auto tr = ClockTransition::from_frequency(1.42e9);
  const auto el = iss();
  const TwoLevelState s0 = equal_superposition();
  const double t1 = 1100.0, t2 = 3900.0;

  const TwoLevelState direct = propagate_analytic(s0, tr, el, t2, RadiusModel::paper);

  // Re-based second leg: phase accumulated over [t1, t2].
  const TwoLevelState leg1 = propagate_analytic(s0, tr, el, t1, RadiusModel::paper);
  const PhaseRecord r1 = mixing_angle(tr, el, t1);
  const PhaseRecord r2 = mixing_angle(tr, el, t2);
  const double leg2_phase = (r2.mixing_secular + r2.mixing_oscillatory) -
                            (r1.mixing_secular + r1.mixing_oscillatory);
  TwoLevelState chained = leg1;
  chained.c_f *= std::exp(std::complex<double>(0.0, -leg2_phase));

  CHECK(phase_error(direct, chained) < 1e-9);
}

TEST_CASE("redshifted transition energy") {
  const auto tr = ClockTransition::from_frequency(1.42e9);

  // r0 -> infinity recovers the unshifted gap.
  const auto far = OrbitalElements::from_apsides(1e16, 1e16, kEarthMu);
  CHECK(redshifted_transition_energy(tr, far).first ==
        Catch::Approx(tr.delta_e0).epsilon(1e-12));

  // Frozen from direct evaluation with the constants table.
  CHECK(redshifted_transition_energy(tr, galileo()).second ==
        Catch::Approx(1.585e-10).epsilon(1e-3));
  CHECK(redshifted_transition_energy(tr, iss()).second ==
        Catch::Approx(6.52e-10).epsilon(1e-3));
}

TEST_CASE("numerical propagator validates dt") {
  const auto tr = ClockTransition::from_frequency(1.42e9);
  const auto el = iss();
  const TwoLevelState s0 = equal_superposition();
  CHECK_THROWS_AS(
      propagate_numerical(s0, tr, el, 100.0, RadiusModel::paper, 0.0),
      DomainError);
  CHECK_THROWS_AS(
      propagate_numerical(s0, tr, el, 100.0, RadiusModel::paper, el.period / 10.0),
      DomainError);
}
