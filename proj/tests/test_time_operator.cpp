#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "dbclock/dirac.hpp"
#include "dbclock/observables.hpp"
#include "dbclock/time_operator.hpp"

using namespace dbclock;
using namespace dbclock::dirac;
using namespace dbclock::time_operator;
using Catch::Approx;

namespace {

SpinorField normalized_random_field(const Lattice& lat, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  SpinorField f;
  f.lattice = lat;
  f.upper.resize(lat.n);
  f.lower.resize(lat.n);
  for (int j = 0; j < lat.n; ++j) {
    // localized random amplitudes so the ring position stays well defined
    const double envelope = std::exp(-lat.x[j] * lat.x[j] / (2.0 * 64.0));
    f.upper[j] = envelope * Complex(g(rng), g(rng));
    f.lower[j] = envelope * Complex(g(rng), g(rng));
  }
  const double nrm = std::sqrt(f.norm());
  f.upper /= nrm;
  f.lower /= nrm;
  return f;
}

Complex inner(const SpinorField& a, const SpinorField& b) {
  Complex z(0.0, 0.0);
  for (int j = 0; j < a.lattice.n; ++j)
    z += std::conj(a.upper[j]) * b.upper[j] + std::conj(a.lower[j]) * b.lower[j];
  return z * a.lattice.dx;
}

SpinorField positive_packet(double k0, double sigma, double x0 = 0.0) {
  const Lattice lat = make_lattice(2048, 409.6);
  PacketSpec spec;
  spec.x0 = x0;
  spec.k0 = k0;
  spec.sigma_x = sigma;
  return gaussian_packet(lat, spec, DiracAlgebra::make(1.0));
}

}  // namespace

TEST_CASE("expectation of T at rest position is tau0 times the beta average") {
  const DiracAlgebra alg = DiracAlgebra::make(1.0);
  const SpinorField f = positive_packet(0.75, 10.0);
  CHECK(std::abs(expect_T(f, TimeOperatorParams{1.0}, alg) / 0.8 - 1.0) < 1e-2);
  CHECK(std::abs(expect_T(f, TimeOperatorParams{0.0}, alg)) < 1e-6);
}

TEST_CASE("default tau0 is the reduced intrinsic period") {
  CHECK(TimeOperatorParams::for_mass(2.0).tau0 == 0.5);
  CHECK(TimeOperatorParams{}.tau0 == 1.0);
}

TEST_CASE("T is self-adjoint as a matrix element symmetry") {
  const Lattice lat = make_lattice(256, 128.0);
  std::mt19937 rng(12345);
  const TimeOperatorParams params{0.7};
  for (int trial = 0; trial < 20; ++trial) {
    const SpinorField phi = normalized_random_field(lat, rng);
    const SpinorField psi = normalized_random_field(lat, rng);
    const Complex lhs = inner(phi, apply_T(psi, params, 0.0));
    const Complex rhs = inner(psi, apply_T(phi, params, 0.0));
    REQUIRE(std::abs(lhs - std::conj(rhs)) < 1e-12);
  }
}

TEST_CASE("diagonal T matrix element is real") {
  const TimeOperatorParams params{1.0};
  const SpinorField f = positive_packet(0.75, 10.0);
  const Complex diag = inner(f, apply_T(f, params));
  CHECK(std::abs(std::imag(diag)) < 1e-12);
}

TEST_CASE("Ehrenfest identity for the positive packet") {
  const DiracAlgebra alg = DiracAlgebra::make(1.0);
  const SpinorField f = positive_packet(0.75, 10.0);
  const EhrenfestCheck c = ehrenfest_check(f, TimeOperatorParams{1.0}, alg, 1e-3);
  CHECK(c.abs_diff < 1e-6);
  CHECK(std::abs(c.rhs / 0.36 - 1.0) < 1e-2);  // squared group velocity at k0
}

TEST_CASE("Ehrenfest finite difference converges at second order") {
  const DiracAlgebra alg = DiracAlgebra::make(1.0);
  const Lattice lat = make_lattice(2048, 409.6);
  PacketSpec spec;
  spec.k0 = 0.75;
  spec.sigma_x = 10.0;
  spec.content = PacketContent::mixed(1.0, 1.0);
  // dephase so <T> picks up curvature from the interference terms
  const SpinorField f = evolve(gaussian_packet(lat, spec, alg), std::numbers::pi / 10.0, alg);
  const TimeOperatorParams params{1.0};
  const double e1 = ehrenfest_check(f, params, alg, 1e-3).abs_diff;
  const double e2 = ehrenfest_check(f, params, alg, 5e-4).abs_diff;
  CHECK(e1 / e2 > 3.5);
  CHECK(e1 / e2 < 4.5);
  CHECK_THROWS_AS(ehrenfest_check(f, params, alg, 2e-3), std::invalid_argument);
}

TEST_CASE("clock report matches the single-momentum expectations") {
  const Lattice lat = make_lattice(2048, 409.6);
  const DiracAlgebra alg = DiracAlgebra::make(1.0);
  PacketSpec spec;
  spec.x0 = -12.0;
  spec.k0 = 0.75;
  spec.sigma_x = 10.0;
  const TimeSeries series = run(lat, spec, alg, 40.0, 201, 1.0);
  const ClockReport rep = clock_report(series, 0.75, alg);

  CHECK(rep.beta2_expected == Approx(0.36).epsilon(1e-12));
  CHECK(rep.v_ph_expected == Approx(5.0 / 3.0).epsilon(1e-12));
  CHECK(rep.clock_rate_expected == Approx(0.8).epsilon(1e-12));

  CHECK(std::abs(rep.slope_T / 0.36 - 1.0) < 1e-2);
  CHECK(std::abs(rep.ratio_x_over_T / (5.0 / 3.0) - 1.0) < 1e-2);
  CHECK(std::abs(-rep.phase_rate / 0.8 - 1.0) < 5e-3);

  // the fitted T slope tracks <beta_gp^2> of the initial spectral density
  const SpinorField f0 = gaussian_packet(lat, spec, alg);
  Eigen::VectorXcd up_hat = detail::fft(f0.upper);
  Eigen::VectorXcd low_hat = detail::fft(f0.lower);
  double num = 0.0, den = 0.0;
  for (int j = 0; j < lat.n; ++j) {
    const double w = std::norm(up_hat[j]) + std::norm(low_hat[j]);
    const double b = lat.k_modes[j] / energy_of(lat.k_modes[j], 1.0);
    num += w * b * b;
    den += w;
  }
  CHECK(std::abs(rep.slope_T / (num / den) - 1.0) < 1e-2);

  // chain rule between the three fits
  CHECK(std::abs(rep.ratio_x_over_T * rep.slope_T / rep.x_slope - 1.0) < 1e-6);
  // product law: group times phase velocity is c^2
  CHECK(std::abs(rep.x_slope * rep.ratio_x_over_T - 1.0) < 2e-2);
}

TEST_CASE("clock slope collapses to the width floor at rest") {
  const Lattice lat = make_lattice(2048, 409.6);
  const DiracAlgebra alg = DiracAlgebra::make(1.0);
  PacketSpec spec;
  spec.sigma_x = 10.0;  // sigma_k^2 = 1/(4 sigma_x^2) = 2.5e-3
  const TimeSeries series = run(lat, spec, alg, 40.0, 64, 1.0);
  const ClockReport rep = clock_report(series, 0.0, alg);
  CHECK(std::abs(rep.slope_T) < 3e-3);
  CHECK(rep.slope_T == Approx(2.4784e-3).epsilon(5e-2));  // spectral <beta^2> of this width
  // T starts at tau0 <beta> (about 1 at rest) and creeps only at the width floor
  const double T0 = series.records.front().T_mean;
  CHECK(T0 == Approx(series.records.front().beta_mean).epsilon(1e-10));
  for (const auto& r : series.records) REQUIRE(std::abs(r.T_mean - T0) < 0.12);
}

TEST_CASE("clock report rejects unusable series") {
  const Lattice lat = make_lattice(2048, 409.6);
  const DiracAlgebra alg = DiracAlgebra::make(1.0);
  PacketSpec spec;
  spec.k0 = 0.75;
  spec.sigma_x = 10.0;
  const TimeSeries short_series = run(lat, spec, alg, 1.0, 8, 1.0);
  CHECK_THROWS_AS(clock_report(short_series, 0.75, alg), std::invalid_argument);

  TimeSeries tainted = run(lat, spec, alg, 1.0, 16, 1.0);
  tainted.records[3].containment_warning = true;
  CHECK_THROWS_AS(clock_report(tainted, 0.75, alg), std::invalid_argument);
}

TEST_CASE("expect_T refuses a leaking state") {
  const Lattice lat = make_lattice(256, 64.0);
  const DiracAlgebra alg = DiracAlgebra::make(1.0);
  SpinorField f;
  f.lattice = lat;
  f.upper.resize(lat.n);
  f.lower = Eigen::VectorXcd::Zero(lat.n);
  for (int j = 0; j < lat.n; ++j) {
    const double d = lat.x[j] - 0.45 * lat.length;  // mass parked outside the central half
    f.upper[j] = std::exp(-d * d / 18.0);
  }
  const double nrm = std::sqrt(f.norm());
  f.upper /= nrm;
  CHECK_THROWS_WITH(expect_T(f, TimeOperatorParams{1.0}, alg), Catch::Matchers::ContainsSubstring("containment violation"));
}
