#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "dbclock/analysis.hpp"
#include "dbclock/observables.hpp"

namespace dbclock::time_operator {

using dirac::Complex;
using dirac::DiracAlgebra;
using dirac::SpinorField;
using dirac::TimeSeries;

/// Parameters of the internal time observable T = alpha x + tau0 beta
/// (natural units, c = 1). tau0 defaults to 1/mc2, one reduced intrinsic
/// period; the choice does not affect any slope since <beta> is conserved
/// for free single-sign packets.
struct TimeOperatorParams {
  double tau0 = 1.0;

  static TimeOperatorParams for_mass(double mc2) { return TimeOperatorParams{1.0 / mc2}; }
};

/// <T> = <alpha x> + tau0 <beta>, positions taken in the fundamental domain
/// centered on the packet. Fails on packets leaking out of the analysis
/// window, where the ring position is ambiguous.
inline double expect_T(const SpinorField& field, const TimeOperatorParams& params,
                       const DiracAlgebra& algebra) {
  const dirac::ObservableRecord rec = dirac::observables(field, algebra, params.tau0);
  if (rec.containment_warning) throw std::runtime_error("containment violation");
  return rec.T_mean;
}

/// Apply T to a state. `center` fixes the fundamental domain used for the
/// position factor; by default the packet centroid is used. Tests probing
/// operator symmetry should pass a common explicit center.
inline SpinorField apply_T(const SpinorField& field, const TimeOperatorParams& params,
                           std::optional<double> center = std::nullopt) {
  const dirac::Lattice& lat = field.lattice;
  const double xc = center ? *center : dirac::detail::circular_centroid(field);
  SpinorField out;
  out.lattice = lat;
  out.upper.resize(lat.n);
  out.lower.resize(lat.n);
  for (int j = 0; j < lat.n; ++j) {
    const double xs = xc + dirac::detail::wrap_to_half_box(lat.x[j] - xc, lat.length);
    // alpha swaps components, beta flips the lower sign
    out.upper[j] = xs * field.lower[j] + params.tau0 * field.upper[j];
    out.lower[j] = xs * field.upper[j] - params.tau0 * field.lower[j];
  }
  return out;
}

struct EhrenfestCheck {
  double lhs;       ///< central finite difference of <T>
  double rhs;       ///< <i[H, T]> by explicit operator application
  double abs_diff;
};

/// Consistency of d<T>/dt with the commutator expectation. H is applied
/// spectrally, T pointwise around the packet centroid.
inline EhrenfestCheck ehrenfest_check(const SpinorField& field, const TimeOperatorParams& params,
                                      const DiracAlgebra& algebra, double dt_fd) {
  if (!(dt_fd > 0.0) || dt_fd > 1e-3)
    throw std::invalid_argument("finite-difference step must be in (0, 1e-3]");

  const SpinorField fwd = dirac::evolve(field, dt_fd, algebra);
  const SpinorField bwd = dirac::evolve(field, -dt_fd, algebra);
  const double lhs = (expect_T(fwd, params, algebra) - expect_T(bwd, params, algebra)) / (2.0 * dt_fd);

  // H psi in momentum space
  const dirac::Lattice& lat = field.lattice;
  Eigen::VectorXcd up_hat = dirac::detail::fft(field.upper);
  Eigen::VectorXcd low_hat = dirac::detail::fft(field.lower);
  for (int j = 0; j < lat.n; ++j) {
    const double k = lat.k_modes[j];
    const Complex u = up_hat[j], l = low_hat[j];
    up_hat[j] = algebra.mc2 * u + k * l;
    low_hat[j] = k * u - algebra.mc2 * l;
  }
  SpinorField h_psi;
  h_psi.lattice = lat;
  h_psi.upper = dirac::detail::ifft(up_hat);
  h_psi.lower = dirac::detail::ifft(low_hat);

  const double xc = dirac::detail::circular_centroid(field);
  const SpinorField t_psi = apply_T(field, params, xc);

  // <i[H,T]> = i(<H psi|T psi> - <T psi|H psi>) = -2 Im <H psi|T psi>
  Complex z(0.0, 0.0);
  for (int j = 0; j < lat.n; ++j)
    z += std::conj(h_psi.upper[j]) * t_psi.upper[j] + std::conj(h_psi.lower[j]) * t_psi.lower[j];
  const double rhs = -2.0 * std::imag(z) * lat.dx;

  return EhrenfestCheck{lhs, rhs, std::abs(lhs - rhs)};
}

/// Fitted clock rates of one positive-energy run against the closed-form
/// single-momentum expectations at k0.
struct ClockReport {
  double slope_T;              ///< fitted d<T>/dt
  double beta2_expected;       ///< (k0/E)^2
  double ratio_x_over_T;       ///< fitted d<x>/d<T>
  double v_ph_expected;        ///< E/k0
  double phase_rate;           ///< fitted d(phase_central)/dt
  double clock_rate_expected;  ///< mc2/gamma = mc2^2/E
  double x_slope;              ///< fitted d<x>/dt
  double slope_T_rms;
  double ratio_rms;
  double phase_rms;
};

inline ClockReport clock_report(const TimeSeries& series, double k0, const DiracAlgebra& algebra) {
  if (series.records.size() < 16 || series.containment_warnings() > 0)
    throw std::invalid_argument("invalid series for clock analysis");

  std::vector<double> t, x, T, phase;
  for (const auto& r : series.records) {
    t.push_back(r.t);
    x.push_back(r.x_mean);
    T.push_back(r.T_mean);
    phase.push_back(r.phase_central);
  }
  const analysis::FitResult fit_T = analysis::linear_fit_xy(t, T);
  const analysis::FitResult fit_x = analysis::linear_fit_xy(t, x);
  const analysis::FitResult fit_xT = analysis::linear_fit_xy(T, x);
  const analysis::FitResult fit_phase = analysis::linear_fit_xy(t, phase);

  const double e = dirac::energy_of(k0, algebra.mc2);
  ClockReport rep{};
  rep.slope_T = fit_T.slope;
  rep.beta2_expected = (k0 / e) * (k0 / e);
  rep.ratio_x_over_T = fit_xT.slope;
  rep.v_ph_expected = e / k0;
  rep.phase_rate = fit_phase.slope;
  rep.clock_rate_expected = algebra.mc2 * algebra.mc2 / e;
  rep.x_slope = fit_x.slope;
  rep.slope_T_rms = fit_T.rms_residual;
  rep.ratio_rms = fit_xT.rms_residual;
  rep.phase_rms = fit_phase.rms_residual;
  return rep;
}

}  // namespace dbclock::time_operator
