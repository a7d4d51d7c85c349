#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dbclock/analysis.hpp"
#include "dbclock/dirac.hpp"

namespace dbclock::dirac {

/// Expectation values of one state at one instant. Positions are reported in
/// the fundamental domain centered on the packet, so x_mean and T_mean stay
/// meaningful on the periodic box as long as the packet is contained.
struct ObservableRecord {
  double t = 0.0;
  double norm = 0.0;
  double x_mean = 0.0;
  double p_mean = 0.0;
  double alpha_mean = 0.0;
  double beta_mean = 0.0;
  double E_mean = 0.0;
  double T_mean = 0.0;          ///< <alpha x> + tau0 <beta>, natural time units
  double phase_central = 0.0;   ///< arg of the upper component at the grid point nearest the centroid
  bool containment_warning = false;
};

struct TimeSeries {
  std::vector<ObservableRecord> records;
  bool phase_aliasing = false;

  int containment_warnings() const {
    int c = 0;
    for (const auto& r : records) c += r.containment_warning ? 1 : 0;
    return c;
  }
};

namespace detail {

/// Probability centroid on the ring via the phase of the first circular
/// moment; well defined wherever the packet is localized.
inline double circular_centroid(const SpinorField& f) {
  const double two_pi_over_L = 2.0 * std::numbers::pi / f.lattice.length;
  Complex z(0.0, 0.0);
  for (int j = 0; j < f.lattice.n; ++j) {
    const double rho = std::norm(f.upper[j]) + std::norm(f.lower[j]);
    z += rho * std::polar(1.0, two_pi_over_L * f.lattice.x[j]);
  }
  return std::arg(z) / two_pi_over_L;
}

inline double wrap_to_half_box(double dx, double length) {
  return dx - length * std::floor(dx / length + 0.5);
}

}  // namespace detail

/// All expectation values of a normalized state.
inline ObservableRecord observables(const SpinorField& f, const DiracAlgebra& algebra, double tau0) {
  const Lattice& lat = f.lattice;
  ObservableRecord rec{};
  rec.norm = f.norm();

  const double xc = detail::circular_centroid(f);
  double x_sum = 0.0, alpha_sum = 0.0, beta_sum = 0.0, alpha_x_sum = 0.0;
  for (int j = 0; j < lat.n; ++j) {
    const double rho = std::norm(f.upper[j]) + std::norm(f.lower[j]);
    const double xs = xc + detail::wrap_to_half_box(lat.x[j] - xc, lat.length);
    const double alpha_dens = 2.0 * std::real(std::conj(f.upper[j]) * f.lower[j]);
    x_sum += rho * xs;
    alpha_sum += alpha_dens;
    beta_sum += std::norm(f.upper[j]) - std::norm(f.lower[j]);
    alpha_x_sum += alpha_dens * xs;
  }
  const double dx = lat.dx;
  rec.x_mean = x_sum * dx / rec.norm;
  rec.alpha_mean = alpha_sum * dx / rec.norm;
  rec.beta_mean = beta_sum * dx / rec.norm;
  rec.T_mean = (alpha_x_sum * dx + tau0 * beta_sum * dx) / rec.norm;

  // momentum-space expectations; spectral weights |c|^2 dx / N sum to the norm
  Eigen::VectorXcd up_hat = detail::fft(f.upper);
  Eigen::VectorXcd low_hat = detail::fft(f.lower);
  const double spec_w = dx / lat.n;
  double p_sum = 0.0, e_sum = 0.0;
  for (int j = 0; j < lat.n; ++j) {
    const double k = lat.k_modes[j];
    const double w = std::norm(up_hat[j]) + std::norm(low_hat[j]);
    p_sum += k * w;
    // <H> per mode: psi^dag (k alpha + m beta) psi
    e_sum += algebra.mc2 * (std::norm(up_hat[j]) - std::norm(low_hat[j])) +
             2.0 * k * std::real(std::conj(up_hat[j]) * low_hat[j]);
  }
  rec.p_mean = p_sum * spec_w / rec.norm;
  rec.E_mean = e_sum * spec_w / rec.norm;

  const long idx0 = std::lround((rec.x_mean - lat.x[0]) / dx);
  const int idx = static_cast<int>(((idx0 % lat.n) + lat.n) % lat.n);
  rec.phase_central = std::arg(f.upper[idx]);

  rec.containment_warning = detail::tail_mass_outside_central_half(f) > 1e-9;
  return rec;
}

/// Record n_records states, equally spaced from t = 0 to t_final, each evolved
/// exactly from the initial state. x_mean and phase_central are unwrapped
/// across records.
inline TimeSeries run(const Lattice& lat, const PacketSpec& spec, const DiracAlgebra& algebra,
                      double t_final, int n_records, double tau0) {
  if (!(t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
  if (n_records < 2) throw std::invalid_argument("n_records must be >= 2");

  const SpinorField initial = gaussian_packet(lat, spec, algebra);
  const Eigen::VectorXcd up_hat0 = detail::fft(initial.upper);
  const Eigen::VectorXcd low_hat0 = detail::fft(initial.lower);

  TimeSeries series;
  series.records.reserve(static_cast<std::size_t>(n_records));
  std::vector<double> raw_phase(static_cast<std::size_t>(n_records));

  SpinorField f;
  f.lattice = lat;
  for (int i = 0; i < n_records; ++i) {
    const double t = t_final * static_cast<double>(i) / (n_records - 1);
    Eigen::VectorXcd up_hat = up_hat0;
    Eigen::VectorXcd low_hat = low_hat0;
    detail::propagate_spectrum(up_hat, low_hat, lat, algebra.mc2, t);
    f.upper = detail::ifft(up_hat);
    f.lower = detail::ifft(low_hat);
    ObservableRecord rec = observables(f, algebra, tau0);
    rec.t = t;
    raw_phase[static_cast<std::size_t>(i)] = rec.phase_central;
    series.records.push_back(rec);
  }

  // unwrap x_mean by box periods and phase_central by 2*pi
  for (std::size_t i = 1; i < series.records.size(); ++i) {
    double& x = series.records[i].x_mean;
    const double prev = series.records[i - 1].x_mean;
    x += lat.length * std::round((prev - x) / lat.length);
  }
  const analysis::UnwrappedPhase uw = analysis::unwrap_phase_flagged(raw_phase);
  series.phase_aliasing = uw.aliasing_flag;
  for (std::size_t i = 0; i < series.records.size(); ++i)
    series.records[i].phase_central = uw.values[i];

  if (series.containment_warnings() * 10 > n_records)
    throw std::runtime_error("packet escaped analysis window");
  return series;
}

struct DisplacementCheck {
  double measured_shift;
  double predicted_shift;
  double second_order_bound;  ///< |measured - predicted|
};

/// Short-time displacement against the instantaneous velocity expectation:
/// the centroid shift over tau is tau <alpha> up to O(tau^2).
inline DisplacementCheck displacement_check(const SpinorField& field, double tau,
                                            const DiracAlgebra& algebra) {
  const ObservableRecord before = observables(field, algebra, 0.0);
  // packet width from the second moment bounds the useful tau
  double x2 = 0.0;
  for (int j = 0; j < field.lattice.n; ++j) {
    const double rho = std::norm(field.upper[j]) + std::norm(field.lower[j]);
    const double xs = field.lattice.x[j] - before.x_mean;
    x2 += rho * xs * xs;
  }
  const double sigma = std::sqrt(x2 * field.lattice.dx / before.norm);
  if (std::abs(tau) > sigma / 10.0)
    throw std::invalid_argument("tau too large for displacement check (must be <= width/10)");

  const ObservableRecord after = observables(evolve(field, tau, algebra), algebra, 0.0);
  DisplacementCheck out{};
  out.measured_shift = after.x_mean - before.x_mean;
  out.predicted_shift = tau * before.alpha_mean;
  out.second_order_bound = std::abs(out.measured_shift - out.predicted_shift);
  return out;
}

}  // namespace dbclock::dirac
