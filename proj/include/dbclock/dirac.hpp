#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "dbclock/lattice.hpp"

namespace dbclock::dirac {

using Complex = std::complex<double>;

/// 1+1 dimensional Dirac algebra on two-component spinors:
/// alpha is the first Pauli matrix, beta the third, H(k) = k alpha + mc2 beta.
/// Natural units hbar = c = 1 throughout the engine.
struct DiracAlgebra {
  Eigen::Matrix2cd alpha;
  Eigen::Matrix2cd beta;
  double mc2 = 1.0;

  static DiracAlgebra make(double mc2 = 1.0) {
    if (!(mc2 > 0.0)) throw std::invalid_argument("nonpositive rest energy");
    DiracAlgebra a;
    a.alpha << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
    a.beta << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
    a.mc2 = mc2;
    return a;
  }
};

inline double energy_of(double k, double mc2) { return std::hypot(k, mc2); }

/// Free Dirac energy projector (I +- H(k)/E(k)) / 2.
inline Eigen::Matrix2cd energy_projector(double k, double mc2, int sign) {
  const double e = energy_of(k, mc2);
  Eigen::Matrix2cd p;
  const double s = sign >= 0 ? 1.0 : -1.0;
  p << Complex(0.5 * (1.0 + s * mc2 / e), 0), Complex(0.5 * s * k / e, 0),
       Complex(0.5 * s * k / e, 0), Complex(0.5 * (1.0 - s * mc2 / e), 0);
  return p;
}

struct PacketContent {
  enum class Kind { Positive, Negative, Mixed, Raw };
  Kind kind = Kind::Positive;
  double w_plus = 1.0;   // Mixed only
  double w_minus = 1.0;  // Mixed only
  Complex raw_upper{1.0, 0.0};  // Raw only
  Complex raw_lower{0.0, 0.0};  // Raw only

  static PacketContent positive() { return {}; }
  static PacketContent negative() { return {Kind::Negative}; }
  static PacketContent mixed(double wp, double wm) { return {Kind::Mixed, wp, wm}; }
  static PacketContent raw(Complex up, Complex low) { return {Kind::Raw, 1.0, 1.0, up, low}; }
};

struct PacketSpec {
  double x0 = 0.0;
  double k0 = 0.0;
  double sigma_x = 1.0;  ///< width of the |psi|^2 Gaussian
  PacketContent content;
};

/// Two-component state on the lattice. Normalized so that
/// sum_j (|upper_j|^2 + |lower_j|^2) dx = 1.
struct SpinorField {
  Lattice lattice;
  Eigen::VectorXcd upper;
  Eigen::VectorXcd lower;

  double norm() const {
    return (upper.squaredNorm() + lower.squaredNorm()) * lattice.dx;
  }
};

namespace detail {

inline Eigen::VectorXcd fft(const Eigen::VectorXcd& v) {
  Eigen::FFT<double> plan;
  Eigen::VectorXcd out(v.size());
  plan.fwd(out, v);
  return out;
}

inline Eigen::VectorXcd ifft(const Eigen::VectorXcd& v) {
  Eigen::FFT<double> plan;
  Eigen::VectorXcd out(v.size());
  plan.inv(out, v);
  return out;
}

/// Exact propagator applied to momentum-space components:
/// U(t) = cos(Et) I - i sin(Et) H(k)/E per mode.
inline void propagate_spectrum(Eigen::VectorXcd& up_hat, Eigen::VectorXcd& low_hat,
                               const Lattice& lat, double mc2, double t) {
  const Complex imag_unit(0.0, 1.0);
  for (int j = 0; j < lat.n; ++j) {
    const double k = lat.k_modes[j];
    const double e = energy_of(k, mc2);
    const double c = std::cos(e * t);
    const double s = std::sin(e * t);
    const Complex u = up_hat[j];
    const Complex l = low_hat[j];
    up_hat[j] = (c - imag_unit * s * (mc2 / e)) * u - imag_unit * s * (k / e) * l;
    low_hat[j] = -imag_unit * s * (k / e) * u + (c + imag_unit * s * (mc2 / e)) * l;
  }
}

inline void project_spectrum(Eigen::VectorXcd& up_hat, Eigen::VectorXcd& low_hat,
                             const Lattice& lat, double mc2, int sign) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  for (int j = 0; j < lat.n; ++j) {
    const double k = lat.k_modes[j];
    const double e = energy_of(k, mc2);
    const Complex u = up_hat[j];
    const Complex l = low_hat[j];
    up_hat[j] = 0.5 * (1.0 + s * mc2 / e) * u + 0.5 * s * (k / e) * l;
    low_hat[j] = 0.5 * s * (k / e) * u + 0.5 * (1.0 - s * mc2 / e) * l;
  }
}

inline double tail_mass_outside_central_half(const SpinorField& f) {
  double out = 0.0;
  const double quarter = f.lattice.length / 4.0;
  for (int j = 0; j < f.lattice.n; ++j) {
    if (std::abs(f.lattice.x[j]) > quarter)
      out += std::norm(f.upper[j]) + std::norm(f.lower[j]);
  }
  return out * f.lattice.dx;
}

}  // namespace detail

inline void validate_packet_spec(const Lattice& lat, const PacketSpec& spec) {
  if (!(spec.sigma_x >= 4.0 * lat.dx))
    throw std::invalid_argument("packet sigma_x must be at least 4*dx");
  if (!(std::abs(spec.k0) <= 0.25 * std::numbers::pi / lat.dx))
    throw std::invalid_argument("packet k0 exceeds the anti-aliasing bound 0.25*pi/dx");
}

/// Gaussian wave packet, optionally projected onto a single energy sign.
///
/// The envelope exp(-(x-x0)^2/(4 sigma_x^2)) exp(i k0 x) seeds the upper
/// component for positive content and the lower component for negative
/// content; each momentum mode is then projected with (I +- H/E)/2. Mixed
/// content combines the two normalized projections with the given weights
/// (the two parts are orthogonal mode by mode). Raw content keeps the given
/// constant spinor with no projection. The result is normalized to 1.
inline SpinorField gaussian_packet(const Lattice& lat, const PacketSpec& spec,
                                   const DiracAlgebra& algebra) {
  validate_packet_spec(lat, spec);

  Eigen::VectorXcd envelope(lat.n);
  for (int j = 0; j < lat.n; ++j) {
    const double dxj = lat.x[j] - spec.x0;
    envelope[j] = std::polar(std::exp(-dxj * dxj / (4.0 * spec.sigma_x * spec.sigma_x)),
                             spec.k0 * lat.x[j]);
  }

  SpinorField f;
  f.lattice = lat;
  const auto& content = spec.content;
  using Kind = PacketContent::Kind;

  if (content.kind == Kind::Raw) {
    f.upper = envelope * content.raw_upper;
    f.lower = envelope * content.raw_lower;
  } else {
    Eigen::VectorXcd up_plus = detail::fft(envelope);
    Eigen::VectorXcd low_plus = Eigen::VectorXcd::Zero(lat.n);
    detail::project_spectrum(up_plus, low_plus, lat, algebra.mc2, +1);

    if (content.kind == Kind::Positive) {
      f.upper = detail::ifft(up_plus);
      f.lower = detail::ifft(low_plus);
    } else {
      Eigen::VectorXcd up_minus = Eigen::VectorXcd::Zero(lat.n);
      Eigen::VectorXcd low_minus = detail::fft(envelope);
      detail::project_spectrum(up_minus, low_minus, lat, algebra.mc2, -1);
      if (content.kind == Kind::Negative) {
        f.upper = detail::ifft(up_minus);
        f.lower = detail::ifft(low_minus);
      } else {
        const double np = std::sqrt(up_plus.squaredNorm() + low_plus.squaredNorm());
        const double nm = std::sqrt(up_minus.squaredNorm() + low_minus.squaredNorm());
        if (np == 0.0 || nm == 0.0) throw std::runtime_error("empty projection");
        f.upper = detail::ifft(Eigen::VectorXcd(content.w_plus / np * up_plus + content.w_minus / nm * up_minus));
        f.lower = detail::ifft(Eigen::VectorXcd(content.w_plus / np * low_plus + content.w_minus / nm * low_minus));
      }
    }
  }

  const double nrm = std::sqrt(f.norm());
  if (!(nrm > 1e-12)) throw std::runtime_error("empty projection");
  f.upper /= nrm;
  f.lower /= nrm;

  if (detail::tail_mass_outside_central_half(f) >= 1e-9)
    throw std::invalid_argument("packet not contained in the central half of the box");
  return f;
}

/// Exact unitary evolution by laboratory time t (any sign).
inline SpinorField evolve(const SpinorField& field, double t, const DiracAlgebra& algebra) {
  SpinorField out;
  out.lattice = field.lattice;
  Eigen::VectorXcd up_hat = detail::fft(field.upper);
  Eigen::VectorXcd low_hat = detail::fft(field.lower);
  detail::propagate_spectrum(up_hat, low_hat, field.lattice, algebra.mc2, t);
  out.upper = detail::ifft(up_hat);
  out.lower = detail::ifft(low_hat);
  return out;
}

}  // namespace dbclock::dirac
