#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "dbclock/units.hpp"

namespace dbclock::kinematics {

/// Closed-form relativistic quantities for one (pc, mc^2) pair.
///
/// beta_ph is empty at pc = 0, where the phase velocity E/p diverges;
/// an explicit flag keeps serialization unambiguous.
struct KinematicsRecord {
  double pc;        ///< MeV
  double mc2;       ///< MeV
  double E;         ///< MeV, sqrt(pc^2 + mc2^2)
  double gamma;     ///< E / mc2
  double beta_gp;   ///< v_gp / c = pc / E
  std::optional<double> beta_ph;  ///< v_ph / c = E / pc, empty when infinite
  double nu_dB;     ///< Hz, mc2 / h
  double omega_zb;  ///< rad/s, 2 mc2 / hbar
  double t_dB;      ///< s, h / mc2
};

inline double gamma_of_beta(double beta) {
  if (!(beta >= 0.0) || beta >= 1.0) throw std::invalid_argument("unphysical speed");
  // (1 - beta^2) written as a product to keep digits at beta close to 1
  return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

inline KinematicsRecord kinematics_of(double pc, double mc2) {
  if (!std::isfinite(mc2) || mc2 <= 0.0) throw std::invalid_argument("nonpositive rest energy");
  if (!std::isfinite(pc) || pc < 0.0) throw std::invalid_argument("momentum must be finite and >= 0");
  const units::PhysicalConstants k = units::constants();
  const double h = 2.0 * std::numbers::pi * k.hbar;  // MeV s

  KinematicsRecord r{};
  r.pc = pc;
  r.mc2 = mc2;
  r.E = std::hypot(pc, mc2);
  r.gamma = r.E / mc2;
  r.beta_gp = pc / r.E;
  if (pc > 0.0) r.beta_ph = r.E / pc;
  r.nu_dB = mc2 / h;
  r.omega_zb = 2.0 * mc2 / k.hbar;
  r.t_dB = h / mc2;
  return r;
}

}  // namespace dbclock::kinematics
