#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dbclock/units.hpp"

namespace dbclock::resonance {

/// One atomic string traversed by a channeled electron.
struct ChannelingSetup {
  double d_fm;     ///< interatomic spacing along the string, fm
  double mc2_mev;  ///< rest energy (bare or effective), MeV
  int n;           ///< phase-shift harmonic, delta_phi = n*pi
};

inline void validate(const ChannelingSetup& s) {
  if (!(s.d_fm > 0.0) || !std::isfinite(s.d_fm)) throw std::invalid_argument("spacing d must be positive");
  if (!(s.mc2_mev > 0.0) || !std::isfinite(s.mc2_mev)) throw std::invalid_argument("nonpositive rest energy");
  if (s.n < 1) throw std::invalid_argument("harmonic must be >= 1");
}

struct ResonancePrediction {
  int n;
  double beta_ph_res;    ///< required phase velocity over c
  double pc_res_mev;     ///< resonance momentum, MeV/c
  double delta_T_npi_s;  ///< internal time lapse per crossing, s
  double delta_phi_rad;  ///< n*pi by construction
  double gamma_alt;      ///< Lorentz factor of the time-dilation reading; numerically beta_ph_res
};

struct EffectiveMassResult {
  double ratio_sq;   ///< (m*/m0)^2
  double ratio;      ///< m*/m0
  double m_eff_mc2;  ///< MeV
};

/// Resonance condition for harmonic n: the internal phase advances by n*pi
/// per atomic crossing.
///
/// The required phase velocity is (v_ph)/c = (2/n) d mc^2 / (h c), and the
/// momentum follows from the small-gamma correspondence pc = mc^2 (v_ph/c);
/// the same velocity also equals the spacing d times the intrinsic frequency
/// mc^2/h for n = 2 (or d/2 times its doubled, Zitterbewegung-like rate).
inline ResonancePrediction predict(const ChannelingSetup& setup) {
  validate(setup);
  const units::PhysicalConstants k = units::constants();
  const double two_pi = 2.0 * std::numbers::pi;

  ResonancePrediction out{};
  out.n = setup.n;
  out.beta_ph_res = (2.0 / setup.n) * setup.d_fm * setup.mc2_mev / (two_pi * k.hbar_c);
  out.pc_res_mev = setup.mc2_mev * out.beta_ph_res;
  out.delta_T_npi_s = 0.5 * setup.n * (two_pi * k.hbar / setup.mc2_mev);
  out.delta_phi_rad = setup.n * std::numbers::pi;
  out.gamma_alt = out.beta_ph_res;
  return out;
}

/// Internal time lapse and phase shift accumulated while a fixed phase point
/// crosses one interatomic spacing d at momentum pc.
///
/// Uses the same momentum <-> phase-velocity correspondence as predict(),
/// v_ph/c = pc/mc^2, so the returned phase is exactly n*pi at the n-th
/// resonance momentum. Returns (delta_T seconds, delta_phi radians).
inline std::pair<double, double> system_phase_shift(double d_fm, double pc_mev, double mc2_mev) {
  if (!(d_fm > 0.0)) throw std::invalid_argument("spacing d must be positive");
  if (!(mc2_mev > 0.0)) throw std::invalid_argument("nonpositive rest energy");
  if (!(pc_mev > 0.0)) throw std::invalid_argument("phase velocity undefined");
  const units::PhysicalConstants k = units::constants();
  const double v_ph = (pc_mev / mc2_mev) * k.c;   // fm/s
  const double delta_T = d_fm / v_ph;             // s
  const double delta_phi = delta_T * mc2_mev / k.hbar;
  return {delta_T, delta_phi};
}

/// Effective-mass fit from an observed resonance momentum:
/// (m*/m0)^2 = pc_observed / pc_predicted.
inline EffectiveMassResult effective_mass(double pc_observed_mev, const ChannelingSetup& setup) {
  if (!(pc_observed_mev > 0.0)) throw std::invalid_argument("observed momentum must be positive");
  const double pc_res = predict(setup).pc_res_mev;
  EffectiveMassResult r{};
  r.ratio_sq = pc_observed_mev / pc_res;
  r.ratio = std::sqrt(r.ratio_sq);
  r.m_eff_mc2 = r.ratio * setup.mc2_mev;
  return r;
}

/// Consistency route for predict(): read the same setup as "the lab crossing
/// rate c/d matches the time-dilated intrinsic rate (mc^2/h)/gamma with a
/// phase advance of n*pi per crossing". Then gamma = (2/n) d mc^2/(h c) and
/// pc = mc^2 sqrt(gamma^2 - 1), which agrees with predict() to O(1/gamma^2).
inline double predict_via_time_dilation(const ChannelingSetup& setup) {
  validate(setup);
  const units::PhysicalConstants k = units::constants();
  const double gamma = (2.0 / setup.n) * setup.d_fm * setup.mc2_mev / (2.0 * std::numbers::pi * k.hbar_c);
  if (!(gamma > 1.05)) throw std::invalid_argument("setup outside relativistic regime");
  return setup.mc2_mev * std::sqrt((gamma - 1.0) * (gamma + 1.0));
}

struct ScanRow {
  double pc;         ///< MeV/c
  double delta_phi;  ///< rad
  double mismatch;   ///< distance of delta_phi from the nearest multiple of pi, rad
};

/// Uniform momentum scan of the per-crossing phase shift. Local minima of
/// the mismatch locate the resonance momenta.
inline std::vector<ScanRow> mismatch_scan(double pc_lo, double pc_hi, int steps,
                                          double d_fm, double mc2_mev) {
  if (!(pc_lo > 0.0) || !(pc_hi > pc_lo)) throw std::invalid_argument("invalid momentum range");
  if (steps < 2) throw std::invalid_argument("steps must be >= 2");
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double pc = pc_lo + (pc_hi - pc_lo) * static_cast<double>(i) / (steps - 1);
    const double phi = system_phase_shift(d_fm, pc, mc2_mev).second;
    // nearest k >= 1 and its neighbours bound the minimum of |phi - k*pi|
    const long k_near = std::max(1L, std::lround(phi / std::numbers::pi));
    double mismatch = std::abs(phi - static_cast<double>(k_near) * std::numbers::pi);
    for (long k : {k_near - 1, k_near + 1}) {
      if (k >= 1) mismatch = std::min(mismatch, std::abs(phi - static_cast<double>(k) * std::numbers::pi));
    }
    rows.push_back(ScanRow{pc, phi, mismatch});
  }
  return rows;
}

}  // namespace dbclock::resonance
