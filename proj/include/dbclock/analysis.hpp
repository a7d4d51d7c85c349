#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

namespace dbclock::analysis {

/// Uniformly sampled real series.
struct Series {
  std::vector<double> t;
  std::vector<double> y;
};

inline void validate(const Series& s) {
  if (s.t.size() != s.y.size()) throw std::invalid_argument("series length mismatch");
  if (s.t.size() < 4) throw std::invalid_argument("series must have at least 4 samples");
  const double dt = s.t[1] - s.t[0];
  if (!(dt > 0.0)) throw std::invalid_argument("series must be strictly increasing");
  for (std::size_t i = 1; i < s.t.size(); ++i) {
    const double step = s.t[i] - s.t[i - 1];
    if (std::abs(step - dt) > 1e-9 * std::max(std::abs(dt), 1.0))
      throw std::invalid_argument("series must be uniformly spaced");
  }
}

struct FitResult {
  double slope;
  double intercept;
  double rms_residual;
};

/// Ordinary least squares on arbitrary (x, y) pairs.
inline FitResult linear_fit_xy(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("fit needs >= 2 paired samples");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("degenerate fit: all abscissae equal");
  FitResult r{};
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = y[i] - (r.slope * x[i] + r.intercept);
    ss += d * d;
  }
  r.rms_residual = std::sqrt(ss / n);
  return r;
}

inline FitResult linear_fit(const Series& s) {
  validate(s);
  return linear_fit_xy(s.t, s.y);
}

struct FrequencyEstimate {
  double omega;       ///< rad per time unit
  double amplitude;
  double half_width;  ///< one-bin resolution, rad per time unit
};

/// Dominant oscillation frequency: linear detrend, Hann window, DFT, peak bin
/// excluding DC, parabolic refinement on log magnitudes.
inline FrequencyEstimate dominant_frequency(const Series& s) {
  validate(s);
  const int n = static_cast<int>(s.t.size());
  if (n < 16) throw std::invalid_argument("series too short for frequency estimation");
  const double dt = (s.t.back() - s.t.front()) / (n - 1);

  const FitResult trend = linear_fit(s);
  double y_scale = 1.0;
  for (double v : s.y) y_scale = std::max(y_scale, std::abs(v));
  if (trend.rms_residual < 1e-12 * y_scale)
    throw std::runtime_error("no dominant component");

  Eigen::VectorXcd windowed(n);
  double window_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
    window_sum += w;
    windowed[i] = w * (s.y[static_cast<std::size_t>(i)] - (trend.slope * s.t[static_cast<std::size_t>(i)] + trend.intercept));
  }

  Eigen::FFT<double> plan;
  Eigen::VectorXcd spectrum(n);
  plan.fwd(spectrum, windowed);

  const int half = n / 2;
  std::vector<double> mag(static_cast<std::size_t>(half));
  for (int b = 1; b <= half; ++b) mag[static_cast<std::size_t>(b - 1)] = std::abs(spectrum[b]);

  int peak = 1;
  for (int b = 2; b <= half; ++b)
    if (mag[static_cast<std::size_t>(b - 1)] > mag[static_cast<std::size_t>(peak - 1)]) peak = b;

  std::vector<double> sorted(mag);
  std::nth_element(sorted.begin(), sorted.begin() + half / 2, sorted.end());
  const double median = sorted[static_cast<std::size_t>(half / 2)];
  const double peak_mag = mag[static_cast<std::size_t>(peak - 1)];
  if (!(peak_mag > 0.0) || peak_mag < 10.0 * median)
    throw std::runtime_error("no dominant component");

  double delta = 0.0;
  if (peak > 1 && peak < half &&
      mag[static_cast<std::size_t>(peak - 2)] > 0.0 && mag[static_cast<std::size_t>(peak)] > 0.0) {
    const double la = std::log(mag[static_cast<std::size_t>(peak - 2)]);
    const double lb = std::log(peak_mag);
    const double lc = std::log(mag[static_cast<std::size_t>(peak)]);
    const double denom = la - 2.0 * lb + lc;
    if (denom != 0.0) delta = 0.5 * (la - lc) / denom;
  }

  FrequencyEstimate est{};
  est.omega = 2.0 * std::numbers::pi * (peak + delta) / (n * dt);
  est.amplitude = 2.0 * peak_mag / window_sum;
  est.half_width = 2.0 * std::numbers::pi / (n * dt);
  return est;
}

struct UnwrappedPhase {
  std::vector<double> values;
  bool aliasing_flag;  ///< set when any reduced step exceeds 0.9*pi
};

/// Add 2*pi multiples so successive differences lie in (-pi, pi].
/// Wrap-free input passes through bit for bit.
inline UnwrappedPhase unwrap_phase_flagged(const std::vector<double>& raw) {
  UnwrappedPhase out{raw, false};
  const double two_pi = 2.0 * std::numbers::pi;
  double correction = 0.0;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    const double d = raw[i] - raw[i - 1];
    const double wraps = std::round(d / two_pi);
    if (std::abs(d - two_pi * wraps) > 0.9 * std::numbers::pi) out.aliasing_flag = true;
    correction -= two_pi * wraps;
    out.values[i] = raw[i] + correction;
  }
  return out;
}

inline std::vector<double> unwrap_phase(const std::vector<double>& raw) {
  return unwrap_phase_flagged(raw).values;
}

}  // namespace dbclock::analysis
