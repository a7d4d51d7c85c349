#pragma once

#include <numbers>
#include <stdexcept>
#include <vector>

namespace dbclock::dirac {

/// Periodic 1D grid. Positions run over [-L/2, L/2); wavenumbers follow the
/// DFT layout (non-negative first, then negative), k in (-pi/dx, pi/dx].
struct Lattice {
  int n = 0;
  double length = 0.0;
  double dx = 0.0;
  std::vector<double> k_modes;
  std::vector<double> x;
};

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline Lattice make_lattice(int n, double length) {
  if (n < 16 || !is_power_of_two(n)) throw std::invalid_argument("lattice size must be a power of two >= 16");
  if (!(length > 0.0)) throw std::invalid_argument("box length must be positive");
  Lattice lat;
  lat.n = n;
  lat.length = length;
  lat.dx = length / n;
  lat.k_modes.resize(n);
  lat.x.resize(n);
  const double dk = 2.0 * std::numbers::pi / length;
  for (int j = 0; j < n; ++j) {
    lat.k_modes[j] = dk * (j < n / 2 ? j : j - n);
    lat.x[j] = (j - n / 2) * lat.dx;
  }
  return lat;
}

}  // namespace dbclock::dirac
