#pragma once

#include <cmath>
#include <stdexcept>

namespace dbclock::units {

/// Physical constants in HEP units (MeV, fm, s).
///
/// hbar is derived from hbar_c / c so the pair stays exactly consistent.
/// Planck's constant h is never stored; use 2*pi*hbar where needed.
struct PhysicalConstants {
  double hbar_c;                      ///< MeV fm
  double c;                           ///< fm / s
  double hbar;                        ///< MeV s
  double electron_rest_energy_paper;  ///< MeV, the rounded 0.511 used for published channeling digits
};

inline PhysicalConstants constants() {
  PhysicalConstants k{};
  k.hbar_c = 197.3269804;  // CODATA 2018
  k.c = 2.99792458e23;     // exact, fm/s
  k.hbar = k.hbar_c / k.c;
  k.electron_rest_energy_paper = 0.511;
  return k;
}

/// One consistent hbar = c = 1 unit system, anchored at an energy unit.
/// Invariants: time_unit = length_unit / c and energy_unit * time_unit = hbar.
struct UnitScale {
  double energy_unit;  ///< MeV per natural energy unit
  double length_unit;  ///< fm per natural length unit
  double time_unit;    ///< s per natural time unit
};

inline UnitScale scale_from_energy(double energy_unit_mev) {
  if (!(energy_unit_mev > 0.0) || !std::isfinite(energy_unit_mev))
    throw std::invalid_argument("energy unit must be positive and finite");
  const PhysicalConstants k = constants();
  return UnitScale{energy_unit_mev, k.hbar_c / energy_unit_mev, k.hbar / energy_unit_mev};
}

enum class Quantity { Energy, Length, Time };
enum class Direction { ToNatural, ToHep };

inline double convert(double value, Quantity q, Direction dir, const UnitScale& s) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  double unit = s.energy_unit;
  switch (q) {
    case Quantity::Energy: unit = s.energy_unit; break;
    case Quantity::Length: unit = s.length_unit; break;
    case Quantity::Time: unit = s.time_unit; break;
  }
  return dir == Direction::ToNatural ? value / unit : value * unit;
}

}  // namespace dbclock::units
