#pragma once

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

#include "dbclock/observables.hpp"

namespace dbclock::io {

/// Shortest "%.*g" rendering at the given significant digits.
inline std::string format_sig(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

/// Round to the given number of significant decimal digits.
inline double round_sig(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, value);
  return std::strtod(buf, nullptr);
}

/// Time-series CSV: fixed header, '.' decimals, LF line endings.
inline void write_timeseries_csv(std::ostream& out, const dirac::TimeSeries& series, int precision) {
  out << "t,norm,x_mean,p_mean,alpha_mean,beta_mean,E_mean,T_mean,phase_central\n";
  for (const auto& r : series.records) {
    out << format_sig(r.t, precision) << ',' << format_sig(r.norm, precision) << ','
        << format_sig(r.x_mean, precision) << ',' << format_sig(r.p_mean, precision) << ','
        << format_sig(r.alpha_mean, precision) << ',' << format_sig(r.beta_mean, precision) << ','
        << format_sig(r.E_mean, precision) << ',' << format_sig(r.T_mean, precision) << ','
        << format_sig(r.phase_central, precision) << '\n';
  }
}

}  // namespace dbclock::io
