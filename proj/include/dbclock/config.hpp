#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dbclock/dirac.hpp"

namespace dbclock::config {

/// One simulation run parsed from a flat INI file.
/// Sections: [lattice] N, L; [packet] x0, k0, sigma_x, content, w_plus,
/// w_minus, spinor_*; [engine] mc2, t_final, n_records, tau0;
/// [output] csv, precision. Unknown keys are rejected.
struct RunConfig {
  int lattice_n = 0;
  double lattice_length = 0.0;
  dirac::PacketSpec packet;
  double mc2 = 1.0;
  double t_final = 0.0;
  int n_records = 0;
  double tau0 = std::nan("");  // defaults to 1/mc2 when unset
  std::string csv_path;
  int precision = 12;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid number for " + key + ": '" + v + "'");
  }
  if (pos != v.size()) throw std::invalid_argument("invalid number for " + key + ": '" + v + "'");
  return out;
}

inline int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 1e9)
    throw std::invalid_argument("invalid integer for " + key + ": '" + v + "'");
  return static_cast<int>(d);
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument("malformed section header at line " + std::to_string(lineno));
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key = value at line " + std::to_string(lineno));
    const std::string key = section + "." + detail::trim(line.substr(0, eq));
    if (kv.count(key)) throw std::invalid_argument("duplicate key: " + key);
    kv[key] = detail::trim(line.substr(eq + 1));
  }

  auto take = [&kv](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) return "";
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto require = [&take](const std::string& key) {
    std::string v = take(key);
    if (v.empty()) throw std::invalid_argument("missing required key: " + key);
    return v;
  };

  RunConfig cfg;
  cfg.lattice_n = detail::to_int("lattice.N", require("lattice.N"));
  cfg.lattice_length = detail::to_double("lattice.L", require("lattice.L"));

  if (std::string v = take("packet.x0"); !v.empty()) cfg.packet.x0 = detail::to_double("packet.x0", v);
  if (std::string v = take("packet.k0"); !v.empty()) cfg.packet.k0 = detail::to_double("packet.k0", v);
  cfg.packet.sigma_x = detail::to_double("packet.sigma_x", require("packet.sigma_x"));

  const std::string content = take("packet.content");
  using Kind = dirac::PacketContent::Kind;
  if (content.empty() || content == "positive") {
    cfg.packet.content.kind = Kind::Positive;
  } else if (content == "negative") {
    cfg.packet.content.kind = Kind::Negative;
  } else if (content == "mixed") {
    cfg.packet.content.kind = Kind::Mixed;
  } else if (content == "raw") {
    cfg.packet.content.kind = Kind::Raw;
  } else {
    throw std::invalid_argument("packet.content must be positive|negative|mixed|raw");
  }
  if (std::string v = take("packet.w_plus"); !v.empty()) cfg.packet.content.w_plus = detail::to_double("packet.w_plus", v);
  if (std::string v = take("packet.w_minus"); !v.empty()) cfg.packet.content.w_minus = detail::to_double("packet.w_minus", v);
  {
    double ur = 1.0, ui = 0.0, lr = 0.0, li = 0.0;
    if (std::string v = take("packet.spinor_upper_re"); !v.empty()) ur = detail::to_double("packet.spinor_upper_re", v);
    if (std::string v = take("packet.spinor_upper_im"); !v.empty()) ui = detail::to_double("packet.spinor_upper_im", v);
    if (std::string v = take("packet.spinor_lower_re"); !v.empty()) lr = detail::to_double("packet.spinor_lower_re", v);
    if (std::string v = take("packet.spinor_lower_im"); !v.empty()) li = detail::to_double("packet.spinor_lower_im", v);
    cfg.packet.content.raw_upper = dirac::Complex(ur, ui);
    cfg.packet.content.raw_lower = dirac::Complex(lr, li);
  }

  if (std::string v = take("engine.mc2"); !v.empty()) cfg.mc2 = detail::to_double("engine.mc2", v);
  cfg.t_final = detail::to_double("engine.t_final", require("engine.t_final"));
  cfg.n_records = detail::to_int("engine.n_records", require("engine.n_records"));
  if (std::string v = take("engine.tau0"); !v.empty()) cfg.tau0 = detail::to_double("engine.tau0", v);

  cfg.csv_path = take("output.csv");
  if (std::string v = take("output.precision"); !v.empty()) cfg.precision = detail::to_int("output.precision", v);

  if (!kv.empty()) throw std::invalid_argument("unknown key: " + kv.begin()->first);

  // module preconditions, checked at parse time
  if (!dirac::is_power_of_two(cfg.lattice_n) || cfg.lattice_n < 16)
    throw std::invalid_argument("lattice.N must be a power of two >= 16");
  if (!(cfg.lattice_length > 0.0)) throw std::invalid_argument("lattice.L must be positive");
  const double dx = cfg.lattice_length / cfg.lattice_n;
  if (!(cfg.packet.sigma_x >= 4.0 * dx))
    throw std::invalid_argument("packet.sigma_x must be at least 4*dx");
  if (!(std::abs(cfg.packet.k0) <= 0.25 * std::numbers::pi / dx))
    throw std::invalid_argument("packet.k0 exceeds the anti-aliasing bound 0.25*pi/dx");
  if (!(cfg.mc2 > 0.0)) throw std::invalid_argument("engine.mc2 must be positive");
  if (!(cfg.t_final > 0.0)) throw std::invalid_argument("engine.t_final must be positive");
  if (cfg.n_records < 2) throw std::invalid_argument("engine.n_records must be >= 2");
  if (std::isnan(cfg.tau0)) cfg.tau0 = 1.0 / cfg.mc2;
  if (!(cfg.tau0 >= 0.0) || !std::isfinite(cfg.tau0))
    throw std::invalid_argument("engine.tau0 must be finite and >= 0");
  if (cfg.precision < 3 || cfg.precision > 17)
    throw std::invalid_argument("output.precision must be in [3, 17]");
  if (cfg.packet.content.kind == Kind::Mixed &&
      cfg.packet.content.w_plus == 0.0 && cfg.packet.content.w_minus == 0.0)
    throw std::invalid_argument("packet mixed weights must not both be zero");
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace dbclock::config
