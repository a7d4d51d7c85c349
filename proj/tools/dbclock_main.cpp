// Command-line front end: channeling resonance tables, Dirac wave-packet
// runs driven by INI configs, and clock-rate reports. CSV/JSON output is
// deterministic byte for byte.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dbclock/analysis.hpp"
#include "dbclock/config.hpp"
#include "dbclock/io.hpp"
#include "dbclock/kinematics.hpp"
#include "dbclock/observables.hpp"
#include "dbclock/resonance.hpp"
#include "dbclock/time_operator.hpp"
#include "dbclock/units.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace dbclock;

double j9(double v) { return io::round_sig(v, 9); }

// clock-report tolerances
constexpr double kSlopeTol = 1e-2;
constexpr double kRatioTol = 1e-2;
constexpr double kPhaseTol = 5e-3;
constexpr double kProductTol = 2e-2;

struct OutputSink {
  std::string path;

  void write(const std::string& content) const {
    if (path.empty()) {
      std::cout << content;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << content;
  }
};

int run_resonance(double d_fm, double mc2, const std::vector<int>& n_list,
                  double observed, bool has_observed, const std::string& format,
                  const OutputSink& sink, int precision) {
  if (n_list.empty()) throw std::invalid_argument("need at least one harmonic");
  std::vector<resonance::ResonancePrediction> rows;
  for (int n : n_list) rows.push_back(resonance::predict({d_fm, mc2, n}));

  int n_ref = rows.front().n;
  if (has_observed) {
    double best = -1.0;
    for (const auto& r : rows) {
      const double dist = std::abs(r.pc_res_mev - observed);
      if (best < 0.0 || dist < best) { best = dist; n_ref = r.n; }
    }
  }

  std::ostringstream out;
  if (format == "json") {
    json doc;
    doc["rows"] = json::array();
    for (const auto& r : rows) {
      doc["rows"].push_back({{"n", r.n},
                             {"beta_ph_res", j9(r.beta_ph_res)},
                             {"pc_res_mev", j9(r.pc_res_mev)},
                             {"delta_T_s", j9(r.delta_T_npi_s)},
                             {"delta_phi_rad", j9(r.delta_phi_rad)}});
    }
    if (has_observed) {
      const auto em = resonance::effective_mass(observed, {d_fm, mc2, n_ref});
      doc["effective_mass"] = {{"observed_pc_mev", j9(observed)},
                               {"n_ref", n_ref},
                               {"ratio_sq", j9(em.ratio_sq)},
                               {"ratio", j9(em.ratio)},
                               {"m_eff_mc2", j9(em.m_eff_mc2)}};
    }
    out << doc.dump() << "\n";
  } else {
    out << "n,beta_ph_res,pc_res_mev,delta_T_s,delta_phi_rad\n";
    for (const auto& r : rows) {
      out << r.n << ',' << io::format_sig(r.beta_ph_res, precision) << ','
          << io::format_sig(r.pc_res_mev, precision) << ','
          << io::format_sig(r.delta_T_npi_s, precision) << ','
          << io::format_sig(r.delta_phi_rad, precision) << '\n';
    }
    if (has_observed) {
      const auto em = resonance::effective_mass(observed, {d_fm, mc2, n_ref});
      out << "observed_pc_mev,n_ref,ratio_sq,ratio,m_eff_mc2\n";
      out << io::format_sig(observed, precision) << ',' << n_ref << ','
          << io::format_sig(em.ratio_sq, precision) << ',' << io::format_sig(em.ratio, precision)
          << ',' << io::format_sig(em.m_eff_mc2, precision) << '\n';
    }
  }
  sink.write(out.str());
  return 0;
}

int run_scan(double pc_lo, double pc_hi, int steps, double d_fm, double mc2,
             const std::string& format, const OutputSink& sink, int precision) {
  const auto rows = resonance::mismatch_scan(pc_lo, pc_hi, steps, d_fm, mc2);
  std::ostringstream out;
  if (format == "json") {
    json doc = json::array();
    for (const auto& r : rows)
      doc.push_back({{"pc", j9(r.pc)}, {"delta_phi", j9(r.delta_phi)}, {"mismatch", j9(r.mismatch)}});
    out << doc.dump() << "\n";
  } else {
    out << "pc,delta_phi,mismatch\n";
    for (const auto& r : rows) {
      out << io::format_sig(r.pc, precision) << ',' << io::format_sig(r.delta_phi, precision)
          << ',' << io::format_sig(r.mismatch, precision) << '\n';
    }
  }
  sink.write(out.str());
  return 0;
}

dirac::TimeSeries run_from_config(const config::RunConfig& cfg) {
  const dirac::Lattice lat = dirac::make_lattice(cfg.lattice_n, cfg.lattice_length);
  const dirac::DiracAlgebra algebra = dirac::DiracAlgebra::make(cfg.mc2);
  return dirac::run(lat, cfg.packet, algebra, cfg.t_final, cfg.n_records, cfg.tau0);
}

int run_evolve(const std::string& config_path, const std::string& output_override,
               int precision_override, bool want_frequency, bool force_mixed) {
  config::RunConfig cfg = config::load_config(config_path);
  if (force_mixed && cfg.packet.content.kind != dirac::PacketContent::Kind::Mixed)
    cfg.packet.content = dirac::PacketContent::mixed(1.0, 1.0);
  if (!output_override.empty()) cfg.csv_path = output_override;
  if (precision_override > 0) cfg.precision = precision_override;

  const dirac::TimeSeries series = run_from_config(cfg);

  if (!cfg.csv_path.empty()) {
    std::ofstream out(cfg.csv_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + cfg.csv_path);
    io::write_timeseries_csv(out, series, cfg.precision);
  }

  std::vector<double> t, x, T, phase;
  double max_norm_drift = 0.0;
  for (const auto& r : series.records) {
    t.push_back(r.t);
    x.push_back(r.x_mean);
    T.push_back(r.T_mean);
    phase.push_back(r.phase_central);
    max_norm_drift = std::max(max_norm_drift, std::abs(r.norm - 1.0));
  }
  const auto fit_x = analysis::linear_fit_xy(t, x);
  const auto fit_T = analysis::linear_fit_xy(t, T);
  const auto fit_phase = analysis::linear_fit_xy(t, phase);

  json doc{{"records", static_cast<int>(series.records.size())},
           {"t_final", j9(cfg.t_final)},
           {"x_slope", j9(fit_x.slope)},
           {"x_rms", j9(fit_x.rms_residual)},
           {"T_slope", j9(fit_T.slope)},
           {"phase_rate", j9(fit_phase.slope)},
           {"max_norm_drift", j9(max_norm_drift)},
           {"containment_warnings", series.containment_warnings()},
           {"phase_aliasing", series.phase_aliasing},
           {"csv", cfg.csv_path}};

  const bool mixed = cfg.packet.content.kind == dirac::PacketContent::Kind::Mixed;
  if (want_frequency || mixed) {
    const auto est = analysis::dominant_frequency(analysis::Series{t, x});
    doc["zitter_omega"] = j9(est.omega);
    doc["zitter_amplitude"] = j9(est.amplitude);
  }
  std::cout << doc.dump() << "\n";
  return 0;
}

int run_clock(const std::string& config_path) {
  const config::RunConfig cfg = config::load_config(config_path);
  if (cfg.packet.content.kind != dirac::PacketContent::Kind::Positive)
    throw std::invalid_argument("clock analysis requires positive-energy packet");

  const dirac::TimeSeries series = run_from_config(cfg);
  const dirac::DiracAlgebra algebra = dirac::DiracAlgebra::make(cfg.mc2);
  const auto rep = time_operator::clock_report(series, cfg.packet.k0, algebra);

  const double product = rep.x_slope * rep.ratio_x_over_T;
  const bool slope_ok = std::abs(rep.slope_T / rep.beta2_expected - 1.0) <= kSlopeTol;
  const bool ratio_ok = std::abs(rep.ratio_x_over_T / rep.v_ph_expected - 1.0) <= kRatioTol;
  const bool phase_ok = std::abs(std::abs(rep.phase_rate) / rep.clock_rate_expected - 1.0) <= kPhaseTol;
  const bool product_ok = std::abs(product - 1.0) <= kProductTol;

  json doc{{"slope_T", j9(rep.slope_T)},
           {"beta2_expected", j9(rep.beta2_expected)},
           {"slope_T_ok", slope_ok},
           {"ratio_x_over_T", j9(rep.ratio_x_over_T)},
           {"v_ph_expected", j9(rep.v_ph_expected)},
           {"ratio_ok", ratio_ok},
           {"phase_rate", j9(rep.phase_rate)},
           {"clock_rate_expected", j9(rep.clock_rate_expected)},
           {"phase_ok", phase_ok},
           {"x_slope", j9(rep.x_slope)},
           {"product_vgp_vph", j9(product)},
           {"product_ok", product_ok},
           {"slope_T_rms", j9(rep.slope_T_rms)},
           {"ratio_rms", j9(rep.ratio_rms)},
           {"phase_rms", j9(rep.phase_rms)},
           {"pass", slope_ok && ratio_ok && phase_ok && product_ok}};
  std::cout << doc.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"de Broglie clock toolkit: channeling resonances and Dirac wave-packet runs"};
  app.require_subcommand(1);

  std::string output_path, format = "csv";
  int precision = 12;
  app.add_option("--output", output_path, "write table output to a file instead of stdout");
  app.add_option("--format", format, "table format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--precision", precision, "significant digits for CSV output")
      ->check(CLI::Range(3, 17));

  auto* res = app.add_subcommand("resonance", "channeling resonance momenta per harmonic");
  res->fallthrough();
  double d_fm = 0.0, mc2 = 0.0, observed = 0.0;
  std::vector<int> n_list{1, 2};
  res->add_option("--d", d_fm, "interatomic spacing, fm")->required();
  res->add_option("--mc2", mc2, "rest energy, MeV")->required();
  res->add_option("--n", n_list, "comma-separated harmonics")->delimiter(',');
  auto* observed_opt = res->add_option("--observed", observed, "observed resonance momentum, MeV/c");

  auto* em = app.add_subcommand("effective-mass", "effective-mass fit from an observed momentum");
  em->fallthrough();
  double em_d = 0.0, em_mc2 = 0.0, em_observed = 0.0;
  std::vector<int> em_n_list{1, 2};
  em->add_option("--d", em_d, "interatomic spacing, fm")->required();
  em->add_option("--mc2", em_mc2, "rest energy, MeV")->required();
  em->add_option("--n", em_n_list, "comma-separated harmonics")->delimiter(',');
  em->add_option("--observed", em_observed, "observed resonance momentum, MeV/c")->required();

  auto* scan = app.add_subcommand("scan", "phase-mismatch scan over a momentum window");
  scan->fallthrough();
  double pc_lo = 0.0, pc_hi = 0.0, scan_d = 0.0, scan_mc2 = 0.0;
  int steps = 0;
  scan->add_option("--pc-lo", pc_lo, "window start, MeV/c")->required();
  scan->add_option("--pc-hi", pc_hi, "window end, MeV/c")->required();
  scan->add_option("--steps", steps, "grid points, >= 2")->required();
  scan->add_option("--d", scan_d, "interatomic spacing, fm")->required();
  scan->add_option("--mc2", scan_mc2, "rest energy, MeV")->required();

  auto* evolve = app.add_subcommand("evolve", "run a wave packet from an INI config; CSV + JSON summary");
  evolve->fallthrough();
  std::string evolve_config;
  bool evolve_freq = false;
  evolve->add_option("config", evolve_config, "INI config path")->required();
  evolve->add_flag("--frequency", evolve_freq, "add dominant-frequency extraction to the summary");

  auto* zitter = app.add_subcommand("zitter", "evolve preset: mixed packet with frequency summary");
  zitter->fallthrough();
  std::string zitter_config;
  zitter->add_option("config", zitter_config, "INI config path")->required();

  auto* clock = app.add_subcommand("clock", "clock-rate report for a positive-energy run");
  clock->fallthrough();
  std::string clock_config;
  clock->add_option("config", clock_config, "INI config path")->required();

  try {
    app.parse(argc, argv);
    const OutputSink sink{output_path};
    if (res->parsed())
      return run_resonance(d_fm, mc2, n_list, observed, observed_opt->count() > 0, format, sink, precision);
    if (em->parsed())
      return run_resonance(em_d, em_mc2, em_n_list, em_observed, true, format, sink, precision);
    if (scan->parsed())
      return run_scan(pc_lo, pc_hi, steps, scan_d, scan_mc2, format, sink, precision);
    const int precision_override = app.count("--precision") > 0 ? precision : 0;
    if (evolve->parsed())
      return run_evolve(evolve_config, output_path, precision_override, evolve_freq, false);
    if (zitter->parsed())
      return run_evolve(zitter_config, output_path, precision_override, true, true);
    if (clock->parsed())
      return run_clock(clock_config);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
