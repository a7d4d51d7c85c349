#include <catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "dbclock/config.hpp"
#include "dbclock/io.hpp"

using namespace dbclock;

namespace {

const std::string kGoodConfig = R"(# comment line
[lattice]
N = 2048
L = 409.6

[packet]
x0 = -12.0
k0 = 0.75          ; trailing comment
sigma_x = 10.0
content = mixed
w_plus = 1.0
w_minus = 0.5

[engine]
mc2 = 2.0
t_final = 40.0
n_records = 101

[output]
csv = out.csv
precision = 9
)";

std::string with_line(const std::string& base, const std::string& extra) {
  return base + "\n" + extra + "\n";
}

}  // namespace

TEST_CASE("a full config parses with every field") {
  const config::RunConfig cfg = config::parse_config(kGoodConfig);
  CHECK(cfg.lattice_n == 2048);
  CHECK(cfg.lattice_length == 409.6);
  CHECK(cfg.packet.x0 == -12.0);
  CHECK(cfg.packet.k0 == 0.75);
  CHECK(cfg.packet.sigma_x == 10.0);
  CHECK(cfg.packet.content.kind == dirac::PacketContent::Kind::Mixed);
  CHECK(cfg.packet.content.w_plus == 1.0);
  CHECK(cfg.packet.content.w_minus == 0.5);
  CHECK(cfg.mc2 == 2.0);
  CHECK(cfg.t_final == 40.0);
  CHECK(cfg.n_records == 101);
  CHECK(cfg.tau0 == 0.5);  // defaults to 1/mc2
  CHECK(cfg.csv_path == "out.csv");
  CHECK(cfg.precision == 9);
}

TEST_CASE("minimal config fills the defaults") {
  const config::RunConfig cfg = config::parse_config(
      "[lattice]\nN = 64\nL = 64\n[packet]\nsigma_x = 8\n[engine]\nt_final = 1\nn_records = 2\n");
  CHECK(cfg.packet.content.kind == dirac::PacketContent::Kind::Positive);
  CHECK(cfg.packet.x0 == 0.0);
  CHECK(cfg.mc2 == 1.0);
  CHECK(cfg.tau0 == 1.0);
  CHECK(cfg.precision == 12);
  CHECK(cfg.csv_path.empty());
}

TEST_CASE("violated invariants are named") {
  auto message_of = [](const std::string& text) -> std::string {
    try {
      config::parse_config(text);
    } catch (const std::invalid_argument& e) {
      return e.what();
    }
    return "";
  };

  CHECK(message_of("[lattice]\nN = 100\nL = 64\n[packet]\nsigma_x = 8\n[engine]\nt_final = 1\nn_records = 2\n")
            .find("power of two") != std::string::npos);
  CHECK(message_of("[lattice]\nN = 64\nL = 64\n[packet]\nsigma_x = 1\n[engine]\nt_final = 1\nn_records = 2\n")
            .find("sigma_x") != std::string::npos);
  CHECK(message_of("[lattice]\nN = 64\nL = 64\n[packet]\nsigma_x = 8\nk0 = 3.0\n[engine]\nt_final = 1\nn_records = 2\n")
            .find("anti-aliasing") != std::string::npos);
  CHECK(message_of("[lattice]\nN = 64\nL = 64\n[packet]\nsigma_x = 8\n[engine]\nt_final = 0\nn_records = 2\n")
            .find("t_final") != std::string::npos);
  CHECK(message_of("[lattice]\nN = 64\nL = 64\n[packet]\nsigma_x = 8\n[engine]\nt_final = 1\nn_records = 1\n")
            .find("n_records") != std::string::npos);
  CHECK(message_of("[lattice]\nN = 64\nL = 64\n[packet]\nsigma_x = 8\n[engine]\nt_final = 1\nn_records = 2\nmc2 = -1\n")
            .find("mc2") != std::string::npos);
  CHECK(message_of(with_line(kGoodConfig, "[engine]\ndt = 0.1")).find("unknown key: engine.dt") !=
        std::string::npos);
  CHECK(message_of("[packet]\ncontent = plain\nsigma_x = 8\n[lattice]\nN = 64\nL = 64\n[engine]\nt_final = 1\nn_records = 2\n")
            .find("content") != std::string::npos);
  CHECK(message_of("[lattice]\nN = 64\n[packet]\nsigma_x = 8\n[engine]\nt_final = 1\nn_records = 2\n")
            .find("missing required key: lattice.L") != std::string::npos);
  CHECK(message_of("[lattice]\nN = 64\nN = 64\nL = 64\n").find("duplicate key") != std::string::npos);
  CHECK(message_of("[lattice\nN = 64\n").find("malformed section") != std::string::npos);
  CHECK(message_of("[lattice]\nN 64\nL = 64\n").find("key = value") != std::string::npos);
  CHECK(message_of("[lattice]\nN = abc\nL = 64\n").find("invalid") != std::string::npos);
}

TEST_CASE("missing config file names the path") {
  CHECK_THROWS_WITH(config::load_config("/nonexistent/zz.ini"), Catch::Matchers::ContainsSubstring("cannot open config file"));
}

TEST_CASE("significant-digit rounding") {
  CHECK(io::round_sig(0.36, 9) == 0.36);
  CHECK(io::round_sig(1.234567891234, 9) == 1.23456789);
  CHECK(io::round_sig(-6.28318530718, 9) == -6.28318531);
  CHECK(io::round_sig(0.0, 9) == 0.0);
  CHECK(io::format_sig(80.8735833253, 6) == "80.8736");
  CHECK(io::format_sig(1.0, 12) == "1");
}

TEST_CASE("csv writer emits the exact header and LF endings") {
  dirac::TimeSeries series;
  dirac::ObservableRecord r{};
  r.t = 0.5;
  r.norm = 1.0;
  r.x_mean = -1.25;
  r.phase_central = 0.125;
  series.records.push_back(r);

  std::ostringstream a, b;
  io::write_timeseries_csv(a, series, 12);
  io::write_timeseries_csv(b, series, 12);
  const std::string text = a.str();
  CHECK(text.rfind("t,norm,x_mean,p_mean,alpha_mean,beta_mean,E_mean,T_mean,phase_central\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text == b.str());
  CHECK(text.find("-1.25") != std::string::npos);

  std::ostringstream coarse;
  io::write_timeseries_csv(coarse, series, 3);
  CHECK(coarse.str().size() < text.size() + 1);
}
