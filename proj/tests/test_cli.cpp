#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_path = "cli_stdout_" + std::to_string(counter) + ".txt";
  const std::string err_path = "cli_stderr_" + std::to_string(counter) + ".txt";
  ++counter;
  const std::string cmd =
      std::string(FRANCHISE_CLI_BIN) + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::string write_config(const json& j) {
  static int counter = 0;
  const std::string path = "cli_cfg_" + std::to_string(counter++) + ".json";
  std::ofstream out(path);
  out << j.dump(2);
  return path;
}

json base_config() {
  return json{{"n", 10},
              {"e0", 1.0},
              {"m", 0.5},
              {"a", 2.0},
              {"g", 0.5},
              {"production", {{"family", "isoelastic"}, {"beta", 0.5}}}};
}

json trap_config(double m) {
  return json{{"n", 10},
              {"e0", 2.0},
              {"m", m},
              {"a", 5.0},
              {"g", 0.4},
              {"production", {{"family", "saturating"}, {"kappa", 1.0}}},
              {"delta", 0.2},
              {"a_coef", 0.5}};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("cli: solve prints the documented csv schema") {
  const std::string cfg = write_config(base_config());
  const RunResult r = run_cli("solve --config " + cfg);
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "e_star,v_star,i_e,i_d,pi_e,pi_d,y,threshold_lhs,inclusive");
  const auto f = split(lines[1], ',');
  REQUIRE(f.size() == 9);
  CHECK(f[0] == "2");
  CHECK(f[1] == "public");
  CHECK(f[2] == "1");
  CHECK(f[3] == "0.25");
  CHECK(f[4] == "7.5");
  CHECK(f[5] == "5.75");
  CHECK(f[6] == "61");
  CHECK(f[8] == "1");
  std::remove(cfg.c_str());
}

TEST_CASE("cli: exit codes distinguish the failure modes") {
  CHECK(run_cli("").exit_code == 2);                       // no subcommand: usage
  CHECK(run_cli("--frobnicate").exit_code == 2);           // unknown flag
  CHECK(run_cli("solve --config nope.json").exit_code == 3);

  const std::string broken = write_config(json::object());
  {
    std::ofstream out(broken);
    out << "{ not json";
  }
  CHECK(run_cli("solve --config " + broken).exit_code == 4);
  std::remove(broken.c_str());

  json bad = base_config();
  bad["g"] = 1.5;
  const std::string cfg = write_config(bad);
  CHECK(run_cli("solve --config " + cfg).exit_code == 5);
  std::remove(cfg.c_str());
}

TEST_CASE("cli: --set overrides the config file") {
  const std::string cfg = write_config(base_config());
  const RunResult base = run_cli("solve --config " + cfg);
  const RunResult scarce = run_cli("solve --config " + cfg + " --set m=5");
  CHECK(base.exit_code == 0);
  CHECK(scarce.exit_code == 0);
  CHECK(split(lines_of(base.out)[1], ',')[1] == "public");
  CHECK(split(lines_of(scarce.out)[1], ',')[1] == "steal");  // outside income kills the threat
  std::remove(cfg.c_str());
}

TEST_CASE("cli: dumped config is a fixpoint") {
  const std::string cfg = write_config(base_config());
  const RunResult first = run_cli("--dump-config --config " + cfg + " --set m=5 --set alpha=0.25");
  REQUIRE(first.exit_code == 0);
  const json resolved = json::parse(first.out);
  CHECK(resolved["m"] == 5.0);
  CHECK(resolved["alpha"] == 0.25);

  const std::string dumped = write_config(resolved);
  const RunResult second = run_cli("--dump-config --config " + dumped);
  REQUIRE(second.exit_code == 0);
  CHECK(second.out == first.out);
  std::remove(cfg.c_str());
  std::remove(dumped.c_str());
}

TEST_CASE("cli: simulate emits one row per period plus a summary footer") {
  const std::string cfg = write_config(trap_config(50.0));
  const RunResult r = run_cli("simulate --config " + cfg + " --set a_coef=0");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() > 3);
  CHECK(lines[0] == "t,a,e0,e,v,i_e,i_d,i_bar,y");
  const auto first = split(lines[1], ',');
  REQUIRE(first.size() == 9);
  CHECK(first[0] == "1");
  CHECK(first[1] == "5");
  CHECK(first[2] == "2");
  CHECK(first[4] == "steal");
  const std::string& footer = lines.back();
  CHECK(footer.rfind("# terminal=collapsed_to_zero a_final=", 0) == 0);
  CHECK(footer.find("transition_period=none") != std::string::npos);
  std::remove(cfg.c_str());
}

TEST_CASE("cli: steady-state lists fixed points for the requested regimes") {
  const std::string cfg = write_config(trap_config(50.0));
  const RunResult low = run_cli("steady-state --regime low --config " + cfg);
  CHECK(low.exit_code == 0);
  auto lines = lines_of(low.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "regime,a_ss,stability,residual");
  const auto r1 = split(lines[1], ',');
  const auto r2 = split(lines[2], ',');
  CHECK(r1[0] == "low");
  CHECK(r1[2] == "unstable");
  CHECK(std::stod(r1[1]) == doctest::Approx(1.9098300562505255).epsilon(1e-9));
  CHECK(r2[2] == "stable");
  CHECK(std::stod(r2[1]) == doctest::Approx(13.090169943749475).epsilon(1e-9));

  const RunResult both = run_cli("steady-state --config " + cfg);
  CHECK(both.exit_code == 0);
  lines = lines_of(both.out);
  REQUIRE(lines.size() == 5);  // two per regime
  CHECK(split(lines[3], ',')[0] == "high");
  CHECK(split(lines[4], ',')[0] == "high");
  std::remove(cfg.c_str());
}

TEST_CASE("cli: identity sweeps a grid of group sizes and skips bad points") {
  json cfg_json = base_config();
  cfg_json["m"] = 2.0;
  cfg_json["alpha"] = 0.5;
  const std::string cfg = write_config(cfg_json);
  const RunResult r = run_cli("identity --config " + cfg + " --p-grid 0.05,0.3,0.9");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);  // header + two valid points
  CHECK(lines[0] == "p_tot,alpha,e_p,decision,u_e_incl,u_e_extr");
  CHECK(std::stod(split(lines[1], ',')[0]) == 0.3);
  CHECK(split(lines[1], ',')[3] == "steal");
  CHECK(std::stod(split(lines[2], ',')[0]) == 0.9);
  CHECK(split(lines[2], ',')[3] == "public");
  CHECK(r.err.find("skipping p_tot=0.05") != std::string::npos);

  // Flag overrides win over the config defaults.
  const RunResult single = run_cli("identity --config " + cfg + " --p-tot 0.9 --alpha 0.5");
  CHECK(single.exit_code == 0);
  const auto sl = lines_of(single.out);
  REQUIRE(sl.size() == 2);
  CHECK(split(sl[1], ',')[3] == "public");
  std::remove(cfg.c_str());
}

TEST_CASE("cli: a non-committal founding elite is accepted but flagged") {
  json j = base_config();
  j["e0"] = 2.0;
  const std::string cfg = write_config(j);
  const RunResult r = run_cli("solve --config " + cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("no_commitment_problem") != std::string::npos);
  std::remove(cfg.c_str());
}

TEST_CASE("cli: verify agrees with the solver on a small smoke run") {
  const RunResult r = run_cli("verify --draws 5 --seed 7 --e-steps 150 --i-step 0.005");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 7);  // header, five draws, summary
  CHECK(lines[0].rfind("draw,family,", 0) == 0);
  CHECK(lines.back().rfind("# draws=5 agreements=5 max_rel_gap=", 0) == 0);
}

TEST_CASE("cli: --output redirects results to a file") {
  const std::string cfg = write_config(base_config());
  const std::string out_path = "cli_solve_result.csv";
  const RunResult r = run_cli("solve --config " + cfg + " --output " + out_path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  const std::string body = slurp(out_path);
  CHECK(body.rfind("e_star,", 0) == 0);
  std::remove(out_path.c_str());
  std::remove(cfg.c_str());
}

TEST_CASE("cli: identical invocations produce identical bytes") {
  const std::string cfg = write_config(trap_config(10.0));
  const RunResult a = run_cli("simulate --config " + cfg);
  const RunResult b = run_cli("simulate --config " + cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const RunResult v1 = run_cli("verify --draws 3 --seed 11 --e-steps 120 --i-step 0.01");
  const RunResult v2 = run_cli("verify --draws 3 --seed 11 --e-steps 120 --i-step 0.01");
  CHECK(v1.exit_code == 0);
  CHECK(v1.out == v2.out);
  std::remove(cfg.c_str());
}
