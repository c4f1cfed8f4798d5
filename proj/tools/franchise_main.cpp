// franchise: solve, sweep, and simulate elite franchise-extension games.
//
// Exit codes: 0 success, 2 usage, 3 missing config file, 4 config parse error,
// 5 config constraint violation, 6 domain error, 7 I/O error,
// 8 verification found disagreements.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "franchise/config.hpp"
#include "franchise/dynamics.hpp"
#include "franchise/errors.hpp"
#include "franchise/format.hpp"
#include "franchise/game.hpp"
#include "franchise/identity.hpp"
#include "franchise/oracle.hpp"
#include "franchise/sweep.hpp"

namespace {

using namespace franchise;

int exit_code_for(errc c) {
  switch (c) {
    case errc::config_missing_file: return 3;
    case errc::config_parse_error: return 4;
    case errc::config_constraint: return 5;
    case errc::domain_error: return 6;
    case errc::io_error: return 7;
  }
  return 1;
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw error(errc::io_error, "cannot write output file '" + path + "'");
  fn(out);
}

void emit_solve_csv(const EquilibriumOutcome& eq, std::ostream& out) {
  out << "e_star,v_star,i_e,i_d,pi_e,pi_d,y,threshold_lhs,inclusive\n";
  out << format_double(eq.e_star) << "," << institution_name(eq.v_star) << ","
      << format_double(eq.i_e) << "," << format_double(eq.i_d) << "," << format_double(eq.pi_e)
      << "," << format_double(eq.pi_d) << "," << format_double(eq.y) << ","
      << format_double(eq.threshold_lhs) << "," << (eq.inclusive ? "1" : "0") << "\n";
}

void emit_simulate_csv(const Trajectory& traj, std::ostream& out) {
  out << "t,a,e0,e,v,i_e,i_d,i_bar,y\n";
  for (const auto& r : traj.periods) {
    out << format_long(r.t) << "," << format_double(r.a) << "," << format_double(r.e0) << ","
        << format_double(r.e) << "," << institution_name(r.v) << "," << format_double(r.i_e)
        << "," << format_double(r.i_d) << "," << format_double(r.i_bar) << ","
        << format_double(r.y) << "\n";
  }
  out << "# terminal=" << terminal_name(traj.terminal)
      << " a_final=" << format_double(traj.a_final) << " transition_period="
      << (traj.transition_period ? format_long(*traj.transition_period) : std::string("none"))
      << "\n";
}

void emit_steady_state_rows(const SteadyStateReport& rep, std::ostream& out) {
  for (const auto& fp : rep.fixed_points) {
    out << regime_name(rep.regime) << "," << format_double(fp.a_ss) << ","
        << stability_name(fp.stability) << "," << format_double(fp.residual) << "\n";
  }
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw error(errc::config_constraint, "cannot parse number '" + item + "' in list");
    }
  }
  if (out.empty()) throw error(errc::config_constraint, "empty number list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solver and simulator for elite franchise-extension games"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string output;
  int jobs = 0;
  bool dump_config = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--set", overrides, "override a config key, e.g. --set g=0.4")->take_all();
  app.add_option("--output", output, "write results to this path instead of stdout");
  app.add_option("--jobs", jobs, "worker threads for sweeps (0 = hardware)");
  app.add_flag("--dump-config", dump_config, "print the resolved config as JSON and exit");

  CLI::App* cmd_solve = app.add_subcommand("solve", "one-shot equilibrium at the configured parameters");
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "evaluate the configured sweep block");
  CLI::App* cmd_simulate = app.add_subcommand("simulate", "simulate the repeated game");
  CLI::App* cmd_steady = app.add_subcommand("steady-state", "locate steady states of the productivity map");
  CLI::App* cmd_identity = app.add_subcommand("identity", "identity-group extension decision");
  CLI::App* cmd_verify = app.add_subcommand("verify", "cross-check the solver against grid backward induction");

  std::string regime = "both";
  cmd_steady->add_option("--regime", regime, "low, high, or both")
      ->check(CLI::IsMember({"low", "high", "both"}));

  std::optional<double> alpha_flag, p_tot_flag;
  std::string p_grid;
  cmd_identity->add_option("--alpha", alpha_flag, "override the altruism weight");
  cmd_identity->add_option("--p-tot", p_tot_flag, "override the focal group share");
  cmd_identity->add_option("--p-grid", p_grid, "comma-separated group shares to sweep");

  int draws = 200;
  unsigned long long seed = 20240817ull;
  int e_steps = 500;
  double i_step = 1e-3;
  cmd_verify->add_option("--draws", draws, "number of random parameter draws");
  cmd_verify->add_option("--seed", seed, "RNG seed");
  cmd_verify->add_option("--e-steps", e_steps, "elite-size grid points");
  cmd_verify->add_option("--i-step", i_step, "target effort grid spacing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    auto resolve = [&]() {
      nlohmann::json raw =
          config_path.empty() ? nlohmann::json::object() : load_config_json(config_path);
      for (const auto& kv : overrides) apply_override(raw, kv);
      if (alpha_flag) raw["alpha"] = *alpha_flag;
      if (p_tot_flag) raw["p_tot"] = *p_tot_flag;
      Config cfg = config_from_json(raw);
      if (cfg.no_commitment_warning)
        std::fprintf(stderr,
                     "warning: no_commitment_problem: e0 (%g) >= 1/g (%g); public provision is "
                     "credible without any extension\n",
                     cfg.game.e0, 1.0 / cfg.game.g);
      return cfg;
    };

    if (dump_config) {
      const Config cfg = resolve();
      with_output(output, [&](std::ostream& out) { out << resolved_config_json(cfg).dump(2) << "\n"; });
      return 0;
    }

    if (cmd_solve->parsed()) {
      const Config cfg = resolve();
      const EquilibriumOutcome eq = solve_equilibrium(cfg.game);
      with_output(output, [&](std::ostream& out) { emit_solve_csv(eq, out); });
      return 0;
    }

    if (cmd_sweep->parsed()) {
      const Config cfg = resolve();
      if (!cfg.has_sweep)
        throw error(errc::config_constraint, "sweep subcommand needs a 'sweep' block in the config");
      const ResultTable table = run_sweep(cfg, jobs);
      emit_table(table, cfg.sweep, output);
      return 0;
    }

    if (cmd_simulate->parsed()) {
      const Config cfg = resolve();
      const Trajectory traj = simulate(cfg.dyn_params());
      with_output(output, [&](std::ostream& out) { emit_simulate_csv(traj, out); });
      return 0;
    }

    if (cmd_steady->parsed()) {
      const Config cfg = resolve();
      const DynParams dp = cfg.dyn_params();
      with_output(output, [&](std::ostream& out) {
        out << "regime,a_ss,stability,residual\n";
        if (regime != "high") emit_steady_state_rows(low_steady_states(dp), out);
        if (regime != "low") emit_steady_state_rows(high_steady_states(dp), out);
      });
      return 0;
    }

    if (cmd_identity->parsed()) {
      const Config cfg = resolve();
      const IdentityParams ip = cfg.identity_params();
      with_output(output, [&](std::ostream& out) {
        out << "p_tot,alpha,e_p,decision,u_e_incl,u_e_extr\n";
        auto emit_point = [&](double p_tot, double e_p, bool extends, double u_incl,
                              double u_extr) {
          out << format_double(p_tot) << "," << format_double(ip.alpha) << ","
              << format_double(e_p) << "," << (extends ? "public" : "steal") << ","
              << format_double(u_incl) << "," << format_double(u_extr) << "\n";
        };
        if (p_grid.empty()) {
          const IdentityOutcome res = solve_equilibrium_identity(ip);
          emit_point(ip.p_tot, res.e_p, res.extends, res.u_e_incl, res.u_e_extr);
        } else {
          for (const auto& pt : sweep_group_size(ip, parse_double_list(p_grid))) {
            if (pt.error) {
              std::fprintf(stderr, "warning: skipping p_tot=%g: %s\n", pt.p_tot,
                           pt.error->c_str());
              continue;
            }
            if (pt.degenerate)
              std::fprintf(stderr, "warning: p_tot=%g is degenerate (group == elite)\n", pt.p_tot);
            emit_point(pt.p_tot, pt.e_p, pt.extends, pt.u_e_incl, pt.u_e_extr);
          }
        }
      });
      return 0;
    }

    if (cmd_verify->parsed()) {
      if (draws < 1) throw error(errc::config_constraint, "--draws must be >= 1");
      RngStream rng(seed);
      GridSpec grid;
      grid.e_steps = e_steps;
      grid.target_i_step = i_step;

      int agreements = 0;
      double max_gap = 0.0;
      std::ostringstream body;
      body << "draw,family,beta,kappa,n,e0,m,a,g,v_analytic,v_grid,e_star_analytic,e_star_grid,"
              "pi_e_analytic,pi_e_grid,rel_gap,agrees\n";
      for (int d = 1; d <= draws; ++d) {
        const GameParams p = random_game_params(rng);
        const OracleReport rep = solve_by_backward_induction(p, grid);
        const EquilibriumOutcome eq = solve_equilibrium(p);
        if (rep.agrees) ++agreements;
        if (rep.max_payoff_gap > max_gap) max_gap = rep.max_payoff_gap;
        body << d << "," << family_name(p.production.family) << ","
             << format_double(p.production.beta) << "," << format_double(p.production.kappa)
             << "," << format_double(p.n) << "," << format_double(p.e0) << ","
             << format_double(p.m) << "," << format_double(p.a) << "," << format_double(p.g)
             << "," << institution_name(eq.v_star) << "," << institution_name(rep.v_star) << ","
             << format_double(eq.e_star) << "," << format_double(rep.e_star_grid) << ","
             << format_double(eq.pi_e) << "," << format_double(rep.pi_e_grid) << ","
             << format_double(rep.max_payoff_gap) << "," << (rep.agrees ? "1" : "0") << "\n";
      }
      body << "# draws=" << draws << " agreements=" << agreements
           << " max_rel_gap=" << format_double(max_gap) << "\n";
      with_output(output, [&](std::ostream& out) { out << body.str(); });
      return agreements == draws ? 0 : 8;
    }

    std::cerr << app.help();
    return 2;
  } catch (const error& e) {
    std::fprintf(stderr, "error: %s: %s\n", errc_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 1;
  }
}
