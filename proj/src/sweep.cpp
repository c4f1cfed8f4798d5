#include "franchise/sweep.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

#include "franchise/errors.hpp"
#include "franchise/format.hpp"

namespace franchise {

namespace {

std::vector<std::string> data_columns(SweepTarget target) {
  switch (target) {
    case SweepTarget::Solve:
      return {"e_star", "v_star", "i_e", "i_d", "pi_e", "pi_d", "y", "threshold_lhs", "inclusive"};
    case SweepTarget::Identity:
      return {"e_p", "decision", "u_e_incl", "u_e_extr"};
    case SweepTarget::Classify:
      return {"regime", "a_ss_low", "criterion_lhs", "terminal", "transition_period", "consistent"};
  }
  throw_domain("unknown sweep target");
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void eval_target(const Config& cfg, SweepTarget target, std::vector<Cell>& row) {
  switch (target) {
    case SweepTarget::Solve: {
      const EquilibriumOutcome eq = solve_equilibrium(cfg.game);
      row.push_back(Cell::number(eq.e_star));
      row.push_back(Cell::text(institution_name(eq.v_star)));
      row.push_back(Cell::number(eq.i_e));
      row.push_back(Cell::number(eq.i_d));
      row.push_back(Cell::number(eq.pi_e));
      row.push_back(Cell::number(eq.pi_d));
      row.push_back(Cell::number(eq.y));
      row.push_back(Cell::number(eq.threshold_lhs));
      row.push_back(Cell::number(eq.inclusive ? 1.0 : 0.0));
      return;
    }
    case SweepTarget::Identity: {
      const IdentityOutcome res = solve_equilibrium_identity(cfg.identity_params());
      row.push_back(Cell::number(res.e_p));
      row.push_back(Cell::text(institution_name(res.outcome.v_star)));
      row.push_back(Cell::number(res.u_e_incl));
      row.push_back(Cell::number(res.u_e_extr));
      return;
    }
    case SweepTarget::Classify: {
      const Classification cl = classify_long_run(cfg.dyn_params());
      row.push_back(Cell::text(long_run_name(cl.regime)));
      row.push_back(Cell::number(cl.a_ss_low.value_or(kNan)));
      row.push_back(Cell::number(cl.criterion_lhs.value_or(kNan)));
      row.push_back(Cell::text(terminal_name(cl.sim_terminal)));
      row.push_back(Cell::number(cl.sim_transition ? static_cast<double>(*cl.sim_transition) : kNan));
      row.push_back(Cell::number(cl.consistent ? 1.0 : 0.0));
      return;
    }
  }
  throw_domain("unknown sweep target");
}

}  // namespace

ResultTable run_sweep(const Config& cfg, int jobs) {
  const SweepSettings& sw = cfg.sweep;
  if (sw.axes.size() > 2) throw_domain("sweep supports at most 2 axes");
  for (const auto& ax : sw.axes) {
    if (!is_sweep_param(ax.param)) throw_domain("'" + ax.param + "' is not a sweepable parameter");
    if (ax.values.empty()) throw_domain("sweep axis '" + ax.param + "' has no values");
  }

  std::size_t total = 1;
  for (const auto& ax : sw.axes) total *= ax.values.size();
  if (total > sw.max_points) throw_domain("sweep exceeds max_points");

  ResultTable table;
  table.axis_count = sw.axes.size();
  for (const auto& ax : sw.axes) table.columns.push_back(ax.param);
  const auto data_cols = data_columns(sw.target);
  table.columns.insert(table.columns.end(), data_cols.begin(), data_cols.end());
  table.columns.push_back("error_code");
  table.rows.resize(total);

  auto eval_point = [&](std::size_t idx) {
    std::vector<Cell> row;
    row.reserve(table.columns.size());

    // Decode the row-major index into per-axis positions.
    std::size_t rem = idx;
    std::vector<double> coords(sw.axes.size());
    for (std::size_t ax = sw.axes.size(); ax-- > 0;) {
      const auto& values = sw.axes[ax].values;
      coords[ax] = values[rem % values.size()];
      rem /= values.size();
    }
    for (double c : coords) row.push_back(Cell::number(c));

    std::string code = "ok";
    try {
      Config point = cfg;
      for (std::size_t ax = 0; ax < sw.axes.size(); ++ax)
        set_config_param(point, sw.axes[ax].param, coords[ax]);
      eval_target(point, sw.target, row);
    } catch (const error& e) {
      row.resize(sw.axes.size());
      for (const auto& name : data_cols) {
        (void)name;
        row.push_back(Cell::number(kNan));
      }
      code = errc_name(e.code());
    }
    row.push_back(Cell::text(code));
    table.rows[idx] = std::move(row);
  };

  int nj = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  nj = std::max(1, std::min<int>(nj, static_cast<int>(std::min<std::size_t>(total, 64))));

  if (nj == 1) {
    for (std::size_t i = 0; i < total; ++i) eval_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nj));
    for (int w = 0; w < nj; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) eval_point(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return table;
}

void emit_csv(const ResultTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      out << (row[c].is_text ? row[c].str : format_double(row[c].num));
    }
    out << "\n";
  }
}

void emit_json(const ResultTable& table, std::ostream& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c].is_text) obj[table.columns[c]] = row[c].str;
      else obj[table.columns[c]] = row[c].num;  // NaN serializes as null
    }
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << "\n";
}

void emit_plot_data(const ResultTable& table, const std::string& path_prefix) {
  if (path_prefix.empty()) throw error(errc::io_error, "plotdata output needs a path prefix");
  for (std::size_t c = table.axis_count; c + 1 < table.columns.size(); ++c) {
    // Text-valued columns (institutions etc.) have no numeric plot encoding.
    bool numeric = true;
    for (const auto& row : table.rows)
      if (row[c].is_text) {
        numeric = false;
        break;
      }
    if (!numeric) continue;

    const std::string path = path_prefix + "_" + table.columns[c] + ".dat";
    std::ofstream out(path);
    if (!out) throw error(errc::io_error, "cannot write plot data file '" + path + "'");
    out << "#";
    for (std::size_t ax = 0; ax < table.axis_count; ++ax) out << " " << table.columns[ax];
    out << " " << table.columns[c] << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t ax = 0; ax < table.axis_count; ++ax)
        out << format_double(row[ax].num) << " ";
      out << format_double(row[c].num) << "\n";
    }
  }
}

void emit_table(const ResultTable& table, const SweepSettings& settings,
                const std::string& output_override) {
  const std::string out_path = output_override.empty() ? settings.output : output_override;
  if (settings.format == OutputFormat::PlotData) {
    emit_plot_data(table, out_path);
    return;
  }
  if (out_path.empty()) {
    if (settings.format == OutputFormat::Csv) emit_csv(table, std::cout);
    else emit_json(table, std::cout);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw error(errc::io_error, "cannot write output file '" + out_path + "'");
  if (settings.format == OutputFormat::Csv) emit_csv(table, out);
  else emit_json(table, out);
}

}  // namespace franchise
