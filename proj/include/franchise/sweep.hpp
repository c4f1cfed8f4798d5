#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "franchise/config.hpp"

namespace franchise {

struct Cell {
  bool is_text = false;
  double num = 0.0;
  std::string str;

  static Cell number(double v) {
    Cell c;
    c.num = v;
    return c;
  }
  static Cell text(std::string s) {
    Cell c;
    c.is_text = true;
    c.str = std::move(s);
    return c;
  }
};

struct ResultTable {
  std::vector<std::string> columns;      // axis columns, data columns, error_code
  std::vector<std::vector<Cell>> rows;   // row-major over the axes, in axis order
  std::size_t axis_count = 0;
};

// Evaluate the sweep target over the cross product of the axes.  Rows always
// come back in lexicographic axis order; per-point domain errors become rows
// with data cells set to NaN and a nonempty error code, and the sweep goes on.
// jobs <= 0 picks the hardware concurrency; output is identical for any job
// count because points are computed independently and assembled by index.
ResultTable run_sweep(const Config& cfg, int jobs = 0);

void emit_csv(const ResultTable& table, std::ostream& out);
void emit_json(const ResultTable& table, std::ostream& out);

// One whitespace-separated file per numeric data column, named
// <prefix>_<column>.dat, each with a "#"-prefixed header line; NaN cells are
// written as "nan".
void emit_plot_data(const ResultTable& table, const std::string& path_prefix);

// Dispatch on settings.format; output_override (when nonempty) replaces
// settings.output.  Csv/Json go to the path or stdout; PlotData needs a path.
void emit_table(const ResultTable& table, const SweepSettings& settings,
                const std::string& output_override);

}  // namespace franchise
