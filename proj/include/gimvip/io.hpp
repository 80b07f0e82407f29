#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gimvip/flow.hpp"

namespace gimvip {

/// `t,w_0,...,w_{d-1},xi_norm,V` with 17 significant digits; V is left
/// empty when the sample carries no Lyapunov value.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Columns needed for plotting, read back from a trajectory CSV.
struct SeriesTable {
  std::string index_name;
  std::vector<double> index;
  std::vector<double> xi_norm;
  std::vector<std::optional<double>> v_lyap;
};

/// Throws InputError on a missing header, missing xi_norm column, ragged rows
/// or unparsable numbers, and when there are no data rows.
SeriesTable read_series_csv(std::istream& is);
SeriesTable read_series_csv(const std::string& path);

/// SVG 1.1 line chart of xi_norm (and V when present) on a log10 axis.
std::string render_svg_plot(const SeriesTable& table, const std::string& title);

/// printf("%.17g").
std::string format_double(double v);

}  // namespace gimvip
