#include <cstdio>
#include <fstream>
#include <sstream>

#include "gimvip/io.hpp"

namespace gimvip {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != cell.size()) {
    throw InputError("malformed CSV: row " + std::to_string(row) + ", column '" + column + "': '" + cell + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const Eigen::Index d = traj.samples.empty() ? 0 : traj.samples.front().w.size();
  os << "t";
  for (Eigen::Index i = 0; i < d; ++i) os << ",w_" << i;
  os << ",xi_norm,V\n";
  for (const auto& s : traj.samples) {
    os << format_double(s.t);
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << format_double(s.w[i]);
    os << ',' << format_double(s.xi_norm) << ',';
    if (s.v_lyap) os << format_double(*s.v_lyap);
    os << '\n';
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_trajectory_csv(out, traj);
}

SeriesTable read_series_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.empty()) throw InputError("malformed CSV: empty file");
  if (line.back() == '\r') line.pop_back();
  const auto header = split_row(line);
  int xi_col = -1, v_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "xi_norm") xi_col = static_cast<int>(i);
    if (header[i] == "V") v_col = static_cast<int>(i);
  }
  if (header.size() < 2 || xi_col <= 0) throw InputError("malformed CSV: header lacks an xi_norm column");

  SeriesTable table;
  table.index_name = header[0];
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size()) {
      throw InputError("malformed CSV: row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                       " cells, header has " + std::to_string(header.size()));
    }
    table.index.push_back(parse_cell(cells[0], row, header[0]));
    table.xi_norm.push_back(parse_cell(cells[static_cast<std::size_t>(xi_col)], row, "xi_norm"));
    if (v_col >= 0 && !cells[static_cast<std::size_t>(v_col)].empty()) {
      table.v_lyap.emplace_back(parse_cell(cells[static_cast<std::size_t>(v_col)], row, "V"));
    } else {
      table.v_lyap.emplace_back(std::nullopt);
    }
  }
  if (table.index.empty()) throw InputError("malformed CSV: no data rows");
  return table;
}

SeriesTable read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open CSV '" + path + "'");
  return read_series_csv(in);
}

}  // namespace gimvip
