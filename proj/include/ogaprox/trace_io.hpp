#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ogaprox/engine.hpp"

namespace ogaprox {

/// 17 significant digits: lossless double round trip through text.
inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::vector<std::string> trace_columns(const Trace& trace) {
  std::vector<std::string> cols = {"k",        "tau_k",      "sigma_k",     "theta_k",
                                   "t_k",      "x_norm",     "y_norm",      "xhat_norm",
                                   "yhat_norm", "f_ergodic", "gap_ergodic", "value_error",
                                   "lower_bound", "upper_bound", "cert_slack"};
  if (!trace.xs.empty()) {
    std::size_t nx = trace.xs[0].size();
    std::size_t ny = trace.ys[0].size();
    if (nx <= 3) {
      for (std::size_t i = 0; i < nx; ++i) cols.push_back("x_" + std::to_string(i));
      for (std::size_t i = 0; i < nx; ++i) cols.push_back("xhat_" + std::to_string(i));
    }
    if (ny <= 3) {
      for (std::size_t i = 0; i < ny; ++i) cols.push_back("y_" + std::to_string(i));
      for (std::size_t i = 0; i < ny; ++i) cols.push_back("yhat_" + std::to_string(i));
    }
  }
  return cols;
}

inline void write_trace_csv(const Trace& trace, std::ostream& out) {
  auto cols = trace_columns(trace);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out << ',';
    out << cols[i];
  }
  out << '\n';
  bool coords_x = !trace.xs.empty() && trace.xs[0].size() <= 3;
  bool coords_y = !trace.ys.empty() && trace.ys[0].size() <= 3;
  for (const auto& row : trace.rows) {
    out << row.k << ',' << format_g17(row.tau) << ',' << format_g17(row.sigma) << ','
        << format_g17(row.theta) << ',' << format_g17(row.t) << ',' << format_g17(row.x_norm)
        << ',' << format_g17(row.y_norm) << ',' << format_g17(row.xhat_norm) << ','
        << format_g17(row.yhat_norm) << ',' << format_g17(row.f_ergodic) << ','
        << format_g17(row.gap_ergodic) << ',' << format_g17(row.value_error) << ','
        << format_g17(row.lower_bound) << ',' << format_g17(row.upper_bound) << ','
        << format_g17(row.cert_slack);
    if (coords_x) {
      const Vec& x = trace.xs[static_cast<std::size_t>(row.k)];
      for (double c : x) out << ',' << format_g17(c);
      for (double c : row.xhat) out << ',' << format_g17(c);
    }
    if (coords_y) {
      const Vec& y = trace.ys[static_cast<std::size_t>(row.k)];
      for (double c : y) out << ',' << format_g17(c);
      for (double c : row.yhat) out << ',' << format_g17(c);
    }
    out << '\n';
  }
}

inline void write_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
  write_trace_csv(trace, out);
}

/// A parsed trace file: named numeric columns of equal length.
struct TraceTable {
  std::vector<std::string> columns;
  std::map<std::string, std::vector<double>> data;

  std::size_t rows() const { return data.empty() ? 0 : data.begin()->second.size(); }

  const std::vector<double>& column(const std::string& name) const {
    auto it = data.find(name);
    if (it == data.end()) throw std::runtime_error("trace is missing column: " + name);
    return it->second;
  }
};

inline TraceTable read_trace_csv(std::istream& in) {
  TraceTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file");
  {
    std::stringstream header(line);
    std::string name;
    while (std::getline(header, name, ',')) table.columns.push_back(name);
  }
  if (table.columns.empty()) throw std::runtime_error("trace has no columns");
  for (const auto& c : table.columns) table.data[c] = {};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(ss, cell, ',')) {
      if (i >= table.columns.size()) throw std::runtime_error("row has too many cells");
      table.data[table.columns[i]].push_back(std::strtod(cell.c_str(), nullptr));
      ++i;
    }
    if (i != table.columns.size()) throw std::runtime_error("row has too few cells");
  }
  return table;
}

inline TraceTable read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return read_trace_csv(in);
}

}  // namespace ogaprox
