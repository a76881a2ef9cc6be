// File formats: signal/spectrum CSV files with a one-line JSON header
// comment, matrix dumps (CSV or JSON), node-grid CSV, and the JSON form of
// the model graph. Decimals are written with 17 significant digits so a
// dump/parse round trip reproduces every double bit-for-bit.

#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tridct/aspmodel.hpp"
#include "tridct/nodegrid.hpp"
#include "tridct/xform.hpp"

namespace tridct {

inline constexpr const char* kNodeOrdering = "node-lex-kj";
inline constexpr const char* kBasisOrdering = "basis-degree-major";

/// Shortest decimal with full double round-trip fidelity.
inline std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// A signal (node ordering) or spectrum (basis ordering) on disk: a JSON
/// header comment followed by `index,value` rows.
struct SignalFile {
  int n = 0;
  std::string ordering;  // kNodeOrdering or kBasisOrdering
  Eigen::VectorXd values;
};

inline void write_signal_file(std::ostream& out, const SignalFile& file) {
  nlohmann::json header{{"n", file.n}, {"ordering", file.ordering}, {"count", file.values.size()}};
  out << "# " << header.dump() << "\n";
  for (Eigen::Index i = 0; i < file.values.size(); ++i) {
    out << i << "," << fmt_full(file.values(i)) << "\n";
  }
}

inline SignalFile read_signal_file(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw std::runtime_error("signal file: missing JSON header comment line");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line.substr(2));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("signal file: bad header JSON: ") + e.what());
  }
  SignalFile file;
  if (!header.contains("n") || !header.contains("ordering")) {
    throw std::runtime_error("signal file: header must carry \"n\" and \"ordering\"");
  }
  file.n = header.at("n").get<int>();
  file.ordering = header.at("ordering").get<std::string>();
  if (file.ordering != kNodeOrdering && file.ordering != kBasisOrdering) {
    throw std::runtime_error("signal file: unknown ordering tag \"" + file.ordering + "\"");
  }
  if (file.n < 1) throw std::runtime_error("signal file: header n must be >= 1");
  const Eigen::Index expected = static_cast<Eigen::Index>(file.n) * (file.n + 1) / 2;
  file.values.resize(expected);
  std::vector<bool> seen(static_cast<std::size_t>(expected), false);
  Eigen::Index count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("signal file: malformed row \"" + line + "\"");
    }
    Eigen::Index idx = 0;
    double value = 0.0;
    try {
      idx = std::stoll(line.substr(0, comma));
      value = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::runtime_error("signal file: malformed row \"" + line + "\"");
    }
    if (idx < 0 || idx >= expected) {
      throw std::runtime_error("signal file: row index " + std::to_string(idx) +
                               " outside 0.." + std::to_string(expected - 1));
    }
    if (seen[static_cast<std::size_t>(idx)]) {
      throw std::runtime_error("signal file: duplicate index " + std::to_string(idx));
    }
    seen[static_cast<std::size_t>(idx)] = true;
    file.values(idx) = value;
    ++count;
  }
  if (count != expected) {
    throw std::runtime_error("signal file: expected " + std::to_string(expected) +
                             " rows for n=" + std::to_string(file.n) + ", got " +
                             std::to_string(count));
  }
  return file;
}

/// CSV dump: JSON header comment, then full-precision rows in row-major order.
inline void write_matrix_csv(std::ostream& out, const std::string& name, int n,
                             const std::string& row_order, const std::string& col_order,
                             const Eigen::MatrixXd& m) {
  nlohmann::json header{{"matrix", name}, {"n", n},         {"rows", m.rows()},
                        {"cols", m.cols()}, {"row_order", row_order}, {"col_order", col_order}};
  out << "# " << header.dump() << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ",";
      out << fmt_full(m(r, c));
    }
    out << "\n";
  }
}

inline nlohmann::json matrix_to_json(const std::string& name, int n,
                                     const std::string& row_order, const std::string& col_order,
                                     const Eigen::MatrixXd& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    data.push_back(std::move(row));
  }
  return {{"matrix", name}, {"n", n},         {"rows", m.rows()},         {"cols", m.cols()},
          {"row_order", row_order}, {"col_order", col_order}, {"data", std::move(data)}};
}

/// Parses a matrix CSV produced by write_matrix_csv; header is returned too.
inline std::pair<nlohmann::json, Eigen::MatrixXd> read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw std::runtime_error("matrix file: missing JSON header comment line");
  }
  const nlohmann::json header = nlohmann::json::parse(line.substr(2));
  const Eigen::Index rows = header.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = header.at("cols").get<Eigen::Index>();
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) throw std::runtime_error("matrix file: truncated");
    std::istringstream row(line);
    std::string cell;
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!std::getline(row, cell, ',')) throw std::runtime_error("matrix file: short row");
      m(r, c) = std::stod(cell);
    }
  }
  return {header, std::move(m)};
}

/// Node grid as CSV: index,k,j,theta1,theta2,x1,x2.
inline void write_nodes_csv(std::ostream& out, const NodeGrid& grid) {
  nlohmann::json header{{"n", grid.n},
                        {"count", grid.nodes.size()},
                        {"columns", {"index", "k", "j", "theta1", "theta2", "x1", "x2"}}};
  out << "# " << header.dump() << "\n";
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const Node& nd = grid.nodes[i];
    out << i << "," << nd.k << "," << nd.j << "," << fmt_full(nd.theta.theta1) << ","
        << fmt_full(nd.theta.theta2) << "," << fmt_full(nd.x.x1) << "," << fmt_full(nd.x.x2)
        << "\n";
  }
}

inline nlohmann::json graph_to_json(const ModelGraph& graph) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const MultiIndex idx : graph.vertices) vertices.push_back({idx.k, idx.l});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"u", e.u}, {"v", e.v}, {"label", "x" + std::to_string(e.dir)}});
  }
  return {{"n", graph.n}, {"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

}  // namespace tridct
