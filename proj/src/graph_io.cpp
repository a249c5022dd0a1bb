#include <fstream>
#include <sstream>

#include "gpp/graph.hpp"

namespace gpp {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
  throw invalid_input(path + ":" + std::to_string(line) + ": " + what);
}

// strips comments, returns the next data line or false at EOF
bool next_data_line(std::istream& in, std::string& out, int& lineno) {
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    out = raw;
    return true;
  }
  return false;
}

Graph load_edge_list(std::istream& in, const std::string& path) {
  int lineno = 0;
  std::string line;
  if (!next_data_line(in, line, lineno)) fail(path, lineno, "empty file");
  std::istringstream head(line);
  long n = -1, e = -1;
  if (!(head >> n >> e) || n < 1 || e < 0) fail(path, lineno, "expected header 'n e'");
  std::string extra;
  if (head >> extra) fail(path, lineno, "trailing tokens after 'n e'");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (long t = 0; t < e; ++t) {
    if (!next_data_line(in, line, lineno)) fail(path, lineno, "unexpected end of edge list");
    std::istringstream ss(line);
    long u = -1, v = -1;
    double wt = 1.0;
    if (!(ss >> u >> v)) fail(path, lineno, "expected edge 'u v [w]'");
    ss >> wt;
    if (u < 0 || u >= n || v < 0 || v >= n) fail(path, lineno, "vertex index out of range");
    if (u == v) fail(path, lineno, "self-loop");
    if (wt < 0) fail(path, lineno, "negative weight");
    if (w(u, v) != 0.0) fail(path, lineno, "duplicate edge");
    w(u, v) = w(v, u) = wt;
  }
  if (next_data_line(in, line, lineno)) fail(path, lineno, "trailing data after edge list");
  return Graph(std::move(w));
}

Graph load_adjacency(std::istream& in, const std::string& path) {
  int lineno = 0;
  std::string line;
  if (!next_data_line(in, line, lineno)) fail(path, lineno, "empty file");
  std::istringstream head(line);
  long n = -1;
  if (!(head >> n) || n < 1) fail(path, lineno, "expected header 'n'");
  std::string extra;
  if (head >> extra) fail(path, lineno, "trailing tokens after 'n'");
  Eigen::MatrixXd w(n, n);
  for (long i = 0; i < n; ++i) {
    if (!next_data_line(in, line, lineno)) fail(path, lineno, "unexpected end of matrix");
    std::istringstream ss(line);
    for (long j = 0; j < n; ++j)
      if (!(ss >> w(i, j))) fail(path, lineno, "expected " + std::to_string(n) + " entries");
    if (ss >> extra) fail(path, lineno, "trailing tokens in matrix row");
  }
  for (long i = 0; i < n; ++i) {
    if (w(i, i) != 0.0) fail(path, lineno, "nonzero diagonal");
    for (long j = 0; j < n; ++j) {
      if (w(i, j) < 0) fail(path, lineno, "negative weight");
      if (w(i, j) != w(j, i)) fail(path, lineno, "asymmetric matrix");
    }
  }
  return Graph(std::move(w));
}

}  // namespace

Graph load_graph(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  return format == GraphFormat::EdgeList ? load_edge_list(in, path)
                                         : load_adjacency(in, path);
}

Graph load_graph_auto(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw invalid_input("cannot open " + path);
  int lineno = 0;
  std::string line;
  if (!next_data_line(probe, line, lineno)) throw invalid_input(path + ": empty file");
  std::istringstream ss(line);
  double a, b;
  bool two = static_cast<bool>(ss >> a >> b);
  return load_graph(path, two ? GraphFormat::EdgeList : GraphFormat::AdjacencyMatrix);
}

void save_graph(const Graph& g, const std::string& path, GraphFormat format) {
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot open " + path + " for writing");
  out.precision(17);
  if (format == GraphFormat::EdgeList) {
    out << g.n() << " " << g.edge_count() << "\n";
    for (int i = 0; i < g.n(); ++i)
      for (int j = i + 1; j < g.n(); ++j)
        if (g.weight(i, j) != 0.0) {
          out << i << " " << j;
          if (g.weight(i, j) != 1.0) out << " " << g.weight(i, j);
          out << "\n";
        }
  } else {
    out << g.n() << "\n";
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) out << (j ? " " : "") << g.weight(i, j);
      out << "\n";
    }
  }
  if (!out) throw invalid_input("write failed for " + path);
}

}  // namespace gpp
