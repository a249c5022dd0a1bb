#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpp {

/// Thrown on malformed inputs (bad parameters, bad files, guard violations).
class invalid_input : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weighted simple undirected graph. The weight matrix is symmetric with a
/// zero diagonal and nonnegative entries; unweighted edges carry weight 1.
class Graph {
 public:
  explicit Graph(Eigen::MatrixXd weights);

  int n() const { return static_cast<int>(w_.rows()); }
  const Eigen::MatrixXd& weights() const { return w_; }
  double weight(int i, int j) const { return w_(i, j); }
  bool has_edge(int i, int j) const { return w_(i, j) != 0.0; }

  /// True when every entry is exactly 0 or 1.
  bool unweighted() const;

  double degree(int i) const { return w_.row(i).sum(); }
  /// Sum of all edge weights (each unordered pair counted once).
  double total_weight() const { return w_.sum() / 2.0; }
  long edge_count() const;

  /// L = Diag(A u) - A.
  Eigen::MatrixXd laplacian() const;

  /// Connected components; returns the component index per vertex and the
  /// number of components.
  std::pair<std::vector<int>, int> components() const;

 private:
  Eigen::MatrixXd w_;
};

enum class Sense { Minimize, Maximize };

std::string to_string(Sense s);

/// Part sizes m_1 >= ... >= m_k (k >= 2) plus the optimization sense.
class PartitionSpec {
 public:
  PartitionSpec(std::vector<long> sizes, Sense sense);

  const std::vector<long>& parts() const { return m_; }
  int k() const { return static_cast<int>(m_.size()); }
  Sense sense() const { return sense_; }

  long total() const;            // sum m_i
  long sum_squares() const;      // sum m_i^2
  long pair_product_sum() const; // sum_{i<j} m_i m_j

  /// Checks sum(m) == n, throws invalid_input otherwise.
  void require_total(int n) const;

 private:
  std::vector<long> m_;
  Sense sense_;
};

/// Parameters of a strongly regular graph together with the restricted
/// eigenvalues r >= 0 > s, the roots of x^2 - (lam - mu) x - (kappa - mu).
struct SrgParameters {
  long n = 0;
  long kappa = 0;
  long lam = 0;
  long mu = 0;
  double r = 0;
  double s = 0;
};

// -- generators ------------------------------------------------------------
// Subset-based generators order vertices lexicographically over the
// underlying d-subsets of {0..v-1}; the order is stable across runs.

/// Johnson graph J(v,d): d-subsets, adjacent iff they meet in d-1 elements.
Graph johnson_graph(int v, int d);

/// Kneser graph K(v,d): d-subsets, adjacent iff disjoint.
Graph kneser_graph(int v, int d);

/// rows x cols planar lattice, vertex (r,c) at index r*cols + c.
Graph grid_graph(int rows, int cols);

/// Cycle on n >= 3 vertices, i adjacent to i+-1 mod n.
Graph cycle_graph(int n);

/// Complete multipartite graph with the given part sizes; vertices of part 0
/// come first. complete_multipartite({1,...,1}) is the complete graph.
Graph complete_multipartite(const std::vector<long>& sizes);

/// Shrikhande graph on Z_4 x Z_4 (vertex (a,b) at 4a+b); two vertices are
/// adjacent when their difference is +-(1,0), +-(0,1) or +-(1,1).
Graph shrikhande_graph();

/// Cartesian product: (a,b) ~ (a',b') iff a==a' and b~b', or b==b' and a~a'.
/// Vertex (a,b) sits at index a*h.n() + b.
Graph cartesian_product(const Graph& g, const Graph& h);

/// LCF notation: Hamiltonian cycle 0..n-1 plus chord i -> i + shift[i mod s].
/// The shift list is repeated `repeats` times; the result must be cubic.
Graph lcf_graph(int n, const std::vector<int>& shifts, int repeats);

// -- file I/O ----------------------------------------------------------------

enum class GraphFormat { EdgeList, AdjacencyMatrix };

/// Edge list: first non-comment line "n e", then e lines "u v [w]" with
/// 0-based vertices. Adjacency matrix: "n" then n rows of n reals.
/// '#' starts a comment. Parse errors carry the offending line number.
Graph load_graph(const std::string& path, GraphFormat format);
void save_graph(const Graph& g, const std::string& path, GraphFormat format);

/// Reads the format from the file shape: a first data line "n e" vs "n".
Graph load_graph_auto(const std::string& path);

// -- structure ---------------------------------------------------------------

/// Returns parameters iff g is unweighted, regular, neither complete nor
/// edgeless, and common-neighbour counts are constant on edges and non-edges.
std::optional<SrgParameters> detect_srg(const Graph& g);

/// Exact optimum over all partitions with part sizes spec.parts() by
/// enumeration with pruning. Guarded to n <= 16.
double brute_force_gpp(const Graph& g, const PartitionSpec& spec);

}  // namespace gpp
