#include "gpp/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace gpp {

Graph::Graph(Eigen::MatrixXd weights) : w_(std::move(weights)) {
  if (w_.rows() != w_.cols() || w_.rows() < 1)
    throw invalid_input("graph: weight matrix must be square and nonempty");
  for (int i = 0; i < w_.rows(); ++i) {
    if (w_(i, i) != 0.0) throw invalid_input("graph: nonzero diagonal entry");
    for (int j = 0; j < w_.cols(); ++j) {
      if (w_(i, j) < 0.0) throw invalid_input("graph: negative weight");
      if (w_(i, j) != w_(j, i)) throw invalid_input("graph: asymmetric weights");
    }
  }
}

bool Graph::unweighted() const {
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (w_(i, j) != 0.0 && w_(i, j) != 1.0) return false;
  return true;
}

long Graph::edge_count() const {
  long e = 0;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      if (w_(i, j) != 0.0) ++e;
  return e;
}

Eigen::MatrixXd Graph::laplacian() const {
  Eigen::VectorXd deg = w_.rowwise().sum();
  Eigen::MatrixXd l = -w_;
  l.diagonal() = deg;
  return l;
}

std::pair<std::vector<int>, int> Graph::components() const {
  std::vector<int> comp(n(), -1);
  int count = 0;
  for (int s = 0; s < n(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = count;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y = 0; y < n(); ++y)
        if (w_(x, y) != 0.0 && comp[y] < 0) {
          comp[y] = count;
          q.push(y);
        }
    }
    ++count;
  }
  return {comp, count};
}

std::string to_string(Sense s) {
  return s == Sense::Minimize ? "min" : "max";
}

PartitionSpec::PartitionSpec(std::vector<long> sizes, Sense sense)
    : m_(std::move(sizes)), sense_(sense) {
  if (m_.size() < 2) throw invalid_input("partition: need k >= 2 parts");
  for (long mi : m_)
    if (mi < 1) throw invalid_input("partition: part sizes must be positive");
  std::sort(m_.begin(), m_.end(), std::greater<long>());
}

long PartitionSpec::total() const {
  return std::accumulate(m_.begin(), m_.end(), 0L);
}

long PartitionSpec::sum_squares() const {
  long s = 0;
  for (long mi : m_) s += mi * mi;
  return s;
}

long PartitionSpec::pair_product_sum() const {
  long t = total();
  return (t * t - sum_squares()) / 2;
}

void PartitionSpec::require_total(int n) const {
  if (total() != n)
    throw invalid_input("partition: part sizes sum to " + std::to_string(total()) +
                        ", graph has " + std::to_string(n) + " vertices");
}

// -- generators --------------------------------------------------------------

namespace {

std::vector<std::vector<int>> subsets_lex(int v, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(d);
  for (int i = 0; i < d; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = d - 1;
    while (i >= 0 && cur[i] == v - d + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < d; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  int c = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) ++c, ++i, ++j;
    else if (a[i] < b[j]) ++i;
    else ++j;
  }
  return c;
}

Graph subset_graph(int v, int d, int adjacency_overlap) {
  if (v < 2 || d < 1 || 2 * d > v)
    throw invalid_input("subset graph: require 1 <= d <= v/2 and v >= 2");
  double vertices = 1;
  for (int i = 0; i < d; ++i) vertices = vertices * (v - i) / (i + 1);
  if (vertices > 8192) throw invalid_input("subset graph: C(v,d) too large");
  auto verts = subsets_lex(v, d);
  int n = static_cast<int>(verts.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (intersection_size(verts[i], verts[j]) == adjacency_overlap)
        w(i, j) = w(j, i) = 1.0;
  return Graph(std::move(w));
}

}  // namespace

Graph johnson_graph(int v, int d) { return subset_graph(v, d, d - 1); }

Graph kneser_graph(int v, int d) { return subset_graph(v, d, 0); }

Graph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw invalid_input("grid: need rows, cols >= 1");
  int n = rows * cols;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  auto at = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) w(at(r, c), at(r, c + 1)) = w(at(r, c + 1), at(r, c)) = 1.0;
      if (r + 1 < rows) w(at(r, c), at(r + 1, c)) = w(at(r + 1, c), at(r, c)) = 1.0;
    }
  return Graph(std::move(w));
}

Graph cycle_graph(int n) {
  if (n < 3) throw invalid_input("cycle: need n >= 3");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    w(i, j) = w(j, i) = 1.0;
  }
  return Graph(std::move(w));
}

Graph complete_multipartite(const std::vector<long>& sizes) {
  if (sizes.size() < 2) throw invalid_input("multipartite: need >= 2 parts");
  long n = 0;
  for (long s : sizes) {
    if (s < 1) throw invalid_input("multipartite: part sizes must be positive");
    n += s;
  }
  if (n > 8192) throw invalid_input("multipartite: too many vertices");
  std::vector<int> part(n);
  int idx = 0;
  for (size_t p = 0; p < sizes.size(); ++p)
    for (long t = 0; t < sizes[p]; ++t) part[idx++] = static_cast<int>(p);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (part[i] != part[j]) w(i, j) = w(j, i) = 1.0;
  return Graph(std::move(w));
}

Graph shrikhande_graph() {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(16, 16);
  auto adj = [](int da, int db) {
    return (da == 1 && db == 0) || (da == 3 && db == 0) ||
           (da == 0 && db == 1) || (da == 0 && db == 3) ||
           (da == 1 && db == 1) || (da == 3 && db == 3);
  };
  for (int x = 0; x < 16; ++x)
    for (int y = 0; y < 16; ++y) {
      int da = ((x / 4) - (y / 4) + 4) % 4;
      int db = ((x % 4) - (y % 4) + 4) % 4;
      if (adj(da, db)) w(x, y) = 1.0;
    }
  return Graph(std::move(w));
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  long n = static_cast<long>(g.n()) * h.n();
  if (n > 8192) throw invalid_input("product: too many vertices");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  auto at = [&](int a, int b) { return a * h.n() + b; };
  for (int a = 0; a < g.n(); ++a)
    for (int b = 0; b < h.n(); ++b) {
      for (int b2 = 0; b2 < h.n(); ++b2)
        if (h.weight(b, b2) != 0.0) w(at(a, b), at(a, b2)) = h.weight(b, b2);
      for (int a2 = 0; a2 < g.n(); ++a2)
        if (g.weight(a, a2) != 0.0) w(at(a, b), at(a2, b)) = g.weight(a, a2);
    }
  return Graph(std::move(w));
}

Graph lcf_graph(int n, const std::vector<int>& shifts, int repeats) {
  if (n < 4 || n % 2 != 0) throw invalid_input("lcf: need even n >= 4");
  if (repeats < 1 || static_cast<long>(shifts.size()) * repeats != n)
    throw invalid_input("lcf: need n == len(shifts) * repeats");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  auto link = [&](int i, int j, const char* what) {
    if (i == j) throw invalid_input(std::string("lcf: shift creates a self-loop"));
    if (w(i, j) != 0.0)
      throw invalid_input(std::string("lcf: duplicate edge from ") + what);
    w(i, j) = w(j, i) = 1.0;
  };
  for (int i = 0; i < n; ++i) link(i, (i + 1) % n, "cycle");
  for (int i = 0; i < n; ++i) {
    int s = shifts[i % shifts.size()];
    int j = ((i + s) % n + n) % n;
    if (i == j) throw invalid_input("lcf: shift creates a self-loop");
    if (i < j) link(i, j, "chord");
  }
  for (int i = 0; i < n; ++i)
    if (w.row(i).sum() != 3.0) throw invalid_input("lcf: result is not cubic");
  return Graph(std::move(w));
}

// -- SRG detection ------------------------------------------------------------

std::optional<SrgParameters> detect_srg(const Graph& g) {
  if (!g.unweighted()) throw invalid_input("detect_srg: graph must be unweighted");
  const int n = g.n();
  if (n < 2) return std::nullopt;
  long deg0 = std::lround(g.degree(0));
  for (int i = 1; i < n; ++i)
    if (std::lround(g.degree(i)) != deg0) return std::nullopt;
  if (deg0 == 0 || deg0 == n - 1) return std::nullopt;  // edgeless or complete

  long lam = -1, mu = -1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      long common = 0;
      for (int c = 0; c < n; ++c)
        if (g.has_edge(i, c) && g.has_edge(j, c)) ++common;
      if (g.has_edge(i, j)) {
        if (lam < 0) lam = common;
        else if (lam != common) return std::nullopt;
      } else {
        if (mu < 0) mu = common;
        else if (mu != common) return std::nullopt;
      }
    }

  SrgParameters p;
  p.n = n;
  p.kappa = deg0;
  p.lam = lam;
  p.mu = mu;
  double disc = std::sqrt(double((lam - mu) * (lam - mu) + 4 * (p.kappa - mu)));
  p.r = 0.5 * (double(lam - mu) + disc);
  p.s = 0.5 * (double(lam - mu) - disc);
  return p;
}

}  // namespace gpp
