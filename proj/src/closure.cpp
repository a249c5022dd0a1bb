#include <algorithm>
#include <map>

#include "gpp/algebra.hpp"

namespace gpp {

Eigen::MatrixXd CoherentConfiguration::class_matrix(int c) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (class_of(i, j) == c) m(i, j) = 1.0;
  return m;
}

std::vector<int> CoherentConfiguration::classes_of(const Graph& g) const {
  std::vector<bool> hit(rank, false), miss(rank, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      (g.has_edge(i, j) ? hit : miss)[class_of(i, j)] = true;
    }
  std::vector<int> out;
  for (int c = num_diagonal; c < rank; ++c) {
    if (hit[c] && miss[c])
      throw invalid_input("graph is not a union of configuration classes");
    if (hit[c]) out.push_back(c);
  }
  return out;
}

namespace {

// canonical renumbering: diagonal classes first, then row-major first occurrence
void canonicalize(Eigen::MatrixXi& cls, int& num_diag, int& rank) {
  const int n = static_cast<int>(cls.rows());
  std::map<int, int> remap;
  for (int i = 0; i < n; ++i)
    if (!remap.count(cls(i, i))) remap.emplace(cls(i, i), static_cast<int>(remap.size()));
  num_diag = static_cast<int>(remap.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !remap.count(cls(i, j)))
        remap.emplace(cls(i, j), static_cast<int>(remap.size()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cls(i, j) = remap.at(cls(i, j));
  rank = static_cast<int>(remap.size());
}

}  // namespace

CoherentConfiguration coherent_closure(const Graph& g) {
  if (!g.unweighted())
    throw invalid_input("coherent_closure: graph must be unweighted");
  const int n = g.n();
  Eigen::MatrixXi cls(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cls(i, j) = (i == j) ? 0 : (g.has_edge(i, j) ? 1 : 2);
  {  // dense initial codes (a complete or edgeless graph has only two)
    std::map<int, int> seen;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto [it, fresh] = seen.emplace(cls(i, j), static_cast<int>(seen.size()));
        cls(i, j) = it->second;
      }
  }
  int colors = 1 + cls.maxCoeff();

  // pair signature: own color plus the sorted multiset of color pairs along
  // all two-step walks; exact (map-keyed) to rule out hash collisions
  std::vector<std::int64_t> walks(n);
  while (true) {
    std::map<std::vector<std::int64_t>, int> sig_ids;
    Eigen::MatrixXi next(n, n);
    const std::int64_t base = colors + 1;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) walks[c] = cls(a, c) * base + cls(c, b);
        std::sort(walks.begin(), walks.end());
        std::vector<std::int64_t> key;
        key.reserve(n + 1);
        key.push_back(cls(a, b));
        key.insert(key.end(), walks.begin(), walks.end());
        auto [it, fresh] = sig_ids.emplace(std::move(key), static_cast<int>(sig_ids.size()));
        next(a, b) = it->second;
      }
    int refined = static_cast<int>(sig_ids.size());
    cls = std::move(next);
    if (refined == colors) break;  // stable: the count is otherwise strictly increasing
    colors = refined;
  }

  CoherentConfiguration cc;
  cc.n = n;
  cc.class_of = std::move(cls);
  canonicalize(cc.class_of, cc.num_diagonal, cc.rank);
  intersection_numbers(cc);
  return cc;
}

void intersection_numbers(CoherentConfiguration& cc) {
  const int n = cc.n;
  const int r = cc.rank;
  std::vector<std::pair<int, int>> witness(r, {-1, -1});
  cc.pair_count.assign(r, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int c = cc.class_of(i, j);
      ++cc.pair_count[c];
      if (witness[c].first < 0) witness[c] = {i, j};
    }
  cc.transpose_map.assign(r, -1);
  for (int c = 0; c < r; ++c)
    cc.transpose_map[c] = cc.class_of(witness[c].second, witness[c].first);

  cc.p.assign(r, {});
  for (int h = 0; h < r; ++h) {
    auto [a, b] = witness[h];
    for (int c = 0; c < n; ++c)
      ++cc.p[h][{cc.class_of(a, c), cc.class_of(c, b)}];
  }
  cc.commutative = true;
  for (int h = 0; h < r && cc.commutative; ++h)
    for (const auto& [ij, v] : cc.p[h]) {
      if (cc.p_num(h, ij.second, ij.first) != v) {
        cc.commutative = false;
        break;
      }
    }
}

bool verify_axioms(const CoherentConfiguration& cc, std::pair<int, int>* counterexample) {
  const int n = cc.n;
  // (i) diagonal classes partition the diagonal and never leak off it
  for (int i = 0; i < n; ++i) {
    if (!cc.is_diagonal(cc.class_of(i, i))) return false;
    for (int j = 0; j < n; ++j)
      if (i != j && cc.is_diagonal(cc.class_of(i, j))) return false;
  }
  // (ii) transpose closedness: the transpose class is constant per class
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cc.transpose_map[cc.class_of(i, j)] != cc.class_of(j, i)) {
        if (counterexample) *counterexample = {i, j};
        return false;
      }
  // (iii) constancy of two-step walk counts over every pair
  std::map<std::pair<int, int>, long> counts;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      counts.clear();
      for (int c = 0; c < n; ++c) ++counts[{cc.class_of(a, c), cc.class_of(c, b)}];
      if (counts != cc.p[cc.class_of(a, b)]) {
        if (counterexample) *counterexample = {a, b};
        return false;
      }
    }
  return true;
}

}  // namespace gpp
