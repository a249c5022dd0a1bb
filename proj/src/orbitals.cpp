#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include "gpp/algebra.hpp"

namespace gpp {

namespace {

constexpr long kNodeBudget = 10'000'000;

// Backtracking search for graph automorphisms over colour-refined partitions.
// Both sides of a candidate mapping are refined simultaneously with shared
// signature numbering, so colour classes correspond across the two sides.
class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Graph& g) : g_(g), n_(g.n()) {
    neighbours_.resize(n_);
    for (int v = 0; v < n_; ++v)
      for (int u = 0; u < n_; ++u)
        if (g_.weight(v, u) != 0.0) neighbours_[v].push_back(u);
  }

  /// One generator per coset of the stabilizer chain; generates Aut(g).
  std::vector<std::vector<int>> generators() {
    std::vector<std::vector<int>> gens;
    std::vector<int> prefix;
    while (true) {
      std::vector<int> c1 = base_colors(prefix), c2 = c1;
      if (!refine_pair(c1, c2)) throw std::logic_error("self-refinement failed");
      int cell_color = pick_cell(c1);
      if (cell_color < 0) break;  // discrete: chain exhausted
      int v = -1;
      std::vector<int> cell;
      for (int x = 0; x < n_; ++x)
        if (c1[x] == cell_color) {
          if (v < 0) v = x;
          else cell.push_back(x);
        }
      for (int u : cell) {
        auto pins = prefix_pins(prefix);
        pins.push_back({v, u});
        std::vector<int> perm;
        if (search(pins, perm)) gens.push_back(std::move(perm));
      }
      prefix.push_back(v);
    }
    return gens;
  }

 private:
  std::vector<std::pair<int, int>> prefix_pins(const std::vector<int>& prefix) const {
    std::vector<std::pair<int, int>> pins;
    for (int v : prefix) pins.push_back({v, v});
    return pins;
  }

  std::vector<int> base_colors(const std::vector<int>& fixed) const {
    std::vector<int> c(n_, 0);
    for (size_t i = 0; i < fixed.size(); ++i) c[fixed[i]] = n_ + static_cast<int>(i);
    return c;
  }

  // first smallest non-singleton colour class, -1 when discrete
  int pick_cell(const std::vector<int>& colors) const {
    std::map<int, int> sizes;
    for (int c : colors) ++sizes[c];
    int best = -1, best_size = n_ + 1;
    for (auto& [c, s] : sizes)
      if (s > 1 && (s < best_size || (s == best_size && c < best))) best = c, best_size = s;
    return best;
  }

  bool refine_pair(std::vector<int>& c1, std::vector<int>& c2) {
    int colors = 0;
    {
      std::map<int, int> dense;
      for (int v = 0; v < n_; ++v) dense.emplace(c1[v], 0), dense.emplace(c2[v], 0);
      for (auto& [k, v] : dense) v = colors++;
      for (int v = 0; v < n_; ++v) c1[v] = dense.at(c1[v]), c2[v] = dense.at(c2[v]);
    }
    using Key = std::vector<std::pair<long, double>>;
    while (true) {
      budget_ -= n_;
      if (budget_ < 0)
        throw search_budget_exceeded(
            "automorphism search budget exceeded; supply an orbital file");
      auto key_of = [&](const std::vector<int>& c, int v) {
        Key key;
        key.reserve(neighbours_[v].size() + 1);
        key.push_back({c[v], 0.0});
        for (int u : neighbours_[v]) key.push_back({c[u], g_.weight(v, u)});
        std::sort(key.begin() + 1, key.end());
        return key;
      };
      std::map<Key, int> ids;
      std::vector<Key> k1(n_), k2(n_);
      for (int v = 0; v < n_; ++v) {
        k1[v] = key_of(c1, v);
        k2[v] = key_of(c2, v);
        ids.emplace(k1[v], 0);
        ids.emplace(k2[v], 0);
      }
      int next = 0;
      for (auto& [k, id] : ids) id = next++;
      std::vector<int> h1(next, 0), h2(next, 0);
      for (int v = 0; v < n_; ++v) {
        c1[v] = ids.at(k1[v]);
        c2[v] = ids.at(k2[v]);
        ++h1[c1[v]];
        ++h2[c2[v]];
      }
      if (h1 != h2) return false;  // colour histograms must agree
      if (next == colors) return true;
      colors = next;
    }
  }

  bool search(std::vector<std::pair<int, int>> pins, std::vector<int>& out) {
    std::vector<int> c1 = base_colors({}), c2 = c1;
    for (size_t i = 0; i < pins.size(); ++i) {
      c1[pins[i].first] = n_ + static_cast<int>(i);
      c2[pins[i].second] = n_ + static_cast<int>(i);
    }
    if (!refine_pair(c1, c2)) return false;
    int cell_color = pick_cell(c1);
    if (cell_color < 0) {
      // discrete: colours define the candidate bijection
      std::vector<int> perm(n_, -1), where(2 * n_ + 2, -1);
      for (int v = 0; v < n_; ++v) where[c2[v]] = v;
      for (int v = 0; v < n_; ++v) perm[v] = where[c1[v]];
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
          if (g_.weight(a, b) != g_.weight(perm[a], perm[b])) return false;
      out = std::move(perm);
      return true;
    }
    int x = -1;
    for (int v = 0; v < n_ && x < 0; ++v)
      if (c1[v] == cell_color) x = v;
    for (int y = 0; y < n_; ++y) {
      if (c2[y] != cell_color) continue;
      pins.push_back({x, y});
      if (search(pins, out)) return true;
      pins.pop_back();
    }
    return false;
  }

  const Graph& g_;
  int n_;
  std::vector<std::vector<int>> neighbours_;
  long budget_ = kNodeBudget;
};

void canonicalize_orbitals(OrbitalPartition& orb) {
  const int n = orb.n;
  std::map<int, int> remap;
  for (int i = 0; i < n; ++i)
    if (!remap.count(orb.class_of(i, i))) remap.emplace(orb.class_of(i, i), static_cast<int>(remap.size()));
  orb.num_diagonal = static_cast<int>(remap.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !remap.count(orb.class_of(i, j)))
        remap.emplace(orb.class_of(i, j), static_cast<int>(remap.size()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) orb.class_of(i, j) = remap.at(orb.class_of(i, j));
  orb.count = static_cast<int>(remap.size());
  orb.representatives.assign(orb.count, {-1, -1});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (orb.representatives[orb.class_of(i, j)].first < 0)
        orb.representatives[orb.class_of(i, j)] = {i, j};
  orb.transpose_map.assign(orb.count, -1);
  for (int c = 0; c < orb.count; ++c) {
    auto [a, b] = orb.representatives[c];
    orb.transpose_map[c] = orb.class_of(b, a);
  }
}

}  // namespace

OrbitalPartition automorphism_orbitals(const Graph& g) {
  const int n = g.n();
  if (n > 128) throw invalid_input("automorphism_orbitals: guarded to n <= 128");
  AutomorphismSearch search(g);
  auto gens = search.generators();

  // orbits of the generated group on ordered pairs, scanned row-major
  OrbitalPartition orb;
  orb.n = n;
  orb.class_of = Eigen::MatrixXi::Constant(n, n, -1);
  int next = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (orb.class_of(a, b) >= 0) continue;
      int c = next++;
      std::queue<std::pair<int, int>> q;
      orb.class_of(a, b) = c;
      q.push({a, b});
      while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop();
        for (const auto& perm : gens) {
          int xx = perm[x], yy = perm[y];
          if (orb.class_of(xx, yy) < 0) {
            orb.class_of(xx, yy) = c;
            q.push({xx, yy});
          }
        }
      }
    }
  canonicalize_orbitals(orb);
  return orb;
}

OrbitalPartition load_orbitals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  std::string line;
  int lineno = 0;
  auto next_line = [&](std::istringstream& ss) {
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      ss = std::istringstream(line);
      return true;
    }
    return false;
  };
  std::istringstream ss;
  if (!next_line(ss)) throw invalid_input(path + ": empty file");
  int n = -1, t = -1;
  if (!(ss >> n >> t) || n < 1 || t < 1)
    throw invalid_input(path + ":" + std::to_string(lineno) + ": expected header 'n t'");
  OrbitalPartition orb;
  orb.n = n;
  orb.class_of = Eigen::MatrixXi::Constant(n, n, -1);
  for (long need = static_cast<long>(n) * n; need > 0; --need) {
    if (!next_line(ss))
      throw invalid_input(path + ": missing pair lines (need one per ordered pair)");
    int a, b, h;
    if (!(ss >> a >> b >> h) || a < 0 || a >= n || b < 0 || b >= n || h < 0 || h >= t)
      throw invalid_input(path + ":" + std::to_string(lineno) + ": expected 'a b h'");
    if (orb.class_of(a, b) >= 0)
      throw invalid_input(path + ":" + std::to_string(lineno) + ": duplicate pair");
    orb.class_of(a, b) = h;
  }
  // diagonal/off-diagonal classes must not mix
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && orb.class_of(i, j) == orb.class_of(i, i))
        throw invalid_input(path + ": class mixes diagonal and off-diagonal pairs");
  canonicalize_orbitals(orb);
  return orb;
}

void save_orbitals(const OrbitalPartition& orb, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot open " + path + " for writing");
  out << orb.n << " " << orb.count << "\n";
  for (int a = 0; a < orb.n; ++a)
    for (int b = 0; b < orb.n; ++b)
      out << a << " " << b << " " << orb.class_of(a, b) << "\n";
  if (!out) throw invalid_input("write failed for " + path);
}

}  // namespace gpp
