#include <doctest.h>

#include <climits>
#include <cstdio>
#include <fstream>
#include <queue>
#include <set>

#include "gpp/graph.hpp"

using namespace gpp;

namespace {

// independent subset enumeration used as an oracle for the subset generators
std::vector<std::set<int>> all_subsets(int v, int d) {
  std::vector<std::set<int>> out;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    out.emplace_back(idx.begin(), idx.end());
    int i = d - 1;
    while (i >= 0 && idx[i] == v - d + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

int girth(const Graph& g) {
  int best = INT_MAX;
  for (int s = 0; s < g.n(); ++s) {
    std::vector<int> dist(g.n(), -1), parent(g.n(), -1);
    dist[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y = 0; y < g.n(); ++y) {
        if (g.weight(x, y) == 0.0) continue;
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          q.push(y);
        } else if (y != parent[x]) {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  return best;
}

bool bipartite(const Graph& g) {
  std::vector<int> side(g.n(), -1);
  for (int s = 0; s < g.n(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y = 0; y < g.n(); ++y)
        if (g.weight(x, y) != 0.0) {
          if (side[y] < 0) {
            side[y] = 1 - side[x];
            q.push(y);
          } else if (side[y] == side[x])
            return false;
        }
    }
  }
  return true;
}

struct Lcg {
  unsigned long state;
  explicit Lcg(unsigned long seed) : state(seed) {}
  unsigned long next() { return state = state * 6364136223846793005ULL + 1442695040888963407ULL; }
  int uniform(int n) { return static_cast<int>((next() >> 33) % n); }
  double unit() { return double(next() >> 11) / 9007199254740992.0; }
};

Graph random_graph(Lcg& rng, int n, double p) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.unit() < p) w(i, j) = w(j, i) = 1.0;
  return Graph(std::move(w));
}

}  // namespace

TEST_CASE("johnson generator matches subset enumeration") {
  auto g = johnson_graph(5, 2);
  CHECK(g.n() == 10);
  auto subs = all_subsets(5, 2);
  for (int i = 0; i < 10; ++i) {
    CHECK(g.degree(i) == 6);
    for (int j = 0; j < 10; ++j) {
      std::set<int> inter;
      for (int x : subs[i])
        if (subs[j].count(x)) inter.insert(x);
      bool adj = (i != j) && inter.size() == 1;
      CHECK(g.has_edge(i, j) == adj);
    }
  }
  CHECK(johnson_graph(6, 2).n() == 15);
  CHECK(johnson_graph(6, 2).degree(0) == 8);
  auto j73 = johnson_graph(7, 3);
  CHECK(j73.n() == 35);
  for (int i = 0; i < 35; ++i) CHECK(j73.degree(i) == 12);
  CHECK_THROWS_AS(johnson_graph(5, 3), invalid_input);
  CHECK_THROWS_AS(johnson_graph(1, 1), invalid_input);
}

TEST_CASE("kneser generator") {
  auto pet = kneser_graph(5, 2);
  CHECK(pet.n() == 10);
  for (int i = 0; i < 10; ++i) CHECK(pet.degree(i) == 3);
  CHECK(girth(pet) == 5);
  auto k92 = kneser_graph(9, 2);
  CHECK(k92.n() == 36);
  CHECK(k92.degree(0) == 21);
  auto k63 = kneser_graph(6, 3);
  CHECK(k63.n() == 20);
  for (int i = 0; i < 20; ++i) CHECK(k63.degree(i) == 1);  // perfect matching
}

TEST_CASE("grid, cycle, multipartite, shrikhande, product") {
  auto c4 = grid_graph(2, 2);
  CHECK(c4.edge_count() == 4);
  CHECK(girth(c4) == 4);
  auto big = grid_graph(9, 9);
  CHECK(big.n() == 81);
  CHECK(big.edge_count() == 144);
  auto path = grid_graph(1, 5);
  CHECK(path.edge_count() == 4);
  CHECK(path.degree(0) == 1);

  auto pent = cycle_graph(5);
  auto srg = detect_srg(pent);
  REQUIRE(srg.has_value());
  CHECK(srg->kappa == 2);
  CHECK(srg->lam == 0);
  CHECK(srg->mu == 1);

  auto k4 = complete_multipartite({1, 1, 1, 1});
  CHECK(k4.edge_count() == 6);
  auto k23 = complete_multipartite({3, 2});
  CHECK(k23.edge_count() == 6);
  CHECK(bipartite(k23));

  auto shr = shrikhande_graph();
  auto sp = detect_srg(shr);
  REQUIRE(sp.has_value());
  CHECK(sp->n == 16);
  CHECK(sp->kappa == 6);
  CHECK(sp->lam == 2);
  CHECK(sp->mu == 2);

  auto doob = cartesian_product(shr, k4);
  CHECK(doob.n() == 64);
  for (int i = 0; i < 64; ++i) CHECK(doob.degree(i) == 9);
}

TEST_CASE("lcf graphs") {
  auto pappus = lcf_graph(18, {5, 7, -7, 7, -7, -5}, 3);
  CHECK(pappus.n() == 18);
  for (int i = 0; i < 18; ++i) CHECK(pappus.degree(i) == 3);
  CHECK(bipartite(pappus));
  CHECK(girth(pappus) == 6);

  auto desargues = lcf_graph(20, {5, -5, 9, -9}, 5);
  CHECK(bipartite(desargues));
  CHECK(girth(desargues) == 6);

  CHECK_THROWS_AS(lcf_graph(18, {5, 7}, 3), invalid_input);            // bad length
  CHECK_THROWS_AS(lcf_graph(6, {0, 0, 0, 0, 0, 0}, 1), invalid_input); // self-loops
  CHECK_THROWS_AS(lcf_graph(6, {1, 1, 1, 1, 1, 1}, 1), invalid_input); // duplicates
}

TEST_CASE("graph file round trips") {
  auto pent = cycle_graph(5);
  std::string path = "test_pentagon.graph";
  save_graph(pent, path, GraphFormat::EdgeList);
  auto back = load_graph(path, GraphFormat::EdgeList);
  CHECK(back.weights() == pent.weights());
  save_graph(pent, path, GraphFormat::AdjacencyMatrix);
  auto back2 = load_graph(path, GraphFormat::AdjacencyMatrix);
  CHECK(back2.weights() == pent.weights());
  std::remove(path.c_str());

  {
    std::ofstream f(path);
    f << "# empty edge section\n3 0\n";
  }
  auto empty = load_graph(path, GraphFormat::EdgeList);
  CHECK(empty.n() == 3);
  CHECK(empty.edge_count() == 0);
  std::remove(path.c_str());

  {
    std::ofstream f(path);
    f << "2\n0 1\n2 0\n";  // asymmetric
  }
  CHECK_THROWS_AS(load_graph(path, GraphFormat::AdjacencyMatrix), invalid_input);
  {
    std::ofstream f(path);
    f << "3 2\n0 1\n0 9\n";  // out of range vertex on line 3
  }
  CHECK_THROWS_WITH_AS(load_graph(path, GraphFormat::EdgeList),
                       doctest::Contains(":3:"), invalid_input);
  std::remove(path.c_str());
}

TEST_CASE("petersen adjacency file equals kneser(5,2)") {
  auto pet = kneser_graph(5, 2);
  std::string path = "test_petersen.graph";
  save_graph(pet, path, GraphFormat::AdjacencyMatrix);
  auto loaded = load_graph_auto(path);
  CHECK(loaded.weights() == pet.weights());
  std::remove(path.c_str());
}

TEST_CASE("srg detection") {
  auto j62 = detect_srg(johnson_graph(6, 2));
  REQUIRE(j62.has_value());
  CHECK(j62->n == 15);
  CHECK(j62->kappa == 8);
  CHECK(j62->lam == 4);
  CHECK(j62->mu == 4);
  CHECK(j62->r == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j62->s == doctest::Approx(-2.0).epsilon(1e-12));

  auto pet = detect_srg(kneser_graph(5, 2));
  REQUIRE(pet.has_value());
  CHECK(pet->kappa == 3);
  CHECK(pet->lam == 0);
  CHECK(pet->mu == 1);
  CHECK(pet->r == doctest::Approx(1.0));
  CHECK(pet->s == doctest::Approx(-2.0));

  CHECK(!detect_srg(grid_graph(3, 3)).has_value());                  // not regular
  CHECK(!detect_srg(complete_multipartite({1, 1, 1})).has_value()); // complete
}

TEST_CASE("srg parameter identities hold on detected graphs") {
  for (auto g : {johnson_graph(6, 2), kneser_graph(5, 2), shrikhande_graph(),
                 johnson_graph(7, 2), kneser_graph(8, 2)}) {
    auto p = detect_srg(g);
    REQUIRE(p.has_value());
    // n (kappa + r s) == (kappa - s)(kappa - r)
    CHECK(p->n * (p->kappa + p->r * p->s) ==
          doctest::Approx((p->kappa - p->s) * (p->kappa - p->r)).epsilon(1e-9));
    // roots of x^2 - (lam - mu) x - (kappa - mu)
    for (double x : {p->r, p->s})
      CHECK(x * x - (p->lam - p->mu) * x - (p->kappa - p->mu) ==
            doctest::Approx(0.0).epsilon(1e-9));
    // A^2 == kappa I + lam A + mu (J - I - A)
    Eigen::MatrixXd a = g.weights();
    Eigen::MatrixXd lhs = a * a;
    Eigen::MatrixXd rhs =
        double(p->kappa) * Eigen::MatrixXd::Identity(g.n(), g.n()) + double(p->lam) * a +
        double(p->mu) * (Eigen::MatrixXd::Ones(g.n(), g.n()) -
                         Eigen::MatrixXd::Identity(g.n(), g.n()) - a);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("brute force oracle on known instances") {
  auto pent = cycle_graph(5);
  CHECK(brute_force_gpp(pent, PartitionSpec({2, 3}, Sense::Minimize)) == 2.0);
  auto k4 = complete_multipartite({1, 1, 1, 1});
  CHECK(brute_force_gpp(k4, PartitionSpec({2, 2}, Sense::Minimize)) == 4.0);
  auto c4 = cycle_graph(4);
  CHECK(brute_force_gpp(c4, PartitionSpec({2, 2}, Sense::Minimize)) == 2.0);
  CHECK(brute_force_gpp(c4, PartitionSpec({2, 2}, Sense::Maximize)) == 4.0);
  CHECK_THROWS_AS(
      brute_force_gpp(johnson_graph(7, 2), PartitionSpec({11, 10}, Sense::Minimize)),
      invalid_input);
}

TEST_CASE("oracle properties and objective identity on random instances") {
  Lcg rng(20240811);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 4 + rng.uniform(6);
    Graph g = random_graph(rng, n, 0.35 + 0.4 * rng.unit());
    std::vector<long> m;
    int left = n;
    while (left > 0) {
      int mi = 1 + rng.uniform(std::max(1, left));
      m.push_back(mi);
      left -= mi;
    }
    if (m.size() < 2) { m.back() -= 1; m.push_back(1); }
    double lo = brute_force_gpp(g, PartitionSpec(m, Sense::Minimize));
    double hi = brute_force_gpp(g, PartitionSpec(m, Sense::Maximize));
    CHECK(lo <= hi);

    // objective identity on a random feasible assignment matrix
    PartitionSpec spec(m, Sense::Minimize);
    std::vector<int> verts(n);
    for (int i = 0; i < n; ++i) verts[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(verts[i], verts[rng.uniform(i + 1)]);
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, spec.k());
    int at = 0;
    for (int p = 0; p < spec.k(); ++p)
      for (long t = 0; t < spec.parts()[p]; ++t) x(verts[at++], p) = 1.0;
    Eigen::MatrixXd a = g.weights();
    Eigen::MatrixXd j = Eigen::MatrixXd::Ones(n, n);
    double via_a = 0.5 * (a * (j - x * x.transpose())).trace();
    double via_l = 0.5 * (g.laplacian() * (x * x.transpose())).trace();
    CHECK(via_a == doctest::Approx(via_l).epsilon(1e-9));
  }
}

TEST_CASE("generator outputs are valid graphs") {
  for (auto g : {johnson_graph(7, 2), kneser_graph(7, 3), grid_graph(4, 6), cycle_graph(9),
                 shrikhande_graph(), lcf_graph(20, {5, -5, 9, -9}, 5)}) {
    CHECK(g.unweighted());
    CHECK(g.weights() == Eigen::MatrixXd(g.weights().transpose()));
    CHECK(g.weights().diagonal().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("partition spec invariants") {
  PartitionSpec s({3, 5, 2}, Sense::Minimize);
  CHECK(s.parts() == std::vector<long>{5, 3, 2});
  CHECK(s.sum_squares() == 38);
  CHECK(s.pair_product_sum() == 31);
  CHECK_THROWS_AS(PartitionSpec({5}, Sense::Minimize), invalid_input);
  CHECK_THROWS_AS(PartitionSpec({5, 0}, Sense::Minimize), invalid_input);
  CHECK_THROWS_AS(s.require_total(11), invalid_input);
}
