#include <doctest.h>

#include <cstdio>
#include <set>

#include "gpp/algebra.hpp"

using namespace gpp;

namespace {

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

Graph random_connected(Lcg& rng, int n, double p) {
  while (true) {
    Graph g = random_graph(rng, n, p);
    if (g.components().second == 1) return g;
  }
}

}  // namespace

TEST_CASE("closure of strongly regular graphs has rank 3") {
  for (auto g : {johnson_graph(6, 2), kneser_graph(5, 2), shrikhande_graph()}) {
    auto cc = coherent_closure(g);
    CHECK(cc.rank == 3);
    CHECK(cc.num_diagonal == 1);
    CHECK(cc.commutative);
    CHECK(verify_axioms(cc));
    // classes are exactly {I, A, J - I - A}
    auto edge_classes = cc.classes_of(g);
    CHECK(edge_classes.size() == 1);
  }
}

TEST_CASE("shrikhande: closure rank 3 but 4 orbitals") {
  auto g = shrikhande_graph();
  CHECK(coherent_closure(g).rank == 3);
  auto orb = automorphism_orbitals(g);
  CHECK(orb.count == 4);
  CHECK(orb.num_diagonal == 1);
  // one edge orbital and two non-edge orbitals
  int edge_orbs = 0, nonedge_orbs = 0;
  for (int h = 1; h < orb.count; ++h) {
    auto [a, b] = orb.representatives[h];
    (g.has_edge(a, b) ? edge_orbs : nonedge_orbs)++;
  }
  CHECK(edge_orbs == 1);
  CHECK(nonedge_orbs == 2);
}

TEST_CASE("closure of johnson(7,3) is the rank-4 intersection scheme") {
  auto g = johnson_graph(7, 3);
  auto cc = coherent_closure(g);
  CHECK(cc.rank == 4);
  CHECK(cc.commutative);
  CHECK(cc.symmetric_classes());
  CHECK(verify_axioms(cc));
  // row sum identity: sum_j p^h_{ij} equals the valency of A_i for every h
  for (int h = 0; h < cc.rank; ++h)
    for (int i = 0; i < cc.rank; ++i) {
      long total = 0;
      for (int j = 0; j < cc.rank; ++j) total += cc.p_num(h, i, j);
      CHECK(total == cc.pair_count[i] / cc.n);
    }
}

TEST_CASE("intersection numbers on an SRG closure") {
  auto g = johnson_graph(6, 2);
  auto p = detect_srg(g);
  REQUIRE(p.has_value());
  auto cc = coherent_closure(g);
  int edge_class = cc.classes_of(g)[0];
  CHECK(cc.p_num(edge_class, edge_class, edge_class) == p->lam);
  // identity class behaves like a unit: p^h_{0j} == [h == j]
  for (int h = 0; h < cc.rank; ++h)
    for (int j = 0; j < cc.rank; ++j)
      CHECK(cc.p_num(h, 0, j) == (h == j ? 1 : 0));
}

TEST_CASE("verify_axioms rejects a non-coherent partition") {
  auto g = cycle_graph(6);  // distance partition of C6 is coherent; corrupt it
  auto cc = coherent_closure(g);
  CHECK(verify_axioms(cc));
  std::pair<int, int> bad{-1, -1};
  auto broken = cc;
  // merge two distinct non-diagonal classes; constancy must now fail
  REQUIRE(broken.rank >= 3);
  for (int i = 0; i < broken.n; ++i)
    for (int j = 0; j < broken.n; ++j)
      if (broken.class_of(i, j) == broken.rank - 1)
        broken.class_of(i, j) = broken.rank - 2;
  broken.rank -= 1;
  intersection_numbers(broken);
  CHECK(!verify_axioms(broken, &bad));
  CHECK(bad.first >= 0);
}

TEST_CASE("closure axioms hold for random graphs") {
  Lcg rng(7);
  for (int t = 0; t < 8; ++t) {
    int n = 5 + rng.uniform(24);
    auto g = random_graph(rng, n, 0.2 + 0.6 * rng.unit());
    auto cc = coherent_closure(g);
    CHECK(verify_axioms(cc));
  }
}

TEST_CASE("closure classes are unions of orbitals") {
  Lcg rng(99);
  std::vector<Graph> graphs = {shrikhande_graph(), kneser_graph(5, 2)};
  for (int t = 0; t < 4; ++t) graphs.push_back(random_graph(rng, 6 + rng.uniform(5), 0.5));
  for (const auto& g : graphs) {
    auto cc = coherent_closure(g);
    auto orb = automorphism_orbitals(g);
    std::map<int, std::set<int>> classes_per_orbital;
    for (int a = 0; a < g.n(); ++a)
      for (int b = 0; b < g.n(); ++b)
        classes_per_orbital[orb.class_of(a, b)].insert(cc.class_of(a, b));
    for (auto& [o, cls] : classes_per_orbital) CHECK(cls.size() == 1);
  }
}

TEST_CASE("character table of an SRG closure matches the parameter formulas") {
  auto g = johnson_graph(6, 2);
  auto p = detect_srg(g);
  REQUIRE(p.has_value());
  auto cc = coherent_closure(g);
  auto tab = character_table(cc);
  REQUIRE(tab.d == 2);
  int ac = cc.classes_of(g)[0];       // adjacency class column
  int oc = 3 - ac;                     // the other non-diagonal class
  // column of I is all ones
  for (int row = 0; row < 3; ++row) CHECK(tab.P(row, 0) == doctest::Approx(1.0));
  // valency row
  CHECK(tab.P(0, ac) == doctest::Approx(double(p->kappa)));
  CHECK(tab.P(0, oc) == doctest::Approx(double(p->n - 1 - p->kappa)));
  // restricted rows in some order: (r, -1-r) and (s, -1-s)
  std::multiset<double> got = {tab.P(1, ac), tab.P(2, ac)};
  std::multiset<double> want = {p->r, p->s};
  auto gi = got.begin();
  for (double w : want) CHECK(*gi++ == doctest::Approx(w).epsilon(1e-9));
  for (int row = 1; row < 3; ++row)
    CHECK(tab.P(row, oc) == doctest::Approx(-1.0 - tab.P(row, ac)).epsilon(1e-9));
  // multiplicities resolve to n
  CHECK(tab.multiplicities[0] == 1);
  CHECK(tab.multiplicities[0] + tab.multiplicities[1] + tab.multiplicities[2] == p->n);
}

TEST_CASE("character table of johnson(v,3) matches the polynomial formulas") {
  const int v = 7;
  auto cc = coherent_closure(johnson_graph(v, 3));
  auto tab = character_table(cc);
  REQUIRE(tab.d == 3);
  auto phi = [&](double th) { return 0.25 * (th * th - (v - 2) * th - 3.0 * (v - 3)); };
  double theta[4] = {3.0 * (v - 3), 2.0 * v - 9.0, v - 7.0, -3.0};
  // adjacency class of J(v,3) is the one with valency 3(v-3)
  int ac = -1, bc = -1, dc = -1;
  for (int c = 1; c < 4; ++c) {
    long val = cc.pair_count[c] / cc.n;
    if (val == 3 * (v - 3)) ac = c;
    else if (val == 3 * (v - 3) * (v - 4) / 2) bc = c;
    else dc = c;
  }
  REQUIRE(ac > 0);
  REQUIRE(bc > 0);
  REQUIRE(dc > 0);
  for (int row = 0; row < 4; ++row) {
    double th = tab.P(row, ac);
    CHECK(th == doctest::Approx(theta[row]).epsilon(1e-9));
    CHECK(tab.P(row, bc) == doctest::Approx(phi(th)).epsilon(1e-8));
    double last = row == 0 ? cc.n - 1.0 - th - phi(th) : -1.0 - th - phi(th);
    CHECK(tab.P(row, dc) == doctest::Approx(last).epsilon(1e-8));
  }
}

TEST_CASE("class matrices reproduce from the character table") {
  // E_j = (1/n) sum_i Q_ij A_i with Q = n P^{-1}; then A_i == sum_j P_ji E_j
  for (auto g : {johnson_graph(6, 2), johnson_graph(6, 3), cycle_graph(5)}) {
    auto cc = coherent_closure(g);
    auto tab = character_table(cc);
    int r = cc.rank;
    Eigen::MatrixXd q = double(cc.n) * tab.P.inverse();
    std::vector<Eigen::MatrixXd> idem(r);
    for (int j = 0; j < r; ++j) {
      idem[j] = Eigen::MatrixXd::Zero(cc.n, cc.n);
      for (int i = 0; i < r; ++i) idem[j] += q(i, j) / double(cc.n) * cc.class_matrix(i);
      CHECK((idem[j] * idem[j] - idem[j]).cwiseAbs().maxCoeff() < 1e-7);
    }
    for (int i = 0; i < r; ++i) {
      Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(cc.n, cc.n);
      for (int j = 0; j < r; ++j) rebuilt += tab.P(j, i) * idem[j];
      CHECK((rebuilt - cc.class_matrix(i)).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}

TEST_CASE("character table rejects non-commutative input") {
  Lcg rng(4242);
  // find a random graph with a non-commutative closure
  for (int t = 0; t < 60; ++t) {
    auto g = random_graph(rng, 7 + rng.uniform(4), 0.5);
    auto cc = coherent_closure(g);
    if (!cc.commutative) {
      CHECK_THROWS_AS(character_table(cc), invalid_input);
      return;
    }
  }
  FAIL("no non-commutative closure found in the sample");
}

TEST_CASE("laplacian algebra of the pentagon") {
  auto sp = laplacian_algebra(cycle_graph(5), true);
  REQUIRE(sp.eigenvalues.size() == 3);
  CHECK(sp.eigenvalues[0] == 0.0);
  CHECK(sp.eigenvalues[1] == doctest::Approx((5.0 - std::sqrt(5.0)) / 2).epsilon(1e-12));
  CHECK(sp.eigenvalues[2] == doctest::Approx((5.0 + std::sqrt(5.0)) / 2).epsilon(1e-12));
  CHECK(sp.multiplicities == std::vector<int>{1, 2, 2});
}

TEST_CASE("laplacian algebra idempotent identities") {
  Lcg rng(31);
  int checked = 0;
  while (checked < 12) {
    int n = 5 + rng.uniform(20);
    auto g = random_connected(rng, n, 0.3 + 0.4 * rng.unit());
    auto sp = laplacian_algebra(g, true);
    ++checked;
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd lsum = Eigen::MatrixXd::Zero(n, n);
    for (size_t i = 0; i < sp.idempotents.size(); ++i) {
      sum += sp.idempotents[i];
      lsum += sp.eigenvalues[i] * sp.idempotents[i];
      for (size_t j = 0; j < sp.idempotents.size(); ++j) {
        Eigen::MatrixXd prod = sp.idempotents[i] * sp.idempotents[j];
        if (i == j) prod -= sp.idempotents[i];
        CHECK(prod.norm() < 1e-8);
      }
    }
    CHECK((sp.idempotents[0] - Eigen::MatrixXd::Ones(n, n) / n).norm() < 1e-8);
    CHECK((sum - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-8);
    CHECK((lsum - g.laplacian()).norm() < 1e-8);
    CHECK(sp.multiplicities[0] == 1);
    int total = 0;
    for (int f : sp.multiplicities) total += f;
    CHECK(total == n);
  }
}

TEST_CASE("laplacian spectrum of products and SRGs") {
  auto doob = cartesian_product(shrikhande_graph(), complete_multipartite({1, 1, 1, 1}));
  auto sp = laplacian_algebra(doob, false);
  CHECK(sp.lambda_1() == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(sp.lambda_max() == doctest::Approx(12.0).epsilon(1e-9));

  auto g = johnson_graph(6, 2);
  auto p = detect_srg(g);
  auto spg = laplacian_algebra(g, false);
  CHECK(spg.lambda_1() == doctest::Approx(p->kappa - p->r).epsilon(1e-9));
  CHECK(spg.lambda_max() == doctest::Approx(p->kappa - p->s).epsilon(1e-9));

  Eigen::MatrixXd two = Eigen::MatrixXd::Zero(4, 4);
  two(0, 1) = two(1, 0) = 1;
  two(2, 3) = two(3, 2) = 1;
  CHECK_THROWS_WITH_AS(laplacian_algebra(Graph(two), false), doctest::Contains("2"),
                       invalid_input);
}

TEST_CASE("orbitals of small graphs") {
  auto pet = automorphism_orbitals(kneser_graph(5, 2));
  CHECK(pet.count == 3);

  auto edgeless = automorphism_orbitals(Graph(Eigen::MatrixXd::Zero(3, 3)));
  CHECK(edgeless.count == 2);
  CHECK(edgeless.num_diagonal == 1);

  // distance-transitive: one orbital per distance class
  auto papp = automorphism_orbitals(lcf_graph(18, {5, 7, -7, 7, -7, -5}, 3));
  CHECK(papp.count == 5);
  for (int h = 0; h < papp.count; ++h) CHECK(papp.transpose_map[h] == h);
}

TEST_CASE("orbital files round trip") {
  auto orb = automorphism_orbitals(shrikhande_graph());
  std::string path = "test_orbitals.txt";
  save_orbitals(orb, path);
  auto back = load_orbitals(path);
  CHECK(back.count == orb.count);
  CHECK(back.class_of == orb.class_of);
  CHECK(back.representatives == orb.representatives);
  std::remove(path.c_str());
}
