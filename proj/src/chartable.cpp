#include <Eigen/Eigenvalues>

#include "gpp/algebra.hpp"

namespace gpp {

namespace {

// splits the column span of U into eigenspaces of U^T M U
std::vector<Eigen::MatrixXd> split_by_eigenvalues(const Eigen::MatrixXd& U,
                                                  const Eigen::MatrixXd& M) {
  Eigen::MatrixXd B = U.transpose() * M * U;
  B = 0.5 * (B + B.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  const auto& w = es.eigenvalues();
  double tol = 1e-9 * (1.0 + w.cwiseAbs().maxCoeff());
  std::vector<Eigen::MatrixXd> out;
  int start = 0;
  for (int i = 1; i <= w.size(); ++i) {
    if (i == w.size() || w(i) - w(start) > tol) {
      out.push_back(U * es.eigenvectors().middleCols(start, i - start));
      start = i;
    }
  }
  return out;
}

}  // namespace

CharacterTable character_table(const CoherentConfiguration& cc) {
  if (!cc.commutative)
    throw invalid_input("character_table: configuration is not commutative");
  if (!cc.symmetric_classes())
    throw invalid_input("character_table: classes are not symmetric");
  const int n = cc.n;
  const int r = cc.rank;

  std::vector<Eigen::MatrixXd> mats(r);
  for (int c = 1; c < r; ++c) mats[c] = cc.class_matrix(c);

  // common eigenspaces: start from A_1 and intersect across the other classes
  std::vector<Eigen::MatrixXd> spaces = {Eigen::MatrixXd::Identity(n, n)};
  for (int c = 1; c < r; ++c) {
    if (static_cast<int>(spaces.size()) == r) break;
    std::vector<Eigen::MatrixXd> refined;
    for (const auto& U : spaces)
      for (auto& piece : split_by_eigenvalues(U, mats[c]))
        refined.push_back(std::move(piece));
    spaces = std::move(refined);
  }
  if (static_cast<int>(spaces.size()) != r)
    throw invalid_input("character_table: eigenspace count does not match rank");

  // row 0 is the all-ones eigenspace; the rest sorted by the A_1 eigenvalue
  Eigen::VectorXd u = Eigen::VectorXd::Ones(n);
  auto eigenvalue_on = [&](const Eigen::MatrixXd& U, const Eigen::MatrixXd& M) {
    return (U.transpose() * M * U).trace() / U.cols();
  };
  int j0 = 0;
  double bestproj = -1;
  for (int t = 0; t < r; ++t) {
    double pr = (spaces[t].transpose() * u).norm();
    if (pr > bestproj) bestproj = pr, j0 = t;
  }
  std::vector<int> order = {j0};
  std::vector<std::pair<double, int>> rest;
  for (int t = 0; t < r; ++t)
    if (t != j0) rest.push_back({-eigenvalue_on(spaces[t], mats[1]), t});
  std::sort(rest.begin(), rest.end());
  for (auto& [key, t] : rest) order.push_back(t);

  CharacterTable tab;
  tab.d = r - 1;
  tab.P = Eigen::MatrixXd::Zero(r, r);
  tab.multiplicities.resize(r);
  for (int row = 0; row < r; ++row) {
    const auto& U = spaces[order[row]];
    tab.multiplicities[row] = static_cast<int>(U.cols());
    tab.P(row, 0) = 1.0;
    for (int c = 1; c < r; ++c) tab.P(row, c) = eigenvalue_on(U, mats[c]);
  }
  return tab;
}

}  // namespace gpp
