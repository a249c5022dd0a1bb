#include <Eigen/Eigenvalues>

#include "gpp/algebra.hpp"

namespace gpp {

std::pair<double, double> LaplacianSpectrum::two_smallest_nonzero() const {
  double a = eigenvalues.at(1);
  double b = multiplicities.at(1) >= 2 ? a : eigenvalues.at(2);
  return {a, b};
}

LaplacianSpectrum laplacian_algebra(const Graph& g, bool with_idempotents) {
  auto [comp, count] = g.components();
  if (count != 1)
    throw invalid_input("laplacian_algebra: graph has " + std::to_string(count) +
                        " components; it must be connected");
  const int n = g.n();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.laplacian());
  const Eigen::VectorXd& w = es.eigenvalues();
  double tol = 1e-9 * (1.0 + w.cwiseAbs().maxCoeff());

  LaplacianSpectrum sp;
  sp.n = n;
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || w(i) - w(start) > tol) {
      double lam = w.segment(start, i - start).mean();
      sp.eigenvalues.push_back(start == 0 ? 0.0 : lam);  // lambda_0 of L is exactly 0
      sp.multiplicities.push_back(i - start);
      if (with_idempotents) {
        Eigen::MatrixXd U = es.eigenvectors().middleCols(start, i - start);
        sp.idempotents.push_back(U * U.transpose());
      }
      start = i;
    }
  }
  return sp;
}

}  // namespace gpp
