#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <iostream>
#include <map>

#include "gpp/conic.hpp"

namespace gpp {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// packed upper-triangular ("svec") coordinates: off-diagonal entries carry a
// factor sqrt(2) so that the Euclidean and Frobenius inner products agree
struct Packing {
  int n = 0;
  long dim = 0;

  explicit Packing(int nn) : n(nn), dim(static_cast<long>(nn) * (nn + 1) / 2) {}

  long index(int i, int j) const {  // requires i <= j
    return static_cast<long>(i) * (2 * n - i - 1) / 2 + j;
  }

  Eigen::VectorXd pack(const Eigen::MatrixXd& m) const {
    Eigen::VectorXd z(dim);
    for (int i = 0, at = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++at) z(at) = (i == j) ? m(i, j) : kSqrt2 * m(i, j);
    return z;
  }

  Eigen::MatrixXd unpack(const Eigen::VectorXd& z) const {
    Eigen::MatrixXd m(n, n);
    for (int i = 0, at = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++at) {
        double v = (i == j) ? z(at) : z(at) / kSqrt2;
        m(i, j) = m(j, i) = v;
      }
    return m;
  }
};

using SparseRow = std::vector<std::pair<long, double>>;

// merges functional entries into packed-coordinate sparse rows
SparseRow to_packed_row(const Packing& pk, const MatrixFunctional& f) {
  std::map<long, double> acc;
  for (auto [i, j, c] : f.entries) {
    if (i == j) acc[pk.index(i, i)] += c;
    else acc[pk.index(std::min(i, j), std::max(i, j))] += c / kSqrt2;
  }
  SparseRow row(acc.begin(), acc.end());
  return row;
}

}  // namespace

ConicSolution solve_primal_form(const PrimalFormProgram& p, const AdmmOptions& opts) {
  const int n = p.n;
  if (n < 1 || p.objective.rows() != n) throw invalid_input("admm: bad dimensions");
  Packing pk(n);
  const long q = static_cast<long>(p.inequalities.size());
  const long dim = pk.dim + q;
  const double flip = p.sense == Sense::Minimize ? 1.0 : -1.0;

  // fixed coordinates (values in packed scale)
  std::map<long, double> fixed;
  for (auto [i, j, v] : p.fixed) {
    long at = pk.index(std::min(i, j), std::max(i, j));
    double pv = (i == j) ? v : kSqrt2 * v;
    auto [it, fresh] = fixed.emplace(at, pv);
    if (!fresh && std::abs(it->second - pv) > 1e-12)
      throw invalid_input("admm: entry fixed twice with different values");
  }

  std::vector<long> free_of(pk.dim, -1);
  std::vector<long> free_idx;
  for (long t = 0; t < pk.dim; ++t)
    if (!fixed.count(t)) {
      free_of[t] = static_cast<long>(free_idx.size());
      free_idx.push_back(t);
    }
  const long nf = static_cast<long>(free_idx.size());
  Eigen::VectorXd fixed_vals = Eigen::VectorXd::Zero(pk.dim);
  for (auto& [at, v] : fixed) fixed_vals(at) = v;

  // equality rows restricted to the free coordinates
  const long me = static_cast<long>(p.equalities.size());
  Eigen::MatrixXd eq_free = Eigen::MatrixXd::Zero(me, nf);
  Eigen::VectorXd eq_rhs_free(me);
  std::vector<SparseRow> eq_rows(me);
  for (long r = 0; r < me; ++r) {
    eq_rows[r] = to_packed_row(pk, p.equalities[r]);
    double rhs = p.equalities[r].rhs;
    for (auto [at, c] : eq_rows[r]) {
      if (free_of[at] >= 0) eq_free(r, free_of[at]) = c;
      else rhs -= c * fixed_vals(at);
    }
    eq_rhs_free(r) = rhs;
  }

  // inequality rows (functional <= rhs) kept sparse; slack s >= 0 per row
  std::vector<SparseRow> ineq_free(q);
  Eigen::VectorXd ineq_rhs_free(q);
  for (long r = 0; r < q; ++r) {
    double rhs = p.inequalities[r].rhs;
    for (auto [at, c] : to_packed_row(pk, p.inequalities[r])) {
      if (free_of[at] >= 0) ineq_free[r].push_back({free_of[at], c});
      else rhs -= c * fixed_vals(at);
    }
    ineq_rhs_free(r) = rhs;
  }

  // cached factorization of the affine projection system
  Eigen::LDLT<Eigen::MatrixXd> gram;        // q == 0: eq_free eq_free^T
  Eigen::PartialPivLU<Eigen::MatrixXd> kkt; // q > 0: [I + R^T R, E^T; E, 0]
  if (q == 0) {
    if (me > 0) {
      gram.compute(eq_free * eq_free.transpose());
      if (gram.info() != Eigen::Success)
        throw invalid_input("admm: affine system factorization failed");
    }
  } else {
    if (nf > 6000)
      throw invalid_input("admm: inequality rows over a matrix this large are unsupported");
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nf + me, nf + me);
    k.topLeftCorner(nf, nf).setIdentity();
    for (long r = 0; r < q; ++r)
      for (auto [a, ca] : ineq_free[r])
        for (auto [b, cb] : ineq_free[r]) k(a, b) += ca * cb;
    k.topRightCorner(nf, me) = eq_free.transpose();
    k.bottomLeftCorner(me, nf) = eq_free;
    kkt.compute(k);
  }

  auto project_affine = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd vy_free(nf);
    for (long t = 0; t < nf; ++t) vy_free(t) = v(free_idx[t]);
    Eigen::VectorXd yf;
    if (q == 0) {
      yf = vy_free;
      if (me > 0) {
        Eigen::VectorXd corr = gram.solve(eq_free * vy_free - eq_rhs_free);
        yf -= eq_free.transpose() * corr;
      }
    } else {
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf + me);
      rhs.head(nf) = vy_free;
      for (long r = 0; r < q; ++r) {
        double w = ineq_rhs_free(r) - v(pk.dim + r);
        for (auto [a, c] : ineq_free[r]) rhs(a) += c * w;
      }
      rhs.segment(nf, me) = eq_rhs_free;
      yf = kkt.solve(rhs).head(nf);
    }
    Eigen::VectorXd out(dim);
    out.head(pk.dim) = fixed_vals;
    for (long t = 0; t < nf; ++t) out(free_idx[t]) = yf(t);
    for (long r = 0; r < q; ++r) {
      double s = ineq_rhs_free(r);
      for (auto [a, c] : ineq_free[r]) s -= c * yf(a);
      out(pk.dim + r) = s;
    }
    return out;
  };

  const bool shifted = p.psd_shift.size() > 0;
  auto project_psd = [&](const Eigen::VectorXd& v) {
    Eigen::MatrixXd y = pk.unpack(v.head(pk.dim));
    Eigen::MatrixXd w = p.psd_scale * y;
    if (shifted) w += p.psd_shift;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w);
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    w = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    if (shifted) w -= p.psd_shift;
    Eigen::VectorXd out = v;
    out.head(pk.dim) = pk.pack(w / p.psd_scale);
    return out;
  };

  auto project_box = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd out = v;
    if (p.nonnegative) out.head(pk.dim) = out.head(pk.dim).cwiseMax(0.0);
    for (auto& [at, val] : fixed) out(at) = val;
    if (q > 0) out.tail(q) = out.tail(q).cwiseMax(0.0);
    return out;
  };

  Eigen::VectorXd cobj = Eigen::VectorXd::Zero(dim);
  cobj.head(pk.dim) = pk.pack(flip * p.objective);

  Eigen::VectorXd zbar = Eigen::VectorXd::Zero(dim);
  if (p.start && p.start->rows() == n) zbar.head(pk.dim) = pk.pack(*p.start);
  std::array<Eigen::VectorXd, 3> z, u;
  for (auto& v : z) v = zbar;
  for (auto& v : u) v = Eigen::VectorXd::Zero(dim);

  double rho = opts.rho;
  const double gamma = opts.over_relaxation;
  ConicSolution sol;
  long it = 0;
  for (; it < opts.max_iterations; ++it) {
    Eigen::VectorXd prev = zbar;
    z[0] = project_affine(zbar - u[0] - cobj / rho);
    z[1] = project_psd(zbar - u[1]);
    z[2] = project_box(zbar - u[2]);
    if (gamma != 1.0)
      for (auto& zi : z) zi = gamma * zi + (1.0 - gamma) * prev;
    zbar = ((z[0] + u[0]) + (z[1] + u[1]) + (z[2] + u[2])) / 3.0;
    double r2 = 0, znorm2 = 0, unorm2 = 0;
    for (int i = 0; i < 3; ++i) {
      u[i] += z[i] - zbar;
      r2 += (z[i] - zbar).squaredNorm();
      znorm2 += z[i].squaredNorm();
      unorm2 += u[i].squaredNorm();
    }
    double r_norm = std::sqrt(r2);
    double d_norm = rho * std::sqrt(3.0) * (zbar - prev).norm();
    double eps_pri = opts.tol * std::max(1.0, std::sqrt(znorm2));
    double eps_dual = opts.tol * std::max(1.0, rho * std::sqrt(unorm2));
    if (r_norm <= eps_pri && d_norm <= eps_dual) break;
    if (it % 100 == 99) {
      if (r_norm > 10 * d_norm) {
        rho *= 2.0;
        for (auto& ui : u) ui /= 2.0;
      } else if (d_norm > 10 * r_norm) {
        rho /= 2.0;
        for (auto& ui : u) ui *= 2.0;
      }
    }
    if (opts.verbose && it % 1000 == 0)
      std::cerr << "admm it=" << it << " r=" << r_norm << " d=" << d_norm
                << " rho=" << rho << "\n";
  }

  // report at the affine-feasible iterate
  Eigen::MatrixXd y1 = pk.unpack(z[0].head(pk.dim));
  sol.matrix = y1;
  sol.iterations = it;
  sol.primal = p.objective.cwiseProduct(y1).sum() + p.c0;
  sol.dual = p.objective.cwiseProduct(pk.unpack(z[1].head(pk.dim))).sum() + p.c0;
  sol.gap = std::abs(sol.primal - sol.dual);
  sol.eq_residual = 0;
  for (long r = 0; r < me; ++r) {
    double lhs = 0;
    for (auto [at, c] : eq_rows[r]) lhs += c * z[0](at);
    sol.eq_residual = std::max(sol.eq_residual, std::abs(lhs - p.equalities[r].rhs));
  }
  double cone = 0;
  {
    Eigen::MatrixXd w = p.psd_scale * y1;
    if (shifted) w += p.psd_shift;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w, Eigen::EigenvaluesOnly);
    cone = std::max(cone, -es.eigenvalues()(0));
    if (p.nonnegative) cone = std::max(cone, -y1.minCoeff());
  }
  sol.cone_residual = std::max(0.0, cone);
  sol.status = (it < opts.max_iterations) ? SolverStatus::Optimal
                                          : SolverStatus::IterationLimit;
  if (opts.verbose)
    std::cerr << "admm: it=" << it << " primal=" << sol.primal
              << " cone_viol=" << sol.cone_residual << "\n";
  return sol;
}

}  // namespace gpp
