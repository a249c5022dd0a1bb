#include <cmath>
#include <sstream>

#include "gpp/linprog.hpp"

namespace gpp {

void LinearProgram::validate() const {
  auto rows_ok = [&](const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    return a.rows() == b.size() && (a.rows() == 0 || a.cols() == c.size());
  };
  if (!rows_ok(a_eq, b_eq) || !rows_ok(a_neq, b_neq))
    throw invalid_input("lp: inconsistent dimensions");
  if (!c.allFinite() || !a_eq.allFinite() || !a_neq.allFinite() ||
      !b_eq.allFinite() || !b_neq.allFinite() || !std::isfinite(c0))
    throw invalid_input("lp: non-finite coefficient");
}

namespace {

constexpr double kTol = 1e-9;

// full-tableau simplex on  min c.x  s.t. A x = b (b >= 0), x >= 0
struct Tableau {
  Eigen::MatrixXd a;  // m x n
  Eigen::VectorXd b;  // m
  std::vector<int> basis;

  // returns false on unboundedness
  bool iterate(const Eigen::VectorXd& cost, double* objective) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    Eigen::VectorXd y(m), reduced(n);
    long iterations = 0;
    const long bland_after = 50L * (m + n) + 200;
    while (true) {
      if (++iterations > 200000L) throw invalid_input("simplex: iteration limit");
      bool bland = iterations > bland_after;
      // duals from the basis columns: solve B^T y = c_B
      Eigen::MatrixXd bmat(m, m);
      for (int i = 0; i < m; ++i) bmat.col(i) = a.col(basis[i]);
      Eigen::VectorXd cb(m);
      for (int i = 0; i < m; ++i) cb(i) = cost(basis[i]);
      y = bmat.transpose().partialPivLu().solve(cb);
      int enter = -1;
      double most = -kTol;
      for (int j = 0; j < n; ++j) {
        double rj = cost(j) - a.col(j).dot(y);
        if (rj < -kTol) {
          if (bland) { enter = j; break; }
          if (rj < most) { most = rj; enter = j; }
        }
      }
      if (enter < 0) break;  // optimal
      Eigen::VectorXd dir = bmat.partialPivLu().solve(a.col(enter));
      Eigen::VectorXd xb = bmat.partialPivLu().solve(b);
      int leave = -1;
      double best_ratio = 0;
      for (int i = 0; i < m; ++i) {
        if (dir(i) > kTol) {
          double ratio = xb(i) / dir(i);
          if (leave < 0 || ratio < best_ratio - kTol ||
              (std::abs(ratio - best_ratio) <= kTol && basis[i] < basis[leave]))
            leave = i, best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      basis[leave] = enter;
    }
    Eigen::MatrixXd bmat(m, m);
    for (int i = 0; i < m; ++i) bmat.col(i) = a.col(basis[i]);
    Eigen::VectorXd xb = bmat.partialPivLu().solve(b);
    double obj = 0;
    for (int i = 0; i < m; ++i) obj += cost(basis[i]) * xb(i);
    *objective = obj;
    return true;
  }

  Eigen::VectorXd solution(int nvars) const {
    const int m = static_cast<int>(a.rows());
    Eigen::MatrixXd bmat(m, m);
    for (int i = 0; i < m; ++i) bmat.col(i) = a.col(basis[i]);
    Eigen::VectorXd xb = bmat.partialPivLu().solve(b);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(nvars);
    for (int i = 0; i < m; ++i)
      if (basis[i] < nvars) x(basis[i]) = xb(i);
    return x;
  }
};

}  // namespace

LpSolution simplex_solve(const LinearProgram& lp) {
  lp.validate();
  const int nv = lp.vars();
  const int me = static_cast<int>(lp.a_eq.rows());
  const int mi = static_cast<int>(lp.a_neq.rows());
  const int m = me + mi;
  const int n = nv + mi;  // surplus variables for the >= rows

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(n);
  cost.head(nv) = lp.sense == Sense::Minimize ? lp.c : Eigen::VectorXd(-lp.c);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n);
  Eigen::VectorXd b(m);
  a.topLeftCorner(me, nv) = lp.a_eq;
  b.head(me) = lp.b_eq;
  a.bottomLeftCorner(mi, nv) = lp.a_neq;
  b.tail(mi) = lp.b_neq;
  for (int i = 0; i < mi; ++i) a(me + i, nv + i) = -1.0;  // A y - s = b
  for (int i = 0; i < m; ++i)
    if (b(i) < 0) { a.row(i) = -a.row(i); b(i) = -b(i); }

  LpSolution sol;
  if (m == 0) {  // only bounds: optimum at y = 0 unless some cost is negative
    for (int j = 0; j < nv; ++j)
      if (cost(j) < -kTol) { sol.status = LpStatus::Unbounded; return sol; }
    sol.y = Eigen::VectorXd::Zero(nv);
    sol.value = lp.c0;
    return sol;
  }

  // phase 1
  Tableau t;
  t.a.resize(m, n + m);
  t.a.leftCols(n) = a;
  t.a.rightCols(m) = Eigen::MatrixXd::Identity(m, m);
  t.b = b;
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) t.basis[i] = n + i;
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  double infeas = 0;
  if (!t.iterate(phase1, &infeas)) throw invalid_input("simplex: phase-1 unbounded");
  if (infeas > 1e-7) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  // pivot any artificial still basic (at zero level) out where possible
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    Eigen::MatrixXd bmat(m, m);
    for (int r = 0; r < m; ++r) bmat.col(r) = t.a.col(t.basis[r]);
    auto lu = bmat.partialPivLu();
    bool swapped = false;
    for (int j = 0; j < n && !swapped; ++j) {
      Eigen::VectorXd dir = lu.solve(t.a.col(j));
      if (std::abs(dir(i)) > 1e-7) {
        bool already = false;
        for (int r = 0; r < m; ++r) already |= (t.basis[r] == j);
        if (!already) { t.basis[i] = j; swapped = true; }
      }
    }
    // a redundant row keeps its artificial at zero; it is harmless below
  }

  // phase 2 with artificial columns pinned by prohibitive cost
  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = cost;
  phase2.tail(m).setConstant(1e12);
  double obj = 0;
  if (!t.iterate(phase2, &obj)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  sol.y = t.solution(nv);
  double val = lp.c.dot(sol.y) + lp.c0;
  sol.value = val;
  sol.status = LpStatus::Optimal;
  return sol;
}

std::string format_lp(const LinearProgram& lp) {
  std::ostringstream os;
  os.precision(12);
  os << (lp.sense == Sense::Minimize ? "min " : "max ");
  for (int j = 0; j < lp.vars(); ++j)
    os << (j ? " + " : "") << lp.c(j) << "*y" << (j + 1);
  if (lp.c0 != 0) os << " + " << lp.c0;
  os << "\n";
  auto rows = [&](const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const char* rel) {
    for (int i = 0; i < a.rows(); ++i) {
      os << "  ";
      for (int j = 0; j < a.cols(); ++j) os << (j ? " + " : "") << a(i, j) << "*y" << (j + 1);
      os << " " << rel << " " << b(i) << "\n";
    }
  };
  rows(lp.a_eq, lp.b_eq, "==");
  rows(lp.a_neq, lp.b_neq, ">=");
  os << "  y >= 0\n";
  return os.str();
}

}  // namespace gpp
