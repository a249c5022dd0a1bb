#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>

#include "gpp/conic.hpp"

namespace gpp {

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Optimal: return "optimal";
    case SolverStatus::Inaccurate: return "inaccurate";
    case SolverStatus::IterationLimit: return "iteration-limit";
    case SolverStatus::Infeasible: return "infeasible";
    default: return "unbounded";
  }
}

namespace {

// minimize t * obj.y + barrier(y)  subject to  eq_lhs y = eq_rhs, where the
// barrier covers rows (G y > h) and an optional LMI  sum y_j M_j + M_0 > 0
struct BarrierProblem {
  Eigen::MatrixXd G;  // all linear inequality rows, unit rows included
  Eigen::VectorXd h;
  std::vector<Eigen::MatrixXd> lmi;
  Eigen::MatrixXd eq_lhs;
  Eigen::VectorXd eq_rhs;
  int nvars = 0;

  int lmi_size() const { return lmi.empty() ? 0 : static_cast<int>(lmi[0].rows()); }
  double barrier_count() const { return double(G.rows()) + lmi_size(); }

  Eigen::MatrixXd lmi_at(const Eigen::VectorXd& y) const {
    Eigen::MatrixXd m = lmi[0];
    for (int j = 0; j < nvars; ++j) m += y(j) * lmi[1 + j];
    return m;
  }

  bool strictly_feasible(const Eigen::VectorXd& y, double margin) const {
    if (eq_lhs.rows() > 0 && (eq_lhs * y - eq_rhs).cwiseAbs().maxCoeff() > 1e-8) return false;
    if (G.rows() > 0 && ((G * y - h).minCoeff() <= margin)) return false;
    if (!lmi.empty()) {
      Eigen::LLT<Eigen::MatrixXd> llt(lmi_at(y) -
                                      margin * Eigen::MatrixXd::Identity(lmi_size(), lmi_size()));
      if (llt.info() != Eigen::Success) return false;
    }
    return true;
  }

  double barrier_value(const Eigen::VectorXd& y) const {
    double phi = 0;
    if (G.rows() > 0) {
      Eigen::VectorXd s = G * y - h;
      if (s.minCoeff() <= 0) return std::numeric_limits<double>::infinity();
      phi -= s.array().log().sum();
    }
    if (!lmi.empty()) {
      Eigen::LLT<Eigen::MatrixXd> llt(lmi_at(y));
      if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
      phi -= 2.0 * Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
    }
    return phi;
  }
};

struct CenterResult {
  Eigen::VectorXd y;
  long newton_steps = 0;
  bool converged = false;
  bool diverged = false;
};

// Newton centering of t*obj + barrier from a strictly feasible start.
CenterResult center(const BarrierProblem& bp, const Eigen::VectorXd& obj, double t,
                    Eigen::VectorXd y, long max_steps,
                    const std::function<bool(const Eigen::VectorXd&)>& stop_early) {
  const int nv = bp.nvars;
  const int me = static_cast<int>(bp.eq_lhs.rows());
  CenterResult res;
  for (long it = 0; it < max_steps; ++it) {
    if (stop_early && stop_early(y)) break;
    Eigen::VectorXd grad = t * obj;
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(nv, nv);
    if (bp.G.rows() > 0) {
      Eigen::VectorXd s = bp.G * y - bp.h;
      Eigen::VectorXd inv = s.cwiseInverse();
      grad -= bp.G.transpose() * inv;
      hess += bp.G.transpose() * inv.array().square().matrix().asDiagonal() * bp.G;
    }
    std::vector<Eigen::MatrixXd> scaled;
    if (!bp.lmi.empty()) {
      Eigen::LLT<Eigen::MatrixXd> llt(bp.lmi_at(y));
      Eigen::MatrixXd L = llt.matrixL();
      scaled.resize(nv);
      for (int j = 0; j < nv; ++j) {
        Eigen::MatrixXd half = L.triangularView<Eigen::Lower>().solve(bp.lmi[1 + j]);
        scaled[j] = L.triangularView<Eigen::Lower>().solve(half.transpose());
        grad(j) -= scaled[j].trace();
      }
      for (int j = 0; j < nv; ++j)
        for (int l = j; l < nv; ++l) {
          double v = scaled[j].cwiseProduct(scaled[l]).sum();
          hess(j, l) += v;
          if (l != j) hess(l, j) += v;
        }
    }
    hess.diagonal().array() += 1e-12 * (1.0 + hess.diagonal().maxCoeff());
    Eigen::VectorXd dy(nv);
    if (me > 0) {
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(nv + me, nv + me);
      kkt.topLeftCorner(nv, nv) = hess;
      kkt.topRightCorner(nv, me) = bp.eq_lhs.transpose();
      kkt.bottomLeftCorner(me, nv) = bp.eq_lhs;
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nv + me);
      rhs.head(nv) = -grad;
      dy = kkt.partialPivLu().solve(rhs).head(nv);
    } else {
      dy = hess.ldlt().solve(-grad);
    }
    ++res.newton_steps;
    double decrement = -grad.dot(dy);
    if (decrement < 2e-10) { res.converged = true; break; }

    // step to boundary, then Armijo backtracking on the barrier objective
    double alpha = 1.0;
    if (bp.G.rows() > 0) {
      Eigen::VectorXd s = bp.G * y - bp.h;
      Eigen::VectorXd ds = bp.G * dy;
      for (int i = 0; i < s.size(); ++i)
        if (ds(i) < 0) alpha = std::min(alpha, -0.99 * s(i) / ds(i));
    }
    if (!bp.lmi.empty()) {
      Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(bp.lmi_size(), bp.lmi_size());
      for (int j = 0; j < nv; ++j) delta += dy(j) * bp.lmi[1 + j];
      Eigen::LLT<Eigen::MatrixXd> llt(bp.lmi_at(y));
      Eigen::MatrixXd L = llt.matrixL();
      Eigen::MatrixXd half = L.triangularView<Eigen::Lower>().solve(delta);
      Eigen::MatrixXd T = L.triangularView<Eigen::Lower>().solve(half.transpose());
      double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                        0.5 * (T + T.transpose()), Eigen::EigenvaluesOnly)
                        .eigenvalues()(0);
      if (lmin < 0) alpha = std::min(alpha, -0.99 / lmin);
    }
    double f0 = t * obj.dot(y) + bp.barrier_value(y);
    int backtracks = 0;
    while (backtracks < 60) {
      Eigen::VectorXd cand = y + alpha * dy;
      double f1 = t * obj.dot(cand) + bp.barrier_value(cand);
      if (f1 <= f0 - 0.25 * alpha * decrement + 1e-12 * std::abs(f0)) break;
      alpha *= 0.5;
      ++backtracks;
    }
    if (backtracks >= 60) { res.converged = true; break; }  // numerically stuck at center
    y += alpha * dy;
    if (y.norm() > 1e10) { res.diverged = true; break; }
  }
  res.y = std::move(y);
  return res;
}

// path-following driver; returns final t
double follow_path(const BarrierProblem& bp, const Eigen::VectorXd& obj,
                   Eigen::VectorXd& y, double gap_tol, long max_newton, long* used,
                   bool* diverged,
                   const std::function<bool(const Eigen::VectorXd&)>& stop_early) {
  double m = std::max(1.0, bp.barrier_count());
  double t = 1.0;
  *diverged = false;
  while (true) {
    CenterResult cr = center(bp, obj, t, y, max_newton - *used, stop_early);
    *used += cr.newton_steps;
    y = cr.y;
    if (cr.diverged) { *diverged = true; return t; }
    if (stop_early && stop_early(y)) return t;
    double scale = 1.0 + std::abs(obj.dot(y));
    if (m / t <= gap_tol * scale) return t;
    if (*used >= max_newton) return t;
    t *= 10.0;
  }
}

}  // namespace

ConicSolution solve_dual_form(const DualFormProgram& p, const IpmOptions& opts) {
  const int nv = p.vars();
  ConicSolution sol;
  const double flip = p.sense == Sense::Minimize ? 1.0 : -1.0;

  // degenerate case: no variables, the program is a feasibility check
  if (nv == 0) {
    bool ok = true;
    if (p.eq_rhs.size() > 0 && p.eq_rhs.cwiseAbs().maxCoeff() > 1e-9) ok = false;
    if (p.ineq_rhs.size() > 0 && p.ineq_rhs.maxCoeff() > 1e-9) ok = false;
    if (!p.lmi.empty()) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.lmi[0], Eigen::EigenvaluesOnly);
      if (es.eigenvalues()(0) < -1e-9) ok = false;
    }
    sol.status = ok ? SolverStatus::Optimal : SolverStatus::Infeasible;
    sol.primal = sol.dual = p.c0;
    return sol;
  }

  BarrierProblem bp;
  bp.nvars = nv;
  bp.eq_lhs = p.eq_lhs;
  bp.eq_rhs = p.eq_rhs;
  bp.lmi = p.lmi;
  {
    long rows = p.ineq_lhs.rows();
    long extra = 0;
    for (size_t j = 0; j < p.nonneg.size(); ++j) extra += p.nonneg[j] ? 1 : 0;
    bp.G.resize(rows + extra, nv);
    bp.h.resize(rows + extra);
    if (rows > 0) {
      bp.G.topRows(rows) = p.ineq_lhs;
      bp.h.head(rows) = p.ineq_rhs;
    }
    long at = rows;
    for (size_t j = 0; j < p.nonneg.size(); ++j)
      if (p.nonneg[j]) {
        bp.G.row(at).setZero();
        bp.G(at, static_cast<int>(j)) = 1.0;
        bp.h(at) = 0.0;
        ++at;
      }
  }
  Eigen::VectorXd obj = flip * p.c;

  // pure linear-equality problem: no barrier terms at all
  if (bp.G.rows() == 0 && bp.lmi.empty()) {
    if (bp.eq_lhs.rows() == 0) {
      sol.status = obj.norm() > 0 ? SolverStatus::Unbounded : SolverStatus::Optimal;
      sol.y = Eigen::VectorXd::Zero(nv);
      sol.primal = sol.dual = p.c0;
      return sol;
    }
    Eigen::VectorXd y = bp.eq_lhs.colPivHouseholderQr().solve(bp.eq_rhs);
    Eigen::VectorXd proj =
        obj - bp.eq_lhs.transpose() *
                  (bp.eq_lhs.transpose().colPivHouseholderQr().solve(obj));
    sol.status = proj.norm() > 1e-8 ? SolverStatus::Unbounded : SolverStatus::Optimal;
    sol.y = y;
    sol.primal = sol.dual = p.c.dot(y) + p.c0;
    return sol;
  }

  // strictly feasible start: the caller's hint or a phase-1 shift
  Eigen::VectorXd y;
  bool have_start = false;
  if (p.interior_hint && p.interior_hint->size() == nv &&
      bp.strictly_feasible(*p.interior_hint, 1e-12)) {
    y = *p.interior_hint;
    have_start = true;
  }
  long used = 0;
  if (!have_start) {
    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(nv);
    if (bp.eq_lhs.rows() > 0) {
      y0 = bp.eq_lhs.colPivHouseholderQr().solve(bp.eq_rhs);
      if ((bp.eq_lhs * y0 - bp.eq_rhs).cwiseAbs().maxCoeff() >
          1e-8 * (1.0 + bp.eq_rhs.cwiseAbs().maxCoeff())) {
        sol.status = SolverStatus::Infeasible;
        return sol;
      }
    }
    // extended problem over (y, s): minimize s, every barrier shifted by s
    BarrierProblem ph;
    ph.nvars = nv + 1;
    ph.G.resize(bp.G.rows(), nv + 1);
    if (bp.G.rows() > 0) {
      ph.G.leftCols(nv) = bp.G;
      ph.G.col(nv).setOnes();
      ph.h = bp.h;
    } else {
      ph.h.resize(0);
    }
    if (!bp.lmi.empty()) {
      ph.lmi = bp.lmi;
      ph.lmi.push_back(Eigen::MatrixXd::Identity(bp.lmi_size(), bp.lmi_size()));
    }
    if (bp.eq_lhs.rows() > 0) {
      ph.eq_lhs.resize(bp.eq_lhs.rows(), nv + 1);
      ph.eq_lhs.leftCols(nv) = bp.eq_lhs;
      ph.eq_lhs.col(nv).setZero();
      ph.eq_rhs = bp.eq_rhs;
    }
    double s0 = 1.0;
    if (bp.G.rows() > 0) s0 = std::max(s0, 1.0 - (bp.G * y0 - bp.h).minCoeff());
    if (!bp.lmi.empty()) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(bp.lmi_at(y0), Eigen::EigenvaluesOnly);
      s0 = std::max(s0, 1.0 - es.eigenvalues()(0));
    }
    Eigen::VectorXd z(nv + 1);
    z.head(nv) = y0;
    z(nv) = s0;
    Eigen::VectorXd ph_obj = Eigen::VectorXd::Zero(nv + 1);
    ph_obj(nv) = 1.0;
    bool diverged = false;
    follow_path(ph, ph_obj, z, 1e-10, opts.max_newton, &used, &diverged,
                [&](const Eigen::VectorXd& zz) { return zz(nv) < -1e-4; });
    y = z.head(nv);
    if (z(nv) >= -1e-9 || !bp.strictly_feasible(y, 0.0)) {
      sol.status = SolverStatus::Infeasible;
      sol.iterations = used;
      return sol;
    }
  }

  bool diverged = false;
  double t = follow_path(bp, obj, y, opts.gap_tol, opts.max_newton, &used, &diverged, nullptr);
  double m = std::max(1.0, bp.barrier_count());
  sol.y = y;
  sol.iterations = used;
  double value = p.c.dot(y) + p.c0;
  sol.primal = value;
  sol.dual = value - flip * m / t;  // certified by the barrier gap
  sol.gap = m / t;
  sol.eq_residual =
      bp.eq_lhs.rows() > 0 ? (bp.eq_lhs * y - bp.eq_rhs).cwiseAbs().maxCoeff() : 0.0;
  sol.cone_residual = 0.0;
  if (diverged) {
    sol.status = SolverStatus::Unbounded;
  } else if (sol.gap <= opts.gap_tol * (1.0 + std::abs(value)) * 10.0) {
    sol.status = SolverStatus::Optimal;
  } else {
    sol.status = used >= opts.max_newton ? SolverStatus::IterationLimit
                                         : SolverStatus::Inaccurate;
  }
  if (opts.verbose)
    std::cerr << "ipm: newton=" << used << " gap=" << sol.gap
              << " status=" << to_string(sol.status) << "\n";
  return sol;
}

}  // namespace gpp
