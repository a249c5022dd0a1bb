#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gpp/graph.hpp"

namespace gpp {

enum class SolverStatus { Optimal, Inaccurate, IterationLimit, Infeasible, Unbounded };

std::string to_string(SolverStatus s);

struct ConicSolution {
  SolverStatus status = SolverStatus::Optimal;
  double primal = 0;       // objective at the returned point
  double dual = 0;         // certified dual value (IPM) or consensus estimate
  double gap = 0;
  double eq_residual = 0;  // affine feasibility
  double cone_residual = 0;
  long iterations = 0;
  Eigen::VectorXd y;       // dual-form variables
  Eigen::MatrixXd matrix;  // primal-form matrix iterate
};

/// min (or max) c.y + c0 over
///   eq_lhs y = eq_rhs,  ineq_lhs y >= ineq_rhs,  y_j >= 0 where flagged,
///   lmi[0] + sum_j y_j lmi[1+j]  PSD  (when lmi is nonempty).
struct DualFormProgram {
  Sense sense = Sense::Minimize;
  Eigen::VectorXd c;
  double c0 = 0;
  Eigen::MatrixXd eq_lhs;    // may be empty
  Eigen::VectorXd eq_rhs;
  Eigen::MatrixXd ineq_lhs;  // may be empty
  Eigen::VectorXd ineq_rhs;
  std::vector<bool> nonneg;  // empty means all free
  std::vector<Eigen::MatrixXd> lmi;  // empty, or M_0, M_1, ..., M_nvars
  std::optional<Eigen::VectorXd> interior_hint;

  int vars() const { return static_cast<int>(c.size()); }
};

struct IpmOptions {
  double gap_tol = 1e-9;
  long max_newton = 600;
  bool verbose = false;
};

/// Logarithmic-barrier path following with Newton steps; a phase-1 shift
/// finds a strictly feasible start when no usable hint is given.
ConicSolution solve_dual_form(const DualFormProgram& p, const IpmOptions& opts = {});

/// Sparse linear functional of a symmetric matrix: sum coeff * Y(i, j),
/// accumulated over the listed entries (use both (i,j) and (j,i) or double
/// the coefficient for off-diagonal terms).
struct MatrixFunctional {
  std::vector<std::tuple<int, int, double>> entries;
  double rhs = 0;
};

/// min (or max) <C, Y>/1 + c0 over symmetric Y with:
///   tr-style equalities, fixed entries, optional Y >= 0 entrywise,
///   optional inequality rows (functional <= rhs),
///   psd_scale * Y + psd_shift  PSD.
struct PrimalFormProgram {
  Sense sense = Sense::Minimize;
  int n = 0;
  Eigen::MatrixXd objective;  // C; value is <C, Y> + c0
  double c0 = 0;
  std::vector<MatrixFunctional> equalities;
  std::vector<MatrixFunctional> inequalities;          // functional <= rhs
  std::vector<std::tuple<int, int, double>> fixed;     // Y(i,j) = v (and (j,i))
  bool nonnegative = true;
  double psd_scale = 1.0;
  Eigen::MatrixXd psd_shift;  // empty means zero
  std::optional<Eigen::MatrixXd> start;
};

struct AdmmOptions {
  double tol = 1e-6;
  long max_iterations = 100000;
  double rho = 1.0;
  double over_relaxation = 1.5;
  bool verbose = false;
};

/// Three-set consensus splitting: affine subspace (cached factorization),
/// shifted PSD cone (eigendecomposition), box (nonnegativity + fixed
/// entries). The reported objective is the affine-feasible iterate's.
ConicSolution solve_primal_form(const PrimalFormProgram& p, const AdmmOptions& opts = {});

}  // namespace gpp
