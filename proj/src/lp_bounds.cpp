#include <chrono>

#include "gpp/linprog.hpp"

namespace gpp {

namespace {

double binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (long i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
  return r;
}

BoundResult solve_as_bound(const LinearProgram& lp, const std::string& name, Sense sense) {
  auto t0 = std::chrono::steady_clock::now();
  LpSolution sol = simplex_solve(lp);
  if (sol.status != LpStatus::Optimal)
    throw invalid_input(name + ": LP " +
                        (sol.status == LpStatus::Infeasible ? "infeasible" : "unbounded"));
  BoundResult r;
  r.relaxation = name;
  r.value = sol.value;
  r.rounded = round_bound(r.value, sense);
  r.status = BoundStatus::SolverOptimal;
  for (int j = 0; j < sol.y.size(); ++j)
    r.details.push_back({"y" + std::to_string(j + 1), sol.y(j)});
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void append_aggregated(LinearProgram& lp, const std::vector<AggregatedConstraint>& extra) {
  long base = lp.a_neq.rows();
  Eigen::MatrixXd a(base + extra.size(), lp.vars());
  Eigen::VectorXd b(base + extra.size());
  a.topRows(base) = lp.a_neq;
  b.head(base) = lp.b_neq;
  for (size_t t = 0; t < extra.size(); ++t) {
    const auto& ac = extra[t];
    if (ac.coefficients.size() != lp.vars())
      throw invalid_input("aggregated constraint has wrong variable count");
    // Triangle rows are <=, flip into the >= convention of LinearProgram
    double sign = ac.kind == AggregatedConstraint::Kind::Triangle ? -1.0 : 1.0;
    a.row(base + t) = sign * ac.coefficients.transpose();
    b(base + t) = sign * ac.rhs;
  }
  lp.a_neq = std::move(a);
  lp.b_neq = std::move(b);
}

}  // namespace

BoundResult lp_srg(const SrgParameters& p, const PartitionSpec& spec) {
  spec.require_total(static_cast<int>(p.n));
  double n = static_cast<double>(p.n);
  LinearProgram lp;
  lp.sense = spec.sense();
  // objective (kappa n / 2)(1 - y1); a maximum cut maximizes the same expression
  lp.c = Eigen::VectorXd::Zero(2);
  lp.c(0) = -0.5 * p.kappa * n;
  lp.c0 = 0.5 * p.kappa * n;
  lp.a_eq = Eigen::MatrixXd(1, 2);
  lp.a_eq << double(p.kappa), double(p.n - p.kappa - 1);
  lp.b_eq = Eigen::VectorXd::Constant(1, spec.sum_squares() / n - 1.0);
  lp.a_neq = Eigen::MatrixXd(2, 2);
  lp.a_neq << p.r, -(p.r + 1), p.s, -(p.s + 1);
  lp.b_neq = Eigen::VectorXd::Constant(2, -1.0);
  return solve_as_bound(lp, "lp-srg", spec.sense());
}

LinearProgram johnson_kneser_lp(int v, const PartitionSpec& spec, bool kneser,
                                const std::vector<AggregatedConstraint>* extra) {
  if (v < 6) throw invalid_input("johnson/kneser LP: requires v >= 6");
  double n = binom(v, 3);
  spec.require_total(static_cast<int>(n));
  LinearProgram lp;
  lp.sense = spec.sense();
  lp.c = Eigen::VectorXd::Zero(3);
  if (!kneser) {
    lp.c(0) = -1.5 * n * (v - 3);
    lp.c0 = 1.5 * n * (v - 3);
  } else {
    lp.c(2) = -0.5 * n * binom(v - 3, 3);
    lp.c0 = 0.5 * n * binom(v - 3, 3);
  }
  lp.a_eq = Eigen::MatrixXd(1, 3);
  lp.a_eq << 3.0 * (v - 3), 3.0 * binom(v - 3, 2), binom(v - 3, 3);
  lp.b_eq = Eigen::VectorXd::Constant(1, spec.sum_squares() / n - 1.0);
  lp.a_neq = Eigen::MatrixXd(3, 3);
  lp.a_neq << 2.0 * v - 9, 0.5 * (v * v - 13.0 * v + 36), 0.5 * (-v * v + 9.0 * v - 20),
              v - 7.0, -2.0 * v + 11, v - 5.0,
              -3.0, 3.0, -1.0;
  lp.b_neq = Eigen::VectorXd::Constant(3, -1.0);
  if (extra) append_aggregated(lp, *extra);
  return lp;
}

BoundResult lp_johnson(int v, const PartitionSpec& spec,
                       const std::vector<AggregatedConstraint>* extra) {
  return solve_as_bound(johnson_kneser_lp(v, spec, false, extra), "lp-johnson",
                        spec.sense());
}

BoundResult lp_kneser(int v, const PartitionSpec& spec,
                      const std::vector<AggregatedConstraint>* extra) {
  return solve_as_bound(johnson_kneser_lp(v, spec, true, extra), "lp-kneser",
                        spec.sense());
}

}  // namespace gpp
