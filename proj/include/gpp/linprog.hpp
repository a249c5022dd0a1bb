#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "gpp/algebra.hpp"
#include "gpp/bounds.hpp"
#include "gpp/graph.hpp"

namespace gpp {

/// min/max  c.y + c0  s.t.  A_eq y = b_eq,  A_neq y >= b_neq,  y >= 0.
struct LinearProgram {
  Eigen::VectorXd c;
  double c0 = 0;
  Sense sense = Sense::Minimize;
  Eigen::MatrixXd a_eq;    // may have zero rows
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd a_neq;   // may have zero rows
  Eigen::VectorXd b_neq;

  int vars() const { return static_cast<int>(c.size()); }
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  double value = 0;  // includes c0
  Eigen::VectorXd y;
};

/// Two-phase dense primal simplex with a Bland anti-cycling fallback.
LpSolution simplex_solve(const LinearProgram& lp);

/// One aggregated constraint over the class variables y_c (one variable per
/// transpose pair of non-diagonal classes; `var_class` maps each class to its
/// variable slot).
struct AggregatedConstraint {
  enum class Kind { Triangle, IndependentSet };
  Kind kind;
  std::array<int, 3> type;       // (i, j, h) class indices
  Eigen::VectorXd coefficients;  // over class variables
  double rhs;                    // Triangle: coeff.y <= rhs; IndependentSet: >=
};

/// Variable slots for the reduced problems: one per non-diagonal class,
/// merging each class with its transpose (Y is symmetric).
struct ClassVariables {
  std::vector<int> slot_of_class;            // -1 for diagonal classes
  std::vector<std::vector<int>> classes_in;  // slot -> classes
  int count = 0;
};

ClassVariables class_variables(const CoherentConfiguration& cc);

/// Aggregation of y_ab + y_ac <= 1 + y_bc over all triangles of one type.
std::vector<AggregatedConstraint> aggregate_triangles(const CoherentConfiguration& cc);

/// Aggregation of sum_{a<b in W} y_ab >= 1 over |W| = 3; valid for k == 2.
std::vector<AggregatedConstraint> aggregate_independent_sets(const CoherentConfiguration& cc);

/// The two-variable LP realization of the SDP bound for a strongly regular
/// graph; agrees with srg_bound.
BoundResult lp_srg(const SrgParameters& params, const PartitionSpec& spec);

/// Three-variable LP realizations for Johnson / Kneser graphs on triples
/// (v >= 6); `extra` rows, when given, are appended (e.g. aggregated
/// independent-set constraints from the J(v,3) scheme).
BoundResult lp_johnson(int v, const PartitionSpec& spec,
                       const std::vector<AggregatedConstraint>* extra = nullptr);
BoundResult lp_kneser(int v, const PartitionSpec& spec,
                      const std::vector<AggregatedConstraint>* extra = nullptr);

/// Plain-text tableau of an LP, for --dump-lp.
std::string format_lp(const LinearProgram& lp);

/// The LP actually used by lp_johnson / lp_kneser (exposed for inspection).
LinearProgram johnson_kneser_lp(int v, const PartitionSpec& spec, bool kneser,
                                const std::vector<AggregatedConstraint>* extra);

}  // namespace gpp
