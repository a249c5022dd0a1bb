#pragma once

#include <optional>

#include "gpp/bounds.hpp"
#include "gpp/conic.hpp"
#include "gpp/linprog.hpp"

namespace gpp {

enum class ConstraintMode { None, Explicit, Aggregated };
enum class SymmetryMode { None, CoherentClosure };

struct RelaxationOptions {
  ConstraintMode triangles = ConstraintMode::None;
  ConstraintMode independent_sets = ConstraintMode::None;
  std::optional<std::pair<int, int>> fixed_zero_pair;
  SymmetryMode symmetry = SymmetryMode::None;

  double tol = 1e-6;          // splitting-solver residual target
  long max_iterations = 100000;
  bool verbose = false;
};

/// The matrix-lifting relaxation: minimize (or maximize) the cut proxy
/// tr A (J - Y) / 2 over diag(Y) = u, tr JY = sum m_i^2, kY - J PSD, Y >= 0,
/// optionally strengthened by triangle / independent-set constraints and the
/// zero-fix row for one vertex pair. With CoherentClosure symmetry the solve
/// runs over class variables; a commutative closure is further diagonalized
/// through its character table.
BoundResult gppm(const Graph& g, const PartitionSpec& spec, const RelaxationOptions& opts);

/// Full-size primal program behind gppm(symmetry = None); exposed so tests
/// can tweak single ingredients (e.g. drop entrywise nonnegativity).
PrimalFormProgram build_gppm_primal(const Graph& g, const PartitionSpec& spec,
                                    const RelaxationOptions& opts);

/// Minimum (maximum) over one zero-fixed subproblem per orbital of vertex
/// pairs; transpose-paired orbitals coincide and are solved once.
BoundResult rsfix(const Graph& g, const PartitionSpec& spec, const OrbitalPartition& orbitals,
                  const RelaxationOptions& opts, int jobs = 1);

/// Vector-lifting relaxation over Y of size n^2 x n^2 (guard n <= 20), with
/// an optional assignment of graph vertices (r1, r2) to multipartite slots
/// (s1, s2).
struct QapFixing {
  int s1, s2, r1, r2;
};
BoundResult gpp_qap(const Graph& g, const PartitionSpec& spec,
                    const std::optional<QapFixing>& fixing, const RelaxationOptions& opts);

/// Minimum (maximum) of gpp_qap over one fixing per orbital; the multipartite
/// edge is the first slot of part 1 and the first slot of part 2.
BoundResult gpp_fix(const Graph& g, const PartitionSpec& spec,
                    const OrbitalPartition& orbitals, const RelaxationOptions& opts,
                    int jobs = 1);

}  // namespace gpp
