#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gpp/graph.hpp"

namespace gpp {

/// Coherent configuration: a partition of the vertex-pair set into classes
/// whose indicator matrices A_i span a matrix *-algebra. Diagonal classes come
/// first in the numbering; off-diagonal classes follow in row-major order of
/// first occurrence.
struct CoherentConfiguration {
  int n = 0;
  int rank = 0;
  int num_diagonal = 0;                 // classes 0 .. num_diagonal-1 are diagonal
  Eigen::MatrixXi class_of;             // n x n class indices
  std::vector<int> transpose_map;       // class of the transposed pair
  std::vector<long> pair_count;         // number of ones in A_i
  bool commutative = false;

  // intersection numbers p^h_{ij}, stored sparse per h as (i, j) -> count
  std::vector<std::map<std::pair<int, int>, long>> p;

  bool is_diagonal(int c) const { return c < num_diagonal; }
  bool symmetric_classes() const {
    for (int c = 0; c < rank; ++c)
      if (transpose_map[c] != c) return false;
    return true;
  }
  long p_num(int h, int i, int j) const {
    auto it = p[h].find({i, j});
    return it == p[h].end() ? 0 : it->second;
  }
  /// 0/1 indicator matrix of class c.
  Eigen::MatrixXd class_matrix(int c) const;
  /// classes whose union is the edge set of g (requires g in the algebra).
  std::vector<int> classes_of(const Graph& g) const;
};

/// Smallest coherent configuration whose algebra contains the adjacency
/// matrix, computed by two-dimensional Weisfeiler-Leman refinement.
CoherentConfiguration coherent_closure(const Graph& g);

/// Recomputes p^h_{ij} from one witness pair per class.
void intersection_numbers(CoherentConfiguration& cc);

/// Re-checks the defining axioms over all pairs (intended for n <= 128).
/// Returns false and fills `counterexample` if constancy fails somewhere.
bool verify_axioms(const CoherentConfiguration& cc,
                   std::pair<int, int>* counterexample = nullptr);

/// Eigenmatrix of a commutative configuration with symmetric classes:
/// P(j, i) is the eigenvalue of A_i on the j-th common eigenspace, row 0
/// belonging to the all-ones eigenvector; remaining rows are ordered by
/// decreasing eigenvalue of A_1.
struct CharacterTable {
  int d = 0;  // number of classes (rank - 1)
  Eigen::MatrixXd P;
  std::vector<int> multiplicities;
};

CharacterTable character_table(const CoherentConfiguration& cc);

/// Distinct Laplacian eigenvalues 0 = lambda_0 < ... < lambda_d with
/// multiplicities, and optionally the idempotent eigenprojectors F_i.
struct LaplacianSpectrum {
  int n = 0;
  std::vector<double> eigenvalues;   // distinct, ascending
  std::vector<int> multiplicities;
  std::vector<Eigen::MatrixXd> idempotents;  // empty unless requested

  double lambda_1() const { return eigenvalues.at(1); }
  double lambda_max() const { return eigenvalues.back(); }
  /// Smallest two nonzero eigenvalues counted with multiplicity.
  std::pair<double, double> two_smallest_nonzero() const;
};

/// Spectrum of the Laplacian algebra; rejects disconnected graphs.
LaplacianSpectrum laplacian_algebra(const Graph& g, bool with_idempotents);

/// Orbits of the automorphism group on ordered vertex pairs.
struct OrbitalPartition {
  int n = 0;
  int count = 0;                        // total orbitals, diagonal ones first
  int num_diagonal = 0;
  Eigen::MatrixXi class_of;             // n x n orbital indices
  std::vector<std::pair<int, int>> representatives;  // per orbital
  std::vector<int> transpose_map;

  bool is_diagonal(int c) const { return c < num_diagonal; }
};

/// Thrown when the automorphism search exceeds its node budget; callers are
/// expected to supply an orbital file instead.
class search_budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact orbitals via individualization-refinement backtracking (n <= 128).
OrbitalPartition automorphism_orbitals(const Graph& g);

/// Orbital file: header "n t", then one line "a b h" per ordered pair.
OrbitalPartition load_orbitals(const std::string& path);
void save_orbitals(const OrbitalPartition& orb, const std::string& path);

}  // namespace gpp
