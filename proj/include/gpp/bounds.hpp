#pragma once

#include <string>
#include <vector>

#include "gpp/algebra.hpp"
#include "gpp/graph.hpp"

namespace gpp {

enum class BoundStatus { Exact, SolverOptimal, SolverInaccurate };

std::string to_string(BoundStatus s);

/// Result of one relaxation: the raw optimum, its safely rounded integer
/// (ceiling for Minimize, floor for Maximize, 1e-6 slack), and bookkeeping.
struct BoundResult {
  std::string relaxation;
  double value = 0;
  long rounded = 0;
  BoundStatus status = BoundStatus::Exact;
  std::vector<std::pair<std::string, double>> details;
  double elapsed = 0;  // seconds
};

/// rounded-value convention shared by every bound
long round_bound(double value, Sense sense);

/// The general spectral bound: (lambda_1 / n) * sum_{i<j} m_i m_j for the
/// minimum problem, lambda_d in place of lambda_1 for the maximum.
BoundResult eigenvalue_bound(const LaplacianSpectrum& spectrum, const PartitionSpec& spec);

/// Closed-form 3-partition bound (1/2) theta_1 mu_1 + (1/2) theta_2 mu_2 over
/// the two smallest nonzero Laplacian eigenvalues; Minimize with k == 3 only.
/// A negative radicand is handled by taking the real part, which averages the
/// two eigenvalues; that case is flagged SolverInaccurate.
BoundResult frw_three_partition_bound(const LaplacianSpectrum& spectrum,
                                      const PartitionSpec& spec);

/// Closed form for strongly regular graphs:
///   min:  max{ (kappa-r)/n * sum_{i<j} m_i m_j, (n(kappa+1) - sum m_i^2)/2 }
///   max:  min{ (kappa-s)/n * sum_{i<j} m_i m_j, kappa n / 2 }
BoundResult srg_bound(const SrgParameters& params, const PartitionSpec& spec);

}  // namespace gpp
