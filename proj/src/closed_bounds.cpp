#include <cmath>

#include "gpp/bounds.hpp"

namespace gpp {

std::string to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Exact: return "exact";
    case BoundStatus::SolverOptimal: return "optimal";
    default: return "inaccurate";
  }
}

long round_bound(double value, Sense sense) {
  return sense == Sense::Minimize ? std::lround(std::ceil(value - 1e-6))
                                  : std::lround(std::floor(value + 1e-6));
}

BoundResult eigenvalue_bound(const LaplacianSpectrum& spectrum, const PartitionSpec& spec) {
  spec.require_total(spectrum.n);
  double lam = spec.sense() == Sense::Minimize ? spectrum.lambda_1() : spectrum.lambda_max();
  BoundResult r;
  r.relaxation = "eig";
  r.value = lam / spectrum.n * static_cast<double>(spec.pair_product_sum());
  r.rounded = round_bound(r.value, spec.sense());
  r.status = BoundStatus::Exact;
  return r;
}

BoundResult frw_three_partition_bound(const LaplacianSpectrum& spectrum,
                                      const PartitionSpec& spec) {
  if (spec.k() != 3) throw invalid_input("frw bound: requires exactly 3 parts");
  if (spec.sense() == Sense::Maximize)
    throw invalid_input("frw bound: stated for the minimum problem only");
  spec.require_total(spectrum.n);
  const auto& m = spec.parts();
  double n = spectrum.n;
  double e2 = double(m[0]) * m[1] + double(m[0]) * m[2] + double(m[1]) * m[2];
  double radicand = double(m[0]) * m[0] * m[1] * m[1] + double(m[0]) * m[0] * m[2] * m[2] +
                    double(m[1]) * m[1] * m[2] * m[2] - n * m[0] * m[1] * m[2];
  auto [t1, t2] = spectrum.two_smallest_nonzero();
  BoundResult r;
  r.relaxation = "frw";
  if (radicand >= 0) {
    double root = std::sqrt(radicand);
    double mu1 = (e2 + root) / n, mu2 = (e2 - root) / n;
    r.value = 0.5 * t1 * mu1 + 0.5 * t2 * mu2;
    r.status = BoundStatus::Exact;
  } else {
    // complex pair: the real part averages the two eigenvalues
    r.value = 0.5 * (t1 + t2) * e2 / n;
    r.status = BoundStatus::SolverInaccurate;
  }
  r.rounded = round_bound(r.value, spec.sense());
  return r;
}

BoundResult srg_bound(const SrgParameters& p, const PartitionSpec& spec) {
  spec.require_total(static_cast<int>(p.n));
  double n = static_cast<double>(p.n);
  double pp = static_cast<double>(spec.pair_product_sum());
  double sq = static_cast<double>(spec.sum_squares());
  BoundResult r;
  r.relaxation = "srg";
  if (spec.sense() == Sense::Minimize) {
    double a = (p.kappa - p.r) / n * pp;
    double b = 0.5 * (n * (p.kappa + 1) - sq);
    r.value = std::max(a, b);
  } else {
    double a = (p.kappa - p.s) / n * pp;
    double b = 0.5 * p.kappa * n;
    r.value = std::min(a, b);
  }
  r.rounded = round_bound(r.value, spec.sense());
  r.status = BoundStatus::Exact;
  return r;
}

}  // namespace gpp
