#include <map>

#include "gpp/linprog.hpp"

namespace gpp {

ClassVariables class_variables(const CoherentConfiguration& cc) {
  ClassVariables cv;
  cv.slot_of_class.assign(cc.rank, -1);
  for (int c = cc.num_diagonal; c < cc.rank; ++c) {
    if (cv.slot_of_class[c] >= 0) continue;
    int slot = cv.count++;
    cv.slot_of_class[c] = slot;
    cv.classes_in.push_back({c});
    int t = cc.transpose_map[c];
    if (t != c) {
      cv.slot_of_class[t] = slot;
      cv.classes_in.back().push_back(t);
    }
  }
  return cv;
}

namespace {

// Both aggregation families share the same per-type data: summing the
// pointwise inequality over all triangles of type (i, j, h) yields
//   p^i_{hj'} tr A_i Y  (+/-)-combined with  p^h_{ij} tr A_h Y  and
//   p^j_{i'h} tr A_j Y  against the constant p^i_{hj'} tr A_i J,
// and tr A_c Y = N_c y_{c'} collapses everything onto class variables.
std::vector<AggregatedConstraint> aggregate(const CoherentConfiguration& cc,
                                            AggregatedConstraint::Kind kind) {
  ClassVariables cv = class_variables(cc);
  const bool indep = kind == AggregatedConstraint::Kind::IndependentSet;
  std::map<std::vector<double>, AggregatedConstraint> dedup;
  for (int i = cc.num_diagonal; i < cc.rank; ++i)
    for (int j = cc.num_diagonal; j < cc.rank; ++j)
      for (int h = cc.num_diagonal; h < cc.rank; ++h) {
        long gate = cc.p_num(i, h, cc.transpose_map[j]);
        if (gate <= 0) continue;  // no triangle realizes this type
        Eigen::VectorXd coef = Eigen::VectorXd::Zero(cv.count);
        coef(cv.slot_of_class[cc.transpose_map[i]]) += double(gate) * cc.pair_count[i];
        coef(cv.slot_of_class[cc.transpose_map[h]]) +=
            double(cc.p_num(h, i, j)) * cc.pair_count[h];
        coef(cv.slot_of_class[cc.transpose_map[j]]) +=
            (indep ? 1.0 : -1.0) * double(cc.p_num(j, cc.transpose_map[i], h)) *
            cc.pair_count[j];
        double rhs = double(gate) * cc.pair_count[i];
        // normalize by the leading nonzero coefficient's magnitude
        double lead = 0;
        for (int t = 0; t < cv.count && lead == 0; ++t)
          if (coef(t) != 0) lead = std::abs(coef(t));
        if (lead == 0) continue;
        std::vector<double> key(cv.count + 1);
        for (int t = 0; t < cv.count; ++t)
          key[t] = std::round(coef(t) / lead * 1e12) / 1e12;
        key[cv.count] = std::round(rhs / lead * 1e12) / 1e12;
        AggregatedConstraint ac;
        ac.kind = kind;
        ac.type = {i, j, h};
        ac.coefficients = coef;
        ac.rhs = rhs;
        dedup.emplace(std::move(key), std::move(ac));
      }
  std::vector<AggregatedConstraint> out;
  out.reserve(dedup.size());
  for (auto& [key, ac] : dedup) out.push_back(std::move(ac));
  return out;
}

}  // namespace

std::vector<AggregatedConstraint> aggregate_triangles(const CoherentConfiguration& cc) {
  return aggregate(cc, AggregatedConstraint::Kind::Triangle);
}

std::vector<AggregatedConstraint> aggregate_independent_sets(
    const CoherentConfiguration& cc) {
  return aggregate(cc, AggregatedConstraint::Kind::IndependentSet);
}

}  // namespace gpp
