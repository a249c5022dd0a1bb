#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "gpp/relax.hpp"

namespace gpp {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::string relaxation_name(const char* base, const RelaxationOptions& o) {
  std::string name = base;
  if (o.triangles != ConstraintMode::None) name += "-tri";
  if (o.independent_sets != ConstraintMode::None) name += "-ind";
  return name;
}

// near an integer the splitting tolerance is tightened before rounding
bool near_rounding_boundary(double value) {
  return std::abs(value - std::round(value)) < 5e-3;
}

BoundResult finish_splitting(const std::string& name, Sense sense,
                             const ConicSolution& sol, double obj_scale, double elapsed) {
  BoundResult r;
  r.relaxation = name;
  double envelope = (sol.eq_residual + sol.cone_residual) * (1.0 + obj_scale);
  r.value = sense == Sense::Minimize ? sol.primal - envelope : sol.primal + envelope;
  r.rounded = round_bound(r.value, sense);
  r.status = sol.status == SolverStatus::Optimal ? BoundStatus::SolverOptimal
                                                 : BoundStatus::SolverInaccurate;
  r.details.push_back({"iterations", double(sol.iterations)});
  r.details.push_back({"cone_residual", sol.cone_residual});
  r.elapsed = elapsed;
  return r;
}

void check_guards(const Graph& g, const PartitionSpec& spec, const RelaxationOptions& o) {
  spec.require_total(g.n());
  if (o.fixed_zero_pair) {
    auto [a, b] = *o.fixed_zero_pair;
    if (a < 0 || b < 0 || a >= g.n() || b >= g.n() || a == b)
      throw invalid_input("gppm: invalid fixed pair");
    if (o.symmetry != SymmetryMode::None)
      throw invalid_input("gppm: a fixed pair requires symmetry=none");
    if (o.triangles == ConstraintMode::Aggregated ||
        o.independent_sets == ConstraintMode::Aggregated)
      throw invalid_input("gppm: aggregated constraints cannot be combined with a fixed pair");
  }
  if (o.symmetry == SymmetryMode::None) {
    if (o.triangles == ConstraintMode::Aggregated ||
        o.independent_sets == ConstraintMode::Aggregated)
      throw invalid_input("gppm: aggregated constraints require symmetry=closure");
  } else {
    if (o.triangles == ConstraintMode::Explicit ||
        o.independent_sets == ConstraintMode::Explicit)
      throw invalid_input("gppm: explicit constraints require symmetry=none");
  }
  if (o.independent_sets == ConstraintMode::Aggregated && spec.k() != 2)
    throw invalid_input("gppm: aggregated independent sets are valid for k == 2 only");
  if (o.independent_sets == ConstraintMode::Explicit &&
      (spec.k() + 1 > 4 || g.n() > 60))
    throw invalid_input("gppm: explicit independent sets guarded to k+1 <= 4, n <= 60");
}

}  // namespace

PrimalFormProgram build_gppm_primal(const Graph& g, const PartitionSpec& spec,
                                    const RelaxationOptions& opts) {
  const int n = g.n();
  const int k = spec.k();
  PrimalFormProgram p;
  p.sense = spec.sense();
  p.n = n;
  p.objective = -0.5 * g.weights();
  p.c0 = g.total_weight();

  MatrixFunctional trj;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) trj.entries.push_back({i, j, i == j ? 1.0 : 2.0});
  trj.rhs = double(spec.sum_squares());
  p.equalities.push_back(std::move(trj));

  for (int i = 0; i < n; ++i) p.fixed.push_back({i, i, 1.0});
  if (opts.fixed_zero_pair)
    p.fixed.push_back({opts.fixed_zero_pair->first, opts.fixed_zero_pair->second, 0.0});

  if (opts.triangles == ConstraintMode::Explicit) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          if (a == b || a == c) continue;
          MatrixFunctional f;  // y_ab + y_ac - y_bc <= 1
          f.entries = {{std::min(a, b), std::max(a, b), 1.0},
                       {std::min(a, c), std::max(a, c), 1.0},
                       {b, c, -1.0}};
          f.rhs = 1.0;
          p.inequalities.push_back(std::move(f));
        }
  }
  if (opts.independent_sets == ConstraintMode::Explicit) {
    std::vector<int> w(spec.k() + 1);
    // all (k+1)-subsets, lexicographic
    for (int i = 0; i <= k; ++i) w[i] = i;
    while (true) {
      MatrixFunctional f;  // -sum_{a<b in W} y_ab <= -1
      for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) f.entries.push_back({w[i], w[j], -1.0});
      f.rhs = -1.0;
      p.inequalities.push_back(std::move(f));
      int i = k;
      while (i >= 0 && w[i] == n - (k + 1) + i) --i;
      if (i < 0) break;
      ++w[i];
      for (int j = i + 1; j <= k; ++j) w[j] = w[j - 1] + 1;
    }
  }

  p.nonnegative = true;
  p.psd_scale = double(k);
  p.psd_shift = -Eigen::MatrixXd::Ones(n, n);
  double gamma0 = double(spec.sum_squares()) / double(n) / double(n);
  Eigen::MatrixXd start = gamma0 * Eigen::MatrixXd::Ones(n, n) +
                          (1.0 - gamma0) * Eigen::MatrixXd::Identity(n, n);
  p.start = start;
  return p;
}

namespace {

BoundResult solve_gppm_full(const Graph& g, const PartitionSpec& spec,
                            const RelaxationOptions& opts) {
  Timer timer;
  PrimalFormProgram p = build_gppm_primal(g, spec, opts);
  AdmmOptions ao;
  ao.tol = opts.tol;
  ao.max_iterations = opts.max_iterations;
  ao.verbose = opts.verbose;
  ConicSolution sol = solve_primal_form(p, ao);
  if (near_rounding_boundary(sol.primal) && ao.tol > 1e-8) {
    ao.tol = 1e-8;
    ao.max_iterations = 3 * opts.max_iterations;
    sol = solve_primal_form(p, ao);
  }
  return finish_splitting(relaxation_name("gppm", opts), spec.sense(), sol,
                          g.weights().norm(), timer.seconds());
}

// reduced solve over class variables; diagonalized when the closure is an
// association scheme with symmetric classes, ambient LMI otherwise
BoundResult solve_gppm_reduced(const Graph& g, const PartitionSpec& spec,
                               const RelaxationOptions& opts) {
  Timer timer;
  const int n = g.n();
  const int k = spec.k();
  CoherentConfiguration cc = coherent_closure(g);
  ClassVariables cv = class_variables(cc);
  const long sumsq = spec.sum_squares();

  BoundResult r;
  r.relaxation = relaxation_name("gppm", opts);

  if (sumsq == n) {  // all parts are singletons: Y = I is the only feasible point
    r.value = g.total_weight();
    r.rounded = round_bound(r.value, spec.sense());
    r.status = BoundStatus::Exact;
    r.elapsed = timer.seconds();
    return r;
  }

  // objective: total_weight - (1/2) sum_over_edge_classes N_c y_slot(c)
  std::vector<int> edge_classes = cc.classes_of(g);
  Eigen::VectorXd obj = Eigen::VectorXd::Zero(cv.count);
  for (int c : edge_classes)
    obj(cv.slot_of_class[c]) -= 0.5 * double(cc.pair_count[c]);

  DualFormProgram d;
  d.sense = spec.sense();
  d.c = obj;
  d.c0 = g.total_weight();
  d.nonneg.assign(cv.count, true);

  // tr JY = sum m_i^2 over class variables
  Eigen::VectorXd trj = Eigen::VectorXd::Zero(cv.count);
  for (int slot = 0; slot < cv.count; ++slot)
    for (int c : cv.classes_in[slot]) trj(slot) += double(cc.pair_count[c]);
  std::vector<Eigen::VectorXd> eq_rows = {trj};
  std::vector<double> eq_rhs = {double(sumsq - n)};

  std::vector<Eigen::VectorXd> ineq_rows;
  std::vector<double> ineq_rhs;
  auto add_aggregated = [&](const std::vector<AggregatedConstraint>& cons) {
    for (const auto& ac : cons) {
      double sign = ac.kind == AggregatedConstraint::Kind::Triangle ? -1.0 : 1.0;
      ineq_rows.push_back(sign * ac.coefficients);
      ineq_rhs.push_back(sign * ac.rhs);
    }
  };
  if (opts.triangles == ConstraintMode::Aggregated)
    add_aggregated(aggregate_triangles(cc));
  if (opts.independent_sets == ConstraintMode::Aggregated)
    add_aggregated(aggregate_independent_sets(cc));

  const bool scheme = cc.commutative && cc.symmetric_classes() && cc.num_diagonal == 1;
  if (scheme) {
    // LMI rows become scalar per eigenspace: 1 + sum_c P(j,c) y_c >= 0;
    // the all-ones row is implied by the trace equality
    CharacterTable tab = character_table(cc);
    for (int row = 1; row < cc.rank; ++row) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(cv.count);
      for (int c = 1; c < cc.rank; ++c) v(cv.slot_of_class[c]) += tab.P(row, c);
      ineq_rows.push_back(v);
      ineq_rhs.push_back(-1.0);
    }
  } else {
    // ambient LMI k Y - J over the symmetrized class basis
    d.lmi.push_back(double(k) * Eigen::MatrixXd::Identity(n, n) -
                    Eigen::MatrixXd::Ones(n, n));
    for (int slot = 0; slot < cv.count; ++slot) {
      Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
      for (int c : cv.classes_in[slot]) b += cc.class_matrix(c);
      d.lmi.push_back(double(k) * b);
    }
    if (long(k) * sumsq == long(n) * n) {
      // equipartition: every feasible point has (kY - J) u = 0, so the
      // all-ones direction is deflated and pinned by linear rows
      std::vector<Eigen::VectorXd> rows;
      for (int a = 0; a < n; ++a) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(cv.count);
        for (int slot = 0; slot < cv.count; ++slot)
          for (int c : cv.classes_in[slot])
            for (int b = 0; b < n; ++b)
              if (cc.class_of(a, b) == c) row(slot) += 1.0;
        bool seen = false;
        for (const auto& prev : rows)
          if ((prev - row).lpNorm<Eigen::Infinity>() < 1e-9) { seen = true; break; }
        if (!seen) rows.push_back(row);
      }
      for (const auto& row : rows) {
        eq_rows.push_back(row);
        eq_rhs.push_back(double(n) / k - 1.0);
      }
      Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n);
      e1(0) = 1.0;
      Eigen::VectorXd un = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
      Eigen::VectorXd v = e1 - un;
      Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
      if (v.norm() > 1e-12) h -= 2.0 * v * v.transpose() / v.squaredNorm();
      Eigen::MatrixXd qbasis = h.rightCols(n - 1);  // orthonormal basis of u-perp
      for (auto& m : d.lmi) m = (qbasis.transpose() * m * qbasis).eval();
    }
  }

  d.eq_lhs.resize(eq_rows.size(), cv.count);
  d.eq_rhs.resize(eq_rows.size());
  for (size_t i = 0; i < eq_rows.size(); ++i) {
    d.eq_lhs.row(i) = eq_rows[i];
    d.eq_rhs(i) = eq_rhs[i];
  }
  d.ineq_lhs.resize(ineq_rows.size(), cv.count);
  d.ineq_rhs.resize(ineq_rows.size());
  for (size_t i = 0; i < ineq_rows.size(); ++i) {
    d.ineq_lhs.row(i) = ineq_rows[i];
    d.ineq_rhs(i) = ineq_rhs[i];
  }
  double gamma0 = double(sumsq - n) / double(long(n) * n - n);
  d.interior_hint = Eigen::VectorXd::Constant(cv.count, gamma0);

  IpmOptions io;
  io.verbose = opts.verbose;
  ConicSolution sol = solve_dual_form(d, io);
  if (sol.status == SolverStatus::Infeasible || sol.status == SolverStatus::Unbounded)
    throw invalid_input("gppm reduced solve failed: " + to_string(sol.status));
  r.value = sol.primal;
  r.rounded = round_bound(r.value, spec.sense());
  r.status = sol.status == SolverStatus::Optimal ? BoundStatus::SolverOptimal
                                                 : BoundStatus::SolverInaccurate;
  r.details.push_back({"closure_rank", double(cc.rank)});
  r.details.push_back({"newton_steps", double(sol.iterations)});
  r.elapsed = timer.seconds();
  return r;
}

}  // namespace

BoundResult gppm(const Graph& g, const PartitionSpec& spec, const RelaxationOptions& opts) {
  check_guards(g, spec, opts);
  return opts.symmetry == SymmetryMode::CoherentClosure
             ? solve_gppm_reduced(g, spec, opts)
             : solve_gppm_full(g, spec, opts);
}

namespace {

// runs fn(i) for i in [0, count) on up to `jobs` threads, preserving order
template <typename Fn>
void parallel_for(int count, int jobs, Fn fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      try {
        while (true) {
          int i = next.fetch_add(1);
          if (i >= count) break;
          fn(i);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

BoundResult rsfix(const Graph& g, const PartitionSpec& spec, const OrbitalPartition& orbitals,
                  const RelaxationOptions& opts, int jobs) {
  spec.require_total(g.n());
  if (orbitals.n != g.n()) throw invalid_input("rsfix: orbitals do not match the graph");
  Timer timer;
  // one subproblem per unordered orbital: the zero-fix row is symmetric
  std::vector<int> chosen;
  for (int h = orbitals.num_diagonal; h < orbitals.count; ++h)
    if (orbitals.transpose_map[h] >= h) chosen.push_back(h);
  if (chosen.empty()) throw invalid_input("rsfix: no off-diagonal orbitals");

  std::vector<BoundResult> sub(chosen.size());
  parallel_for(static_cast<int>(chosen.size()), jobs, [&](int t) {
    RelaxationOptions o = opts;
    o.symmetry = SymmetryMode::None;
    o.triangles = ConstraintMode::None;
    o.independent_sets = ConstraintMode::None;
    o.fixed_zero_pair = orbitals.representatives[chosen[t]];
    sub[t] = gppm(g, spec, o);
  });

  BoundResult r;
  r.relaxation = "rsfix";
  bool minimize = spec.sense() == Sense::Minimize;
  r.value = sub[0].value;
  r.status = BoundStatus::SolverOptimal;
  for (size_t t = 0; t < sub.size(); ++t) {
    r.value = minimize ? std::min(r.value, sub[t].value) : std::max(r.value, sub[t].value);
    r.details.push_back({"orbital_" + std::to_string(chosen[t]), sub[t].value});
    if (sub[t].status == BoundStatus::SolverInaccurate) r.status = BoundStatus::SolverInaccurate;
  }
  r.rounded = round_bound(r.value, spec.sense());
  r.elapsed = timer.seconds();
  return r;
}

BoundResult gpp_qap(const Graph& g, const PartitionSpec& spec,
                    const std::optional<QapFixing>& fixing, const RelaxationOptions& opts) {
  const int n = g.n();
  spec.require_total(n);
  if (n > 20) throw invalid_input("gpp_qap: guarded to n <= 20");
  if (fixing && (fixing->r1 == fixing->r2 || fixing->s1 == fixing->s2))
    throw invalid_input("gpp_qap: fixing needs distinct vertices and distinct slots");
  Timer timer;

  // slot p of the multipartite graph: slots are grouped by part
  std::vector<int> part_of_slot(n);
  {
    int at = 0;
    for (int p = 0; p < spec.k(); ++p)
      for (long t = 0; t < spec.parts()[p]; ++t) part_of_slot[at++] = p;
  }
  const long nn = static_cast<long>(n) * n;
  PrimalFormProgram prog;
  prog.sense = spec.sense();
  prog.n = static_cast<int>(nn);
  prog.objective = Eigen::MatrixXd::Zero(nn, nn);
  for (int s1 = 0; s1 < n; ++s1)
    for (int s2 = 0; s2 < n; ++s2) {
      if (part_of_slot[s1] == part_of_slot[s2]) continue;
      prog.objective.block(s1 * n, s2 * n, n, n) = 0.5 * g.weights();
    }

  auto idx = [n](int s, int r) { return s * n + r; };
  for (int j = 0; j < n; ++j) {
    MatrixFunctional rowsum;  // vertex j occupies exactly one slot
    for (int s = 0; s < n; ++s) rowsum.entries.push_back({idx(s, j), idx(s, j), 1.0});
    rowsum.rhs = 1.0;
    prog.equalities.push_back(std::move(rowsum));
    MatrixFunctional colsum;  // slot j hosts exactly one vertex
    for (int r = 0; r < n; ++r) colsum.entries.push_back({idx(j, r), idx(j, r), 1.0});
    colsum.rhs = 1.0;
    prog.equalities.push_back(std::move(colsum));
  }
  {
    MatrixFunctional trj;
    for (long i = 0; i < nn; ++i)
      for (long j = i; j < nn; ++j)
        trj.entries.push_back({static_cast<int>(i), static_cast<int>(j), i == j ? 1.0 : 2.0});
    trj.rhs = double(nn);
    prog.equalities.push_back(std::move(trj));
  }
  // gangster entries: same slot/two vertices or same vertex/two slots
  for (int s = 0; s < n; ++s)
    for (int r1 = 0; r1 < n; ++r1)
      for (int r2 = r1 + 1; r2 < n; ++r2)
        prog.fixed.push_back({idx(s, r1), idx(s, r2), 0.0});
  for (int s1 = 0; s1 < n; ++s1)
    for (int s2 = s1 + 1; s2 < n; ++s2)
      for (int r = 0; r < n; ++r)
        prog.fixed.push_back({idx(s1, r), idx(s2, r), 0.0});
  if (fixing) {
    prog.fixed.push_back({idx(fixing->s1, fixing->r1), idx(fixing->s1, fixing->r1), 1.0});
    prog.fixed.push_back({idx(fixing->s2, fixing->r2), idx(fixing->s2, fixing->r2), 1.0});
  }
  prog.nonnegative = true;
  prog.psd_scale = 1.0;

  // barycenter of the exact assignments as a warm start
  Eigen::MatrixXd start = Eigen::MatrixXd::Zero(nn, nn);
  for (int s1 = 0; s1 < n; ++s1)
    for (int r1 = 0; r1 < n; ++r1)
      for (int s2 = 0; s2 < n; ++s2)
        for (int r2 = 0; r2 < n; ++r2) {
          double v;
          if (s1 == s2 && r1 == r2) v = 1.0 / n;
          else if (s1 == s2 || r1 == r2) v = 0.0;
          else v = 1.0 / (double(n) * (n - 1));
          start(idx(s1, r1), idx(s2, r2)) = v;
        }
  prog.start = start;

  AdmmOptions ao;
  ao.tol = opts.tol;
  ao.max_iterations = opts.max_iterations;
  ao.verbose = opts.verbose;
  ConicSolution sol = solve_primal_form(prog, ao);
  if (near_rounding_boundary(sol.primal) && ao.tol > 1e-8) {
    ao.tol = 1e-8;
    ao.max_iterations = 3 * opts.max_iterations;
    sol = solve_primal_form(prog, ao);
  }
  BoundResult r = finish_splitting("qap", spec.sense(), sol,
                                   prog.objective.norm(), timer.seconds());
  if (fixing) {
    r.details.push_back({"fix_r1", double(fixing->r1)});
    r.details.push_back({"fix_r2", double(fixing->r2)});
  }
  return r;
}

BoundResult gpp_fix(const Graph& g, const PartitionSpec& spec,
                    const OrbitalPartition& orbitals, const RelaxationOptions& opts,
                    int jobs) {
  spec.require_total(g.n());
  if (orbitals.n != g.n()) throw invalid_input("gpp_fix: orbitals do not match the graph");
  Timer timer;
  const int s1 = 0;
  const int s2 = static_cast<int>(spec.parts()[0]);
  const bool equal_first_parts = spec.parts()[0] == spec.parts()[1];
  std::vector<int> chosen;
  for (int h = orbitals.num_diagonal; h < orbitals.count; ++h) {
    // swapping the fixed pair matches swapping the two slots, which is an
    // automorphism of the multipartite graph only if the parts have equal size
    if (equal_first_parts && orbitals.transpose_map[h] < h) continue;
    chosen.push_back(h);
  }
  if (chosen.empty()) throw invalid_input("gpp_fix: no off-diagonal orbitals");

  std::vector<BoundResult> sub(chosen.size());
  parallel_for(static_cast<int>(chosen.size()), jobs, [&](int t) {
    auto [r1, r2] = orbitals.representatives[chosen[t]];
    sub[t] = gpp_qap(g, spec, QapFixing{s1, s2, r1, r2}, opts);
  });

  BoundResult r;
  r.relaxation = "qap-fix";
  bool minimize = spec.sense() == Sense::Minimize;
  r.value = sub[0].value;
  r.status = BoundStatus::SolverOptimal;
  for (size_t t = 0; t < sub.size(); ++t) {
    r.value = minimize ? std::min(r.value, sub[t].value) : std::max(r.value, sub[t].value);
    r.details.push_back({"orbital_" + std::to_string(chosen[t]), sub[t].value});
    if (sub[t].status == BoundStatus::SolverInaccurate) r.status = BoundStatus::SolverInaccurate;
  }
  r.rounded = round_bound(r.value, spec.sense());
  r.elapsed = timer.seconds();
  return r;
}

}  // namespace gpp
