#include <limits>

#include "gpp/graph.hpp"

namespace gpp {

namespace {

struct OracleState {
  const Graph* g;
  int n;
  int k;
  bool maximize;
  std::vector<long> declared;   // declared part sizes (non-increasing)
  std::vector<long> remaining;  // capacity left per part
  std::vector<int> assign;      // part of each assigned vertex
  std::vector<double> undecided;  // undecided[i]: weight of edges with both ends >= i,
                                  // plus edges from < i to >= i -- i.e. not yet settled
  double best;

  void search(int v, double partial) {
    if (v == n) {
      if (maximize ? partial > best : partial < best) best = partial;
      return;
    }
    // bound: every undecided edge can add at most its weight (max) or 0 (min)
    if (maximize) {
      if (partial + undecided[v] <= best) return;
    } else {
      if (partial >= best) return;
    }
    for (int p = 0; p < k; ++p) {
      if (remaining[p] == 0) continue;
      // equal-sized empty parts are interchangeable: only the first may open
      if (p > 0 && remaining[p] == declared[p] && remaining[p - 1] == declared[p - 1] &&
          declared[p] == declared[p - 1])
        continue;
      double cut = 0;
      for (int u = 0; u < v; ++u)
        if (assign[u] != p) cut += g->weight(u, v);
      remaining[p]--;
      assign[v] = p;
      search(v + 1, partial + cut);
      remaining[p]++;
    }
  }
};

}  // namespace

double brute_force_gpp(const Graph& g, const PartitionSpec& spec) {
  if (g.n() > 16) throw invalid_input("brute_force_gpp: guarded to n <= 16");
  spec.require_total(g.n());
  OracleState st;
  st.g = &g;
  st.n = g.n();
  st.k = spec.k();
  st.maximize = spec.sense() == Sense::Maximize;
  st.declared = spec.parts();
  st.remaining = st.declared;
  st.assign.assign(st.n, -1);
  st.undecided.assign(st.n + 1, 0.0);
  for (int v = st.n - 1; v >= 0; --v) {
    double contrib = 0;
    for (int u = 0; u < st.n; ++u)
      if (u < v) contrib += g.weight(u, v);  // each edge charged to its larger end
    st.undecided[v] = st.undecided[v + 1] + contrib;
  }
  st.best = st.maximize ? -1.0 : std::numeric_limits<double>::infinity();
  st.search(0, 0.0);
  return st.best;
}

}  // namespace gpp
