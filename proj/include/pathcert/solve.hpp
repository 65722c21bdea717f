#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "pathcert/decomp.hpp"
#include "pathcert/graph.hpp"
#include "pathcert/normalize.hpp"
#include "pathcert/witness.hpp"

namespace pathcert {

/// Upper bound request meaning "no cap": the caller wants the decomposition.
inline constexpr std::uint32_t kNoBound = std::numeric_limits<std::uint32_t>::max();

struct SolveResult {
  int h = 0;
  WitnessPtr witness;                   // valid at height exactly h
  std::optional<PathDecomposition> pd;  // present iff h < bound; width <= t*h+1
};
using SolveResultPtr = std::shared_ptr<const SolveResult>;

struct SolveCounters {
  long long subproblems = 0;      // distinct memoized (set, bound) pairs
  long long chain_runs = 0;       // runs whose minimal members line up on a path
  long long pruned = 0;           // runs cut short by the bound
  long long secondary_calls = 0;  // bounded re-solves of connector components
};

struct SubproblemStats {
  long long subproblems = 0;
  std::vector<int> finite_bounds;  // distinct, ascending
  int max_finite_bound = -1;
};

/// Split of a run along the connector path: the minimal top-height members
/// zeta_1..zeta_m, the connector set U partitioned into side sets U_i and
/// between sets U_{i,i+1}, the blocks V_i, the separators R, and the
/// components left over once block bags are removed, each classified as a
/// reusable child node or as part of a bounded secondary re-solve.
struct ChainState {
  int k = 0;
  std::vector<int> zeta;  // nd node ids in chain order (size m)
  VertexSet u;
  std::vector<VertexSet> u_between;      // 0..m
  std::vector<VertexSet> u_side;         // 1..m (index 0 unused)
  std::vector<VertexSet> v_block;        // 1..m
  std::vector<VertexSet> b_bag;          // 1..m
  std::vector<std::vector<int>> q_path;  // 0..m, oriented zeta_i -> zeta_{i+1}
  std::vector<int> q_top;                // 0..m, topmost node of q_path[i]
  std::vector<VertexSet> r_side;         // 1..m
  std::vector<VertexSet> r_between;      // 1..m-1 (0 and >=m unused)
  VertexSet r_all;

  struct Component {
    VertexSet vset;
    bool from_between = false;  // inside U_{i,i+1} rather than V_i
    int i = 0;
    bool child = false;
    int child_node = -1;  // nd node when child
    int secondary = -1;   // index into secondaries when parent-side
  };
  std::vector<Component> gamma;

  struct Secondary {
    VertexSet vset;
    bool from_between = false;
    int i = 0;
  };
  std::vector<Secondary> secondaries;
};

/// Builds the chain split; `zeta` must already be ordered along the
/// connector path. Exposed for direct testing.
ChainState build_chain_state(const Graph& g, const NormalizedDecomposition& nd,
                             const std::vector<int>& zeta, int k);

struct ComponentOutcome {
  VertexSet component;
  SolveResultPtr result;
};

struct SolveRun {
  int h = 0;             // max over components; 0 for the empty graph
  bool vacuous = false;  // empty input graph
  PathDecomposition pd;  // concatenation of component decompositions
  bool pd_complete = false;
  std::vector<ComponentOutcome> components;
  SolveCounters counters;
  int t = 0;
};

class Solver {
public:
  /// Validates td_in for g (throws std::invalid_argument when not a valid
  /// tree decomposition) and roots it at node 0.
  Solver(const Graph& g, TreeDecomposition td_in);

  /// Runs on every connected component (ordered by minimum vertex) with the
  /// given per-component bound.
  SolveRun run(std::uint32_t bound = kNoBound);

  /// Memoized recursive entry point; G[s] must be connected.
  SolveResultPtr solve_subset(const VertexSet& s, std::uint32_t bound);

  SubproblemStats stats() const;
  const SolveCounters& counters() const { return counters_; }
  int width_plus_one() const { return t_; }
  const Graph& graph() const { return *g_; }

  /// Re-validates every produced decomposition and witness as it is built;
  /// for tests on small instances.
  void set_paranoid(bool on) { paranoid_ = on; }

  std::vector<std::pair<std::pair<VertexSet, std::uint32_t>, SolveResultPtr>>
  memo_entries() const;

private:
  struct Frame;
  struct StepOut;

  StepOut step(Frame& fr);
  SolveResultPtr finish(Frame& fr, SolveResult res);
  SolveResult escalate_nonpath(Frame& fr) const;
  PathDecomposition outcome_b_pd(Frame& fr) const;
  SolveResult chain_outcome_a(Frame& fr) const;
  SolveResult chain_escalate(Frame& fr, const ChainState::Secondary& sec,
                             const SolveResultPtr& sec_res) const;
  void check_pd(const Frame& fr, const SolveResult& res) const;

  const Graph* g_ = nullptr;
  TreeDecomposition td_;
  std::unique_ptr<DecompositionIndex> index_;
  int t_ = 1;
  bool paranoid_ = false;

  struct KeyHash {
    std::size_t operator()(const std::pair<VertexSet, std::uint32_t>& k) const {
      return VertexSetHash{}(k.first) * 1000003u + k.second;
    }
  };
  std::unordered_map<std::pair<VertexSet, std::uint32_t>, SolveResultPtr, KeyHash>
      memo_;
  SolveCounters counters_;
};

}  // namespace pathcert
