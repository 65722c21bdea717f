#pragma once

#include "pathcert/decomp.hpp"
#include "pathcert/graph.hpp"

namespace pathcert {

struct PathwidthResult {
  int value = 0;
  PathDecomposition pd;  // validates at width == value
};

struct TreewidthResult {
  int value = 0;
  TreeDecomposition td;  // validates at width == value
};

/// Size caps for the subset dynamic programs, overridable through the
/// PATHCERT_PW_LIMIT / PATHCERT_TW_LIMIT environment variables.
int pathwidth_oracle_limit();
int treewidth_oracle_limit();

/// Exact pathwidth with an optimal certificate. Runs the subset dynamic
/// program up to the size cap; forests of any reasonable size are handled by
/// an exact polynomial algorithm instead. Throws std::invalid_argument when
/// the instance is too large.
PathwidthResult exact_pathwidth(const Graph& g);

/// Exact treewidth with an optimal certificate via the subset dynamic
/// program over elimination orderings. Throws when too large.
TreewidthResult exact_treewidth(const Graph& g);

/// Greedy minimum-fill-in elimination ordering; always valid, no width
/// guarantee. Ties break to the smallest vertex id.
TreeDecomposition minfill_td(const Graph& g);

bool is_forest(const Graph& g);

namespace oracle_detail {
/// The two exact pathwidth routes, exposed so tests can cross-check them.
PathwidthResult pathwidth_subset_dp(const Graph& g);
PathwidthResult forest_pathwidth(const Graph& g);
}  // namespace oracle_detail

}  // namespace pathcert
