#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "pathcert/graph.hpp"

namespace pathcert {

/// Rooted tree decomposition. Nodes are 0..num_nodes()-1; parent[root] = -1.
/// Empty bags are permitted (they arise from restriction) and are harmless.
struct TreeDecomposition {
  std::vector<int> parent;
  std::vector<VertexSet> bags;
  int root = 0;

  int num_nodes() const { return static_cast<int>(bags.size()); }
  int width() const;
  std::vector<std::vector<int>> children() const;
  /// Re-roots the tree at `new_root` by flipping parent pointers.
  void reroot(int new_root);
};

struct PathDecomposition {
  std::vector<VertexSet> bags;
  int width() const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  int width = -1;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_tree_decomposition(const Graph& g,
                                             const TreeDecomposition& td);
ValidationReport validate_path_decomposition(const Graph& g,
                                             const PathDecomposition& pd);

/// Validation of pd as a path decomposition of G[scope]; bags must be subsets
/// of scope for coverage to be judged against the induced subgraph.
ValidationReport validate_path_decomposition_scoped(const Graph& g,
                                                    const VertexSet& scope,
                                                    const PathDecomposition& pd);
ValidationReport validate_tree_decomposition_scoped(const Graph& g,
                                                    const VertexSet& scope,
                                                    const TreeDecomposition& td);

/// Bags intersected with s; empty bags dropped, duplicates kept.
PathDecomposition restrict_pd(const PathDecomposition& pd, const VertexSet& s);

/// Same tree, bags intersected with s (empty bags kept).
TreeDecomposition restrict_td(const TreeDecomposition& td, const VertexSet& s);

/// Bag sequences joined in order. Validity of the result is the caller's
/// obligation.
PathDecomposition concatenate(const std::vector<PathDecomposition>& pds);

using PartsMap =
    std::unordered_map<VertexSet, PathDecomposition, VertexSetHash>;

/// Concatenates the decompositions of the connected components of g - B_q
/// (ordered by minimum vertex) and adds B_q to every bag; the single bag B_q
/// when g - B_q is empty. Every component must have an entry in `parts`
/// whose bags cover exactly that component.
PathDecomposition combine_around_node(const Graph& g, const TreeDecomposition& td,
                                      int q, const PartsMap& parts);

/// q_path must be a path x..y in td. Splits td into the subtrees hanging at
/// each path node, applies combine_around_node per block, and concatenates in
/// path order; the first bag contains B_x and the last contains B_y.
PathDecomposition combine_along_path(const Graph& g, const TreeDecomposition& td,
                                     const std::vector<int>& q_path,
                                     const PartsMap& parts);

/// Scoped variant working on G[scope] without materializing the subgraph.
/// Bags of td must already be subsets of scope. combine_along_path needs no
/// scope of its own: each block's scope is the union of its bags.
PathDecomposition combine_around_node_scoped(const Graph& g, const VertexSet& scope,
                                             const TreeDecomposition& td, int q,
                                             const PartsMap& parts);

}  // namespace pathcert
