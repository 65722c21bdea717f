#pragma once

#include <memory>
#include <vector>

#include "pathcert/decomp.hpp"
#include "pathcert/graph.hpp"

namespace pathcert {

/// One member of the laminar family underlying a normalized decomposition:
/// the vertex set V(a), its core A(a) (vertices whose smallest containing
/// member is a) and its bag B(a) = A(a) + N(V(a)).
struct NormalizedNode {
  VertexSet vset;
  VertexSet core;
  VertexSet bag;
  int parent = -1;
  std::vector<int> children;  // ordered by minimum vertex id
  int depth = 0;
  int tin = 0, tout = 0;  // preorder interval for ancestor tests
};

/// Normalized tree decomposition of G[scope] derived from the restriction of
/// an input tree decomposition. Nodes form a laminar family whose cores
/// partition the scope; (tree, bags) is itself a valid tree decomposition of
/// G[scope] with bags no larger than those of the input decomposition.
struct NormalizedDecomposition {
  VertexSet scope;
  std::vector<NormalizedNode> nodes;
  int root = -1;
  std::vector<int> postorder;  // children before parents, siblings by min id
  /// owner[v] = node whose core contains v; -1 outside scope. Indexed by
  /// ambient vertex id.
  std::vector<int> owner;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  bool is_ancestor(int a, int b) const {  // a ancestor of b, or a == b
    return nodes[a].tin <= nodes[b].tin && nodes[b].tout <= nodes[a].tout;
  }
  int lca(int a, int b) const;
  /// True iff ambient vertex v lies in V(nodes[a]).
  bool vset_contains(int a, Vertex v) const {
    return owner[v] >= 0 && is_ancestor(a, owner[v]);
  }
  /// Decomposition tree with bags restricted to `scope_filter`.
  TreeDecomposition bag_tree(const VertexSet& scope_filter) const;
  TreeDecomposition bag_tree() const;
};

/// Precomputed occurrence data of an input tree decomposition, shareable
/// across many build_normalized calls on subsets of the same graph.
struct DecompositionIndex {
  const Graph* g = nullptr;
  const TreeDecomposition* td = nullptr;
  std::vector<int> top;                   // highest node whose bag holds v
  std::vector<std::vector<int>> bucket;   // node -> vertices with top there
  std::vector<int> node_postorder;
  DecompositionIndex(const Graph& g, const TreeDecomposition& td);
};

/// Builds the normalized decomposition of G[s]. Requires G[s] connected and
/// td (with index) valid for g.
NormalizedDecomposition build_normalized(const DecompositionIndex& idx,
                                         const VertexSet& s);
NormalizedDecomposition build_normalized(const Graph& g, const TreeDecomposition& td,
                                         const VertexSet& s);

/// The normalized decomposition of G[V(alpha)] obtained from the subtree at
/// alpha with bags cut down to V(alpha). Coincides with a fresh
/// build_normalized on V(alpha).
NormalizedDecomposition subtree_view(const NormalizedDecomposition& nd, int alpha);

/// Outcome of classifying a connected component of G - union of bags along a
/// tree path: either the component is exactly a child node hanging off the
/// path, or it avoids the vertex set of the topmost path node.
struct ComplementClass {
  enum Kind { ChildNode, ParentSide } kind;
  int child = -1;  // set when kind == ChildNode
};

/// q_path must be a connected path in nd's tree; comp a connected component
/// of G[scope] minus the bags along q_path. Throws std::logic_error when the
/// component fits neither case (impossible for valid inputs).
ComplementClass component_complement_classify(const NormalizedDecomposition& nd,
                                              const Graph& g,
                                              const std::vector<int>& q_path,
                                              const VertexSet& comp);

}  // namespace pathcert
