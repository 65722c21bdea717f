#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pathcert/decomp.hpp"
#include "pathcert/graph.hpp"

namespace pathcert {

struct Witness;
using WitnessPtr = std::shared_ptr<const Witness>;

/// Complete ternary tree of vertex sets. A leaf asserts that its set induces
/// a connected subgraph; an inner node additionally asserts that its three
/// child sets are disjoint subsets that pairwise connect inside the node's
/// subgraph while avoiding the third. A valid witness of height h certifies
/// pathwidth >= h.
struct Witness {
  VertexSet vset;
  std::vector<WitnessPtr> children;  // empty or exactly three

  static WitnessPtr leaf(VertexSet s);
  static WitnessPtr inner(VertexSet s, WitnessPtr a, WitnessPtr b, WitnessPtr c);
  bool operator==(const Witness& o) const;
};

struct WitnessCheck {
  int height = -1;  // meaningful only when ok()
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

WitnessCheck validate_witness(const Graph& g, const Witness& w);

/// Subdivision of a complete binary tree of height h embedded in a graph.
/// Abstract tree nodes are indexed in level order (0 = root); the edge to
/// child node i is realized by paths[i-1], an explicit vertex path from
/// branch[(i-1)/2] to branch[i] whose internal vertices are private.
struct Subdivision {
  int height = 0;
  std::vector<Vertex> branch;
  std::vector<std::vector<Vertex>> paths;
};

/// Runs the inductive construction on a valid witness; throws
/// std::invalid_argument when the witness does not validate.
Subdivision extract_binary_subdivision(const Graph& g, const Witness& w);

ValidationReport validate_subdivision(const Graph& g, const Subdivision& sd, int h);

}  // namespace pathcert
