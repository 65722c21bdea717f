#pragma once

#include <cstdint>

#include "pathcert/decomp.hpp"
#include "pathcert/graph.hpp"

namespace pathcert {

enum class TreeKind { Binary, Ternary };
enum class MatchingKind { Identity, Seeded };

Graph gen_path(int n);
Graph gen_cycle(int n);
Graph gen_clique(int n);
Graph gen_grid(int rows, int cols);

/// Complete binary/ternary tree of the given height, vertices in level order.
Graph gen_tree(TreeKind kind, int height);

/// Erdos-Renyi style graph; identical output for identical arguments on any
/// platform (the generator avoids distribution classes for that reason).
Graph gen_random(int n, double p, std::uint64_t seed);

/// Uniform random attachment tree on n vertices.
Graph gen_random_tree(int n, std::uint64_t seed);

/// Every node of `tree` becomes a clique on t vertices, every tree edge a
/// perfect matching between the two cliques. Vertex t*x+i belongs to the
/// clique of tree node x.
Graph blowup(const Graph& tree, int t, MatchingKind matching = MatchingKind::Identity,
             std::uint64_t seed = 0);

/// Width-t tree decomposition of blowup(tree, t, ...) built by sliding
/// between the endpoint cliques of every tree edge. Must be called with the
/// same matching arguments as blowup.
TreeDecomposition blowup_td(const Graph& tree, int t,
                            MatchingKind matching = MatchingKind::Identity,
                            std::uint64_t seed = 0);

/// Width-1 decomposition of a tree (one bag per edge); the optimal input for
/// tree instances.
TreeDecomposition tree_edge_td(const Graph& tree);

}  // namespace pathcert
