#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace pathcert {

using Vertex = int;

/// Canonical sorted set of internal vertex ids. Equality is extensional and
/// the hash is canonical, so values can serve as memoization keys.
class VertexSet {
public:
  VertexSet() = default;
  explicit VertexSet(std::vector<Vertex> ids);

  // Trusted constructor: `ids` must already be sorted and duplicate-free.
  static VertexSet from_sorted(std::vector<Vertex> ids);

  bool contains(Vertex v) const;
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  Vertex min() const { return ids_.front(); }
  const std::vector<Vertex>& ids() const { return ids_; }
  std::vector<Vertex>::const_iterator begin() const { return ids_.begin(); }
  std::vector<Vertex>::const_iterator end() const { return ids_.end(); }

  bool operator==(const VertexSet& o) const { return ids_ == o.ids_; }
  bool operator!=(const VertexSet& o) const { return ids_ != o.ids_; }

  VertexSet set_union(const VertexSet& o) const;
  VertexSet set_intersect(const VertexSet& o) const;
  VertexSet set_minus(const VertexSet& o) const;
  bool is_subset_of(const VertexSet& o) const;
  bool disjoint_from(const VertexSet& o) const;

  VertexSet with(Vertex v) const;

private:
  std::vector<Vertex> ids_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const {
    // FNV-1a over the id words; stable across runs and platforms.
    std::uint64_t h = 1469598103934665603ull;
    for (Vertex v : s.ids()) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Immutable simple undirected graph. Internal ids are dense 0..n-1 assigned
/// by sorting the external labels once at construction, so all downstream
/// determinism guarantees are independent of input edge order.
class Graph {
public:
  Graph() = default;

  /// `labels` lists the external label of every vertex; `edges` refer to
  /// external labels. Throws std::invalid_argument on self-loops or labels
  /// that are not a duplicate-free set.
  static Graph from_labeled_edges(std::vector<int> labels,
                                  const std::vector<std::pair<int, int>>& edges);

  /// Vertices 0..n-1 with external labels 1..n.
  static Graph from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(adj_.size() / 2); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return std::span<const Vertex>(adj_.data() + offsets_[v],
                                   adj_.data() + offsets_[v + 1]);
  }
  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const;

  int label(Vertex v) const { return labels_[v]; }
  std::optional<Vertex> vertex_by_label(int label) const;

  VertexSet all_vertices() const;
  void check_vertex(Vertex v) const;  // throws std::out_of_range

private:
  int n_ = 0;
  std::vector<int> offsets_{0};
  std::vector<Vertex> adj_;
  std::vector<int> labels_;
  std::unordered_map<int, Vertex> by_label_;
};

/// G[s] with external labels preserved. Vertices are renumbered 0..|s|-1 in
/// increasing order of their old internal ids.
Graph induced_subgraph(const Graph& g, const VertexSet& s);

/// Maximal connected subsets of G[s], ordered by minimum element. The empty
/// set has no connected components.
std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& s);

/// N_G(s): vertices outside s with a neighbor in s.
VertexSet neighborhood(const Graph& g, const VertexSet& s);

/// True iff g has a path from a to b whose internal vertices all lie in u.
/// A direct edge between a and b qualifies. Requires a, b non-empty and
/// a, b, u pairwise disjoint.
bool u_path_connected(const Graph& g, const VertexSet& u, const VertexSet& a,
                      const VertexSet& b);

/// Constructive companion of u_path_connected: an explicit path
/// v0,...,vk with v0 in a, vk in b and internal vertices in u. Breadth-first
/// with smallest-id tie-breaking, so the result is deterministic.
std::optional<std::vector<Vertex>> find_u_path(const Graph& g, const VertexSet& u,
                                               const VertexSet& a,
                                               const VertexSet& b);

}  // namespace pathcert
