#include "pathcert/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace pathcert {

VertexSet::VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

VertexSet VertexSet::from_sorted(std::vector<Vertex> ids) {
  VertexSet s;
  s.ids_ = std::move(ids);
  return s;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

VertexSet VertexSet::set_union(const VertexSet& o) const {
  std::vector<Vertex> out;
  out.reserve(ids_.size() + o.ids_.size());
  std::set_union(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                 std::back_inserter(out));
  return from_sorted(std::move(out));
}

VertexSet VertexSet::set_intersect(const VertexSet& o) const {
  std::vector<Vertex> out;
  std::set_intersection(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                        std::back_inserter(out));
  return from_sorted(std::move(out));
}

VertexSet VertexSet::set_minus(const VertexSet& o) const {
  std::vector<Vertex> out;
  std::set_difference(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                      std::back_inserter(out));
  return from_sorted(std::move(out));
}

bool VertexSet::is_subset_of(const VertexSet& o) const {
  return std::includes(o.ids_.begin(), o.ids_.end(), ids_.begin(), ids_.end());
}

bool VertexSet::disjoint_from(const VertexSet& o) const {
  auto a = ids_.begin();
  auto b = o.ids_.begin();
  while (a != ids_.end() && b != o.ids_.end()) {
    if (*a < *b)
      ++a;
    else if (*b < *a)
      ++b;
    else
      return false;
  }
  return true;
}

VertexSet VertexSet::with(Vertex v) const {
  if (contains(v)) return *this;
  std::vector<Vertex> out = ids_;
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return from_sorted(std::move(out));
}

Graph Graph::from_labeled_edges(std::vector<int> labels,
                                const std::vector<std::pair<int, int>>& edges) {
  Graph g;
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw std::invalid_argument("duplicate vertex label");
  g.n_ = static_cast<int>(labels.size());
  g.labels_ = labels;
  g.by_label_.reserve(labels.size());
  for (int i = 0; i < g.n_; ++i) g.by_label_[labels[i]] = i;

  std::vector<std::vector<Vertex>> adj(g.n_);
  for (auto [a, b] : edges) {
    auto ia = g.by_label_.find(a);
    auto ib = g.by_label_.find(b);
    if (ia == g.by_label_.end() || ib == g.by_label_.end())
      throw std::invalid_argument("edge endpoint has unknown label");
    if (ia->second == ib->second) throw std::invalid_argument("self-loop");
    adj[ia->second].push_back(ib->second);
    adj[ib->second].push_back(ia->second);
  }
  g.offsets_.assign(1, 0);
  for (int v = 0; v < g.n_; ++v) {
    auto& row = adj[v];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    g.adj_.insert(g.adj_.end(), row.begin(), row.end());
    g.offsets_.push_back(static_cast<int>(g.adj_.size()));
  }
  return g;
}

Graph Graph::from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i + 1;
  std::vector<std::pair<int, int>> labeled;
  labeled.reserve(edges.size());
  for (auto [a, b] : edges) labeled.emplace_back(a + 1, b + 1);
  return from_labeled_edges(std::move(labels), labeled);
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<Vertex> Graph::vertex_by_label(int label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

VertexSet Graph::all_vertices() const {
  std::vector<Vertex> ids(n_);
  for (int i = 0; i < n_; ++i) ids[i] = i;
  return VertexSet::from_sorted(std::move(ids));
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex id out of range");
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  std::vector<int> labels;
  labels.reserve(s.size());
  for (Vertex v : s) {
    g.check_vertex(v);
    labels.push_back(g.label(v));
  }
  std::vector<std::pair<int, int>> edges;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (v < w && s.contains(w)) edges.emplace_back(g.label(v), g.label(w));
  return Graph::from_labeled_edges(std::move(labels), edges);
}

std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& s) {
  for (Vertex v : s) g.check_vertex(v);
  std::vector<char> in_s(g.num_vertices(), 0), seen(g.num_vertices(), 0);
  for (Vertex v : s) in_s[v] = 1;
  std::vector<VertexSet> out;
  std::vector<Vertex> stack, comp;
  for (Vertex start : s) {
    if (seen[start]) continue;
    comp.clear();
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (in_s[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(VertexSet::from_sorted(comp));
  }
  // Iterating s in increasing order already yields components ordered by
  // minimum element.
  return out;
}

VertexSet neighborhood(const Graph& g, const VertexSet& s) {
  for (Vertex v : s) g.check_vertex(v);
  std::vector<char> in_s(g.num_vertices(), 0), hit(g.num_vertices(), 0);
  for (Vertex v : s) in_s[v] = 1;
  std::vector<Vertex> out;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (!in_s[w] && !hit[w]) {
        hit[w] = 1;
        out.push_back(w);
      }
  std::sort(out.begin(), out.end());
  return VertexSet::from_sorted(std::move(out));
}

namespace {

void check_u_path_args(const VertexSet& u, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("u-path endpoints must be non-empty");
  if (!a.disjoint_from(b) || !a.disjoint_from(u) || !b.disjoint_from(u))
    throw std::invalid_argument("u-path sets must be pairwise disjoint");
}

}  // namespace

std::optional<std::vector<Vertex>> find_u_path(const Graph& g, const VertexSet& u,
                                               const VertexSet& a,
                                               const VertexSet& b) {
  check_u_path_args(u, a, b);
  const int n = g.num_vertices();
  std::vector<char> in_u(n, 0), in_b(n, 0);
  std::vector<Vertex> parent(n, -2);  // -2 unvisited, -1 source
  for (Vertex v : u) {
    g.check_vertex(v);
    in_u[v] = 1;
  }
  for (Vertex v : b) {
    g.check_vertex(v);
    in_b[v] = 1;
  }
  std::queue<Vertex> q;
  for (Vertex v : a) {
    g.check_vertex(v);
    parent[v] = -1;
    q.push(v);
  }
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v)) {
      if (in_b[w]) {
        std::vector<Vertex> path{w};
        for (Vertex x = v; x != -1; x = parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (in_u[w] && parent[w] == -2) {
        parent[w] = v;
        q.push(w);
      }
    }
  }
  return std::nullopt;
}

bool u_path_connected(const Graph& g, const VertexSet& u, const VertexSet& a,
                      const VertexSet& b) {
  return find_u_path(g, u, a, b).has_value();
}

}  // namespace pathcert
