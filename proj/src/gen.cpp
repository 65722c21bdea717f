#include "pathcert/gen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace pathcert {

namespace {

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  // Rejection sampling; unbiased and implementation-independent.
  std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

void check_tree(const Graph& t) {
  if (t.num_vertices() == 0) throw std::invalid_argument("blowup: empty tree");
  if (t.num_edges() != t.num_vertices() - 1 ||
      connected_components(t, t.all_vertices()).size() != 1)
    throw std::invalid_argument("blowup: input graph is not a tree");
}

/// Matchings per tree edge: matched[i] is the clique-slot in the child clique
/// matched to slot i of the parent clique. Edges are processed in sorted
/// order so that blowup and blowup_td always agree.
std::vector<std::vector<int>> edge_matchings(const Graph& tree, int t,
                                             MatchingKind kind, std::uint64_t seed) {
  std::vector<std::vector<int>> out;
  std::mt19937_64 rng(seed);
  for (Vertex u = 0; u < tree.num_vertices(); ++u)
    for (Vertex v : tree.neighbors(u)) {
      if (v < u) continue;
      std::vector<int> perm(t);
      for (int i = 0; i < t; ++i) perm[i] = i;
      if (kind == MatchingKind::Seeded)
        for (int i = t - 1; i > 0; --i)
          std::swap(perm[i], perm[below(rng, static_cast<std::uint64_t>(i) + 1)]);
      out.push_back(std::move(perm));
    }
  return out;
}

}  // namespace

Graph gen_path(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

Graph gen_cycle(int n) {
  if (n < 3) throw std::invalid_argument("gen_cycle: need n >= 3");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

Graph gen_clique(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

Graph gen_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("gen_grid: bad dimensions");
  std::vector<std::pair<Vertex, Vertex>> e;
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph::from_edges(rows * cols, e);
}

Graph gen_tree(TreeKind kind, int height) {
  if (height < 0) throw std::invalid_argument("gen_tree: negative height");
  const int arity = kind == TreeKind::Binary ? 2 : 3;
  long long n = 1, layer = 1;
  for (int i = 0; i < height; ++i) {
    layer *= arity;
    n += layer;
  }
  if (n > 2'000'000) throw std::invalid_argument("gen_tree: too large");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (long long v = 1; v < n; ++v)
    e.emplace_back(static_cast<Vertex>((v - 1) / arity), static_cast<Vertex>(v));
  return Graph::from_edges(static_cast<int>(n), e);
}

Graph gen_random(int n, double p, std::uint64_t seed) {
  if (n < 0 || p < 0.0 || p > 1.0) throw std::invalid_argument("gen_random: bad arguments");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unit_double(rng) < p) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

Graph gen_random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_random_tree: need n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int v = 1; v < n; ++v)
    e.emplace_back(static_cast<Vertex>(below(rng, v)), v);
  return Graph::from_edges(n, e);
}

Graph blowup(const Graph& tree, int t, MatchingKind matching, std::uint64_t seed) {
  check_tree(tree);
  if (t < 1) throw std::invalid_argument("blowup: need t >= 1");
  auto match = edge_matchings(tree, t, matching, seed);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex x = 0; x < tree.num_vertices(); ++x)
    for (int i = 0; i < t; ++i)
      for (int j = i + 1; j < t; ++j) e.emplace_back(t * x + i, t * x + j);
  int eidx = 0;
  for (Vertex u = 0; u < tree.num_vertices(); ++u)
    for (Vertex v : tree.neighbors(u)) {
      if (v < u) continue;
      for (int i = 0; i < t; ++i) e.emplace_back(t * u + i, t * v + match[eidx][i]);
      ++eidx;
    }
  return Graph::from_edges(t * tree.num_vertices(), e);
}

TreeDecomposition blowup_td(const Graph& tree, int t, MatchingKind matching,
                            std::uint64_t seed) {
  check_tree(tree);
  if (t < 1) throw std::invalid_argument("blowup_td: need t >= 1");
  auto match = edge_matchings(tree, t, matching, seed);

  TreeDecomposition td;
  const int tn = tree.num_vertices();
  td.bags.resize(tn);
  td.parent.assign(tn, -1);
  td.root = 0;
  for (Vertex x = 0; x < tn; ++x) {
    std::vector<Vertex> bag(t);
    for (int i = 0; i < t; ++i) bag[i] = t * x + i;
    td.bags[x] = VertexSet::from_sorted(std::move(bag));
  }
  // Hang each clique bag off its tree parent through t sliding bags
  // {u_j..u_t, v_1..v_j}; each matched pair shares a bag.
  std::vector<int> tree_parent(tn, -1);
  {
    std::vector<Vertex> stack{0};
    std::vector<char> seen(tn, 0);
    seen[0] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : tree.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          tree_parent[w] = v;
          stack.push_back(w);
        }
    }
  }
  int eidx = 0;
  for (Vertex u = 0; u < tn; ++u)
    for (Vertex v : tree.neighbors(u)) {
      if (v < u) continue;
      // orient the edge parent -> child
      Vertex pu = u, cv = v;
      bool flipped = false;
      if (tree_parent[u] == v) {
        pu = v;
        cv = u;
        flipped = true;
      }
      // parent clique slots i matched to child slots m(i)
      std::vector<int> m(t);
      for (int i = 0; i < t; ++i) {
        int child_slot = match[eidx][i];
        if (!flipped)
          m[i] = child_slot;
        else
          m[child_slot] = i;  // match list is stated parent-of-sorted-edge first
      }
      int prev = pu;
      for (int j = 1; j <= t; ++j) {
        std::vector<Vertex> bag;
        for (int i = j - 1; i < t; ++i) bag.push_back(t * pu + i);
        for (int i = 0; i < j; ++i) bag.push_back(t * cv + m[i]);
        std::sort(bag.begin(), bag.end());
        td.parent.push_back(prev);
        td.bags.push_back(VertexSet::from_sorted(std::move(bag)));
        prev = static_cast<int>(td.bags.size()) - 1;
      }
      td.parent[cv] = prev;
      ++eidx;
    }
  return td;
}

TreeDecomposition tree_edge_td(const Graph& tree) {
  check_tree(tree);
  TreeDecomposition td;
  if (tree.num_vertices() == 1) {
    td.bags = {VertexSet({0})};
    td.parent = {-1};
    td.root = 0;
    return td;
  }
  // one bag per edge, bags adjacent when the edges share an endpoint
  std::vector<int> bag_of_vertex(tree.num_vertices(), -1);
  std::vector<Vertex> stack{0};
  std::vector<char> seen(tree.num_vertices(), 0);
  seen[0] = 1;
  td.root = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : tree.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        int id = static_cast<int>(td.bags.size());
        td.bags.push_back(VertexSet({v, w}));
        td.parent.push_back(bag_of_vertex[v]);  // -1 for the first bag
        bag_of_vertex[w] = id;
        if (bag_of_vertex[v] == -1) bag_of_vertex[v] = id;
        stack.push_back(w);
      }
  }
  // first created bag is the root
  for (std::size_t i = 0; i < td.parent.size(); ++i)
    if (td.parent[i] == -1) td.root = static_cast<int>(i);
  return td;
}

}  // namespace pathcert
