#include "pathcert/decomp.hpp"

#include <algorithm>
#include <stdexcept>

namespace pathcert {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

std::vector<std::vector<int>> TreeDecomposition::children() const {
  std::vector<std::vector<int>> ch(bags.size());
  for (int v = 0; v < num_nodes(); ++v)
    if (parent[v] >= 0) ch[parent[v]].push_back(v);
  return ch;
}

void TreeDecomposition::reroot(int new_root) {
  if (new_root == root) return;
  std::vector<int> chain;
  for (int x = new_root; x != -1; x = parent[x]) chain.push_back(x);
  for (std::size_t i = chain.size(); i-- > 1;) parent[chain[i]] = chain[i - 1];
  parent[new_root] = -1;
  root = new_root;
}

int PathDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

namespace {

// Shared coverage checks over G[scope]; `subtree_check` distinguishes the
// tree and path occurrence conditions.
void check_coverage(const Graph& g, const VertexSet& scope,
                    const std::vector<VertexSet>& bags, ValidationReport& rep) {
  std::vector<char> covered(g.num_vertices(), 0);
  for (const auto& b : bags)
    for (Vertex v : b) {
      if (v < 0 || v >= g.num_vertices()) {
        rep.violations.push_back("bag vertex " + std::to_string(v) +
                                 " out of range");
        return;
      }
      if (!scope.contains(v))
        rep.violations.push_back("bag vertex " + std::to_string(v) +
                                 " outside scope");
      covered[v] = 1;
    }
  for (Vertex v : scope)
    if (!covered[v])
      rep.violations.push_back("vertex " + std::to_string(v) + " in no bag");
  for (Vertex v : scope)
    for (Vertex w : g.neighbors(v)) {
      if (w < v || !scope.contains(w)) continue;
      bool found = false;
      for (const auto& b : bags)
        if (b.contains(v) && b.contains(w)) {
          found = true;
          break;
        }
      if (!found)
        rep.violations.push_back("edge " + std::to_string(v) + "-" +
                                 std::to_string(w) + " covered by no bag");
    }
}

}  // namespace

ValidationReport validate_tree_decomposition_scoped(const Graph& g,
                                                    const VertexSet& scope,
                                                    const TreeDecomposition& td) {
  ValidationReport rep;
  rep.width = td.width();
  const int nn = td.num_nodes();
  if (nn == 0) {
    if (!scope.empty()) rep.violations.push_back("no nodes but scope non-empty");
    return rep;
  }
  if (td.root < 0 || td.root >= nn || static_cast<int>(td.parent.size()) != nn) {
    rep.violations.push_back("malformed tree structure");
    return rep;
  }
  // Single rooted tree: exactly one root and every node reaches it.
  {
    int roots = 0;
    for (int v = 0; v < nn; ++v) {
      if (td.parent[v] == -1) {
        ++roots;
        continue;
      }
      if (td.parent[v] < 0 || td.parent[v] >= nn) {
        rep.violations.push_back("parent pointer out of range");
        return rep;
      }
    }
    if (roots != 1 || td.parent[td.root] != -1) {
      rep.violations.push_back("parent relation is not a single rooted tree");
      return rep;
    }
    for (int v = 0; v < nn; ++v) {
      int x = v;
      for (int steps = 0; x != -1; ++steps, x = td.parent[x]) {
        if (steps > nn) {
          rep.violations.push_back("cycle in parent relation");
          return rep;
        }
      }
    }
  }
  check_coverage(g, scope, td.bags, rep);
  // Occurrence connectivity: the nodes holding each vertex induce a subtree.
  for (Vertex v : scope) {
    int cnt = 0;
    for (const auto& b : td.bags)
      if (b.contains(v)) ++cnt;
    if (cnt == 0) continue;  // already reported
    // Walking up from every occurrence, occurrences form a subtree iff the
    // number of occurrence nodes whose parent is not an occurrence is one.
    int tops = 0;
    for (int x = 0; x < nn; ++x)
      if (td.bags[x].contains(v)) {
        int p = td.parent[x];
        if (p == -1 || !td.bags[p].contains(v)) ++tops;
      }
    if (tops != 1)
      rep.violations.push_back("occurrences of vertex " + std::to_string(v) +
                               " are disconnected");
  }
  return rep;
}

ValidationReport validate_tree_decomposition(const Graph& g,
                                             const TreeDecomposition& td) {
  return validate_tree_decomposition_scoped(g, g.all_vertices(), td);
}

ValidationReport validate_path_decomposition_scoped(const Graph& g,
                                                    const VertexSet& scope,
                                                    const PathDecomposition& pd) {
  ValidationReport rep;
  rep.width = pd.width();
  check_coverage(g, scope, pd.bags, rep);
  const int k = static_cast<int>(pd.bags.size());
  for (Vertex v : scope) {
    int first = -1, last = -1, cnt = 0;
    for (int i = 0; i < k; ++i)
      if (pd.bags[i].contains(v)) {
        if (first < 0) first = i;
        last = i;
        ++cnt;
      }
    if (cnt > 0 && last - first + 1 != cnt)
      rep.violations.push_back("occurrences of vertex " + std::to_string(v) +
                               " are not consecutive");
  }
  return rep;
}

ValidationReport validate_path_decomposition(const Graph& g,
                                             const PathDecomposition& pd) {
  return validate_path_decomposition_scoped(g, g.all_vertices(), pd);
}

PathDecomposition restrict_pd(const PathDecomposition& pd, const VertexSet& s) {
  PathDecomposition out;
  for (const auto& b : pd.bags) {
    VertexSet r = b.set_intersect(s);
    if (!r.empty()) out.bags.push_back(std::move(r));
  }
  return out;
}

TreeDecomposition restrict_td(const TreeDecomposition& td, const VertexSet& s) {
  TreeDecomposition out;
  out.parent = td.parent;
  out.root = td.root;
  out.bags.reserve(td.bags.size());
  for (const auto& b : td.bags) out.bags.push_back(b.set_intersect(s));
  return out;
}

PathDecomposition concatenate(const std::vector<PathDecomposition>& pds) {
  PathDecomposition out;
  for (const auto& pd : pds)
    out.bags.insert(out.bags.end(), pd.bags.begin(), pd.bags.end());
  return out;
}

namespace {

void drop_empty_and_dedupe(PathDecomposition& pd) {
  std::vector<VertexSet> out;
  for (auto& b : pd.bags) {
    if (b.empty()) continue;
    if (!out.empty() && out.back() == b) continue;
    out.push_back(std::move(b));
  }
  pd.bags = std::move(out);
}

const PathDecomposition& lookup_part(const PartsMap& parts, const VertexSet& comp) {
  auto it = parts.find(comp);
  if (it == parts.end())
    throw std::invalid_argument("no path decomposition supplied for a component");
  // The part must cover exactly this component.
  VertexSet u;
  for (const auto& b : it->second.bags) u = u.set_union(b);
  if (u != comp)
    throw std::invalid_argument("component decomposition covers the wrong set");
  return it->second;
}

}  // namespace

PathDecomposition combine_around_node_scoped(const Graph& g, const VertexSet& scope,
                                             const TreeDecomposition& td, int q,
                                             const PartsMap& parts) {
  if (q < 0 || q >= td.num_nodes())
    throw std::invalid_argument("combine_around_node: bad node");
  const VertexSet& bq = td.bags[q];
  PathDecomposition out;
  auto comps = connected_components(g, scope.set_minus(bq));
  if (comps.empty()) {
    out.bags.push_back(bq);
    return out;
  }
  for (const auto& comp : comps) {
    const PathDecomposition& part = lookup_part(parts, comp);
    for (const auto& b : part.bags) out.bags.push_back(b.set_union(bq));
  }
  drop_empty_and_dedupe(out);
  return out;
}

PathDecomposition combine_around_node(const Graph& g, const TreeDecomposition& td,
                                      int q, const PartsMap& parts) {
  return combine_around_node_scoped(g, g.all_vertices(), td, q, parts);
}

PathDecomposition combine_along_path(const Graph& g, const TreeDecomposition& td,
                                     const std::vector<int>& q_path,
                                     const PartsMap& parts) {
  if (q_path.empty()) throw std::invalid_argument("combine_along_path: empty path");
  const int nn = td.num_nodes();
  std::vector<char> on_path(nn, 0);
  for (std::size_t i = 0; i < q_path.size(); ++i) {
    int q = q_path[i];
    if (q < 0 || q >= nn) throw std::invalid_argument("combine_along_path: bad node");
    if (on_path[q]) throw std::invalid_argument("combine_along_path: repeated node");
    on_path[q] = 1;
  }
  // Adjacency of the decomposition tree, to verify the path and to carve out
  // the block subtree T_q hanging at each path node.
  std::vector<std::vector<int>> adj(nn);
  for (int v = 0; v < nn; ++v)
    if (td.parent[v] >= 0) {
      adj[v].push_back(td.parent[v]);
      adj[td.parent[v]].push_back(v);
    }
  for (std::size_t i = 0; i + 1 < q_path.size(); ++i) {
    int a = q_path[i], b = q_path[i + 1];
    if (std::find(adj[a].begin(), adj[a].end(), b) == adj[a].end())
      throw std::invalid_argument("combine_along_path: nodes not consecutive in tree");
  }

  std::vector<PathDecomposition> blocks;
  std::vector<int> stack, block_nodes;
  std::vector<char> seen(nn, 0);
  for (int q : q_path) seen[q] = 1;
  for (int q : q_path) {
    block_nodes.assign(1, q);
    stack.assign(1, q);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          block_nodes.push_back(y);
          stack.push_back(y);
        }
    }
    VertexSet vq;
    for (int x : block_nodes) vq = vq.set_union(td.bags[x]);
    blocks.push_back(combine_around_node_scoped(g, vq, td, q, parts));
  }
  PathDecomposition out = concatenate(blocks);
  drop_empty_and_dedupe(out);
  return out;
}

}  // namespace pathcert
