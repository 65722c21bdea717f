#include "pathcert/normalize.hpp"

#include <algorithm>
#include <stdexcept>

namespace pathcert {

int NormalizedDecomposition::lca(int a, int b) const {
  while (a != b) {
    if (nodes[a].depth < nodes[b].depth)
      b = nodes[b].parent;
    else
      a = nodes[a].parent;
  }
  return a;
}

TreeDecomposition NormalizedDecomposition::bag_tree(const VertexSet& scope_filter) const {
  TreeDecomposition td;
  td.root = root;
  td.parent.reserve(nodes.size());
  td.bags.reserve(nodes.size());
  for (const auto& nd : nodes) {
    td.parent.push_back(nd.parent);
    td.bags.push_back(nd.bag.set_intersect(scope_filter));
  }
  return td;
}

TreeDecomposition NormalizedDecomposition::bag_tree() const {
  TreeDecomposition td;
  td.root = root;
  for (const auto& nd : nodes) {
    td.parent.push_back(nd.parent);
    td.bags.push_back(nd.bag);
  }
  return td;
}

DecompositionIndex::DecompositionIndex(const Graph& g_, const TreeDecomposition& td_)
    : g(&g_), td(&td_) {
  const int nn = td_.num_nodes();
  if (nn == 0) {
    top.assign(g_.num_vertices(), -1);
    return;
  }
  auto children = td_.children();
  std::vector<int> depth(nn, 0);
  node_postorder.reserve(nn);
  // Iterative DFS producing depths and a post-order.
  std::vector<std::pair<int, std::size_t>> stack{{td_.root, 0}};
  while (!stack.empty()) {
    auto& [x, ci] = stack.back();
    if (ci < children[x].size()) {
      int c = children[x][ci++];
      depth[c] = depth[x] + 1;
      stack.emplace_back(c, 0);
    } else {
      node_postorder.push_back(x);
      stack.pop_back();
    }
  }
  if (static_cast<int>(node_postorder.size()) != nn)
    throw std::invalid_argument("decomposition tree is not connected");

  top.assign(g_.num_vertices(), -1);
  for (int x = 0; x < nn; ++x)
    for (Vertex v : td_.bags[x])
      if (top[v] == -1 || depth[x] < depth[top[v]]) top[v] = x;
  bucket.assign(nn, {});
  for (Vertex v = 0; v < g_.num_vertices(); ++v)
    if (top[v] >= 0) bucket[top[v]].push_back(v);
}

namespace {

struct RecordedMember {
  std::vector<Vertex> vset;  // sorted
  std::vector<int> kids;     // previously recorded maximal sub-members
};

struct Dsu {
  std::vector<int> parent;
  std::vector<std::vector<Vertex>> members;
  std::vector<std::vector<int>> pending;
  std::vector<char> dirty, active;

  explicit Dsu(int n) : parent(n, -1), members(n), pending(n), dirty(n, 0), active(n, 0) {}

  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void activate(Vertex v) {
    parent[v] = v;
    members[v] = {v};
    active[v] = 1;
    dirty[v] = 1;
  }
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (members[a].size() < members[b].size()) std::swap(a, b);
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
    members[b].shrink_to_fit();
    pending[a].insert(pending[a].end(), pending[b].begin(), pending[b].end());
    pending[b].clear();
    parent[b] = a;
    dirty[a] = 1;
    return a;
  }
};

}  // namespace

NormalizedDecomposition build_normalized(const DecompositionIndex& idx,
                                         const VertexSet& s) {
  const Graph& g = *idx.g;
  for (Vertex v : s) g.check_vertex(v);
  {
    auto comps = connected_components(g, s);
    if (comps.size() != 1)
      throw std::invalid_argument("build_normalized: subgraph is not connected");
  }
  const int n = g.num_vertices();
  std::vector<char> in_s(n, 0);
  for (Vertex v : s) in_s[v] = 1;

  Dsu dsu(n);
  std::vector<RecordedMember> records;
  std::vector<int> member_owner(n, -1);  // first record containing v
  std::vector<Vertex> touched;

  for (int x : idx.node_postorder) {
    touched.clear();
    for (Vertex v : idx.bucket[x]) {
      if (!in_s[v]) continue;
      dsu.activate(v);
      touched.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (dsu.active[w]) dsu.unite(v, w);
    }
    for (Vertex c : touched) {
      int r = dsu.find(c);
      if (!dsu.dirty[r]) continue;
      dsu.dirty[r] = 0;
      int id = static_cast<int>(records.size());
      RecordedMember rec;
      rec.vset = dsu.members[r];
      std::sort(rec.vset.begin(), rec.vset.end());
      rec.kids = std::move(dsu.pending[r]);
      dsu.pending[r] = {id};
      for (Vertex v : rec.vset)
        if (member_owner[v] == -1) member_owner[v] = id;
      records.push_back(std::move(rec));
    }
  }

  int root_rec = -1;
  for (int i = 0; i < static_cast<int>(records.size()); ++i)
    if (records[i].vset.size() == s.size()) {
      root_rec = i;
      break;
    }
  if (root_rec == -1)
    throw std::invalid_argument(
        "build_normalized: input decomposition does not cover the subgraph");

  // Renumber deterministically: preorder with siblings ordered by minimum
  // vertex id, independent of the traversal order used above.
  const int m = static_cast<int>(records.size());
  std::vector<std::vector<int>> kid_lists(m);
  for (int i = 0; i < m; ++i) {
    kid_lists[i] = records[i].kids;
    std::sort(kid_lists[i].begin(), kid_lists[i].end(),
              [&](int a, int b) { return records[a].vset[0] < records[b].vset[0]; });
  }

  NormalizedDecomposition nd;
  nd.scope = s;
  nd.nodes.resize(m);
  nd.owner.assign(n, -1);
  std::vector<int> new_id(m, -1);
  std::vector<std::pair<int, std::size_t>> stack{{root_rec, 0}};
  int counter = 0;
  new_id[root_rec] = counter++;
  nd.root = 0;
  while (!stack.empty()) {
    auto& [rec, ci] = stack.back();
    if (ci < kid_lists[rec].size()) {
      int c = kid_lists[rec][ci++];
      new_id[c] = counter++;
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
    }
  }
  if (counter != m)
    throw std::logic_error("build_normalized: member forest is not a single tree");

  for (int i = 0; i < m; ++i) {
    NormalizedNode& node = nd.nodes[new_id[i]];
    node.vset = VertexSet::from_sorted(std::move(records[i].vset));
    node.children.reserve(kid_lists[i].size());
    for (int c : kid_lists[i]) {
      node.children.push_back(new_id[c]);
      nd.nodes[new_id[c]].parent = new_id[i];
    }
  }
  for (Vertex v : s) nd.owner[v] = new_id[member_owner[v]];

  // Cores, depths, preorder intervals and a post-order.
  std::vector<std::vector<Vertex>> cores(m);
  for (Vertex v : s) cores[nd.owner[v]].push_back(v);
  for (int i = 0; i < m; ++i)
    nd.nodes[i].core = VertexSet::from_sorted(std::move(cores[i]));

  nd.postorder.reserve(m);
  int timer = 0;
  std::vector<std::pair<int, std::size_t>> st{{nd.root, 0}};
  nd.nodes[nd.root].depth = 0;
  nd.nodes[nd.root].tin = timer++;
  while (!st.empty()) {
    auto& [x, ci] = st.back();
    if (ci < nd.nodes[x].children.size()) {
      int c = nd.nodes[x].children[ci++];
      nd.nodes[c].depth = nd.nodes[x].depth + 1;
      nd.nodes[c].tin = timer++;
      st.emplace_back(c, 0);
    } else {
      nd.nodes[x].tout = timer;
      nd.postorder.push_back(x);
      st.pop_back();
    }
  }

  // Bags, bottom-up: candidates for N(V(a)) are the children's bags plus the
  // neighbors of the core; keep those outside V(a).
  std::vector<Vertex> cand;
  for (int x : nd.postorder) {
    cand.clear();
    for (int c : nd.nodes[x].children)
      for (Vertex w : nd.nodes[c].bag) cand.push_back(w);
    for (Vertex v : nd.nodes[x].core)
      for (Vertex w : g.neighbors(v))
        if (in_s[w]) cand.push_back(w);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<Vertex> bag;
    for (Vertex w : cand)
      if (!nd.vset_contains(x, w)) bag.push_back(w);
    VertexSet nb = VertexSet::from_sorted(std::move(bag));
    nd.nodes[x].bag = nd.nodes[x].core.set_union(nb);
  }
  return nd;
}

NormalizedDecomposition build_normalized(const Graph& g, const TreeDecomposition& td,
                                         const VertexSet& s) {
  DecompositionIndex idx(g, td);
  return build_normalized(idx, s);
}

NormalizedDecomposition subtree_view(const NormalizedDecomposition& nd, int alpha) {
  NormalizedDecomposition out;
  out.scope = nd.nodes[alpha].vset;
  out.owner.assign(nd.owner.size(), -1);

  std::vector<int> old_ids;
  std::vector<std::pair<int, std::size_t>> st{{alpha, 0}};
  old_ids.push_back(alpha);
  while (!st.empty()) {
    auto& [x, ci] = st.back();
    if (ci < nd.nodes[x].children.size()) {
      int c = nd.nodes[x].children[ci++];
      old_ids.push_back(c);
      st.emplace_back(c, 0);
    } else {
      st.pop_back();
    }
  }
  const int m = static_cast<int>(old_ids.size());
  std::vector<int> new_id(nd.num_nodes(), -1);
  for (int i = 0; i < m; ++i) new_id[old_ids[i]] = i;

  out.nodes.resize(m);
  out.root = 0;
  for (int i = 0; i < m; ++i) {
    const NormalizedNode& src = nd.nodes[old_ids[i]];
    NormalizedNode& dst = out.nodes[i];
    dst.vset = src.vset;
    dst.core = src.core;
    dst.bag = src.bag.set_intersect(out.scope);
    dst.parent = (i == 0) ? -1 : new_id[src.parent];
    dst.children.reserve(src.children.size());
    for (int c : src.children) dst.children.push_back(new_id[c]);
    for (Vertex v : src.core) out.owner[v] = i;
  }
  out.postorder.reserve(m);
  int timer = 0;
  out.nodes[0].tin = timer++;
  out.nodes[0].depth = 0;
  std::vector<std::pair<int, std::size_t>> st2{{0, 0}};
  while (!st2.empty()) {
    auto& [x, ci] = st2.back();
    if (ci < out.nodes[x].children.size()) {
      int c = out.nodes[x].children[ci++];
      out.nodes[c].depth = out.nodes[x].depth + 1;
      out.nodes[c].tin = timer++;
      st2.emplace_back(c, 0);
    } else {
      out.nodes[x].tout = timer;
      out.postorder.push_back(x);
      st2.pop_back();
    }
  }
  return out;
}

ComplementClass component_complement_classify(const NormalizedDecomposition& nd,
                                              const Graph& g,
                                              const std::vector<int>& q_path,
                                              const VertexSet& comp) {
  (void)g;
  if (comp.empty() || q_path.empty())
    throw std::logic_error("component classification: empty input");
  std::vector<char> on_path(nd.num_nodes(), 0);
  int q_top = q_path.front();
  for (int q : q_path) {
    on_path[q] = 1;
    if (nd.nodes[q].depth < nd.nodes[q_top].depth) q_top = q;
  }
  int x = nd.owner[comp.min()];
  if (x >= 0) {
    while (x != -1 && nd.nodes[x].vset.size() < comp.size()) x = nd.nodes[x].parent;
    if (x != -1 && nd.nodes[x].vset == comp && !on_path[x] && nd.nodes[x].parent >= 0 &&
        on_path[nd.nodes[x].parent])
      return {ComplementClass::ChildNode, x};
  }
  if (comp.disjoint_from(nd.nodes[q_top].vset))
    return {ComplementClass::ParentSide, -1};
  throw std::logic_error("component classification failed");
}

}  // namespace pathcert
