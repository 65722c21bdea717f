#include "pathcert/solve.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace pathcert {

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

bool is_path_subgraph(const Graph& g, const VertexSet& s) {
  // s induces a connected subgraph; it is a path iff degrees stay below 3
  // and no cycle closes (edge count |s| - 1).
  std::size_t edges = 0;
  for (Vertex v : s) {
    int deg = 0;
    for (Vertex w : g.neighbors(v))
      if (s.contains(w)) ++deg;
    if (deg > 2) return false;
    edges += deg;
  }
  return edges / 2 == s.size() - 1;
}

PathDecomposition path_subgraph_pd(const Graph& g, const VertexSet& s) {
  PathDecomposition pd;
  if (s.size() == 1) {
    pd.bags.push_back(s);
    return pd;
  }
  Vertex start = -1;
  for (Vertex v : s) {
    int deg = 0;
    for (Vertex w : g.neighbors(v))
      if (s.contains(w)) ++deg;
    if (deg <= 1) {
      start = v;
      break;
    }
  }
  Vertex prev = -1, cur = start;
  while (true) {
    Vertex next = -1;
    for (Vertex w : g.neighbors(cur))
      if (w != prev && s.contains(w)) {
        next = w;
        break;
      }
    if (next == -1) break;
    pd.bags.push_back(VertexSet({cur, next}));
    prev = cur;
    cur = next;
  }
  return pd;
}

/// Three vertices of G[s] pairwise connectable avoiding the third; exists
/// whenever the connected subgraph is not a path. Prefers the neighbors of
/// the smallest vertex of degree >= 3, otherwise three vertices on a cycle.
std::array<Vertex, 3> branching_triple(const Graph& g, const VertexSet& s) {
  for (Vertex v : s) {
    std::array<Vertex, 3> out{};
    int deg = 0;
    for (Vertex w : g.neighbors(v)) {
      if (!s.contains(w)) continue;
      if (deg < 3) out[deg] = w;
      ++deg;
      if (deg == 3) return out;
    }
  }
  // No branching vertex: find a cycle by depth-first search.
  std::vector<int> parent(g.num_vertices(), -2);
  std::vector<Vertex> stack;
  Vertex root = s.min();
  parent[root] = -1;
  stack.push_back(root);
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (!s.contains(w) || w == parent[v]) continue;
      if (parent[w] != -2) {
        // cycle: v..root path meets w..root path
        std::vector<Vertex> cyc;
        std::vector<char> on(g.num_vertices(), 0);
        for (Vertex x = v; x != -1; x = parent[x]) {
          cyc.push_back(x);
          on[x] = 1;
        }
        std::vector<Vertex> wside;
        Vertex meet = -1;
        for (Vertex x = w; x != -1; x = parent[x]) {
          if (on[x]) {
            meet = x;
            break;
          }
          wside.push_back(x);
        }
        std::vector<Vertex> cycle;
        for (Vertex x : cyc) {
          cycle.push_back(x);
          if (x == meet) break;
        }
        cycle.insert(cycle.end(), wside.rbegin(), wside.rend());
        std::sort(cycle.begin(), cycle.end());
        if (cycle.size() < 3) continue;
        return {cycle[0], cycle[1], cycle[2]};
      }
      parent[w] = v;
      stack.push_back(w);
    }
  }
  throw std::logic_error("branching_triple: subgraph is a path");
}

}  // namespace

ChainState build_chain_state(const Graph& g, const NormalizedDecomposition& nd,
                             const std::vector<int>& zeta, int k) {
  ChainState cs;
  cs.k = k;
  cs.zeta = zeta;
  const int m = static_cast<int>(zeta.size());
  if (m < 2) throw std::logic_error("chain state needs at least two members");
  const VertexSet& scope = nd.scope;

  VertexSet zunion;
  std::vector<int> zindex(g.num_vertices(), 0);  // 1-based block id, 0 = none
  for (int i = 0; i < m; ++i) {
    const VertexSet& vz = nd.nodes[zeta[i]].vset;
    zunion = zunion.set_union(vz);
    for (Vertex v : vz) zindex[v] = i + 1;
  }
  cs.u = scope.set_minus(zunion);
  if (cs.u.empty()) throw std::logic_error("chain state: empty connector set");

  cs.u_between.assign(m + 1, {});
  cs.u_side.assign(m + 1, {});
  std::vector<std::vector<Vertex>> between_acc(m + 1), side_acc(m + 1);
  for (const VertexSet& comp : connected_components(g, cs.u)) {
    std::set<int> labels;
    for (Vertex v : comp)
      for (Vertex w : g.neighbors(v))
        if (zindex[w]) labels.insert(zindex[w]);
    if (labels.empty())
      throw std::logic_error("chain state: connector component touches no block");
    int lo = *labels.begin();
    int hi = *labels.rbegin();
    if (labels.size() > 2 || hi - lo > 1)
      throw std::logic_error("chain state: connector component spans the chain");
    std::vector<Vertex>* dst;
    if (labels.size() == 2)
      dst = &between_acc[lo];
    else if (lo == 1)
      dst = &between_acc[0];
    else if (lo == m)
      dst = &between_acc[m];
    else
      dst = &side_acc[lo];
    dst->insert(dst->end(), comp.begin(), comp.end());
  }
  for (int i = 0; i <= m; ++i) {
    std::sort(between_acc[i].begin(), between_acc[i].end());
    cs.u_between[i] = VertexSet::from_sorted(std::move(between_acc[i]));
    std::sort(side_acc[i].begin(), side_acc[i].end());
    cs.u_side[i] = VertexSet::from_sorted(std::move(side_acc[i]));
  }
  if (!cs.u_side[1].empty() || !cs.u_side[m].empty())
    throw std::logic_error("chain state: end blocks must have empty side sets");

  cs.b_bag.assign(m + 1, {});
  cs.v_block.assign(m + 1, {});
  cs.r_side.assign(m + 1, {});
  for (int i = 1; i <= m; ++i) {
    const VertexSet& vz = nd.nodes[zeta[i - 1]].vset;
    cs.b_bag[i] = nd.nodes[zeta[i - 1]].bag;
    cs.v_block[i] = vz.set_union(cs.b_bag[i]).set_union(cs.u_side[i]);
    cs.r_side[i] = cs.u.set_intersect(cs.b_bag[i]);
    if (cs.r_side[i] != neighborhood(g, vz).set_intersect(scope))
      throw std::logic_error("chain state: separator differs from neighborhood");
  }

  // Tree paths between consecutive chain members, endpoints included; the
  // outermost two connect to the root.
  cs.q_path.assign(m + 1, {});
  cs.q_top.assign(m + 1, -1);
  auto path_between = [&](int a, int b) {
    int l = nd.lca(a, b);
    std::vector<int> up, down;
    for (int x = a; x != l; x = nd.nodes[x].parent) up.push_back(x);
    up.push_back(l);
    for (int x = b; x != l; x = nd.nodes[x].parent) down.push_back(x);
    up.insert(up.end(), down.rbegin(), down.rend());
    return std::make_pair(up, l);
  };
  for (int i = 0; i <= m; ++i) {
    int a = (i == 0) ? nd.root : zeta[i - 1];
    int b = (i == m) ? nd.root : zeta[i];
    auto [p, top] = path_between(a, b);
    cs.q_path[i] = std::move(p);
    cs.q_top[i] = top;
  }

  // Between-separators R_{i,i+1}: connector vertices in the bag of the joint
  // ancestor that reach both neighbouring blocks through the connector part
  // of their owner's vertex set.
  cs.r_between.assign(m + 1, {});
  for (int i = 1; i < m; ++i) {
    int joint = cs.q_top[i];
    std::vector<Vertex> picked;
    for (Vertex v : nd.nodes[joint].bag) {
      if (!cs.u.contains(v)) continue;
      int sigma = nd.owner[v];
      if (!nd.is_ancestor(sigma, joint))
        throw std::logic_error("chain state: owner not above the joint ancestor");
      VertexSet usigma = cs.u.set_intersect(nd.nodes[sigma].vset);
      VertexSet rest = usigma.set_minus(VertexSet({v}));
      const VertexSet& za = nd.nodes[zeta[i - 1]].vset;
      const VertexSet& zb = nd.nodes[zeta[i]].vset;
      if (u_path_connected(g, rest, VertexSet({v}), za) &&
          u_path_connected(g, rest, VertexSet({v}), zb))
        picked.push_back(v);
    }
    cs.r_between[i] = VertexSet(picked);
  }
  cs.r_all = {};
  for (int i = 1; i <= m; ++i) cs.r_all = cs.r_all.set_union(cs.r_side[i]);
  for (int i = 1; i < m; ++i) cs.r_all = cs.r_all.set_union(cs.r_between[i]);

  // Leftover components, in concatenation order, each classified.
  auto add_components = [&](bool from_between, int i) {
    VertexSet sc;
    std::vector<int> qp;
    if (from_between) {
      VertexSet cut;
      for (int x : cs.q_path[i]) cut = cut.set_union(nd.nodes[x].bag);
      sc = cs.u_between[i].set_minus(cut);
      qp = cs.q_path[i];
    } else {
      sc = cs.v_block[i].set_minus(cs.b_bag[i]);
      qp = {zeta[i - 1]};
    }
    std::optional<std::vector<VertexSet>> sec_comps;
    for (const VertexSet& comp : connected_components(g, sc)) {
      ChainState::Component c;
      c.vset = comp;
      c.from_between = from_between;
      c.i = i;
      ComplementClass cls = component_complement_classify(nd, g, qp, comp);
      if (cls.kind == ComplementClass::ChildNode) {
        c.child = true;
        c.child_node = cls.child;
      } else {
        c.child = false;
        VertexSet sec_set;
        if (!from_between) {
          if (!(1 < i && i < m))
            throw std::logic_error("chain state: side leftover at an end block");
          sec_set = comp;  // U_i minus B_i equals U_i minus R_i
        } else {
          if (!(1 <= i && i < m))
            throw std::logic_error("chain state: outer leftover off the chain");
          if (!sec_comps) {
            VertexSet cut =
                cs.r_side[i].set_union(cs.r_between[i]).set_union(cs.r_side[i + 1]);
            sec_comps = connected_components(g, cs.u_between[i].set_minus(cut));
          }
          for (const VertexSet& sc2 : *sec_comps)
            if (sc2.contains(comp.min())) {
              sec_set = sc2;
              break;
            }
          if (sec_set.empty() || !comp.is_subset_of(sec_set))
            throw std::logic_error("chain state: no secondary component contains γ");
        }
        int found = -1;
        for (std::size_t j = 0; j < cs.secondaries.size(); ++j)
          if (cs.secondaries[j].vset == sec_set) {
            found = static_cast<int>(j);
            break;
          }
        if (found < 0) {
          found = static_cast<int>(cs.secondaries.size());
          cs.secondaries.push_back({sec_set, from_between, i});
        }
        c.secondary = found;
      }
      cs.gamma.push_back(std::move(c));
    }
  };
  for (int i = 0; i <= m; ++i) {
    add_components(true, i);
    if (i < m) add_components(false, i + 1);
  }
  return cs;
}

// ---------------------------------------------------------------------------

struct Solver::StepOut {
  bool done = false;
  SolveResult result;           // when done
  VertexSet call_s;             // when not done
  std::uint32_t call_b = 0;
  int view_of = -1;             // nd node to view for the callee, -1 fresh
};

struct Solver::Frame {
  VertexSet s;
  std::uint32_t b = kNoBound;
  std::shared_ptr<const NormalizedDecomposition> nd;
  int phase = 0;
  std::size_t idx = 0;
  std::vector<int> members;  // postorder without the root
  std::vector<SolveResultPtr> res_by_node;
  int k = -1;
  std::optional<ChainState> chain;
  std::vector<SolveResultPtr> secondary_res;
};

Solver::Solver(const Graph& g, TreeDecomposition td_in) : g_(&g), td_(std::move(td_in)) {
  auto rep = validate_tree_decomposition(g, td_);
  if (!rep.ok())
    throw std::invalid_argument("solver: input tree decomposition invalid: " +
                                rep.violations.front());
  if (td_.num_nodes() > 0) td_.reroot(0);
  t_ = std::max(1, td_.width() + 1);
  index_ = std::make_unique<DecompositionIndex>(g, td_);
}

PathDecomposition Solver::outcome_b_pd(Frame& fr) const {
  // Every component of the scope minus the root bag is a child member whose
  // decomposition is already memoized.
  PartsMap parts;
  const auto& root_node = fr.nd->nodes[fr.nd->root];
  for (int c : root_node.children) {
    const SolveResultPtr& r = fr.res_by_node[c];
    if (!r || !r->pd) throw std::logic_error("outcome B: child decomposition missing");
    parts.emplace(fr.nd->nodes[c].vset, *r->pd);
  }
  TreeDecomposition bt = fr.nd->bag_tree();
  PathDecomposition pd =
      combine_around_node_scoped(*g_, fr.s, bt, fr.nd->root, parts);
  drop_empty_and_dedupe(pd);
  return pd;
}

SolveResult Solver::escalate_nonpath(Frame& fr) const {
  auto tri = branching_triple(*g_, fr.s);
  SolveResult res;
  res.h = 1;
  res.witness = Witness::inner(fr.s, Witness::leaf(VertexSet({tri[0]})),
                               Witness::leaf(VertexSet({tri[1]})),
                               Witness::leaf(VertexSet({tri[2]})));
  if (1 < fr.b) res.pd = outcome_b_pd(fr);
  return res;
}

SolveResult Solver::chain_escalate(Frame& fr, const ChainState::Secondary& sec,
                                   const SolveResultPtr& sec_res) const {
  const ChainState& cs = *fr.chain;
  SolveResult res;
  res.h = fr.k + 1;
  WitnessPtr left, right;
  if (sec.from_between) {
    left = fr.res_by_node[cs.zeta[sec.i - 1]]->witness;
    right = fr.res_by_node[cs.zeta[sec.i]]->witness;
  } else {
    left = fr.res_by_node[cs.zeta[sec.i - 2]]->witness;
    right = fr.res_by_node[cs.zeta[sec.i]]->witness;
  }
  res.witness = Witness::inner(fr.s, left, sec_res->witness, right);
  if (static_cast<std::uint32_t>(res.h) < fr.b) res.pd = outcome_b_pd(fr);
  return res;
}

SolveResult Solver::chain_outcome_a(Frame& fr) const {
  const ChainState& cs = *fr.chain;
  const int m = static_cast<int>(cs.zeta.size());
  PartsMap parts;
  for (const auto& comp : cs.gamma) {
    if (comp.child) {
      const SolveResultPtr& r = fr.res_by_node[comp.child_node];
      if (!r || r->h >= fr.k || !r->pd)
        throw std::logic_error("chain assembly: child part unusable");
      parts.emplace(comp.vset, *r->pd);
    } else {
      const SolveResultPtr& r = fr.secondary_res[comp.secondary];
      if (!r || r->h >= fr.k || !r->pd)
        throw std::logic_error("chain assembly: secondary part unusable");
      parts.emplace(comp.vset, restrict_pd(*r->pd, comp.vset));
    }
  }
  std::vector<PathDecomposition> pieces;
  for (int i = 0; i <= m; ++i) {
    if (!cs.u_between[i].empty()) {
      TreeDecomposition bt = fr.nd->bag_tree(cs.u_between[i]);
      pieces.push_back(combine_along_path(*g_, bt, cs.q_path[i], parts));
    }
    if (i < m) {
      TreeDecomposition bt = fr.nd->bag_tree(cs.v_block[i + 1]);
      pieces.push_back(
          combine_around_node_scoped(*g_, cs.v_block[i + 1], bt, cs.zeta[i], parts));
    }
  }
  SolveResult res;
  res.h = fr.k;
  // first member in deterministic order reaching the top height
  for (std::size_t j = 0; j < fr.members.size(); ++j)
    if (fr.res_by_node[fr.members[j]]->h == fr.k) {
      res.witness = fr.res_by_node[fr.members[j]]->witness;
      break;
    }
  PathDecomposition pd = concatenate(pieces);
  drop_empty_and_dedupe(pd);
  res.pd = std::move(pd);
  return res;
}

void Solver::check_pd(const Frame& fr, const SolveResult& res) const {
  if (res.pd) {
    if (res.pd->width() > t_ * res.h + 1)
      throw std::logic_error("solve: decomposition exceeds its width bound");
    if (paranoid_) {
      auto rep = validate_path_decomposition_scoped(*g_, fr.s, *res.pd);
      if (!rep.ok())
        throw std::logic_error("solve: invalid decomposition: " +
                               rep.violations.front());
    }
  }
  if (paranoid_) {
    auto wc = validate_witness(*g_, *res.witness);
    if (!wc.ok() || wc.height != res.h)
      throw std::logic_error("solve: witness does not certify the height");
  }
}

Solver::StepOut Solver::step(Frame& fr) {
  auto done = [&](SolveResult r) {
    StepOut so;
    so.done = true;
    so.result = std::move(r);
    return so;
  };
  if (fr.phase == 0) {
    if (fr.b == 0) {
      ++counters_.pruned;
      SolveResult res;
      res.h = 0;
      res.witness = Witness::leaf(fr.s);
      return done(std::move(res));
    }
    if (is_path_subgraph(*g_, fr.s)) {
      SolveResult res;
      res.h = 0;
      res.witness = Witness::leaf(fr.s);
      res.pd = path_subgraph_pd(*g_, fr.s);
      return done(std::move(res));
    }
    if (!fr.nd)
      fr.nd = std::make_shared<const NormalizedDecomposition>(
          build_normalized(*index_, fr.s));
    if (fr.nd->num_nodes() == 1) {
      // Scope fits in one bag; not a path, so it branches or has a cycle.
      auto tri = branching_triple(*g_, fr.s);
      SolveResult res;
      res.h = 1;
      res.witness = Witness::inner(fr.s, Witness::leaf(VertexSet({tri[0]})),
                                   Witness::leaf(VertexSet({tri[1]})),
                                   Witness::leaf(VertexSet({tri[2]})));
      if (1 < fr.b) res.pd = PathDecomposition{{fr.s}};
      return done(std::move(res));
    }
    fr.members.assign(fr.nd->postorder.begin(), fr.nd->postorder.end() - 1);
    fr.res_by_node.assign(fr.nd->num_nodes(), nullptr);
    fr.phase = 1;
    fr.idx = 0;
  }
  if (fr.phase == 1) {
    while (fr.idx < fr.members.size()) {
      int alpha = fr.members[fr.idx];
      auto key = std::make_pair(fr.nd->nodes[alpha].vset, fr.b);
      auto it = memo_.find(key);
      if (it == memo_.end()) {
        StepOut so;
        so.call_s = key.first;
        so.call_b = fr.b;
        so.view_of = alpha;
        return so;
      }
      if (fr.b != kNoBound && static_cast<std::uint32_t>(it->second->h) == fr.b) {
        ++counters_.pruned;
        SolveResult res;
        res.h = it->second->h;
        res.witness = it->second->witness;
        return done(std::move(res));
      }
      fr.res_by_node[alpha] = it->second;
      ++fr.idx;
    }
    int k = 0;
    for (int alpha : fr.members) k = std::max(k, fr.res_by_node[alpha]->h);
    fr.k = k;
    if (k == 0) {
      // All proper members are paths but the whole scope is not: certify
      // height one directly. (Assembling along the chain would not meet the
      // width bound t*0+1 here.)
      return done(escalate_nonpath(fr));
    }
    // Minimal members reaching the top height, in postorder.
    std::vector<char> below_k(fr.nd->num_nodes(), 0);
    std::vector<int> zs;
    for (int alpha : fr.members) {
      char b = 0;
      for (int c : fr.nd->nodes[alpha].children)
        b |= below_k[c] | static_cast<char>(fr.res_by_node[c]->h == k);
      below_k[alpha] = b;
      if (fr.res_by_node[alpha]->h == k && !b) zs.push_back(alpha);
    }
    if (zs.size() == 1) {
      // Single minimal member: assemble along the root-to-member path.
      std::vector<int> q;
      for (int x = zs[0]; x != -1; x = fr.nd->nodes[x].parent) q.push_back(x);
      std::reverse(q.begin(), q.end());
      VertexSet cut;
      for (int x : q) cut = cut.set_union(fr.nd->nodes[x].bag);
      PartsMap parts;
      for (const VertexSet& comp : connected_components(*g_, fr.s.set_minus(cut))) {
        ComplementClass cls = component_complement_classify(*fr.nd, *g_, q, comp);
        if (cls.kind != ComplementClass::ChildNode)
          throw std::logic_error("single-chain assembly: unexpected component");
        const SolveResultPtr& r = fr.res_by_node[cls.child];
        if (!r || r->h >= k || !r->pd)
          throw std::logic_error("single-chain assembly: part unusable");
        parts.emplace(comp, *r->pd);
      }
      TreeDecomposition bt = fr.nd->bag_tree();
      SolveResult res;
      res.h = k;
      res.witness = fr.res_by_node[zs[0]]->witness;
      PathDecomposition pd = combine_along_path(*g_, bt, q, parts);
      drop_empty_and_dedupe(pd);
      res.pd = std::move(pd);
      return done(std::move(res));
    }
    // Several minimal members: connect them through the rest of the scope.
    const int m = static_cast<int>(zs.size());
    VertexSet zunion;
    std::vector<int> zindex(g_->num_vertices(), 0);
    for (int i = 0; i < m; ++i) {
      const VertexSet& vz = fr.nd->nodes[zs[i]].vset;
      zunion = zunion.set_union(vz);
      for (Vertex v : vz) zindex[v] = i + 1;
    }
    VertexSet u = fr.s.set_minus(zunion);
    std::set<std::pair<int, int>> h_edges;
    for (const VertexSet& comp : connected_components(*g_, u)) {
      std::set<int> labels;
      for (Vertex v : comp)
        for (Vertex w : g_->neighbors(v))
          if (zindex[w]) labels.insert(zindex[w]);
      for (auto a = labels.begin(); a != labels.end(); ++a)
        for (auto b = std::next(a); b != labels.end(); ++b)
          h_edges.emplace(*a - 1, *b - 1);
    }
    std::vector<std::vector<int>> h_adj(m);
    for (auto [a, b] : h_edges) {
      h_adj[a].push_back(b);
      h_adj[b].push_back(a);
    }
    bool is_path = static_cast<int>(h_edges.size()) == m - 1;
    for (int i = 0; i < m && is_path; ++i)
      if (h_adj[i].size() > 2) is_path = false;
    {
      // The connector graph is connected because the scope is.
      std::vector<char> seen(m, 0);
      std::vector<int> stack{0};
      seen[0] = 1;
      int cnt = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : h_adj[x])
          if (!seen[y]) {
            seen[y] = 1;
            ++cnt;
            stack.push_back(y);
          }
      }
      if (cnt != m) throw std::logic_error("connector graph disconnected");
    }
    if (!is_path) {
      // Branching connector: three members pairwise linked avoiding the third.
      std::array<int, 3> tri{-1, -1, -1};
      int center = -1;
      for (int i = 0; i < m; ++i)
        if (h_adj[i].size() >= 3) {
          center = i;
          break;
        }
      if (center >= 0) {
        std::vector<int> nb = h_adj[center];
        std::sort(nb.begin(), nb.end());
        tri = {nb[0], nb[1], nb[2]};
      } else {
        // connected, not a path, max degree 2: it has a cycle through all
        // degree-2 vertices; any three of them do.
        std::vector<int> cyc;
        for (int i = 0; i < m; ++i)
          if (h_adj[i].size() == 2) cyc.push_back(i);
        if (cyc.size() < 3) throw std::logic_error("connector cycle too short");
        tri = {cyc[0], cyc[1], cyc[2]};
      }
      std::sort(tri.begin(), tri.end());
      SolveResult res;
      res.h = k + 1;
      res.witness = Witness::inner(fr.s, fr.res_by_node[zs[tri[0]]]->witness,
                                   fr.res_by_node[zs[tri[1]]]->witness,
                                   fr.res_by_node[zs[tri[2]]]->witness);
      if (static_cast<std::uint32_t>(res.h) < fr.b) res.pd = outcome_b_pd(fr);
      return done(std::move(res));
    }
    // Path-shaped connector: order the members along it, smaller end first.
    std::vector<int> ends;
    for (int i = 0; i < m; ++i)
      if (h_adj[i].size() == 1) ends.push_back(i);
    if (ends.size() != 2) throw std::logic_error("connector path without two ends");
    auto min_of = [&](int i) { return fr.nd->nodes[zs[i]].vset.min(); };
    int start = (min_of(ends[0]) <= min_of(ends[1])) ? ends[0] : ends[1];
    std::vector<int> zeta_nodes;
    int prev = -1, cur = start;
    while (true) {
      zeta_nodes.push_back(zs[cur]);
      int nxt = -1;
      for (int y : h_adj[cur])
        if (y != prev) nxt = y;
      if (nxt == -1) break;
      prev = cur;
      cur = nxt;
    }
    ++counters_.chain_runs;
    fr.chain = build_chain_state(*g_, *fr.nd, zeta_nodes, k);
    fr.secondary_res.assign(fr.chain->secondaries.size(), nullptr);
    fr.phase = 2;
    fr.idx = 0;
  }
  // phase 2: bounded re-solves of the connector components
  while (fr.idx < fr.chain->secondaries.size()) {
    const auto& sec = fr.chain->secondaries[fr.idx];
    auto key = std::make_pair(sec.vset, static_cast<std::uint32_t>(fr.k));
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      StepOut so;
      so.call_s = key.first;
      so.call_b = key.second;
      so.view_of = -1;
      return so;
    }
    ++counters_.secondary_calls;
    if (it->second->h == fr.k) return done(chain_escalate(fr, sec, it->second));
    fr.secondary_res[fr.idx] = it->second;
    ++fr.idx;
  }
  return done(chain_outcome_a(fr));
}

SolveResultPtr Solver::finish(Frame& fr, SolveResult res) {
  check_pd(fr, res);
  auto ptr = std::make_shared<const SolveResult>(std::move(res));
  auto key = std::make_pair(fr.s, fr.b);
  if (memo_.emplace(std::move(key), ptr).second) ++counters_.subproblems;
  return ptr;
}

SolveResultPtr Solver::solve_subset(const VertexSet& s, std::uint32_t bound) {
  {
    auto it = memo_.find(std::make_pair(s, bound));
    if (it != memo_.end()) return it->second;
  }
  std::vector<std::unique_ptr<Frame>> stack;
  {
    auto fr = std::make_unique<Frame>();
    fr->s = s;
    fr->b = bound;
    stack.push_back(std::move(fr));
  }
  while (!stack.empty()) {
    Frame& fr = *stack.back();
    StepOut so = step(fr);
    if (so.done) {
      finish(fr, std::move(so.result));
      stack.pop_back();
      continue;
    }
    auto child = std::make_unique<Frame>();
    child->s = std::move(so.call_s);
    child->b = so.call_b;
    if (so.view_of >= 0)
      child->nd = std::make_shared<const NormalizedDecomposition>(
          subtree_view(*fr.nd, so.view_of));
    stack.push_back(std::move(child));
  }
  return memo_.at(std::make_pair(s, bound));
}

SolveRun Solver::run(std::uint32_t bound) {
  SolveRun out;
  out.t = t_;
  auto comps = connected_components(*g_, g_->all_vertices());
  if (comps.empty()) {
    out.vacuous = true;
    out.pd_complete = true;
    out.counters = counters_;
    return out;
  }
  std::vector<PathDecomposition> pds;
  bool complete = true;
  for (const VertexSet& comp : comps) {
    SolveResultPtr res = solve_subset(comp, bound);
    out.h = std::max(out.h, res->h);
    if (res->pd)
      pds.push_back(*res->pd);
    else
      complete = false;
    out.components.push_back({comp, res});
  }
  if (complete) out.pd = concatenate(pds);
  out.pd_complete = complete;
  out.counters = counters_;
  return out;
}

SubproblemStats Solver::stats() const {
  SubproblemStats st;
  st.subproblems = static_cast<long long>(memo_.size());
  std::set<int> bounds;
  for (const auto& [key, res] : memo_)
    if (key.second != kNoBound) bounds.insert(static_cast<int>(key.second));
  st.finite_bounds.assign(bounds.begin(), bounds.end());
  st.max_finite_bound = bounds.empty() ? -1 : *bounds.rbegin();
  return st;
}

std::vector<std::pair<std::pair<VertexSet, std::uint32_t>, SolveResultPtr>>
Solver::memo_entries() const {
  std::vector<std::pair<std::pair<VertexSet, std::uint32_t>, SolveResultPtr>> out;
  out.reserve(memo_.size());
  for (const auto& kv : memo_) out.push_back(kv);
  return out;
}

}  // namespace pathcert
