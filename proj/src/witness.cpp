#include "pathcert/witness.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace pathcert {

WitnessPtr Witness::leaf(VertexSet s) {
  auto w = std::make_shared<Witness>();
  w->vset = std::move(s);
  return w;
}

WitnessPtr Witness::inner(VertexSet s, WitnessPtr a, WitnessPtr b, WitnessPtr c) {
  auto w = std::make_shared<Witness>();
  w->vset = std::move(s);
  w->children = {std::move(a), std::move(b), std::move(c)};
  return w;
}

bool Witness::operator==(const Witness& o) const {
  if (vset != o.vset || children.size() != o.children.size()) return false;
  for (std::size_t i = 0; i < children.size(); ++i)
    if (!(*children[i] == *o.children[i])) return false;
  return true;
}

namespace {

int validate_node(const Graph& g, const Witness& w, const std::string& at,
                  WitnessCheck& out) {
  auto bad = [&](const std::string& msg) {
    out.violations.push_back("node " + at + ": " + msg);
  };
  if (w.vset.empty()) {
    bad("empty vertex set");
    return 0;
  }
  for (Vertex v : w.vset)
    if (v < 0 || v >= g.num_vertices()) {
      bad("vertex out of range");
      return 0;
    }
  if (connected_components(g, w.vset).size() != 1) bad("set induces a disconnected subgraph");
  if (w.children.empty()) return 0;
  if (w.children.size() != 3) {
    bad("inner node must have exactly three children");
    return 0;
  }
  bool shape_ok = true;
  for (int i = 0; i < 3; ++i) {
    const auto& c = *w.children[i];
    if (!c.vset.is_subset_of(w.vset)) {
      bad("child " + std::to_string(i + 1) + " not a subset of the node set");
      shape_ok = false;
    }
    for (int j = i + 1; j < 3; ++j)
      if (!c.vset.disjoint_from(w.children[j]->vset)) {
        bad("children " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
            " overlap");
        shape_ok = false;
      }
  }
  if (shape_ok) {
    const VertexSet& s1 = w.children[0]->vset;
    const VertexSet& s2 = w.children[1]->vset;
    const VertexSet& s3 = w.children[2]->vset;
    VertexSet rest = w.vset.set_minus(s1).set_minus(s2).set_minus(s3);
    auto linked = [&](const VertexSet& a, const VertexSet& b, const VertexSet& avoid,
                      const char* what) {
      if (!u_path_connected(g, rest.set_union(avoid).set_minus(avoid), a, b))
        bad(std::string("no path between children ") + what);
    };
    // Internal vertices may use anything in the node set outside the three
    // children; the avoided child is excluded entirely.
    linked(s1, s2, s3, "1 and 2 avoiding 3");
    linked(s1, s3, s2, "1 and 3 avoiding 2");
    linked(s2, s3, s1, "2 and 3 avoiding 1");
  }
  int hs[3];
  for (int i = 0; i < 3; ++i)
    hs[i] = validate_node(g, *w.children[i], at + "." + std::to_string(i + 1), out);
  if (hs[0] != hs[1] || hs[1] != hs[2])
    bad("children have unequal heights (leaves not at uniform depth)");
  return 1 + std::max({hs[0], hs[1], hs[2]});
}

}  // namespace

WitnessCheck validate_witness(const Graph& g, const Witness& w) {
  WitnessCheck out;
  int h = validate_node(g, w, "r", out);
  if (out.ok()) {
    out.height = h;
    // A height-h witness forces at least 3^h vertices.
    std::size_t need = 1;
    for (int i = 0; i < h; ++i) need *= 3;
    if (w.vset.size() < need)
      out.violations.push_back("set smaller than 3^height");
  }
  return out;
}

namespace {

struct BranchTree {
  Vertex at;
  std::unique_ptr<BranchTree> left, right;
  std::vector<Vertex> left_path, right_path;  // from `at` to the child's root
};

struct Extraction {
  std::unique_ptr<BranchTree> tree;
  std::vector<Vertex> lead;  // path from the anchor to tree->at
};

// BFS over dom from `v`; finds for each of the two target sets the first
// touched vertex and its predecessor, in deterministic order.
struct TwoTargetBfs {
  std::vector<Vertex> parent;  // -2 unvisited, -1 source
  Vertex hit[2] = {-1, -1};
  Vertex pred[2] = {-1, -1};

  TwoTargetBfs(const Graph& g, const std::vector<char>& dom, Vertex v,
               const std::vector<char>& t1, const std::vector<char>& t2) {
    parent.assign(g.num_vertices(), -2);
    std::queue<Vertex> q;
    parent[v] = -1;
    q.push(v);
    while (!q.empty() && (hit[0] < 0 || hit[1] < 0)) {
      Vertex x = q.front();
      q.pop();
      for (Vertex w : g.neighbors(x)) {
        if (hit[0] < 0 && t1[w]) {
          hit[0] = w;
          pred[0] = x;
        }
        if (hit[1] < 0 && t2[w]) {
          hit[1] = w;
          pred[1] = x;
        }
        if (dom[w] && parent[w] == -2) {
          parent[w] = x;
          q.push(w);
        }
      }
    }
  }
  std::vector<Vertex> path_from_root(Vertex v, Vertex upto) const {
    // Tree path upto -> ... -> v reversed into v-first order.
    std::vector<Vertex> p;
    for (Vertex x = v; x != upto; x = parent[x]) p.push_back(x);
    p.push_back(upto);
    std::reverse(p.begin(), p.end());
    return p;
  }
};

Extraction extract_rec(const Graph& g, const Witness& w, Vertex anchor) {
  Extraction out;
  if (w.children.empty()) {
    out.tree = std::make_unique<BranchTree>();
    out.tree->at = anchor;
    out.lead = {anchor};
    return out;
  }
  const int n = g.num_vertices();
  // Pick the spare child: the one the anchor reaches while avoiding the other
  // two. Candidate order 3,1,2; the remaining two keep their relative order
  // and become the legs.
  int spare = -1;
  for (int cand : {2, 0, 1}) {
    const VertexSet& vs = w.children[cand]->vset;
    if (vs.contains(anchor)) {
      spare = cand;
      break;
    }
    int o1 = (cand + 1) % 3, o2 = (cand + 2) % 3;
    VertexSet avoid = w.children[o1]->vset.set_union(w.children[o2]->vset);
    if (avoid.contains(anchor)) continue;
    VertexSet dom = w.vset.set_minus(avoid).set_minus(vs);
    if (dom.contains(anchor)) dom = dom.set_minus(VertexSet({anchor}));
    if (u_path_connected(g, dom, VertexSet({anchor}), vs)) {
      spare = cand;
      break;
    }
  }
  if (spare < 0) throw std::logic_error("subdivision extraction: anchor is stuck");
  int legs[2], k = 0;
  for (int i = 0; i < 3; ++i)
    if (i != spare) legs[k++] = i;
  const VertexSet& v1 = w.children[legs[0]]->vset;
  const VertexSet& v2 = w.children[legs[1]]->vset;

  std::vector<char> dom(n, 0), t1(n, 0), t2(n, 0);
  for (Vertex x : w.vset) dom[x] = 1;
  for (Vertex x : v1) {
    dom[x] = 0;
    t1[x] = 1;
  }
  for (Vertex x : v2) {
    dom[x] = 0;
    t2[x] = 1;
  }
  TwoTargetBfs bfs(g, dom, anchor, t1, t2);
  if (bfs.hit[0] < 0 || bfs.hit[1] < 0)
    throw std::logic_error("subdivision extraction: legs unreachable");

  // The two tree paths from the anchor diverge at r, their lowest common
  // ancestor in the search tree; before r they are one shared path.
  auto depth_of = [&](Vertex v) {
    int d = 0;
    for (Vertex x = v; bfs.parent[x] != -1; x = bfs.parent[x]) ++d;
    return d;
  };
  Vertex a = bfs.pred[0], b = bfs.pred[1];
  int da = depth_of(a), db = depth_of(b);
  while (da > db) {
    a = bfs.parent[a];
    --da;
  }
  while (db > da) {
    b = bfs.parent[b];
    --db;
  }
  while (a != b) {
    a = bfs.parent[a];
    b = bfs.parent[b];
  }
  Vertex r = a;

  std::vector<Vertex> q1 = bfs.path_from_root(bfs.pred[0], r);
  q1.push_back(bfs.hit[0]);
  std::vector<Vertex> q2 = bfs.path_from_root(bfs.pred[1], r);
  q2.push_back(bfs.hit[1]);

  Extraction e1 = extract_rec(g, *w.children[legs[0]], bfs.hit[0]);
  Extraction e2 = extract_rec(g, *w.children[legs[1]], bfs.hit[1]);

  out.tree = std::make_unique<BranchTree>();
  out.tree->at = r;
  out.tree->left_path = std::move(q1);
  out.tree->left_path.insert(out.tree->left_path.end(), e1.lead.begin() + 1,
                             e1.lead.end());
  out.tree->right_path = std::move(q2);
  out.tree->right_path.insert(out.tree->right_path.end(), e2.lead.begin() + 1,
                              e2.lead.end());
  out.tree->left = std::move(e1.tree);
  out.tree->right = std::move(e2.tree);
  out.lead.clear();
  for (Vertex x = r; x != -1; x = bfs.parent[x]) out.lead.push_back(x);
  std::reverse(out.lead.begin(), out.lead.end());
  return out;
}

}  // namespace

Subdivision extract_binary_subdivision(const Graph& g, const Witness& w) {
  WitnessCheck chk = validate_witness(g, w);
  if (!chk.ok()) throw std::invalid_argument("extract: witness does not validate");
  Extraction e = extract_rec(g, w, w.vset.min());

  Subdivision sd;
  sd.height = chk.height;
  const int nodes = (2 << chk.height) - 1;
  sd.branch.assign(nodes, -1);
  sd.paths.assign(nodes - 1, {});
  // Level-order placement of the branch tree.
  std::queue<std::pair<const BranchTree*, int>> q;
  q.emplace(e.tree.get(), 0);
  while (!q.empty()) {
    auto [t, i] = q.front();
    q.pop();
    sd.branch[i] = t->at;
    if (t->left) {
      sd.paths[2 * i] = t->left_path;
      q.emplace(t->left.get(), 2 * i + 1);
      sd.paths[2 * i + 1] = t->right_path;
      q.emplace(t->right.get(), 2 * i + 2);
    }
  }
  return sd;
}

ValidationReport validate_subdivision(const Graph& g, const Subdivision& sd, int h) {
  ValidationReport rep;
  auto bad = [&](const std::string& m) { rep.violations.push_back(m); };
  if (h < 0 || h > 30) {
    bad("height out of range");
    return rep;
  }
  const long long nodes = (2ll << h) - 1;
  if (static_cast<long long>(sd.branch.size()) != nodes) {
    bad("expected " + std::to_string(nodes) + " branch vertices, got " +
        std::to_string(sd.branch.size()));
    return rep;
  }
  if (static_cast<long long>(sd.paths.size()) != nodes - 1) {
    bad("expected " + std::to_string(nodes - 1) + " paths");
    return rep;
  }
  std::vector<char> is_branch(g.num_vertices(), 0);
  for (Vertex v : sd.branch) {
    if (v < 0 || v >= g.num_vertices()) {
      bad("branch vertex out of range");
      return rep;
    }
    if (is_branch[v]) bad("branch vertex " + std::to_string(v) + " repeated");
    is_branch[v] = 1;
  }
  std::vector<int> internal_uses(g.num_vertices(), 0);
  for (long long i = 1; i < nodes; ++i) {
    const auto& p = sd.paths[i - 1];
    std::string name = "path " + std::to_string(i);
    if (p.size() < 2) {
      bad(name + " too short");
      continue;
    }
    if (p.front() != sd.branch[(i - 1) / 2] || p.back() != sd.branch[i])
      bad(name + " endpoints do not match its tree edge");
    for (std::size_t j = 0; j + 1 < p.size(); ++j)
      if (!g.adjacent(p[j], p[j + 1]))
        bad(name + " uses a non-edge " + std::to_string(p[j]) + "-" +
            std::to_string(p[j + 1]));
    std::vector<Vertex> sorted(p.begin(), p.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      bad(name + " repeats a vertex");
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      if (is_branch[p[j]])
        bad(name + " passes through branch vertex " + std::to_string(p[j]));
      ++internal_uses[p[j]];
    }
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (internal_uses[v] > 1)
      bad("internal vertex " + std::to_string(v) + " shared between paths");
  return rep;
}

}  // namespace pathcert
