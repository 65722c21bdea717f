#include "pathcert/oracle.hpp"

#include <bit>
#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>
#include <string>

namespace pathcert {

namespace {

int env_limit(const char* name, int dflt, int lo, int hi) {
  const char* s = std::getenv(name);
  if (!s || !*s) return dflt;
  int v = std::atoi(s);
  return std::clamp(v, lo, hi);
}

}  // namespace

int pathwidth_oracle_limit() { return env_limit("PATHCERT_PW_LIMIT", 20, 2, 26); }
int treewidth_oracle_limit() { return env_limit("PATHCERT_TW_LIMIT", 18, 2, 24); }

bool is_forest(const Graph& g) {
  auto comps = connected_components(g, g.all_vertices());
  std::size_t edges = 0;
  for (const auto& c : comps) edges += c.size() - 1;
  return static_cast<std::size_t>(g.num_edges()) == edges;
}

namespace oracle_detail {

PathwidthResult pathwidth_subset_dp(const Graph& g) {
  const int n = g.num_vertices();
  PathwidthResult out;
  if (n == 0) {
    out.value = -1;
    return out;
  }
  if (n > 26) throw std::invalid_argument("pathwidth subset dp: too many vertices");
  std::vector<std::uint32_t> nbr(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) nbr[v] |= 1u << w;
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);

  // boundary(S): vertices of S with a neighbor outside S.
  auto boundary = [&](std::uint32_t s) {
    int b = 0;
    for (std::uint32_t t = s; t; t &= t - 1) {
      int v = std::countr_zero(t);
      if (nbr[v] & ~s & full) ++b;
    }
    return b;
  };

  std::vector<std::uint8_t> f(std::size_t(1) << n);
  f[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int bnd = boundary(s);
    int best = 255;
    for (std::uint32_t t = s; t; t &= t - 1) {
      int v = std::countr_zero(t);
      best = std::min(best, std::max<int>(f[s & ~(1u << v)], bnd));
    }
    f[s] = static_cast<std::uint8_t>(best);
  }
  out.value = f[full];

  // Rebuild an optimal ordering, then bags X_i = boundary(prefix) + next.
  std::vector<Vertex> order(n);
  std::uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    int bnd = boundary(s);
    for (std::uint32_t t = s; t; t &= t - 1) {
      int v = std::countr_zero(t);
      if (std::max<int>(f[s & ~(1u << v)], bnd) == f[s]) {
        order[i] = v;
        s &= ~(1u << v);
        break;
      }
    }
  }
  std::uint32_t prefix = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<Vertex> bag;
    for (std::uint32_t t = prefix; t; t &= t - 1) {
      int v = std::countr_zero(t);
      if (nbr[v] & ~prefix & full) bag.push_back(v);
    }
    bag.push_back(order[i]);
    std::sort(bag.begin(), bag.end());
    out.pd.bags.push_back(VertexSet::from_sorted(std::move(bag)));
    prefix |= 1u << order[i];
  }
  if (out.pd.width() != out.value)
    throw std::logic_error("pathwidth dp: certificate width mismatch");
  return out;
}

namespace {

// Exact pathwidth of trees, built on two facts. A connected graph has
// pathwidth <= k (k >= 1) exactly when some path P (a spine) leaves only
// components of pathwidth <= k-1 around it: gluing the component layouts
// along P gives one direction, and in a width-k decomposition any path from
// the first to the last bag meets every bag, so removing it lowers every
// bag's residual size. For k = 1 this degenerates to the caterpillar shape,
// decided directly, so the recursion depth stays below k. Results are
// memoized under a canonical tree code, collapsing isomorphic branches.
struct TreePw {
  const Graph& g;
  std::unordered_map<std::string, char> memo;

  explicit TreePw(const Graph& g_) : g(g_) {}

  // AHU-style canonical code of the tree on `comp`, rooted at its center.
  std::string code_of(const std::vector<Vertex>& comp) {
    if (comp.size() == 1) return "()";
    std::vector<char> in_comp(g.num_vertices(), 0);
    std::vector<int> deg(g.num_vertices(), 0);
    for (Vertex v : comp) in_comp[v] = 1;
    for (Vertex v : comp)
      for (Vertex w : g.neighbors(v))
        if (in_comp[w]) ++deg[v];
    std::vector<Vertex> layer;
    std::vector<char> alive(g.num_vertices(), 0);
    for (Vertex v : comp) alive[v] = 1;
    std::size_t left = comp.size();
    for (Vertex v : comp)
      if (deg[v] <= 1) layer.push_back(v);
    while (left > 2) {
      std::vector<Vertex> next;
      for (Vertex v : layer) {
        alive[v] = 0;
        --left;
        for (Vertex w : g.neighbors(v))
          if (in_comp[w] && alive[w] && --deg[w] == 1) next.push_back(w);
      }
      layer = std::move(next);
    }
    std::vector<Vertex> centers;
    for (Vertex v : comp)
      if (alive[v]) centers.push_back(v);

    auto rooted = [&](Vertex root, Vertex skip) {
      struct Item {
        Vertex v;
        std::size_t next = 0;
        std::vector<std::string> kids;
        std::vector<Vertex> nbrs;
      };
      std::vector<Item> st;
      auto mk = [&](Vertex v, Vertex parent) {
        Item it;
        it.v = v;
        for (Vertex w : g.neighbors(v))
          if (in_comp[w] && w != parent && w != skip) it.nbrs.push_back(w);
        return it;
      };
      st.push_back(mk(root, skip));
      std::string result;
      while (!st.empty()) {
        Item& it = st.back();
        if (it.next < it.nbrs.size()) {
          Vertex c = it.nbrs[it.next++];
          st.push_back(mk(c, it.v));
        } else {
          std::sort(it.kids.begin(), it.kids.end());
          std::string code = "(";
          for (const auto& k : it.kids) code += k;
          code += ")";
          st.pop_back();
          if (st.empty())
            result = std::move(code);
          else
            st.back().kids.push_back(std::move(code));
        }
      }
      return result;
    };
    if (centers.size() == 1) return rooted(centers[0], -1);
    std::string a = rooted(centers[0], centers[1]);
    std::string b = rooted(centers[1], centers[0]);
    if (b < a) std::swap(a, b);
    return "[" + a + b + "]";
  }

  // Component of comp - v containing w, sorted.
  std::vector<Vertex> branch(const std::vector<Vertex>& comp, Vertex v, Vertex w) {
    std::vector<char> in_comp(g.num_vertices(), 0);
    for (Vertex u : comp) in_comp[u] = 1;
    std::vector<char> seen(g.num_vertices(), 0);
    seen[v] = 1;
    seen[w] = 1;
    std::vector<Vertex> part{w}, stack{w};
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x))
        if (in_comp[y] && !seen[y]) {
          seen[y] = 1;
          part.push_back(y);
          stack.push_back(y);
        }
    }
    std::sort(part.begin(), part.end());
    return part;
  }

  // Caterpillar test with spine extraction: pathwidth <= 1 means removing
  // all leaves leaves a path (or nothing).
  bool caterpillar_spine(const std::vector<Vertex>& comp, std::vector<Vertex>* spine) {
    std::vector<char> in_comp(g.num_vertices(), 0);
    for (Vertex v : comp) in_comp[v] = 1;
    std::vector<Vertex> inner;
    for (Vertex v : comp) {
      int deg = 0;
      for (Vertex w : g.neighbors(v))
        if (in_comp[w]) ++deg;
      if (deg >= 2) inner.push_back(v);
    }
    if (inner.empty()) {  // single vertex or single edge
      if (spine) *spine = {comp[0]};
      return true;
    }
    // inner vertices must induce a path
    std::vector<char> is_inner(g.num_vertices(), 0);
    for (Vertex v : inner) is_inner[v] = 1;
    Vertex start = -1;
    for (Vertex v : inner) {
      int d = 0;
      for (Vertex w : g.neighbors(v))
        if (is_inner[w]) ++d;
      if (d > 2) return false;
      if (d <= 1) start = std::min(start < 0 ? v : start, v);
    }
    if (start < 0) return false;  // inner vertices form a cycle: impossible in a tree
    std::vector<Vertex> path{start};
    Vertex prev = -1, cur = start;
    while (true) {
      Vertex nxt = -1;
      for (Vertex w : g.neighbors(cur))
        if (is_inner[w] && w != prev) nxt = w;
      if (nxt == -1) break;
      path.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
    if (path.size() != inner.size()) return false;
    if (spine) *spine = std::move(path);
    return true;
  }

  // Decision with optional spine certificate. The spine must absorb every
  // vertex with two or more heavy branches (branches of pathwidth >= k),
  // grown through forced heavy extensions; any conflict proves pw > k.
  bool pw_le(const std::vector<Vertex>& comp, int k, std::vector<Vertex>* spine) {
    if (comp.size() <= 1) {
      if (spine && !comp.empty()) *spine = {comp[0]};
      return true;
    }
    if (k <= 0) return false;
    if (k == 1) return caterpillar_spine(comp, spine);
    std::string key;
    if (!spine) {
      key = code_of(comp) + '#' + std::to_string(k);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    bool res = spine_search(comp, k, spine);
    if (!spine) memo.emplace(std::move(key), static_cast<char>(res));
    return res;
  }

  bool spine_search(const std::vector<Vertex>& comp, int k,
                    std::vector<Vertex>* spine_out) {
    std::vector<char> in_comp(g.num_vertices(), 0);
    for (Vertex v : comp) in_comp[v] = 1;
    // heavy labels for all directed edges, computed once
    std::unordered_map<std::uint64_t, bool> heavy_cache;
    auto heavy = [&](Vertex v, Vertex w) {
      std::uint64_t key = (static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint32_t>(w);
      auto it = heavy_cache.find(key);
      if (it != heavy_cache.end()) return it->second;
      bool h = !pw_le(branch(comp, v, w), k - 1, nullptr);
      heavy_cache.emplace(key, h);
      return h;
    };
    auto heavy_dirs = [&](Vertex v, Vertex excl) {
      std::vector<Vertex> hs;
      for (Vertex w : g.neighbors(v)) {
        if (!in_comp[w] || w == excl) continue;
        if (heavy(v, w)) hs.push_back(w);
      }
      return hs;
    };

    std::vector<Vertex> anchors;
    for (Vertex v : comp)
      if (heavy_dirs(v, -1).size() >= 2) anchors.push_back(v);

    std::vector<char> in_comp_ref = in_comp;
    auto path_between = [&](Vertex a, Vertex b) {
      std::vector<Vertex> par(g.num_vertices(), -2), stack{a};
      par[a] = -1;
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        if (v == b) break;
        for (Vertex w : g.neighbors(v))
          if (in_comp_ref[w] && par[w] == -2) {
            par[w] = v;
            stack.push_back(w);
          }
      }
      std::vector<Vertex> path;
      for (Vertex x = b; x != -1; x = par[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      return path;
    };

    std::vector<Vertex> spine;
    if (!anchors.empty()) {
      Vertex a = anchors[0], b = anchors[0];
      for (Vertex v : anchors)
        if (path_between(a, v).size() > path_between(a, b).size()) b = v;
      for (Vertex v : anchors)
        if (path_between(b, v).size() > path_between(b, a).size()) a = v;
      spine = path_between(std::min(a, b), std::max(a, b));
      std::vector<char> on(g.num_vertices(), 0);
      for (Vertex v : spine) on[v] = 1;
      for (Vertex v : anchors)
        if (!on[v]) return false;  // forced vertices not on one path
    } else {
      Vertex lone = -1;
      for (Vertex v : comp)
        if (heavy_dirs(v, -1).empty()) {
          lone = v;
          break;
        }
      if (lone >= 0) {
        spine = {lone};
      } else {
        // every vertex has exactly one heavy direction; a mutually heavy
        // edge exists and is forced onto the spine
        for (Vertex u : comp) {
          auto hu = heavy_dirs(u, -1);
          if (hu.size() != 1) continue;
          Vertex v = hu[0];
          auto hv = heavy_dirs(v, -1);
          if (hv.size() == 1 && hv[0] == u) {
            spine = {std::min(u, v), std::max(u, v)};
            break;
          }
        }
        if (spine.empty()) return false;
      }
    }
    for (bool grown = true; grown;) {
      grown = false;
      for (int side = 0; side < 2; ++side) {
        Vertex e = side ? spine.back() : spine.front();
        Vertex in_spine = -1;
        if (spine.size() >= 2) in_spine = side ? spine[spine.size() - 2] : spine[1];
        auto hs = heavy_dirs(e, in_spine);
        if (spine.size() == 1 && hs.size() == 2) {
          spine.insert(spine.begin(), hs[0]);
          spine.push_back(hs[1]);
          grown = true;
          break;
        }
        if (hs.size() >= 2) return false;  // the path would have to fork
        if (hs.size() == 1) {
          if (side)
            spine.push_back(hs[0]);
          else
            spine.insert(spine.begin(), hs[0]);
          grown = true;
        }
      }
    }
    std::vector<char> on(g.num_vertices(), 0);
    for (Vertex v : spine) on[v] = 1;
    for (Vertex v : spine)
      for (Vertex w : heavy_dirs(v, -1))
        if (!on[w]) return false;
    if (spine_out) *spine_out = std::move(spine);
    return true;
  }

  int pw(const std::vector<Vertex>& comp) {
    for (int k = 0;; ++k)
      if (pw_le(comp, k, nullptr)) return k;
  }
};

// Optimal path decomposition of the tree on `comp`: spine at the tree's own
// pathwidth, branches recursively between spine transitions.
void build_tree_pd(const Graph& g, TreePw& solver, const std::vector<Vertex>& comp,
                   std::vector<VertexSet>& bags) {
  if (comp.size() == 1) {
    bags.push_back(VertexSet({comp[0]}));
    return;
  }
  const int k = solver.pw(comp);
  std::vector<Vertex> spine;
  if (!solver.pw_le(comp, k, &spine))
    throw std::logic_error("tree pathwidth: spine vanished");
  std::vector<char> in_comp(g.num_vertices(), 0), on(g.num_vertices(), 0);
  for (Vertex v : comp) in_comp[v] = 1;
  for (Vertex v : spine) on[v] = 1;
  for (std::size_t i = 0; i < spine.size(); ++i) {
    Vertex p = spine[i];
    for (Vertex c : g.neighbors(p)) {
      if (!in_comp[c] || on[c]) continue;
      auto br = solver.branch(comp, p, c);
      std::size_t start = bags.size();
      build_tree_pd(g, solver, br, bags);
      for (std::size_t j = start; j < bags.size(); ++j) bags[j] = bags[j].with(p);
    }
    if (i + 1 < spine.size())
      bags.push_back(VertexSet({p, spine[i + 1]}));
    else if (spine.size() == 1)
      bags.push_back(VertexSet({p}));
  }
}

}  // namespace

PathwidthResult forest_pathwidth(const Graph& g) {
  if (!is_forest(g)) throw std::invalid_argument("forest pathwidth: graph has a cycle");
  PathwidthResult out;
  out.value = g.num_vertices() == 0 ? -1 : 0;
  TreePw solver(g);
  for (const auto& comp : connected_components(g, g.all_vertices())) {
    out.value = std::max(out.value, solver.pw(comp.ids()));
    build_tree_pd(g, solver, comp.ids(), out.pd.bags);
  }
  if (out.pd.width() != out.value)
    throw std::logic_error("forest pathwidth: certificate width mismatch");
  return out;
}

}  // namespace oracle_detail

PathwidthResult exact_pathwidth(const Graph& g) {
  if (is_forest(g)) return oracle_detail::forest_pathwidth(g);
  if (g.num_vertices() > pathwidth_oracle_limit())
    throw std::invalid_argument("exact_pathwidth: instance too large");
  return oracle_detail::pathwidth_subset_dp(g);
}

TreewidthResult exact_treewidth(const Graph& g) {
  const int n = g.num_vertices();
  TreewidthResult out;
  if (n == 0) {
    out.value = -1;
    return out;
  }
  if (n > treewidth_oracle_limit())
    throw std::invalid_argument("exact_treewidth: instance too large");
  std::vector<std::uint32_t> nbr(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) nbr[v] |= 1u << w;
  const std::uint32_t full = (1u << n) - 1;

  // q_size(S, v): vertices outside S+{v} reachable from v through S.
  auto q_set = [&](std::uint32_t s, int v) {
    std::uint32_t reach = 1u << v, frontier = nbr[v];
    std::uint32_t inside = frontier & s;
    while (inside) {
      reach |= inside;
      std::uint32_t nxt = 0;
      for (std::uint32_t t = inside; t; t &= t - 1) nxt |= nbr[std::countr_zero(t)];
      frontier |= nxt;
      inside = frontier & s & ~reach;
    }
    return frontier & ~s & ~(1u << v);
  };

  std::vector<std::uint8_t> f(std::size_t(1) << n);
  f[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = 255;
    for (std::uint32_t t = s; t; t &= t - 1) {
      int v = std::countr_zero(t);
      std::uint32_t rest = s & ~(1u << v);
      int cost = std::max<int>(f[rest], std::popcount(q_set(rest, v)));
      best = std::min(best, cost);
    }
    f[s] = static_cast<std::uint8_t>(best);
  }
  out.value = f[full];

  std::vector<Vertex> order(n);
  std::uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    for (std::uint32_t t = s; t; t &= t - 1) {
      int v = std::countr_zero(t);
      std::uint32_t rest = s & ~(1u << v);
      if (std::max<int>(f[rest], std::popcount(q_set(rest, v))) == f[s]) {
        order[i] = v;
        s = rest;
        break;
      }
    }
  }
  // Bags from the elimination order; each bag hangs off the bag of the first
  // eliminated vertex it still sees.
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  out.td.bags.resize(n);
  out.td.parent.assign(n, -1);
  std::uint32_t done = 0;
  std::vector<std::uint32_t> qs(n);
  for (int i = 0; i < n; ++i) {
    Vertex v = order[i];
    qs[i] = q_set(done, v);
    std::vector<Vertex> bag{v};
    for (std::uint32_t t = qs[i]; t; t &= t - 1) bag.push_back(std::countr_zero(t));
    std::sort(bag.begin(), bag.end());
    out.td.bags[i] = VertexSet::from_sorted(std::move(bag));
    done |= 1u << v;
  }
  for (int i = 0; i < n; ++i) {
    if (qs[i]) {
      int first = n;
      for (std::uint32_t t = qs[i]; t; t &= t - 1)
        first = std::min(first, pos[std::countr_zero(t)]);
      out.td.parent[i] = first;
    } else if (i + 1 < n) {
      out.td.parent[i] = i + 1;
    }
  }
  out.td.root = n - 1;
  if (out.td.width() != out.value)
    throw std::logic_error("treewidth dp: certificate width mismatch");
  auto rep = validate_tree_decomposition(g, out.td);
  if (!rep.ok()) throw std::logic_error("treewidth dp: invalid certificate");
  return out;
}

TreeDecomposition minfill_td(const Graph& g) {
  const int n = g.num_vertices();
  TreeDecomposition td;
  if (n == 0) {
    td.parent = {-1};
    td.bags = {VertexSet{}};
    td.root = 0;
    return td;
  }
  const int words = (n + 63) / 64;
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n) * words, 0),
      alive(words, 0);
  auto bit = [&](std::vector<std::uint64_t>& row, int v) { row[v >> 6] |= 1ull << (v & 63); };
  auto row = [&](int v) { return adj.data() + static_cast<std::size_t>(v) * words; };
  for (Vertex v = 0; v < n; ++v) {
    bit(alive, v);
    for (Vertex w : g.neighbors(v)) row(v)[w >> 6] |= 1ull << (w & 63);
  }

  std::vector<long long> fill(n, 0);
  std::vector<char> dead(n, 0);
  std::vector<Vertex> scratch;
  auto compute_fill = [&](int v) {
    scratch.clear();
    for (int w = 0; w < words; ++w) {
      std::uint64_t t = row(v)[w] & alive[w];
      while (t) {
        scratch.push_back(64 * w + std::countr_zero(t));
        t &= t - 1;
      }
    }
    long long missing = 0;
    for (Vertex u : scratch) {
      for (int w = 0; w < words; ++w) {
        std::uint64_t nv = row(v)[w] & alive[w] & ~row(u)[w];
        missing += std::popcount(nv);
      }
      --missing;  // u itself
    }
    fill[v] = missing / 2;
  };
  for (int v = 0; v < n; ++v) compute_fill(v);

  std::vector<Vertex> order(n);
  std::vector<std::vector<Vertex>> bag_of(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!dead[v] && (best == -1 || fill[v] < fill[best])) best = v;
    order[step] = best;
    // neighbors at elimination time
    std::vector<Vertex> nb;
    for (int w = 0; w < words; ++w) {
      std::uint64_t t = row(best)[w] & alive[w];
      while (t) {
        nb.push_back(64 * w + std::countr_zero(t));
        t &= t - 1;
      }
    }
    bag_of[step] = nb;
    bag_of[step].push_back(best);
    std::sort(bag_of[step].begin(), bag_of[step].end());
    // add fill edges, retire the vertex, refresh affected fill counts
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        Vertex a = nb[i], b = nb[j];
        row(a)[b >> 6] |= 1ull << (b & 63);
        row(b)[a >> 6] |= 1ull << (a & 63);
      }
    dead[best] = 1;
    alive[best >> 6] &= ~(1ull << (best & 63));
    // fills change only near the eliminated vertex
    std::vector<char> affected(n, 0);
    for (Vertex u : nb) {
      affected[u] = 1;
      for (int w = 0; w < words; ++w) {
        std::uint64_t t = row(u)[w] & alive[w];
        while (t) {
          affected[64 * w + std::countr_zero(t)] = 1;
          t &= t - 1;
        }
      }
    }
    for (int v = 0; v < n; ++v)
      if (affected[v] && !dead[v]) compute_fill(v);
  }

  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  td.bags.resize(n);
  td.parent.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    td.bags[i] = VertexSet(bag_of[i]);
    int first = n;
    for (Vertex w : bag_of[i])
      if (w != order[i] && pos[w] > i) first = std::min(first, pos[w]);
    if (first < n)
      td.parent[i] = first;
    else if (i + 1 < n)
      td.parent[i] = i + 1;
  }
  td.root = n - 1;
  return td;
}

}  // namespace pathcert
