#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "pathcert/gen.hpp"
#include "pathcert/normalize.hpp"
#include "pathcert/oracle.hpp"

using namespace pathcert;

namespace {

TreeDecomposition td_of(std::vector<VertexSet> bags, std::vector<int> parent) {
  TreeDecomposition td;
  td.bags = std::move(bags);
  td.parent = std::move(parent);
  td.root = 0;
  return td;
}

std::set<std::vector<Vertex>> vsets_of(const NormalizedDecomposition& nd) {
  std::set<std::vector<Vertex>> out;
  for (const auto& n : nd.nodes) out.insert(n.vset.ids());
  return out;
}

int node_by_vset(const NormalizedDecomposition& nd, const VertexSet& s) {
  for (int i = 0; i < nd.num_nodes(); ++i)
    if (nd.nodes[i].vset == s) return i;
  return -1;
}

bool same_shape(const NormalizedDecomposition& a, const NormalizedDecomposition& b) {
  if (a.num_nodes() != b.num_nodes() || a.root != b.root) return false;
  for (int i = 0; i < a.num_nodes(); ++i) {
    if (a.nodes[i].vset != b.nodes[i].vset) return false;
    if (a.nodes[i].core != b.nodes[i].core) return false;
    if (a.nodes[i].bag != b.nodes[i].bag) return false;
    if (a.nodes[i].parent != b.nodes[i].parent) return false;
    if (a.nodes[i].children != b.nodes[i].children) return false;
  }
  return true;
}

void check_invariants(const Graph& g, const TreeDecomposition& td,
                      const NormalizedDecomposition& nd) {
  const int t = td.width() + 1;
  // laminar: descendants nested, incomparable sets disjoint and non-adjacent
  for (int i = 0; i < nd.num_nodes(); ++i)
    for (int j = 0; j < nd.num_nodes(); ++j) {
      if (i == j) continue;
      const auto& vi = nd.nodes[i].vset;
      const auto& vj = nd.nodes[j].vset;
      if (nd.is_ancestor(i, j)) {
        CHECK(vj.is_subset_of(vi));
      } else if (!nd.is_ancestor(j, i)) {
        CHECK(vi.disjoint_from(vj));
        CHECK(neighborhood(g, vi).disjoint_from(vj));
      }
    }
  // cores partition the scope into non-empty sets
  VertexSet all;
  for (const auto& n : nd.nodes) {
    CHECK_FALSE(n.core.empty());
    CHECK(all.disjoint_from(n.core));
    all = all.set_union(n.core);
  }
  CHECK(all == nd.scope);
  // bags: B = core + neighborhood, size at most t
  for (int i = 0; i < nd.num_nodes(); ++i) {
    const auto& n = nd.nodes[i];
    CHECK(n.bag == n.core.set_union(neighborhood(g, n.vset).set_intersect(nd.scope)));
    CHECK(static_cast<int>(n.bag.size()) <= t);
  }
  // the node tree with the bags is a valid decomposition of the subgraph
  auto rep = validate_tree_decomposition_scoped(g, nd.scope, nd.bag_tree());
  CHECK(rep.ok());
  CHECK(nd.num_nodes() <= static_cast<int>(nd.scope.size()));
}

}  // namespace

TEST_CASE("normalized decomposition of a short path") {
  Graph p3 = gen_path(3);
  auto td = td_of({VertexSet({0, 1}), VertexSet({1, 2})}, {-1, 0});
  auto nd = build_normalized(p3, td, p3.all_vertices());
  auto vs = vsets_of(nd);
  CHECK(vs == std::set<std::vector<Vertex>>{{0, 1, 2}, {2}});
  int root = node_by_vset(nd, VertexSet({0, 1, 2}));
  int leaf = node_by_vset(nd, VertexSet({2}));
  REQUIRE(root >= 0);
  REQUIRE(leaf >= 0);
  CHECK(nd.root == root);
  CHECK(nd.nodes[root].core.ids() == std::vector<Vertex>{0, 1});
  CHECK(nd.nodes[leaf].core.ids() == std::vector<Vertex>{2});
  CHECK(nd.nodes[leaf].bag.ids() == std::vector<Vertex>{1, 2});
  check_invariants(p3, td, nd);
}

TEST_CASE("single bag collapses to a single node") {
  Graph k3 = gen_clique(3);
  auto td = td_of({VertexSet({0, 1, 2})}, {-1});
  auto nd = build_normalized(k3, td, k3.all_vertices());
  CHECK(nd.num_nodes() == 1);
  CHECK(nd.nodes[nd.root].vset == k3.all_vertices());
}

TEST_CASE("star with one bag per leaf puts each leaf under the root") {
  Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  auto td = td_of(
      {VertexSet({0}), VertexSet({0, 1}), VertexSet({0, 2}), VertexSet({0, 3})},
      {-1, 0, 0, 0});
  REQUIRE(validate_tree_decomposition(star, td).ok());
  auto nd = build_normalized(star, td, star.all_vertices());
  auto vs = vsets_of(nd);
  CHECK(vs == std::set<std::vector<Vertex>>{{0, 1, 2, 3}, {1}, {2}, {3}});
  CHECK(nd.nodes[nd.root].core.ids() == std::vector<Vertex>{0});
  for (Vertex leaf : {1, 2, 3}) {
    int x = node_by_vset(nd, VertexSet({leaf}));
    REQUIRE(x >= 0);
    CHECK(nd.nodes[x].parent == nd.root);
    CHECK(nd.nodes[x].core.ids() == std::vector<Vertex>{leaf});
  }
  check_invariants(star, td, nd);

  // every leaf component of G minus the root bag is a child node
  VertexSet broot = nd.nodes[nd.root].bag;
  for (const auto& comp :
       connected_components(star, star.all_vertices().set_minus(broot))) {
    auto cls = component_complement_classify(nd, star, {nd.root}, comp);
    CHECK(cls.kind == ComplementClass::ChildNode);
  }
  // a component disjoint from the top node of the path is parent-side
  int leaf1 = node_by_vset(nd, VertexSet({1}));
  auto cls = component_complement_classify(nd, star, {leaf1}, VertexSet({2}));
  CHECK(cls.kind == ComplementClass::ParentSide);
}

TEST_CASE("classification of the complement of a path cut") {
  Graph p3 = gen_path(3);
  auto td = td_of({VertexSet({0, 1}), VertexSet({1, 2})}, {-1, 0});
  auto nd = build_normalized(p3, td, p3.all_vertices());
  // remove the root bag {0,1}: the leftover {2} is exactly the child node
  auto cls = component_complement_classify(nd, p3, {nd.root}, VertexSet({2}));
  CHECK(cls.kind == ComplementClass::ChildNode);
  CHECK(nd.nodes[cls.child].vset == VertexSet({2}));
  CHECK_THROWS_AS(
      component_complement_classify(nd, p3, {nd.root}, VertexSet({0, 1, 2})),
      std::logic_error);
}

TEST_CASE("lowest common ancestor basics") {
  Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  auto td = td_of(
      {VertexSet({0}), VertexSet({0, 1}), VertexSet({0, 2}), VertexSet({0, 3})},
      {-1, 0, 0, 0});
  auto nd = build_normalized(star, td, star.all_vertices());
  int a = node_by_vset(nd, VertexSet({1}));
  int b = node_by_vset(nd, VertexSet({2}));
  CHECK(nd.lca(a, a) == a);
  CHECK(nd.lca(a, nd.root) == nd.root);
  CHECK(nd.lca(a, b) == nd.root);
}

TEST_CASE("disconnected scope is rejected") {
  Graph p3 = gen_path(3);
  auto td = td_of({VertexSet({0, 1}), VertexSet({1, 2})}, {-1, 0});
  CHECK_THROWS_AS(build_normalized(p3, td, VertexSet({0, 2})),
                  std::invalid_argument);
}

TEST_CASE("normalized invariants hold on random instances") {
  std::mt19937_64 seeds(23);
  for (int iter = 0; iter < 40; ++iter) {
    Graph g = gen_random(5 + iter % 7, 0.35, seeds());
    auto comps = connected_components(g, g.all_vertices());
    if (comps.empty()) continue;
    TreeDecomposition td = minfill_td(g);
    REQUIRE(validate_tree_decomposition(g, td).ok());
    for (const auto& comp : comps) {
      auto nd = build_normalized(g, td, comp);
      check_invariants(g, td, nd);
    }
  }
}

TEST_CASE("subtree views equal fresh builds") {
  std::mt19937_64 seeds(29);
  for (int iter = 0; iter < 30; ++iter) {
    Graph g = gen_random(6 + iter % 6, 0.4, seeds());
    auto comps = connected_components(g, g.all_vertices());
    TreeDecomposition td = minfill_td(g);
    for (const auto& comp : comps) {
      auto nd = build_normalized(g, td, comp);
      for (int alpha = 0; alpha < nd.num_nodes(); ++alpha) {
        auto view = subtree_view(nd, alpha);
        auto fresh = build_normalized(g, td, nd.nodes[alpha].vset);
        CHECK(same_shape(view, fresh));
      }
    }
  }
}

TEST_CASE("members survive restriction to supersets and components") {
  std::mt19937_64 seeds(31);
  for (int iter = 0; iter < 25; ++iter) {
    Graph g = gen_random(7, 0.4, seeds());
    TreeDecomposition td = minfill_td(g);
    auto comps = connected_components(g, g.all_vertices());
    for (const auto& comp : comps) {
      auto nd = build_normalized(g, td, comp);
      for (const auto& node : nd.nodes) {
        // random superset of the member inside the component
        std::vector<Vertex> extra;
        for (Vertex v : comp)
          if (!node.vset.contains(v) && seeds() % 2) extra.push_back(v);
        VertexSet sup = node.vset.set_union(VertexSet(extra));
        // keep the connected part containing the member
        for (const auto& sc : connected_components(g, sup)) {
          if (!node.vset.is_subset_of(sc)) continue;
          auto sub_nd = build_normalized(g, td, sc);
          CHECK(vsets_of(sub_nd).count(node.vset.ids()) == 1);
        }
        // components of member ∩ X land in the family of X's components
        std::vector<Vertex> xs;
        for (Vertex v : comp)
          if (seeds() % 2) xs.push_back(v);
        VertexSet x(xs);
        for (const auto& part : connected_components(g, node.vset.set_intersect(x)))
          for (const auto& xc : connected_components(g, x))
            if (part.is_subset_of(xc)) {
              auto xnd = build_normalized(g, td, xc);
              CHECK(vsets_of(xnd).count(part.ids()) == 1);
            }
      }
    }
  }
}

TEST_CASE("invariants hold on larger sparse and dense instances") {
  for (auto [n, p, seed] : {std::tuple<int, double, int>{80, 0.05, 1},
                            {60, 0.12, 2},
                            {120, 0.03, 3}}) {
    Graph g = gen_random(n, p, static_cast<std::uint64_t>(seed));
    TreeDecomposition td = minfill_td(g);
    REQUIRE(validate_tree_decomposition(g, td).ok());
    for (const auto& comp : connected_components(g, g.all_vertices())) {
      auto nd = build_normalized(g, td, comp);
      check_invariants(g, td, nd);
    }
  }
}
