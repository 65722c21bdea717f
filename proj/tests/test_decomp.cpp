#include <stdexcept>
#include <random>

#include "doctest.h"
#include "pathcert/decomp.hpp"
#include "pathcert/gen.hpp"
#include "pathcert/oracle.hpp"

using namespace pathcert;

namespace {

TreeDecomposition td_of(std::vector<VertexSet> bags, std::vector<int> parent,
                        int root = 0) {
  TreeDecomposition td;
  td.bags = std::move(bags);
  td.parent = std::move(parent);
  td.root = root;
  return td;
}

PathDecomposition pd_of(std::vector<VertexSet> bags) {
  PathDecomposition pd;
  pd.bags = std::move(bags);
  return pd;
}

}  // namespace

TEST_CASE("tree decomposition validation") {
  Graph k3 = gen_clique(3);
  auto ok = validate_tree_decomposition(k3, td_of({VertexSet({0, 1, 2})}, {-1}));
  CHECK(ok.ok());
  CHECK(ok.width == 2);

  Graph p3 = gen_path(3);
  auto edge_td =
      td_of({VertexSet({0, 1}), VertexSet({1, 2})}, {-1, 0});
  auto rep = validate_tree_decomposition(p3, edge_td);
  CHECK(rep.ok());
  CHECK(rep.width == 1);

  auto broken = td_of({VertexSet({0, 1}), VertexSet({2})}, {-1, 0});
  auto bad = validate_tree_decomposition(p3, broken);
  CHECK_FALSE(bad.ok());  // edge 1-2 uncovered

  auto disconnected_occurrence =
      td_of({VertexSet({0, 1}), VertexSet({1, 2}), VertexSet({0, 2})}, {-1, 0, 1});
  CHECK_FALSE(validate_tree_decomposition(p3, disconnected_occurrence).ok());
}

TEST_CASE("path decomposition validation") {
  Graph p4 = gen_path(4);
  auto ok = validate_path_decomposition(
      p4, pd_of({VertexSet({0, 1}), VertexSet({1, 2}), VertexSet({2, 3})}));
  CHECK(ok.ok());
  CHECK(ok.width == 1);

  Graph c4 = gen_cycle(4);
  auto c4rep = validate_path_decomposition(
      c4, pd_of({VertexSet({0, 1, 3}), VertexSet({1, 2, 3})}));
  CHECK(c4rep.ok());
  CHECK(c4rep.width == 2);

  auto gap = validate_path_decomposition(
      p4, pd_of({VertexSet({0, 1}), VertexSet({1, 2}), VertexSet({0, 2, 3})}));
  CHECK_FALSE(gap.ok());  // 0 reappears after an absence
}

TEST_CASE("restriction keeps duplicates and drops empties") {
  PathDecomposition pd = pd_of({VertexSet({0, 1}), VertexSet({1, 2})});
  auto r = restrict_pd(pd, VertexSet({1}));
  REQUIRE(r.bags.size() == 2);
  CHECK(r.bags[0].ids() == std::vector<Vertex>{1});
  CHECK(r.bags[1].ids() == std::vector<Vertex>{1});
  CHECK(restrict_pd(pd, VertexSet{}).bags.empty());
  auto ends = restrict_pd(
      pd_of({VertexSet({0, 1}), VertexSet({1, 2}), VertexSet({2, 3})}),
      VertexSet({0, 3}));
  REQUIRE(ends.bags.size() == 2);
  CHECK(ends.bags[0].ids() == std::vector<Vertex>{0});
  CHECK(ends.bags[1].ids() == std::vector<Vertex>{3});
}

TEST_CASE("tree restriction preserves structure") {
  auto td = td_of({VertexSet({0, 1, 2})}, {-1});
  auto r = restrict_td(td, VertexSet({0, 2}));
  CHECK(r.bags[0].ids() == std::vector<Vertex>{0, 2});

  Graph p3 = gen_path(3);
  auto edge_td = td_of({VertexSet({0, 1}), VertexSet({1, 2})}, {-1, 0});
  auto same = restrict_td(edge_td, p3.all_vertices());
  CHECK(same.bags[0] == edge_td.bags[0]);
  CHECK(same.bags[1] == edge_td.bags[1]);
  auto cut = restrict_td(edge_td, VertexSet({0, 2}));
  CHECK(cut.bags[0].ids() == std::vector<Vertex>{0});
  CHECK(cut.bags[1].ids() == std::vector<Vertex>{2});
  // restriction of a valid decomposition stays valid on the subgraph
  auto rep = validate_tree_decomposition_scoped(p3, VertexSet({0, 2}), cut);
  CHECK(rep.ok());
}

TEST_CASE("concatenate joins bag sequences") {
  CHECK(concatenate({}).bags.empty());
  auto joined = concatenate({pd_of({VertexSet({0})}), pd_of({VertexSet({1})})});
  REQUIRE(joined.bags.size() == 2);
  CHECK(joined.bags[0].ids() == std::vector<Vertex>{0});
  auto w = concatenate({pd_of({VertexSet({0, 1})}),
                        pd_of({VertexSet({1, 2, 3})}), pd_of({VertexSet({3, 4})})});
  CHECK(w.width() == 2);
}

TEST_CASE("combine around a node follows the gluing construction") {
  Graph p3 = gen_path(3);
  auto td = td_of({VertexSet({0, 1}), VertexSet({1, 2})}, {-1, 0});
  PartsMap parts;
  parts.emplace(VertexSet({2}), pd_of({VertexSet({2})}));
  auto pd = combine_around_node(p3, td, 0, parts);
  REQUIRE(pd.bags.size() == 1);
  CHECK(pd.bags[0].ids() == std::vector<Vertex>{0, 1, 2});

  // empty remainder: the single bag B_q
  Graph k3 = gen_clique(3);
  auto single = td_of({VertexSet({0, 1, 2})}, {-1});
  auto pd2 = combine_around_node(k3, single, 0, {});
  REQUIRE(pd2.bags.size() == 1);
  CHECK(pd2.bags[0].ids() == std::vector<Vertex>{0, 1, 2});

  // two triangles sharing a cut vertex held in B_q
  Graph bow = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
  auto bow_td = td_of({VertexSet({2}), VertexSet({0, 1, 2}), VertexSet({2, 3, 4})},
                      {-1, 0, 0});
  REQUIRE(validate_tree_decomposition(bow, bow_td).ok());
  PartsMap bow_parts;
  bow_parts.emplace(VertexSet({0, 1}), pd_of({VertexSet({0, 1})}));
  bow_parts.emplace(VertexSet({3, 4}), pd_of({VertexSet({3, 4})}));
  auto bow_pd = combine_around_node(bow, bow_td, 0, bow_parts);
  auto rep = validate_path_decomposition(bow, bow_pd);
  CHECK(rep.ok());
  int ell = 1, t = bow_td.width() + 1;
  CHECK(bow_pd.width() <= ell + t);
  for (const auto& b : bow_pd.bags) CHECK(b.contains(2));

  PartsMap missing;
  CHECK_THROWS_AS(combine_around_node(bow, bow_td, 0, missing),
                  std::invalid_argument);
}

TEST_CASE("combine along a path keeps the end bags in place") {
  Graph p5 = gen_path(5);
  auto td = td_of({VertexSet({0, 1}), VertexSet({1, 2}), VertexSet({2, 3}),
                   VertexSet({3, 4})},
                  {-1, 0, 1, 2});
  auto pd = combine_along_path(p5, td, {0, 1, 2, 3}, {});
  REQUIRE(pd.bags.size() == 4);
  CHECK(pd.bags.front().ids() == std::vector<Vertex>{0, 1});
  CHECK(pd.bags.back().ids() == std::vector<Vertex>{3, 4});
  CHECK(validate_path_decomposition(p5, pd).ok());

  // single-node path degenerates to combine_around_node
  Graph p3 = gen_path(3);
  auto td2 = td_of({VertexSet({0, 1}), VertexSet({1, 2})}, {-1, 0});
  PartsMap parts;
  parts.emplace(VertexSet({2}), pd_of({VertexSet({2})}));
  auto a = combine_along_path(p3, td2, {0}, parts);
  auto b = combine_around_node(p3, td2, 0, parts);
  CHECK(a.bags == b.bags);
}

TEST_CASE("combine along a caterpillar spine absorbs the legs") {
  // spine 0-1-2 with legs 3 (at 0), 4 (at 1), 5 (at 2)
  Graph cat = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 3}, {1, 4}, {2, 5}});
  auto td = td_of({VertexSet({0, 1}), VertexSet({1, 2}), VertexSet({0, 3}),
                   VertexSet({1, 4}), VertexSet({2, 5})},
                  {-1, 0, 0, 0, 1});
  REQUIRE(validate_tree_decomposition(cat, td).ok());
  PartsMap parts;
  parts.emplace(VertexSet({3}), pd_of({VertexSet({3})}));
  parts.emplace(VertexSet({4}), pd_of({VertexSet({4})}));
  parts.emplace(VertexSet({5}), pd_of({VertexSet({5})}));
  auto pd = combine_along_path(cat, td, {0, 1}, parts);
  auto rep = validate_path_decomposition(cat, pd);
  CHECK(rep.ok());
  int ell = 0, t = td.width() + 1;
  CHECK(pd.width() <= ell + t);
  CHECK(td.bags[0].is_subset_of(pd.bags.front()));
  CHECK(td.bags[1].is_subset_of(pd.bags.back()));
}

TEST_CASE("randomized combination cases validate and respect the width bound") {
  std::mt19937_64 seeds(11);
  int done = 0;
  for (int iter = 0; done < 60; ++iter) {
    Graph g = gen_random(4 + iter % 6, 0.45, seeds());
    TreeDecomposition td = minfill_td(g);
    REQUIRE(validate_tree_decomposition(g, td).ok());
    const int t = td.width() + 1;

    int q = static_cast<int>(seeds() % td.num_nodes());
    PartsMap parts;
    int ell = -1;
    for (const auto& comp : connected_components(g, g.all_vertices().set_minus(td.bags[q]))) {
      parts.emplace(comp, pd_of({comp}));  // single-bag part
      ell = std::max(ell, static_cast<int>(comp.size()) - 1);
    }
    auto pd = combine_around_node(g, td, q, parts);
    auto rep = validate_path_decomposition(g, pd);
    CHECK(rep.ok());
    CHECK(pd.width() <= std::max(ell + t, t - 1));
    for (const auto& b : pd.bags) CHECK(td.bags[q].is_subset_of(b));
    ++done;
  }
}

TEST_CASE("tree restriction keeps occurrences connected on random scopes") {
  std::mt19937_64 seeds(59);
  for (int iter = 0; iter < 25; ++iter) {
    Graph g = gen_random(8 + iter % 5, 0.4, seeds());
    TreeDecomposition td = minfill_td(g);
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (seeds() % 3) keep.push_back(v);
    VertexSet s(keep);
    auto cut = restrict_td(td, s);
    CHECK(validate_tree_decomposition_scoped(g, s, cut).ok());
  }
}
