// Acceptance suite: runs every guarantee the library makes end to end and
// prints one verdict line per criterion.

#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pathcert/gen.hpp"
#include "pathcert/io.hpp"
#include "pathcert/oracle.hpp"
#include "pathcert/solve.hpp"
#include "pathcert/witness.hpp"

using namespace pathcert;

namespace {

int failures = 0;

void verdict(int number, bool pass, const std::string& text) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", number,
              text.c_str());
  if (!pass) ++failures;
}

struct Instance {
  Graph g;
  TreeDecomposition td;
};

long long memo_bound(long long n) {
  int log3 = 0;
  long long p = 1;
  while (p < n) {
    p *= 3;
    ++log3;
  }
  return n * (log3 + 2);
}

// shared corpus: criterion 1 instances are reused by criteria 2, 6 and 8
std::vector<Instance> sandwich_corpus() {
  std::vector<Instance> out;
  for (int n = 4; n <= 11; ++n)
    for (double p : {0.2, 0.35, 0.5}) {
      int made = 0;
      for (std::uint64_t seed = 1; made < 21 && seed < 4000; ++seed) {
        Graph g = gen_random(n, p, seed * 1000 + n);
        if (connected_components(g, g.all_vertices()).size() != 1) continue;
        TreeDecomposition td = exact_treewidth(g).td;
        out.push_back({std::move(g), std::move(td)});
        ++made;
      }
    }
  return out;
}

bool certificates_ok(const Graph& g, const SolveRun& run, std::string& why) {
  if (!run.pd_complete) {
    why = "missing decomposition";
    return false;
  }
  auto rep = validate_path_decomposition(g, run.pd);
  if (!rep.ok()) {
    why = "pd: " + rep.violations.front();
    return false;
  }
  for (const auto& c : run.components) {
    auto chk = validate_witness(g, *c.result->witness);
    if (!chk.ok()) {
      why = "witness: " + chk.violations.front();
      return false;
    }
    if (chk.height != c.result->h) {
      why = "witness height " + std::to_string(chk.height) + " != h " +
            std::to_string(c.result->h);
      return false;
    }
    Subdivision sd = extract_binary_subdivision(g, *c.result->witness);
    auto srep = validate_subdivision(g, sd, c.result->h);
    if (!srep.ok()) {
      why = "subdivision: " + srep.violations.front();
      return false;
    }
  }
  return true;
}

void criterion_1_and_2() {
  auto corpus = sandwich_corpus();
  int violations = 0, cert_violations = 0;
  std::string why;
  for (const auto& inst : corpus) {
    Solver solver(inst.g, inst.td);
    SolveRun run = solver.run();
    int pw = exact_pathwidth(inst.g).value;
    if (!(run.h <= pw && pw <= run.pd.width() &&
          run.pd.width() <= run.t * run.h + 1))
      ++violations;
    if (!certificates_ok(inst.g, run, why)) ++cert_violations;
  }
  verdict(1, violations == 0,
          "sandwich h <= pw <= width(pd) <= t*h+1 on " +
              std::to_string(corpus.size()) + " random connected graphs (" +
              std::to_string(violations) + " violations)");

  // certificate validity at exact height also across the generator families
  std::vector<Instance> families;
  auto add = [&](Graph g) {
    TreeDecomposition td = minfill_td(g);
    families.push_back({std::move(g), std::move(td)});
  };
  add(gen_path(10));
  add(gen_cycle(12));
  add(gen_clique(7));
  add(gen_grid(4, 5));
  add(gen_random(10, 0.4, 99));
  {
    Graph t = gen_tree(TreeKind::Binary, 4);
    families.push_back({t, tree_edge_td(t)});
  }
  {
    Graph t = gen_tree(TreeKind::Ternary, 3);
    families.push_back({t, tree_edge_td(t)});
  }
  {
    Graph t = gen_random_tree(60, 5);
    families.push_back({t, tree_edge_td(t)});
  }
  {
    Graph tree = gen_tree(TreeKind::Ternary, 2);
    families.push_back({blowup(tree, 2), blowup_td(tree, 2)});
  }
  {
    Graph tree = gen_tree(TreeKind::Binary, 3);
    families.push_back({blowup(tree, 3, MatchingKind::Seeded, 7),
                        blowup_td(tree, 3, MatchingKind::Seeded, 7)});
  }
  for (const auto& inst : families) {
    Solver solver(inst.g, inst.td);
    SolveRun run = solver.run();
    if (!certificates_ok(inst.g, run, why)) ++cert_violations;
  }
  verdict(2, cert_violations == 0,
          "witnesses validate at exactly h and subdivisions at height h on " +
              std::to_string(corpus.size()) + "+" + std::to_string(families.size()) +
              " instances (" + std::to_string(cert_violations) + " violations)");
}

void criterion_3() {
  bool ok = true;
  std::string detail;
  for (int h = 1; h <= 8; ++h) {
    Graph t = gen_tree(TreeKind::Binary, h);
    Solver solver(t, tree_edge_td(t));
    SolveRun run = solver.run();
    int half = (h + 1) / 2;
    if (!(run.h <= half && run.pd.width() <= 2 * run.h + 1)) {
      ok = false;
      detail += " h=" + std::to_string(h) + " over budget;";
    }
    if (h <= 6) {
      int pw = exact_pathwidth(t).value;
      if (!(pw == half && run.h <= pw)) {
        ok = false;
        detail += " h=" + std::to_string(h) + " oracle mismatch;";
      }
    }
    std::string why;
    if (!certificates_ok(t, run, why)) {
      ok = false;
      detail += " h=" + std::to_string(h) + " " + why + ";";
    }
  }
  verdict(3, ok,
          "complete binary trees h=1..8: height within ceil(h/2), width within "
          "2h+1, oracle agreement up to h=6" +
              detail);
}

void criterion_4() {
  bool ok = true;
  std::string detail;
  for (auto [t, h] : {std::pair<int, int>{1, 1}, {1, 2}, {2, 1}}) {
    Graph tree = gen_tree(TreeKind::Ternary, h);
    Graph g = blowup(tree, t);
    int tw = exact_treewidth(g).value;
    int pw = exact_pathwidth(g).value;
    if (tw != t) {
      ok = false;
      detail += " tw(blowup h" + std::to_string(h) + ", t" + std::to_string(t) +
                ")=" + std::to_string(tw) + ";";
    }
    if (pw < t * (h + 1) - 1) {
      ok = false;
      detail += " pw too small at t=" + std::to_string(t) +
                ",h=" + std::to_string(h) + ";";
    }
  }
  for (int t = 1; t <= 4; ++t)
    for (int h = 1; h <= 3; ++h) {
      Graph tree = gen_tree(TreeKind::Ternary, h);
      Graph g = blowup(tree, t);
      auto td = blowup_td(tree, t);
      auto rep = validate_tree_decomposition(g, td);
      if (!rep.ok() || td.width() != t) {
        ok = false;
        detail += " blowup_td t=" + std::to_string(t) + ",h=" + std::to_string(h) +
                  " invalid;";
      }
    }
  {
    // beyond the oracle cap the witness itself is the lower bound
    Graph tree = gen_tree(TreeKind::Ternary, 2);
    Graph g = blowup(tree, 2);
    Solver solver(g, blowup_td(tree, 2));
    SolveRun run = solver.run();
    std::string why;
    if (run.h < 2 || !certificates_ok(g, run, why)) {
      ok = false;
      detail += " blowup (2,2) returned h=" + std::to_string(run.h) + ";";
    }
  }
  verdict(4, ok,
          "blow-up gadgets: tw = t, pw >= t(h+1)-1, decompositions at "
          "width exactly t, and h >= 2 on the 26-vertex instance" +
              detail);
}

void criterion_5() {
  bool ok = true;
  std::string detail;
  auto check = [&](const std::string& name, const Graph& g) {
    TreeDecomposition td = minfill_td(g);
    Solver solver(g, td);
    SolveRun run = solver.run();
    auto st = solver.stats();
    long long n = g.num_vertices();
    if (st.subproblems > memo_bound(n)) {
      ok = false;
      detail += " " + name + " " + std::to_string(st.subproblems) + ">" +
                std::to_string(memo_bound(n)) + ";";
    }
    for (int b : st.finite_bounds) {
      long long p = 1;
      for (int i = 0; i < b; ++i) p *= 3;
      if (p > n) {
        ok = false;
        detail += " " + name + " bound 3^" + std::to_string(b) + ">n;";
      }
    }
    if (!run.pd_complete || run.pd.width() > run.t * run.h + 1) {
      ok = false;
      detail += " " + name + " width bound broken;";
    }
  };
  check("rtree500", gen_random_tree(500, 11));
  check("rtree2000", gen_random_tree(2000, 12));
  check("grid20x25", gen_grid(20, 25));
  check("grid40x50", gen_grid(40, 50));
  check("blowup_t2_h5", blowup(gen_tree(TreeKind::Ternary, 5), 2));
  check("blowup_t3_h5", blowup(gen_tree(TreeKind::Ternary, 5), 3));
  verdict(5, ok,
          "memoized subproblems within n(ceil(log3 n)+2) and finite bounds "
          "within log3 n, up to n=2000" +
              detail);
}

void criterion_6() {
  auto corpus = sandwich_corpus();
  int checked = 0, mismatches = 0;
  for (const auto& inst : corpus) {
    if (checked >= 100) break;
    ++checked;
    Solver a(inst.g, inst.td);
    SolveRun ra = a.run();
    Solver b(inst.g, inst.td);
    SolveRun rb = b.run(static_cast<std::uint32_t>(ra.h + 1));
    bool same = ra.h == rb.h && rb.pd_complete &&
                serialize_pd(ra.pd, inst.g) == serialize_pd(rb.pd, inst.g) &&
                ra.components.size() == rb.components.size();
    if (same)
      for (std::size_t i = 0; i < ra.components.size(); ++i)
        if (!(*ra.components[i].result->witness ==
              *rb.components[i].result->witness))
          same = false;
    if (!same) ++mismatches;
  }
  int byte_mismatches = 0;
  for (int i = 0; i < 20; ++i) {
    const auto& inst = corpus[static_cast<std::size_t>(i) * 7 % corpus.size()];
    auto render = [&] {
      Solver s(inst.g, inst.td);
      SolveRun run = s.run();
      std::string out = serialize_pd(run.pd, inst.g);
      for (const auto& c : run.components) {
        out += serialize_witness(*c.result->witness, inst.g);
        out += serialize_subdivision(
            extract_binary_subdivision(inst.g, *c.result->witness), inst.g);
      }
      return out;
    };
    if (render() != render()) ++byte_mismatches;
  }
  verdict(6, mismatches == 0 && byte_mismatches == 0,
          "bound h+1 reruns identical on " + std::to_string(checked) +
              " instances, double runs byte-identical on 20 (" +
              std::to_string(mismatches + byte_mismatches) + " mismatches)");
}

void criterion_7() {
  std::mt19937_64 seeds(4242);
  int around_bad = 0, along_bad = 0;
  int done_around = 0, done_along = 0;
  while (done_around < 200 || done_along < 200) {
    Graph g = gen_random(4 + static_cast<int>(seeds() % 7), 0.45, seeds());
    TreeDecomposition td = minfill_td(g);
    if (!validate_tree_decomposition(g, td).ok()) {
      ++around_bad;
      ++done_around;
      continue;
    }
    const int t = td.width() + 1;
    if (done_around < 200) {
      ++done_around;
      int q = static_cast<int>(seeds() % td.num_nodes());
      PartsMap parts;
      int ell = -1;
      for (const auto& comp :
           connected_components(g, g.all_vertices().set_minus(td.bags[q]))) {
        PathDecomposition part;
        part.bags = {comp};
        parts.emplace(comp, std::move(part));
        ell = std::max(ell, static_cast<int>(comp.size()) - 1);
      }
      PathDecomposition pd = combine_around_node(g, td, q, parts);
      bool ok = validate_path_decomposition(g, pd).ok() && pd.width() <= ell + t;
      for (const auto& bag : pd.bags) ok = ok && td.bags[q].is_subset_of(bag);
      if (!ok) ++around_bad;
    }
    if (done_along < 200) {
      ++done_along;
      int x = static_cast<int>(seeds() % td.num_nodes());
      int y = static_cast<int>(seeds() % td.num_nodes());
      // tree path x..y via parent walks
      std::vector<int> px{x};
      for (int v = td.parent[x]; v != -1; v = td.parent[v]) px.push_back(v);
      std::vector<char> on_px(td.num_nodes(), 0);
      for (int v : px) on_px[v] = 1;
      std::vector<int> qy;
      int meet = y;
      while (!on_px[meet]) {
        qy.push_back(meet);
        meet = td.parent[meet];
      }
      std::vector<int> q_path;
      for (int v : px) {
        q_path.push_back(v);
        if (v == meet) break;
      }
      for (auto it = qy.rbegin(); it != qy.rend(); ++it) q_path.push_back(*it);
      VertexSet cut;
      for (int v : q_path) cut = cut.set_union(td.bags[v]);
      PartsMap parts;
      int ell = -1;
      for (const auto& comp :
           connected_components(g, g.all_vertices().set_minus(cut))) {
        PathDecomposition part;
        part.bags = {comp};
        parts.emplace(comp, std::move(part));
        ell = std::max(ell, static_cast<int>(comp.size()) - 1);
      }
      PathDecomposition pd = combine_along_path(g, td, q_path, parts);
      bool ok = validate_path_decomposition(g, pd).ok() && pd.width() <= ell + t;
      if (!pd.bags.empty()) {
        ok = ok && td.bags[q_path.front()].is_subset_of(pd.bags.front());
        ok = ok && td.bags[q_path.back()].is_subset_of(pd.bags.back());
      } else {
        ok = ok && g.num_vertices() == 0;
      }
      if (!ok) ++along_bad;
    }
  }
  verdict(7, around_bad == 0 && along_bad == 0,
          "200 randomized gluing cases per combination: valid, width <= l+t, "
          "hub/end bags in place (" +
              std::to_string(around_bad + along_bad) + " violations)");
}

void criterion_8() {
  int bad = 0;
  auto corpus = sandwich_corpus();
  int used = 0;
  for (const auto& inst : corpus) {
    if (++used > 60) break;
    const Graph& g = inst.g;
    std::string gs = serialize_graph(g);
    if (serialize_graph(parse_graph_string(gs)) != gs) ++bad;
    std::string ts = serialize_td(inst.td, g);
    if (serialize_td(parse_td_string(ts, g), g) != ts) ++bad;
    Solver solver(g, inst.td);
    SolveRun run = solver.run();
    std::string ps = serialize_pd(run.pd, g);
    if (serialize_pd(parse_pd_string(ps, g), g) != ps) ++bad;
    for (const auto& c : run.components) {
      std::string ws = serialize_witness(*c.result->witness, g);
      if (serialize_witness(*parse_witness_string(ws, g), g) != ws) ++bad;
      Subdivision sd = extract_binary_subdivision(g, *c.result->witness);
      std::string ss = serialize_subdivision(sd, g);
      if (serialize_subdivision(parse_subdivision_string(ss, g), g) != ss) ++bad;
    }
  }
  verdict(8, bad == 0,
          "parse-serialize identity for graphs, decompositions, witnesses and "
          "subdivisions across the corpus (" +
              std::to_string(bad) + " mismatches)");
}

}  // namespace

int main() {
  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures;
}
