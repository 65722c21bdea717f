#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pathcert/gen.hpp"
#include "pathcert/io.hpp"
#include "pathcert/oracle.hpp"
#include "pathcert/solve.hpp"

namespace fs = std::filesystem;
using namespace pathcert;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct SolveOptions {
  std::string graph_file;
  std::string td_file;
  bool exact_tw = false;
  std::string out_prefix;
  std::string batch_dir;
};

int solve_one(const SolveOptions& opt, const std::string& graph_path) {
  auto t0 = std::chrono::steady_clock::now();
  Graph g = load_graph_file(graph_path);

  TreeDecomposition td;
  std::string td_source;
  if (!opt.td_file.empty()) {
    std::string text = read_file(opt.td_file);
    td = parse_td_string(text, g);
    td_source = opt.td_file;
  } else if (opt.exact_tw) {
    td = exact_treewidth(g).td;
    td_source = "exact treewidth";
  } else {
    td = minfill_td(g);
    td_source = "min-fill heuristic";
  }

  Solver solver(g, td);
  SolveRun run = solver.run();

  std::string prefix = opt.out_prefix;
  if (prefix.empty()) {
    prefix = graph_path;
    auto dot = prefix.rfind('.');
    auto slash = prefix.rfind('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
      prefix.resize(dot);
  }

  std::cout << "graph: " << graph_path << "  n=" << g.num_vertices()
            << " m=" << g.num_edges() << '\n';
  std::cout << "input decomposition: " << td_source << "  width=" << td.width()
            << '\n';

  if (run.vacuous) {
    std::cout << "empty graph: vacuous result, no certificates written\n";
    return 0;
  }

  write_file(prefix + ".pd", serialize_pd(run.pd, g));

  // The certificates of the component reaching the overall height also
  // certify that height for the whole graph.
  const ComponentOutcome* best = nullptr;
  for (const auto& c : run.components)
    if (!best || c.result->h > best->result->h) best = &c;
  Subdivision sd = extract_binary_subdivision(g, *best->result->witness);
  write_file(prefix + ".wit", serialize_witness(*best->result->witness, g));
  write_file(prefix + ".sub", serialize_subdivision(sd, g));

  for (std::size_t i = 0; i < run.components.size(); ++i) {
    const auto& c = run.components[i];
    std::cout << "component " << i + 1 << ": n=" << c.component.size()
              << " h=" << c.result->h
              << " pd_width=" << (c.result->pd ? c.result->pd->width() : -1) << '\n';
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cout << "h: " << run.h << "\n";
  std::cout << "pd: width " << run.pd.width() << "  bags " << run.pd.bags.size()
            << "  bound t*h+1 = " << run.t * run.h + 1 << '\n';
  std::cout << "witness: height " << best->result->h << " -> " << prefix << ".wit\n";
  std::cout << "subdivision: height " << sd.height << " -> " << prefix << ".sub\n";
  const SolveCounters& sc = solver.counters();
  auto st = solver.stats();
  std::cout << "subproblems: " << sc.subproblems << "  chain runs: " << sc.chain_runs
            << "  pruned: " << sc.pruned << "  secondary: " << sc.secondary_calls
            << "  max finite bound: " << st.max_finite_bound << '\n';
  std::cout << "time: " << ms << " ms\n";
  return 0;
}

int cmd_solve(const SolveOptions& opt) {
  if (!opt.batch_dir.empty()) {
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(opt.batch_dir))
      if (e.is_regular_file() && e.path().extension() == ".gr")
        files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    int rc = 0;
    for (const auto& f : files) {
      rc = std::max(rc, solve_one(opt, f));
      std::cout << '\n';
    }
    return rc;
  }
  return solve_one(opt, opt.graph_file);
}

int cmd_validate(const std::string& kind, const std::string& graph_file,
                 const std::string& cert_file) {
  Graph g = load_graph_file(graph_file);
  std::string text = read_file(cert_file);
  std::vector<std::string> violations;
  if (kind == "td") {
    auto td = parse_td_string(text, g);
    auto rep = validate_tree_decomposition(g, td);
    violations = rep.violations;
    if (rep.ok()) std::cout << "valid tree decomposition, width " << rep.width << '\n';
  } else if (kind == "pd") {
    auto pd = parse_pd_string(text, g);
    auto rep = validate_path_decomposition(g, pd);
    violations = rep.violations;
    if (rep.ok()) std::cout << "valid path decomposition, width " << rep.width << '\n';
  } else if (kind == "witness") {
    auto w = parse_witness_string(text, g);
    auto chk = validate_witness(g, *w);
    violations = chk.violations;
    if (chk.ok()) std::cout << "valid witness, height " << chk.height << '\n';
  } else if (kind == "subdivision") {
    auto sd = parse_subdivision_string(text, g);
    auto rep = validate_subdivision(g, sd, sd.height);
    violations = rep.violations;
    if (rep.ok()) std::cout << "valid subdivision, height " << sd.height << '\n';
  } else {
    throw ParseError("unknown certificate kind: " + kind);
  }
  if (violations.empty()) return 0;
  for (const auto& v : violations) std::cout << "violation: " << v << '\n';
  return kExitInvalid;
}

int cmd_oracle(const std::string& kind, const std::string& graph_file,
               const std::string& out_file) {
  Graph g = load_graph_file(graph_file);
  if (kind == "pw") {
    auto res = exact_pathwidth(g);
    std::cout << "pathwidth " << res.value << '\n';
    if (!out_file.empty()) write_file(out_file, serialize_pd(res.pd, g));
  } else if (kind == "tw") {
    auto res = exact_treewidth(g);
    std::cout << "treewidth " << res.value << '\n';
    if (!out_file.empty()) write_file(out_file, serialize_td(res.td, g));
  } else {
    throw ParseError("unknown oracle kind: " + kind);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pathwidth certificates: solve, validate, oracle, gen"};
  app.require_subcommand(1);

  SolveOptions sopt;
  auto* solve = app.add_subcommand(
      "solve", "compute height, witness, subdivision and path decomposition");
  solve->add_option("graph", sopt.graph_file, "graph file (p tw format)");
  solve->add_option("--td", sopt.td_file, "tree decomposition file");
  solve->add_flag("--exact-tw", sopt.exact_tw,
                  "derive the input decomposition from the exact treewidth oracle");
  solve->add_option("--out-prefix", sopt.out_prefix, "prefix for .pd/.wit/.sub files");
  solve->add_option("--batch", sopt.batch_dir, "solve every .gr file in a directory");

  std::string vkind, vgraph, vcert;
  auto* validate = app.add_subcommand("validate", "check a certificate file");
  validate->add_option("kind", vkind, "td|pd|witness|subdivision")->required();
  validate->add_option("graph", vgraph, "graph file")->required();
  validate->add_option("certificate", vcert, "certificate file")->required();

  std::string okind, ograph, oout;
  auto* oracle = app.add_subcommand("oracle", "exact width computation");
  oracle->add_option("kind", okind, "pw|tw")->required();
  oracle->add_option("graph", ograph, "graph file")->required();
  oracle->add_option("-o,--out", oout, "certificate output file");

  std::string family, gout, gtdout, gkind = "binary";
  int gn = 0, grows = 0, gcols = 0, gheight = 0, gt = 1;
  double gp = 0.5;
  std::uint64_t gseed = 0;
  bool gseeded_matching = false;
  auto* gen = app.add_subcommand("gen", "deterministic instance generators");
  gen->add_option("family", family, "path|cycle|clique|grid|tree|random|rtree|blowup")
      ->required();
  gen->add_option("-n", gn, "vertex count");
  gen->add_option("--rows", grows, "grid rows");
  gen->add_option("--cols", gcols, "grid cols");
  gen->add_option("--kind", gkind, "tree kind: binary|ternary");
  gen->add_option("--height", gheight, "tree height");
  gen->add_option("-t", gt, "blow-up clique size");
  gen->add_option("-p", gp, "edge probability");
  gen->add_option("--seed", gseed, "seed (default 0)");
  gen->add_flag("--seeded-matching", gseeded_matching,
                "use a seeded matching in blow-ups instead of the identity");
  gen->add_option("-o,--out", gout, "graph output file")->required();
  gen->add_option("--td-out", gtdout, "decomposition output (blowup and tree)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (solve->parsed()) {
      if (sopt.graph_file.empty() && sopt.batch_dir.empty())
        throw ParseError("solve needs a graph file or --batch");
      return cmd_solve(sopt);
    }
    if (validate->parsed()) return cmd_validate(vkind, vgraph, vcert);
    if (oracle->parsed()) return cmd_oracle(okind, ograph, oout);
    if (gen->parsed()) {
      Graph g;
      TreeDecomposition td;
      bool have_td = false;
      TreeKind kind = gkind == "ternary" ? TreeKind::Ternary : TreeKind::Binary;
      MatchingKind mk =
          gseeded_matching ? MatchingKind::Seeded : MatchingKind::Identity;
      if (family == "path")
        g = gen_path(gn);
      else if (family == "cycle")
        g = gen_cycle(gn);
      else if (family == "clique")
        g = gen_clique(gn);
      else if (family == "grid")
        g = gen_grid(grows, gcols);
      else if (family == "tree") {
        g = gen_tree(kind, gheight);
        td = tree_edge_td(g);
        have_td = true;
      } else if (family == "random")
        g = gen_random(gn, gp, gseed);
      else if (family == "rtree") {
        g = gen_random_tree(gn, gseed);
        td = tree_edge_td(g);
        have_td = true;
      } else if (family == "blowup") {
        Graph tree = gen_tree(kind, gheight);
        g = blowup(tree, gt, mk, gseed);
        td = blowup_td(tree, gt, mk, gseed);
        have_td = true;
      } else
        throw ParseError("unknown family: " + family);
      write_file(gout, serialize_graph(g));
      std::cout << "wrote " << gout << "  n=" << g.num_vertices()
                << " m=" << g.num_edges() << '\n';
      if (!gtdout.empty()) {
        if (!have_td) throw ParseError("--td-out only applies to tree and blowup");
        write_file(gtdout, serialize_td(td, g));
        std::cout << "wrote " << gtdout << "  width=" << td.width() << '\n';
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
