#include "pathcert/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace pathcert {

namespace {

int to_label(const Graph& g, Vertex v) { return g.label(v); }

Vertex from_label(const Graph& g, int label) {
  auto v = g.vertex_by_label(label);
  if (!v) throw ParseError("unknown vertex label " + std::to_string(label));
  return *v;
}

std::vector<int> labels_of(const Graph& g, const VertexSet& s) {
  std::vector<int> out;
  out.reserve(s.size());
  for (Vertex v : s) out.push_back(g.label(v));
  return out;
}

VertexSet set_from_labels(const Graph& g, const std::vector<int>& labels) {
  std::vector<Vertex> ids;
  ids.reserve(labels.size());
  for (int l : labels) ids.push_back(from_label(g, l));
  return VertexSet(std::move(ids));
}

struct LineReader {
  std::istream& in;
  std::string line{};
  // Returns the next non-comment, non-blank line.
  bool next() {
    while (std::getline(in, line)) {
      std::size_t i = line.find_first_not_of(" \t\r");
      if (i == std::string::npos) continue;
      if (line[i] == 'c') continue;
      return true;
    }
    return false;
  }
};

std::vector<long long> numbers_after(const std::string& line, std::size_t from) {
  std::istringstream ss(line.substr(from));
  std::vector<long long> out;
  long long x;
  while (ss >> x) out.push_back(x);
  std::string rest;
  if (ss.clear(), ss >> rest) throw ParseError("trailing junk on line: " + line);
  return out;
}

}  // namespace

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "p tw " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    for (Vertex w : g.neighbors(v))
      if (v < w) out << to_label(g, v) << ' ' << to_label(g, w) << '\n';
  return out.str();
}

Graph parse_graph(std::istream& in) {
  LineReader rd{in};
  if (!rd.next()) throw ParseError("empty graph file");
  std::istringstream hs(rd.line);
  std::string p, tw;
  long long n, m;
  if (!(hs >> p >> tw >> n >> m) || p != "p" || tw != "tw" || n < 0 || m < 0)
    throw ParseError("bad graph header: " + rd.line);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) labels[i] = static_cast<int>(i) + 1;
  std::vector<std::pair<int, int>> edges;
  while (rd.next()) {
    auto nums = numbers_after(rd.line, 0);
    if (nums.size() != 2) throw ParseError("bad edge line: " + rd.line);
    if (nums[0] < 1 || nums[0] > n || nums[1] < 1 || nums[1] > n)
      throw ParseError("edge endpoint out of range: " + rd.line);
    if (nums[0] == nums[1]) throw ParseError("self-loop: " + rd.line);
    edges.emplace_back(static_cast<int>(nums[0]), static_cast<int>(nums[1]));
  }
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError("edge count does not match header");
  try {
    return Graph::from_labeled_edges(std::move(labels), edges);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Graph parse_graph_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_graph(ss);
}

namespace {

std::string serialize_bags(const char* kind, const std::vector<VertexSet>& bags,
                           const Graph& g) {
  std::ostringstream out;
  std::size_t maxbag = 0;
  for (const auto& b : bags) maxbag = std::max(maxbag, b.size());
  out << "s " << kind << ' ' << bags.size() << ' ' << maxbag << ' '
      << g.num_vertices() << '\n';
  for (std::size_t i = 0; i < bags.size(); ++i) {
    out << "b " << i + 1;
    for (int l : labels_of(g, bags[i])) out << ' ' << l;
    out << '\n';
  }
  return out.str();
}

struct BagFile {
  std::string kind;
  long long declared_bags = 0, declared_maxbag = 0, declared_n = 0;
  std::vector<VertexSet> bags;                 // by id
  std::vector<std::pair<int, int>> tree_edges;  // 1-based bag ids
};

BagFile parse_bag_file(std::istream& in, const Graph& g) {
  LineReader rd{in};
  if (!rd.next()) throw ParseError("empty decomposition file");
  std::istringstream hs(rd.line);
  std::string s;
  BagFile f;
  if (!(hs >> s >> f.kind >> f.declared_bags >> f.declared_maxbag >> f.declared_n) ||
      s != "s" || (f.kind != "td" && f.kind != "pd"))
    throw ParseError("bad decomposition header: " + rd.line);
  if (f.declared_n != g.num_vertices())
    throw ParseError("decomposition is for a different vertex count");
  if (f.declared_bags < 0) throw ParseError("negative bag count");
  f.bags.assign(static_cast<std::size_t>(f.declared_bags), VertexSet{});
  std::vector<char> seen(static_cast<std::size_t>(f.declared_bags), 0);
  std::size_t maxbag = 0;
  while (rd.next()) {
    std::size_t i = rd.line.find_first_not_of(" \t");
    if (rd.line[i] == 'b') {
      auto nums = numbers_after(rd.line, i + 1);
      if (nums.empty()) throw ParseError("bag line without id: " + rd.line);
      long long id = nums[0];
      if (id < 1 || id > f.declared_bags)
        throw ParseError("bag id out of range: " + rd.line);
      if (seen[id - 1]) throw ParseError("duplicate bag id: " + rd.line);
      seen[id - 1] = 1;
      std::vector<int> labels(nums.begin() + 1, nums.end());
      f.bags[id - 1] = set_from_labels(g, labels);
      maxbag = std::max(maxbag, f.bags[id - 1].size());
    } else {
      auto nums = numbers_after(rd.line, 0);
      if (nums.size() != 2) throw ParseError("bad tree edge line: " + rd.line);
      if (nums[0] < 1 || nums[0] > f.declared_bags || nums[1] < 1 ||
          nums[1] > f.declared_bags)
        throw ParseError("tree edge id out of range: " + rd.line);
      f.tree_edges.emplace_back(static_cast<int>(nums[0]), static_cast<int>(nums[1]));
    }
  }
  for (char c : seen)
    if (!c) throw ParseError("missing bag line");
  if (static_cast<long long>(maxbag) != f.declared_maxbag)
    throw ParseError("declared max bag size does not match bags");
  return f;
}

}  // namespace

std::string serialize_td(const TreeDecomposition& td, const Graph& g) {
  std::string out = serialize_bags("td", td.bags, g);
  // canonical edge order independent of the internal rooting
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < td.num_nodes(); ++v)
    if (td.parent[v] >= 0)
      edges.emplace_back(std::min(v, td.parent[v]), std::max(v, td.parent[v]));
  std::sort(edges.begin(), edges.end());
  std::ostringstream es;
  for (auto [a, b] : edges) es << a + 1 << ' ' << b + 1 << '\n';
  return out + es.str();
}

TreeDecomposition parse_td(std::istream& in, const Graph& g) {
  BagFile f = parse_bag_file(in, g);
  if (f.kind != "td") throw ParseError("expected a td file");
  TreeDecomposition td;
  td.bags = std::move(f.bags);
  const int nn = td.num_nodes();
  if (nn == 0) {
    if (!f.tree_edges.empty()) throw ParseError("edges without bags");
    return td;
  }
  if (static_cast<int>(f.tree_edges.size()) != nn - 1)
    throw ParseError("a decomposition tree on k bags needs k-1 edges");
  std::vector<std::vector<int>> adj(nn);
  for (auto [a, b] : f.tree_edges) {
    adj[a - 1].push_back(b - 1);
    adj[b - 1].push_back(a - 1);
  }
  td.parent.assign(nn, -2);
  td.root = 0;  // rooted at the lowest-numbered node
  td.parent[0] = -1;
  std::vector<int> stack{0};
  int visited = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (td.parent[y] == -2) {
        td.parent[y] = x;
        ++visited;
        stack.push_back(y);
      }
  }
  if (visited != nn) throw ParseError("decomposition tree is not connected");
  return td;
}

TreeDecomposition parse_td_string(const std::string& text, const Graph& g) {
  std::istringstream ss(text);
  return parse_td(ss, g);
}

std::string serialize_pd(const PathDecomposition& pd, const Graph& g) {
  return serialize_bags("pd", pd.bags, g);
}

PathDecomposition parse_pd(std::istream& in, const Graph& g) {
  BagFile f = parse_bag_file(in, g);
  if (f.kind != "pd") throw ParseError("expected a pd file");
  if (!f.tree_edges.empty()) throw ParseError("a pd file carries no edge lines");
  PathDecomposition pd;
  pd.bags = std::move(f.bags);
  return pd;
}

PathDecomposition parse_pd_string(const std::string& text, const Graph& g) {
  std::istringstream ss(text);
  return parse_pd(ss, g);
}

namespace {

void serialize_witness_node(const Witness& w, const Graph& g, int depth,
                            std::ostringstream& out) {
  out << "w " << depth;
  for (int l : labels_of(g, w.vset)) out << ' ' << l;
  out << '\n';
  for (const auto& c : w.children) serialize_witness_node(*c, g, depth + 1, out);
}

struct WitnessBuild {
  VertexSet vset;
  std::vector<WitnessBuild> children;
  WitnessPtr freeze() const {
    if (children.empty()) return Witness::leaf(vset);
    if (children.size() != 3)
      throw ParseError("witness node must have zero or three children");
    return Witness::inner(vset, children[0].freeze(), children[1].freeze(),
                          children[2].freeze());
  }
};

}  // namespace

std::string serialize_witness(const Witness& w, const Graph& g) {
  std::ostringstream out;
  serialize_witness_node(w, g, 0, out);
  return out.str();
}

WitnessPtr parse_witness(std::istream& in, const Graph& g) {
  LineReader rd{in};
  WitnessBuild root;
  std::vector<WitnessBuild*> stack;  // stack[d] = open node at depth d
  bool have_root = false;
  while (rd.next()) {
    std::size_t i = rd.line.find_first_not_of(" \t");
    if (rd.line[i] != 'w') throw ParseError("bad witness line: " + rd.line);
    auto nums = numbers_after(rd.line, i + 1);
    if (nums.empty()) throw ParseError("witness line without depth: " + rd.line);
    long long depth = nums[0];
    std::vector<int> labels(nums.begin() + 1, nums.end());
    WitnessBuild node;
    node.vset = set_from_labels(g, labels);
    if (depth == 0) {
      if (have_root) throw ParseError("multiple witness roots");
      have_root = true;
      root = std::move(node);
      stack = {&root};
    } else {
      if (!have_root || depth > static_cast<long long>(stack.size()))
        throw ParseError("witness node depth jumps: " + rd.line);
      stack.resize(static_cast<std::size_t>(depth));
      stack.back()->children.push_back(std::move(node));
      stack.push_back(&stack.back()->children.back());
    }
  }
  if (!have_root) throw ParseError("empty witness file");
  return root.freeze();
}

WitnessPtr parse_witness_string(const std::string& text, const Graph& g) {
  std::istringstream ss(text);
  return parse_witness(ss, g);
}

std::string serialize_subdivision(const Subdivision& sd, const Graph& g) {
  std::ostringstream out;
  for (Vertex v : sd.branch) out << "r " << to_label(g, v) << '\n';
  for (std::size_t i = 0; i < sd.paths.size(); ++i) {
    out << "e " << i + 1;
    for (Vertex v : sd.paths[i]) out << ' ' << to_label(g, v);
    out << '\n';
  }
  return out.str();
}

Subdivision parse_subdivision(std::istream& in, const Graph& g) {
  LineReader rd{in};
  Subdivision sd;
  std::vector<std::vector<Vertex>> paths;
  while (rd.next()) {
    std::size_t i = rd.line.find_first_not_of(" \t");
    char tag = rd.line[i];
    auto nums = numbers_after(rd.line, i + 1);
    if (tag == 'r') {
      if (nums.size() != 1) throw ParseError("bad branch line: " + rd.line);
      sd.branch.push_back(from_label(g, static_cast<int>(nums[0])));
    } else if (tag == 'e') {
      if (nums.size() < 3) throw ParseError("bad path line: " + rd.line);
      long long idx = nums[0];
      if (idx < 1) throw ParseError("bad path index: " + rd.line);
      if (static_cast<std::size_t>(idx) > paths.size())
        paths.resize(static_cast<std::size_t>(idx));
      std::vector<Vertex> p;
      for (std::size_t j = 1; j < nums.size(); ++j)
        p.push_back(from_label(g, static_cast<int>(nums[j])));
      paths[idx - 1] = std::move(p);
    } else {
      throw ParseError("bad subdivision line: " + rd.line);
    }
  }
  // height from the branch count
  int h = -1;
  for (int t = 0; t <= 30; ++t)
    if ((std::size_t(2) << t) - 1 == sd.branch.size()) {
      h = t;
      break;
    }
  if (h < 0) throw ParseError("branch count is not 2^(h+1)-1");
  sd.height = h;
  if (paths.size() != sd.branch.size() - 1)
    throw ParseError("wrong number of subdivision paths");
  sd.paths = std::move(paths);
  return sd;
}

Subdivision parse_subdivision_string(const std::string& text, const Graph& g) {
  std::istringstream ss(text);
  return parse_subdivision(ss, g);
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_graph(in);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << content;
}

}  // namespace pathcert
