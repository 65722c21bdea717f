#pragma once

#include <iosfwd>
#include <string>

#include "pathcert/decomp.hpp"
#include "pathcert/graph.hpp"
#include "pathcert/witness.hpp"

namespace pathcert {

/// Raised on any malformed input file; the CLI maps it to exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graphs: "p tw <n> <m>" header, "<u> <v>" edge lines with 1-based labels,
// "c" comment lines ignored. Decompositions: "s td|pd <bags> <maxbag> <n>"
// header, "b <id> <v...>" bag lines, and (trees only) bag-tree edge lines.
// Witnesses: one node per line, "w <depth> <v...>", children in order.
// Subdivisions: "r <v>" branch lines in level order, then
// "e <edge> <v0 v1 ... vk>" path lines. All vertices are external labels.

std::string serialize_graph(const Graph& g);
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);

std::string serialize_td(const TreeDecomposition& td, const Graph& g);
TreeDecomposition parse_td(std::istream& in, const Graph& g);
TreeDecomposition parse_td_string(const std::string& text, const Graph& g);

std::string serialize_pd(const PathDecomposition& pd, const Graph& g);
PathDecomposition parse_pd(std::istream& in, const Graph& g);
PathDecomposition parse_pd_string(const std::string& text, const Graph& g);

std::string serialize_witness(const Witness& w, const Graph& g);
WitnessPtr parse_witness(std::istream& in, const Graph& g);
WitnessPtr parse_witness_string(const std::string& text, const Graph& g);

std::string serialize_subdivision(const Subdivision& sd, const Graph& g);
Subdivision parse_subdivision(std::istream& in, const Graph& g);
Subdivision parse_subdivision_string(const std::string& text, const Graph& g);

Graph load_graph_file(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pathcert
