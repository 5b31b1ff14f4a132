#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "extord/core.hpp"
#include "extord/graph.hpp"

// Edge-list text format:
//   # comment
//   graph | digraph
//   node <v>
//   <u> <v>
// Tokens are separated by single spaces; duplicate declarations, loops and
// malformed lines are parse errors. Blank lines are tolerated.

namespace extord {

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line, std::size_t lineno) {
  std::vector<std::string_view> toks;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t sp = line.find(' ', pos);
    std::string_view tok =
        (sp == std::string_view::npos) ? line.substr(pos) : line.substr(pos, sp - pos);
    if (tok.empty()) throw ParseError(lineno, "empty token (check spacing)");
    toks.push_back(tok);
    if (sp == std::string_view::npos) break;
    pos = sp + 1;
  }
  return toks;
}

struct EdgeListLine {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

inline std::vector<EdgeListLine> content_lines(std::string_view text) {
  std::vector<EdgeListLine> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++lineno;
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        (nl == std::string_view::npos) ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    out.push_back({lineno, split_tokens(line, lineno)});
  }
  return out;
}

template <class Structure>
void add_declaration(Structure& s, const EdgeListLine& line, bool directed) {
  const auto& toks = line.tokens;
  if (toks.size() == 2 && toks[0] == "node") {
    if (!valid_vertex_token(toks[1])) throw ParseError(line.number, "invalid vertex token");
    if (s.has_vertex(toks[1]))
      throw ParseError(line.number, "duplicate declaration of vertex '" + std::string(toks[1]) + "'");
    s.add_vertex(std::string(toks[1]));
    return;
  }
  if (toks.size() != 2)
    throw ParseError(line.number, "expected 'node <v>' or '<u> <v>'");
  if (!valid_vertex_token(toks[0]) || !valid_vertex_token(toks[1]))
    throw ParseError(line.number, "invalid vertex token");
  if (toks[0] == toks[1]) throw ParseError(line.number, "loop at '" + std::string(toks[0]) + "'");
  try {
    s.add_edge_like(toks[0], toks[1]);
  } catch (const DomainError&) {
    throw ParseError(line.number, std::string(directed ? "duplicate arc " : "duplicate edge ") +
                                      std::string(toks[0]) + " " + std::string(toks[1]));
  }
}

struct GraphSink {
  Graph g;
  bool has_vertex(std::string_view v) const { return g.has_vertex(v); }
  void add_vertex(std::string v) { g.add_vertex(std::move(v)); }
  void add_edge_like(std::string_view u, std::string_view v) { g.add_edge(u, v); }
};

struct DigraphSink {
  Digraph d;
  bool has_vertex(std::string_view v) const { return d.has_vertex(v); }
  void add_vertex(std::string v) { d.add_vertex(std::move(v)); }
  void add_edge_like(std::string_view u, std::string_view v) { d.add_arc(u, v); }
};

}  // namespace detail

inline std::variant<Graph, Digraph> parse_edge_list(std::string_view text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing 'graph' or 'digraph' header");
  const auto& header = lines.front();
  if (header.tokens.size() != 1 || (header.tokens[0] != "graph" && header.tokens[0] != "digraph"))
    throw ParseError(header.number, "first line must be 'graph' or 'digraph'");
  bool directed = header.tokens[0] == "digraph";
  if (directed) {
    detail::DigraphSink sink;
    for (std::size_t i = 1; i < lines.size(); ++i) detail::add_declaration(sink, lines[i], true);
    return std::move(sink.d);
  }
  detail::GraphSink sink;
  for (std::size_t i = 1; i < lines.size(); ++i) detail::add_declaration(sink, lines[i], false);
  return std::move(sink.g);
}

inline Graph parse_graph(std::string_view text) {
  auto parsed = parse_edge_list(text);
  if (auto* g = std::get_if<Graph>(&parsed)) return std::move(*g);
  throw ParseError(1, "expected a graph, got a digraph");
}

inline Digraph parse_digraph(std::string_view text) {
  auto parsed = parse_edge_list(text);
  if (auto* d = std::get_if<Digraph>(&parsed)) return std::move(*d);
  throw ParseError(1, "expected a digraph, got a graph");
}

inline std::string serialize(const Graph& g) {
  std::ostringstream out;
  out << "graph\n";
  for (int v : g.canonical_vertices())
    if (g.degree(v) == 0) out << "node " << g.name(v) << "\n";
  for (const auto& [u, v] : g.canonical_edges()) out << g.name(u) << " " << g.name(v) << "\n";
  return out.str();
}

inline std::string serialize(const Digraph& d) {
  std::ostringstream out;
  out << "digraph\n";
  for (int v : d.canonical_vertices())
    if (d.out_degree(v) == 0 && d.in_degree(v) == 0) out << "node " << d.name(v) << "\n";
  for (const auto& [u, v] : d.canonical_arcs()) out << d.name(u) << " " << d.name(v) << "\n";
  return out.str();
}

// Vertex-set / vertex-sequence files: one token per line, '#' comments.
inline std::vector<std::string> parse_vertex_lines(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& line : detail::content_lines(text)) {
    if (line.tokens.size() != 1 || !valid_vertex_token(line.tokens[0]))
      throw ParseError(line.number, "expected one vertex token per line");
    out.emplace_back(line.tokens[0]);
  }
  return out;
}

}  // namespace extord
