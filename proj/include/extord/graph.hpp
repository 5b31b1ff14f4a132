#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "extord/core.hpp"

namespace extord {

namespace detail {

// Common vertex bookkeeping for Graph and Digraph. Vertices keep their
// insertion order; the name index doubles as the canonical (shortlex) order.
class VertexSet {
 public:
  int add_vertex(std::string name) {
    if (!valid_vertex_token(name)) throw DomainError("invalid vertex token '" + name + "'");
    auto [it, fresh] = index_.emplace(std::move(name), static_cast<int>(names_.size()));
    if (!fresh) throw DomainError("duplicate vertex '" + it->first + "'");
    names_.push_back(it->first);
    return it->second;
  }

  int ensure_vertex(std::string_view name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    return add_vertex(std::string(name));
  }

  int n() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_[static_cast<std::size_t>(v)]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<int> index_of(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Vertex indices sorted shortlex by name.
  std::vector<int> canonical_vertices() const {
    std::vector<int> out;
    out.reserve(names_.size());
    for (const auto& [name, idx] : index_) out.push_back(idx);
    return out;
  }

  // rank[v] = position of v in canonical order.
  std::vector<int> shortlex_ranks() const {
    std::vector<int> rank(names_.size());
    int pos = 0;
    for (const auto& [name, idx] : index_) rank[static_cast<std::size_t>(idx)] = pos++;
    return rank;
  }

  bool shortlex_before(int u, int v) const { return shortlex_less(name(u), name(v)); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int, ShortlexLess> index_;
};

}  // namespace detail

// Simple undirected graph. No loops, no parallel edges. Immutable once built;
// the add_* phase is single-threaded, reads are safe to share.
class Graph {
 public:
  int add_vertex(std::string name) {
    int v = verts_.add_vertex(std::move(name));
    adj_.emplace_back();
    return v;
  }

  // Endpoints are created on first use.
  void add_edge(std::string_view u, std::string_view v) {
    int ui = ensure(u);
    int vi = ensure(v);
    add_edge(ui, vi);
  }

  void add_edge(int u, int v) {
    if (u == v) throw DomainError("loop at vertex '" + name(u) + "'");
    auto e = normalize(u, v);
    if (!edge_set_.insert(e).second)
      throw DomainError("duplicate edge {" + name(u) + "," + name(v) + "}");
    edges_.push_back(e);
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }

  int n() const { return verts_.n(); }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::string& name(int v) const { return verts_.name(v); }
  const std::vector<std::string>& vertex_names() const { return verts_.names(); }
  std::optional<int> index_of(std::string_view name) const { return verts_.index_of(name); }
  bool has_vertex(std::string_view name) const { return verts_.index_of(name).has_value(); }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(int u, int v) const { return edge_set_.count(normalize(u, v)) != 0; }

  std::vector<int> canonical_vertices() const { return verts_.canonical_vertices(); }
  std::vector<int> shortlex_ranks() const { return verts_.shortlex_ranks(); }

  // Edges as (lesser, greater) pairs, sorted shortlex. This is the edge order
  // every solver and serializer uses.
  std::vector<std::pair<int, int>> canonical_edges() const {
    auto rank = shortlex_ranks();
    std::vector<std::pair<int, int>> out = edges_;
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
      auto ka = std::pair(rank[static_cast<std::size_t>(a.first)], rank[static_cast<std::size_t>(a.second)]);
      auto kb = std::pair(rank[static_cast<std::size_t>(b.first)], rank[static_cast<std::size_t>(b.second)]);
      return ka < kb;
    });
    return out;
  }

  // Degree-1 vertices in canonical order.
  std::vector<int> leaves() const {
    std::vector<int> out;
    for (int v : canonical_vertices())
      if (degree(v) == 1) out.push_back(v);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.name_multiset() == b.name_multiset() && a.edge_names() == b.edge_names();
  }
  friend bool operator!=(const Graph& a, const Graph& b) { return !(a == b); }

 private:
  int ensure(std::string_view u) {
    int before = verts_.n();
    int v = verts_.ensure_vertex(u);
    if (verts_.n() != before) adj_.emplace_back();
    return v;
  }

  std::pair<int, int> normalize(int u, int v) const {
    return verts_.shortlex_before(u, v) ? std::pair(u, v) : std::pair(v, u);
  }

  std::set<std::string, ShortlexLess> name_multiset() const {
    return {verts_.names().begin(), verts_.names().end()};
  }

  std::set<std::pair<std::string, std::string>> edge_names() const {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [u, v] : edges_) out.emplace(name(u), name(v));
    return out;
  }

  detail::VertexSet verts_;
  std::vector<std::pair<int, int>> edges_;  // normalized, insertion order
  std::set<std::pair<int, int>> edge_set_;
  std::vector<std::vector<int>> adj_;
};

// Simple digraph: no loops, no parallel arcs. Antiparallel arc pairs are
// allowed (the bisimulation side needs them); orientation solvers never
// produce them.
class Digraph {
 public:
  int add_vertex(std::string name) {
    int v = verts_.add_vertex(std::move(name));
    out_.emplace_back();
    in_.emplace_back();
    return v;
  }

  void add_arc(std::string_view u, std::string_view v) {
    int ui = ensure(u);
    int vi = ensure(v);
    add_arc(ui, vi);
  }

  void add_arc(int u, int v) {
    if (u == v) throw DomainError("loop at vertex '" + name(u) + "'");
    if (!arc_set_.insert({u, v}).second)
      throw DomainError("duplicate arc " + name(u) + "->" + name(v));
    arcs_.push_back({u, v});
    out_[static_cast<std::size_t>(u)].push_back(v);
    in_[static_cast<std::size_t>(v)].push_back(u);
  }

  int n() const { return verts_.n(); }
  int m() const { return static_cast<int>(arcs_.size()); }
  const std::string& name(int v) const { return verts_.name(v); }
  const std::vector<std::string>& vertex_names() const { return verts_.names(); }
  std::optional<int> index_of(std::string_view name) const { return verts_.index_of(name); }
  bool has_vertex(std::string_view name) const { return verts_.index_of(name).has_value(); }
  const std::vector<int>& out(int v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& in(int v) const { return in_[static_cast<std::size_t>(v)]; }
  int out_degree(int v) const { return static_cast<int>(out(v).size()); }
  int in_degree(int v) const { return static_cast<int>(in(v).size()); }
  bool has_arc(int u, int v) const { return arc_set_.count({u, v}) != 0; }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }

  std::vector<int> canonical_vertices() const { return verts_.canonical_vertices(); }
  std::vector<int> shortlex_ranks() const { return verts_.shortlex_ranks(); }

  std::vector<std::pair<int, int>> canonical_arcs() const {
    auto rank = shortlex_ranks();
    std::vector<std::pair<int, int>> out = arcs_;
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
      auto ka = std::pair(rank[static_cast<std::size_t>(a.first)], rank[static_cast<std::size_t>(a.second)]);
      auto kb = std::pair(rank[static_cast<std::size_t>(b.first)], rank[static_cast<std::size_t>(b.second)]);
      return ka < kb;
    });
    return out;
  }

  bool shortlex_before(int u, int v) const { return verts_.shortlex_before(u, v); }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.name_set() == b.name_set() && a.arc_names() == b.arc_names();
  }
  friend bool operator!=(const Digraph& a, const Digraph& b) { return !(a == b); }

 private:
  int ensure(std::string_view u) {
    int before = verts_.n();
    int v = verts_.ensure_vertex(u);
    if (verts_.n() != before) {
      out_.emplace_back();
      in_.emplace_back();
    }
    return v;
  }

  std::set<std::string, ShortlexLess> name_set() const {
    return {verts_.names().begin(), verts_.names().end()};
  }

  std::set<std::pair<std::string, std::string>> arc_names() const {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [u, v] : arcs_) out.emplace(name(u), name(v));
    return out;
  }

  detail::VertexSet verts_;
  std::vector<std::pair<int, int>> arcs_;
  std::set<std::pair<int, int>> arc_set_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// Forgets arc directions. Rejects antiparallel pairs, which would need a
// parallel edge.
inline Graph underlying_graph(const Digraph& d) {
  Graph g;
  for (const auto& name : d.vertex_names()) g.add_vertex(name);
  for (const auto& [u, v] : d.arcs()) {
    if (d.has_arc(v, u))
      throw DomainError("antiparallel arcs between '" + d.name(u) + "' and '" + d.name(v) + "'");
    g.add_edge(u, v);
  }
  return g;
}

namespace detail {

// Empty string when (a_side, b_side) is a valid bipartition of g; otherwise
// the reason it is not.
inline std::string bipartition_error(const Graph& g, const std::vector<std::string>& a_side,
                                     const std::vector<std::string>& b_side) {
  std::set<std::string> a(a_side.begin(), a_side.end());
  std::set<std::string> b(b_side.begin(), b_side.end());
  for (const auto& name : a)
    if (b.count(name)) return "vertex '" + name + "' appears in both parts";
  if (a.size() + b.size() != static_cast<std::size_t>(g.n()))
    return "parts do not cover the vertex set exactly";
  for (const auto& name : a)
    if (!g.has_vertex(name)) return "unknown vertex '" + name + "' in part A";
  for (const auto& name : b)
    if (!g.has_vertex(name)) return "unknown vertex '" + name + "' in part B";
  for (const auto& [u, v] : g.canonical_edges()) {
    bool ua = a.count(g.name(u)) > 0;
    bool va = a.count(g.name(v)) > 0;
    if (ua == va)
      return "edge {" + g.name(u) + "," + g.name(v) + "} does not cross the bipartition";
  }
  return {};
}

}  // namespace detail

// A direction assignment over the canonical edge list of a base graph.
// Possibly partial while a search is in flight. Bit convention: 0 points the
// arc at the lesser endpoint, 1 at the greater.
class Orientation {
 public:
  static constexpr signed char kUnset = -1;

  explicit Orientation(Graph base)
      : base_(std::move(base)), edges_(base_.canonical_edges()), dir_(edges_.size(), kUnset) {}

  const Graph& base() const { return base_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  signed char direction(std::size_t edge_idx) const { return dir_[edge_idx]; }

  void set(std::size_t edge_idx, bool head_is_greater) {
    dir_[edge_idx] = head_is_greater ? 1 : 0;
  }
  void unset(std::size_t edge_idx) { dir_[edge_idx] = kUnset; }

  // Orients the edge {u,v} with head v.
  void orient_toward(std::string_view u, std::string_view v) {
    auto ui = base_.index_of(u);
    auto vi = base_.index_of(v);
    if (!ui || !vi) throw DomainError("unknown vertex in orient_toward");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto [a, b] = edges_[i];
      if ((a == *ui && b == *vi) || (a == *vi && b == *ui)) {
        dir_[i] = (b == *vi) ? 1 : 0;
        return;
      }
    }
    throw DomainError("no edge {" + std::string(u) + "," + std::string(v) + "} in base graph");
  }

  bool total() const {
    return std::none_of(dir_.begin(), dir_.end(), [](signed char d) { return d == kUnset; });
  }

  Digraph apply() const {
    if (!total()) throw DomainError("orientation is partial");
    Digraph d;
    for (const auto& name : base_.vertex_names()) d.add_vertex(name);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto [lesser, greater] = edges_[i];
      if (dir_[i] == 0)
        d.add_arc(greater, lesser);
      else
        d.add_arc(lesser, greater);
    }
    return d;
  }

 private:
  Graph base_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<signed char> dir_;
};

}  // namespace extord
