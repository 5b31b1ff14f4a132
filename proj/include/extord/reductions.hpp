#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "extord/bisimulation.hpp"
#include "extord/checkers.hpp"
#include "extord/graph.hpp"
#include "extord/hamiltonian.hpp"

// Constructive transformations: the two-leaf extension G+, the subdivision
// graph S(G), the slim e.a.o. built from a Hamiltonian path, U-composition,
// the eight-vertex sink-forcing gadget with its exhaustive verifier, the
// hyper-extensional-orientation instance, and the DC -> ooSC digraph.
//
// Generated vertices use reserved names (s_*/t_*, x_*, a_*, c_*); input
// vertices that would clash are renamed with an "e_" escape prefix and the
// renaming is reported through the optional NameMap argument.

namespace extord {

using NameMap = std::map<std::string, std::string>;

namespace detail {

inline std::string escape_name(std::set<std::string>& taken, const std::string& name) {
  std::string candidate = "e_" + name;
  while (taken.count(candidate)) candidate = "e_" + candidate;
  taken.insert(candidate);
  return candidate;
}

// Renames the listed vertices of g away from the reserved names.
inline Graph escape_clashes(const Graph& g, const std::set<std::string>& reserved, NameMap* renames) {
  std::set<std::string> taken(g.vertex_names().begin(), g.vertex_names().end());
  taken.insert(reserved.begin(), reserved.end());
  std::map<std::string, std::string> rename;
  for (const auto& name : g.vertex_names())
    if (reserved.count(name)) rename[name] = escape_name(taken, name);
  if (rename.empty()) return g;
  Graph out;
  for (const auto& name : g.vertex_names()) {
    auto it = rename.find(name);
    out.add_vertex(it == rename.end() ? name : it->second);
  }
  for (const auto& [u, v] : g.canonical_edges()) out.add_edge(u, v);
  if (renames) renames->insert(rename.begin(), rename.end());
  return out;
}

}  // namespace detail

// G+ = G plus fresh s_1-s_2, t_1-t_2 where s_2 and t_2 see all of V(G).
// G+ has exactly two leaves, and Hamiltonian paths of G+ correspond to those
// of G (two per path of G, for |V(G)| >= 2).
inline Graph hp_prime_extend(const Graph& g, NameMap* renames = nullptr) {
  if (g.n() == 0) throw DomainError("hp_prime_extend: input graph has no vertices");
  const std::set<std::string> reserved{"s_1", "s_2", "t_1", "t_2"};
  Graph base = detail::escape_clashes(g, reserved, renames);
  Graph out;
  for (const auto& name : base.vertex_names()) out.add_vertex(name);
  for (const auto& name : reserved) out.add_vertex(name);
  for (const auto& [u, v] : base.canonical_edges()) out.add_edge(u, v);
  out.add_edge("s_1", "s_2");
  out.add_edge("t_1", "t_2");
  for (const auto& name : base.vertex_names()) {
    out.add_edge("s_2", name);
    out.add_edge("t_2", name);
  }
  return out;
}

struct Subdivision {
  Graph graph;
  // (lesser, greater) original edge -> its edge-vertex name
  std::map<std::pair<std::string, std::string>, std::string> edge_vertex;
  NameMap renames;
};

// S(G): every edge once subdivided through a fresh x_<u>_<v> vertex.
inline Subdivision subdivide_with_names(const Graph& g) {
  Subdivision result;
  // originals starting with the x_ prefix are renamed on import
  std::set<std::string> x_like;
  for (const auto& name : g.vertex_names())
    if (name.rfind("x_", 0) == 0) x_like.insert(name);
  Graph base = detail::escape_clashes(g, x_like, &result.renames);

  auto renamed = [&](const std::string& old) {
    auto it = result.renames.find(old);
    return it == result.renames.end() ? old : it->second;
  };

  const auto edges = g.canonical_edges();
  std::vector<std::string> x_names(edges.size());
  std::map<std::string, std::vector<std::size_t>> by_name;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    x_names[i] = "x_" + renamed(g.name(u)) + "_" + renamed(g.name(v));
    by_name[x_names[i]].push_back(i);
  }
  // names built from underscore-bearing vertex names can coincide; keep the
  // map injective by suffixing the canonical edge index
  for (const auto& [name, idxs] : by_name)
    if (idxs.size() > 1)
      for (std::size_t i : idxs) x_names[i] += "_" + std::to_string(i);

  Graph s;
  for (const auto& name : base.vertex_names()) s.add_vertex(name);
  for (const auto& x : x_names) s.add_vertex(x);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    s.add_edge(renamed(g.name(u)), x_names[i]);
    s.add_edge(renamed(g.name(v)), x_names[i]);
    result.edge_vertex[{g.name(u), g.name(v)}] = x_names[i];
  }
  result.graph = std::move(s);
  return result;
}

inline Graph subdivision(const Graph& g, NameMap* renames = nullptr) {
  Subdivision s = subdivide_with_names(g);
  if (renames) renames->insert(s.renames.begin(), s.renames.end());
  return std::move(s.graph);
}

// The slim e.a.o. of S(g) induced by a Hamiltonian path of a two-leaf graph:
// order the path as v_1 < x^{v_1 v_2} < v_2 < ... < v_n, untouched edge
// vertices last, and point every edge of S(g) at its smaller endpoint.
inline Digraph lemma2_orientation(const Graph& g, const HamPath& path, NameMap* renames = nullptr) {
  if (g.leaves().size() != 2)
    throw DomainError("lemma2_orientation: graph must have exactly two leaves");
  if (!is_hamiltonian_path(g, path.vertices))
    throw DomainError("lemma2_orientation: not a Hamiltonian path of the graph");
  if (g.degree(path.vertices.front()) != 1 || g.degree(path.vertices.back()) != 1)
    throw DomainError("lemma2_orientation: path endpoints must be the leaves");

  Subdivision s = subdivide_with_names(g);
  if (renames) renames->insert(s.renames.begin(), s.renames.end());
  auto renamed = [&](const std::string& old) {
    auto it = s.renames.find(old);
    return it == s.renames.end() ? old : it->second;
  };
  auto x_of = [&](int u, int v) {
    auto key = shortlex_less(g.name(u), g.name(v)) ? std::pair(g.name(u), g.name(v))
                                                   : std::pair(g.name(v), g.name(u));
    return s.edge_vertex.at(key);
  };

  // total order: path vertices interleaved with touched edge vertices,
  // untouched edge vertices after everything else
  std::map<std::string, int> position;
  int next = 0;
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    position[renamed(g.name(path.vertices[i]))] = next++;
    if (i + 1 < path.vertices.size()) position[x_of(path.vertices[i], path.vertices[i + 1])] = next++;
  }
  for (int v : s.graph.canonical_vertices()) {
    const std::string& name = s.graph.name(v);
    if (!position.count(name)) position[name] = next++;
  }

  Digraph d;
  for (const auto& name : s.graph.vertex_names()) d.add_vertex(name);
  for (const auto& [u, v] : s.graph.canonical_edges()) {
    if (position.at(s.graph.name(u)) > position.at(s.graph.name(v)))
      d.add_arc(u, v);
    else
      d.add_arc(v, u);
  }
  return d;
}

// U(D_1, v_1, v_2, D_2): disjoint union plus the bridge arc v_1 -> v_2.
// Vertices of d2 clashing with d1 are renamed.
inline Digraph compose(const Digraph& d1, std::string_view v1, std::string_view v2,
                       const Digraph& d2, NameMap* renames = nullptr) {
  if (!d1.has_vertex(v1)) throw DomainError("compose: '" + std::string(v1) + "' not in first digraph");
  if (!d2.has_vertex(v2)) throw DomainError("compose: '" + std::string(v2) + "' not in second digraph");
  std::set<std::string> taken(d1.vertex_names().begin(), d1.vertex_names().end());
  NameMap rename;
  Digraph out;
  for (const auto& name : d1.vertex_names()) out.add_vertex(name);
  for (const auto& name : d2.vertex_names()) {
    if (taken.count(name)) {
      rename[name] = detail::escape_name(taken, name);
      out.add_vertex(rename[name]);
    } else {
      taken.insert(name);
      out.add_vertex(name);
    }
  }
  auto renamed2 = [&](const std::string& old) {
    auto it = rename.find(old);
    return it == rename.end() ? old : it->second;
  };
  for (const auto& [u, v] : d1.arcs()) out.add_arc(d1.name(u), d1.name(v));
  for (const auto& [u, v] : d2.arcs()) out.add_arc(renamed2(d2.name(u)), renamed2(d2.name(v)));
  out.add_arc(std::string(v1), renamed2(std::string(v2)));
  if (renames) renames->insert(rename.begin(), rename.end());
  return out;
}

// Graph analogue of U: disjoint union plus the bridge edge {v_1, v_2}.
inline Graph compose(const Graph& g1, std::string_view v1, std::string_view v2, const Graph& g2,
                     NameMap* renames = nullptr) {
  if (!g1.has_vertex(v1)) throw DomainError("compose: '" + std::string(v1) + "' not in first graph");
  if (!g2.has_vertex(v2)) throw DomainError("compose: '" + std::string(v2) + "' not in second graph");
  std::set<std::string> taken(g1.vertex_names().begin(), g1.vertex_names().end());
  NameMap rename;
  Graph out;
  for (const auto& name : g1.vertex_names()) out.add_vertex(name);
  for (const auto& name : g2.vertex_names()) {
    if (taken.count(name)) {
      rename[name] = detail::escape_name(taken, name);
      out.add_vertex(rename[name]);
    } else {
      taken.insert(name);
      out.add_vertex(name);
    }
  }
  auto renamed2 = [&](const std::string& old) {
    auto it = rename.find(old);
    return it == rename.end() ? old : it->second;
  };
  for (const auto& [u, v] : g1.canonical_edges()) out.add_edge(g1.name(u), g1.name(v));
  for (const auto& [u, v] : g2.canonical_edges()) out.add_edge(renamed2(g2.name(u)), renamed2(g2.name(v)));
  out.add_edge(std::string(v1), renamed2(std::string(v2)));
  if (renames) renames->insert(rename.begin(), rename.end());
  return out;
}

// The eight-vertex gadget. G_8 hangs the degree-1 vertices a_1 and a_2 off
// a_3, chains a_3-a_4-a_5-a_6-a_7-a_8 and closes the chord a_4-a_7. D_8 sinks
// at a_1; the companion orientation reverses the arcs on a_2 a_3 and a_3 a_1
// and sinks at a_2. gadget_verify() checks below that these are the only
// orientations of G_8 that are extensional with a sink that all vertices
// reach.
struct Gadget {
  Graph g8;
  Digraph d8;
  Digraph d8_companion;  // D'_8
};

inline const Gadget& gadget() {
  static const Gadget instance = [] {
    Gadget gd;
    for (int i = 1; i <= 8; ++i) gd.g8.add_vertex("a_" + std::to_string(i));
    for (auto [u, v] : {std::pair{1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {4, 7}})
      gd.g8.add_edge("a_" + std::to_string(u), "a_" + std::to_string(v));
    for (int i = 1; i <= 8; ++i) {
      gd.d8.add_vertex("a_" + std::to_string(i));
      gd.d8_companion.add_vertex("a_" + std::to_string(i));
    }
    for (auto [u, v] : {std::pair{3, 1}, {2, 3}, {4, 3}, {4, 7}, {5, 4}, {6, 5}, {7, 6}, {8, 7}})
      gd.d8.add_arc("a_" + std::to_string(u), "a_" + std::to_string(v));
    for (auto [u, v] : {std::pair{1, 3}, {3, 2}, {4, 3}, {4, 7}, {5, 4}, {6, 5}, {7, 6}, {8, 7}})
      gd.d8_companion.add_arc("a_" + std::to_string(u), "a_" + std::to_string(v));
    return gd;
  }();
  return instance;
}

// All orientations of G_8 that are extensional, have a sink, and let every
// vertex reach a sink. Throws DefectError unless the result is exactly
// {D_8, D'_8}; this guards the reconstruction of the gadget.
inline std::vector<Digraph> gadget_verify() {
  const Gadget& gd = gadget();
  const auto edges = gd.g8.canonical_edges();
  std::vector<Digraph> found;
  for (std::uint64_t bits = 0; bits < (1u << edges.size()); ++bits) {
    Digraph d;
    for (const auto& name : gd.g8.vertex_names()) d.add_vertex(name);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto [lesser, greater] = edges[i];
      if (bits >> i & 1)
        d.add_arc(lesser, greater);
      else
        d.add_arc(greater, lesser);
    }
    if (!is_extensional(d).extensional) continue;
    if (sinks(d).empty()) continue;
    if (!all_reach_sink(d)) continue;
    found.push_back(std::move(d));
  }
  bool ok = found.size() == 2 &&
            ((found[0] == gd.d8 && found[1] == gd.d8_companion) ||
             (found[0] == gd.d8_companion && found[1] == gd.d8));
  if (!ok)
    throw DefectError("gadget_verify: orientations of G_8 do not match {D_8, D'_8}; "
                      "the gadget reconstruction is wrong");
  return found;
}

// U(S(g), s, a_8, G_8) for a two-leaf graph g, s its canonical first leaf.
// Bipartite with exactly three leaves.
inline Graph heo_instance(const Graph& g, NameMap* renames = nullptr) {
  if (g.leaves().size() != 2)
    throw DomainError("heo_instance: graph must have exactly two leaves");
  std::set<std::string> gadget_names;
  for (int i = 1; i <= 8; ++i) gadget_names.insert("a_" + std::to_string(i));
  NameMap gadget_renames;
  Graph base = detail::escape_clashes(g, gadget_names, &gadget_renames);

  NameMap sub_renames;
  Graph s = subdivision(base, &sub_renames);

  if (renames) {
    for (const auto& name : g.vertex_names()) {
      std::string cur = name;
      if (auto it = gadget_renames.find(cur); it != gadget_renames.end()) cur = it->second;
      if (auto it = sub_renames.find(cur); it != sub_renames.end()) cur = it->second;
      if (cur != name) (*renames)[name] = cur;
    }
  }

  // s = canonical first leaf of the input, tracked through any renaming
  std::string leaf_name = g.name(g.leaves().front());
  if (auto it = gadget_renames.find(leaf_name); it != gadget_renames.end()) leaf_name = it->second;
  if (auto it = sub_renames.find(leaf_name); it != sub_renames.end()) leaf_name = it->second;
  return compose(s, leaf_name, "a_8", gadget().g8);
}

// Theorem-5 digraph: A keeps its edges into B as arcs, b_i feeds c_i, and the
// tail chain c_i -> c_j (j < i) pins every c to a distinct out-set size.
inline Digraph dc_to_oosc(const Graph& g, const std::vector<std::string>& a_side,
                          const std::vector<std::string>& b_side, NameMap* renames = nullptr) {
  if (auto err = detail::bipartition_error(g, a_side, b_side); !err.empty())
    throw DomainError("dc_to_oosc: " + err);

  std::set<std::string> a_set(a_side.begin(), a_side.end());
  std::set<std::string, ShortlexLess> b_sorted(b_side.begin(), b_side.end());
  const std::size_t m = b_sorted.size();

  // preconditions from the reduction: no isolated and no twin A-vertices
  std::map<std::vector<std::string>, std::string> seen_neighborhoods;
  for (const auto& name : a_set) {
    int v = *g.index_of(name);
    if (g.degree(v) == 0) throw DomainError("dc_to_oosc: isolated A-vertex '" + name + "'");
    std::vector<std::string> nbr;
    for (int w : g.neighbors(v)) nbr.push_back(g.name(w));
    std::sort(nbr.begin(), nbr.end());
    auto [it, fresh] = seen_neighborhoods.emplace(std::move(nbr), name);
    if (!fresh)
      throw DomainError("dc_to_oosc: twin A-vertices '" + it->second + "' and '" + name + "'");
  }

  std::set<std::string> c_names;
  for (std::size_t i = 0; i <= m; ++i) c_names.insert("c_" + std::to_string(i));
  NameMap rename;
  Graph base = detail::escape_clashes(g, c_names, &rename);
  if (renames) renames->insert(rename.begin(), rename.end());
  auto renamed = [&](const std::string& old) {
    auto it = rename.find(old);
    return it == rename.end() ? old : it->second;
  };

  std::set<std::string> a_renamed;
  for (const auto& name : a_set) a_renamed.insert(renamed(name));
  std::vector<std::string> b_renamed;  // c indices follow the canonical order of B
  for (const auto& name : b_sorted) b_renamed.push_back(renamed(name));

  Digraph d;
  for (const auto& name : base.vertex_names()) d.add_vertex(name);
  for (std::size_t i = 0; i <= m; ++i) d.add_vertex("c_" + std::to_string(i));
  for (const auto& [u, v] : base.canonical_edges()) {
    if (a_renamed.count(base.name(u)))
      d.add_arc(u, v);
    else
      d.add_arc(v, u);
  }
  for (std::size_t i = 0; i < b_renamed.size(); ++i)
    d.add_arc(b_renamed[i], "c_" + std::to_string(i + 1));
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 0; j < i; ++j)
      d.add_arc("c_" + std::to_string(i), "c_" + std::to_string(j));
  return d;
}

}  // namespace extord
