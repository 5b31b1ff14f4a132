#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "extord/graph.hpp"

// Polynomial-time predicates on digraphs: acyclicity with ranks, out-set
// extensionality, slimness, reversal robustness, sink structure.

namespace extord {

namespace detail {

// Sink-peeling acyclicity test; no witnesses, no ordering costs.
inline bool acyclic_quick(const Digraph& d) {
  int n = d.n();
  std::vector<int> pending(static_cast<std::size_t>(n));
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    pending[static_cast<std::size_t>(v)] = d.out_degree(v);
    if (pending[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
  }
  int removed = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++removed;
    for (int u : d.in(v))
      if (--pending[static_cast<std::size_t>(u)] == 0) stack.push_back(u);
  }
  return removed == n;
}

// Sorted out-neighbor lists, the grouping key for extensionality.
inline std::vector<std::vector<int>> out_set_keys(const Digraph& d) {
  std::vector<std::vector<int>> keys(static_cast<std::size_t>(d.n()));
  for (int v = 0; v < d.n(); ++v) {
    keys[static_cast<std::size_t>(v)] = d.out(v);
    std::sort(keys[static_cast<std::size_t>(v)].begin(), keys[static_cast<std::size_t>(v)].end());
  }
  return keys;
}

inline bool extensional_quick(const Digraph& d) {
  auto keys = out_set_keys(d);
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

}  // namespace detail

// Distinct vertices with equal out-neighbor sets.
struct CollisionWitness {
  int u;
  int v;
};

struct AcyclicityCheck {
  bool acyclic = false;
  std::vector<int> rank;   // per vertex; longest directed path to a sink (acyclic only)
  std::vector<int> cycle;  // directed cycle as a vertex sequence (cyclic only)
  explicit operator bool() const { return acyclic; }
};

// DFS in canonical vertex order; the reported cycle is the first one closed
// under that order, so output is reproducible.
inline AcyclicityCheck is_acyclic(const Digraph& d) {
  int n = d.n();
  auto rank_of = d.shortlex_ranks();
  auto canon = d.canonical_vertices();
  auto sorted_out = [&](int v) {
    std::vector<int> out = d.out(v);
    std::sort(out.begin(), out.end(), [&](int a, int b) {
      return rank_of[static_cast<std::size_t>(a)] < rank_of[static_cast<std::size_t>(b)];
    });
    return out;
  };

  std::vector<int> color(static_cast<std::size_t>(n), 0);  // 0 new, 1 on path, 2 done
  std::vector<int> path;
  AcyclicityCheck result;

  // frame: vertex + its remaining out list
  struct Frame {
    int v;
    std::vector<int> out;
    std::size_t next = 0;
  };
  for (int start : canon) {
    if (color[static_cast<std::size_t>(start)] != 0) continue;
    std::vector<Frame> stack;
    stack.push_back({start, sorted_out(start)});
    color[static_cast<std::size_t>(start)] = 1;
    path.push_back(start);
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < f.out.size()) {
        int w = f.out[f.next++];
        if (color[static_cast<std::size_t>(w)] == 1) {
          auto it = std::find(path.begin(), path.end(), w);
          result.cycle.assign(it, path.end());
          return result;
        }
        if (color[static_cast<std::size_t>(w)] == 0) {
          color[static_cast<std::size_t>(w)] = 1;
          path.push_back(w);
          stack.push_back({w, sorted_out(w)});
        }
      } else {
        color[static_cast<std::size_t>(f.v)] = 2;
        path.pop_back();
        stack.pop_back();
      }
    }
  }

  result.acyclic = true;
  result.rank.assign(static_cast<std::size_t>(n), 0);
  // sink-peeling order: a vertex is peeled after all its out-neighbors
  std::vector<int> pending(static_cast<std::size_t>(n));
  std::vector<int> ready;
  for (int v = 0; v < n; ++v) {
    pending[static_cast<std::size_t>(v)] = d.out_degree(v);
    if (pending[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    for (int w : d.out(v))
      result.rank[static_cast<std::size_t>(v)] =
          std::max(result.rank[static_cast<std::size_t>(v)], result.rank[static_cast<std::size_t>(w)] + 1);
    for (int u : d.in(v))
      if (--pending[static_cast<std::size_t>(u)] == 0) ready.push_back(u);
  }
  return result;
}

struct ExtensionalityCheck {
  bool extensional = false;
  std::optional<CollisionWitness> collision;  // least pair under vertex ordering
  explicit operator bool() const { return extensional; }
};

inline ExtensionalityCheck is_extensional(const Digraph& d) {
  auto keys = detail::out_set_keys(d);
  auto rank_of = d.shortlex_ranks();

  std::vector<int> order(static_cast<std::size_t>(d.n()));
  for (int v = 0; v < d.n(); ++v) order[static_cast<std::size_t>(v)] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });

  ExtensionalityCheck result;
  std::optional<std::pair<int, int>> best;  // (rank(u), rank(v)) of the best witness
  auto canon = d.canonical_vertices();
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() &&
           keys[static_cast<std::size_t>(order[j])] == keys[static_cast<std::size_t>(order[i])])
      ++j;
    if (j - i >= 2) {
      // two shortlex-least members of the colliding group
      int r1 = d.n(), r2 = d.n();
      for (std::size_t k = i; k < j; ++k) {
        int r = rank_of[static_cast<std::size_t>(order[k])];
        if (r < r1) {
          r2 = r1;
          r1 = r;
        } else if (r < r2) {
          r2 = r;
        }
      }
      std::pair<int, int> cand{r1, r2};
      if (!best || cand < *best) best = cand;
    }
    i = j;
  }
  if (best) {
    result.collision = CollisionWitness{canon[static_cast<std::size_t>(best->first)],
                                        canon[static_cast<std::size_t>(best->second)]};
    return result;
  }
  result.extensional = true;
  return result;
}

namespace detail {

inline void require_ea(const Digraph& d, const char* op) {
  if (!acyclic_quick(d)) throw DomainError(std::string(op) + ": input digraph is not acyclic");
  if (!extensional_quick(d)) throw DomainError(std::string(op) + ": input digraph is not extensional");
}

inline Digraph rebuild_without_arc(const Digraph& d, std::size_t skip) {
  Digraph out;
  for (const auto& name : d.vertex_names()) out.add_vertex(name);
  const auto arcs = d.canonical_arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (i != skip) out.add_arc(arcs[i].first, arcs[i].second);
  return out;
}

}  // namespace detail

struct SlimnessCheck {
  bool slim = false;
  std::optional<std::pair<int, int>> removable_arc;  // first arc whose removal stays extensional
  explicit operator bool() const { return slim; }
};

// Literal re-check: drop each arc and test extensionality of the remainder.
inline SlimnessCheck is_slim(const Digraph& d) {
  detail::require_ea(d, "is_slim");
  const auto arcs = d.canonical_arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (detail::extensional_quick(detail::rebuild_without_arc(d, i)))
      return {false, arcs[i]};
  }
  return {true, std::nullopt};
}

// True iff reversing any single arc yields a cycle or a collision.
inline bool is_reversal_robust(const Digraph& d) {
  detail::require_ea(d, "is_reversal_robust");
  const auto arcs = d.canonical_arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    Digraph flipped = detail::rebuild_without_arc(d, i);
    flipped.add_arc(arcs[i].second, arcs[i].first);
    if (detail::acyclic_quick(flipped) && detail::extensional_quick(flipped)) return false;
  }
  return true;
}

inline std::vector<int> sinks(const Digraph& d) {
  std::vector<int> out;
  for (int v : d.canonical_vertices())
    if (d.out_degree(v) == 0) out.push_back(v);
  return out;
}

inline std::vector<int> sources(const Digraph& d) {
  std::vector<int> out;
  for (int v : d.canonical_vertices())
    if (d.in_degree(v) == 0) out.push_back(v);
  return out;
}

// Every vertex has a directed path to some sink.
inline bool all_reach_sink(const Digraph& d) {
  std::vector<char> seen(static_cast<std::size_t>(d.n()), 0);
  std::vector<int> stack;
  for (int v = 0; v < d.n(); ++v)
    if (d.out_degree(v) == 0) {
      seen[static_cast<std::size_t>(v)] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : d.in(v))
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        stack.push_back(u);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace extord
