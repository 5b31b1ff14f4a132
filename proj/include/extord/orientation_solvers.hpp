#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "extord/bisimulation.hpp"
#include "extord/checkers.hpp"
#include "extord/graph.hpp"

// Exact decision, enumeration and counting of extensional acyclic (EAO), slim
// extensional acyclic (sEAO) and hyper-extensional (HEO) orientations.
//
// The search assigns directions to the canonical edge list in order, bit 0
// (arc toward the lesser endpoint) before bit 1, so enumeration follows the
// binary order of direction bit-vectors. Pruning uses necessary conditions
// only: directed cycles (EAO/sEAO), and equal out-sets between two vertices
// whose incident edges are all oriented (every variant; extensionality is
// necessary for hyper-extensionality too). Expensive predicates -- slimness,
// bisimulation -- run at complete leaves.

namespace extord {

enum class Variant { eao, seao, heo };

inline std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::eao: return "EAO";
    case Variant::seao: return "sEAO";
    case Variant::heo: return "HEO";
  }
  return "?";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
  if (s == "eao") return Variant::eao;
  if (s == "seao") return Variant::seao;
  if (s == "heo") return Variant::heo;
  return std::nullopt;
}

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t cycle_prunes = 0;
  std::uint64_t collision_prunes = 0;

  SearchStats& operator+=(const SearchStats& o) {
    nodes += o.nodes;
    cycle_prunes += o.cycle_prunes;
    collision_prunes += o.collision_prunes;
    return *this;
  }
};

namespace detail {

inline Digraph orient_by_bits(const Graph& g, const std::vector<std::pair<int, int>>& edges,
                              std::uint64_t bits) {
  Digraph d;
  for (const auto& name : g.vertex_names()) d.add_vertex(name);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [lesser, greater] = edges[i];
    if (bits >> i & 1)
      d.add_arc(lesser, greater);
    else
      d.add_arc(greater, lesser);
  }
  return d;
}

inline bool leaf_predicate(const Digraph& d, Variant v) {
  switch (v) {
    case Variant::eao:
      return acyclic_quick(d) && extensional_quick(d);
    case Variant::seao:
      return acyclic_quick(d) && extensional_quick(d) && is_slim(d).slim;
    case Variant::heo:
      return is_hyper_extensional(d);
  }
  return false;
}

class OrientationSearch {
 public:
  OrientationSearch(const Graph& g, Variant variant)
      : g_(g),
        variant_(variant),
        edges_(g.canonical_edges()),
        dir_(edges_.size(), -1),
        out_cur_(static_cast<std::size_t>(g.n())),
        remaining_(static_cast<std::size_t>(g.n()), 0),
        sat_at_(edges_.size()) {
    for (const auto& [u, v] : edges_) {
      ++remaining_[static_cast<std::size_t>(u)];
      ++remaining_[static_cast<std::size_t>(v)];
    }
    // zero-degree vertices are saturated from the start
    for (int v = 0; v < g.n(); ++v)
      if (remaining_[static_cast<std::size_t>(v)] == 0) {
        if (sat_keys_[{}]++ > 0) dead_ = true;  // two isolated vertices always collide
      }
  }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  SearchStats& stats() { return stats_; }

  // Depth-first over the remaining edges; leaf(bits) is called for every
  // complete assignment that survived pruning and must return false to stop.
  template <class F>
  bool run(F&& leaf, std::size_t from = 0) {
    if (dead_) return true;
    return dfs(from, leaf);
  }

  // Forces edge directions [0, prefix_len) to the low bits of prefix; returns
  // false when the prefix itself is pruned. Used to partition parallel work.
  bool push_prefix(std::uint64_t prefix, std::size_t prefix_len) {
    if (dead_) return false;
    for (std::size_t i = 0; i < prefix_len; ++i) {
      if (!try_assign(i, static_cast<int>(prefix >> i & 1))) {
        for (std::size_t j = i; j-- > 0;) unassign(j);
        return false;
      }
    }
    return true;
  }

  std::uint64_t bits() const {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < dir_.size(); ++i)
      if (dir_[i] == 1) b |= (std::uint64_t{1} << i);
    return b;
  }

 private:
  template <class F>
  bool dfs(std::size_t idx, F& leaf) {
    ++stats_.nodes;
    if (idx == edges_.size()) return leaf(bits());
    for (int bit : {0, 1}) {
      if (!try_assign(idx, bit)) continue;
      bool keep_going = dfs(idx + 1, leaf);
      unassign(idx);
      if (!keep_going) return false;
    }
    return true;
  }

  bool reachable(int from, int to) const {
    if (from == to) return true;
    std::vector<char> seen(static_cast<std::size_t>(g_.n()), 0);
    std::vector<int> stack{from};
    seen[static_cast<std::size_t>(from)] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : out_cur_[static_cast<std::size_t>(v)]) {
        if (w == to) return true;
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    return false;
  }

  bool try_assign(std::size_t idx, int bit) {
    auto [lesser, greater] = edges_[idx];
    int tail = bit ? lesser : greater;
    int head = bit ? greater : lesser;

    if (variant_ != Variant::heo && reachable(head, tail)) {
      ++stats_.cycle_prunes;
      return false;
    }

    dir_[idx] = static_cast<signed char>(bit);
    out_cur_[static_cast<std::size_t>(tail)].push_back(head);
    --remaining_[static_cast<std::size_t>(tail)];
    --remaining_[static_cast<std::size_t>(head)];

    for (int x : {tail, head}) {
      if (remaining_[static_cast<std::size_t>(x)] != 0) continue;
      std::vector<int> key = out_cur_[static_cast<std::size_t>(x)];
      std::sort(key.begin(), key.end());
      auto it = sat_keys_.find(key);
      if (it != sat_keys_.end() && it->second > 0) {
        ++stats_.collision_prunes;
        rollback(idx);
        return false;
      }
      ++sat_keys_[std::move(key)];
      sat_at_[idx].push_back(x);
    }
    return true;
  }

  void rollback(std::size_t idx) {
    auto [lesser, greater] = edges_[idx];
    int tail = dir_[idx] ? lesser : greater;
    int head = dir_[idx] ? greater : lesser;
    for (int x : sat_at_[idx]) {
      std::vector<int> key = out_cur_[static_cast<std::size_t>(x)];
      std::sort(key.begin(), key.end());
      auto it = sat_keys_.find(key);
      if (--it->second == 0) sat_keys_.erase(it);
    }
    sat_at_[idx].clear();
    ++remaining_[static_cast<std::size_t>(tail)];
    ++remaining_[static_cast<std::size_t>(head)];
    out_cur_[static_cast<std::size_t>(tail)].pop_back();
    dir_[idx] = -1;
  }

  void unassign(std::size_t idx) { rollback(idx); }

  const Graph& g_;
  Variant variant_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<signed char> dir_;
  std::vector<std::vector<int>> out_cur_;
  std::vector<int> remaining_;
  std::map<std::vector<int>, int> sat_keys_;  // out-set -> number of saturated holders
  std::vector<std::vector<int>> sat_at_;      // vertices saturated by each edge assignment
  SearchStats stats_;
  bool dead_ = false;
};

}  // namespace detail

struct SolveResult {
  std::optional<Digraph> digraph;
  SearchStats stats;
  explicit operator bool() const { return digraph.has_value(); }
};

// First satisfying orientation in canonical bit-vector order, re-verified with
// the standalone checkers before being returned.
inline SolveResult solve(const Graph& g, Variant variant) {
  detail::OrientationSearch search(g, variant);
  SolveResult result;
  search.run([&](std::uint64_t bits) {
    Digraph d = detail::orient_by_bits(g, search.edges(), bits);
    if (!detail::leaf_predicate(d, variant)) return true;
    if (underlying_graph(d) != g)
      throw DefectError("solve: orientation does not cover the base graph");
    result.digraph = std::move(d);
    return false;
  });
  result.stats = search.stats();
  return result;
}

// Calls f(digraph) for every satisfying total orientation, in canonical order.
template <class F>
void for_each_orientation(const Graph& g, Variant variant, F&& f, SearchStats* stats = nullptr) {
  detail::OrientationSearch search(g, variant);
  search.run([&](std::uint64_t bits) {
    const Digraph d = detail::orient_by_bits(g, search.edges(), bits);
    if (detail::leaf_predicate(d, variant)) f(d);
    return true;
  });
  if (stats) *stats = search.stats();
}

inline std::vector<Digraph> enumerate_orientations(const Graph& g, Variant variant) {
  std::vector<Digraph> out;
  for_each_orientation(g, variant, [&](const Digraph& d) { out.push_back(d); });
  return out;
}

// Exact count; arbitrary precision. jobs > 1 partitions the search on an
// assignment prefix; the result does not depend on the job count.
inline mpz_class count_orientations(const Graph& g, Variant variant, SearchStats* stats = nullptr,
                                    int jobs = 1) {
  const int m = g.m();
  if (jobs > 1 && m >= 4) {
    std::size_t prefix_len = 2;
    while (prefix_len < 12 && (std::size_t{1} << prefix_len) < 4 * static_cast<std::size_t>(jobs) &&
           prefix_len + 1 < static_cast<std::size_t>(m))
      ++prefix_len;
    std::vector<std::future<std::pair<mpz_class, SearchStats>>> tasks;
    for (std::uint64_t prefix = 0; prefix < (std::uint64_t{1} << prefix_len); ++prefix) {
      tasks.push_back(std::async(std::launch::async, [&g, variant, prefix, prefix_len]() {
        detail::OrientationSearch search(g, variant);
        mpz_class local = 0;
        if (search.push_prefix(prefix, prefix_len)) {
          search.run(
              [&](std::uint64_t bits) {
                if (detail::leaf_predicate(detail::orient_by_bits(g, search.edges(), bits), variant))
                  ++local;
                return true;
              },
              prefix_len);
        }
        return std::pair(local, search.stats());
      }));
    }
    mpz_class total = 0;
    SearchStats combined;
    for (auto& t : tasks) {
      auto [local, s] = t.get();
      total += local;
      combined += s;
    }
    if (stats) *stats = combined;
    return total;
  }

  detail::OrientationSearch search(g, variant);
  mpz_class total = 0;
  search.run([&](std::uint64_t bits) {
    if (detail::leaf_predicate(detail::orient_by_bits(g, search.edges(), bits), variant)) ++total;
    return true;
  });
  if (stats) *stats = search.stats();
  return total;
}

// Unpruned oracle: walks all 2^|E| orientations and applies the variant
// predicate through the checkers/bisimulation modules only.
inline mpz_class brute_force_count(const Graph& g, Variant variant, int max_edges = 24) {
  if (g.m() > max_edges)
    throw CapacityError("brute_force_count: " + std::to_string(g.m()) + " edges exceeds cap of " +
                        std::to_string(max_edges));
  const auto edges = g.canonical_edges();
  mpz_class total = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << g.m()); ++bits) {
    Digraph d = detail::orient_by_bits(g, edges, bits);
    bool ok = false;
    switch (variant) {
      case Variant::eao:
        ok = is_acyclic(d).acyclic && is_extensional(d).extensional;
        break;
      case Variant::seao:
        ok = is_acyclic(d).acyclic && is_extensional(d).extensional && is_slim(d).slim;
        break;
      case Variant::heo:
        ok = is_hyper_extensional(d);
        break;
    }
    if (ok) ++total;
  }
  return total;
}

}  // namespace extord
