#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "extord/graph.hpp"

// Exact Hamiltonian path search and counting. Paths are undirected and
// counted up to reversal; a returned path is stored with its shortlex-lesser
// endpoint first. Counting runs the subset DP always and, up to 9 vertices,
// an independent permutation enumeration that must agree with it.

namespace extord {

struct HamPath {
  std::vector<int> vertices;

  std::vector<std::string> names(const Graph& g) const {
    std::vector<std::string> out;
    out.reserve(vertices.size());
    for (int v : vertices) out.push_back(g.name(v));
    return out;
  }
};

// Validity re-check, independent of the search and DP code paths.
inline bool is_hamiltonian_path(const Graph& g, const std::vector<int>& seq) {
  if (static_cast<int>(seq.size()) != g.n()) return false;
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  for (int v : seq) {
    if (v < 0 || v >= g.n() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (!g.has_edge(seq[i - 1], seq[i])) return false;
  return true;
}

namespace detail {

constexpr int kMaxHamiltonianVertices = 20;  // DP table is 2^n * n counters

inline std::vector<std::uint32_t> neighbor_masks(const Graph& g) {
  std::vector<std::uint32_t> nb(static_cast<std::size_t>(g.n()), 0);
  for (int v = 0; v < g.n(); ++v)
    for (int w : g.neighbors(v)) nb[static_cast<std::size_t>(v)] |= (1u << w);
  return nb;
}

inline std::uint64_t count_hp_subset_dp(const Graph& g) {
  int n = g.n();
  if (n == 0) return 0;
  if (n == 1) return 1;
  auto nb = neighbor_masks(g);
  std::vector<std::uint64_t> dp(static_cast<std::size_t>(n) << n, 0);
  auto at = [&](std::uint32_t mask, int last) -> std::uint64_t& {
    return dp[(static_cast<std::size_t>(mask) * static_cast<std::size_t>(n)) + static_cast<std::size_t>(last)];
  };
  for (int v = 0; v < n; ++v) at(1u << v, v) = 1;
  std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int last = 0; last < n; ++last) {
      if (!(mask & (1u << last))) continue;
      std::uint64_t ways = at(mask, last);
      if (ways == 0) continue;
      std::uint32_t nexts = nb[static_cast<std::size_t>(last)] & ~mask;
      while (nexts) {
        int w = std::countr_zero(nexts);
        nexts &= nexts - 1;
        at(mask | (1u << w), w) += ways;
      }
    }
  }
  std::uint64_t directed = 0;
  for (int v = 0; v < n; ++v) directed += at(full, v);
  return directed / 2;  // no path on >=2 vertices equals its own reversal
}

inline std::uint64_t count_hp_permutations(const Graph& g) {
  int n = g.n();
  if (n == 0) return 0;
  if (n == 1) return 1;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t directed = 0;
  do {
    bool ok = true;
    for (std::size_t i = 1; i < perm.size() && ok; ++i)
      if (!g.has_edge(perm[i - 1], perm[i])) ok = false;
    if (ok) ++directed;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return directed / 2;
}

}  // namespace detail

inline std::uint64_t count_hamiltonian_paths(const Graph& g) {
  if (g.n() > detail::kMaxHamiltonianVertices)
    throw CapacityError("count_hamiltonian_paths: more than " +
                        std::to_string(detail::kMaxHamiltonianVertices) + " vertices");
  std::uint64_t dp = detail::count_hp_subset_dp(g);
  if (g.n() <= 9) {
    std::uint64_t brute = detail::count_hp_permutations(g);
    if (brute != dp)
      throw DefectError("count_hamiltonian_paths: DP (" + std::to_string(dp) +
                        ") and permutation oracle (" + std::to_string(brute) + ") disagree");
  }
  return dp;
}

// First path found under canonical branching order: start vertices and
// neighbor extensions are tried shortlex-first.
inline std::optional<HamPath> find_hamiltonian_path(const Graph& g) {
  int n = g.n();
  if (n == 0) return std::nullopt;
  auto rank = g.shortlex_ranks();
  auto sorted_nbrs = [&](int v) {
    std::vector<int> out = g.neighbors(v);
    std::sort(out.begin(), out.end(), [&](int a, int b) {
      return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
    });
    return out;
  };

  std::vector<int> path;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto dfs = [&](auto&& self, int v) -> bool {
    path.push_back(v);
    used[static_cast<std::size_t>(v)] = 1;
    if (static_cast<int>(path.size()) == n) return true;
    for (int w : sorted_nbrs(v))
      if (!used[static_cast<std::size_t>(w)] && self(self, w)) return true;
    path.pop_back();
    used[static_cast<std::size_t>(v)] = 0;
    return false;
  };

  for (int start : g.canonical_vertices()) {
    if (dfs(dfs, start)) {
      if (rank[static_cast<std::size_t>(path.back())] < rank[static_cast<std::size_t>(path.front())])
        std::reverse(path.begin(), path.end());
      return HamPath{std::move(path)};
    }
  }
  return std::nullopt;
}

}  // namespace extord
