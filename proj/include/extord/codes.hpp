#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "extord/checkers.hpp"
#include "extord/graph.hpp"

// Minimum open-out-separating codes and discriminating codes. Both reduce to
// minimum hitting set: an ooSC must hit every symmetric difference of two
// out-neighborhoods, a DC every A-neighborhood and every symmetric difference
// of two A-neighborhoods. The exact engine is branch-and-bound with a
// disjoint-constraint-packing lower bound; an independent oracle enumerates
// subsets by increasing cardinality. Witnesses are the lexicographically
// least optimum in canonical vertex order, so results are deterministic.

namespace extord {

// Sets (over a dense ground set 0..ground_size-1) that a code must intersect.
struct ConstraintFamily {
  std::vector<std::vector<int>> constraints;  // each sorted; empty family is fine
  int ground_size = 0;
  bool infeasible = false;  // a required set was empty
};

struct CodeResult {
  bool feasible = false;
  std::size_t size = 0;
  std::vector<std::string> witness;  // canonical order
};

namespace detail {

inline bool hits_all(const std::vector<std::vector<int>>& constraints, const std::vector<char>& in) {
  for (const auto& c : constraints) {
    bool hit = false;
    for (int e : c)
      if (in[static_cast<std::size_t>(e)]) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

// Greedy packing of pairwise element-disjoint unhit constraints; each needs
// its own element, so the packing size is a valid lower bound.
inline int packing_lower_bound(const std::vector<std::vector<int>>& constraints,
                               const std::vector<char>& unhit_mask, int ground_size) {
  std::vector<char> used(static_cast<std::size_t>(ground_size), 0);
  int packed = 0;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!unhit_mask[i]) continue;
    bool disjoint = true;
    for (int e : constraints[i])
      if (used[static_cast<std::size_t>(e)]) {
        disjoint = false;
        break;
      }
    if (!disjoint) continue;
    for (int e : constraints[i]) used[static_cast<std::size_t>(e)] = 1;
    ++packed;
  }
  return packed;
}

class HittingSetSolver {
 public:
  HittingSetSolver(const std::vector<std::vector<int>>& constraints, int ground_size)
      : constraints_(constraints),
        ground_(ground_size),
        chosen_(static_cast<std::size_t>(ground_size), 0),
        excluded_(static_cast<std::size_t>(ground_size), 0),
        hit_count_(constraints.size(), 0) {}

  // Phase 1: optimal size by branch and bound. Phase 2: lexicographically
  // least witness of that size.
  std::pair<std::size_t, std::vector<int>> solve() {
    best_ = greedy_upper_bound();
    branch(0);
    std::vector<int> witness;
    std::vector<char> in(static_cast<std::size_t>(ground_), 0);
    lex_least(0, 0, in, witness);
    return {best_, witness};
  }

 private:
  std::size_t greedy_upper_bound() {
    std::vector<char> hit(constraints_.size(), 0);
    std::size_t remaining = constraints_.size();
    std::size_t size = 0;
    while (remaining > 0) {
      int best_elem = -1;
      int best_gain = -1;
      for (int e = 0; e < ground_; ++e) {
        int gain = 0;
        for (std::size_t i = 0; i < constraints_.size(); ++i)
          if (!hit[i] && std::binary_search(constraints_[i].begin(), constraints_[i].end(), e)) ++gain;
        if (gain > best_gain) {
          best_gain = gain;
          best_elem = e;
        }
      }
      if (best_gain <= 0) break;  // unreachable for non-empty constraints
      ++size;
      for (std::size_t i = 0; i < constraints_.size(); ++i)
        if (!hit[i] && std::binary_search(constraints_[i].begin(), constraints_[i].end(), best_elem)) {
          hit[i] = 1;
          --remaining;
        }
    }
    return size;
  }

  void branch(std::size_t chosen_size) {
    std::vector<char> unhit_mask(constraints_.size(), 0);
    int pick = -1;
    bool any_unhit = false;
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      if (hit_count_[i] > 0) continue;
      unhit_mask[i] = 1;
      any_unhit = true;
      std::size_t free_elems = 0;
      for (int e : constraints_[i])
        if (!excluded_[static_cast<std::size_t>(e)]) ++free_elems;
      if (free_elems == 0) return;  // dead branch: constraint cannot be hit
      if (pick < 0 || constraints_[i].size() < constraints_[static_cast<std::size_t>(pick)].size() ||
          (constraints_[i].size() == constraints_[static_cast<std::size_t>(pick)].size() &&
           constraints_[i] < constraints_[static_cast<std::size_t>(pick)]))
        pick = static_cast<int>(i);
    }
    if (!any_unhit) {
      best_ = std::min(best_, chosen_size);
      return;
    }
    if (chosen_size + static_cast<std::size_t>(packing_lower_bound(constraints_, unhit_mask, ground_)) >= best_)
      return;

    // partition on the first chosen element of the picked constraint
    std::vector<int> tried;
    for (int e : constraints_[static_cast<std::size_t>(pick)]) {
      if (excluded_[static_cast<std::size_t>(e)]) continue;
      include(e);
      branch(chosen_size + 1);
      undo_include(e);
      excluded_[static_cast<std::size_t>(e)] = 1;
      tried.push_back(e);
    }
    for (int e : tried) excluded_[static_cast<std::size_t>(e)] = 0;
  }

  void include(int e) {
    chosen_[static_cast<std::size_t>(e)] = 1;
    for (std::size_t i = 0; i < constraints_.size(); ++i)
      if (std::binary_search(constraints_[i].begin(), constraints_[i].end(), e)) ++hit_count_[i];
  }

  void undo_include(int e) {
    chosen_[static_cast<std::size_t>(e)] = 0;
    for (std::size_t i = 0; i < constraints_.size(); ++i)
      if (std::binary_search(constraints_[i].begin(), constraints_[i].end(), e)) --hit_count_[i];
  }

  // First witness of size best_ in lexicographic order over sorted element
  // sets; elements considered in increasing canonical order.
  bool lex_least(int from, std::size_t taken, std::vector<char>& in, std::vector<int>& out) {
    std::vector<char> unhit_mask(constraints_.size(), 0);
    bool any_unhit = false;
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      bool hit = false;
      for (int e : constraints_[i])
        if (in[static_cast<std::size_t>(e)]) {
          hit = true;
          break;
        }
      if (!hit) {
        unhit_mask[i] = 1;
        any_unhit = true;
      }
    }
    if (!any_unhit && taken <= best_) {
      // pad with nothing: a hitting set of size <= best_ exists on this path;
      // report exactly the chosen elements
      out.clear();
      for (int e = 0; e < ground_; ++e)
        if (in[static_cast<std::size_t>(e)]) out.push_back(e);
      return true;
    }
    if (taken >= best_) return false;
    if (taken + static_cast<std::size_t>(packing_lower_bound(constraints_, unhit_mask, ground_)) > best_)
      return false;
    for (int e = from; e < ground_; ++e) {
      in[static_cast<std::size_t>(e)] = 1;
      if (lex_least(e + 1, taken + 1, in, out)) return true;
      in[static_cast<std::size_t>(e)] = 0;
    }
    return false;
  }

  const std::vector<std::vector<int>>& constraints_;
  int ground_;
  std::size_t best_ = 0;
  std::vector<char> chosen_;
  std::vector<char> excluded_;
  std::vector<int> hit_count_;
};

}  // namespace detail

// Exact minimum hitting set; witness is the lexicographically least optimum.
// Constraints must be non-empty.
inline std::pair<std::size_t, std::vector<int>> min_hitting_set(
    const std::vector<std::vector<int>>& constraints, int ground_size) {
  for (const auto& c : constraints)
    if (c.empty()) throw DomainError("min_hitting_set: empty constraint is unsatisfiable");
  if (constraints.empty()) return {0, {}};
  detail::HittingSetSolver solver(constraints, ground_size);
  return solver.solve();
}

// Independent oracle: subsets in increasing cardinality, lexicographic within
// a cardinality. Ground sets above the cap are refused.
inline std::pair<std::size_t, std::vector<int>> hitting_set_oracle(
    const std::vector<std::vector<int>>& constraints, int ground_size, int cap = 20) {
  if (ground_size > cap)
    throw CapacityError("hitting_set_oracle: ground set of " + std::to_string(ground_size) +
                        " exceeds cap of " + std::to_string(cap));
  for (const auto& c : constraints)
    if (c.empty()) throw DomainError("hitting_set_oracle: empty constraint is unsatisfiable");
  std::vector<char> in(static_cast<std::size_t>(ground_size), 0);
  std::vector<int> subset;
  auto choose = [&](auto&& self, int from, int remaining) -> bool {
    if (remaining == 0) return detail::hits_all(constraints, in);
    for (int e = from; e <= ground_size - remaining; ++e) {
      in[static_cast<std::size_t>(e)] = 1;
      subset.push_back(e);
      if (self(self, e + 1, remaining - 1)) return true;
      subset.pop_back();
      in[static_cast<std::size_t>(e)] = 0;
    }
    return false;
  };
  for (int size = 0; size <= ground_size; ++size)
    if (choose(choose, 0, size)) return {static_cast<std::size_t>(size), subset};
  throw DefectError("hitting_set_oracle: no hitting set found with non-empty constraints");
}

// { N+(u) symdiff N+(v) : u != v }; infeasible when two out-sets coincide.
inline ConstraintFamily oosc_constraints(const Digraph& d) {
  ConstraintFamily family;
  family.ground_size = d.n();
  auto rank = d.shortlex_ranks();
  auto canon = d.canonical_vertices();
  std::vector<std::vector<int>> outs(static_cast<std::size_t>(d.n()));
  for (int v = 0; v < d.n(); ++v) {
    for (int w : d.out(v)) outs[static_cast<std::size_t>(v)].push_back(rank[static_cast<std::size_t>(w)]);
    std::sort(outs[static_cast<std::size_t>(v)].begin(), outs[static_cast<std::size_t>(v)].end());
  }
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < canon.size(); ++i) {
    for (std::size_t j = i + 1; j < canon.size(); ++j) {
      const auto& a = outs[static_cast<std::size_t>(canon[i])];
      const auto& b = outs[static_cast<std::size_t>(canon[j])];
      std::vector<int> diff;
      std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
      if (diff.empty()) {
        family.infeasible = true;
        family.constraints.clear();
        return family;
      }
      if (seen.insert(diff).second) family.constraints.push_back(std::move(diff));
    }
  }
  return family;
}

// Are the traces N+(v) & C pairwise distinct?
inline bool is_oosc(const Digraph& d, const std::vector<std::string>& code) {
  std::set<int> c;
  for (const auto& name : code) {
    auto idx = d.index_of(name);
    if (!idx) throw DomainError("is_oosc: '" + name + "' is not a vertex of the digraph");
    c.insert(*idx);
  }
  std::set<std::vector<int>> traces;
  for (int v = 0; v < d.n(); ++v) {
    std::vector<int> trace;
    for (int w : d.out(v))
      if (c.count(w)) trace.push_back(w);
    std::sort(trace.begin(), trace.end());
    if (!traces.insert(std::move(trace)).second) return false;
  }
  return true;
}

inline CodeResult min_oosc(const Digraph& d) {
  ConstraintFamily family = oosc_constraints(d);
  if (family.infeasible) return {};
  auto [size, witness] = min_hitting_set(family.constraints, family.ground_size);
  CodeResult result;
  result.feasible = true;
  result.size = size;
  auto canon = d.canonical_vertices();
  for (int e : witness) result.witness.push_back(d.name(canon[static_cast<std::size_t>(e)]));
  return result;
}

// Per the bipartite definition: every A-vertex gets a non-empty trace
// N(v) & C, all traces pairwise distinct. C must live inside B.
inline bool is_discriminating_code(const Graph& g, const std::vector<std::string>& a_side,
                                   const std::vector<std::string>& b_side,
                                   const std::vector<std::string>& code) {
  if (auto err = detail::bipartition_error(g, a_side, b_side); !err.empty())
    throw DomainError("is_discriminating_code: " + err);
  std::set<std::string> b(b_side.begin(), b_side.end());
  std::set<int> c;
  for (const auto& name : code) {
    if (!b.count(name)) throw DomainError("is_discriminating_code: '" + name + "' is not in part B");
    c.insert(*g.index_of(name));
  }
  std::set<std::vector<int>> traces;
  for (const auto& name : a_side) {
    std::vector<int> trace;
    for (int w : g.neighbors(*g.index_of(name)))
      if (c.count(w)) trace.push_back(w);
    if (trace.empty()) return false;
    std::sort(trace.begin(), trace.end());
    if (!traces.insert(std::move(trace)).second) return false;
  }
  return true;
}

// Constraint family over ground set B: each A-neighborhood, and each symmetric
// difference of two A-neighborhoods.
inline ConstraintFamily dc_constraints(const Graph& g, const std::vector<std::string>& a_side,
                                       const std::vector<std::string>& b_side) {
  if (auto err = detail::bipartition_error(g, a_side, b_side); !err.empty())
    throw DomainError("min_discriminating_code: " + err);
  ConstraintFamily family;
  std::vector<std::string> b_sorted(b_side.begin(), b_side.end());
  std::sort(b_sorted.begin(), b_sorted.end(), ShortlexLess{});
  family.ground_size = static_cast<int>(b_sorted.size());
  std::map<std::string, int, ShortlexLess> b_rank;
  for (std::size_t i = 0; i < b_sorted.size(); ++i) b_rank[b_sorted[i]] = static_cast<int>(i);

  std::vector<std::string> a_sorted(a_side.begin(), a_side.end());
  std::sort(a_sorted.begin(), a_sorted.end(), ShortlexLess{});
  std::vector<std::vector<int>> nbrs;
  for (const auto& name : a_sorted) {
    std::vector<int> nbr;
    for (int w : g.neighbors(*g.index_of(name))) nbr.push_back(b_rank.at(g.name(w)));
    std::sort(nbr.begin(), nbr.end());
    if (nbr.empty()) {
      family.infeasible = true;
      family.constraints.clear();
      return family;
    }
    nbrs.push_back(std::move(nbr));
  }
  std::set<std::vector<int>> seen;
  for (const auto& nbr : nbrs)
    if (seen.insert(nbr).second) family.constraints.push_back(nbr);
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      std::vector<int> diff;
      std::set_symmetric_difference(nbrs[i].begin(), nbrs[i].end(), nbrs[j].begin(), nbrs[j].end(),
                                    std::back_inserter(diff));
      if (diff.empty()) {
        family.infeasible = true;
        family.constraints.clear();
        return family;
      }
      if (seen.insert(diff).second) family.constraints.push_back(std::move(diff));
    }
  return family;
}

inline CodeResult min_discriminating_code(const Graph& g, const std::vector<std::string>& a_side,
                                          const std::vector<std::string>& b_side) {
  ConstraintFamily family = dc_constraints(g, a_side, b_side);
  if (family.infeasible) return {};
  auto [size, witness] = min_hitting_set(family.constraints, family.ground_size);
  std::vector<std::string> b_sorted(b_side.begin(), b_side.end());
  std::sort(b_sorted.begin(), b_sorted.end(), ShortlexLess{});
  CodeResult result;
  result.feasible = true;
  result.size = size;
  for (int e : witness) result.witness.push_back(b_sorted[static_cast<std::size_t>(e)]);
  return result;
}

}  // namespace extord
