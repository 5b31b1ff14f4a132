#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "extord/checkers.hpp"
#include "extord/graph.hpp"

// Hereditarily finite sets as canonical terms, the Mostowski collapse of an
// acyclic digraph, Ackermann codes, and the inverse membership-digraph
// construction. Canonical form: children duplicate-free and sorted shortlex
// by their canonical strings, so equal sets print identically.

namespace extord {

class HFSet {
 public:
  HFSet() : repr_("{}") {}

  explicit HFSet(std::vector<HFSet> children) {
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()), children.end());
    repr_ = "{";
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) repr_ += ',';
      repr_ += children[i].repr_;
    }
    repr_ += '}';
    children_ = std::move(children);
  }

  const std::vector<HFSet>& children() const { return children_; }
  bool empty() const { return children_.empty(); }

  // "{...}" with children in canonical order; injective over sets.
  const std::string& canonical_string() const { return repr_; }

  friend bool operator==(const HFSet& a, const HFSet& b) { return a.repr_ == b.repr_; }
  friend bool operator!=(const HFSet& a, const HFSet& b) { return !(a == b); }
  friend bool operator<(const HFSet& a, const HFSet& b) { return shortlex_less(a.repr_, b.repr_); }

 private:
  std::vector<HFSet> children_;
  std::string repr_;
};

inline const std::string& canonical_string(const HFSet& s) { return s.canonical_string(); }

// collapse(v) = { collapse(u) : u in N+(v) }; sinks become the empty set.
// Defined for every acyclic digraph; injective exactly on extensional ones.
inline std::vector<HFSet> mostowski_collapse(const Digraph& d) {
  if (!detail::acyclic_quick(d)) throw DomainError("mostowski_collapse: digraph is cyclic");
  int n = d.n();
  std::vector<HFSet> collapse(static_cast<std::size_t>(n));
  // peel sinks first so children are always ready
  std::vector<int> pending(static_cast<std::size_t>(n));
  std::vector<int> ready;
  for (int v = 0; v < n; ++v) {
    pending[static_cast<std::size_t>(v)] = d.out_degree(v);
    if (pending[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    std::vector<HFSet> children;
    children.reserve(d.out(v).size());
    for (int w : d.out(v)) children.push_back(collapse[static_cast<std::size_t>(w)]);
    collapse[static_cast<std::size_t>(v)] = HFSet(std::move(children));
    for (int u : d.in(v))
      if (--pending[static_cast<std::size_t>(u)] == 0) ready.push_back(u);
  }
  return collapse;
}

// code(x) = sum of 2^code(y) over the distinct elements y; code({}) = 0.
// Exponents at or above limit_bits are refused so the result stays below
// 2^limit_bits.
inline mpz_class ackermann(const HFSet& s, unsigned limit_bits = 4096) {
  std::map<std::string, mpz_class> memo;
  auto code = [&](auto&& self, const HFSet& x) -> const mpz_class& {
    auto it = memo.find(x.canonical_string());
    if (it != memo.end()) return it->second;
    mpz_class total = 0;
    for (const HFSet& child : x.children()) {
      const mpz_class& c = self(self, child);
      if (c >= limit_bits)
        throw CapacityError("ackermann: code exceeds 2^" + std::to_string(limit_bits));
      mpz_class term;
      mpz_ui_pow_ui(term.get_mpz_t(), 2, c.get_ui());
      total += term;
    }
    return memo.emplace(x.canonical_string(), std::move(total)).first->second;
  };
  return code(code, s);
}

// (TrCl(s) with s itself, arcs from each set to its elements). Vertices are
// named by canonical strings, which are already valid tokens. The result is
// extensional and acyclic, and its collapse maps the top vertex back to s.
inline Digraph membership_digraph(const HFSet& s) {
  Digraph d;
  auto visit = [&](auto&& self, const HFSet& x) -> void {
    if (d.has_vertex(x.canonical_string())) return;
    d.add_vertex(x.canonical_string());
    for (const HFSet& child : x.children()) {
      self(self, child);
      d.add_arc(x.canonical_string(), child.canonical_string());
    }
  };
  visit(visit, s);
  return d;
}

}  // namespace extord
