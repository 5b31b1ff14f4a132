#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "extord/checkers.hpp"
#include "extord/graph.hpp"

// Maximum bisimulation of a simple digraph via partition refinement, plus the
// hyper-extensionality test and the quotient construction. Two engines are
// kept deliberately: a naive fixed-point splitter used as a reference oracle,
// and a Paige-Tarjan style "process the smaller half" refinement.

namespace extord {

struct Partition {
  std::vector<std::vector<int>> blocks;

  bool is_identity() const {
    return std::all_of(blocks.begin(), blocks.end(),
                       [](const std::vector<int>& b) { return b.size() == 1; });
  }
  std::size_t block_count() const { return blocks.size(); }

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks == b.blocks; }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
};

namespace detail {

// Members sorted shortlex, blocks sorted by least member.
inline Partition canonical_partition(const Digraph& d, std::vector<std::vector<int>> blocks) {
  auto rank = d.shortlex_ranks();
  for (auto& b : blocks)
    std::sort(b.begin(), b.end(), [&](int a, int c) {
      return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(c)];
    });
  std::sort(blocks.begin(), blocks.end(), [&](const auto& a, const auto& c) {
    return rank[static_cast<std::size_t>(a.front())] < rank[static_cast<std::size_t>(c.front())];
  });
  return Partition{std::move(blocks)};
}

inline Partition blocks_from_ids(const Digraph& d, const std::vector<int>& block_of, int count) {
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(count));
  for (int v = 0; v < d.n(); ++v) blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(v)])].push_back(v);
  return canonical_partition(d, std::move(blocks));
}

}  // namespace detail

// Reference engine: start from the universal block and repeatedly split by the
// set of blocks hit by out-neighbors, until stable. Per Definition-4 semantics
// the signature is a set, not a multiset: a vertex with two out-neighbors in
// one block matches a vertex with one.
inline Partition max_bisimulation_naive(const Digraph& d) {
  int n = d.n();
  if (n == 0) return {};
  std::vector<int> block_of(static_cast<std::size_t>(n), 0);
  int count = 1;
  for (;;) {
    std::map<std::pair<int, std::vector<int>>, int> renumber;
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      std::vector<int> sig;
      sig.reserve(d.out(v).size());
      for (int w : d.out(v)) sig.push_back(block_of[static_cast<std::size_t>(w)]);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      auto key = std::pair(block_of[static_cast<std::size_t>(v)], std::move(sig));
      auto [it, fresh] = renumber.emplace(std::move(key), static_cast<int>(renumber.size()));
      next[static_cast<std::size_t>(v)] = it->second;
    }
    int next_count = static_cast<int>(renumber.size());
    block_of.swap(next);
    if (next_count == count) break;
    count = next_count;
  }
  return detail::blocks_from_ids(d, block_of, count);
}

// Paige-Tarjan refinement, O(|E| log |V|). Maintains the coarse partition X
// (unions of current blocks) and per-arc count records count(x, S) so that the
// three-way split by a removed sub-block B needs only the arcs into B.
inline Partition max_bisimulation(const Digraph& d) {
  int n = d.n();
  if (n == 0) return {};
  int m = d.m();
  const auto& arcs = d.arcs();

  std::vector<std::vector<int>> in_arcs(static_cast<std::size_t>(n));
  for (int a = 0; a < m; ++a) in_arcs[static_cast<std::size_t>(arcs[static_cast<std::size_t>(a)].second)].push_back(a);

  struct Block {
    int begin, end, marked, xid;
    int size() const { return end - begin; }
  };
  struct XBlock {
    std::vector<int> qids;
    bool queued = false;
  };

  std::vector<int> elems(static_cast<std::size_t>(n));
  std::vector<int> pos(static_cast<std::size_t>(n));
  std::vector<int> block_of(static_cast<std::size_t>(n));
  std::vector<Block> blocks;
  std::vector<XBlock> xblocks;
  std::deque<int> queue;

  auto enqueue = [&](int xid) {
    if (!xblocks[static_cast<std::size_t>(xid)].queued && xblocks[static_cast<std::size_t>(xid)].qids.size() >= 2) {
      xblocks[static_cast<std::size_t>(xid)].queued = true;
      queue.push_back(xid);
    }
  };

  // initial partition: non-sinks, then sinks (either side may be empty);
  // stable with respect to the universe by construction
  {
    int front = 0, back = n;
    for (int v = 0; v < n; ++v) {
      if (d.out_degree(v) > 0)
        elems[static_cast<std::size_t>(front++)] = v;
      else
        elems[static_cast<std::size_t>(--back)] = v;
    }
    xblocks.push_back({});
    if (front > 0) {
      blocks.push_back({0, front, 0, 0});
      xblocks[0].qids.push_back(0);
    }
    if (back < n) {
      blocks.push_back({front, n, 0, 0});
      xblocks[0].qids.push_back(static_cast<int>(blocks.size()) - 1);
    }
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (int p = blocks[i].begin; p < blocks[i].end; ++p) {
        pos[static_cast<std::size_t>(elems[static_cast<std::size_t>(p)])] = p;
        block_of[static_cast<std::size_t>(elems[static_cast<std::size_t>(p)])] = static_cast<int>(i);
      }
    enqueue(0);
  }

  // count records: one shared record per (vertex, X-block its arcs point into)
  std::vector<long long> recs;
  std::vector<int> arc_rec(static_cast<std::size_t>(m), -1);
  {
    std::vector<int> rec_of(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < m; ++a) {
      int x = arcs[static_cast<std::size_t>(a)].first;
      if (rec_of[static_cast<std::size_t>(x)] < 0) {
        rec_of[static_cast<std::size_t>(x)] = static_cast<int>(recs.size());
        recs.push_back(d.out_degree(x));
      }
      arc_rec[static_cast<std::size_t>(a)] = rec_of[static_cast<std::size_t>(x)];
    }
  }

  std::vector<int> newrec_of(static_cast<std::size_t>(n), -1);
  std::vector<int> oldrec_of(static_cast<std::size_t>(n), -1);
  std::vector<int> touched;

  auto mark = [&](int x) {
    int bid = block_of[static_cast<std::size_t>(x)];
    Block& blk = blocks[static_cast<std::size_t>(bid)];
    int p = pos[static_cast<std::size_t>(x)];
    if (p < blk.begin + blk.marked) return;
    if (blk.marked == 0) touched.push_back(bid);
    int q = blk.begin + blk.marked;
    std::swap(elems[static_cast<std::size_t>(p)], elems[static_cast<std::size_t>(q)]);
    pos[static_cast<std::size_t>(elems[static_cast<std::size_t>(p)])] = p;
    pos[static_cast<std::size_t>(elems[static_cast<std::size_t>(q)])] = q;
    ++blk.marked;
  };

  auto split_touched = [&]() {
    for (int bid : touched) {
      int msize, xid, nb_begin, nb_end;
      {
        Block& blk = blocks[static_cast<std::size_t>(bid)];
        msize = blk.marked;
        blk.marked = 0;
        if (msize == 0 || msize == blk.size()) continue;
        xid = blk.xid;
        if (msize <= blk.size() - msize) {  // relabel the marked prefix
          nb_begin = blk.begin;
          nb_end = blk.begin + msize;
          blk.begin = nb_end;
        } else {  // relabel the unmarked suffix
          nb_begin = blk.begin + msize;
          nb_end = blk.end;
          blk.end = nb_begin;
        }
      }
      int nb = static_cast<int>(blocks.size());
      blocks.push_back({nb_begin, nb_end, 0, xid});  // invalidates blk
      for (int p = nb_begin; p < nb_end; ++p)
        block_of[static_cast<std::size_t>(elems[static_cast<std::size_t>(p)])] = nb;
      xblocks[static_cast<std::size_t>(xid)].qids.push_back(nb);
      enqueue(xid);
    }
    touched.clear();
  };

  std::vector<int> pre_b;
  while (!queue.empty()) {
    int sid = queue.front();
    queue.pop_front();
    xblocks[static_cast<std::size_t>(sid)].queued = false;
    int bq;
    {
      auto& qids = xblocks[static_cast<std::size_t>(sid)].qids;
      if (qids.size() < 2) continue;
      // remove the smaller of the first two blocks into its own X-block
      int pick = blocks[static_cast<std::size_t>(qids[0])].size() <= blocks[static_cast<std::size_t>(qids[1])].size() ? 0 : 1;
      bq = qids[static_cast<std::size_t>(pick)];
      qids.erase(qids.begin() + pick);
      enqueue(sid);
    }
    int new_xid = static_cast<int>(xblocks.size());
    xblocks.push_back({{bq}, false});  // invalidates qids
    blocks[static_cast<std::size_t>(bq)].xid = new_xid;

    const Block& bblk = blocks[static_cast<std::size_t>(bq)];
    std::vector<int> bverts(elems.begin() + bblk.begin, elems.begin() + bblk.end);

    // move the count records of arcs into B from (x, S) to (x, B)
    pre_b.clear();
    for (int y : bverts) {
      for (int a : in_arcs[static_cast<std::size_t>(y)]) {
        int x = arcs[static_cast<std::size_t>(a)].first;
        int old = arc_rec[static_cast<std::size_t>(a)];
        if (newrec_of[static_cast<std::size_t>(x)] < 0) {
          newrec_of[static_cast<std::size_t>(x)] = static_cast<int>(recs.size());
          recs.push_back(0);
          oldrec_of[static_cast<std::size_t>(x)] = old;
          pre_b.push_back(x);
        }
        ++recs[static_cast<std::size_t>(newrec_of[static_cast<std::size_t>(x)])];
        --recs[static_cast<std::size_t>(old)];
        arc_rec[static_cast<std::size_t>(a)] = newrec_of[static_cast<std::size_t>(x)];
      }
    }

    // split by pre(B)
    for (int x : pre_b) mark(x);
    split_touched();

    // split by pre(B) \ pre(S-B): count(x, S-B) dropped to zero
    for (int x : pre_b)
      if (recs[static_cast<std::size_t>(oldrec_of[static_cast<std::size_t>(x)])] == 0) mark(x);
    split_touched();

    for (int x : pre_b) newrec_of[static_cast<std::size_t>(x)] = -1;
  }

  std::vector<std::vector<int>> out;
  out.reserve(blocks.size());
  for (const Block& blk : blocks) {
    std::vector<int> members(elems.begin() + blk.begin, elems.begin() + blk.end);
    out.push_back(std::move(members));
  }
  return detail::canonical_partition(d, std::move(out));
}

// Acyclic inputs short-circuit through extensionality: an extensional acyclic
// digraph is hyper-extensional, and a non-extensional one never is.
inline bool is_hyper_extensional(const Digraph& d) {
  if (detail::acyclic_quick(d)) return detail::extensional_quick(d);
  return max_bisimulation(d).is_identity();
}

// Collapse each block to one vertex named by its least member. An arc between
// blocks exists when any member pair has one. Collapsing an intra-block arc
// would need a self-loop, which the simple-digraph model rejects.
inline Digraph quotient(const Digraph& d, const Partition& p) {
  std::vector<int> block_of(static_cast<std::size_t>(d.n()), -1);
  for (std::size_t b = 0; b < p.blocks.size(); ++b)
    for (int v : p.blocks[b]) {
      if (v < 0 || v >= d.n() || block_of[static_cast<std::size_t>(v)] != -1)
        throw DomainError("quotient: blocks do not partition the vertex set");
      block_of[static_cast<std::size_t>(v)] = static_cast<int>(b);
    }
  for (int v = 0; v < d.n(); ++v)
    if (block_of[static_cast<std::size_t>(v)] == -1)
      throw DomainError("quotient: blocks do not partition the vertex set");

  auto rank = d.shortlex_ranks();
  std::vector<std::string> block_name(p.blocks.size());
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    int least = *std::min_element(p.blocks[b].begin(), p.blocks[b].end(), [&](int a, int c) {
      return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(c)];
    });
    block_name[b] = d.name(least);
  }

  std::set<std::pair<int, int>> block_arcs;
  for (const auto& [u, v] : d.arcs()) {
    int bu = block_of[static_cast<std::size_t>(u)];
    int bv = block_of[static_cast<std::size_t>(v)];
    if (bu == bv)
      throw DomainError("quotient: collapsing arc " + d.name(u) + "->" + d.name(v) +
                        " would create a self-loop");
    block_arcs.insert({bu, bv});
  }

  Digraph q;
  for (const auto& name : block_name) q.add_vertex(name);
  for (const auto& [bu, bv] : block_arcs) q.add_arc(block_name[static_cast<std::size_t>(bu)],
                                                    block_name[static_cast<std::size_t>(bv)]);
  return q;
}

// One block per line, members space-separated, blocks in canonical order.
inline std::string partition_to_string(const Digraph& d, const Partition& p) {
  std::string out;
  for (const auto& block : p.blocks) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += ' ';
      out += d.name(block[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace extord
