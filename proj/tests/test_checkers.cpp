#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "extord/checkers.hpp"
#include "extord/edgelist.hpp"
#include "extord/hamiltonian.hpp"
#include "extord/orientation_solvers.hpp"
#include "extord/reductions.hpp"
#include "test_util.hpp"

using namespace extord;

namespace {

// All-pairs reference for extensionality, independent of the grouping path.
bool extensional_all_pairs(const Digraph& d) {
  auto key = [&](int v) {
    std::vector<int> k = d.out(v);
    std::sort(k.begin(), k.end());
    return k;
  };
  for (int u = 0; u < d.n(); ++u)
    for (int v = u + 1; v < d.n(); ++v)
      if (key(u) == key(v)) return false;
  return true;
}

Digraph lemma2_of_p3() {
  Graph p3 = parse_graph("graph\na b\nb c\n");
  return lemma2_orientation(p3, *find_hamiltonian_path(p3));
}

}  // namespace

TEST_CASE("is_acyclic reports ranks or a canonical cycle", "[checkers]") {
  Digraph chain = parse_digraph("digraph\nu v\nv w\n");
  auto r = is_acyclic(chain);
  REQUIRE(r.acyclic);
  CHECK(r.rank[*chain.index_of("w")] == 0);
  CHECK(r.rank[*chain.index_of("v")] == 1);
  CHECK(r.rank[*chain.index_of("u")] == 2);

  Digraph tri = parse_digraph("digraph\nu v\nv w\nw u\n");
  auto c = is_acyclic(tri);
  REQUIRE_FALSE(c.acyclic);
  std::vector<std::string> cyc;
  for (int v : c.cycle) cyc.push_back(tri.name(v));
  CHECK(cyc == std::vector<std::string>{"u", "v", "w"});

  auto d8 = is_acyclic(gadget().d8);
  REQUIRE_FALSE(d8.acyclic);
  std::vector<std::string> witness;
  for (int v : d8.cycle) witness.push_back(gadget().d8.name(v));
  CHECK(witness == std::vector<std::string>{"a_4", "a_7", "a_6", "a_5"});
}

TEST_CASE("rank satisfies the longest-path recurrence", "[checkers]") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    Digraph d = testutil::random_dag(rng, 3 + static_cast<int>(rng() % 8), 0.35);
    auto r = is_acyclic(d);
    REQUIRE(r.acyclic);
    for (int v = 0; v < d.n(); ++v) {
      if (d.out_degree(v) == 0) {
        CHECK(r.rank[static_cast<std::size_t>(v)] == 0);
        continue;
      }
      bool tight = false;
      for (int w : d.out(v)) {
        CHECK(r.rank[static_cast<std::size_t>(v)] >= r.rank[static_cast<std::size_t>(w)] + 1);
        if (r.rank[static_cast<std::size_t>(v)] == r.rank[static_cast<std::size_t>(w)] + 1) tight = true;
      }
      CHECK(tight);
    }
  }
}

TEST_CASE("is_extensional matches the all-pairs oracle", "[checkers]") {
  CHECK(is_extensional(parse_digraph("digraph\nnode v\n")).extensional);

  Digraph collide = parse_digraph("digraph\nu w\nv w\n");
  auto r = is_extensional(collide);
  REQUIRE_FALSE(r.extensional);
  CHECK(collide.name(r.collision->u) == "u");
  CHECK(collide.name(r.collision->v) == "v");

  CHECK(is_extensional(gadget().d8).extensional);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng() % 15);
    Digraph d = testutil::random_digraph(rng, n, 0.25);
    CHECK(is_extensional(d).extensional == extensional_all_pairs(d));
  }
  Digraph big = testutil::random_digraph(rng, 64, 0.1);
  CHECK(is_extensional(big).extensional == extensional_all_pairs(big));
}

TEST_CASE("collision witness is the least pair", "[checkers]") {
  // two colliding groups; (a,b) comes before (c,d)
  Digraph d = parse_digraph("digraph\na z\nb z\nc y\nd y\ny z\n");
  auto r = is_extensional(d);
  REQUIRE_FALSE(r.extensional);
  CHECK(d.name(r.collision->u) == "a");
  CHECK(d.name(r.collision->v) == "b");

  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    Digraph g = testutil::random_digraph(rng, 2 + static_cast<int>(rng() % 7), 0.3);
    auto res = is_extensional(g);
    if (res.extensional) continue;
    auto rank = g.shortlex_ranks();
    std::pair<int, int> least{-1, -1};
    auto key = [&](int v) {
      std::vector<int> k = g.out(v);
      std::sort(k.begin(), k.end());
      return k;
    };
    auto canon = g.canonical_vertices();
    for (std::size_t i = 0; i < canon.size() && least.first < 0; ++i)
      for (std::size_t j = i + 1; j < canon.size(); ++j)
        if (key(canon[i]) == key(canon[j])) {
          least = {canon[i], canon[j]};
          break;
        }
    CHECK(res.collision->u == least.first);
    CHECK(res.collision->v == least.second);
  }
}

TEST_CASE("is_slim follows the arc-removal definition", "[checkers]") {
  CHECK(is_slim(parse_digraph("digraph\nu v\n")).slim);

  Digraph d = parse_digraph("digraph\nb a\nc a\nc b\n");
  auto r = is_slim(d);
  REQUIRE_FALSE(r.slim);
  CHECK(d.name(r.removable_arc->first) == "c");
  CHECK(d.name(r.removable_arc->second) == "a");

  CHECK(is_slim(lemma2_of_p3()).slim);

  CHECK_THROWS_AS(is_slim(parse_digraph("digraph\nu v\nv u\n")), DomainError);   // cyclic
  CHECK_THROWS_AS(is_slim(parse_digraph("digraph\nu w\nv w\n")), DomainError);   // collision
}

TEST_CASE("is_reversal_robust follows the arc-reversal definition", "[checkers]") {
  // a single arc reverses to another e.a. digraph
  CHECK_FALSE(is_reversal_robust(parse_digraph("digraph\nu v\n")));
  // reversing c->b keeps the digraph e.a.
  CHECK_FALSE(is_reversal_robust(parse_digraph("digraph\nb a\nc a\nc b\n")));
  CHECK(is_reversal_robust(lemma2_of_p3()));
  CHECK_THROWS_AS(is_reversal_robust(parse_digraph("digraph\nu v\nv u\n")), DomainError);
}

TEST_CASE("sinks, sources and sink reachability", "[checkers]") {
  Digraph arc = parse_digraph("digraph\nu v\n");
  CHECK(sinks(arc) == std::vector<int>{*arc.index_of("v")});
  CHECK(sources(arc) == std::vector<int>{*arc.index_of("u")});
  CHECK(all_reach_sink(arc));

  Digraph cyc = parse_digraph("digraph\nu v\nv u\n");
  CHECK(sinks(cyc).empty());
  CHECK(sources(cyc).empty());
  CHECK_FALSE(all_reach_sink(cyc));

  const Digraph& d8 = gadget().d8;
  std::vector<std::string> sink_names, source_names;
  for (int v : sinks(d8)) sink_names.push_back(d8.name(v));
  for (int v : sources(d8)) source_names.push_back(d8.name(v));
  CHECK(sink_names == std::vector<std::string>{"a_1"});
  // a_2's only incident edge leaves it, so it is a source alongside a_8
  CHECK(source_names == std::vector<std::string>{"a_2", "a_8"});
  CHECK(all_reach_sink(d8));
}

TEST_CASE("acyclic digraphs never collide along a directed path", "[checkers]") {
  std::mt19937_64 rng(29);
  auto reaches = [](const Digraph& d, int from, int to) {
    std::vector<char> seen(static_cast<std::size_t>(d.n()), 0);
    std::vector<int> stack{from};
    seen[static_cast<std::size_t>(from)] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      for (int w : d.out(v))
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
    }
    return false;
  };
  for (int t = 0; t < 100; ++t) {
    Digraph d = testutil::random_dag(rng, 3 + static_cast<int>(rng() % 7), 0.4);
    auto key = [&](int v) {
      std::vector<int> k = d.out(v);
      std::sort(k.begin(), k.end());
      return k;
    };
    for (int u = 0; u < d.n(); ++u)
      for (int v = 0; v < d.n(); ++v)
        if (u != v && key(u) == key(v)) {
          CHECK_FALSE(reaches(d, u, v));
          CHECK_FALSE(reaches(d, v, u));
        }
  }
}

TEST_CASE("every e.a. digraph has one sink that all vertices reach", "[checkers]") {
  std::mt19937_64 rng(31);
  int found = 0;
  for (int t = 0; t < 60 && found < 25; ++t) {
    Graph g = testutil::random_hp_seeded(rng, 3 + static_cast<int>(rng() % 5), 2);
    auto r = solve(g, Variant::eao);
    if (!r.digraph) continue;
    ++found;
    CHECK(sinks(*r.digraph).size() == 1);
    CHECK(all_reach_sink(*r.digraph));
  }
  CHECK(found >= 25);
}
