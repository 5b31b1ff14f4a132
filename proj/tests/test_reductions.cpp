#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "extord/edgelist.hpp"
#include "extord/hamiltonian.hpp"
#include "extord/orientation_solvers.hpp"
#include "extord/reductions.hpp"
#include "test_util.hpp"

using namespace extord;

namespace {

bool is_bipartite(const Graph& g) {
  std::vector<int> color(static_cast<std::size_t>(g.n()), -1);
  for (int s = 0; s < g.n(); ++s) {
    if (color[static_cast<std::size_t>(s)] != -1) continue;
    color[static_cast<std::size_t>(s)] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(v)) {
        if (color[static_cast<std::size_t>(w)] == -1) {
          color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(v)];
          stack.push_back(w);
        } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("hp_prime_extend shape", "[reductions]") {
  Graph k1 = parse_graph("graph\nnode v\n");
  Graph plus = hp_prime_extend(k1);
  CHECK(plus.n() == 5);
  CHECK(plus == parse_graph("graph\ns_1 s_2\nt_1 t_2\ns_2 v\nt_2 v\n"));

  Graph p2 = parse_graph("graph\nu v\n");
  Graph p2plus = hp_prime_extend(p2);
  CHECK(p2plus.n() == 6);
  CHECK(p2plus.m() == p2.m() + 2 * p2.n() + 2);  // 1 + 4 + 2 = 7

  CHECK_THROWS_AS(hp_prime_extend(parse_graph("graph\n")), DomainError);
}

TEST_CASE("hp_prime_extend leaves and path counts", "[reductions]") {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 30; ++t) {
    Graph g = testutil::random_graph(rng, 2 + static_cast<int>(rng() % 5), 8);
    Graph plus = hp_prime_extend(g);
    std::vector<std::string> leaf_names;
    for (int v : plus.leaves()) leaf_names.push_back(plus.name(v));
    CHECK(leaf_names == std::vector<std::string>{"s_1", "t_1"});
    CHECK(count_hamiltonian_paths(plus) == 2 * count_hamiltonian_paths(g));
    CHECK(find_hamiltonian_path(plus).has_value() == find_hamiltonian_path(g).has_value());
  }
}

TEST_CASE("hp_prime_extend escapes clashing input names", "[reductions]") {
  Graph g = parse_graph("graph\ns_1 q\n");
  NameMap renames;
  Graph plus = hp_prime_extend(g, &renames);
  REQUIRE(renames.size() == 1);
  CHECK(renames.at("s_1") == "e_s_1");
  CHECK(plus.has_vertex("e_s_1"));
  CHECK(plus.degree(*plus.index_of("s_1")) == 1);  // the fresh leaf s_1
}

TEST_CASE("subdivision shape", "[reductions]") {
  Graph k2 = parse_graph("graph\nu v\n");
  CHECK(subdivision(k2) == parse_graph("graph\nu x_u_v\nv x_u_v\n"));

  Graph k3 = parse_graph("graph\na b\nb c\na c\n");
  Graph c6 = subdivision(k3);
  CHECK(c6.n() == 6);
  CHECK(c6.m() == 6);
  for (int v = 0; v < c6.n(); ++v) CHECK(c6.degree(v) == 2);
  CHECK(testutil::is_connected(c6));
  CHECK(is_bipartite(c6));

  Graph claw = parse_graph("graph\nc l1\nc l2\nc l3\n");
  Graph spider = subdivision(claw);
  CHECK(spider.n() == 7);
  CHECK(spider.m() == 6);
  CHECK_FALSE(solve(spider, Variant::eao).digraph);  // still not a set graph
}

TEST_CASE("subdivision keeps edge-vertex names injective", "[reductions]") {
  // originals with the reserved prefix are renamed
  NameMap renames;
  Graph g = parse_graph("graph\nx_1 q\n");
  Graph s = subdivision(g, &renames);
  CHECK(renames.at("x_1") == "e_x_1");
  CHECK(s.has_vertex("x_q_e_x_1"));

  // underscore-bearing names can make two edges produce the same base name
  Graph tricky;
  for (const char* v : {"a", "b_c_d", "a_b", "c_d"}) tricky.add_vertex(v);
  tricky.add_edge("a", "b_c_d");
  tricky.add_edge("a_b", "c_d");
  Graph st = subdivision(tricky);
  CHECK(st.n() == 6);
  CHECK(st.has_vertex("x_a_b_c_d_0"));
  CHECK(st.has_vertex("x_a_b_c_d_1"));
}

TEST_CASE("lemma2_orientation builds the interleaved chain", "[reductions]") {
  Graph p3 = parse_graph("graph\na b\nb c\n");
  Digraph d = lemma2_orientation(p3, *find_hamiltonian_path(p3));
  CHECK(serialize(d) == "digraph\nb x_a_b\nc x_b_c\nx_a_b a\nx_b_c b\n");
  auto sk = sinks(d);
  REQUIRE(sk.size() == 1);
  CHECK(d.name(sk[0]) == "a");
}

TEST_CASE("lemma2_orientation points untouched edge vertices outward", "[reductions]") {
  Graph g = parse_graph("graph\nv1 v2\nv2 v3\nv3 v4\nv4 v5\nv2 v4\n");
  HamPath p{{*g.index_of("v1"), *g.index_of("v2"), *g.index_of("v3"), *g.index_of("v4"),
             *g.index_of("v5")}};
  Digraph d = lemma2_orientation(g, p);
  CHECK(d.has_arc(*d.index_of("x_v2_v4"), *d.index_of("v2")));
  CHECK(d.has_arc(*d.index_of("x_v2_v4"), *d.index_of("v4")));
  CHECK(is_slim(d).slim);
}

TEST_CASE("lemma2_orientation validates its preconditions", "[reductions]") {
  Graph claw = parse_graph("graph\nc l1\nc l2\nc l3\n");
  CHECK_THROWS_AS(lemma2_orientation(claw, HamPath{{0, 1, 2, 3}}), DomainError);

  Graph p3 = parse_graph("graph\na b\nb c\n");
  CHECK_THROWS_AS(lemma2_orientation(p3, HamPath{{0, 2, 1}}), DomainError);  // not a path
  CHECK_THROWS_AS(lemma2_orientation(p3, HamPath{{0, 1}}), DomainError);     // not spanning
}

TEST_CASE("lemma2_orientation matches the per-arc formula", "[reductions]") {
  // touched x^{v_i v_{i+1}}: v_{i+1} -> x -> v_i; untouched x: both arcs leave x
  std::mt19937_64 rng(89);
  for (int t = 0; t < 25; ++t) {
    Graph g = testutil::random_two_leaf_connected(rng, 4 + static_cast<int>(rng() % 4), 2);
    auto hp = find_hamiltonian_path(g);
    if (!hp) continue;
    Subdivision s = subdivide_with_names(g);
    Digraph d = lemma2_orientation(g, *hp);
    std::set<std::pair<std::string, std::string>> touched;
    for (std::size_t i = 1; i < hp->vertices.size(); ++i) {
      int a = hp->vertices[i - 1], b = hp->vertices[i];
      auto key = shortlex_less(g.name(a), g.name(b)) ? std::pair(g.name(a), g.name(b))
                                                     : std::pair(g.name(b), g.name(a));
      touched.insert(key);
      const std::string& x = s.edge_vertex.at(key);
      CHECK(d.has_arc(*d.index_of(x), *d.index_of(g.name(a))));
      CHECK(d.has_arc(*d.index_of(g.name(b)), *d.index_of(x)));
    }
    for (const auto& [edge, x] : s.edge_vertex) {
      if (touched.count(edge)) continue;
      CHECK(d.has_arc(*d.index_of(x), *d.index_of(edge.first)));
      CHECK(d.has_arc(*d.index_of(x), *d.index_of(edge.second)));
    }
  }
}

TEST_CASE("lemma 2 round trip: slim, robust e.a.o.s", "[reductions]") {
  std::mt19937_64 rng(97);
  int built = 0;
  for (int t = 0; t < 60 && built < 20; ++t) {
    Graph g = testutil::random_two_leaf_connected(rng, 4 + static_cast<int>(rng() % 4), 2);
    auto hp = find_hamiltonian_path(g);
    if (!hp) continue;
    ++built;
    Digraph d = lemma2_orientation(g, *hp);
    CHECK(is_acyclic(d).acyclic);
    CHECK(is_extensional(d).extensional);
    CHECK(is_slim(d).slim);
    CHECK(is_reversal_robust(d));
  }
  CHECK(built >= 20);
}

TEST_CASE("lemma 3: S(G) has an e.a.o. iff G has a Hamiltonian path", "[reductions]") {
  for (int n = 1; n <= 6; ++n)
    testutil::all_graphs(n, [](const Graph& g) {
      bool has_eao = solve(subdivision(g), Variant::eao).digraph.has_value();
      bool has_hp = count_hamiltonian_paths(g) > 0;
      REQUIRE(has_eao == has_hp);
    });
}

TEST_CASE("compose joins two digraphs with one bridge", "[reductions]") {
  Digraph d1 = parse_digraph("digraph\nu v\n");
  Digraph u = compose(d1, "v", "a_8", gadget().d8);
  CHECK(u.n() == 10);
  CHECK(u.m() == 10);
  CHECK(u.has_arc(*u.index_of("v"), *u.index_of("a_8")));

  CHECK_THROWS_AS(compose(d1, "zz", "a_8", gadget().d8), DomainError);
  CHECK_THROWS_AS(compose(d1, "v", "zz", gadget().d8), DomainError);
}

TEST_CASE("compose renames clashes in the second structure", "[reductions]") {
  NameMap renames;
  Digraph twice = compose(gadget().d8, "a_1", "a_8", gadget().d8, &renames);
  CHECK(twice.n() == 16);
  CHECK(twice.m() == 17);
  CHECK(renames.size() == 8);
  CHECK(renames.at("a_8") == "e_a_8");
  CHECK(twice.has_arc(*twice.index_of("a_1"), *twice.index_of("e_a_8")));
}

TEST_CASE("graph compose analogue", "[reductions]") {
  Graph g1 = parse_graph("graph\nu v\n");
  Graph g2 = parse_graph("graph\nx y\n");
  Graph u = compose(g1, "v", "x", g2);
  CHECK(u == parse_graph("graph\nu v\nv x\nx y\n"));
}

TEST_CASE("gadget_verify reproduces exactly the two orientations", "[reductions]") {
  auto found = gadget_verify();
  REQUIRE(found.size() == 2);
  CHECK((found[0] == gadget().d8 || found[1] == gadget().d8));
  CHECK((found[0] == gadget().d8_companion || found[1] == gadget().d8_companion));
  CHECK(underlying_graph(found[0]) == gadget().g8);
  // the companion reverses exactly the a_2 a_3 and a_1 a_3 edges
  const Digraph& d8 = gadget().d8;
  const Digraph& d8p = gadget().d8_companion;
  CHECK(d8.has_arc(*d8.index_of("a_3"), *d8.index_of("a_1")));
  CHECK(d8p.has_arc(*d8p.index_of("a_1"), *d8p.index_of("a_3")));
  CHECK(d8.has_arc(*d8.index_of("a_2"), *d8.index_of("a_3")));
  CHECK(d8p.has_arc(*d8p.index_of("a_3"), *d8p.index_of("a_2")));
}

TEST_CASE("heo_instance builds the three-leaf bipartite instance", "[reductions]") {
  Graph p3 = parse_graph("graph\na b\nb c\n");
  Graph hi = heo_instance(p3);
  CHECK(hi.n() == 13);  // 5 + 8
  CHECK(hi.m() == 13);  // 4 + 8 + 1
  CHECK(is_bipartite(hi));
  std::vector<std::string> leaf_names;
  for (int v : hi.leaves()) leaf_names.push_back(hi.name(v));
  CHECK(leaf_names == std::vector<std::string>{"c", "a_1", "a_2"});

  CHECK_THROWS_AS(heo_instance(parse_graph("graph\nc l1\nc l2\nc l3\n")), DomainError);
}

TEST_CASE("lemmas 5 and 6 on tiny instances", "[reductions]") {
  // P_3 and P_4 have Hamiltonian paths: the instance admits a HEO
  for (const char* text : {"graph\na b\nb c\n", "graph\na b\nb c\nc d\n"}) {
    Graph g = parse_graph(text);
    auto r = solve(heo_instance(g), Variant::heo);
    REQUIRE(r.digraph);
    CHECK(is_hyper_extensional(*r.digraph));
  }
  // two pendants on the same triangle vertex: two leaves but no Hamiltonian path
  Graph blocked = parse_graph("graph\np q\nq r\np r\np l1\np l2\n");
  REQUIRE(blocked.leaves().size() == 2);
  REQUIRE(count_hamiltonian_paths(blocked) == 0);
  CHECK_FALSE(solve(heo_instance(blocked), Variant::heo).digraph);
}

TEST_CASE("dc_to_oosc builds the theorem-5 digraph", "[reductions]") {
  Graph g1 = parse_graph("graph\na1 b1\n");
  Digraph d1 = dc_to_oosc(g1, {"a1"}, {"b1"});
  CHECK(serialize(d1) == "digraph\na1 b1\nb1 c_1\nc_1 c_0\n");
  CHECK(is_acyclic(d1).acyclic);
  CHECK(is_extensional(d1).extensional);

  Graph g2 = parse_graph("graph\na1 b1\na2 b1\na2 b2\n");
  Digraph d2 = dc_to_oosc(g2, {"a1", "a2"}, {"b1", "b2"});
  CHECK(d2.n() == 7);
  CHECK(d2.has_arc(*d2.index_of("c_2"), *d2.index_of("c_1")));
  CHECK(d2.has_arc(*d2.index_of("c_2"), *d2.index_of("c_0")));
  CHECK(d2.has_arc(*d2.index_of("c_1"), *d2.index_of("c_0")));
  CHECK(is_acyclic(d2).acyclic);
  CHECK(is_extensional(d2).extensional);
}

TEST_CASE("dc_to_oosc validates its preconditions", "[reductions]") {
  Graph twins = parse_graph("graph\na1 b1\na2 b1\n");
  CHECK_THROWS_WITH(dc_to_oosc(twins, {"a1", "a2"}, {"b1"}),
                    Catch::Matchers::ContainsSubstring("twin"));
  Graph isolated = parse_graph("graph\na1 b1\nnode a2\n");
  CHECK_THROWS_WITH(dc_to_oosc(isolated, {"a1", "a2"}, {"b1"}),
                    Catch::Matchers::ContainsSubstring("isolated"));
  Graph odd = parse_graph("graph\na1 a2\n");
  CHECK_THROWS_AS(dc_to_oosc(odd, {"a1", "a2"}, {}), DomainError);
}

TEST_CASE("dc_to_oosc output is always extensional and acyclic", "[reductions]") {
  std::mt19937_64 rng(103);
  int built = 0;
  for (int t = 0; t < 80 && built < 25; ++t) {
    int na = 1 + static_cast<int>(rng() % 3);
    int nb = 1 + static_cast<int>(rng() % 3);
    Graph g;
    std::vector<std::string> a_side, b_side;
    for (int i = 1; i <= na; ++i) {
      a_side.push_back("a" + std::to_string(i));
      g.add_vertex(a_side.back());
    }
    for (int i = 1; i <= nb; ++i) {
      b_side.push_back("b" + std::to_string(i));
      g.add_vertex(b_side.back());
    }
    for (const auto& a : a_side)
      for (const auto& b : b_side)
        if (rng() % 2) g.add_edge(a, b);
    try {
      Digraph d = dc_to_oosc(g, a_side, b_side);
      ++built;
      CHECK(is_acyclic(d).acyclic);
      CHECK(is_extensional(d).extensional);
    } catch (const DomainError&) {
      // isolated or twin A-vertices: rejected by contract
    }
  }
  CHECK(built >= 25);
}
