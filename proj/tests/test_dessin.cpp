#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "jmono/dessin.hpp"

using namespace jmono;

namespace {
// index 1
Dessin d1() { return Dessin::make({0}, {0}); }
// index 2: two s3 fixed points swapped by s2
Dessin d2() { return Dessin::make({1, 0}, {0, 1}); }
// index 3: cusp widths 1,2
Dessin d3() { return Dessin::make({1, 0, 2}, {1, 2, 0}); }
// index 6, torsion free, three cusps of width 2
Dessin hexagonal() { return Dessin::make({3, 5, 4, 0, 2, 1}, {1, 2, 0, 4, 5, 3}); }
// index 6, genus 1, single cusp of width 6
Dessin genus1() { return Dessin::make({3, 4, 5, 0, 1, 2}, {1, 2, 0, 4, 5, 3}); }
// index 5 tree: central s3 cycle, two s2-paired legs, one s2 fixed leg
Dessin star5() { return Dessin::make({3, 4, 2, 0, 1}, {1, 2, 0, 3, 4}); }
}  // namespace

TEST_CASE("make validates") {
  CHECK_THROWS_AS(Dessin::make({1, 2, 0}, {0, 1, 2}), input_error);  // s2 not involution
  CHECK_THROWS_AS(Dessin::make({0, 1}, {1, 0}), input_error);        // s3^3 != id
  CHECK_THROWS_AS(Dessin::make({0, 1}, {0, 1}), input_error);        // not transitive
  CHECK_THROWS_AS(Dessin::make({}, {}), input_error);
  CHECK_THROWS_AS(Dessin::make({0, 0}, {0, 1}), input_error);  // not a permutation
}

TEST_CASE("census of the small examples") {
  {
    VertexCensus c = census(d1());
    CHECK(c.a2 == std::vector<int>{0});
    CHECK(c.b2 == std::vector<int>{0});
    CHECK(c.a6.empty());
    CHECK(c.b4.empty());
    CHECK(c.cusps.size() == 1);
    CHECK(c.genus == 0);
    CHECK(cdf(d1()) == 5);
    CHECK(et(d1()) == 12);
  }
  {
    VertexCensus c = census(d2());
    CHECK(c.a2.size() == 2);
    CHECK(c.b4.size() == 1);
    CHECK(c.widths() == std::vector<int>{2});
    CHECK(c.genus == 0);
    CHECK(et(d2()) == 12);
  }
  {
    VertexCensus c = census(d3());
    CHECK(c.a6.size() == 1);
    CHECK(c.b2 == std::vector<int>{2});
    CHECK(c.b4.size() == 1);
    CHECK(c.widths() == std::vector<int>{1, 2});
    CHECK(c.genus == 0);
    CHECK(et(d3()) == 12);
    CHECK(c.point_ids() == std::vector<std::string>{"b2:0", "cusp:0", "cusp:1"});
  }
  {
    VertexCensus c = census(hexagonal());
    CHECK(hexagonal().torsion_free());
    CHECK(c.widths() == std::vector<int>{2, 2, 2});
    CHECK(c.genus == 0);
    CHECK(et(hexagonal()) == 12);
  }
  {
    VertexCensus c = census(genus1());
    CHECK(c.widths() == std::vector<int>{6});
    CHECK(c.genus == 1);
    CHECK(et(genus1()) == 12);
  }
  {
    VertexCensus c = census(star5());
    CHECK(c.a2.size() == 2);
    CHECK(c.b2.size() == 1);
    CHECK(c.widths() == std::vector<int>{5});
    CHECK(c.genus == 0);
    CHECK(et(star5()) == 24);
  }
}

TEST_CASE("census partition identities") {
  for (const Dessin& d : {d1(), d2(), d3(), hexagonal(), genus1(), star5()}) {
    VertexCensus c = census(d);
    CHECK(static_cast<int>(3 * c.a6.size() + c.a2.size()) == d.n);
    CHECK(static_cast<int>(2 * c.b4.size() + c.b2.size()) == d.n);
    int total = 0;
    for (int w : c.widths()) total += w;
    CHECK(total == d.n);
    CHECK(et(d) % 12 == 0);
  }
}

TEST_CASE("word action on points") {
  Dessin d = d3();
  CHECK(d.act(0, PslGen::U) == 1);
  CHECK(d.act(0, PslWord::from_text("s u")) == 2);  // s2 first, then s3
  CHECK(d.act(0, PslWord::from_text("u u2")) == 0);
  for (int x = 0; x < d.n; ++x) {
    CHECK(d.act(d.act(x, PslGen::S), PslGen::S) == x);
    CHECK(d.act(x, PslWord::from_text("u u u")) == x);
  }
}

TEST_CASE("canonical key is a class invariant") {
  Dessin d = d3();
  std::vector<int> perm(d.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Dessin r = relabel(d, perm);
    CHECK(canonical_key(r) == canonical_key(d));
    CHECK(canonical_form(r) == canonical_form(d));
    CHECK(isomorphic(r, d));
  } while (std::next_permutation(perm.begin(), perm.end()));

  Dessin h = hexagonal();
  std::mt19937 rng(99);
  std::vector<int> lp(h.n);
  std::iota(lp.begin(), lp.end(), 0);
  for (int round = 0; round < 50; ++round) {
    std::shuffle(lp.begin(), lp.end(), rng);
    Dessin r = relabel(h, lp);
    CHECK(canonical_key(r) == canonical_key(h));
    CHECK(isomorphic(r, h));
  }

  // same index, different class
  Dessin other3 = Dessin::make({0, 1, 2}, {1, 2, 0});
  CHECK(!isomorphic(other3, d3()));
  CHECK(canonical_key(other3) != canonical_key(d3()));
  CHECK(!isomorphic(hexagonal(), genus1()));
}

TEST_CASE("pointed key follows relabeling") {
  Dessin h = hexagonal();
  std::mt19937 rng(5);
  std::vector<int> lp(h.n);
  std::iota(lp.begin(), lp.end(), 0);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(lp.begin(), lp.end(), rng);
    Dessin r = relabel(h, lp);
    for (int base = 0; base < h.n; ++base)
      CHECK(pointed_key(r, lp[base]) == pointed_key(h, base));
  }
}

TEST_CASE("ab graph and faces") {
  {
    Dessin d = d3();
    ABGraph g = ab_graph(d);
    CHECK(g.n_a == 1);
    CHECK(g.verts.size() == 3);
    auto fs = g.faces();
    std::vector<int> lens;
    for (auto& f : fs) lens.push_back(static_cast<int>(f.size()));
    std::sort(lens.begin(), lens.end());
    CHECK(lens == census(d).widths());
  }
  for (const Dessin& d : {d1(), d2(), hexagonal(), genus1(), star5()}) {
    ABGraph g = ab_graph(d);
    auto fs = g.faces();
    CHECK(fs.size() == census(d).cusps.size());
    int total = 0;
    for (auto& f : fs) total += static_cast<int>(f.size());
    CHECK(total == d.n);
  }
}

TEST_CASE("dot output") {
  std::string dot = to_dot(d3());
  CHECK(dot.find("shape=circle") != std::string::npos);
  CHECK(dot.find("shape=square") != std::string::npos);
  CHECK(dot.find("cusps=\"1,2\"") != std::string::npos);
  int edges = 0;
  for (std::size_t p = dot.find(" -- "); p != std::string::npos; p = dot.find(" -- ", p + 1))
    ++edges;
  CHECK(edges == 3);
}

TEST_CASE("gen graph primitive moves") {
  GenGraph g = GenGraph::from_dessin(d3());
  CHECK(g.et_value() == et(d3()));
  // the B2 vertex has valence 1; removing it keeps the count at 12
  int b2v = -1;
  for (std::size_t v = 0; v < g.verts.size(); ++v)
    if (g.verts[v].color == 'B' && g.valence(static_cast<int>(v)) == 1)
      b2v = static_cast<int>(v);
  REQUIRE(b2v >= 0);
  g.remove_b2(b2v);
  CHECK(g.et_value() == 12);  // delta 0: the A vertex dropped to valence 2
  CHECK_THROWS_AS(g.remove_b2(b2v), input_error);

  GenGraph h = GenGraph::from_dessin(hexagonal());
  CHECK(h.et_value() == 12);
  auto inc = h.incident(0);
  h.split_a6(0, inc[0], inc[1]);
  CHECK(h.et_value() == 24);  // split always adds 12
  CHECK_THROWS_AS(h.split_a6(0, 0, 1), input_error);
}

TEST_CASE("reduce_graph traces") {
  {
    ReduceTrace t = reduce_graph(d1());
    CHECK(t.moves.empty());
    CHECK(t.terminal.size() == 1);
    CHECK(t.terminal[0].shape == "edge");
    CHECK(t.terminal[0].et == 12);
    CHECK(t.final_et == 12);
    CHECK(!t.counterexample);
  }
  {
    ReduceTrace t = reduce_graph(d2());
    CHECK(t.moves.empty());
    CHECK(t.terminal.size() == 1);
    CHECK(t.terminal[0].shape == "chain");
    CHECK(!t.counterexample);
  }
  {
    ReduceTrace t = reduce_graph(d3());
    REQUIRE(t.moves.size() == 1);
    CHECK(t.moves[0].kind == MoveKind::ClipTree);
    CHECK(t.moves[0].delta == 0);
    REQUIRE(t.terminal.size() == 1);
    CHECK(t.terminal[0].shape == "chain");
    CHECK(t.terminal[0].et == 12);
    CHECK(!t.counterexample);
  }
  {
    ReduceTrace t = reduce_graph(hexagonal());
    REQUIRE(t.moves.size() == 2);
    CHECK(t.moves[0].kind == MoveKind::SplitA6);
    CHECK(t.moves[0].delta == 12);
    CHECK(t.moves[1].kind == MoveKind::ClipTree);
    CHECK(t.moves[1].delta == -24);
    CHECK(t.terminal.empty());
    CHECK(t.final_et == 0);
    CHECK(!t.counterexample);
  }
  {
    ReduceTrace t = reduce_graph(star5());
    REQUIRE(t.moves.size() == 1);
    CHECK(t.moves[0].kind == MoveKind::ClipTree);
    CHECK(t.moves[0].delta == -24);
    CHECK(t.terminal.empty());
    CHECK(!t.counterexample);
  }
  CHECK_THROWS_AS(reduce_graph(genus1()), input_error);
}
