#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "jmono/dessin.hpp"
#include "jmono/enumerate.hpp"
#include "jmono/error.hpp"
#include "jmono/fibers.hpp"

using namespace jmono;

namespace {

Dessin d1() { return Dessin::make({0}, {0}); }
Dessin d2() { return Dessin::make({1, 0}, {0, 1}); }
Dessin d3() { return Dessin::make({1, 0, 2}, {1, 2, 0}); }
Dessin s2id3() { return Dessin::make({0, 1, 2}, {1, 2, 0}); }
Dessin hexagonal() { return Dessin::make({3, 5, 4, 0, 2, 1}, {1, 2, 0, 4, 5, 3}); }
Dessin genus1() { return Dessin::make({3, 4, 5, 0, 1, 2}, {1, 2, 0, 4, 5, 3}); }

bool same_list(const std::vector<Dessin>& a, const std::vector<Dessin>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

bool contains_class(const std::vector<Dessin>& v, const Dessin& d) {
  for (const auto& x : v)
    if (x.n == d.n && isomorphic(x, d)) return true;
  return false;
}

// raw transitive pair count, independent of the coset-table search
long raw_pair_count(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<int>> invs, thirds;
  do {
    bool inv = true, third = true;
    for (int i = 0; i < n; ++i) {
      if (p[p[i]] != i) inv = false;
      if (p[p[p[i]]] != i) third = false;
    }
    if (inv) invs.push_back(p);
    if (third) thirds.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  long count = 0;
  for (const auto& s2 : invs)
    for (const auto& s3 : thirds) {
      std::vector<char> seen(n, 0);
      std::vector<int> stack = {0};
      seen[0] = 1;
      int reached = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : {s2[x], s3[x]})
          if (!seen[y]) {
            seen[y] = 1;
            ++reached;
            stack.push_back(y);
          }
      }
      if (reached == n) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("small indices: class lists and pointed counts") {
  auto e1 = enumerate_dessins(1);
  REQUIRE(e1.size() == 1);
  CHECK(isomorphic(e1[0], d1()));

  auto e2 = enumerate_dessins(2);
  REQUIRE(e2.size() == 1);
  CHECK(isomorphic(e2[0], d2()));

  auto e3 = enumerate_dessins(3);
  REQUIRE(e3.size() == 2);
  CHECK(contains_class(e3, d3()));
  CHECK(contains_class(e3, s2id3()));
  long pointed3 = 0;
  for (const auto& d : e3) pointed3 += pointed_count(d);
  CHECK(pointed3 == 4);

  CHECK(pointed_count(d1()) == 1);
  CHECK(pointed_count(d2()) == 1);
  CHECK(pointed_count(d3()) == 3);
  CHECK(pointed_count(s2id3()) == 1);
  CHECK(pointed_count(hexagonal()) == 1);
  CHECK(pointed_count(genus1()) == 1);
}

TEST_CASE("search agrees with brute force under every filter, index <= 7") {
  std::vector<Filter> filters;
  filters.push_back({});
  {
    Filter f;
    f.genus = 0;
    filters.push_back(f);
  }
  {
    Filter f;
    f.torsion_free = true;
    filters.push_back(f);
  }
  {
    Filter f;
    f.saturated = true;
    filters.push_back(f);
  }
  {
    Filter f;
    f.et_max = 12;
    filters.push_back(f);
  }
  {
    Filter f;
    f.et_max = 24;
    filters.push_back(f);
  }
  {
    Filter f;
    f.cusps = 1;
    filters.push_back(f);
  }
  {
    Filter f;
    f.cusps = 2;
    filters.push_back(f);
  }
  {
    Filter f;
    f.genus = 0;
    f.saturated = true;
    f.et_max = 24;
    filters.push_back(f);
  }
  for (int n = 1; n <= 7; ++n)
    for (const auto& f : filters) {
      auto fast = enumerate_dessins(n, f);
      auto slow = brute_force_dessins(n, f);
      CHECK(same_list(fast, slow));
    }
}

TEST_CASE("parallel kernel matches the serial reference") {
  {
    auto a = enumerate_dessins(9);
    auto b = enumerate_dessins_serial(9);
    CHECK(a.size() > 0);
    CHECK(same_list(a, b));
  }
  {
    Filter f;
    f.genus = 0;
    auto a = enumerate_dessins(10, f);
    auto b = enumerate_dessins_serial(10, f);
    CHECK(same_list(a, b));
  }
  {
    Filter f;
    f.torsion_free = true;
    auto a = enumerate_dessins(12, f);
    auto b = enumerate_dessins_serial(12, f);
    CHECK(a.size() > 0);
    CHECK(same_list(a, b));
  }
}

TEST_CASE("representatives are canonical, sorted, and satisfy the mod 12 law") {
  for (int n = 1; n <= 8; ++n) {
    Filter f;
    f.genus = 0;
    auto reps = enumerate_dessins(n, f);
    std::string prev;
    for (const auto& d : reps) {
      CHECK(canonical_form(d) == d);
      CHECK(et(d) % 12 == 0);
      CHECK(admits(f, d));
      std::string key = canonical_key(d);
      CHECK(prev < key);
      prev = key;
    }
  }
}

TEST_CASE("torsion-free index 6: three classes split by genus and widths") {
  Filter f;
  f.torsion_free = true;
  auto reps = enumerate_dessins(6, f);
  REQUIRE(reps.size() == 3);
  CHECK(contains_class(reps, hexagonal()));
  CHECK(contains_class(reps, genus1()));
  f.genus = 0;
  auto flat = enumerate_dessins(6, f);
  REQUIRE(flat.size() == 2);
  CHECK(contains_class(flat, hexagonal()));
  // the other flat class has cusp widths 1, 1, 4 instead of 2, 2, 2
  std::multiset<std::multiset<int>> widths;
  for (const auto& d : flat) {
    auto w = census(d).widths();
    widths.insert(std::multiset<int>(w.begin(), w.end()));
  }
  CHECK(widths == std::multiset<std::multiset<int>>{{2, 2, 2}, {1, 1, 4}});
}

TEST_CASE("pointed subgroup counts reproduce the classical sequence") {
  const long expected[8] = {0, 1, 1, 4, 8, 5, 22, 42};
  for (int n = 1; n <= 7; ++n) {
    long sum = 0;
    for (const auto& d : enumerate_dessins(n)) sum += pointed_count(d);
    CHECK(sum == expected[n]);
  }
}

TEST_CASE("pointed counts against the raw transitive pair count") {
  const long fact[7] = {1, 1, 1, 2, 6, 24, 120};
  for (int n = 1; n <= 6; ++n) {
    long sum = 0;
    for (const auto& d : enumerate_dessins(n)) sum += fact[n] * pointed_count(d);
    CHECK(sum == raw_pair_count(n));
  }
}

TEST_CASE("tree catalog: euler numbers, shapes, and marked counts") {
  const long shapes[9] = {0, 0, 1, 1, 1, 1, 2, 2, 4};
  for (int k = 2; k <= 8; ++k) {
    TreeCatalog cat = catalog_trees(k);
    CHECK(cat.k == k);
    CHECK(cat.et == 12 * k - 12);
    CHECK(cat.shapes == shapes[k]);
    CHECK(cat.marked >= cat.shapes);
  }
  CHECK(catalog_trees(2).marked == 3);
  CHECK(catalog_trees(3).marked == 4);
  CHECK(catalog_trees(4).marked == 6);
  CHECK(catalog_trees(5).marked == 12);
  CHECK(catalog_trees(6).marked == 31);
  CHECK_THROWS_AS(catalog_trees(1), input_error);
  CHECK_THROWS_AS(catalog_trees(10), input_error);
}

TEST_CASE("saturated catalog at ET 12 and 24") {
  auto small = catalog_saturated(12);
  REQUIRE(small.size() == 3);
  CHECK(isomorphic(small[0], d3()));
  CHECK(contains_class(small, hexagonal()));
  for (const auto& d : small) {
    CHECK(et(d) == 12);
    CHECK(census(d).a2.empty());
    CHECK(census(d).genus == 0);
  }

  auto big = catalog_saturated(24);
  long n3 = 0, n6 = 0, n9 = 0, n12 = 0;
  std::string prev_key;
  int prev_n = 0;
  for (const auto& d : big) {
    VertexCensus c = census(d);
    CHECK(c.genus == 0);
    CHECK(c.a2.empty());
    CHECK(et(d) == 24);
    if (d.n == 3) ++n3;
    if (d.n == 6) ++n6;
    if (d.n == 9) ++n9;
    if (d.n == 12) {
      ++n12;
      CHECK(c.b2.empty());
      CHECK(c.cusps.size() == 4);
    }
    CHECK((d.n > prev_n || (d.n == prev_n && prev_key < canonical_key(d))));
    if (d.n > prev_n) prev_key.clear();
    prev_n = d.n;
    prev_key = canonical_key(d);
  }
  CHECK(n3 == 1);
  CHECK(n12 == 6);
  // cross-check the brute-force-reachable slices
  Filter f;
  f.genus = 0;
  f.saturated = true;
  f.et_max = 24;
  long b6 = 0;
  for (const auto& d : brute_force_dessins(6, f))
    if (et(d) == 24) ++b6;
  CHECK(n6 == b6);
  CHECK(n9 >= 1);
  CHECK(long(big.size()) == n3 + n6 + n9 + n12);
  CHECK_THROWS_AS(catalog_saturated(13), input_error);
  CHECK_THROWS_AS(catalog_saturated(60), input_error);
}

TEST_CASE("rational classification") {
  auto wit = classify_surfaces("rational");
  REQUIRE(!wit.empty());

  // consistency with the plain per-index enumeration
  long expected_total = 0;
  for (int n = 1; n <= 12; ++n) {
    Filter f;
    f.genus = 0;
    f.et_max = 24;
    expected_total += long(enumerate_dessins(n, f).size());
  }
  CHECK(long(wit.size()) == expected_total);

  REQUIRE(wit[0].dessin.n == 1);
  REQUIRE(wit[0].config.fibers.size() == 3);
  CHECK(wit[0].config.fibers[0].second.label() == "II");
  CHECK(wit[0].config.fibers[1].second.label() == "III*");
  CHECK(wit[0].config.fibers[2].second.label() == "I1");

  int prev_n = 0;
  std::string prev_key;
  long n12 = 0;
  for (const auto& w : wit) {
    CHECK(w.report.r == 1);
    CHECK(w.report.cls == "rational");
    CHECK(w.report.euler_total == 12);
    CHECK(24 == et(w.dessin) + 12 * w.report.twist_count);
    CHECK(w.report.deg_j == w.dessin.n);
    CHECK(config_valid(w.config));
    CHECK(verify_product(w.dessin, w.config));
    CHECK((w.dessin.n > prev_n ||
           (w.dessin.n == prev_n && prev_key < canonical_key(w.dessin))));
    if (w.dessin.n > prev_n) prev_key.clear();
    prev_n = w.dessin.n;
    prev_key = canonical_key(w.dessin);
    if (w.dessin.n == 12) {
      ++n12;
      CHECK(w.report.twist_count == 0);
      CHECK(w.dessin.torsion_free());
      CHECK(census(w.dessin).cusps.size() == 4);
      for (const auto& [pt, ty] : w.config.fibers) {
        CHECK(pt.kind == "cusp");
        CHECK(!ty.star());
        CHECK(ty.label()[0] == 'I');
      }
    }
  }
  CHECK(n12 == 6);
  CHECK_THROWS_AS(classify_surfaces("abelian"), input_error);
}

TEST_CASE("K3 classification") {
  auto wit = classify_surfaces("K3");
  REQUIRE(!wit.empty());
  long n24 = 0;
  for (const auto& w : wit) {
    CHECK(w.report.r == 2);
    CHECK(w.report.cls == "K3");
    CHECK(w.report.euler_total == 24);
    CHECK(48 == et(w.dessin) + 12 * w.report.twist_count);
    if (w.dessin.n == 24) {
      ++n24;
      CHECK(w.report.twist_count == 0);
      CHECK(w.dessin.torsion_free());
      CHECK(census(w.dessin).cusps.size() == 6);
    }
  }
  CHECK(n24 >= 1);
  CHECK(contains_class({wit[0].dessin}, d1()));
}

TEST_CASE("input guards") {
  CHECK_THROWS_AS(enumerate_dessins(0), input_error);
  CHECK_THROWS_AS(enumerate_dessins_serial(-1), input_error);
  CHECK_THROWS_AS(brute_force_dessins(8), input_error);
  CHECK_THROWS_AS(brute_force_dessins(0), input_error);
}
