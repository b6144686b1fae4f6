// Acceptance gate: nine criteria, one PASS/FAIL line each, exit 0 only if all
// hold. Each criterion recomputes its claim from scratch through independent
// paths (enumeration vs brute force, twist rule vs matrix products, dessin
// bookkeeping vs the Weierstrass oracle).
#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jmono/arith.hpp"
#include "jmono/dessin.hpp"
#include "jmono/enumerate.hpp"
#include "jmono/error.hpp"
#include "jmono/fibers.hpp"
#include "jmono/subgroup.hpp"
#include "jmono/weierstrass.hpp"

using namespace jmono;

namespace {

struct Outcome {
  bool pass = false;
  std::string note;
};

std::vector<Dessin> genus0(int n) {
  Filter f;
  f.genus = 0;
  return enumerate_dessins(n, f);
}

std::vector<std::string> labels(const FiberAssignment& c) {
  std::vector<std::string> out;
  for (const auto& [pt, ty] : c.fibers) out.push_back(ty.label());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> labels(const std::vector<KodairaType>& v) {
  std::vector<std::string> out;
  for (const KodairaType& t : v) out.push_back(t.label());
  std::sort(out.begin(), out.end());
  return out;
}

RationalPoly P(std::vector<rational> c) { return RationalPoly(std::move(c)); }

// ---- criteria ----

Outcome ac1_et_divisibility() {
  long checked = 0;
  for (int n = 1; n <= 10; ++n)
    for (const Dessin& d : genus0(n)) {
      ++checked;
      if (et(d) % 12 != 0) {
        std::ostringstream os;
        os << "n=" << n << " class with et=" << et(d);
        return {false, os.str()};
      }
    }
  std::ostringstream os;
  os << checked << " genus-0 classes of index <= 10, every et divisible by 12";
  return {true, os.str()};
}

Outcome ac2_minimal_lifting() {
  long checked = 0;
  for (int n = 1; n <= 10; ++n)
    for (const Dessin& d : genus0(n)) {
      ++checked;
      bool by_et = et(d) % 24 == 0;
      bool by_config = config_valid(minimal_config(d));
      bool by_product = verify_product(d, minimal_config(d));
      if (by_et != by_config || by_config != by_product) {
        std::ostringstream os;
        os << "n=" << n << " disagreement: et-rule=" << by_et
           << " config=" << by_config << " product=" << by_product;
        return {false, os.str()};
      }
    }
  std::ostringstream os;
  os << "three computations agree on all " << checked << " classes";
  return {true, os.str()};
}

Outcome ac3_lifting_count() {
  long checked = 0;
  for (int n = 1; n <= 10; ++n)
    for (const Dessin& d : genus0(n)) {
      VertexCensus c = census(d);
      long k = (long)(c.a2.size() + c.b2.size() + c.cusps.size());
      if (k > 6) continue;
      ++checked;
      long got = (long)enumerate_configs(d, 0).size();
      if (got != (1L << (k - 1))) {
        std::ostringstream os;
        os << "n=" << n << " k=" << k << ": " << got << " valid assignments, expected "
           << (1L << (k - 1));
        return {false, os.str()};
      }
    }
  std::ostringstream os;
  os << "2^(k-1) valid assignments on all " << checked << " classes with k <= 6";
  return {true, os.str()};
}

Outcome ac4_tree_catalog() {
  for (int k = 2; k <= 8; ++k) {
    TreeCatalog t = catalog_trees(k);
    if (t.et != 12L * k - 12) {
      std::ostringstream os;
      os << "k=" << k << " catalog ET " << t.et << " != " << 12 * k - 12;
      return {false, os.str()};
    }
  }
  // pinned shape counts 1,1,1,2 for k=2..5
  const long expected[] = {1, 1, 1, 2};
  std::vector<long> got;
  for (int k = 2; k <= 5; ++k) got.push_back(catalog_trees(k).shapes);
  for (int i = 0; i < 4; ++i)
    if (got[i] != expected[i]) {
      std::ostringstream os;
      os << "shape counts for k=2..5 are " << got[0] << "," << got[1] << ","
         << got[2] << "," << got[3] << ", pinned expectation 1,1,1,2; the "
         << "exhaustive catalog finds a single shape at k=5 (the unique "
         << "3-vertex path of trivalent internal vertices), so the pinned "
         << "value 2 is unreachable";
      return {false, os.str()};
    }
  return {true, "ET = 12k-12 for k <= 8 and shape counts 1,1,1,2 for k = 2..5"};
}

Outcome ac5_oracle_agreement() {
  for (int n = 1; n <= 7; ++n) {
    std::vector<Dessin> fast = enumerate_dessins(n);
    std::vector<Dessin> brute = brute_force_dessins(n);
    if (fast != brute) {
      std::ostringstream os;
      os << "n=" << n << ": enumerator " << fast.size() << " classes, brute force "
         << brute.size();
      return {false, os.str()};
    }
  }
  long pointed = 0;
  for (const Dessin& d : enumerate_dessins(3)) pointed += pointed_count(d);
  if (pointed != 4) {
    std::ostringstream os;
    os << "index-3 pointed subgroup count " << pointed << " != 4";
    return {false, os.str()};
  }
  return {true, "enumerator equals brute force for n <= 7; index-3 pointed count 4"};
}

Outcome ac6_rational_classification() {
  std::vector<SurfaceWitness> all = classify_surfaces("rational");
  bool base = false;
  long semistable12 = 0;
  for (const SurfaceWitness& w : all) {
    if (w.dessin.n == 1 &&
        labels(w.config) == std::vector<std::string>{"I1", "II", "III*"})
      base = true;
    if (w.dessin.n != 12 || !w.dessin.torsion_free()) continue;
    VertexCensus c = census(w.dessin);
    bool multiplicative = true;
    for (const auto& [pt, ty] : w.config.fibers)
      if (ty.kind != FiberKind::I || ty.width < 1) multiplicative = false;
    if (c.cusps.size() != 4 || !multiplicative) continue;
    if (!verify_product(w.dessin, w.config)) {
      return {false, "a torsion-free index-12 witness fails the matrix product"};
    }
    ++semistable12;
  }
  if (!base) return {false, "missing the n=1 witness {II, III*, I1}"};
  if (semistable12 != 6) {
    std::ostringstream os;
    os << semistable12 << " torsion-free 4-cusp index-12 semistable witnesses, expected 6";
    return {false, os.str()};
  }
  std::ostringstream os;
  os << all.size() << " rational classes; n=1 witness present; 6 semistable "
     << "index-12 witnesses, products verified";
  return {true, os.str()};
}

Outcome ac7_model_accounting() {
  struct Row {
    WeierstrassModel m;
    std::vector<std::string> fibers;
    long df;
  };
  std::vector<Row> rows;
  rows.push_back({WeierstrassModel::make(1, P({0, 1}), P({1})),
                  {"I1", "I1", "I1", "III*"},
                  9});
  rows.push_back({WeierstrassModel::make(1, P({1}), P({0, 1})), {"I1", "I1", "II*"}, 10});
  rows.push_back({WeierstrassModel::make(
                      1, P({rational(-1, 3), rational(1, 3), rational(-1, 3)}),
                      P({rational(-2, 27), rational(1, 9), rational(1, 9),
                         rational(-2, 27)})),
                  {"I2", "I2", "I2*"},
                  6});
  for (const Row& row : rows) {
    ModelReport rep = model_report(row.m);
    if (rep.euler_total != 12 || labels(rep.fibers) != row.fibers ||
        rep.df_total != row.df) {
      std::ostringstream os;
      os << "worked model reports euler=" << rep.euler_total << " df=" << rep.df_total;
      return {false, os.str()};
    }
  }

  // defect lower bounds per fiber kind
  auto df_bound = [](const KodairaType& t) -> long {
    switch (t.kind) {
      case FiberKind::I: return 0;
      case FiberKind::Istar: return 6;
      case FiberKind::II: return 2;
      case FiberKind::III: return 3;
      case FiberKind::IV: return 4;
      case FiberKind::IVstar: return 8;
      case FiberKind::IIIstar: return 9;
      case FiberKind::IIstar: return 10;
    }
    return 0;
  };
  std::mt19937 rng(424242u);
  auto rand_poly = [&rng](int d) {
    if (d < 0) return RationalPoly();
    std::vector<rational> c(d + 1);
    for (int i = 0; i < d; ++i) c[i] = rational((int)(rng() % 9) - 4);
    c[d] = rational((int)(rng() % 8) - 4);
    if (c[d] == 0) c[d] = 1;
    return RationalPoly(std::move(c));
  };
  int made = 0;
  while (made < 100) {
    int r = 1 + (int)(rng() % 2);
    int dp = (int)(rng() % (4 * r + 2)) - 1;
    int dq = (int)(rng() % (6 * r + 2)) - 1;
    if (dp < 0 && dq < 0) continue;
    if (dp <= 4 * r - 4 && dq <= 6 * r - 6) continue;  // stay honestly inside F_r
    WeierstrassModel m;
    try {
      m = WeierstrassModel::make(r, rand_poly(dp), rand_poly(dq));
    } catch (const input_error&) {
      continue;
    }
    ++made;
    ModelReport rep = model_report(m);
    if (rep.shifts == 0 && rep.euler_total != 12L * r) {
      std::ostringstream os;
      os << "random model #" << made << " (r=" << r << ") has euler "
         << rep.euler_total;
      return {false, os.str()};
    }
    for (const PlaceReport& pl : rep.places)
      if (pl.df < df_bound(pl.kodaira)) {
        std::ostringstream os;
        os << "random model #" << made << " place " << pl.place << " df " << pl.df
           << " below the bound for " << pl.kodaira.label();
        return {false, os.str()};
      }
  }
  return {true,
          "3 worked models match (DF 9, 10, 6); 100 random models: euler 12r and "
          "defect bounds hold"};
}

Outcome ac8_twist_partner_law() {
  auto eval = [](const RationalPoly& f, const rational& x) {
    rational acc = 0;
    for (int i = f.deg(); i >= 0; --i) acc = acc * x + f.at(i);
    return acc;
  };
  // type/df seen at one rational point; smooth points read as I0 with df 0
  auto at_point = [&](const ModelReport& rep, const rational& x) {
    for (const PlaceReport& pl : rep.places)
      if (!pl.factor.is_zero() && eval(pl.factor, x) == 0)
        return std::pair<KodairaType, long>(pl.kodaira, pl.df);
    return std::pair<KodairaType, long>(KodairaType{}, 0L);
  };
  auto at_infinity = [](const ModelReport& rep) {
    for (const PlaceReport& pl : rep.places)
      if (pl.factor.is_zero()) return std::pair<KodairaType, long>(pl.kodaira, pl.df);
    return std::pair<KodairaType, long>(KodairaType{}, 0L);
  };
  auto flipped = [](std::pair<KodairaType, long> b, std::pair<KodairaType, long> a) {
    return a.first == b.first.partner() &&
           (a.second - b.second == 6 || b.second - a.second == 6);
  };

  RationalPoly t = P({0, 1});
  struct Case {
    WeierstrassModel m;
    RationalPoly u;  // linear, so the twisted locus is its root and infinity
  };
  std::vector<Case> cases;
  cases.push_back({WeierstrassModel::make(1, P({0, 1}), P({1})), t});
  cases.push_back({WeierstrassModel::make(1, P({0, 1}), P({1})), P({-1, 1})});
  cases.push_back({WeierstrassModel::make(1, P({1}), P({0, 1})), t});
  cases.push_back({WeierstrassModel::make(1, P({1}), P({0, 1})), P({-1, 1})});
  cases.push_back({WeierstrassModel::make(
                       1, P({rational(-1, 3), rational(1, 3), rational(-1, 3)}),
                       P({rational(-2, 27), rational(1, 9), rational(1, 9),
                          rational(-2, 27)})),
                   t});
  int flips = 0;
  for (const Case& cs : cases) {
    ModelReport before = model_report(cs.m);
    ModelReport after = model_report(quadratic_twist(cs.m, cs.u));
    rational root = -cs.u.at(0) / cs.u.at(1);
    // the twisted locus: the root of u and (deg u odd) infinity
    auto b0 = at_point(before, root), a0 = at_point(after, root);
    auto bi = at_infinity(before), ai = at_infinity(after);
    if (!flipped(b0, a0) || !flipped(bi, ai)) {
      std::ostringstream os;
      os << "twist by " << poly_str(cs.u) << ": root " << b0.first.label() << " -> "
         << a0.first.label() << " (df " << b0.second << " -> " << a0.second
         << "), infinity " << bi.first.label() << " -> " << ai.first.label();
      return {false, os.str()};
    }
    flips += 2;
    // sample untwisted rational points stay put
    for (int x = -1; x <= 2; ++x) {
      if (rational(x) == root) continue;
      auto b = at_point(before, rational(x)), a = at_point(after, rational(x));
      if (!(b == a)) {
        std::ostringstream os;
        os << "untwisted point t=" << x << " changed: " << b.first.label() << " -> "
           << a.first.label();
        return {false, os.str()};
      }
    }
    // finite places coprime to u keep their name, type and defect; places whose
    // cluster contained the root may split, and the split-off part must divide
    // its old cluster and keep the old type
    std::map<std::string, std::pair<std::string, long>> b_stable;
    for (const PlaceReport& pl : before.places)
      if (!pl.factor.is_zero() && eval(pl.factor, root) != 0)
        b_stable[pl.place] = {pl.kodaira.label(), pl.df};
    for (const PlaceReport& pl : after.places) {
      if (pl.factor.is_zero() || eval(pl.factor, root) == 0) continue;
      std::pair<std::string, long> got = {pl.kodaira.label(), pl.df};
      if (auto it = b_stable.find(pl.place); it != b_stable.end()) {
        if (it->second != got)
          return {false, "the places away from the twist locus were disturbed"};
        b_stable.erase(it);
        continue;
      }
      bool split_off = false;
      for (const PlaceReport& old : before.places)
        if (!old.factor.is_zero() && eval(old.factor, root) == 0 &&
            gcd_poly(old.factor, pl.factor) == pl.factor &&
            std::pair<std::string, long>{old.kodaira.label(), old.df} == got)
          split_off = true;
      if (!split_off)
        return {false, "an unexpected place appeared away from the twist locus"};
    }
    if (!b_stable.empty())
      return {false, "a place away from the twist locus disappeared"};
    if (after.df_total != before.df_total)
      return {false, "df_total is not twist-invariant"};
  }
  std::ostringstream os;
  os << flips << " twisted places across 5 model/twist pairs: partner types, df "
     << "steps exactly 6, all other places unchanged";
  return {true, os.str()};
}

Outcome ac9_round_trips() {
  std::mt19937 rng(777u);
  for (int i = 0; i < 1000; ++i) {
    MatSL2 m = MatSL2::identity();
    int len = 1 + (int)(rng() % 12);
    for (int j = 0; j < len; ++j) {
      long e = (long)(rng() % 7) - 3;
      m = m * pow(kT, e) * kS;
    }
    WordLift lift = matrix_to_word(m);
    MatSL2 back = word_to_matrix(lift.word);
    MatSL2 want = lift.sign > 0 ? m : -m;
    if (!(back == want)) {
      std::ostringstream os;
      os << "word round trip failed at sample " << i << " for " << m.str();
      return {false, os.str()};
    }
  }
  long folded = 0;
  for (int n = 1; n <= 8; ++n)
    for (const Dessin& d : genus0(n)) {
      std::vector<MatSL2> gens;
      for (const GeneratorInfo& g : generators(d)) gens.push_back(word_to_matrix(g.word));
      FoldResult f = fold_generated(gens);
      if (!isomorphic(f.psl, d)) {
        std::ostringstream os;
        os << "fold of the n=" << n << " generators is not isomorphic to the dessin";
        return {false, os.str()};
      }
      ++folded;
    }
  std::ostringstream os;
  os << "1000 word/matrix round trips exact; " << folded
     << " generator folds reproduce their dessins";
  return {true, os.str()};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {"et divisibility by 12", ac1_et_divisibility},
      {"minimal lifting equivalence", ac2_minimal_lifting},
      {"2^(k-1) lifting count", ac3_lifting_count},
      {"tree catalog", ac4_tree_catalog},
      {"enumerator vs brute force", ac5_oracle_agreement},
      {"rational classification", ac6_rational_classification},
      {"model accounting", ac7_model_accounting},
      {"twist partner law", ac8_twist_partner_law},
      {"round trips", ac9_round_trips},
  };
  int failures = 0;
  for (std::size_t i = 0; i < sizeof entries / sizeof entries[0]; ++i) {
    Outcome o;
    try {
      o = entries[i].fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("AC%zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                entries[i].name, o.note.c_str());
  }
  if (failures) std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
