#include "jmono/subgroup.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <queue>
#include <utility>

#include "jmono/error.hpp"

namespace jmono {

namespace {

PslWord one_letter(PslGen g) {
  PslWord w;
  w.push(g);
  return w;
}

}  // namespace

SchreierTable schreier(const Dessin& d, int base) {
  if (base < 0 || base >= d.n) throw input_error("schreier: base point out of range");
  SchreierTable st;
  st.base = base;
  st.transversal.assign(d.n, PslWord{});
  st.tree_s.assign(d.n, 0);
  st.tree_u.assign(d.n, 0);
  std::vector<char> seen(d.n, 0);
  seen[base] = 1;
  std::queue<int> q;
  q.push(base);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    int ys = d.s2[x];
    if (!seen[ys]) {
      seen[ys] = 1;
      st.tree_s[x] = 1;
      st.transversal[ys] = st.transversal[x] * one_letter(PslGen::S);
      q.push(ys);
    }
    int yu = d.s3[x];
    if (!seen[yu]) {
      seen[yu] = 1;
      st.tree_u[x] = 1;
      st.transversal[yu] = st.transversal[x] * one_letter(PslGen::U);
      q.push(yu);
    }
  }
  return st;
}

namespace {

PslWord schreier_gen(const Dessin& d, const SchreierTable& st, int x, PslGen g) {
  return st.transversal[x] * one_letter(g) * st.transversal[d.act(x, g)].inverse();
}

}  // namespace

std::vector<GeneratorInfo> generators(const Dessin& d, int base) {
  SchreierTable st = schreier(d, base);
  VertexCensus c = census(d);
  std::vector<GeneratorInfo> out;
  for (std::size_t i = 0; i < c.a2.size(); ++i) {
    GeneratorInfo g;
    g.word = schreier_gen(d, st, c.a2[i], PslGen::U);
    g.kind = "elliptic3";
    g.order = 3;
    g.attach = int(i);
    out.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < c.b2.size(); ++i) {
    GeneratorInfo g;
    g.word = schreier_gen(d, st, c.b2[i], PslGen::S);
    g.kind = "elliptic2";
    g.order = 2;
    g.attach = int(i);
    out.push_back(std::move(g));
  }
  for (const auto& pr : c.b4) {
    if (st.tree_s[pr[0]] || st.tree_s[pr[1]]) continue;
    GeneratorInfo g;
    g.word = schreier_gen(d, st, pr[0], PslGen::S);
    g.kind = "free";
    out.push_back(std::move(g));
  }
  for (const auto& cyc : c.a6) {
    // around the 3-cycle the Schreier generators multiply to the identity,
    // so the last nontrivial one is redundant
    std::vector<PslWord> cand;
    int x = cyc[0];
    for (int k = 0; k < 3; ++k, x = d.s3[x]) {
      if (st.tree_u[x]) continue;
      PslWord w = schreier_gen(d, st, x, PslGen::U);
      if (!w.empty()) cand.push_back(std::move(w));
    }
    if (cand.empty()) continue;
    cand.pop_back();
    for (auto& w : cand) {
      GeneratorInfo g;
      g.word = std::move(w);
      g.kind = "free";
      out.push_back(std::move(g));
    }
  }
  return out;
}

std::vector<PslWord> schreier_generators(const Dessin& d, int base) {
  SchreierTable st = schreier(d, base);
  std::vector<PslWord> out;
  for (int x = 0; x < d.n; ++x) {
    for (PslGen g : {PslGen::S, PslGen::U}) {
      PslWord w = schreier_gen(d, st, x, g);
      if (!w.empty()) out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<PslWord> cusp_words(const Dessin& d, int base) {
  SchreierTable st = schreier(d, base);
  VertexCensus c = census(d);
  PslWord us = one_letter(PslGen::U) * one_letter(PslGen::S);
  std::vector<PslWord> out;
  out.reserve(c.cusps.size());
  for (const auto& cyc : c.cusps)
    out.push_back(conjugate(psl_pow(us, long(cyc.size())), st.transversal[cyc[0]]));
  return out;
}

bool contains(const Dessin& d, int base, const PslWord& w) {
  if (base < 0 || base >= d.n) throw input_error("contains: base point out of range");
  return d.act(base, w) == base;
}

// ---------------------------------------------------------------------------
// boundary loops
//
// The quotient sphere is triangulated by 2n triangles, a mirror pair (x,+),
// (x,-) per point, with edge slots 0 (AB), 1 (AI), 2 (BI) and gluings
//   AB: (x,+) ~ (x,-),  AI: (x,+) ~ (s3 x,-),  BI: (x,-) ~ (s2 x,+).
// Crossing a wall picks up a letter of the projective group: AI contributes
// u (leaving a + triangle) or u2 (leaving a -), BI contributes s, AB nothing.
// A depth-first contour around the dual spanning tree visits every triangle
// corner; each branch point or cusp is assigned the full rotation word around
// its first contour visit, conjugated back to the base triangle, and those
// loops multiply to the identity in the order the contour discovers them.
// ---------------------------------------------------------------------------

namespace {

constexpr std::array<int, 3> kOrderPos{0, 1, 2};
constexpr std::array<int, 3> kOrderNeg{0, 2, 1};

struct CornerEv {
  int kind = -1;  // 0 a2, 1 b2, 2 cusp; -1 marks a contour break
  int idx = -1;   // census index
  int tri = -1;
  int p = -1, q = -1;  // corner swept from edge slot p to edge slot q
  PslWord w;           // tree holonomy from the root at sweep time
};

struct Contour {
  const Dessin& d;
  std::vector<int> a2_idx, b2_idx, cusp_idx;
  std::vector<char> visited;
  std::vector<std::array<char, 3>> tree;
  PslWord w;
  std::vector<CornerEv> items;

  explicit Contour(const Dessin& dd, const VertexCensus& c)
      : d(dd),
        a2_idx(dd.n, -1),
        b2_idx(dd.n, -1),
        cusp_idx(dd.n, -1),
        visited(2 * dd.n, 0),
        tree(2 * dd.n, {0, 0, 0}) {
    for (std::size_t i = 0; i < c.a2.size(); ++i) a2_idx[c.a2[i]] = int(i);
    for (std::size_t i = 0; i < c.b2.size(); ++i) b2_idx[c.b2[i]] = int(i);
    for (std::size_t i = 0; i < c.cusps.size(); ++i)
      for (int x : c.cusps[i]) cusp_idx[x] = int(i);
  }

  std::pair<int, int> neighbor(int t, int slot) const {
    int x = t >> 1;
    bool neg = t & 1;
    switch (slot) {
      case 0:
        return {t ^ 1, 0};
      case 1:
        return {neg ? 2 * d.s3_inv(x) : 2 * d.s3[x] + 1, 1};
      default:
        return {neg ? 2 * d.s2[x] : 2 * d.s2[x] + 1, 2};
    }
  }

  void cross(int t, int slot, PslWord* into) const {
    if (slot == 1)
      into->push((t & 1) ? PslGen::U2 : PslGen::U);
    else if (slot == 2)
      into->push(PslGen::S);
  }

  void emit_corner(int t, int p, int q) {
    int lo = std::min(p, q), hi = std::max(p, q);
    int x = t >> 1;
    bool neg = t & 1;
    CornerEv ev;
    if (lo == 0 && hi == 1) {
      if (a2_idx[x] < 0) return;
      ev.kind = 0;
      ev.idx = a2_idx[x];
    } else if (lo == 0 && hi == 2) {
      if (b2_idx[x] < 0) return;
      ev.kind = 1;
      ev.idx = b2_idx[x];
    } else {
      ev.kind = 2;
      ev.idx = cusp_idx[neg ? d.s3_inv(x) : x];
    }
    ev.tri = t;
    ev.p = p;
    ev.q = q;
    ev.w = w;
    items.push_back(std::move(ev));
  }

  void emit_break() { items.push_back(CornerEv{}); }

  static const std::array<int, 3>& order_of(int t) {
    return (t & 1) ? kOrderNeg : kOrderPos;
  }

  struct Frame {
    int t;
    int entry;  // -1 for the root
    int step = 0;
  };

  // slots for the contour through a frame: corners on even steps, edges on odd
  void plan(const Frame& f, int step, bool* is_corner, int* a, int* b) const {
    const auto& ord = order_of(f.t);
    int i0 = 0;
    if (f.entry >= 0)
      while (ord[i0] != f.entry) ++i0;
    auto at = [&](int k) { return ord[(i0 + k) % 3]; };
    // child sequence: corner(e,s1) e1 corner(s1,s2) e2 corner(s2,e)
    // root sequence:  corner(s2,s0) e0 corner(s0,s1) e1 corner(s1,s2) e2
    int shift = f.entry >= 0 ? 0 : 2;
    int pos = step / 2;
    if (step % 2 == 0) {
      *is_corner = true;
      *a = at((pos + shift) % 3);
      *b = at((pos + shift + 1) % 3);
    } else {
      *is_corner = false;
      *a = at((pos + shift + 1) % 3);
    }
  }

  void run(int root) {
    std::vector<Frame> stack;
    visited[root] = 1;
    stack.push_back({root, -1, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      int last_step = f.entry >= 0 ? 4 : 5;
      if (f.step > last_step) {
        int t = f.t, entry = f.entry;
        stack.pop_back();
        if (entry >= 0) cross(t, entry, &w);
        continue;
      }
      bool is_corner = false;
      int a = 0, b = 0;
      plan(f, f.step, &is_corner, &a, &b);
      ++f.step;
      if (is_corner) {
        emit_corner(f.t, a, b);
        continue;
      }
      auto [nt, ns] = neighbor(f.t, a);
      if (!visited[nt]) {
        visited[nt] = 1;
        tree[f.t][a] = tree[nt][ns] = 1;
        cross(f.t, a, &w);
        stack.push_back({nt, ns, 0});
      } else if (!tree[f.t][a]) {
        emit_break();
      } else {
        throw internal_error("contour revisited a tree wall");
      }
    }
  }
};

// full rotation word around the corner's vertex, starting with the sweep
// continuation (slot q) and ending by crossing slot p back into ev.tri
PslWord ring_from(const Contour& cx, const CornerEv& ev, int fan) {
  int lo, hi;
  if (ev.kind == 0) {
    lo = 0;
    hi = 1;
  } else if (ev.kind == 1) {
    lo = 0;
    hi = 2;
  } else {
    lo = 1;
    hi = 2;
  }
  PslWord r;
  int cur = ev.tri, slot = ev.q;
  int land_t = -1, land_s = -1;
  for (int k = 0; k < fan; ++k) {
    cx.cross(cur, slot, &r);
    auto [nt, ns] = cx.neighbor(cur, slot);
    land_t = nt;
    land_s = ns;
    cur = nt;
    slot = (ns == lo) ? hi : lo;
  }
  if (land_t != ev.tri || land_s != ev.p)
    throw internal_error("boundary ring did not close");
  return r;
}

void split_loop(int kind, int width, const PslWord& loop, PslWord* conj,
                PslWord* core) {
  std::vector<PslGen> v = loop.letters;
  PslWord c;
  // cyclic reduction in Z2*Z3: ends either cancel exactly or, for two equal
  // u-type letters, merge into one (u.u = u2); both shrink the conjugator side
  bool changed = true;
  while (changed && v.size() >= 2) {
    changed = false;
    if (v.back() == psl_inv(v.front())) {
      c.push(v.front());
      v.erase(v.begin());
      v.pop_back();
      changed = true;
    } else if (v.back() == v.front() && v.front() != PslGen::S) {
      PslGen m = v.front() == PslGen::U ? PslGen::U2 : PslGen::U;
      c.push(v.front());
      v.erase(v.begin());
      v.pop_back();
      v.push_back(m);
      changed = true;
    }
  }
  if (v.empty()) throw internal_error("boundary loop is trivial");
  if (kind == 2 && v.front() == PslGen::S) {
    // rotate one letter so the cusp core starts with u
    c.push(PslGen::S);
    v.erase(v.begin());
    v.push_back(PslGen::S);
  }
  bool ok = false;
  if (kind == 0) {
    ok = v.size() == 1 && v[0] == PslGen::U2;
  } else if (kind == 1) {
    ok = v.size() == 1 && v[0] == PslGen::S;
  } else {
    ok = int(v.size()) == 2 * width;
    for (std::size_t i = 0; ok && i < v.size(); ++i)
      ok = v[i] == (i % 2 == 0 ? PslGen::U : PslGen::S);
  }
  if (!ok) {
    PslWord bad;
    for (PslGen g : v) bad.letters.push_back(g);
    throw internal_error("boundary loop has an unexpected local form: kind " +
                         std::to_string(kind) + " width " +
                         std::to_string(width) + " core " + bad.text() +
                         " loop " + loop.text());
  }
  core->letters = std::move(v);
  *conj = std::move(c);
}

}  // namespace

std::vector<BoundaryLoop> boundary_words(const Dessin& d) {
  VertexCensus c = census(d);
  if (c.genus != 0) throw input_error("boundary words require a genus 0 dessin");
  Contour cx(d, c);
  cx.run(0);

  // rotate the cyclic item stream to start at a break
  std::size_t first_break = cx.items.size();
  for (std::size_t i = 0; i < cx.items.size(); ++i)
    if (cx.items[i].kind < 0) {
      first_break = i;
      break;
    }
  if (first_break == cx.items.size())
    throw internal_error("contour produced no boundary walls");
  std::rotate(cx.items.begin(), cx.items.begin() + long(first_break),
              cx.items.end());

  // first maximal run of corner sweeps per vertex, in contour order
  std::map<std::pair<int, int>, std::size_t> first_run;
  std::vector<CornerEv> run_heads;
  bool open = false;
  std::pair<int, int> open_v{-1, -1};
  for (const auto& ev : cx.items) {
    if (ev.kind < 0) {
      open = false;
      continue;
    }
    std::pair<int, int> v{ev.kind, ev.idx};
    if (open && v == open_v) continue;
    open = true;
    open_v = v;
    if (!first_run.count(v)) {
      first_run[v] = run_heads.size();
      run_heads.push_back(ev);
    }
  }
  std::size_t expect = c.a2.size() + c.b2.size() + c.cusps.size();
  if (run_heads.size() != expect)
    throw internal_error("contour missed a branch point");

  std::vector<BoundaryLoop> out;
  PslWord product;
  for (const auto& ev : run_heads) {
    int width = ev.kind == 2 ? int(c.cusps[ev.idx].size()) : 0;
    int fan = ev.kind == 2 ? 2 * width : 2;
    PslWord ring = ring_from(cx, ev, fan);
    BoundaryLoop bl;
    bl.word = conjugate(ring.inverse(), ev.w);
    bl.id = std::string(ev.kind == 0 ? "a2:" : ev.kind == 1 ? "b2:" : "cusp:") +
            std::to_string(ev.idx);
    split_loop(ev.kind, width, bl.word, &bl.conj, &bl.core);
    if (d.act(0, bl.word) != 0)
      throw internal_error("boundary loop left the point stabilizer");
    product.push_word(bl.word);
    out.push_back(std::move(bl));
  }
  if (!product.empty())
    throw internal_error("boundary loops do not multiply to the identity");
  return out;
}

// ---------------------------------------------------------------------------
// coset enumeration (HLT with coincidence handling)
// letters: 0 x, 1 x^-1, 2 y, 3 y^-1
// ---------------------------------------------------------------------------

namespace {

constexpr int kInv[4] = {1, 0, 3, 2};

class Enumerator {
 public:
  Enumerator(std::vector<std::vector<int>> relators, long cap)
      : rel_(std::move(relators)), cap_(std::max(cap, 2L)) {
    tab_.push_back({-1, -1, -1, -1});
    rep_.push_back(0);
  }

  void subgroup_word(const std::vector<int>& w) { scan_fill(0, w); }

  void run() {
    for (std::size_t c = 0; c < tab_.size(); ++c) {
      if (find(int(c)) != int(c)) continue;
      for (const auto& r : rel_) {
        scan_fill(int(c), r);
        if (find(int(c)) != int(c)) break;
      }
    }
  }

  long live() const { return n_live_; }

  // canonical renumbering of live cosets, breadth-first over letters x then y
  std::vector<std::array<int, 4>> compact() const {
    std::vector<int> num(tab_.size(), -1);
    std::vector<int> order;
    num[0] = 0;
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int g : {0, 2, 1, 3}) {
        int t = tab_[order[i]][g];
        if (t < 0) throw internal_error("coset table incomplete after enumeration");
        t = find_const(t);
        if (num[t] < 0) {
          num[t] = int(order.size());
          order.push_back(t);
        }
      }
    }
    if (long(order.size()) != live())
      throw internal_error("coset table is not transitive");
    std::vector<std::array<int, 4>> out(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int g = 0; g < 4; ++g) out[i][g] = num[find_const(tab_[order[i]][g])];
    return out;
  }

 private:
  int find(int c) {
    while (rep_[c] != c) {
      rep_[c] = rep_[rep_[c]];
      c = rep_[c];
    }
    return c;
  }
  int find_const(int c) const {
    while (rep_[c] != c) c = rep_[c];
    return c;
  }

  int define(int c, int g) {
    long total_cap = 4 * cap_ + 16;
    if (live() >= cap_ || long(tab_.size()) >= total_cap)
      throw input_error(
          "coset enumeration exceeded its limit; the subgroup index is too "
          "large or infinite");
    tab_.push_back({-1, -1, -1, -1});
    rep_.push_back(int(tab_.size()) - 1);
    ++n_live_;
    int d = int(tab_.size()) - 1;
    join(c, g, d);
    drain();
    return d;
  }

  // set c --g--> d and d --g^-1--> c, queueing coincidences on conflicts
  void join(int c, int g, int d) {
    int old = tab_[c][g];
    if (old >= 0 && find(old) != d) queue_.emplace_back(find(old), d);
    tab_[c][g] = d;
    int back = tab_[d][kInv[g]];
    if (back >= 0 && find(back) != c) queue_.emplace_back(find(back), c);
    tab_[d][kInv[g]] = c;
  }

  void drain() {
    while (!queue_.empty()) {
      auto [a, b] = queue_.front();
      queue_.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      rep_[b] = a;
      --n_live_;
      std::array<int, 4> moved = tab_[b];
      tab_[b] = {-1, -1, -1, -1};
      for (int g = 0; g < 4; ++g) {
        if (moved[g] < 0) continue;
        join(a, g, find(moved[g]));
      }
    }
  }

  void scan_fill(int c, const std::vector<int>& w) {
    while (true) {
      c = find(c);
      int front = c;
      std::size_t i = 0;
      while (i < w.size() && tab_[front][w[i]] >= 0) {
        front = find(tab_[front][w[i]]);
        ++i;
      }
      if (i == w.size()) {
        if (front != c) {
          queue_.emplace_back(front, c);
          drain();
        }
        return;
      }
      int back = c;
      std::size_t j = w.size();
      while (j > i && tab_[back][kInv[w[j - 1]]] >= 0) {
        back = find(tab_[back][kInv[w[j - 1]]]);
        --j;
      }
      if (i == j) {
        if (front != back) {
          queue_.emplace_back(front, back);
          drain();
        }
        return;
      }
      if (i + 1 == j) {
        join(front, w[i], back);
        drain();
        return;
      }
      define(front, w[i]);
    }
  }

  std::vector<std::vector<int>> rel_;
  long cap_;
  long n_live_ = 1;
  std::vector<std::array<int, 4>> tab_;
  std::vector<int> rep_;
  std::deque<std::pair<int, int>> queue_;
};

void append_psl(const PslWord& w, std::vector<int>* psl, std::vector<int>* sl) {
  for (PslGen g : w.letters) {
    switch (g) {
      case PslGen::S:
        psl->push_back(0);
        sl->push_back(0);
        break;
      case PslGen::U:
        psl->push_back(2);
        sl->push_back(2);
        break;
      case PslGen::U2:
        psl->push_back(2);
        psl->push_back(2);
        sl->push_back(2);
        sl->push_back(2);
        break;
    }
  }
}

}  // namespace

FoldResult fold_generated(const std::vector<MatSL2>& gens, long max_cosets) {
  std::vector<std::vector<int>> psl_words, sl_words;
  for (const auto& m : gens) {
    WordLift lift = matrix_to_word(m);
    std::vector<int> pw, sw;
    append_psl(lift.word, &pw, &sw);
    if (lift.sign < 0) {
      sw.push_back(0);
      sw.push_back(0);
    }
    psl_words.push_back(std::move(pw));
    sl_words.push_back(std::move(sw));
  }

  Enumerator psl({{0, 0}, {2, 2, 2}}, max_cosets);
  for (const auto& w : psl_words) psl.subgroup_word(w);
  psl.run();
  std::vector<std::array<int, 4>> pt = psl.compact();

  Enumerator sl({{0, 0, 0, 0}, {0, 0, 3, 3, 3}}, 2 * max_cosets);
  for (const auto& w : sl_words) sl.subgroup_word(w);
  sl.run();
  std::vector<std::array<int, 4>> st = sl.compact();

  FoldResult out;
  std::vector<int> s2(pt.size()), s3(pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) {
    s2[i] = pt[i][0];
    s3[i] = pt[i][2];
  }
  out.psl = Dessin::make(std::move(s2), std::move(s3));
  out.sl_index = long(st.size());
  out.sl_s.resize(st.size());
  out.sl_u.resize(st.size());
  for (std::size_t i = 0; i < st.size(); ++i) {
    out.sl_s[i] = st[i][0];
    out.sl_u[i] = st[i][2];
  }
  if (out.sl_index == long(out.psl.n))
    out.contains_minus_one = true;
  else if (out.sl_index == 2L * out.psl.n)
    out.contains_minus_one = false;
  else
    throw internal_error("linear and projective coset counts disagree");
  return out;
}

FoldResult fold_pointed(const Dessin& d, int base, long max_cosets) {
  std::vector<MatSL2> mats;
  for (const auto& g : generators(d, base)) mats.push_back(word_to_matrix(g.word));
  return fold_generated(mats, max_cosets);
}

int act_sl(const FoldResult& f, const MatSL2& m) {
  WordLift lift = matrix_to_word(m);
  int c = 0;
  for (PslGen g : lift.word.letters) {
    switch (g) {
      case PslGen::S:
        c = f.sl_s[c];
        break;
      case PslGen::U:
        c = f.sl_u[c];
        break;
      case PslGen::U2:
        c = f.sl_u[f.sl_u[c]];
        break;
    }
  }
  if (lift.sign < 0) c = f.sl_s[f.sl_s[c]];
  return c;
}

}  // namespace jmono
