#include "jmono/dessin.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace jmono {

namespace {

void check_perm(const std::vector<int>& p, int n, const char* name) {
  std::vector<char> seen(n, 0);
  for (int x : p) {
    if (x < 0 || x >= n) throw input_error(std::string(name) + ": value out of range");
    if (seen[x]) throw input_error(std::string(name) + ": not a permutation");
    seen[x] = 1;
  }
}

std::string serialize_tables(const std::vector<int>& s2, const std::vector<int>& s3) {
  int n = static_cast<int>(s2.size());
  std::string out;
  if (n <= 255) {
    out.reserve(2 * n);
    for (int x : s2) out.push_back(static_cast<char>(x));
    for (int x : s3) out.push_back(static_cast<char>(x));
  } else {
    out.reserve(4 * n);
    auto put = [&](int x) {
      out.push_back(static_cast<char>(x >> 8));
      out.push_back(static_cast<char>(x & 0xff));
    };
    for (int x : s2) put(x);
    for (int x : s3) put(x);
  }
  return out;
}

// breadth-first relabeling that starts at `base`; neighbors are taken s2 first
std::string bfs_key(const Dessin& d, int base, std::vector<int>* label_out) {
  std::vector<int> label(d.n, -1), order;
  order.reserve(d.n);
  label[base] = 0;
  order.push_back(base);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int p = order[i];
    for (int q : {d.s2[p], d.s3[p]}) {
      if (label[q] < 0) {
        label[q] = static_cast<int>(order.size());
        order.push_back(q);
      }
    }
  }
  if (static_cast<int>(order.size()) != d.n)
    throw internal_error("bfs_key: dessin not transitive");
  std::vector<int> s2n(d.n), s3n(d.n);
  for (int p = 0; p < d.n; ++p) {
    s2n[label[p]] = label[d.s2[p]];
    s3n[label[p]] = label[d.s3[p]];
  }
  if (label_out) *label_out = label;
  return serialize_tables(s2n, s3n);
}

}  // namespace

Dessin Dessin::make(std::vector<int> s2, std::vector<int> s3) {
  int n = static_cast<int>(s2.size());
  if (n <= 0) throw input_error("dessin: empty point set");
  if (s3.size() != s2.size()) throw input_error("dessin: table sizes differ");
  check_perm(s2, n, "s2");
  check_perm(s3, n, "s3");
  for (int x = 0; x < n; ++x) {
    if (s2[s2[x]] != x) throw input_error("dessin: s2 is not an involution");
    if (s3[s3[s3[x]]] != x) throw input_error("dessin: s3^3 != id");
  }
  // transitivity
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : {s2[x], s3[x]}) {
      if (!seen[y]) {
        seen[y] = 1;
        ++cnt;
        q.push(y);
      }
    }
  }
  if (cnt != n) throw input_error("dessin: action is not transitive");
  Dessin d;
  d.n = n;
  d.s2 = std::move(s2);
  d.s3 = std::move(s3);
  return d;
}

bool Dessin::torsion_free() const {
  for (int x = 0; x < n; ++x)
    if (s2[x] == x || s3[x] == x) return false;
  return true;
}

int Dessin::act(int x, PslGen g) const {
  switch (g) {
    case PslGen::S: return s2[x];
    case PslGen::U: return s3[x];
    case PslGen::U2: return s3[s3[x]];
  }
  throw internal_error("act: bad letter");
}

int Dessin::act(int x, const PslWord& w) const {
  for (PslGen g : w.letters) x = act(x, g);
  return x;
}

std::vector<int> VertexCensus::widths() const {
  std::vector<int> w;
  w.reserve(cusps.size());
  for (const auto& c : cusps) w.push_back(static_cast<int>(c.size()));
  std::sort(w.begin(), w.end());
  return w;
}

std::vector<std::string> VertexCensus::point_ids() const {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < a2.size(); ++i) ids.push_back("a2:" + std::to_string(i));
  for (std::size_t i = 0; i < b2.size(); ++i) ids.push_back("b2:" + std::to_string(i));
  for (std::size_t i = 0; i < cusps.size(); ++i) ids.push_back("cusp:" + std::to_string(i));
  return ids;
}

VertexCensus census(const Dessin& d) {
  VertexCensus c;
  std::vector<char> done(d.n, 0);
  for (int x = 0; x < d.n; ++x) {
    if (done[x]) continue;
    if (d.s3[x] == x) {
      c.a2.push_back(x);
      done[x] = 1;
    } else {
      c.a6.push_back({x, d.s3[x], d.s3[d.s3[x]]});
      done[x] = done[d.s3[x]] = done[d.s3[d.s3[x]]] = 1;
    }
  }
  done.assign(d.n, 0);
  for (int x = 0; x < d.n; ++x) {
    if (done[x]) continue;
    if (d.s2[x] == x) {
      c.b2.push_back(x);
    } else {
      c.b4.push_back({x, d.s2[x]});
      done[d.s2[x]] = 1;
    }
    done[x] = 1;
  }
  done.assign(d.n, 0);
  for (int x = 0; x < d.n; ++x) {
    if (done[x]) continue;
    std::vector<int> cyc;
    int y = x;
    do {
      cyc.push_back(y);
      done[y] = 1;
      y = d.s2[d.s3[y]];
    } while (y != x);
    c.cusps.push_back(std::move(cyc));
  }
  long v = static_cast<long>(c.a2.size() + c.a6.size() + c.b2.size() + c.b4.size() +
                             c.cusps.size());
  long chi = v - d.n;  // orbit count of <s3>, <s2>, <s2 s3> minus points
  if ((2 - chi) % 2 != 0 || chi > 2) throw internal_error("census: bad euler number");
  c.genus = static_cast<int>((2 - chi) / 2);
  return c;
}

long cdf(const Dessin& d) {
  VertexCensus c = census(d);
  return 2 * static_cast<long>(c.a2.size()) + 3 * static_cast<long>(c.b2.size());
}

long et(const Dessin& d) { return 2 * d.n + 2 * cdf(d); }

Dessin relabel(const Dessin& d, const std::vector<int>& L) {
  if (static_cast<int>(L.size()) != d.n) throw input_error("relabel: size mismatch");
  check_perm(L, d.n, "relabel");
  std::vector<int> s2n(d.n), s3n(d.n);
  for (int p = 0; p < d.n; ++p) {
    s2n[L[p]] = L[d.s2[p]];
    s3n[L[p]] = L[d.s3[p]];
  }
  Dessin r;
  r.n = d.n;
  r.s2 = std::move(s2n);
  r.s3 = std::move(s3n);
  return r;
}

std::string pointed_key(const Dessin& d, int base) {
  if (base < 0 || base >= d.n) throw input_error("pointed_key: base out of range");
  return bfs_key(d, base, nullptr);
}

std::string canonical_key(const Dessin& d) {
  std::string best;
  for (int s = 0; s < d.n; ++s) {
    std::string k = bfs_key(d, s, nullptr);
    if (best.empty() || k < best) best = std::move(k);
  }
  return best;
}

Dessin canonical_form(const Dessin& d) {
  std::string best;
  std::vector<int> best_label;
  for (int s = 0; s < d.n; ++s) {
    std::vector<int> label;
    std::string k = bfs_key(d, s, &label);
    if (best.empty() || k < best) {
      best = std::move(k);
      best_label = std::move(label);
    }
  }
  return relabel(d, best_label);
}

bool isomorphic(const Dessin& x, const Dessin& y) {
  return x.n == y.n && canonical_key(x) == canonical_key(y);
}

// ---- AB graph ----

ABGraph ab_graph(const Dessin& d) {
  VertexCensus c = census(d);
  ABGraph g;
  g.n_a = static_cast<int>(c.a2.size() + c.a6.size());
  g.end.assign(d.n, {-1, -1});
  for (int x : c.a2) {
    g.end[x].first = static_cast<int>(g.verts.size());
    g.verts.push_back({'A', {x}});
  }
  for (const auto& cyc : c.a6) {
    int id = static_cast<int>(g.verts.size());
    for (int x : cyc) g.end[x].first = id;
    g.verts.push_back({'A', {cyc[0], cyc[1], cyc[2]}});
  }
  for (int x : c.b2) {
    g.end[x].second = static_cast<int>(g.verts.size());
    g.verts.push_back({'B', {x}});
  }
  for (const auto& cyc : c.b4) {
    int id = static_cast<int>(g.verts.size());
    for (int x : cyc) g.end[x].second = id;
    g.verts.push_back({'B', {cyc[0], cyc[1]}});
  }
  return g;
}

std::vector<std::vector<int>> ABGraph::faces() const {
  int n = static_cast<int>(end.size());
  // next A->B dart after crossing B then turning at the next A slot
  auto next_in_rot = [&](int vert, int x) {
    const auto& pts = verts[vert].pts;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i] == x) return pts[(i + 1) % pts.size()];
    throw internal_error("faces: point missing from rotation");
  };
  std::vector<char> done(n, 0);
  std::vector<std::vector<int>> fs;
  for (int x = 0; x < n; ++x) {
    if (done[x]) continue;
    std::vector<int> walk;
    int y = x;
    do {
      walk.push_back(y);
      done[y] = 1;
      int after_b = next_in_rot(end[y].second, y);
      y = next_in_rot(end[after_b].first, after_b);
    } while (y != x);
    fs.push_back(std::move(walk));
  }
  return fs;
}

std::string to_dot(const Dessin& d) {
  VertexCensus c = census(d);
  ABGraph g = ab_graph(d);
  std::ostringstream os;
  os << "graph ab {\n";
  os << "  graph [cusps=\"";
  auto w = c.widths();
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << "\"];\n";
  for (std::size_t v = 0; v < g.verts.size(); ++v) {
    const auto& vert = g.verts[v];
    if (vert.color == 'A')
      os << "  a" << v << " [shape=circle, label=\"A" << (vert.pts.size() == 1 ? 2 : 6)
         << "\"];\n";
    else
      os << "  b" << v << " [shape=square, label=\"B" << (vert.pts.size() == 1 ? 2 : 4)
         << "\"];\n";
  }
  for (int x = 0; x < d.n; ++x)
    os << "  a" << g.end[x].first << " -- b" << g.end[x].second << ";\n";
  os << "}\n";
  return os.str();
}

// ---- GenGraph ----

GenGraph GenGraph::from_dessin(const Dessin& d) {
  ABGraph ab = ab_graph(d);
  GenGraph g;
  g.verts.reserve(ab.verts.size());
  for (const auto& v : ab.verts) g.verts.push_back({v.color, true});
  g.edges.reserve(d.n);
  for (int x = 0; x < d.n; ++x)
    g.edges.push_back({ab.end[x].first, ab.end[x].second, true});
  return g;
}

int GenGraph::valence(int v) const {
  int k = 0;
  for (const auto& e : edges)
    if (e.alive && (e.u == v || e.v == v)) ++k;
  return k;
}

std::vector<int> GenGraph::incident(int v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].alive && (edges[i].u == v || edges[i].v == v))
      out.push_back(static_cast<int>(i));
  return out;
}

int GenGraph::other_end(int e, int v) const {
  return edges[e].u == v ? edges[e].v : edges[e].u;
}

long GenGraph::et_value() const {
  long t = 0;
  for (const auto& e : edges)
    if (e.alive) t += 2;
  for (std::size_t v = 0; v < verts.size(); ++v) {
    if (!verts[v].alive) continue;
    int k = valence(static_cast<int>(v));
    if (verts[v].color == 'A') {
      if (k == 1) t += 4;
      if (k == 2) t += 8;
    } else {
      if (k == 1) t += 6;
    }
  }
  return t;
}

void GenGraph::split_a6(int v, int e1, int e2) {
  if (!verts[v].alive || verts[v].color != 'A' || valence(v) != 3)
    throw input_error("split_a6: vertex is not a live trivalent A vertex");
  for (int e : {e1, e2}) {
    if (!edges[e].alive || edges[e].u != v)
      throw input_error("split_a6: edge not incident");
    int w = static_cast<int>(verts.size());
    verts.push_back({'A', true});
    edges[e].u = w;
  }
}

void GenGraph::remove_b2(int bv) {
  if (!verts[bv].alive || verts[bv].color != 'B' || valence(bv) != 1)
    throw input_error("remove_b2: vertex is not a live valence-1 B vertex");
  auto inc = incident(bv);
  int e = inc[0];
  int nb = other_end(e, bv);
  if (valence(nb) < 2)
    throw input_error("remove_b2: would strand the neighbor");
  edges[e].alive = false;
  verts[bv].alive = false;
}

namespace {

struct Side {
  std::vector<int> verts;
  int edge_count = 0;
  bool contains(int v) const {
    return std::find(verts.begin(), verts.end(), v) != verts.end();
  }
  bool is_tree() const { return edge_count == static_cast<int>(verts.size()) - 1; }
};

// component of the live graph minus edge `skip`, starting from `start`
Side far_side(const GenGraph& g, int start, int skip) {
  Side s;
  std::vector<char> seen(g.verts.size(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  std::vector<char> edge_seen(g.edges.size(), 0);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    s.verts.push_back(v);
    for (int e : g.incident(v)) {
      if (e == skip) continue;
      if (!edge_seen[e]) {
        edge_seen[e] = 1;
        ++s.edge_count;
      }
      int w = g.other_end(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return s;
}

std::vector<int> component_of(const GenGraph& g, int start) {
  return far_side(g, start, -1).verts;
}

}  // namespace

ReduceTrace reduce_graph(const Dessin& d) {
  VertexCensus c = census(d);
  if (c.genus != 0)
    throw input_error("reduce_graph: only genus-0 dessins are supported");

  GenGraph g = GenGraph::from_dessin(d);
  ReduceTrace trace;
  trace.initial_et = g.et_value();
  if (trace.initial_et != et(d))
    throw internal_error("reduce_graph: graph weight disagrees with dessin count");

  for (int guard = 0;; ++guard) {
    if (guard > 4 * d.n + 16) throw internal_error("reduce_graph: no progress");

    int pick = -1;
    std::vector<int> pend, cyc;
    int first_a3 = -1;
    for (std::size_t v = 0; v < g.verts.size() && pick < 0; ++v) {
      if (!g.verts[v].alive || g.verts[v].color != 'A') continue;
      if (g.valence(static_cast<int>(v)) != 3) continue;
      if (first_a3 < 0) first_a3 = static_cast<int>(v);
      std::vector<int> p, cy;
      for (int e : g.incident(static_cast<int>(v))) {
        Side f = far_side(g, g.other_end(e, static_cast<int>(v)), e);
        if (!f.contains(static_cast<int>(v)) && f.is_tree())
          p.push_back(e);
        else
          cy.push_back(e);
      }
      if (!p.empty()) {
        pick = static_cast<int>(v);
        pend = std::move(p);
        cyc = std::move(cy);
      }
    }

    if (pick >= 0) {
      long before = g.et_value();
      for (int e : cyc) {  // detach the arms that stay; fresh stubs keep them legal
        int w = static_cast<int>(g.verts.size());
        g.verts.push_back({'A', true});
        g.edges[e].u = w;
      }
      for (int v : component_of(g, pick)) g.verts[v].alive = false;
      for (auto& e : g.edges)
        if (e.alive && (!g.verts[e.u].alive || !g.verts[e.v].alive)) e.alive = false;
      long after = g.et_value();
      long delta = after - before;
      trace.moves.push_back(
          {MoveKind::ClipTree, pick, before, after, delta, delta % 12 == 0});
    } else if (first_a3 >= 0) {
      long before = g.et_value();
      auto inc = g.incident(first_a3);
      g.split_a6(first_a3, inc[0], inc[1]);
      long after = g.et_value();
      long delta = after - before;
      trace.moves.push_back(
          {MoveKind::SplitA6, first_a3, before, after, delta, delta % 12 == 0});
    } else {
      break;
    }
  }

  trace.final_et = g.et_value();
  for (const auto& m : trace.moves)
    if (!m.mod12) trace.counterexample = true;

  std::vector<char> seen(g.verts.size(), 0);
  for (std::size_t v = 0; v < g.verts.size(); ++v) {
    if (!g.verts[v].alive || seen[v]) continue;
    TerminalComponent tc;
    tc.verts = component_of(g, static_cast<int>(v));
    for (int w : tc.verts) seen[w] = 1;
    long t = 0;
    int edge_cnt = 0;
    for (const auto& e : g.edges)
      if (e.alive && std::find(tc.verts.begin(), tc.verts.end(), e.u) != tc.verts.end()) {
        t += 2;
        ++edge_cnt;
      }
    std::vector<int> a_val, b_val;
    for (int w : tc.verts) {
      int k = g.valence(w);
      if (g.verts[w].color == 'A') {
        a_val.push_back(k);
        if (k == 1) t += 4;
        if (k == 2) t += 8;
      } else {
        b_val.push_back(k);
        if (k == 1) t += 6;
      }
    }
    tc.et = t;
    std::sort(a_val.begin(), a_val.end());
    std::sort(b_val.begin(), b_val.end());
    if (edge_cnt == 1 && a_val == std::vector<int>{1} && b_val == std::vector<int>{1})
      tc.shape = "edge";
    else if (edge_cnt == 2 && a_val == std::vector<int>{1, 1} &&
             b_val == std::vector<int>{2})
      tc.shape = "chain";
    else
      tc.shape = "other";
    if (tc.et % 12 != 0 || tc.shape == "other") trace.counterexample = true;
    trace.terminal.push_back(std::move(tc));
  }
  return trace;
}

}  // namespace jmono
