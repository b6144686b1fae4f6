#include "jmono/enumerate.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "jmono/error.hpp"

namespace jmono {

bool admits(const Filter& f, const Dessin& d) {
  VertexCensus c = census(d);
  if (f.genus && c.genus != *f.genus) return false;
  if (f.torsion_free && (!c.a2.empty() || !c.b2.empty())) return false;
  if (f.saturated && !c.a2.empty()) return false;
  if (f.et_max && et(d) > *f.et_max) return false;
  if (f.cusps && int(c.cusps.size()) != *f.cusps) return false;
  return true;
}

namespace {

// partial coset table over (sigma, upsilon): s3i is the inverse of the
// partial s3 map; points are introduced in BFS discovery order so every
// completed table is its own base-0 standard form
struct St {
  std::vector<int> s2, s3, s3i;
  int used = 1, a2 = 0, b2 = 0, pos = 0;
};

St root_state(int n) {
  St st;
  st.s2.assign(n, -1);
  st.s3.assign(n, -1);
  st.s3i.assign(n, -1);
  return st;
}

struct Search {
  int n;
  const Filter& f;
  std::vector<Dessin>* out;
  std::vector<St>* frontier = nullptr;
  int cutoff = 0;

  bool et_ok(int a2, int b2) const {
    return !f.et_max || 2L * n + 4L * a2 + 6L * b2 <= *f.et_max;
  }

  void leaf(St& st) {
    Dessin d = Dessin::make(std::move(st.s2), std::move(st.s3));
    if (!admits(f, d)) return;
    std::string k0 = pointed_key(d, 0);
    for (int s = 1; s < n; ++s)
      if (pointed_key(d, s) < k0) return;  // not the canonical base
    out->push_back(std::move(d));
  }

  void run(St st) {
    for (;;) {
      if (st.pos == 2 * n) {
        leaf(st);
        return;
      }
      if (frontier && st.pos >= cutoff) {
        frontier->push_back(std::move(st));
        return;
      }
      int x = st.pos >> 1;
      if (x >= st.used) return;  // proper closed suborbit
      if ((st.pos & 1) == 0 ? st.s2[x] >= 0 : st.s3[x] >= 0) {
        ++st.pos;
        continue;
      }
      break;
    }
    int x = st.pos >> 1;
    if ((st.pos & 1) == 0) {
      if (!f.torsion_free && et_ok(st.a2, st.b2 + 1)) {
        St nx = st;
        nx.s2[x] = x;
        ++nx.b2;
        ++nx.pos;
        run(std::move(nx));
      }
      for (int y = x + 1; y < st.used; ++y) {
        if (st.s2[y] >= 0) continue;
        St nx = st;
        nx.s2[x] = y;
        nx.s2[y] = x;
        ++nx.pos;
        run(std::move(nx));
      }
      if (st.used < n) {
        St nx = st;
        int y = nx.used++;
        nx.s2[x] = y;
        nx.s2[y] = x;
        ++nx.pos;
        run(std::move(nx));
      }
    } else {
      int w = st.s3i[x];  // the point mapping onto x, if any
      if (w < 0 && !f.torsion_free && !f.saturated && et_ok(st.a2 + 1, st.b2)) {
        St nx = st;
        nx.s3[x] = x;
        nx.s3i[x] = x;
        ++nx.a2;
        ++nx.pos;
        run(std::move(nx));
      }
      for (int y = 0; y < st.used; ++y) {
        if (y == x || y == w || st.s3i[y] >= 0) continue;
        int z = st.s3[y];
        if (w >= 0 && z >= 0) continue;  // both chains open: cannot close a 3-cycle
        St nx = st;
        nx.s3[x] = y;
        nx.s3i[y] = x;
        if (w >= 0) {
          // close w -> x -> y -> w
          if (st.s3i[w] >= 0)
            throw internal_error("coset search: chain of length 2 left open");
          nx.s3[y] = w;
          nx.s3i[w] = y;
        } else if (z >= 0) {
          // close x -> y -> z -> x
          if (st.s3[z] >= 0)
            throw internal_error("coset search: chain of length 2 left open");
          nx.s3[z] = x;
          nx.s3i[x] = z;
        }
        ++nx.pos;
        run(std::move(nx));
      }
      if (st.used < n) {
        St nx = st;
        int y = nx.used++;
        nx.s3[x] = y;
        nx.s3i[y] = x;
        if (w >= 0) {
          if (st.s3i[w] >= 0)
            throw internal_error("coset search: chain of length 2 left open");
          nx.s3[y] = w;
          nx.s3i[w] = y;
        }
        ++nx.pos;
        run(std::move(nx));
      }
    }
  }
};

// a2 is congruent to n mod 3 and b2 to n mod 2, so parity alone rules out
// some (n, filter) pairs before any search
bool feasible(int n, const Filter& f) {
  int a2_min = n % 3, b2_min = n % 2;
  if ((f.torsion_free || f.saturated) && a2_min > 0) return false;
  if (f.torsion_free && b2_min > 0) return false;
  if (!f.et_max) return true;
  return 2L * n + 4L * a2_min + 6L * b2_min <= *f.et_max;
}

std::vector<Dessin> sort_by_key(std::vector<Dessin> v) {
  std::vector<std::pair<std::string, Dessin>> keyed;
  keyed.reserve(v.size());
  for (auto& d : v) keyed.emplace_back(pointed_key(d, 0), std::move(d));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Dessin> out;
  out.reserve(keyed.size());
  for (auto& [k, d] : keyed) out.push_back(std::move(d));
  return out;
}

}  // namespace

std::vector<Dessin> enumerate_dessins_serial(int n, const Filter& f) {
  if (n < 1) throw input_error("index must be >= 1");
  std::vector<Dessin> found;
  if (!feasible(n, f)) return found;
  Search s{n, f, &found, nullptr, 0};
  s.run(root_state(n));
  return sort_by_key(std::move(found));
}

std::vector<Dessin> enumerate_dessins(int n, const Filter& f) {
#ifdef JMONO_HAVE_OPENMP
  if (n >= 9) {
    if (!feasible(n, f)) return {};
    std::vector<Dessin> found;
    std::vector<St> frontier;
    Search pre{n, f, &found, &frontier, 8};
    pre.run(root_state(n));
    std::vector<std::vector<Dessin>> buckets(frontier.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < long(frontier.size()); ++i) {
      Search s{n, f, &buckets[i], nullptr, 0};
      s.run(std::move(frontier[i]));
    }
    for (auto& b : buckets)
      for (auto& d : b) found.push_back(std::move(d));
    return sort_by_key(std::move(found));
  }
#endif
  return enumerate_dessins_serial(n, f);
}

std::vector<Dessin> brute_force_dessins(int n, const Filter& f) {
  if (n < 1) throw input_error("index must be >= 1");
  if (n > 7) throw input_error("brute force is limited to index 7");
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

  std::map<std::string, Dessin> classes;
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
      if (reached != n) continue;
      Dessin d = Dessin::make(s2, s3);
      if (!admits(f, d)) continue;
      std::string key = canonical_key(d);
      if (!classes.count(key)) classes.emplace(key, canonical_form(d));
    }
  std::vector<Dessin> out;
  out.reserve(classes.size());
  for (auto& [k, d] : classes) out.push_back(std::move(d));
  return out;
}

long pointed_count(const Dessin& d) {
  std::set<std::string> keys;
  for (int b = 0; b < d.n; ++b) keys.insert(pointed_key(d, b));
  return long(keys.size());
}

// ---- AB-trees with k ends ----

namespace {

// colored AHU string, canonical for the rooted tree
std::string ahu(int v, int parent, const std::vector<std::vector<int>>& adj,
                const std::vector<char>& color) {
  std::vector<std::string> kids;
  for (int u : adj[v])
    if (u != parent) kids.push_back(ahu(u, v, adj, color));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  s += color[v];
  for (const auto& k : kids) s += k;
  s += ")";
  return s;
}

std::string tree_key(const std::vector<std::vector<int>>& adj,
                     const std::vector<char>& color) {
  int nv = int(adj.size());
  if (nv == 1) return ahu(0, -1, adj, color);
  // peel to the centre(s)
  std::vector<int> deg(nv), order;
  for (int v = 0; v < nv; ++v) deg[v] = int(adj[v].size());
  std::vector<char> gone(nv, 0);
  std::vector<int> layer;
  for (int v = 0; v < nv; ++v)
    if (deg[v] <= 1) layer.push_back(v);
  int left = nv;
  while (left > 2) {
    std::vector<int> next;
    for (int v : layer) {
      gone[v] = 1;
      --left;
      for (int u : adj[v])
        if (!gone[u] && --deg[u] == 1) next.push_back(u);
    }
    layer = std::move(next);
  }
  std::vector<std::string> keys;
  for (int v = 0; v < nv; ++v)
    if (!gone[v]) keys.push_back(ahu(v, -1, adj, color));
  std::sort(keys.begin(), keys.end());
  std::string s;
  for (const auto& k : keys) s += k;
  return s;
}

// labeled trees on m >= 1 vertices as edge lists (Pruefer decode for m >= 3)
std::vector<std::vector<std::pair<int, int>>> labeled_trees(int m) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (m == 1) {
    out.push_back({});
    return out;
  }
  if (m == 2) {
    out.push_back({{0, 1}});
    return out;
  }
  std::vector<int> seq(m - 2, 0);
  for (;;) {
    std::vector<int> deg(m, 1);
    for (int v : seq) ++deg[v];
    std::vector<std::pair<int, int>> edges;
    std::set<int> leaves;
    for (int v = 0; v < m; ++v)
      if (deg[v] == 1) leaves.insert(v);
    std::vector<int> degw = deg;
    for (int v : seq) {
      int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      edges.push_back({leaf, v});
      if (--degw[v] == 1) leaves.insert(v);
    }
    int u = *leaves.begin(), v2 = *std::next(leaves.begin());
    edges.push_back({u, v2});
    out.push_back(std::move(edges));
    int i = m - 3;
    while (i >= 0 && seq[i] == m - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

}  // namespace

TreeCatalog catalog_trees(int k) {
  if (k < 2 || k > 9) throw input_error("tree catalog supports 2 <= k <= 9");
  TreeCatalog cat;
  cat.k = k;
  cat.et = 12L * k - 12;
  int m = k - 2;
  if (m == 0) {
    // a single edge between two ends
    cat.shapes = 1;
    cat.marked = 3;  // AA, AB, BB up to the swap
    return cat;
  }
  // one representative adjacency per unlabeled shape, then color its ends
  std::map<std::string, std::pair<std::vector<std::vector<int>>, std::vector<int>>> shapes;
  for (const auto& edges : labeled_trees(m)) {
    std::vector<int> deg(m, 0);
    for (auto [u, v] : edges) {
      ++deg[u];
      ++deg[v];
    }
    if (*std::max_element(deg.begin(), deg.end()) > 3) continue;
    // attach 3 - deg ends to every internal vertex
    std::vector<std::vector<int>> adj(m);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    std::vector<int> leaf_ids;
    for (int v = 0; v < m; ++v)
      for (int j = deg[v]; j < 3; ++j) {
        int id = int(adj.size());
        adj.push_back({v});
        adj[v].push_back(id);
        leaf_ids.push_back(id);
      }
    if (int(leaf_ids.size()) != k)
      throw internal_error("tree catalog: end count mismatch");
    std::vector<char> color(adj.size(), 'i');
    for (int id : leaf_ids) color[id] = 'e';
    std::string key = tree_key(adj, color);
    shapes.emplace(std::move(key),
                   std::make_pair(std::move(adj), std::move(leaf_ids)));
  }
  std::set<std::string> marked;
  for (auto& [key, rep] : shapes) {
    auto& [adj, leaf_ids] = rep;
    std::vector<char> color(adj.size(), 'i');
    for (std::uint32_t msk = 0; msk < (1u << k); ++msk) {
      for (int j = 0; j < k; ++j)
        color[leaf_ids[j]] = (msk >> j & 1) ? 'b' : 'a';
      marked.insert(tree_key(adj, color));
    }
  }
  cat.shapes = long(shapes.size());
  cat.marked = long(marked.size());
  return cat;
}

std::vector<Dessin> catalog_saturated(long et_bound) {
  if (et_bound != 12 && et_bound != 24 && et_bound != 36 && et_bound != 48)
    throw input_error("saturated catalog supports ET in {12, 24, 36, 48}");
  std::vector<std::pair<std::pair<int, std::string>, Dessin>> keyed;
  for (int b2 = 0; 6L * b2 < et_bound; ++b2) {
    long rest = et_bound - 6L * b2;
    if (rest % 2) continue;
    int n = int(rest / 2);
    if (n < 1 || n % 3 != 0 || b2 > n) continue;
    Filter f;
    f.genus = 0;
    f.saturated = true;
    f.et_max = et_bound;
    for (Dessin& d : enumerate_dessins(n, f)) {
      if (et(d) != et_bound) continue;
      keyed.push_back({{n, pointed_key(d, 0)}, std::move(d)});
    }
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Dessin> out;
  out.reserve(keyed.size());
  for (auto& [k, d] : keyed) out.push_back(std::move(d));
  return out;
}

std::vector<SurfaceWitness> classify_surfaces(const std::string& target) {
  long r;
  if (target == "rational")
    r = 1;
  else if (target == "K3")
    r = 2;
  else
    throw input_error("classification targets are 'rational' and 'K3'");
  long et_bound = 24 * r;
  std::vector<SurfaceWitness> out;
  for (int n = 1; n <= 12 * r; ++n) {
    Filter f;
    f.genus = 0;
    f.et_max = et_bound;
    for (Dessin& d : enumerate_dessins(n, f)) {
      long e = et(d);
      if ((et_bound - e) % 12 != 0)
        throw internal_error("genus 0 dessin with ET not divisible by 12");
      long t = (et_bound - e) / 12;
      FiberAssignment c = minimal_config(d);
      // twist preference: b2 points, then a2, then cusps
      std::vector<std::size_t> pref;
      for (const char* kind : {"b2", "a2", "cusp"})
        for (std::size_t i = 0; i < c.fibers.size(); ++i)
          if (c.fibers[i].first.kind == kind) pref.push_back(i);
      if (t > long(pref.size()))
        throw internal_error("not enough marked points for the twist count");
      for (long i = 0; i < t; ++i)
        c.fibers[pref[i]].second = c.fibers[pref[i]].second.partner();
      if (!config_valid(c) || !verify_product(d, c))
        throw internal_error("classification witness failed verification");
      SurfaceReport rep = surface_report(c, d);
      out.push_back({std::move(d), std::move(c), rep});
    }
  }
  return out;
}

}  // namespace jmono
