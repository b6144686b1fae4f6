#pragma once
#include <array>
#include <string>
#include <vector>

#include "jmono/arith.hpp"
#include "jmono/error.hpp"

namespace jmono {

// A transitive pair of permutations (s2, s3) of {0..n-1} with s2^2 = s3^3 = id.
// Encodes a conjugacy class of index-n subgroups of Z/2 * Z/3 once a base point
// is forgotten; permutations act on the right, words act left to right.
struct Dessin {
  int n = 0;
  std::vector<int> s2, s3;

  static Dessin make(std::vector<int> s2, std::vector<int> s3);  // validates
  int s3_inv(int x) const { return s3[s3[x]]; }
  bool torsion_free() const;

  int act(int x, PslGen g) const;
  int act(int x, const PslWord& w) const;

  bool operator==(const Dessin&) const = default;
};

struct VertexCensus {
  std::vector<int> a2;                  // s3 fixed points, ascending
  std::vector<std::array<int, 3>> a6;   // s3 3-cycles, min first, sorted by min
  std::vector<int> b2;                  // s2 fixed points, ascending
  std::vector<std::array<int, 2>> b4;   // s2 2-cycles, min first, sorted by min
  std::vector<std::vector<int>> cusps;  // cycles of x -> s2(s3(x)), min first, sorted by min
  int genus = 0;

  std::vector<int> widths() const;      // cusp sizes, ascending
  // stable labels for branch points: a2:<i>, b2:<i>, cusp:<i> (census order)
  std::vector<std::string> point_ids() const;
};

VertexCensus census(const Dessin& d);
long cdf(const Dessin& d);  // 2*#a2 + 3*#b2
long et(const Dessin& d);   // 2n + 2*cdf

Dessin relabel(const Dessin& d, const std::vector<int>& L);  // x -> L[x]
std::string canonical_key(const Dessin& d);
Dessin canonical_form(const Dessin& d);
bool isomorphic(const Dessin& x, const Dessin& y);

// base-point-preserving isomorphism invariant (= subgroup, not just class)
std::string pointed_key(const Dessin& d, int base);

// ---- AB-graph: bipartite ribbon graph with one A side (s3 orbits) and one B
// side (s2 orbits); one edge per dessin point ----

struct ABGraph {
  struct Vertex {
    char color;            // 'A' or 'B'
    std::vector<int> pts;  // orbit in cyclic order (the rotation at the vertex)
  };
  std::vector<Vertex> verts;             // all A vertices first, then all B
  int n_a = 0;                           // number of A vertices
  std::vector<std::pair<int, int>> end;  // per point: (A vertex, B vertex)

  // face walks of the ribbon structure, as cycles of A->B darts (point labels)
  std::vector<std::vector<int>> faces() const;
};

ABGraph ab_graph(const Dessin& d);
std::string to_dot(const Dessin& d);

// ---- reduction engine on generalized AB-graphs ----

// Vertex weights for the Euler-type count: an A vertex contributes 4 at
// valence 1 and 8 at valence 2 (valence 3 contributes 0), a B vertex 6 at
// valence 1 (valence 2 contributes 0), and every edge contributes 2.
struct GenGraph {
  struct V {
    char color;
    bool alive = true;
  };
  struct E {
    int u, v;  // u on the A side, v on the B side
    bool alive = true;
  };
  std::vector<V> verts;
  std::vector<E> edges;

  static GenGraph from_dessin(const Dessin& d);

  int valence(int v) const;
  std::vector<int> incident(int v) const;
  long et_value() const;
  int other_end(int e, int v) const;

  // detach two of the three edges at a trivalent A vertex; each detached end
  // becomes a fresh valence-1 A vertex (delta +12)
  void split_a6(int v, int e1, int e2);
  // delete a valence-1 B vertex and its edge (delta 0 or -12)
  void remove_b2(int bv);
};

enum class MoveKind { ClipTree, SplitA6, RemoveB2 };

struct ReduceMove {
  MoveKind kind;
  int vertex;
  long et_before, et_after, delta;
  bool mod12;
};

struct TerminalComponent {
  std::vector<int> verts;
  long et;
  std::string shape;  // "edge", "chain", "other"
};

struct ReduceTrace {
  long initial_et = 0, final_et = 0;
  std::vector<ReduceMove> moves;
  std::vector<TerminalComponent> terminal;
  bool counterexample = false;  // any move delta or terminal piece not 0 mod 12
};

// Reduces the AB-graph of a genus-0 dessin by clipping pendant trees at
// trivalent A vertices and splitting the remaining trivalent A vertices, until
// only chains of weight 12 remain. Throws input_error on positive genus.
ReduceTrace reduce_graph(const Dessin& d);

}  // namespace jmono
