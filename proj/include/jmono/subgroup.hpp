#pragma once
#include <string>
#include <vector>

#include "jmono/arith.hpp"
#include "jmono/dessin.hpp"

namespace jmono {

// Breadth-first Schreier transversal for the point stabilizer at `base`:
// transversal[x] sends base to x, and tree words use only positive letters.
struct SchreierTable {
  int base = 0;
  std::vector<PslWord> transversal;
  std::vector<char> tree_s;  // tree_s[x]: the s-edge out of x is a tree edge
  std::vector<char> tree_u;  // tree_u[x]: the u-edge x -> s3(x) is a tree edge
};

SchreierTable schreier(const Dessin& d, int base = 0);

struct GeneratorInfo {
  PslWord word;
  std::string kind;  // "elliptic2", "elliptic3", "free"
  int order = 0;     // 2 or 3 for elliptic generators, 0 otherwise
  int attach = -1;   // census index of the fixed point for elliptic generators
};

// Reduced generating set of the stabilizer of `base`:
// one order-2 generator per s2 fixed point, one order-3 per s3 fixed point,
// and 2*genus + #cusps - 1 free generators.
std::vector<GeneratorInfo> generators(const Dessin& d, int base = 0);

// The full (unreduced) set of nontrivial Schreier generators.
std::vector<PslWord> schreier_generators(const Dessin& d, int base = 0);

// One parabolic word per cusp, in census order: transversal * (u s)^w back.
std::vector<PslWord> cusp_words(const Dessin& d, int base = 0);

// Membership of the image in PSL2(Z): w stabilizes the base point.
bool contains(const Dessin& d, int base, const PslWord& w);

// ---- boundary loops of the quotient sphere ----

struct BoundaryLoop {
  std::string id;  // a2:<i>, b2:<i> or cusp:<j>, census labels
  PslWord word;    // word = conj * core * conj^-1, already reduced
  PslWord conj;
  PslWord core;    // u2 | s | (u s)^w  - the local model with fixed chirality
};

// For a genus-0 dessin: one loop per branch point and cusp, listed in a cyclic
// order in which the product of the words is the identity. Throws input_error
// on positive genus; throws internal_error if the construction cannot verify
// its own invariants.
std::vector<BoundaryLoop> boundary_words(const Dessin& d);

// ---- folding a matrix-generated subgroup onto its coset action ----

struct FoldResult {
  Dessin psl;                    // coset action of <s,u>; base coset is 0
  long sl_index = 0;             // index of <gens> in SL2(Z)
  bool contains_minus_one = false;
  std::vector<int> sl_s, sl_u;   // SL2(Z) coset action of S and U
};

// Coset enumeration over <x,y | x^2, y^3> and <x,y | x^4, x^2 y^-3>; throws
// input_error if the enumeration exceeds max_cosets (infinite or huge index).
FoldResult fold_generated(const std::vector<MatSL2>& gens,
                          long max_cosets = 1'000'000);

// Fold of the canonical lifts of the reduced generators of a pointed dessin.
FoldResult fold_pointed(const Dessin& d, int base = 0,
                        long max_cosets = 1'000'000);

// Coset of SL2(Z)/<gens> reached from the identity coset by m (for sign and
// membership tests against a previous fold).
int act_sl(const FoldResult& f, const MatSL2& m);

}  // namespace jmono
