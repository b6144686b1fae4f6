#pragma once
#include <optional>
#include <string>
#include <vector>

#include "jmono/dessin.hpp"
#include "jmono/fibers.hpp"

namespace jmono {

// census-decidable constraints applied to enumeration output; torsion and et
// bounds also prune partial coset tables during the search
struct Filter {
  std::optional<int> genus;
  bool torsion_free = false;      // a2 = b2 = 0
  bool saturated = false;         // a2 = 0 (all A-vertices trivalent)
  std::optional<long> et_max;
  std::optional<int> cusps;
};

bool admits(const Filter& f, const Dessin& d);

// One canonical representative per isomorphism class of index-n transitive
// pairs passing the filter, sorted by canonical key. Representatives are in
// canonical form. The default entry point splits the search tree across
// OpenMP threads when available; the serial variant is the reference
// implementation and always returns the identical list.
std::vector<Dessin> enumerate_dessins(int n, const Filter& f = {});
std::vector<Dessin> enumerate_dessins_serial(int n, const Filter& f = {});

// Exhaustive oracle over all permutation pairs, n <= 7.
std::vector<Dessin> brute_force_dessins(int n, const Filter& f = {});

// Number of base points up to automorphism = subgroups in the conjugacy class.
long pointed_count(const Dessin& d);

// Loop-free AB-graphs with k ends: internal vertices are k-2 trivalent
// A-vertices, ends are marked A2 or B2; every such graph has ET = 12k - 12.
struct TreeCatalog {
  int k = 0;
  long et = 0;
  long shapes = 0;  // trees up to isomorphism, end markings ignored
  long marked = 0;  // trees with end markings, up to isomorphism
};
TreeCatalog catalog_trees(int k);  // 2 <= k <= 9

// Genus-0 saturated dessins with ET equal to the bound, up to isomorphism.
std::vector<Dessin> catalog_saturated(long et_bound);  // in {12,24,36,48}

// Monodromy classification of the family F_r for r = 1 ("rational") or
// r = 2 ("K3"): all genus-0 classes with ET <= 24r, each with the witness
// assignment twisting (24r - ET)/12 points, twists placed at b2 points
// first, then a2, then cusps.
struct SurfaceWitness {
  Dessin dessin;
  FiberAssignment config;
  SurfaceReport report;
};
std::vector<SurfaceWitness> classify_surfaces(const std::string& target);

}  // namespace jmono
