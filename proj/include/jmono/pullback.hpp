#pragma once
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jmono/dessin.hpp"
#include "jmono/fibers.hpp"

namespace jmono {

// Ramified cover B -> P^1 of the dessin's quotient sphere, recorded as
// partitions of the degree over the branch values. Points are addressed by
// census ids (a2:i, b2:i, cusp:i, a6:i, b4:i), upstream extra twist points
// (extra:i), or free branch values away from every special point (free:i).
// Unlisted points are unramified (partition 1 + 1 + ... + 1). Partitions keep
// their given order; preimage j over point P is addressed as "P/j".
struct RamificationProfile {
  int deg = 1;
  int genus = 0;  // declared genus of B, checked against Riemann-Hurwitz
  std::vector<std::pair<std::string, std::vector<int>>> points;

  const std::vector<int>* find(const std::string& ref) const;
};

// Riemann-Hurwitz bookkeeping: validates refs, partition sums, parity, and
// the declared genus; returns the genus of B.
int check_profile(const RamificationProfile& p, const Dessin& d);

// One preimage of one branch value, with its induced local class.
struct Preimage {
  std::string up;   // upstream point id
  int part = 0;     // position within the partition
  int a = 1;        // ramification index
  std::string cls;  // "cusp", "a2", "a2x", "b2", "smooth"
  int width = 0;    // induced cusp width a * w, 0 otherwise

  std::string id() const { return up + "/" + std::to_string(part); }
};

// Every preimage in enumeration order: census marked points, then a6 / b4
// vertices, then the extra points of `up` (when given), then free points.
// The class follows the ramification index: over a cusp always "cusp"; over
// an a2 vertex by a mod 3 (1 -> "a2" = {II, IV*}, 2 -> "a2x" = {IV, II*},
// 0 -> "smooth"); over a b2 vertex by a mod 2; smooth everywhere else.
std::vector<Preimage> preimages(const Dessin& d, const RamificationProfile& p,
                                const FiberAssignment* up = nullptr);

// The type over a preimage of ramification index a when the point below
// carries `up`: exactly the class of rep(up)^a. Matches the mod-rules above
// on the level of twist pairs; the member within the pair is the sign data.
KodairaType induced_type(const KodairaType& up, int a);

// Pullback of an upstream assignment along the profile: every preimage gets
// induced_type(type below, a), then `twists` flips members pointwise, then
// smooth (I0) entries are dropped. Kept smooth twists appear as extra points
// whose index is the global preimage position. Twist ids are "P/j" addresses.
FiberAssignment pullback_config(const Dessin& d, const FiberAssignment& up,
                                const RamificationProfile& p,
                                const std::set<std::string>& twists = {});

// Pullback of the minimal configuration.
FiberAssignment induced_config(const Dessin& d, const RamificationProfile& p,
                               const std::set<std::string>& twists = {});

struct InducedVerdict {
  bool induced = false;    // cB is exactly the pullback of the upstream choice
  long twists = 0;         // member flips between cB and that pullback
  bool parity_even = true; // even <=> both share the same SL(2,Z) global data
};

// Compares cB against the zero-twist pullback of the chosen upstream
// assignment (minimal_config(d) for the two-argument form). Throws
// input_error when cB is not compatible with the induced classes.
InducedVerdict is_induced(const FiberAssignment& cB, const Dessin& d,
                          const RamificationProfile& p,
                          const FiberAssignment& up);
InducedVerdict is_induced(const FiberAssignment& cB, const Dessin& d,
                          const RamificationProfile& p);

struct PullbackGroup {
  // the center dichotomy: 2 iff the upstream group contains -I and the
  // pulled-back group does not (then the two share the same PSL data but
  // differ by the center); 1 otherwise
  int index = 1;
  bool up_minus_one = false;
  bool b_minus_one = false;
  long up_sl_index = 0;  // honest SL(2,Z) indices from coset enumeration
  long b_sl_index = 0;
  // whether the PSL image survives the base change; profiles ramified in a
  // homologically visible way shrink it (the dichotomy then only concerns
  // the center, and the honest indices above record the rest)
  bool psl_preserved = true;
  int branch_points = 0;  // listed points carrying some ramification
  // index 2 only: the Z/2 character on the upstream loops (id, 0 or 1)
  std::vector<std::pair<std::string, int>> character;
  std::string description;
};

// Folds the SL(2,Z) lifts of the upstream boundary loops (signs taken from
// cUp) and their profile-exponent powers. Genus of B must be 0 and cUp must
// be a valid assignment.
PullbackGroup pullback_group(const Dessin& d, const FiberAssignment& cUp,
                             const RamificationProfile& p,
                             long max_cosets = 1'000'000);

}  // namespace jmono
