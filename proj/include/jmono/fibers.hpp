#pragma once
#include <string>
#include <utility>
#include <vector>

#include "jmono/arith.hpp"
#include "jmono/dessin.hpp"

namespace jmono {

enum class FiberKind { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };

// Kodaira fiber type; width is the n of I_n / I_n*, 0 for the additive types.
// Fixed table data: euler e, defect df, pole of j, SL2(Z) order, monodromy
// representative, quadratic-twist partner (rep -> -rep), standard twist word.
struct KodairaType {
  FiberKind kind = FiberKind::I;
  int width = 0;

  bool star() const;  // larger-defect member of its twist pair
  long euler() const;
  long defect() const;
  long j_pole() const;
  long sl_order() const;  // 0 when infinite
  MatSL2 rep() const;
  KodairaType partner() const;
  TwistWord twist_word() const;  // a -> T, b -> B; degree = euler, matrix = rep
  std::string label() const;
  static KodairaType parse(const std::string& s);
  bool operator==(const KodairaType&) const = default;
};

// A branch point of the dessin (census order) or an abstract extra twist point.
struct MarkedPoint {
  std::string kind;  // "a2", "b2", "cusp", "extra"
  int idx = 0;
  int width = 0;  // cusp width, 0 otherwise

  std::string id() const { return kind + ":" + std::to_string(idx); }
  bool operator==(const MarkedPoint&) const = default;
};

std::vector<MarkedPoint> marked_points(const Dessin& d);

// Homological invariant: a Kodaira type at every marked point. Compatible
// types: a2 -> {II, IV*}, b2 -> {III, III*}, cusp of width w -> {I_w, I_w*},
// extra -> I0* only. The kind "a2x" -> {IV, II*} never occurs on a dessin's
// own marked points; it arises over order-3 points under ramified base change.
struct FiberAssignment {
  std::vector<std::pair<MarkedPoint, KodairaType>> fibers;

  int extra_count() const;
  const KodairaType* find(const std::string& id) const;
};

struct SurfaceReport {
  long euler_total = 0;  // sum of fiber Euler numbers = 12r
  long r = 0;
  long deg_j = 0;
  long df_total = 0;  // 12r - deg_j
  long twist_count = 0;
  std::string cls;  // "rational" (r=1), "K3" (r=2), else "F_r"
};

// Smallest-defect assignment: II / III / I_w everywhere, no extra points.
FiberAssignment minimal_config(const Dessin& d);

// Dehn-twist degree criterion: sum of Euler numbers divisible by 12.
bool config_valid(const FiberAssignment& c);

// et(d) % 24 == 0, cross-checked against config_valid(minimal_config(d)).
bool minimal_lift_exists(const Dessin& d);

// SL2(Z) lift of every boundary loop with the sign dictated by the assigned
// type (conjugator signs cancel), in boundary cyclic order, followed by one
// ("extra:i", -I) entry per extra point. The non-extra points must be exactly
// the dessin's marked points.
std::vector<std::pair<std::string, MatSL2>> assigned_lifts(
    const Dessin& d, const FiberAssignment& c);

// True iff the product of assigned_lifts is exactly +I (false for -I).
bool verify_product(const Dessin& d, const FiberAssignment& c);

SurfaceReport surface_report(const FiberAssignment& c, const Dessin& d);

// All compatible assignments over the marked points plus `extra` forced-I0*
// points, filtered by config_valid and r <= r_max, in twist-mask order.
std::vector<std::pair<FiberAssignment, SurfaceReport>> enumerate_configs(
    const Dessin& d, int extra = 0, long r_max = 1000000);

}  // namespace jmono
