#include "jmono/fibers.hpp"

#include <algorithm>
#include <set>

#include "jmono/error.hpp"
#include "jmono/subgroup.hpp"

namespace jmono {

bool KodairaType::star() const {
  return kind == FiberKind::Istar || kind == FiberKind::IVstar ||
         kind == FiberKind::IIIstar || kind == FiberKind::IIstar;
}

long KodairaType::euler() const {
  switch (kind) {
    case FiberKind::I: return width;
    case FiberKind::Istar: return width + 6;
    case FiberKind::II: return 2;
    case FiberKind::III: return 3;
    case FiberKind::IV: return 4;
    case FiberKind::IVstar: return 8;
    case FiberKind::IIIstar: return 9;
    case FiberKind::IIstar: return 10;
  }
  throw internal_error("unhandled fiber kind");
}

long KodairaType::j_pole() const {
  return kind == FiberKind::I || kind == FiberKind::Istar ? width : 0;
}

long KodairaType::defect() const { return euler() - j_pole(); }

long KodairaType::sl_order() const {
  switch (kind) {
    case FiberKind::I: return width == 0 ? 1 : 0;
    case FiberKind::Istar: return width == 0 ? 2 : 0;
    case FiberKind::II: return 6;
    case FiberKind::III: return 4;
    case FiberKind::IV: return 3;
    case FiberKind::IVstar: return 3;
    case FiberKind::IIIstar: return 4;
    case FiberKind::IIstar: return 6;
  }
  throw internal_error("unhandled fiber kind");
}

MatSL2 KodairaType::rep() const {
  switch (kind) {
    case FiberKind::I: return pow(kT, width);
    case FiberKind::Istar: return -pow(kT, width);
    case FiberKind::II: return -(kU * kU);
    case FiberKind::III: return -kS;
    case FiberKind::IV: return -kU;
    case FiberKind::IVstar: return kU * kU;
    case FiberKind::IIIstar: return kS;
    case FiberKind::IIstar: return kU;
  }
  throw internal_error("unhandled fiber kind");
}

KodairaType KodairaType::partner() const {
  switch (kind) {
    case FiberKind::I: return {FiberKind::Istar, width};
    case FiberKind::Istar: return {FiberKind::I, width};
    case FiberKind::II: return {FiberKind::IVstar, 0};
    case FiberKind::IVstar: return {FiberKind::II, 0};
    case FiberKind::III: return {FiberKind::IIIstar, 0};
    case FiberKind::IIIstar: return {FiberKind::III, 0};
    case FiberKind::IV: return {FiberKind::IIstar, 0};
    case FiberKind::IIstar: return {FiberKind::IV, 0};
  }
  throw internal_error("unhandled fiber kind");
}

TwistWord KodairaType::twist_word() const {
  const TwistWord a = TwistWord::from_text("a");
  const TwistWord ba = TwistWord::from_text("b a");
  const TwistWord aba = TwistWord::from_text("a b a");
  switch (kind) {
    case FiberKind::I: return twist_pow(a, width);
    case FiberKind::Istar: return twist_pow(a, width) * twist_pow(ba, 3);
    case FiberKind::II: return ba;
    case FiberKind::III: return aba;
    case FiberKind::IV: return twist_pow(ba, 2);
    case FiberKind::IVstar: return twist_pow(ba, 4);
    case FiberKind::IIIstar: return twist_pow(ba, 3) * aba;
    case FiberKind::IIstar: return twist_pow(ba, 5);
  }
  throw internal_error("unhandled fiber kind");
}

std::string KodairaType::label() const {
  switch (kind) {
    case FiberKind::I: return "I" + std::to_string(width);
    case FiberKind::Istar: return "I" + std::to_string(width) + "*";
    case FiberKind::II: return "II";
    case FiberKind::III: return "III";
    case FiberKind::IV: return "IV";
    case FiberKind::IVstar: return "IV*";
    case FiberKind::IIIstar: return "III*";
    case FiberKind::IIstar: return "II*";
  }
  throw internal_error("unhandled fiber kind");
}

KodairaType KodairaType::parse(const std::string& s) {
  if (s == "II") return {FiberKind::II, 0};
  if (s == "III") return {FiberKind::III, 0};
  if (s == "IV") return {FiberKind::IV, 0};
  if (s == "IV*") return {FiberKind::IVstar, 0};
  if (s == "III*") return {FiberKind::IIIstar, 0};
  if (s == "II*") return {FiberKind::IIstar, 0};
  if (s.size() >= 2 && s[0] == 'I') {
    bool st = s.back() == '*';
    std::string digits = s.substr(1, s.size() - 1 - (st ? 1 : 0));
    if (!digits.empty() &&
        std::all_of(digits.begin(), digits.end(),
                    [](char ch) { return ch >= '0' && ch <= '9'; }) &&
        digits.size() <= 9) {
      int w = std::stoi(digits);
      return {st ? FiberKind::Istar : FiberKind::I, w};
    }
  }
  throw input_error("unknown Kodaira type label: " + s);
}

std::vector<MarkedPoint> marked_points(const Dessin& d) {
  VertexCensus c = census(d);
  std::vector<MarkedPoint> out;
  for (std::size_t i = 0; i < c.a2.size(); ++i)
    out.push_back({"a2", int(i), 0});
  for (std::size_t i = 0; i < c.b2.size(); ++i)
    out.push_back({"b2", int(i), 0});
  for (std::size_t i = 0; i < c.cusps.size(); ++i)
    out.push_back({"cusp", int(i), int(c.cusps[i].size())});
  return out;
}

int FiberAssignment::extra_count() const {
  int k = 0;
  for (const auto& [p, t] : fibers)
    if (p.kind == "extra") ++k;
  return k;
}

const KodairaType* FiberAssignment::find(const std::string& id) const {
  for (const auto& [p, t] : fibers)
    if (p.id() == id) return &t;
  return nullptr;
}

namespace {

void check_compatible(const FiberAssignment& c) {
  std::set<std::string> seen;
  for (const auto& [p, t] : c.fibers) {
    bool ok = false;
    if (p.kind == "a2")
      ok = t.kind == FiberKind::II || t.kind == FiberKind::IVstar;
    else if (p.kind == "a2x")
      ok = t.kind == FiberKind::IV || t.kind == FiberKind::IIstar;
    else if (p.kind == "b2")
      ok = t.kind == FiberKind::III || t.kind == FiberKind::IIIstar;
    else if (p.kind == "cusp")
      ok = (t.kind == FiberKind::I || t.kind == FiberKind::Istar) &&
           t.width == p.width;
    else if (p.kind == "extra")
      ok = t.kind == FiberKind::Istar && t.width == 0;
    else
      throw input_error("unknown marked point kind: " + p.kind);
    if (!ok)
      throw input_error("fiber type " + t.label() +
                        " is not compatible with point " + p.id());
    if (!seen.insert(p.id()).second)
      throw input_error("duplicate marked point " + p.id());
  }
}

long euler_sum(const FiberAssignment& c) {
  long s = 0;
  for (const auto& [p, t] : c.fibers) s += t.euler();
  return s;
}

}  // namespace

FiberAssignment minimal_config(const Dessin& d) {
  VertexCensus c = census(d);
  if (c.genus != 0)
    throw input_error("fiber assignments require a genus 0 dessin");
  FiberAssignment out;
  for (const MarkedPoint& p : marked_points(d)) {
    KodairaType t;
    if (p.kind == "a2")
      t = {FiberKind::II, 0};
    else if (p.kind == "b2")
      t = {FiberKind::III, 0};
    else
      t = {FiberKind::I, p.width};
    out.fibers.emplace_back(p, t);
  }
  return out;
}

bool config_valid(const FiberAssignment& c) {
  check_compatible(c);
  long s = euler_sum(c);
  if (s % 6 != 0)
    throw internal_error("compatible assignment with euler sum not divisible by 6");
  return s % 12 == 0;
}

bool minimal_lift_exists(const Dessin& d) {
  bool by_cfg = config_valid(minimal_config(d));
  bool by_et = et(d) % 24 == 0;
  if (by_cfg != by_et)
    throw internal_error("minimal lifting criteria disagree");
  return by_et;
}

std::vector<std::pair<std::string, MatSL2>> assigned_lifts(
    const Dessin& d, const FiberAssignment& c) {
  check_compatible(c);
  std::vector<BoundaryLoop> loops = boundary_words(d);
  std::set<std::string> covered;
  for (const auto& [p, t] : c.fibers)
    if (p.kind != "extra") covered.insert(p.id());
  if (covered.size() != loops.size())
    throw input_error("assignment does not match the dessin's marked points");

  std::vector<std::pair<std::string, MatSL2>> out;
  for (const BoundaryLoop& l : loops) {
    const KodairaType* t = c.find(l.id);
    if (!t)
      throw input_error("assignment has no type for marked point " + l.id);
    MatSL2 core = word_to_matrix(l.core);
    MatSL2 conj = word_to_matrix(l.conj);
    // sign fixing the homological lift of the local monodromy: the exact core
    // lifts are U^2 (a2), S (b2), (US)^w = (-1)^w B^w (cusp); the minimal
    // types II, III, I_w are -U^2, -S, +translation class
    int eps = 1;
    if (l.id.rfind("cusp:", 0) == 0)
      eps = t->width % 2 == 0 ? 1 : -1;
    else
      eps = -1;
    if (t->star()) eps = -eps;
    out.emplace_back(l.id, conj * (eps < 0 ? -core : core) * conj.inverse());
  }
  for (const auto& [p, t] : c.fibers)
    if (p.kind == "extra") out.emplace_back(p.id(), -MatSL2::identity());
  return out;
}

bool verify_product(const Dessin& d, const FiberAssignment& c) {
  MatSL2 prod = MatSL2::identity();
  for (const auto& [id, m] : assigned_lifts(d, c)) prod = prod * m;
  if (prod.is_identity()) return true;
  if ((-prod).is_identity()) return false;
  throw internal_error("lifted boundary product is not plus or minus the identity");
}

SurfaceReport surface_report(const FiberAssignment& c, const Dessin& d) {
  if (!config_valid(c))
    throw input_error("assignment euler sum is not divisible by 12");
  SurfaceReport rep;
  long df_sum = 0;
  for (const auto& [p, t] : c.fibers) {
    rep.euler_total += t.euler();
    rep.deg_j += t.j_pole();
    df_sum += t.defect();
    if (t.star()) ++rep.twist_count;
  }
  rep.r = rep.euler_total / 12;
  rep.df_total = 12 * rep.r - rep.deg_j;
  if (rep.df_total != df_sum)
    throw internal_error("degree defect totals disagree");
  if (24 * rep.r != et(d) + 12 * rep.twist_count)
    throw internal_error("euler accounting 24r = ET + 12t failed");
  rep.cls = rep.r == 1  ? "rational"
            : rep.r == 2 ? "K3"
                         : "F_" + std::to_string(rep.r);
  return rep;
}

std::vector<std::pair<FiberAssignment, SurfaceReport>> enumerate_configs(
    const Dessin& d, int extra, long r_max) {
  VertexCensus cen = census(d);
  if (cen.genus != 0)
    throw input_error("fiber assignments require a genus 0 dessin");
  if (extra < 0) throw input_error("extra point count must be >= 0");
  std::vector<MarkedPoint> mp = marked_points(d);
  if (mp.size() > 22)
    throw input_error("too many marked points to enumerate assignments");

  std::vector<std::pair<FiberAssignment, SurfaceReport>> out;
  for (std::uint32_t mask = 0; mask < (1u << mp.size()); ++mask) {
    FiberAssignment c;
    for (std::size_t i = 0; i < mp.size(); ++i) {
      KodairaType t;
      if (mp[i].kind == "a2")
        t = {FiberKind::II, 0};
      else if (mp[i].kind == "b2")
        t = {FiberKind::III, 0};
      else
        t = {FiberKind::I, mp[i].width};
      if (mask >> i & 1) t = t.partner();
      c.fibers.emplace_back(mp[i], t);
    }
    for (int j = 0; j < extra; ++j)
      c.fibers.emplace_back(MarkedPoint{"extra", j, 0},
                            KodairaType{FiberKind::Istar, 0});
    if (!config_valid(c)) continue;
    if (euler_sum(c) > 12 * r_max) continue;
    SurfaceReport rep = surface_report(c, d);
    out.emplace_back(std::move(c), rep);
  }
  return out;
}

}  // namespace jmono
