#include "jmono/pullback.hpp"

#include <map>
#include <sstream>

#include "jmono/arith.hpp"
#include "jmono/error.hpp"
#include "jmono/subgroup.hpp"

namespace jmono {

namespace {

bool parse_ref(const std::string& ref, std::string& kind, int& idx) {
  auto colon = ref.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= ref.size())
    return false;
  kind = ref.substr(0, colon);
  idx = 0;
  for (std::size_t i = colon + 1; i < ref.size(); ++i) {
    if (ref[i] < '0' || ref[i] > '9') return false;
    idx = idx * 10 + (ref[i] - '0');
    if (idx > 1000000) return false;
  }
  return true;
}

// does the assigned member sit in the twist pair the class dictates
bool in_pair(const KodairaType& t, const Preimage& pre) {
  if (pre.cls == "cusp")
    return (t.kind == FiberKind::I || t.kind == FiberKind::Istar) &&
           t.width == pre.width;
  if (pre.cls == "a2")
    return t.kind == FiberKind::II || t.kind == FiberKind::IVstar;
  if (pre.cls == "a2x")
    return t.kind == FiberKind::IV || t.kind == FiberKind::IIstar;
  if (pre.cls == "b2")
    return t.kind == FiberKind::III || t.kind == FiberKind::IIIstar;
  return (t.kind == FiberKind::I || t.kind == FiberKind::Istar) && t.width == 0;
}

struct Induced {
  Preimage pre;
  KodairaType base;   // member before any downstream twist
  MarkedPoint point;  // the id it carries when kept
};

// every preimage with its zero-twist member; smooth points keep their global
// preimage position as the extra index so twist addresses stay stable
std::vector<Induced> induced_table(const Dessin& d, const FiberAssignment& up,
                                   const RamificationProfile& p) {
  std::set<std::string> marked;
  for (const MarkedPoint& m : marked_points(d)) {
    marked.insert(m.id());
    if (!up.find(m.id()))
      throw input_error("upstream assignment has no type for marked point " +
                        m.id());
  }
  for (const auto& [mp, t] : up.fibers)
    if (mp.kind != "extra" && !marked.count(mp.id()))
      throw input_error("upstream assignment has a point outside the dessin: " +
                        mp.id());

  std::vector<Induced> out;
  std::map<std::string, int> cnt;
  int pos = 0;
  for (const Preimage& pre : preimages(d, p, &up)) {
    Induced e{pre, {FiberKind::I, 0}, {}};
    const KodairaType* t = up.find(pre.up);
    if (t)
      e.base = induced_type(*t, pre.a);  // marked points and upstream extras
    if (!in_pair(e.base, pre))
      throw internal_error("induced member escaped its twist pair at " +
                           pre.id());
    if (pre.cls == "smooth") {
      e.point = {"extra", pos, 0};
    } else {
      e.point = {pre.cls, cnt[pre.cls]++, pre.cls == "cusp" ? pre.width : 0};
    }
    out.push_back(std::move(e));
    ++pos;
  }
  return out;
}

}  // namespace

const std::vector<int>* RamificationProfile::find(const std::string& ref) const {
  for (const auto& [r, part] : points)
    if (r == ref) return &part;
  return nullptr;
}

int check_profile(const RamificationProfile& p, const Dessin& d) {
  if (p.deg < 1) throw input_error("profile degree must be positive");
  VertexCensus c = census(d);
  std::map<std::string, int> limit = {{"a2", (int)c.a2.size()},
                                      {"b2", (int)c.b2.size()},
                                      {"cusp", (int)c.cusps.size()},
                                      {"a6", (int)c.a6.size()},
                                      {"b4", (int)c.b4.size()}};
  std::set<std::string> seen;
  long r = 0;
  for (const auto& [ref, part] : p.points) {
    std::string kind;
    int idx = 0;
    if (!parse_ref(ref, kind, idx))
      throw input_error("malformed point reference: " + ref);
    if (limit.count(kind)) {
      if (idx >= limit[kind])
        throw input_error("point reference out of range: " + ref);
    } else if (kind != "extra" && kind != "free") {
      throw input_error("unknown point reference: " + ref);
    }
    if (!seen.insert(ref).second)
      throw input_error("duplicate point reference: " + ref);
    if (part.empty())
      throw input_error("empty partition at " + ref);
    long sum = 0;
    for (int a : part) {
      if (a < 1) throw input_error("partition parts must be positive at " + ref);
      sum += a;
      r += a - 1;
    }
    if (sum != p.deg)
      throw input_error("partition at " + ref + " does not sum to the degree");
  }
  if (r % 2 != 0)
    throw input_error("total ramification violates Riemann-Hurwitz parity");
  long g = 1 - p.deg + r / 2;
  if (g < 0)
    throw input_error("ramification exceeds the Riemann-Hurwitz bound");
  if (g != p.genus)
    throw input_error("declared genus " + std::to_string(p.genus) +
                      " does not match Riemann-Hurwitz genus " +
                      std::to_string(g));
  return (int)g;
}

std::vector<Preimage> preimages(const Dessin& d, const RamificationProfile& p,
                                const FiberAssignment* up) {
  check_profile(p, d);
  struct UpPoint {
    std::string id;
    std::string kind;
    int width = 0;
  };
  std::vector<UpPoint> pts;
  for (const MarkedPoint& m : marked_points(d))
    pts.push_back({m.id(), m.kind, m.width});
  VertexCensus c = census(d);
  for (std::size_t i = 0; i < c.a6.size(); ++i)
    pts.push_back({"a6:" + std::to_string(i), "a6", 0});
  for (std::size_t i = 0; i < c.b4.size(); ++i)
    pts.push_back({"b4:" + std::to_string(i), "b4", 0});
  std::set<std::string> extras;
  if (up)
    for (const auto& [mp, t] : up->fibers)
      if (mp.kind == "extra") {
        pts.push_back({mp.id(), "extra", 0});
        extras.insert(mp.id());
      }
  for (const auto& [ref, part] : p.points) {
    if (ref.rfind("extra:", 0) == 0 && !extras.count(ref))
      throw input_error("profile references an extra point absent upstream: " +
                        ref);
    if (ref.rfind("free:", 0) == 0) pts.push_back({ref, "free", 0});
  }

  std::vector<Preimage> out;
  for (const UpPoint& q : pts) {
    const std::vector<int>* part = p.find(q.id);
    std::vector<int> ones;
    if (!part) {
      ones.assign(p.deg, 1);
      part = &ones;
    }
    for (int j = 0; j < (int)part->size(); ++j) {
      int a = (*part)[j];
      Preimage pre{q.id, j, a, "smooth", 0};
      if (q.kind == "cusp") {
        pre.cls = "cusp";
        pre.width = a * q.width;
      } else if (q.kind == "a2") {
        pre.cls = a % 3 == 1 ? "a2" : a % 3 == 2 ? "a2x" : "smooth";
      } else if (q.kind == "b2") {
        pre.cls = a % 2 == 1 ? "b2" : "smooth";
      }
      out.push_back(std::move(pre));
    }
  }
  return out;
}

KodairaType induced_type(const KodairaType& up, int a) {
  if (a < 1) throw input_error("ramification index must be positive");
  MatSL2 m = pow(up.rep(), (long)a);
  const MatSL2 I = MatSL2::identity();
  const MatSL2 U2 = kU * kU;
  const std::pair<MatSL2, KodairaType> table[] = {
      {I, {FiberKind::I, 0}},        {-I, {FiberKind::Istar, 0}},
      {kU, {FiberKind::IIstar, 0}},  {U2, {FiberKind::IVstar, 0}},
      {-kU, {FiberKind::IV, 0}},     {-U2, {FiberKind::II, 0}},
      {kS, {FiberKind::IIIstar, 0}}, {-kS, {FiberKind::III, 0}},
  };
  for (const auto& [mat, t] : table)
    if (m == mat) return t;
  MatInfo info = classify_element(m);
  if (info.cls != MatClass::Parabolic)
    throw internal_error("power of a fiber representative escaped the table");
  return {info.sign > 0 ? FiberKind::I : FiberKind::Istar, (int)info.width};
}

FiberAssignment pullback_config(const Dessin& d, const FiberAssignment& up,
                                const RamificationProfile& p,
                                const std::set<std::string>& twists) {
  std::vector<Induced> tab = induced_table(d, up, p);
  std::set<std::string> ids;
  for (const Induced& e : tab) ids.insert(e.pre.id());
  for (const std::string& t : twists)
    if (!ids.count(t))
      throw input_error("twist of a point not in the profile: " + t);
  FiberAssignment out;
  for (const Induced& e : tab) {
    KodairaType t = twists.count(e.pre.id()) ? e.base.partner() : e.base;
    if (t.kind == FiberKind::I && t.width == 0) continue;  // stayed smooth
    out.fibers.emplace_back(e.point, t);
  }
  return out;
}

FiberAssignment induced_config(const Dessin& d, const RamificationProfile& p,
                               const std::set<std::string>& twists) {
  return pullback_config(d, minimal_config(d), p, twists);
}

InducedVerdict is_induced(const FiberAssignment& cB, const Dessin& d,
                          const RamificationProfile& p,
                          const FiberAssignment& up) {
  std::vector<Induced> tab = induced_table(d, up, p);
  {
    std::set<std::string> seen;
    for (const auto& [mp, t] : cB.fibers)
      if (!seen.insert(mp.id()).second)
        throw input_error("duplicate marked point " + mp.id());
  }
  long flips = 0;
  std::size_t consumed = 0;
  for (const Induced& e : tab) {
    const KodairaType* t = cB.find(e.point.id());
    if (!t) {
      if (e.pre.cls != "smooth")
        throw input_error("assignment is missing induced point " +
                          e.point.id());
      // absent smooth point means I0 there; a twist if the pullback has I0*
      if (e.base.kind == FiberKind::Istar) ++flips;
      continue;
    }
    ++consumed;
    if (!(*t == e.base || *t == e.base.partner()))
      throw input_error("fiber type " + t->label() +
                        " is not compatible with induced point " +
                        e.point.id());
    if (!(*t == e.base)) ++flips;
  }
  if (consumed != cB.fibers.size())
    throw input_error("assignment has points outside the induced set");
  InducedVerdict v;
  v.induced = flips == 0;
  v.twists = flips;
  v.parity_even = flips % 2 == 0;
  return v;
}

InducedVerdict is_induced(const FiberAssignment& cB, const Dessin& d,
                          const RamificationProfile& p) {
  return is_induced(cB, d, p, minimal_config(d));
}

PullbackGroup pullback_group(const Dessin& d, const FiberAssignment& cUp,
                             const RamificationProfile& p, long max_cosets) {
  if (check_profile(p, d) != 0)
    throw input_error("pullback group analysis requires a genus 0 base");
  if (!config_valid(cUp))
    throw input_error("upstream assignment is not a valid configuration");

  std::vector<std::pair<std::string, MatSL2>> lifts = assigned_lifts(d, cUp);
  std::map<std::string, MatSL2> lift_of;
  std::vector<MatSL2> up_gens;
  for (const auto& [id, m] : lifts) {
    lift_of.emplace(id, m);
    up_gens.push_back(m);
  }
  FoldResult up_fold = fold_generated(up_gens, max_cosets);
  if (up_fold.psl.n != d.n ||
      pointed_key(up_fold.psl, 0) != pointed_key(d, 0))
    throw internal_error("upstream boundary lifts do not regenerate the dessin");

  std::vector<MatSL2> b_gens;
  for (const Induced& e : induced_table(d, cUp, p)) {
    auto it = lift_of.find(e.pre.up);
    if (it == lift_of.end()) continue;  // a6/b4/free points carry no monodromy
    b_gens.push_back(pow(it->second, (long)e.pre.a));
  }
  FoldResult b_fold = fold_generated(b_gens, max_cosets);
  for (const MatSL2& g : b_gens)
    if (act_sl(up_fold, g) != 0)
      throw internal_error("pulled-back generator escaped the upstream group");
  if (b_fold.psl.n % d.n != 0 || b_fold.sl_index % up_fold.sl_index != 0)
    throw internal_error("pullback indices are not multiples of the upstream ones");

  PullbackGroup out;
  out.up_minus_one = up_fold.contains_minus_one;
  out.b_minus_one = b_fold.contains_minus_one;
  out.up_sl_index = up_fold.sl_index;
  out.b_sl_index = b_fold.sl_index;
  out.psl_preserved = b_fold.psl.n == d.n;
  out.index = out.up_minus_one && !out.b_minus_one ? 2 : 1;
  if (out.psl_preserved &&
      out.b_sl_index != out.up_sl_index * (out.index == 2 ? 2 : 1))
    throw internal_error("center dichotomy disagrees with the coset count");
  for (const auto& [ref, part] : p.points)
    for (int a : part)
      if (a > 1) {
        ++out.branch_points;
        break;
      }
  int ramified = 0;
  if (out.index == 2 && out.psl_preserved) {
    int sum = 0;
    for (const auto& [id, m] : lifts) {
      int v = act_sl(b_fold, m) == 0 ? 0 : 1;
      out.character.emplace_back(id, v);
      sum += v;
      ramified += v;
    }
    if (sum % 2 != 0)
      throw internal_error("center character does not vanish on the product");
  }

  std::ostringstream os;
  os << "index " << out.index << ": -I "
     << (out.up_minus_one ? "present" : "absent") << " upstream, "
     << (out.b_minus_one ? "present" : "absent") << " after pullback";
  if (!out.psl_preserved)
    os << "; PSL image drops from index " << d.n << " to " << b_fold.psl.n;
  if (out.index == 2 && out.psl_preserved)
    os << "; the center double cover is ramified over " << ramified
       << " upstream points";
  out.description = os.str();
  return out;
}

}  // namespace jmono
