#include "jmono/json_io.hpp"

#include <numeric>
#include <set>

#include "jmono/error.hpp"

namespace jmono {

namespace {

// sentinel valuations (zero polynomial) render as null
json val_or_null(long v) {
  if (v > (1L << 39)) return nullptr;
  return v;
}

int geti(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw input_error(std::string("expected integer field \"") + key + "\"");
  return j[key].get<int>();
}

// apply one 1-indexed cycle to a permutation being assembled
void apply_cycle(const json& cyc, std::size_t max_len, std::vector<int>& perm,
                 std::vector<char>& seen, const char* name) {
  if (!cyc.is_array() || cyc.empty() || cyc.size() > max_len)
    throw input_error(std::string("bad cycle in \"") + name + "\"");
  int n = static_cast<int>(perm.size());
  std::vector<int> c;
  for (const json& v : cyc) {
    if (!v.is_number_integer())
      throw input_error(std::string("bad cycle entry in \"") + name + "\"");
    int x = v.get<int>();
    if (x < 1 || x > n)
      throw input_error(std::string("cycle entry out of range in \"") + name + "\"");
    if (seen[x - 1])
      throw input_error(std::string("point repeated in \"") + name + "\" cycles");
    seen[x - 1] = 1;
    c.push_back(x - 1);
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    perm[c[i]] = c[(i + 1) % c.size()];
}

rational rational_from_json(const json& v) {
  if (v.is_number_integer()) return rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return rational(v.get<std::string>());
    } catch (const std::exception&) {
      throw input_error("bad rational literal: " + v.get<std::string>());
    }
  }
  throw input_error("coefficients must be integers or \"a/b\" strings");
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("invalid JSON: ") + e.what());
  }
}

json dessin_to_json(const Dessin& d) {
  VertexCensus c = census(d);
  json s2 = json::array(), s3 = json::array();
  for (const auto& p : c.b4) s2.push_back({p[0] + 1, p[1] + 1});
  for (const auto& t : c.a6) s3.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
  return {{"n", d.n}, {"s2", s2}, {"s3", s3}};
}

Dessin dessin_from_json(const json& j) {
  if (!j.is_object()) throw input_error("dessin must be a JSON object");
  int n = geti(j, "n");
  if (n < 1 || n > 1000000) throw input_error("n out of range");
  std::vector<int> s2(n), s3(n);
  std::iota(s2.begin(), s2.end(), 0);
  std::iota(s3.begin(), s3.end(), 0);
  std::vector<char> seen2(n, 0), seen3(n, 0);
  if (j.contains("s2")) {
    if (!j["s2"].is_array()) throw input_error("\"s2\" must be a list of cycles");
    for (const json& cyc : j["s2"]) apply_cycle(cyc, 2, s2, seen2, "s2");
  }
  if (j.contains("s3")) {
    if (!j["s3"].is_array()) throw input_error("\"s3\" must be a list of cycles");
    for (const json& cyc : j["s3"]) apply_cycle(cyc, 3, s3, seen3, "s3");
  }
  return Dessin::make(std::move(s2), std::move(s3));
}

json config_to_json(const FiberAssignment& c) {
  json fibers = json::array();
  int extra = 0;
  for (const auto& [pt, ty] : c.fibers) {
    if (pt.kind == "extra")
      ++extra;
    else
      fibers.push_back({{"point", pt.id()}, {"type", ty.label()}});
  }
  return {{"fibers", fibers}, {"extra", extra}};
}

FiberAssignment config_from_json(const json& j, const Dessin& d) {
  if (!j.is_object()) throw input_error("assignment must be a JSON object");
  std::vector<MarkedPoint> pts = marked_points(d);
  FiberAssignment out;
  std::set<std::string> used;
  if (j.contains("fibers")) {
    if (!j["fibers"].is_array()) throw input_error("\"fibers\" must be a list");
    for (const json& f : j["fibers"]) {
      if (!f.is_object() || !f.contains("point") || !f.contains("type") ||
          !f["point"].is_string() || !f["type"].is_string())
        throw input_error("each fiber needs \"point\" and \"type\" strings");
      std::string id = f["point"].get<std::string>();
      if (!used.insert(id).second)
        throw input_error("point assigned twice: " + id);
      const MarkedPoint* found = nullptr;
      for (const MarkedPoint& p : pts)
        if (p.id() == id) found = &p;
      if (!found) throw input_error("not a marked point of the dessin: " + id);
      out.fibers.emplace_back(*found,
                              KodairaType::parse(f["type"].get<std::string>()));
    }
  }
  int extra = j.contains("extra") ? geti(j, "extra") : 0;
  if (extra < 0 || extra > 1000000) throw input_error("\"extra\" out of range");
  for (int i = 0; i < extra; ++i)
    out.fibers.emplace_back(MarkedPoint{"extra", i, 0},
                            KodairaType{FiberKind::Istar, 0});
  return out;
}

json report_to_json(const SurfaceReport& r) {
  return {{"euler_total", r.euler_total}, {"r", r.r},
          {"deg_j", r.deg_j},             {"df_total", r.df_total},
          {"twist_count", r.twist_count}, {"class", r.cls}};
}

json profile_to_json(const RamificationProfile& p) {
  json points = json::array();
  for (const auto& [ref, part] : p.points)
    points.push_back({{"ref", ref}, {"partition", part}});
  return {{"deg", p.deg}, {"points", points}, {"genus", p.genus}};
}

RamificationProfile profile_from_json(const json& j) {
  if (!j.is_object()) throw input_error("profile must be a JSON object");
  RamificationProfile p;
  p.deg = geti(j, "deg");
  p.genus = j.contains("genus") ? geti(j, "genus") : 0;
  if (j.contains("points")) {
    if (!j["points"].is_array()) throw input_error("\"points\" must be a list");
    for (const json& pt : j["points"]) {
      if (!pt.is_object() || !pt.contains("ref") || !pt["ref"].is_string() ||
          !pt.contains("partition") || !pt["partition"].is_array())
        throw input_error("each point needs \"ref\" and \"partition\"");
      std::vector<int> part;
      for (const json& v : pt["partition"]) {
        if (!v.is_number_integer())
          throw input_error("partition entries must be integers");
        part.push_back(v.get<int>());
      }
      p.points.emplace_back(pt["ref"].get<std::string>(), std::move(part));
    }
  }
  return p;
}

WeierstrassModel model_from_json(const json& j) {
  if (!j.is_object()) throw input_error("model must be a JSON object");
  int r = geti(j, "r");
  auto coeffs = [&j](const char* key) {
    std::vector<rational> c;
    if (!j.contains(key)) return c;
    if (!j[key].is_array())
      throw input_error(std::string("\"") + key + "\" must be a coefficient list");
    for (const json& v : j[key]) c.push_back(rational_from_json(v));
    return c;
  };
  return WeierstrassModel::make(r, RationalPoly(coeffs("p")),
                                RationalPoly(coeffs("q")));
}

json place_to_json(const PlaceReport& p) {
  return {{"place", p.place},
          {"multiplicity", p.multiplicity},
          {"v_p", val_or_null(p.v_p)},
          {"v_q", val_or_null(p.v_q)},
          {"v_delta", p.v_delta},
          {"shifts", p.shifts},
          {"type", p.kodaira.label()},
          {"df", p.df},
          {"e", p.e},
          {"j_pole", p.j_pole}};
}

json model_report_to_json(const ModelReport& r) {
  json places = json::array(), fibers = json::array();
  for (const PlaceReport& p : r.places) places.push_back(place_to_json(p));
  for (const KodairaType& t : r.fibers) fibers.push_back(t.label());
  return {{"r", r.r},           {"deg_j", r.deg_j}, {"df_total", r.df_total},
          {"euler_total", r.euler_total},           {"shifts", r.shifts},
          {"places", places},  {"fibers", fibers}};
}

json pullback_group_to_json(const PullbackGroup& g) {
  json chi = json::array();
  for (const auto& [id, bit] : g.character) chi.push_back({{"loop", id}, {"value", bit}});
  return {{"index", g.index},
          {"up_minus_one", g.up_minus_one},
          {"b_minus_one", g.b_minus_one},
          {"up_sl_index", g.up_sl_index},
          {"b_sl_index", g.b_sl_index},
          {"psl_preserved", g.psl_preserved},
          {"branch_points", g.branch_points},
          {"character", chi},
          {"description", g.description}};
}

}  // namespace jmono
