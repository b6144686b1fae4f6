#pragma once
#include <json.hpp>
#include <string>

#include "jmono/dessin.hpp"
#include "jmono/fibers.hpp"
#include "jmono/pullback.hpp"
#include "jmono/weierstrass.hpp"

namespace jmono {

using json = nlohmann::json;

// wraps nlohmann parse/type failures into input_error
json parse_json(const std::string& text);

// {"n": 6, "s2": [[1,4],[2,6],[3,5]], "s3": [[1,2,3],[4,5,6]]}
// 1-indexed disjoint cycles, fixed points omitted
json dessin_to_json(const Dessin& d);
Dessin dessin_from_json(const json& j);

// {"fibers":[{"point":"cusp:0","type":"I2*"},...],"extra":1}
json config_to_json(const FiberAssignment& c);
// points must name marked points of d; the assignment may be partial
FiberAssignment config_from_json(const json& j, const Dessin& d);

json report_to_json(const SurfaceReport& r);

// {"deg":2,"points":[{"ref":"cusp:0","partition":[2]},...],"genus":0}
json profile_to_json(const RamificationProfile& p);
RamificationProfile profile_from_json(const json& j);

// {"r":1,"p":["0","1"],"q":["1"]} - coefficients ascending, "a" or "a/b"
WeierstrassModel model_from_json(const json& j);
json place_to_json(const PlaceReport& p);
json model_report_to_json(const ModelReport& r);

json pullback_group_to_json(const PullbackGroup& g);

}  // namespace jmono
