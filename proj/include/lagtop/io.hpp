#ifndef LAGTOP_IO_HPP
#define LAGTOP_IO_HPP

#include "lagtop/discriminant.hpp"
#include "lagtop/topsys.hpp"
#include "lagtop/tracking.hpp"

#include <json.hpp>

namespace lagtop {

using json = nlohmann::ordered_json;

json to_json(const MonodromyResult& r);
json to_json(const StratumPoint& p);
json to_json(const IsolationReport& r);
json to_json(const G2Branch& b);
json to_json(const cplx& z);  // [re, im]

/// {"g":..,"m":..,"omega":[..],"gamma":[[..],..]}
TopState state_from_json(const json& j);
json to_json(const TopState& s);

/// {"g":..,"m":..,"h_m1":..,"h":..,"hk":[..]}
LevelVector levels_from_json(const json& j);

/// A loop description: {"named": "kappa1", "orientation": -1, "base": [...]} or
/// {"chart": "g1", "waypoints": [[...], ...], "orientation": 1, "name": "..."}
ParameterLoop loop_from_json(const json& j);

}  // namespace lagtop

#endif
