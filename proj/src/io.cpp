#include "lagtop/io.hpp"

namespace lagtop {

json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json to_json(const MonodromyResult& r)
{
    json j;
    j["schema_version"] = MonodromyResult::schema_version;
    j["name"] = r.name;
    j["route"] = r.route;
    j["basis"] = r.basis;
    j["matrix"] = r.matrix;
    j["residual"] = r.residual;
    j["tracking_residual"] = r.tracking_residual;
    j["final_residual"] = r.final_residual;
    j["permutation"] = r.permutation;
    j["orientation"] = r.orientation;
    j["steps_used"] = r.steps_used;
    j["condition"] = r.condition;
    j["determinant"] = determinant(r.matrix);
    j["tolerances"] = r.tolerances;
    return j;
}

json to_json(const StratumPoint& p)
{
    json w = json::array();
    for (auto& z : p.witness)
        w.push_back(to_json(z));
    return {{"kind", kind_name(p.kind)},
            {"location", p.location},
            {"witness", w},
            {"normalized_disc", p.normalized_disc}};
}

json to_json(const IsolationReport& r)
{
    return {{"family", r.family == IsolationReport::Family::A3 ? "A3" : "intro"},
            {"radius", r.radius},
            {"grid", r.grid},
            {"samples", r.samples},
            {"origin_disc", r.origin_disc},
            {"min_normalized_disc", r.min_normalized_disc},
            {"argmin", {r.argmin.first, r.argmin.second}},
            {"floor", r.floor},
            {"isolated", r.isolated}};
}

json to_json(const G2Branch& b)
{
    return {{"c2", b.c2},         {"sign", b.sign},     {"alpha", b.alpha},
            {"a", b.a},           {"b", b.b},           {"c", b.c},
            {"c1", b.c1},         {"d1", b.d1},         {"d2", b.d2},
            {"Delta1", b.Delta1}, {"Delta2", b.Delta2}, {"Delta1_direct", b.Delta1_direct},
            {"Delta2_direct", b.Delta2_direct},         {"factor_residual", b.factor_residual}};
}

TopState state_from_json(const json& j)
{
    int g = j.at("g").get<int>();
    double m = j.value("m", 0.0);
    auto w = j.at("omega").get<std::vector<double>>();
    if (w.size() != 3)
        throw std::invalid_argument("omega needs 3 entries");
    std::vector<Vec3> rows;
    if (j.contains("gamma"))
        for (auto& r : j.at("gamma")) {
            auto v = r.get<std::vector<double>>();
            if (v.size() != 3)
                throw std::invalid_argument("gamma rows need 3 entries");
            rows.push_back({v[0], v[1], v[2]});
        }
    TopState s(g, m, {w[0], w[1], w[2]}, rows);
    s.validate();
    return s;
}

json to_json(const TopState& s)
{
    json rows = json::array();
    for (auto& r : s.gamma)
        rows.push_back({r[0], r[1], r[2]});
    return {{"g", s.g}, {"m", s.m}, {"omega", {s.omega[0], s.omega[1], s.omega[2]}}, {"gamma", rows}};
}

LevelVector levels_from_json(const json& j)
{
    LevelVector h;
    h.g = j.at("g").get<int>();
    h.m = j.value("m", 0.0);
    h.h_m1 = j.at("h_m1").get<double>();
    h.h = j.at("h").get<double>();
    h.hk = j.at("hk").get<std::vector<double>>();
    h.validate();
    return h;
}

ParameterLoop loop_from_json(const json& j)
{
    int orientation = j.value("orientation", j.contains("named") ? -1 : 1);
    if (j.contains("named")) {
        std::optional<std::vector<double>> base;
        if (j.contains("base"))
            base = j.at("base").get<std::vector<double>>();
        return named_loop(j.at("named").get<std::string>(), orientation, base);
    }
    std::string chart = j.value("chart", "g1");
    ParameterLoop::Chart c = chart == "g1"   ? ParameterLoop::Chart::G1
                             : chart == "g2" ? ParameterLoop::Chart::G2
                             : chart == "full"
                                 ? ParameterLoop::Chart::Full
                                 : throw std::invalid_argument("unknown chart: " + chart);
    int g = j.value("g", c == ParameterLoop::Chart::G2 ? 2 : 1);
    auto wps = j.at("waypoints").get<std::vector<std::vector<double>>>();
    return ParameterLoop::from_waypoints(c, g, wps, orientation, j.value("name", std::string("waypoints")));
}

}  // namespace lagtop
