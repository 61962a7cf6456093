// lagtop: command-line front end.
//
//   lagtop simulate     --g 1 --state '{"omega":[..],"gamma":[[..]]}' --t 10 --dt 1e-3
//   lagtop invariants   --g 2 --state ...
//   lagtop spectral     --g 1 --state ...        (or --levels '{"h_m1":..,"h":..,"hk":[..]}')
//   lagtop discriminant --c 0 [--g2] [--isolation 0.1]
//   lagtop monodromy    --g 1 --loop cushman --base 0,1,0
//   lagtop actions      --a 0.3,1,0.1
//
// Every command also takes --config file.json whose keys are the long flag
// names; flags given on the command line win. LAGTOP_TOL sets the default
// quadrature tolerance. Failures print {"error": {...}} and exit nonzero.

#include "lagtop/discriminant.hpp"
#include "lagtop/io.hpp"
#include "lagtop/periods.hpp"
#include "lagtop/spectral.hpp"
#include "lagtop/topsys.hpp"
#include "lagtop/tracking.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace lagtop;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (tok.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + tok + "'");
        }
    }
    return v;
}

// a config value may arrive as JSON (from the file) or as a string (from a flag)
json as_json(const json& v)
{
    if (v.is_string()) {
        auto s = v.get<std::string>();
        if (!s.empty() && (s[0] == '{' || s[0] == '['))
            return json::parse(s);
    }
    return v;
}

std::vector<double> as_list(const json& v)
{
    if (v.is_array())
        return v.get<std::vector<double>>();
    if (v.is_string())
        return parse_list(v.get<std::string>());
    throw UsageError("expected a list of numbers");
}

double default_tol()
{
    if (const char* e = std::getenv("LAGTOP_TOL")) {
        char* end = nullptr;
        double t = std::strtod(e, &end);
        if (end == e || !(t > 0))
            throw UsageError("LAGTOP_TOL must be a positive number");
        return t;
    }
    return 1e-12;
}

struct Job {
    json cfg;

    bool has(const std::string& k) const { return cfg.contains(k) && !cfg[k].is_null(); }
    template <class T>
    T get(const std::string& k, T def) const
    {
        if (!has(k))
            return def;
        const json& v = cfg[k];
        if constexpr (std::is_arithmetic_v<T>) {
            if (v.is_string())
                return (T)std::stod(v.get<std::string>());
        }
        return v.get<T>();
    }
    template <class T>
    T need(const std::string& k) const
    {
        if (!has(k))
            throw UsageError("missing required option --" + k);
        return get<T>(k, T{});
    }

    QuadTol quad() const
    {
        double rel = get<double>("tol", default_tol());
        return {rel / 10, rel};
    }

    TopState state() const
    {
        json j = as_json(cfg.at("state"));
        if (!j.contains("g"))
            j["g"] = need<int>("g");
        if (!j.contains("m"))
            j["m"] = get<double>("m", 0.0);
        return state_from_json(j);
    }
};

void emit(const json& j, const Job& job)
{
    std::string path = job.get<std::string>("json-out", "");
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << j.dump(2) << "\n";
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    return f;
}

json tol_json(const Job& job)
{
    QuadTol q = job.quad();
    return {{"quad_abs", q.abs}, {"quad_rel", q.rel}};
}

// ------------------------------------------------------------ commands

void cmd_simulate(const Job& job)
{
    TopState s = job.state();
    double t = job.get<double>("t", 10.0), dt = job.get<double>("dt", 1e-3);
    int stride = job.get<int>("stride", 100);
    Trajectory tr = integrate(s, t, dt, stride);
    std::string out = job.get<std::string>("out", "trajectory.csv");
    auto f = open_out(out);
    f.precision(17);
    write_trajectory_csv(f, tr);
    json drift;
    auto names = integral_names(s.g);
    for (size_t k = 0; k < names.size(); ++k)
        drift[names[k]] = tr.max_rel_drift[k];
    emit({{"schema_version", 1},
          {"command", "simulate"},
          {"csv", out},
          {"samples", tr.t.size()},
          {"t_end", t},
          {"max_rel_drift", drift},
          {"tolerances", {{"dt", dt}, {"stride", stride}}}},
         job);
}

void cmd_invariants(const Job& job)
{
    TopState s = job.state();
    FirstIntegrals fi = first_integrals(s);
    json H;
    auto names = integral_names(s.g);
    auto v = fi.levels.values();
    for (size_t k = 0; k < names.size(); ++k)
        H[names[k]] = v[k];
    emit({{"schema_version", 1}, {"command", "invariants"}, {"g", s.g}, {"m", s.m},
          {"integrals", H}, {"H0", fi.H0}, {"tolerances", json::object()}},
         job);
}

void cmd_spectral(const Job& job)
{
    SpectralCoeffs f;
    json extra = json::object();
    if (job.has("state")) {
        TopState s = job.state();
        f = spectral_from_state(s);
        extra["identity_residual"] = spectral_identity_residual(s);
    } else if (job.has("levels")) {
        json j = as_json(job.cfg.at("levels"));
        if (!j.contains("g"))
            j["g"] = job.need<int>("g");
        if (!j.contains("m"))
            j["m"] = job.get<double>("m", 0.0);
        f = spectral_from_levels(levels_from_json(j));
    } else {
        throw UsageError("spectral needs --state or --levels");
    }
    ComponentCheck cc = component_check(f);
    emit({{"schema_version", 1},
          {"command", "spectral"},
          {"g", f.g},
          {"coefficients", f.a},
          {"descending", f.descending()},
          {"residual", extra.value("identity_residual", 0.0)},
          {"in_component_C", cc.in_C},
          {"near_discriminant", cc.near_discriminant},
          {"real_roots", cc.real_roots},
          {"normalized_disc", cc.normalized_disc},
          {"tolerances", {{"identity", 1e-12}, {"component_disc", 1e-12}}}},
         job);
}

void cmd_discriminant(const Job& job)
{
    json out{{"schema_version", 1}, {"command", "discriminant"}};
    int n = job.get<int>("samples", 201);
    std::string csv = job.get<std::string>("out", "");
    if (job.get<bool>("g2", false)) {
        double lo = job.get<double>("c2-min", 0.5), hi = job.get<double>("c2-max", 2.0);
        if (!csv.empty()) {
            auto f = open_out(csv);
            write_g2_branch_csv(f, lo, hi, n);
            out["csv"] = csv;
        }
        json pts = json::array();
        for (int sign : {1, -1})
            for (int i = 0; i < 5; ++i)
                pts.push_back(to_json(g2_branch(lo + (hi - lo) * i / 4, sign)));
        out["g2_branch"] = pts;
    } else {
        double c = job.get<double>("c", 0.0);
        if (!csv.empty()) {
            auto f = open_out(csv);
            write_section_csv(f, c, job.get<double>("u-min", -3.0), job.get<double>("u-max", 3.0), n);
            out["csv"] = csv;
        }
        out["c"] = c;
        json pts = json::array();
        for (auto& p : classify_special_points(c))
            pts.push_back(to_json(p));
        out["special_points"] = pts;
    }
    if (job.has("isolation")) {
        double r = job.get<double>("isolation", 0.1);
        int grid = job.get<int>("grid", 100);
        out["isolation"] = {to_json(a3_isolated_check(r, grid, IsolationReport::Family::A3)),
                            to_json(a3_isolated_check(r, grid, IsolationReport::Family::Intro))};
    }
    out["tolerances"] = {{"witness_disc", 1e-9}};
    emit(out, job);
}

ParameterLoop job_loop(const Job& job)
{
    json loop_json;
    if (job.has("waypoints")) {
        loop_json["waypoints"] = as_json(job.cfg.at("waypoints"));
        int g = job.get<int>("g", 1);
        loop_json["chart"] = job.get<std::string>("chart", g == 2 ? "g2" : "g1");
        loop_json["g"] = g;
        loop_json["orientation"] = job.get<int>("orientation", 1);
        loop_json["name"] = job.get<std::string>("name", "waypoints");
    } else {
        std::string name = job.get<std::string>("loop", "");
        if (name.empty())
            throw UsageError("monodromy needs --loop or --waypoints");
        loop_json["named"] = name;
        loop_json["orientation"] = job.get<int>("orientation", -1);
        if (job.has("base"))
            loop_json["base"] = as_list(job.cfg.at("base"));
    }
    ParameterLoop l = loop_from_json(loop_json);
    if (job.has("g") && job.get<int>("g", l.g) != l.g)
        throw UsageError("--g does not match the loop's genus");
    return l;
}

void cmd_monodromy(const Job& job)
{
    ParameterLoop loop = job_loop(job);
    TrackOptions opt;
    opt.quad = job.quad();
    opt.min_steps = job.get<int>("steps", opt.min_steps);
    opt.step_tol = job.get<double>("step-tol", 0.0);
    std::string route = job.get<std::string>("route", "auto");
    if (route == "auto")
        route = loop.g == 1 && loop.name == "cushman" ? "actions" : "periods";
    MonodromyResult r;
    if (route == "actions")
        r = monodromy_actions_g1(loop, job.get<double>("A", 1.0), opt);
    else if (route == "periods")
        r = monodromy_periods(loop, opt);
    else if (route == "pl")
        r = picard_lefschetz_route(loop);
    else
        throw UsageError("route must be actions, periods, pl or auto");
    bool torus = job.get<bool>("torus", loop.g == 2 && loop.name.rfind("kappa", 0) == 0);
    json j = to_json(torus && route != "actions" ? to_torus_basis(r) : r);
    if (torus && route != "actions")
        j["full_basis_matrix"] = r.matrix;
    emit(j, job);
}

void cmd_actions(const Job& job)
{
    auto v = as_list(job.cfg.at("a"));
    if (v.size() != 3)
        throw UsageError("--a takes a1,a2,a3");
    std::array<double, 3> a{v[0], v[1], v[2]};
    double A = job.get<double>("A", 1.0);
    QuadTol q = job.quad();
    double I1 = action_I1(a, A, q);
    json out{{"schema_version", 1},
             {"command", "actions"},
             {"a", v},
             {"A", A},
             {"I", {I1, A * a[0] / 2, A * a[2] / 2}},
             {"residue_residual", residue_check(a, q)}};
    try {
        double I1c = action_I1_cubic(a, A);
        out["I1_cubic"] = I1c;
        out["cross_check_residual"] = std::abs(I1 - I1c);
    } catch (const std::domain_error& e) {
        out["cross_check_residual"] = nullptr;
        out["cross_check_note"] = e.what();
    }
    out["tolerances"] = tol_json(job);
    emit(out, job);
}

int fail(const std::string& type, const std::string& msg, int code)
{
    json e{{"error", {{"type", type}, {"message", msg}}}};
    std::cout << e.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lax-pair top toolkit: simulation, spectral curves, discriminants, monodromy"};
    app.require_subcommand(1);
    std::string config;
    app.add_option("--config", config, "JSON file with option values")->check(CLI::ExistingFile);

    struct Flag {
        std::string name, help;
        bool is_switch = false;
    };
    const std::vector<Flag> common{{"g", "genus"},
                                   {"m", "the parameter m"},
                                   {"tol", "quadrature tolerance (default LAGTOP_TOL or 1e-12)"},
                                   {"json-out", "write the JSON result to this file"},
                                   {"config", "JSON file with option values"}};
    const std::map<std::string, std::vector<Flag>> per{
        {"simulate",
         {{"state", "state JSON"}, {"t", "end time"}, {"dt", "step"}, {"stride", "sample stride"},
          {"out", "trajectory CSV path"}}},
        {"invariants", {{"state", "state JSON"}}},
        {"spectral", {{"state", "state JSON"}, {"levels", "level vector JSON"}}},
        {"discriminant",
         {{"c", "section a3 = c"}, {"g2", "sample the g = 2 branch instead", true},
          {"c2-min", "branch range"}, {"c2-max", "branch range"}, {"u-min", "section range"},
          {"u-max", "section range"}, {"samples", "CSV rows"}, {"out", "CSV path"},
          {"isolation", "run the isolated-point scan with this radius"}, {"grid", "scan grid"}}},
        {"monodromy",
         {{"loop", "cushman | kappa1 | kappa2 | kappa3"}, {"waypoints", "JSON list of points"},
          {"chart", "g1 | g2 | full"}, {"name", "loop name"}, {"base", "base point a,b,c"},
          {"orientation", "+1 or -1"}, {"route", "auto | actions | periods | pl"},
          {"torus", "reduce g = 2 results to (gamma_1, gamma_3, gamma_inf)", true},
          {"steps", "minimum continuation steps"}, {"step-tol", "per-step lattice residual"},
          {"A", "moment of inertia A"}}},
        {"actions", {{"a", "a1,a2,a3"}, {"A", "moment of inertia A"}}},
    };

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::map<std::string, bool>> switches;
    std::map<std::string, CLI::App*> subs;
    for (auto& [cmd, flags] : per) {
        static const std::map<std::string, std::string> about{
            {"simulate", "integrate the flow and write a CSV trajectory"},
            {"invariants", "evaluate the first integrals at a state"},
            {"spectral", "spectral curve coefficients from a state or from levels"},
            {"discriminant", "discriminant sections, special points, g = 2 branch"},
            {"monodromy", "integer monodromy matrix along a parameter loop"},
            {"actions", "action integrals at a parameter point"}};
        CLI::App* sub = app.add_subcommand(cmd, about.at(cmd));
        subs[cmd] = sub;
        std::vector<Flag> all = common;
        all.insert(all.end(), flags.begin(), flags.end());
        for (auto& f : all) {
            if (f.is_switch)
                sub->add_flag("--" + f.name, switches[cmd][f.name], f.help);
            else
                sub->add_option("--" + f.name, values[cmd][f.name], f.help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        std::string cmd;
        for (auto& [name, sub] : subs)
            if (sub->parsed())
                cmd = name;
        if (subs[cmd]->count("--config") > 0)
            config = values[cmd]["config"];
        values[cmd].erase("config");

        Job job;
        job.cfg = json::object();
        if (!config.empty()) {
            std::ifstream f(config);
            if (!f)
                throw UsageError("cannot read config file " + config);
            job.cfg = json::parse(f);
            if (!job.cfg.is_object())
                throw UsageError("config file must hold a JSON object");
        }
        for (auto& [k, v] : values[cmd])
            if (subs[cmd]->count("--" + k) > 0)
                job.cfg[k] = v;
        for (auto& [k, v] : switches[cmd])
            if (subs[cmd]->count("--" + k) > 0)
                job.cfg[k] = v;

        if (cmd == "simulate")
            cmd_simulate(job);
        else if (cmd == "invariants")
            cmd_invariants(job);
        else if (cmd == "spectral")
            cmd_spectral(job);
        else if (cmd == "discriminant")
            cmd_discriminant(job);
        else if (cmd == "monodromy")
            cmd_monodromy(job);
        else if (cmd == "actions")
            cmd_actions(job);
        return 0;
    } catch (const UsageError& e) {
        return fail("usage", e.what(), 2);
    } catch (const json::exception& e) {
        return fail("schema", e.what(), 2);
    } catch (const std::invalid_argument& e) {
        return fail("invalid_argument", e.what(), 2);
    } catch (const TrackingError& e) {
        return fail("tracking", e.what(), 3);
    } catch (const ContourError& e) {
        return fail("contour", e.what(), 3);
    } catch (const std::exception& e) {
        return fail("numeric", e.what(), 3);
    }
}
