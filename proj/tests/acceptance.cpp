// Acceptance run: one PASS/FAIL line per criterion 1..10.
//
//   acceptance [--known-deviation N]... [--report FILE]
//
// Exit status is 0 when the failing criteria are exactly the declared known
// deviations, so a documented failure does not hide a new one.

#include "lagtop/discriminant.hpp"
#include "lagtop/periods.hpp"
#include "lagtop/spectral.hpp"
#include "lagtop/topsys.hpp"
#include "lagtop/tracking.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace lagtop;

namespace {

std::mt19937_64 rng(424242);

double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

TopState random_state(int g)
{
    std::vector<Vec3> rows;
    for (int i = 0; i < g; ++i)
        rows.push_back({uni(-1, 1), uni(-1, 1), uni(-1, 1)});
    return TopState(g, uni(-0.5, 1.5), {uni(-1, 1), uni(-1, 1), uni(-1, 1)}, rows);
}

std::array<double, 3> random_point_in_C()
{
    for (;;) {
        std::array<double, 3> a{uni(-1.5, 1.5), uni(-1, 4), uni(-1.5, 1.5)};
        ComplexPoly f = quartic(a);
        if (real_root_count(f) != 0 || normalized_discriminant(f) < 1e-4)
            continue;
        auto b = build_basis(roots(f), 1);
        if (std::abs(b.upper(0).real()) < 0.05 || std::abs(b.upper(1).real()) < 0.05)
            continue;
        return a;
    }
}

std::string str(const IntMatrix& m)
{
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.size(); ++i) {
        os << (i ? ",[" : "[");
        for (size_t j = 0; j < m[i].size(); ++j)
            os << (j ? "," : "") << m[i][j];
        os << "]";
    }
    os << "]";
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// ------------------------------------------------------------ criteria

Outcome c1_cushman()
{
    auto t0 = std::chrono::steady_clock::now();
    auto r = monodromy_actions_g1(cushman_loop({0, 1, 0}, -1));
    double secs = seconds_since(t0);
    const IntMatrix target{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}};
    bool block = r.matrix[0][0] == 1 && r.matrix[1][0] == 1 && r.matrix[0][1] == 0 && r.matrix[1][1] == 1;
    std::ostringstream os;
    os << "matrix " << str(r.matrix) << " residual " << r.residual << " time " << secs << "s";
    if (r.matrix != target)
        os << "; expected " << str(target) << ". The (I1, I2) block "
           << (block ? "agrees" : "disagrees")
           << ". The extra -1 sends I1 to I1 + I2 - I3: the residue of y dx / x^2 at x = 0 adds"
              " -I3, and it vanishes only on the plane a3 = 0, where I1 -> I1 + I2 holds";
    return {r.matrix == target && r.residual < 1e-6 && secs < 60, os.str()};
}

Outcome c2_g2()
{
    const IntMatrix m1{{1, 0, 0}, {-1, 1, 0}, {1, 0, 1}}, m2{{1, -1, 0}, {0, 1, 0}, {0, 1, 1}};
    bool ok = true;
    std::ostringstream os;
    for (auto [name, target] : {std::pair{"kappa1", m1}, std::pair{"kappa2", m2}}) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = to_torus_basis(monodromy_periods(named_loop(name)));
        double secs = seconds_since(t0);
        ok = ok && r.matrix == target && r.residual < 1e-4 && secs < 300;
        os << name << " " << str(r.matrix) << " residual " << r.residual << " time " << secs << "s; ";
    }
    return {ok, os.str()};
}

Outcome c3_routes()
{
    bool ok = true;
    std::ostringstream os;
    for (auto l : {cushman_loop(), named_loop("kappa1"), named_loop("kappa2")}) {
        auto a = monodromy_periods(l), b = picard_lefschetz_route(l);
        ok = ok && a.matrix == b.matrix;
        os << l.name << (a.matrix == b.matrix ? " agree " : " DIFFER ") << str(a.matrix) << "; ";
    }
    return {ok, os.str()};
}

Outcome c4_residue()
{
    double worst = 0;
    for (int i = 0; i < 10; ++i)
        worst = std::max(worst, residue_check(random_point_in_C()));
    std::ostringstream os;
    os << "max |loop + i pi a1| " << worst << " over 10 points";
    return {worst < 1e-8, os.str()};
}

Outcome c5_actions()
{
    double worst = 0;
    int done = 0;
    while (done < 5) {
        // the two forms coincide where a1 + a3 > 0 with the root pairs on
        // either side of the imaginary axis, see README
        auto a = random_point_in_C();
        auto b = build_basis(roots(quartic(a)), 1);
        if (a[0] + a[2] <= 0.05 || b.upper(0).real() > 0 || b.upper(1).real() < 0)
            continue;
        double cubic;
        try {
            cubic = action_I1_cubic(a);
        } catch (const std::domain_error&) {
            continue;
        }
        worst = std::max(worst, std::abs(action_I1(a) - cubic));
        ++done;
    }
    std::ostringstream os;
    os << "max |quartic - cubic| " << worst << " over " << done << " points";
    return {worst < 1e-8, os.str()};
}

Outcome c6_conservation()
{
    double drift = 0, coef = 0;
    for (int g : {1, 2})
        for (int i = 0; i < 5; ++i) {
            TopState s = random_state(g);
            auto a0 = spectral_from_state(s).a;
            auto tr = integrate(s, 100, 1e-3, 1000);
            for (double d : tr.max_rel_drift)
                drift = std::max(drift, d);
            for (auto& x : tr.states) {
                auto a = spectral_from_state(x).a;
                for (size_t k = 0; k < a.size(); ++k)
                    coef = std::max(coef, std::abs(a[k] - a0[k]) / std::max(1.0, std::abs(a0[k])));
            }
        }
    std::ostringstream os;
    os << "max relative integral drift " << drift << ", spectral drift " << coef;
    return {drift < 1e-8 && coef < 1e-8, os.str()};
}

Outcome c7_structure()
{
    double ident = 0;
    for (int i = 0; i < 1000; ++i)
        ident = std::max(ident, spectral_identity_residual(random_state(i % 4)));
    double anti = 0, jac = 0, invol = 0;
    for (int i = 0; i < 100; ++i) {
        int g = i % 4;
        TopState s = random_state(g);
        int n = s.dim();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                anti = std::max(anti, std::abs(structure_entry(s, a, b) + structure_entry(s, b, a)));
        // Jacobi on a random coordinate triple, with {x_b, x_c} rebuilt as a linear observable
        auto lin = [&](int b, int c) {
            Observable P(n);
            for (int d = 0; d < n; ++d) {
                std::vector<double> e(n, 0.0);
                e[d] = 1;
                double v = structure_entry(TopState::from_flat(g, s.m, e), b, c);
                if (v != 0)
                    P = P + Observable::coordinate(n, d, v);
            }
            return P;
        };
        for (int t = 0; t < 5; ++t) {
            int a = (int)uni(0, n), b = (int)uni(0, n), c = (int)uni(0, n);
            auto X = [&](int k) { return Observable::coordinate(n, k); };
            double J = poisson_bracket(X(a), lin(b, c), s) + poisson_bracket(X(b), lin(c, a), s)
                       + poisson_bracket(X(c), lin(a, b), s);
            jac = std::max(jac, std::abs(J));
        }
        for (int k = -1; k <= 2 * g; ++k)
            for (int l = k + 1; l <= 2 * g; ++l)
                invol = std::max(invol, std::abs(poisson_bracket(integral_observable(g, s.m, k),
                                                                 integral_observable(g, s.m, l), s)));
    }
    std::ostringstream os;
    os << "V^2+UW " << ident << ", antisymmetry " << anti << ", Jacobi " << jac << ", involution " << invol;
    return {ident < 1e-12 && anti < 1e-10 && jac < 1e-10 && invol < 1e-10, os.str()};
}

Outcome c8_g2_branch()
{
    double fac = 0, disc = 0;
    for (int i = 0; i < 20; ++i) {
        double c2 = 0.5 + 1.5 * i / 19;
        for (int sign : {1, -1}) {
            auto b = g2_branch(c2, sign);
            fac = std::max(fac, b.factor_residual);
            disc = std::max(disc, normalized_discriminant(g2_poly(b.a, b.b, b.c)));
        }
    }
    auto one = g2_branch(1, 1);
    std::ostringstream os;
    os << "factorization " << fac << ", normalized disc " << disc << ", Delta1(1) = " << one.Delta1
       << ", Delta2(1) = " << one.Delta2;
    return {fac < 1e-9 && disc < 1e-9 && one.Delta1 == -4 && one.Delta2 == -4, os.str()};
}

Outcome c9_special_points()
{
    auto pts = classify_special_points(0);
    bool iso = false, cross = false;
    for (auto& p : pts) {
        if (p.kind == StratumPoint::Kind::IsolatedComplexPair && p.location == std::vector<double>{0, 2})
            iso = true;
        if (p.kind == StratumPoint::Kind::Crossing && p.location == std::vector<double>{0, -2})
            cross = true;
    }
    auto r = a3_isolated_check(0.1, 100);
    std::ostringstream os;
    os << "isolated (0,2) " << iso << ", crossing (0,-2) " << cross << ", grid min disc "
       << r.min_normalized_disc << " over " << r.samples << " samples";
    return {iso && cross && r.isolated, os.str()};
}

Outcome c10_group_laws()
{
    using Chart = ParameterLoop::Chart;
    bool ok = true;
    std::ostringstream os;
    auto t1 = ParameterLoop::constant(Chart::G1, 1, {0, 1, 0});
    auto t2 = ParameterLoop::constant(Chart::G2, 2, {0, -0.05, 0});
    ok = ok && monodromy_periods(t1).matrix == identity_matrix(3)
         && monodromy_actions_g1(t1).matrix == identity_matrix(3)
         && monodromy_periods(t2).matrix == identity_matrix(5);
    os << "trivial loops " << (ok ? "identity" : "NOT identity");

    std::vector<MonodromyResult> all;
    auto k1 = named_loop("kappa1"), k2 = named_loop("kappa2");
    all.push_back(monodromy_periods(k1));
    all.push_back(monodromy_periods(k2));
    all.push_back(monodromy_periods(ParameterLoop::compose(k1, k2)));
    all.push_back(monodromy_periods(named_loop("kappa3")));
    bool hom = all[2].matrix == multiply(all[1].matrix, all[0].matrix);
    auto c = cushman_loop();
    all.push_back(monodromy_actions_g1(c));
    all.push_back(monodromy_actions_g1(ParameterLoop::compose(c, c)));
    hom = hom && all.back().matrix == multiply(all[4].matrix, all[4].matrix);
    all.push_back(monodromy_periods(c));
    all.push_back(picard_lefschetz_route(c));
    bool unimodular = true;
    for (auto& r : all)
        unimodular = unimodular && std::abs(determinant(r.matrix)) == 1 && r.residual < 0.1;
    os << "; M(k1*k2) = M(k2) M(k1) " << (hom ? "holds" : "FAILS") << "; determinants "
       << (unimodular ? "all +-1" : "NOT all +-1");
    return {ok && hom && unimodular, os.str()};
}

}  // namespace

int main(int argc, char** argv)
{
    std::set<int> known;
    std::string report;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--known-deviation" && i + 1 < argc)
            known.insert(std::stoi(argv[++i]));
        else if (a == "--report" && i + 1 < argc)
            report = argv[++i];
        else {
            std::cerr << "usage: acceptance [--known-deviation N]... [--report FILE]\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Cushman monodromy in the action chart", c1_cushman},
        {"g=2 matrices for kappa1, kappa2", c2_g2},
        {"Picard-Lefschetz route equals period route", c3_routes},
        {"residue identity at infinity", c4_residue},
        {"quartic and cubic forms of I1 agree", c5_actions},
        {"conservation and isospectrality", c6_conservation},
        {"structure identities", c7_structure},
        {"g=2 discriminant branch", c8_g2_branch},
        {"g=1 special points and isolation", c9_special_points},
        {"group laws", c10_group_laws},
    };

    std::ostringstream out;
    std::set<int> failed;
    for (size_t i = 0; i < criteria.size(); ++i) {
        int n = (int)i + 1;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass)
            failed.insert(n);
        out << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first
            << (!o.pass && known.count(n) ? " (known deviation)" : "") << " | " << o.detail << "\n";
        std::cout << out.str().substr(out.str().rfind("criterion")) << std::flush;
    }
    std::ostringstream summary;
    summary << "summary: " << criteria.size() - failed.size() << "/" << criteria.size() << " pass";
    if (!failed.empty()) {
        summary << "; failing:";
        for (int n : failed)
            summary << " " << n;
    }
    summary << "\n";
    std::cout << summary.str();
    if (!report.empty())
        std::ofstream(report) << out.str() << summary.str();
    return failed == known ? 0 : 1;
}
