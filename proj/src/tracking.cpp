#include "lagtop/tracking.hpp"

#include "lagtop/discriminant.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>

namespace lagtop {

namespace {

constexpr double PI = std::numbers::pi;

using Vec = std::vector<double>;

Vec lerp(const Vec& p, const Vec& q, double s)
{
    Vec r(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        r[i] = p[i] + s * (q[i] - p[i]);
    return r;
}

double dist(const Vec& p, const Vec& q)
{
    double s = 0;
    for (size_t i = 0; i < p.size(); ++i)
        s += (p[i] - q[i]) * (p[i] - q[i]);
    return std::sqrt(s);
}

double norm(const Vec& v) { return dist(v, Vec(v.size(), 0.0)); }

double min_separation(const std::vector<cplx>& r)
{
    double s = INFINITY;
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = i + 1; j < r.size(); ++j)
            s = std::min(s, std::abs(r[i] - r[j]));
    return s;
}

double root_scale(const std::vector<cplx>& r)
{
    double s = 1;
    for (cplx z : r)
        s = std::max(s, std::abs(z));
    return s;
}

}  // namespace

// ------------------------------------------------------------ loop geometry

Vec LoopPiece::at(double s) const
{
    if (kind == Kind::Segment)
        return lerp(p, q, s);
    double th = th0 + s * (th1 - th0);
    Vec r = center;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] += radius * (std::cos(th) * e1[i] + std::sin(th) * e2[i]);
    return r;
}

double LoopPiece::length() const
{
    return kind == Kind::Segment ? dist(p, q) : radius * std::abs(th1 - th0);
}

LoopPiece LoopPiece::reversed() const
{
    LoopPiece r = *this;
    std::swap(r.p, r.q);
    std::swap(r.th0, r.th1);
    return r;
}

std::string chart_name(ParameterLoop::Chart c)
{
    switch (c) {
    case ParameterLoop::Chart::G1: return "g1";
    case ParameterLoop::Chart::G2: return "g2";
    case ParameterLoop::Chart::Full: return "full";
    }
    return "?";
}

SpectralCoeffs chart_coeffs(ParameterLoop::Chart chart, int g, const Vec& p)
{
    SpectralCoeffs f;
    switch (chart) {
    case ParameterLoop::Chart::G1:
        if (p.size() != 3)
            throw std::invalid_argument("g1 chart takes (a1, a2, a3)");
        f.g = 1;
        f.a = {p[0], p[1], p[2], 1.0};
        break;
    case ParameterLoop::Chart::G2:
        if (p.size() != 3)
            throw std::invalid_argument("g2 chart takes (a, b, c)");
        f.g = 2;
        f.a = {p[0], 3.0 + p[1], p[2], 3.0, 0.0, 1.0};
        break;
    case ParameterLoop::Chart::Full:
        if ((int)p.size() != 2 * g + 2)
            throw std::invalid_argument("full chart takes a_1..a_{2g+2}");
        f.g = g;
        f.a = p;
        break;
    }
    return f;
}

int ParameterLoop::dim() const
{
    return chart == Chart::Full ? 2 * g + 2 : 3;
}

namespace {

// pieces in traversal order
std::vector<LoopPiece> traversed(const ParameterLoop& l)
{
    if (l.orientation == 1)
        return l.pieces;
    std::vector<LoopPiece> r;
    for (auto it = l.pieces.rbegin(); it != l.pieces.rend(); ++it)
        r.push_back(it->reversed());
    return r;
}

// cumulative arc-length fractions of the traversed pieces
std::vector<double> breakpoints(const std::vector<LoopPiece>& P)
{
    double total = 0;
    for (auto& p : P)
        total += p.length();
    std::vector<double> b{0.0};
    double acc = 0;
    for (size_t i = 0; i < P.size(); ++i) {
        acc += total > 0 ? P[i].length() / total : 1.0 / P.size();
        b.push_back(acc);
    }
    b.back() = 1.0;
    return b;
}

}  // namespace

int ParameterLoop::piece_at(double t) const
{
    auto P = traversed(*this);
    auto b = breakpoints(P);
    for (size_t i = 0; i + 1 < b.size(); ++i)
        if (t < b[i + 1] || i + 2 == b.size())
            return (int)i;
    return 0;
}

Vec ParameterLoop::point(double t) const
{
    if (pieces.empty())
        throw std::invalid_argument("ParameterLoop: no pieces");
    auto P = traversed(*this);
    auto b = breakpoints(P);
    t = std::clamp(t, 0.0, 1.0);
    for (size_t i = 0; i < P.size(); ++i) {
        if (t <= b[i + 1] || i + 1 == P.size()) {
            double w = b[i + 1] - b[i];
            double s = w > 0 ? (t - b[i]) / w : 0.0;
            return P[i].at(std::clamp(s, 0.0, 1.0));
        }
    }
    return P.back().at(1.0);
}

SpectralCoeffs ParameterLoop::coeffs(double t) const { return chart_coeffs(chart, g, point(t)); }

int ParameterLoop::effective_turn() const
{
    if (!lasso)
        throw std::invalid_argument("loop has no lasso geometry");
    return lasso->turn * orientation;
}

void ParameterLoop::validate(double disc_tol) const
{
    if (orientation != 1 && orientation != -1)
        throw std::invalid_argument("orientation must be +1 or -1");
    Vec a = point(0), b = point(1);
    if ((int)a.size() != dim())
        throw std::invalid_argument("waypoint dimension does not match the chart");
    if (dist(a, b) > 1e-12 * std::max(1.0, norm(a)))
        throw std::invalid_argument("loop is not closed");
    for (auto& p : pieces) {
        for (const Vec* w : {&p.p, &p.q}) {
            if (w->empty())
                continue;
            double d = normalized_discriminant(chart_coeffs(chart, g, *w).poly());
            if (d <= disc_tol)
                throw std::invalid_argument("loop waypoint lies on the discriminant");
        }
    }
}

ParameterLoop ParameterLoop::reversed() const
{
    ParameterLoop r = *this;
    r.orientation = -orientation;
    return r;
}

ParameterLoop ParameterLoop::from_waypoints(Chart chart, int g, std::vector<Vec> wps,
                                            int orientation, std::string name)
{
    if (wps.size() < 2)
        throw std::invalid_argument("need at least two waypoints");
    ParameterLoop l;
    l.chart = chart;
    l.g = chart == Chart::G1 ? 1 : chart == Chart::G2 ? 2 : g;
    l.orientation = orientation;
    l.name = std::move(name);
    for (size_t i = 0; i + 1 < wps.size(); ++i) {
        LoopPiece p;
        p.p = wps[i];
        p.q = wps[i + 1];
        l.pieces.push_back(std::move(p));
    }
    return l;
}

ParameterLoop ParameterLoop::constant(Chart chart, int g, Vec p, std::string name)
{
    return from_waypoints(chart, g, {p, p}, 1, std::move(name));
}

ParameterLoop ParameterLoop::make_lasso(Chart chart, int g, const LassoInfo& L, int orientation,
                                        std::string name)
{
    ParameterLoop l;
    l.chart = chart;
    l.g = chart == Chart::G1 ? 1 : chart == Chart::G2 ? 2 : g;
    l.orientation = orientation;
    l.name = std::move(name);
    l.lasso = L;
    Vec start = L.center;
    for (size_t i = 0; i < start.size(); ++i)
        start[i] += L.radius * L.e1[i];
    LoopPiece tail;
    tail.p = L.base;
    tail.q = start;
    LoopPiece arc;
    arc.kind = LoopPiece::Kind::Arc;
    arc.center = L.center;
    arc.e1 = L.e1;
    arc.e2 = L.e2;
    arc.radius = L.radius;
    arc.th0 = 0;
    arc.th1 = 2 * PI * L.turn;
    l.pieces = {tail, arc, tail.reversed()};
    return l;
}

ParameterLoop ParameterLoop::compose(const ParameterLoop& a, const ParameterLoop& b)
{
    if (a.chart != b.chart || a.g != b.g)
        throw std::invalid_argument("compose: charts differ");
    Vec ea = a.point(1), sb = b.point(0);
    if (dist(ea, sb) > 1e-12 * std::max(1.0, norm(ea)))
        throw std::invalid_argument("compose: loops do not share the base point");
    ParameterLoop r;
    r.chart = a.chart;
    r.g = a.g;
    r.name = (a.name.empty() ? "loop" : a.name) + "*" + (b.name.empty() ? "loop" : b.name);
    r.pieces = traversed(a);
    for (auto& p : traversed(b))
        r.pieces.push_back(p);
    return r;
}

// ------------------------------------------------------------ named loops

ParameterLoop cushman_loop(Vec base, int orientation)
{
    LassoInfo L;
    L.base = std::move(base);
    L.center = {0, 2, 0};
    L.e1 = {0, -1, 0};
    L.e2 = {1, 0, 0};
    L.radius = 0.5;
    L.turn = 1;  // counterclockwise in (a1, a2)
    return ParameterLoop::make_lasso(ParameterLoop::Chart::G1, 1, L, orientation, "cushman");
}

ParameterLoop kappa_loop(double c2, int sign, int orientation, Vec base, std::string name)
{
    auto Q = [&](double c) {
        G2Branch b = g2_branch(c, sign);
        return Vec{b.a, b.b, b.c};
    };
    const double h = 1e-6;
    Vec center = Q(c2), T = Q(c2 + h), Tm = Q(c2 - h);
    for (int i = 0; i < 3; ++i)
        T[i] -= Tm[i];
    double nt = norm(T);
    for (auto& x : T)
        x /= nt;
    Vec e1(3);
    for (int i = 0; i < 3; ++i)
        e1[i] = base[i] - center[i];
    double dt = e1[0] * T[0] + e1[1] * T[1] + e1[2] * T[2];
    for (int i = 0; i < 3; ++i)
        e1[i] -= dt * T[i];
    double n1 = norm(e1);
    if (!(n1 > 0))
        throw std::invalid_argument("kappa_loop: base lies on the branch tangent");
    for (auto& x : e1)
        x /= n1;
    Vec e2{T[1] * e1[2] - T[2] * e1[1], T[2] * e1[0] - T[0] * e1[2], T[0] * e1[1] - T[1] * e1[0]};
    LassoInfo L;
    L.base = std::move(base);
    L.center = center;
    L.e1 = e1;
    L.e2 = e2;
    L.radius = 0.2 * norm(center);
    // stored as the reverse of the (e1, T x e1) sense; the default orientation -1 runs e1 -> e2
    L.turn = -1;
    return ParameterLoop::make_lasso(ParameterLoop::Chart::G2, 2, L, orientation, std::move(name));
}

ParameterLoop named_loop(const std::string& name, int orientation, std::optional<Vec> base)
{
    if (name == "cushman")
        return cushman_loop(base.value_or(Vec{0, 1, 0}), orientation);
    Vec b = base.value_or(Vec{0, -0.05, 0});
    if (name == "kappa1")
        return kappa_loop(0.8, -1, orientation, b, name);
    if (name == "kappa2")
        return kappa_loop(0.8, 1, orientation, b, name);
    if (name == "kappa3")
        return kappa_loop(1.2, 1, orientation, b, name);
    throw std::invalid_argument("unknown named loop: " + name);
}

// ------------------------------------------------------------ root tracking

RootTrack track_roots_from(const ParameterLoop& loop, double t0, double t1, std::vector<cplx> start,
                           int steps, double sep_tol)
{
    if (steps < 8)
        throw std::invalid_argument("track_roots: steps must be at least 8");
    RootTrack tr;
    std::vector<cplx> r = std::move(start);
    tr.t.push_back(t0);
    tr.roots.push_back(r);
    tr.min_separation = min_separation(r);
    const double hmax = (t1 - t0) / steps;
    double h = hmax, t = t0;
    while (t < t1) {
        double tn = std::min(t + h, t1);
        if (t1 - tn < 1e-14)
            tn = t1;
        std::vector<cplx> rn;
        bool ok = true;
        try {
            rn = roots_from(loop.coeffs(tn).poly(), r);
        } catch (const RootFindError&) {
            ok = false;
        }
        double sep = min_separation(r);
        if (ok) {
            double moved = 0;
            for (size_t i = 0; i < r.size(); ++i)
                moved = std::max(moved, std::abs(rn[i] - r[i]));
            ok = moved < sep / 3;
        }
        if (!ok) {
            h /= 2;
            if (h < 1e-13 * std::max(1.0, std::abs(t1 - t0)))
                throw TrackingError("root tracking stalled near the discriminant", loop.piece_at(t), t);
            continue;
        }
        double sn = min_separation(rn);
        if (sn < sep_tol * root_scale(rn))
            throw TrackingError("loop approaches the discriminant (roots nearly collide)",
                                loop.piece_at(tn), tn);
        tr.min_separation = std::min(tr.min_separation, sn);
        r = std::move(rn);
        t = tn;
        tr.t.push_back(t);
        tr.roots.push_back(r);
        ++tr.steps_used;
        h = std::min(2 * h, hmax);
    }
    return tr;
}

RootTrack track_roots(const ParameterLoop& loop, int steps, double sep_tol)
{
    std::vector<cplx> r0 = roots(loop.coeffs(0).poly());
    RootTrack tr = track_roots_from(loop, 0, 1, r0, steps, sep_tol);
    const auto& rf = tr.roots.back();
    const double scale = root_scale(r0);
    std::vector<int> perm(r0.size(), -1);
    std::vector<bool> used(r0.size(), false);
    for (size_t i = 0; i < rf.size(); ++i) {
        int best = -1;
        double bd = INFINITY;
        for (size_t j = 0; j < r0.size(); ++j) {
            double d = std::abs(rf[i] - r0[j]);
            if (d < bd) {
                bd = d;
                best = (int)j;
            }
        }
        tr.closure_error = std::max(tr.closure_error, bd);
        if (used[best])
            throw TrackingError("final roots do not match the initial ones", (int)loop.pieces.size() - 1, 1);
        used[best] = true;
        perm[i] = best;
    }
    if (tr.closure_error > 1e-9 * scale)
        throw TrackingError("loop does not close: root multisets differ", (int)loop.pieces.size() - 1, 1);
    tr.permutation = perm;
    return tr;
}

// ------------------------------------------------------------ period tracking

namespace {

std::vector<LaurentForm> holomorphic_forms(int g)
{
    std::vector<LaurentForm> F;
    for (int k = 0; k <= 2 * g; ++k)
        F.push_back(x_power_form(k));
    return F;
}

Eigen::MatrixXd realify(const std::vector<PeriodRow>& rows)
{
    const int K = (int)rows.at(0).size();
    Eigen::MatrixXd A(2 * K, rows.size());
    for (size_t j = 0; j < rows.size(); ++j)
        for (int k = 0; k < K; ++k) {
            A(k, j) = rows[j][k].real();
            A(K + k, j) = rows[j][k].imag();
        }
    return A;
}

/// N with Y_r ~ sum_g N(r, g) S_g, least squares over the realified periods
Eigen::MatrixXd lattice_coords(const std::vector<PeriodRow>& S, const std::vector<PeriodRow>& Y)
{
    Eigen::MatrixXd A = realify(S), B = realify(Y);
    return A.colPivHouseholderQr().solve(B).transpose();
}

double distance_to_integers(const Eigen::MatrixXd& N)
{
    double r = 0;
    for (int i = 0; i < N.rows(); ++i)
        for (int j = 0; j < N.cols(); ++j)
            r = std::max(r, std::abs(N(i, j) - std::round(N(i, j))));
    return r;
}

double condition_number(const std::vector<PeriodRow>& S)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(realify(S));
    auto s = svd.singularValues();
    return s(0) / s(s.size() - 1);
}

using LatticeFn = std::function<std::vector<PeriodRow>(const SpectralCoeffs&)>;

struct PeriodRun {
    std::vector<PeriodRow> Q;
    double max_step_residual = 0;
    int steps = 0;
};

PeriodRun track_periods(const ParameterLoop& loop, std::vector<PeriodRow> Q0, const LatticeFn& lattice,
                        const TrackOptions& opt, double step_tol)
{
    struct Sample {
        double t;
        std::vector<PeriodRow> Q;
    };
    std::deque<Sample> hist{{0.0, Q0}};
    PeriodRun run;
    const double hmax = 1.0 / opt.min_steps;
    double h = hmax, t = 0;
    const size_t R = Q0.size(), K = Q0.at(0).size();
    while (t < 1) {
        double tn = std::min(t + h, 1.0);
        if (1 - tn < 1e-14)
            tn = 1;
        std::vector<PeriodRow> S;
        bool ok = true;
        try {
            S = lattice(loop.coeffs(tn));
        } catch (const ContourError&) {
            ok = false;
        } catch (const RootFindError&) {
            ok = false;
        }
        Eigen::MatrixXd N;
        double r = INFINITY;
        if (ok) {
            std::vector<PeriodRow> pred(R, PeriodRow(K, 0.0));
            for (size_t i = 0; i < hist.size(); ++i) {
                double L = 1;
                for (size_t j = 0; j < hist.size(); ++j)
                    if (j != i)
                        L *= (tn - hist[j].t) / (hist[i].t - hist[j].t);
                for (size_t a = 0; a < R; ++a)
                    for (size_t k = 0; k < K; ++k)
                        pred[a][k] += L * hist[i].Q[a][k];
            }
            N = lattice_coords(S, pred);
            r = distance_to_integers(N);
        }
        if (!(r <= step_tol)) {
            h /= 2;
            if (h < 1e-12 || run.steps > opt.max_steps)
                throw TrackingError(r < 0.25 ? "period tracking cannot reach the requested residual"
                                             : "period tracking lost the lattice (more steps needed)",
                                    loop.piece_at(t), t);
            continue;
        }
        std::vector<PeriodRow> Q(R, PeriodRow(K, 0.0));
        for (size_t a = 0; a < R; ++a)
            for (size_t g = 0; g < S.size(); ++g) {
                double n = std::round(N(a, g));
                if (n != 0)
                    for (size_t k = 0; k < K; ++k)
                        Q[a][k] += n * S[g][k];
            }
        run.max_step_residual = std::max(run.max_step_residual, r);
        ++run.steps;
        t = tn;
        hist.push_back({t, std::move(Q)});
        while ((int)hist.size() > opt.order + 1)
            hist.pop_front();
        h = std::min(1.5 * h, hmax);
    }
    run.Q = hist.back().Q;
    return run;
}

std::vector<PeriodRow> reference_basis(const SpectralCoeffs& f, const std::vector<LaurentForm>& forms,
                                       QuadTol tol)
{
    Curve c(f.poly());
    BranchConfig b = build_basis(c.roots(), f.g);
    ReferenceSheet sheet(c, b);
    return sheet.basis(forms, tol);
}

std::vector<std::string> full_labels(int g) { return CycleClass::zero(g).labels(); }

IntMatrix rounded_transpose(const Eigen::MatrixXd& M)
{
    IntMatrix out(M.cols(), std::vector<long long>(M.rows()));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            out[j][i] = std::llround(M(i, j));
    return out;
}

std::map<std::string, double> tolerance_map(const TrackOptions& opt, int g)
{
    return {{"step_tol", opt.step_tol_for(g)},
            {"quad_abs", opt.quad.abs},
            {"quad_rel", opt.quad.rel},
            {"min_steps", (double)opt.min_steps},
            {"rounding_threshold", 0.1}};
}

void check_integrality(const MonodromyResult& r)
{
    if (r.residual > 0.1)
        throw TrackingError("monodromy residual above 0.1; increase the step count", -1, 1);
    long long d = determinant(r.matrix);
    if (d != 1 && d != -1)
        throw TrackingError("monodromy matrix is not unimodular", -1, 1);
}

}  // namespace

MonodromyResult monodromy_periods(const ParameterLoop& loop, const TrackOptions& opt)
{
    loop.validate();
    const int g = loop.g;
    auto forms = holomorphic_forms(g);
    SpectralCoeffs f0 = loop.coeffs(0);
    if (!in_component_C(f0))
        throw std::domain_error("monodromy_periods: base point is not in the no-real-root component");
    std::vector<PeriodRow> B = reference_basis(f0, forms, opt.quad);
    LatticeFn lattice = [&](const SpectralCoeffs& f) {
        return star_lattice(Curve(f.poly()), forms, false, opt.quad).gens;
    };
    PeriodRun run = track_periods(loop, B, lattice, opt, opt.step_tol_for(g));
    Eigen::MatrixXd M = lattice_coords(B, run.Q);

    MonodromyResult res;
    res.name = loop.name;
    res.route = "periods";
    res.basis = full_labels(g);
    res.matrix = rounded_transpose(M);
    res.final_residual = distance_to_integers(M);
    res.tracking_residual = run.max_step_residual;
    res.residual = std::max(res.final_residual, res.tracking_residual);
    res.orientation = loop.orientation;
    res.steps_used = run.steps;
    res.condition = condition_number(B);
    res.tolerances = tolerance_map(opt, g);
    res.permutation = track_roots(loop).permutation;
    check_integrality(res);
    return res;
}

MonodromyResult to_torus_basis(const MonodromyResult& full)
{
    const int n = (int)full.matrix.size();
    if (n != 5)
        throw std::invalid_argument("to_torus_basis: needs a g = 2 full-basis result");
    // columns: gamma_1, gamma_3, gamma_1 + gamma_2 + gamma_3
    const long long C[5][3] = {{1, 0, 1}, {0, 0, 1}, {0, 1, 1}, {0, 0, 0}, {0, 0, 0}};
    IntMatrix out(3, std::vector<long long>(3, 0));
    for (int j = 0; j < 3; ++j) {
        std::vector<long long> img(5, 0);
        for (int i = 0; i < 5; ++i)
            for (int k = 0; k < 5; ++k)
                img[i] += full.matrix[i][k] * C[k][j];
        // img = x0 g1 + x1 g3 + x2 (g1 + g2 + g3)
        long long x2 = img[1], x1 = img[2] - x2, x0 = img[0] - x2;
        if (img[3] != 0 || img[4] != 0)
            throw std::domain_error("to_torus_basis: the gamma span is not invariant under this loop");
        out[0][j] = x0;
        out[1][j] = x1;
        out[2][j] = x2;
    }
    MonodromyResult r = full;
    r.basis = {"gamma_1", "gamma_3", "gamma_inf"};
    r.matrix = out;
    return r;
}

MonodromyResult monodromy_actions_g1(const ParameterLoop& loop, double A, const TrackOptions& opt)
{
    loop.validate();
    if (loop.g != 1)
        throw std::invalid_argument("monodromy_actions_g1: needs a g = 1 loop");
    SpectralCoeffs f0 = loop.coeffs(0);
    if (!in_component_C(f0))
        throw std::domain_error("monodromy_actions_g1: base point is not in the no-real-root component");
    if (std::abs(f0.a[3] - 1.0) > 1e-14)
        throw std::invalid_argument("monodromy_actions_g1: the constant coefficient must be 1");
    auto forms = holomorphic_forms(1);
    forms.push_back(LaurentForm{-1, {1.0}});  // dx / (x y), picks up the punctures over x = 0
    const int K = (int)forms.size();

    ComplexPoly p0 = f0.poly();
    Curve c0(p0);
    ReferenceSheet sheet(c0, build_basis(c0.roots(), 1));
    std::vector<PeriodRow> B = sheet.basis(forms, opt.quad);
    PeriodRow eps(K, 0.0);
    const double y0 = sheet.y_real(0.0);
    eps[K - 1] = cplx(0, 2 * PI) / y0;
    B.push_back(eps);

    LatticeFn lattice = [&](const SpectralCoeffs& f) {
        Curve c(f.poly());
        auto rows = star_lattice(c, forms, true, opt.quad).gens;
        PeriodRow e(K, 0.0);
        e[K - 1] = cplx(0, 2 * PI) / c.y_principal(0.0);
        rows.push_back(e);
        return rows;
    };
    PeriodRun run = track_periods(loop, B, lattice, opt, opt.step_tol_for(1));
    Eigen::MatrixXd M = lattice_coords(B, run.Q);
    const double final_res = distance_to_integers(M);

    // image of gamma_1 = n1 gamma_1 + n2 gamma_2 + n3 delta_1 + n4 eps_0
    long long n1 = std::llround(M(0, 0)), n2 = std::llround(M(0, 1)), n3 = std::llround(M(0, 2)),
              n4 = std::llround(M(0, 3));
    if (n3 != 0)
        throw std::domain_error("monodromy_actions_g1: image of gamma_1 leaves the torus cycles");

    // I(gamma_2) = -I1 - I2 + s0 I3 and I(eps_0) = -s0 I3 (residues at 0 and infinity)
    const std::array<double, 3> a{f0.a[0], f0.a[1], f0.a[2]};
    const cplx fac(0, A / (2 * PI));
    auto yform = std::vector<LaurentForm>{y_over_x2_form(p0)};
    const double I1 = (fac * sheet.gamma(1, yform, opt.quad)[0]).real();
    const double Ig2 = (fac * sheet.gamma(2, yform, opt.quad)[0]).real();
    const double I2 = A * a[0] / 2, I3 = A * a[2] / 2;
    const double s0 = y0 > 0 ? 1 : -1;
    const double Ieps = -A * a[2] / (2 * y0);
    long long p = n1 - n2, q = -n2, r = std::llround(s0) * (n2 - n4);
    double image_numeric = n1 * I1 + n2 * Ig2 + n4 * Ieps;
    double image_formula = p * I1 + q * I2 + r * I3;
    double scale = std::max({1.0, std::abs(I1), std::abs(I2), std::abs(I3)});
    double chart_res = std::abs(image_numeric - image_formula) / scale;

    MonodromyResult res;
    res.name = loop.name;
    res.route = "actions";
    res.basis = {"I_1", "I_2", "I_3"};
    res.matrix = {{p, 0, 0}, {q, 1, 0}, {r, 0, 1}};
    res.final_residual = std::max(final_res, chart_res);
    res.tracking_residual = run.max_step_residual;
    res.residual = std::max(res.final_residual, res.tracking_residual);
    res.orientation = loop.orientation;
    res.steps_used = run.steps;
    res.condition = condition_number(B);
    res.tolerances = tolerance_map(opt, 1);
    res.tolerances["A"] = A;
    res.permutation = track_roots(loop).permutation;
    check_integrality(res);
    if (chart_res > 1e-6)
        throw TrackingError("action chart identity failed; the pair-loop convention broke down", -1, 1);
    return res;
}

// ------------------------------------------------------------ Picard-Lefschetz route

namespace {

ParameterLoop open_path(const ParameterLoop& like, std::vector<LoopPiece> pieces)
{
    ParameterLoop p;
    p.chart = like.chart;
    p.g = like.g;
    p.name = like.name;
    p.pieces = std::move(pieces);
    return p;
}

CycleClass classify_pair(const BranchConfig& b, int x, int y)
{
    const int g = b.g;
    for (int k = 0; k <= g; ++k) {
        auto [u, l] = b.pairing[k];
        if ((u == x && l == y) || (u == y && l == x))
            return CycleClass::gamma(g, k + 1);
    }
    auto pos = [&](int idx, bool upper) {
        for (int k = 0; k <= g; ++k)
            if ((upper ? b.pairing[k].first : b.pairing[k].second) == idx)
                return k;
        return -1;
    };
    for (bool upper : {true, false}) {
        int kx = pos(x, upper), ky = pos(y, upper);
        if (kx >= 0 && ky >= 0 && std::abs(kx - ky) == 1) {
            int j = std::min(kx, ky) + 1;
            return upper ? CycleClass::delta(g, j) : CycleClass::delta_prime(g, j);
        }
    }
    throw std::domain_error("vanishing pair is not adjacent in the cycle basis");
}

bool adjacent_pair(const BranchConfig& b, int x, int y)
{
    try {
        classify_pair(b, x, y);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

/// Class of the thin loop around [r_a, r_b] at the end of `back` (t = 0),
/// carried along `back` to its end point (the base) by period continuation.
CycleClass transported_vanishing(const ParameterLoop& back, const std::vector<cplx>& labeled, int a,
                                 int b)
{
    const int g = back.g;
    auto forms = holomorphic_forms(g);
    QuadTol q{1e-13, 1e-12};
    Curve c(back.coeffs(0).poly(), labeled);
    cplx mid = 0.5 * (labeled[a] + labeled[b]);
    cplx ym = c.y_principal(mid);
    PeriodRow to_b = c.ray_to_root(mid, ym, b, forms, q), to_a = c.ray_to_root(mid, ym, a, forms, q);
    PeriodRow v(forms.size());
    for (size_t k = 0; k < v.size(); ++k)
        v[k] = 2.0 * (to_b[k] - to_a[k]);
    LatticeFn lattice = [&](const SpectralCoeffs& f) {
        return star_lattice(Curve(f.poly()), forms, false, q).gens;
    };
    TrackOptions opt;
    PeriodRun run = track_periods(back, {v}, lattice, opt, 1e-4);
    std::vector<PeriodRow> B = reference_basis(back.coeffs(1), forms, q);
    Eigen::MatrixXd N = lattice_coords(B, run.Q);
    if (distance_to_integers(N) > 1e-4)
        throw std::domain_error("vanishing cycle transport did not land on the lattice");
    std::vector<long long> cc(N.cols());
    for (int j = 0; j < N.cols(); ++j)
        cc[j] = std::llround(N(0, j));
    return CycleClass(g, cc);
}



}  // namespace

std::vector<VanishingData> vanishing_cycles(const ParameterLoop& loop, double shrink)
{
    if (!loop.lasso)
        throw std::invalid_argument("picard_lefschetz_route: the loop needs lasso geometry");
    if (!(shrink > 0 && shrink < 0.1))
        throw std::invalid_argument("shrink factor must lie in (0, 0.1)");
    const LassoInfo& L = *loop.lasso;
    const int turn = loop.effective_turn();

    std::vector<cplx> r0 = roots(chart_coeffs(loop.chart, loop.g, L.base).poly());
    BranchConfig b = build_basis(r0, loop.g);
    if (!b.conjugate)
        throw std::domain_error("picard_lefschetz_route: base point has real roots");

    Vec start = L.center, inner = L.center;
    for (size_t i = 0; i < start.size(); ++i) {
        start[i] += L.radius * L.e1[i];
        inner[i] += shrink * L.radius * L.e1[i];
    }
    LoopPiece tail{LoopPiece::Kind::Segment, L.base, start, {}, {}, {}, 0, 0, 0};
    LoopPiece radial{LoopPiece::Kind::Segment, start, inner, {}, {}, {}, 0, 0, 0};
    LoopPiece circle{LoopPiece::Kind::Arc, {}, {}, L.center, L.e1, L.e2, shrink * L.radius, 0,
                     2 * PI * turn};

    auto rt = track_roots_from(open_path(loop, {tail}), 0, 1, r0, 64, 1e-12);
    std::vector<cplx> at_start = rt.roots.back();
    auto rr = track_roots_from(open_path(loop, {radial}), 0, 1, at_start, 256, 1e-12);
    std::vector<cplx> at_inner = rr.roots.back();

    const int n = (int)r0.size();
    std::vector<VanishingData> out;
    std::vector<int> used(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double ratio = std::abs(at_inner[i] - at_inner[j]) / std::abs(at_start[i] - at_start[j]);
            if (ratio < 0.1) {
                VanishingData v;
                v.label_a = i;
                v.label_b = j;
                v.separation_ratio = ratio;
                out.push_back(v);
                ++used[i];
                ++used[j];
            } else if (ratio < 0.3) {
                throw std::domain_error("ambiguous vanishing data: a root pair neither collides nor stays apart");
            }
        }
    if (out.empty())
        throw std::domain_error("no colliding roots: the loop does not enclose a discriminant point");
    for (int u : used)
        if (u > 1)
            throw std::domain_error("more than two roots collide: not a simple stratum point");

    auto rc = track_roots_from(open_path(loop, {circle}), 0, 1, at_inner, 256, 1e-12);
    for (auto& v : out) {
        double w = 0;
        for (size_t s = 1; s < rc.roots.size(); ++s) {
            cplx d0 = rc.roots[s - 1][v.label_a] - rc.roots[s - 1][v.label_b];
            cplx d1 = rc.roots[s][v.label_a] - rc.roots[s][v.label_b];
            w += std::arg(d1 / d0);
        }
        double half = w / PI;
        v.power = (int)std::lround(half);
        if (std::abs(half - v.power) > 0.05 || v.power == 0)
            throw std::domain_error("winding of a colliding pair is not a whole number of half-turns");
        // carried back along the radius and the tail; the label rule is a cross-check
        ParameterLoop back = open_path(loop, {radial.reversed(), tail.reversed()});
        v.cycle = transported_vanishing(back, at_inner, v.label_a, v.label_b);
        v.transported = true;
        if (adjacent_pair(b, v.label_a, v.label_b)) {
            CycleClass lab = classify_pair(b, v.label_a, v.label_b);
            if (!(lab == v.cycle || lab == v.cycle * -1))
                throw std::domain_error("vanishing cycle: transported class disagrees with the root labels");
            v.cycle = lab;
            v.transported = false;
        }
    }
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j)
            if (intersection(out[i].cycle, out[j].cycle) != 0)
                throw std::domain_error("vanishing cycles intersect: two strata enclosed");
    return out;
}

MonodromyResult picard_lefschetz_route(const ParameterLoop& loop, double shrink)
{
    loop.validate();
    auto van = vanishing_cycles(loop, shrink);
    std::vector<std::pair<CycleClass, int>> tw;
    for (auto& v : van)
        tw.push_back({v.cycle, v.power});
    MonodromyResult res;
    res.name = loop.name;
    res.route = "picard-lefschetz";
    res.basis = full_labels(loop.g);
    res.matrix = picard_lefschetz_matrix(loop.g, tw);
    res.orientation = loop.orientation;
    res.permutation = track_roots(loop).permutation;
    // integer by construction; the observed collision ratio is reported instead
    double ratio = 0;
    for (auto& v : van)
        ratio = std::max(ratio, v.separation_ratio);
    res.tolerances = {{"shrink", shrink}, {"collision_ratio", 0.1}, {"observed_collision_ratio", ratio}};
    return res;
}

IntMatrix transport_matrix(const ParameterLoop& path, const TrackOptions& opt, double* residual)
{
    const int g = path.g;
    auto forms = holomorphic_forms(g);
    std::vector<PeriodRow> B0 = reference_basis(path.coeffs(0), forms, opt.quad);
    std::vector<PeriodRow> B1 = reference_basis(path.coeffs(1), forms, opt.quad);
    LatticeFn lattice = [&](const SpectralCoeffs& f) {
        return star_lattice(Curve(f.poly()), forms, false, opt.quad).gens;
    };
    PeriodRun run = track_periods(path, B0, lattice, opt, opt.step_tol_for(g));
    Eigen::MatrixXd M = lattice_coords(B1, run.Q);
    double r = std::max(distance_to_integers(M), run.max_step_residual);
    if (residual)
        *residual = r;
    if (r > 0.1)
        throw TrackingError("transport residual above 0.1", -1, 1);
    return rounded_transpose(M);
}

}  // namespace lagtop
