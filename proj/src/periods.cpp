#include "lagtop/periods.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lagtop {

namespace {

constexpr double PI = std::numbers::pi;
constexpr int GL_N = 20;
constexpr int MAX_DEPTH = 48;

struct GLRule {
    std::array<double, GL_N> x, w;
    GLRule()
    {
        const auto& a = boost::math::quadrature::gauss<double, GL_N>::abscissa();
        const auto& wt = boost::math::quadrature::gauss<double, GL_N>::weights();
        for (int i = 0; i < GL_N / 2; ++i) {
            x[2 * i] = a[i];
            x[2 * i + 1] = -a[i];
            w[2 * i] = w[2 * i + 1] = wt[i];
        }
    }
};

const GLRule& gl()
{
    static const GLRule rule;
    return rule;
}

double seg_point_distance(cplx p, cplx q, cplx z)
{
    cplx d = q - p;
    double L2 = std::norm(d);
    if (L2 == 0)
        return std::abs(z - p);
    double t = std::clamp(((z - p) * std::conj(d)).real() / L2, 0.0, 1.0);
    return std::abs(p + t * d - z);
}

/// Adaptive bisection with a 20-point Gauss-Legendre rule on [0, 1].
/// fn(t, out) writes K integrand values at t.
template <class Fn>
PeriodRow adaptive(Fn&& fn, int K, QuadTol tol, cplx where)
{
    const GLRule& R = gl();
    std::vector<cplx> buf(K);
    auto rule = [&](double a, double b) {
        PeriodRow s(K, 0.0);
        double h = 0.5 * (b - a), c = 0.5 * (a + b);
        for (int i = 0; i < GL_N; ++i) {
            fn(c + h * R.x[i], buf.data());
            for (int k = 0; k < K; ++k)
                s[k] += R.w[i] * h * buf[k];
        }
        return s;
    };
    struct Panel {
        double a, b;
        PeriodRow whole;
        int depth;
    };
    PeriodRow total(K, 0.0);
    std::vector<Panel> stack;
    // start from 4 panels so that a lucky agreement on one panel is unlikely
    for (int i = 3; i >= 0; --i)
        stack.push_back({i / 4.0, (i + 1) / 4.0, rule(i / 4.0, (i + 1) / 4.0), 0});
    while (!stack.empty()) {
        Panel P = std::move(stack.back());
        stack.pop_back();
        double m = 0.5 * (P.a + P.b);
        PeriodRow l = rule(P.a, m), r = rule(m, P.b);
        bool ok = true;
        for (int k = 0; k < K && ok; ++k) {
            cplx s = l[k] + r[k];
            double err = std::abs(s - P.whole[k]);
            if (err > std::max(tol.abs * (P.b - P.a), tol.rel * std::abs(s)))
                ok = false;
        }
        if (ok) {
            for (int k = 0; k < K; ++k)
                total[k] += l[k] + r[k];
            continue;
        }
        if (P.depth >= MAX_DEPTH)
            throw ContourError("quadrature did not converge near a singular point", where);
        stack.push_back({m, P.b, std::move(r), P.depth + 1});
        stack.push_back({P.a, m, std::move(l), P.depth + 1});
    }
    return total;
}

}  // namespace

// ------------------------------------------------------------ forms

cplx LaurentForm::operator()(cplx x) const
{
    cplx v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        v = v * x + *it;
    if (lo != 0)
        v *= std::pow(x, lo);
    return v;
}

bool LaurentForm::pole_at_zero() const
{
    for (int i = 0; i < (int)c.size() && lo + i < 0; ++i)
        if (c[i] != cplx(0))
            return true;
    return false;
}

LaurentForm x_power_form(int k) { return {k, {1.0}}; }

LaurentForm y_over_x2_form(const ComplexPoly& f) { return {-2, f.coeffs()}; }

// ------------------------------------------------------------ curve

Curve::Curve(const ComplexPoly& f) : Curve(f, lagtop::roots(f)) {}

Curve::Curve(const ComplexPoly& f, std::vector<cplx> r) : f_(f), r_(std::move(r))
{
    if ((int)r_.size() != f_.degree())
        throw std::invalid_argument("Curve: root count differs from degree");
    sqrt_lead_ = std::sqrt(f_.lead());
}

cplx Curve::y_principal(cplx x) const
{
    cplx y = sqrt_lead_;
    for (cplx r : r_)
        y *= std::sqrt(x - r);
    return y;
}

cplx Curve::continue_y(cplx p, cplx yp, cplx x) const
{
    cplx y = yp;
    for (cplx r : r_)
        y *= std::sqrt((x - r) / (p - r));
    return y;
}

double Curve::clearance(cplx p, cplx q, int skip_a, int skip_b, bool zero) const
{
    double d = INFINITY;
    for (int k = 0; k < n(); ++k)
        if (k != skip_a && k != skip_b)
            d = std::min(d, seg_point_distance(p, q, r_[k]));
    if (zero)
        d = std::min(d, seg_point_distance(p, q, 0.0));
    return d;
}

namespace {

bool any_pole(const std::vector<LaurentForm>& forms)
{
    for (auto& f : forms)
        if (f.pole_at_zero())
            return true;
    return false;
}

double length_scale(const Curve& c)
{
    double s = 1;
    for (cplx r : c.roots())
        s = std::max(s, std::abs(r));
    return s;
}

}  // namespace

PeriodRow Curve::segment(cplx p, cplx yp, cplx q, const std::vector<LaurentForm>& forms,
                         QuadTol tol) const
{
    if (clearance(p, q, -1, -1, any_pole(forms)) < 1e-12 * length_scale(*this))
        throw ContourError("segment passes through a singular point", p);
    const int K = (int)forms.size();
    cplx d = q - p;
    return adaptive(
        [&](double t, cplx* out) {
            cplx x = p + t * d;
            cplx w = d / continue_y(p, yp, x);
            for (int k = 0; k < K; ++k)
                out[k] = forms[k](x) * w;
        },
        K, tol, p);
}

PeriodRow Curve::ray_to_root(cplx p, cplx yp, int ri, const std::vector<LaurentForm>& forms,
                             QuadTol tol) const
{
    const cplx r = r_.at(ri);
    if (clearance(p, r, ri, -1, any_pole(forms)) < 1e-12 * length_scale(*this))
        throw ContourError("ray to a branch point passes through a singular point", p);
    const int K = (int)forms.size();
    const cplx d = p - r;
    // x = r + d s^2: dx / y = 2 d ds / (y(p) prod_{k != ri} sqrt((x - r_k)/(p - r_k)))
    PeriodRow v = adaptive(
        [&](double s, cplx* out) {
            cplx x = r + d * (s * s);
            cplx y = yp;
            for (int k = 0; k < n(); ++k)
                if (k != ri)
                    y *= std::sqrt((x - r_[k]) / (p - r_[k]));
            cplx w = 2.0 * d / y;
            for (int k = 0; k < K; ++k)
                out[k] = forms[k](x) * w;
        },
        K, tol, r);
    for (auto& z : v)
        z = -z;  // the substitution runs r -> p
    return v;
}

// ---------------------------------------------------- reference sheet

ReferenceSheet::ReferenceSheet(const Curve& c, const BranchConfig& b) : c_(c), b_(b)
{
    if (!b_.conjugate)
        throw std::invalid_argument("ReferenceSheet: needs a conjugate pairing (no real roots)");
    if ((int)b_.roots.size() != c_.n())
        throw std::invalid_argument("ReferenceSheet: branch data does not match the curve");
}

double ReferenceSheet::y_real(double x) const
{
    double fx = c_.f()(x).real();
    if (!(fx > 0))
        throw ContourError("f is not positive on the real axis here", x);
    int cuts = 0;
    for (int k = 0; k <= b_.g; ++k)
        if (b_.upper(k).real() > x)
            ++cuts;
    return (cuts % 2 ? -1.0 : 1.0) * std::sqrt(fx);
}

cplx ReferenceSheet::y(cplx x) const
{
    double xr = x.real();
    if (c_.clearance(xr, x) < 1e-14 * length_scale(c_))
        throw ContourError("point lies on a cut of the reference sheet", x);
    return c_.continue_y(xr, y_real(xr), x);
}

int ReferenceSheet::sign_at_zero() const { return y_real(0.0) > 0 ? 1 : -1; }

PeriodRow ReferenceSheet::gamma(int k, const std::vector<LaurentForm>& forms, QuadTol tol) const
{
    if (k < 1 || k > b_.g + 1)
        throw std::out_of_range("ReferenceSheet::gamma index");
    auto [iu, il] = b_.pairing[k - 1];
    double xm = b_.roots[iu].real();
    if (any_pole(forms) && std::abs(xm) < 1e-6 * length_scale(c_))
        throw ContourError("pair loop passes through the pole at x = 0", xm);
    double yp = y_real(xm);
    PeriodRow up = c_.ray_to_root(xm, yp, iu, forms, tol);
    PeriodRow lo = c_.ray_to_root(xm, yp, il, forms, tol);
    for (size_t i = 0; i < up.size(); ++i)
        up[i] = 2.0 * (up[i] - lo[i]);
    return up;
}

PeriodRow ReferenceSheet::delta(int j, const std::vector<LaurentForm>& forms, QuadTol tol) const
{
    if (j < 1 || j > b_.g)
        throw std::out_of_range("ReferenceSheet::delta index");
    int ia = b_.pairing[j - 1].first, ib = b_.pairing[j].first;
    cplx ua = b_.roots[ia], ub = b_.roots[ib];
    cplx mid = 0.5 * (ua + ub);
    double m = mid.real();
    cplx ymid = c_.continue_y(m, y_real(m), mid);
    PeriodRow to_b = c_.ray_to_root(mid, ymid, ib, forms, tol);
    PeriodRow to_a = c_.ray_to_root(mid, ymid, ia, forms, tol);
    for (size_t i = 0; i < to_b.size(); ++i)
        to_b[i] = 2.0 * (to_b[i] - to_a[i]);
    return to_b;
}

std::vector<PeriodRow> ReferenceSheet::basis(const std::vector<LaurentForm>& forms,
                                             QuadTol tol) const
{
    std::vector<PeriodRow> B;
    for (int k = 1; k <= b_.g + 1; ++k)
        B.push_back(gamma(k, forms, tol));
    for (int j = 1; j <= b_.g; ++j)
        B.push_back(delta(j, forms, tol));
    return B;
}

PeriodRow ReferenceSheet::big_loop(const std::vector<LaurentForm>& forms, double radius,
                                   QuadTol tol) const
{
    double R = radius > 0 ? radius : 2 * length_scale(c_) + 1;
    for (cplx r : c_.roots())
        if (std::abs(r) > 0.75 * R)
            throw ContourError("big loop radius too small", R);
    const int K = (int)forms.size();
    const int panels = 64;
    PeriodRow total(K, 0.0);
    cplx xa = R;
    cplx ya = y_real(R);
    for (int p = 0; p < panels; ++p) {
        double t0 = 2 * PI * p / panels, t1 = 2 * PI * (p + 1) / panels;
        PeriodRow v = adaptive(
            [&](double s, cplx* out) {
                double th = t0 + s * (t1 - t0);
                cplx x = std::polar(R, th);
                cplx w = cplx(0, 1) * x * (t1 - t0) / c_.continue_y(xa, ya, x);
                for (int k = 0; k < K; ++k)
                    out[k] = forms[k](x) * w;
            },
            K, tol, xa);
        for (int k = 0; k < K; ++k)
            total[k] += v[k];
        cplx xb = std::polar(R, t1);
        ya = c_.continue_y(xa, ya, xb);
        xa = xb;
    }
    for (auto& z : total)
        z = -z;  // clockwise
    return total;
}

PeriodRow ReferenceSheet::polyline(const std::vector<cplx>& pts,
                                   const std::vector<LaurentForm>& forms, QuadTol tol) const
{
    if (pts.size() < 3)
        throw std::invalid_argument("polyline: need at least 3 vertices");
    const int K = (int)forms.size();
    PeriodRow total(K, 0.0);
    cplx y0 = y(pts[0]);
    cplx yp = y0;
    for (size_t i = 0; i < pts.size(); ++i) {
        cplx p = pts[i], q = pts[(i + 1) % pts.size()];
        PeriodRow v = c_.segment(p, yp, q, forms, tol);
        for (int k = 0; k < K; ++k)
            total[k] += v[k];
        yp = c_.continue_y(p, yp, q);
    }
    if (std::abs(yp - y0) > 1e-8 * std::abs(y0))
        throw ContourError("polyline does not close on the curve (odd number of branch points inside)",
                           pts[0]);
    return total;
}

cplx cycle_integral(const SpectralCoeffs& f, const ContourSpec& contour, const LaurentForm& form,
                    QuadTol tol)
{
    if (!(contour.clearance > 0))
        throw std::invalid_argument("cycle_integral: clearance must be positive");
    Curve c(f.poly());
    BranchConfig b = build_basis(c.roots(), f.g);
    ReferenceSheet sheet(c, b);
    std::vector<LaurentForm> forms{form};
    switch (contour.kind) {
    case ContourSpec::Kind::PairLoop:
        return sheet.gamma(contour.index, forms, tol)[0];
    case ContourSpec::Kind::DeltaLoop:
        return sheet.delta(contour.index, forms, tol)[0];
    case ContourSpec::Kind::BigLoop:
        return sheet.big_loop(forms, 0, tol)[0];
    case ContourSpec::Kind::Polyline: {
        const auto& P = contour.points;
        for (size_t i = 0; i < P.size(); ++i) {
            cplx p = P[i], q = P[(i + 1) % P.size()];
            if (c.clearance(p, q, -1, -1, form.pole_at_zero()) < contour.clearance)
                throw ContourError("polyline violates its clearance", p);
        }
        return sheet.polyline(P, forms, tol)[0];
    }
    }
    throw std::invalid_argument("cycle_integral: unknown contour kind");
}

// ------------------------------------------------------------ star lattice

StarLattice star_lattice(const Curve& c, const std::vector<LaurentForm>& forms, bool avoid_zero,
                         QuadTol tol)
{
    const int n = c.n();
    const double R = 2 * length_scale(c) + 1;
    StarLattice best;
    best.clearance = -1;
    for (int a = 0; a < 36; ++a) {
        cplx x0 = std::polar(R, 2 * PI * a / 36 + 0.123);
        double cl = INFINITY;
        for (int i = 0; i < n; ++i) {
            cl = std::min(cl, c.clearance(x0, c.roots()[i], i, -1, avoid_zero));
        }
        if (cl > best.clearance) {
            best.clearance = cl;
            best.x0 = x0;
        }
    }
    if (!(best.clearance > 1e-10 * R))
        throw ContourError("no admissible star base point", best.x0);
    cplx y0 = c.y_principal(best.x0);
    std::vector<PeriodRow> J;
    for (int i = 0; i < n; ++i)
        J.push_back(c.ray_to_root(best.x0, y0, i, forms, tol));
    for (int i = 1; i < n; ++i) {
        PeriodRow g(forms.size());
        for (size_t k = 0; k < forms.size(); ++k)
            g[k] = 2.0 * (J[0][k] - J[i][k]);
        best.gens.push_back(std::move(g));
    }
    return best;
}

// ------------------------------------------------------------ g = 1 actions

ComplexPoly quartic(const std::array<double, 3>& a)
{
    return ComplexPoly::from_descending({1.0, a[0], a[1], a[2], 1.0});
}

namespace {

void require_component_C(const ComplexPoly& f, const Curve& c)
{
    if (real_root_count(f) != 0)
        throw std::domain_error("parameters outside the no-real-root component");
    double sep = INFINITY;
    for (int i = 0; i < c.n(); ++i)
        for (int j = i + 1; j < c.n(); ++j)
            sep = std::min(sep, std::abs(c.roots()[i] - c.roots()[j]));
    if (sep < 1e-7)
        throw std::domain_error("parameters on or too close to the discriminant locus");
}

}  // namespace

double action_I1(const std::array<double, 3>& a, double A, QuadTol tol)
{
    ComplexPoly f = quartic(a);
    Curve c(f);
    require_component_C(f, c);
    ReferenceSheet sheet(c, build_basis(c.roots(), 1));
    cplx v = sheet.gamma(1, {y_over_x2_form(f)}, tol)[0];
    cplx I = cplx(0, A / (2 * PI)) * v;
    if (std::abs(I.imag()) > 1e-9 * std::max(1.0, std::abs(I)))
        throw std::runtime_error("action_I1: result is not real");
    return I.real();
}

double action_I1_cubic(const std::array<double, 3>& a, double A)
{
    const double a1 = a[0], a2 = a[1], a3 = a[2];
    ComplexPoly g = ComplexPoly::from_descending(
        {2.0, -a2, a1 * a3 / 2 - 2, a2 - (a1 * a1 + a3 * a3) / 4});
    auto gu = [&](double x) { return ((2 * x - a2) * x + (a1 * a3 / 2 - 2)) * x + a2 - (a1 * a1 + a3 * a3) / 4; };
    std::vector<double> r;
    for (cplx z : roots(g))
        if (std::abs(z.imag()) < 1e-7 && z.real() >= -1 - 1e-9 && z.real() <= 1 + 1e-9)
            r.push_back(std::clamp(z.real(), -1.0, 1.0));
    std::sort(r.begin(), r.end());
    // the oscillation interval: where g >= 0 between consecutive roots
    std::vector<double> u;
    for (size_t i = 0; i + 1 < r.size(); ++i)
        if (r[i + 1] - r[i] > 1e-12 && gu(0.5 * (r[i] + r[i + 1])) > 0) {
            u = {r[i], r[i + 1]};
            if (i + 2 < r.size() && gu(0.5 * (r[i + 1] + r[i + 2])) > 0 && r[i + 2] - r[i + 1] > 1e-12)
                throw std::domain_error("action_I1_cubic: two oscillation intervals");
            break;
        }
    if (u.size() != 2)
        throw std::domain_error("action_I1_cubic: g(u) has no oscillation interval in [-1, 1]");
    boost::math::quadrature::tanh_sinh<double> ts;
    double v = ts.integrate([&](double x) { return std::sqrt(std::max(gu(x), 0.0)) / (1 - x * x); },
                            u[0], u[1]);
    return A / PI * v;
}

std::array<double, 3> actions_g1(const std::array<double, 3>& a, double A)
{
    return {action_I1(a, A), A * a[0] / 2, A * a[2] / 2};
}

double residue_check(const std::array<double, 3>& a, QuadTol tol)
{
    ComplexPoly f = quartic(a);
    Curve c(f);
    require_component_C(f, c);
    ReferenceSheet sheet(c, build_basis(c.roots(), 1));
    cplx v = sheet.big_loop({y_over_x2_form(f)}, 0, tol)[0];
    return std::abs(v + cplx(0, PI * a[0]));
}

}  // namespace lagtop
