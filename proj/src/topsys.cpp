#include "lagtop/topsys.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace lagtop {

TopState::TopState(int g_, double m_, Vec3 w, std::vector<Vec3> rows)
    : g(g_), m(m_), omega(w), gamma(std::move(rows))
{
    validate();
}

void TopState::validate() const
{
    if (g < 0)
        throw std::invalid_argument("TopState: g must be non-negative");
    if ((int)gamma.size() != g)
        throw std::invalid_argument("TopState: gamma has " + std::to_string(gamma.size())
                                    + " rows, expected " + std::to_string(g));
    if (!std::isfinite(m) || 1 + m == 0)
        throw std::invalid_argument("TopState: need finite m with 1+m != 0");
    for (double v : flat())
        if (!std::isfinite(v))
            throw std::invalid_argument("TopState: non-finite entry");
}

Vec3 TopState::row(int i) const
{
    if (i == 0)
        return {omega[0], omega[1], (1 + m) * omega[2]};
    if (i < 0 || i > g)
        return {0, 0, 0};
    return gamma[i - 1];
}

std::vector<double> TopState::flat() const
{
    std::vector<double> z(omega.begin(), omega.end());
    for (auto& r : gamma)
        z.insert(z.end(), r.begin(), r.end());
    return z;
}

TopState TopState::from_flat(int g, double m, const std::vector<double>& z)
{
    if ((int)z.size() != 3 + 3 * g)
        throw std::invalid_argument("TopState::from_flat: wrong length");
    TopState s;
    s.g = g;
    s.m = m;
    s.omega = {z[0], z[1], z[2]};
    s.gamma.resize(g);
    for (int i = 0; i < g; ++i)
        s.gamma[i] = {z[3 + 3 * i], z[4 + 3 * i], z[5 + 3 * i]};
    return s;
}

std::vector<std::string> TopState::coordinate_names(int g)
{
    std::vector<std::string> n{"w1", "w2", "w3"};
    for (int i = 1; i <= g; ++i)
        for (int k = 1; k <= 3; ++k)
            n.push_back("g" + std::to_string(i) + "_" + std::to_string(k));
    return n;
}

void LevelVector::validate() const
{
    if (g < 0 || (int)hk.size() != 2 * g)
        throw std::invalid_argument("LevelVector: expected 2g values h_1..h_2g");
    if (1 + m == 0)
        throw std::invalid_argument("LevelVector: 1+m must be nonzero");
}

std::vector<double> LevelVector::values() const
{
    std::vector<double> v{h_m1, h};
    v.insert(v.end(), hk.begin(), hk.end());
    return v;
}

std::vector<std::string> integral_names(int g)
{
    std::vector<std::string> n{"H_-1", "H"};
    for (int k = 1; k <= 2 * g; ++k)
        n.push_back("H_" + std::to_string(k));
    return n;
}

// --------------------------------------------------------------- flow

namespace {

Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

constexpr Vec3 CHI{0, 0, 1};

/// Coefficients of Gamma(lambda) = chi lambda + Gamma_0 - sum Gamma_i lambda^-i,
/// then H_k = 1/2 [lambda^-k] <G, G> for k = -1..2g (tr(AB) = -2 a.b on so(3)).
template <class T>
std::vector<T> laurent_integrals(const std::vector<std::array<T, 3>>& rows, const T& zero,
                                 const T& one)
{
    const int g = (int)rows.size() - 1;
    // C[j + g] holds the coefficient of lambda^j, j = -g..1
    std::vector<std::array<T, 3>> C(g + 2, {zero, zero, zero});
    C[g + 1] = {zero, zero, one};
    C[g] = rows[0];
    for (int i = 1; i <= g; ++i)
        for (int c = 0; c < 3; ++c)
            C[g - i][c] = rows[i][c] * -1.0;
    std::vector<T> H;
    for (int k = -1; k <= 2 * g; ++k) {
        T acc = zero;
        for (int p = -g; p <= 1; ++p) {
            int q = -k - p;
            if (q < -g || q > 1)
                continue;
            for (int c = 0; c < 3; ++c)
                acc = acc + C[p + g][c] * C[q + g][c];
        }
        H.push_back(acc * 0.5);
    }
    return H;
}

}  // namespace

TopState lax_rhs(const TopState& s)
{
    TopState d = s;
    const Vec3& w = s.omega;
    // Gamma_0' = [Gamma_0, Omega] - [Gamma_1, chi]; Gamma_i' = [Gamma_i, Omega] + [Gamma_{i+1}, chi]
    Vec3 d0 = cross(s.row(0), w);
    Vec3 t1 = cross(s.row(1), CHI);
    for (int c = 0; c < 3; ++c)
        d0[c] -= t1[c];
    d.omega = {d0[0], d0[1], d0[2] / (1 + s.m)};
    for (int i = 1; i <= s.g; ++i) {
        Vec3 a = cross(s.row(i), w);
        Vec3 b = cross(s.row(i + 1), CHI);
        for (int c = 0; c < 3; ++c)
            d.gamma[i - 1][c] = a[c] + b[c];
    }
    return d;
}

FirstIntegrals first_integrals(const TopState& s)
{
    std::vector<Vec3> rows;
    for (int i = 0; i <= s.g; ++i)
        rows.push_back(s.row(i));
    std::vector<double> H = laurent_integrals<double>(rows, 0.0, 1.0);
    FirstIntegrals out;
    out.H0 = H[1];
    out.levels.g = s.g;
    out.levels.m = s.m;
    out.levels.h_m1 = H[0];
    out.levels.h = H[1] - s.m / (2 * (1 + s.m)) * H[0] * H[0];
    out.levels.hk.assign(H.begin() + 2, H.end());
    return out;
}

// -------------------------------------------------------- observables

Observable Observable::constant(int dim, double c)
{
    Observable o(dim);
    o.add_term(Exponents(dim, 0), c);
    return o;
}

Observable Observable::coordinate(int dim, int index, double c)
{
    Observable o(dim);
    Exponents e(dim, 0);
    e.at(index) = 1;
    o.add_term(e, c);
    return o;
}

void Observable::add_term(const Exponents& e, double c)
{
    if ((int)e.size() != dim_)
        throw std::invalid_argument("Observable: exponent length mismatch");
    if (c == 0)
        return;
    auto it = t_.find(e);
    if (it == t_.end())
        t_.emplace(e, c);
    else if ((it->second += c) == 0)
        t_.erase(it);
}

double Observable::operator()(const std::vector<double>& z) const
{
    if ((int)z.size() != dim_)
        throw std::invalid_argument("Observable: point dimension mismatch");
    double v = 0;
    for (auto& [e, c] : t_) {
        double term = c;
        for (int a = 0; a < dim_; ++a)
            for (int p = 0; p < e[a]; ++p)
                term *= z[a];
        v += term;
    }
    return v;
}

Observable Observable::partial(int index) const
{
    Observable o(dim_);
    for (auto& [e, c] : t_) {
        if (e[index] == 0)
            continue;
        Exponents f = e;
        f[index] -= 1;
        o.add_term(f, c * e[index]);
    }
    return o;
}

Observable Observable::operator+(const Observable& o) const
{
    Observable r = *this;
    if (r.dim_ == 0)
        r.dim_ = o.dim_;
    for (auto& [e, c] : o.t_)
        r.add_term(e, c);
    return r;
}

Observable Observable::operator-(const Observable& o) const { return *this + o * -1.0; }

Observable Observable::operator*(const Observable& o) const
{
    Observable r(std::max(dim_, o.dim_));
    for (auto& [e1, c1] : t_)
        for (auto& [e2, c2] : o.t_) {
            Exponents e(e1);
            for (size_t a = 0; a < e.size(); ++a)
                e[a] += e2[a];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Observable Observable::operator*(double s) const
{
    Observable r(dim_);
    for (auto& [e, c] : t_)
        r.add_term(e, c * s);
    return r;
}

Observable gamma_observable(int g, double m, int i, int k)
{
    const int dim = 3 + 3 * g;
    if (k < 1 || k > 3 || i < 0)
        throw std::invalid_argument("gamma_observable: index out of range");
    if (i > g)
        return Observable(dim);
    if (i == 0)
        return Observable::coordinate(dim, k - 1, k == 3 ? 1 + m : 1.0);
    return Observable::coordinate(dim, 3 + 3 * (i - 1) + (k - 1));
}

Observable integral_observable(int g, double m, int k, bool reduced)
{
    const int dim = 3 + 3 * g;
    if (k < -1 || k > 2 * g)
        throw std::invalid_argument("integral_observable: k out of range");
    std::vector<std::array<Observable, 3>> rows;
    for (int i = 0; i <= g; ++i)
        rows.push_back({gamma_observable(g, m, i, 1), gamma_observable(g, m, i, 2),
                        gamma_observable(g, m, i, 3)});
    auto H = laurent_integrals<Observable>(rows, Observable(dim), Observable::constant(dim, 1));
    if (k == 0 && reduced)
        return H[1] - H[0] * H[0] * (m / (2 * (1 + m)));
    return H[k + 1];
}

namespace {

struct GammaIndex {
    int i, k;
    double scale;  // d gamma-coordinate / d state-coordinate, inverted
};

GammaIndex gamma_index(int a, double m)
{
    if (a < 3)
        return {0, a + 1, a == 2 ? 1 / (1 + m) : 1.0};
    return {1 + (a - 3) / 3, 1 + (a - 3) % 3, 1.0};
}

/// Lambda^c_{kl} = -epsilon_{klc}: Lambda_12 = (0,0,-1), Lambda_13 = (0,1,0), Lambda_23 = (-1,0,0)
double lambda_const(int k, int l, int c)
{
    if (k == l || k == c || l == c)
        return 0;
    int perm = (k == 1 && l == 2) || (k == 2 && l == 3) || (k == 3 && l == 1) ? 1 : -1;
    return -perm;
}

}  // namespace

double structure_entry(const TopState& s, int a, int b)
{
    GammaIndex A = gamma_index(a, s.m), B = gamma_index(b, s.m);
    Vec3 r = s.row(A.i + B.i);  // zero row when i+j > g
    double v = 0;
    for (int c = 1; c <= 3; ++c)
        v += lambda_const(A.k, B.k, c) * r[c - 1];
    // The Lax matrix carries -Gamma_i for i >= 1, so the constants apply to
    // -gamma_{i,.}; two such factors against one leave a sign when i, j >= 1.
    if (A.i > 0 && B.i > 0)
        v = -v;
    return v * A.scale * B.scale;
}

double poisson_bracket(const Observable& F, const Observable& G, const TopState& s)
{
    const int dim = s.dim();
    std::vector<double> z = s.flat();
    std::vector<double> dF(dim), dG(dim);
    for (int a = 0; a < dim; ++a) {
        dF[a] = F.partial(a)(z);
        dG[a] = G.partial(a)(z);
    }
    double v = 0;
    for (int a = 0; a < dim; ++a) {
        if (dF[a] == 0)
            continue;
        for (int b = 0; b < dim; ++b)
            if (dG[b] != 0)
                v += dF[a] * dG[b] * structure_entry(s, a, b);
    }
    return v;
}

// -------------------------------------------------------- integration

Trajectory integrate(const TopState& s0, double t_end, double dt, int stride)
{
    if (!(dt > 0) || !(t_end > 0))
        throw std::invalid_argument("integrate: need dt > 0 and t_end > 0");
    if (stride < 1)
        throw std::invalid_argument("integrate: stride must be positive");
    s0.validate();
    const int g = s0.g;
    const double m = s0.m;
    const int dim = s0.dim();

    auto rhs = [&](const std::vector<double>& z) {
        return lax_rhs(TopState::from_flat(g, m, z)).flat();
    };
    auto integrals = [&](const std::vector<double>& z) {
        return first_integrals(TopState::from_flat(g, m, z)).levels.values();
    };

    Trajectory tr;
    std::vector<double> z = s0.flat();
    std::vector<double> H0 = integrals(z);
    double hscale = 0;
    for (double h : H0)
        hscale = std::max(hscale, std::abs(h));
    std::vector<double> denom(H0.size());
    for (size_t k = 0; k < H0.size(); ++k)
        denom[k] = std::max({std::abs(H0[k]), 1e-3 * hscale, 1e-300});
    tr.max_rel_drift.assign(H0.size(), 0.0);

    auto store = [&](double t) {
        tr.t.push_back(t);
        tr.states.push_back(TopState::from_flat(g, m, z));
        tr.integrals.push_back(integrals(z));
    };
    store(0);

    const long nsteps = std::max(1L, (long)std::ceil(t_end / dt - 1e-9));
    std::vector<double> k1, k2, k3, k4, tmp(dim);
    for (long n = 1; n <= nsteps; ++n) {
        double t0 = (n - 1) * dt;
        double h = (n == nsteps) ? t_end - t0 : dt;
        k1 = rhs(z);
        for (int a = 0; a < dim; ++a) tmp[a] = z[a] + 0.5 * h * k1[a];
        k2 = rhs(tmp);
        for (int a = 0; a < dim; ++a) tmp[a] = z[a] + 0.5 * h * k2[a];
        k3 = rhs(tmp);
        for (int a = 0; a < dim; ++a) tmp[a] = z[a] + h * k3[a];
        k4 = rhs(tmp);
        for (int a = 0; a < dim; ++a)
            z[a] += h / 6 * (k1[a] + 2 * k2[a] + 2 * k3[a] + k4[a]);
        double t = t0 + h;
        for (double v : z)
            if (!std::isfinite(v))
                throw IntegrationError("integrate: non-finite state", t);
        std::vector<double> H = integrals(z);
        for (size_t k = 0; k < H.size(); ++k)
            tr.max_rel_drift[k] = std::max(tr.max_rel_drift[k], std::abs(H[k] - H0[k]) / denom[k]);
        if (n % stride == 0 || n == nsteps)
            store(t);
    }
    return tr;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr)
{
    if (tr.states.empty())
        return;
    const int g = tr.states.front().g;
    os << "t";
    for (auto& n : TopState::coordinate_names(g))
        os << ',' << n;
    for (auto& n : integral_names(g))
        os << ',' << n;
    os << '\n';
    os << std::setprecision(17);
    for (size_t i = 0; i < tr.t.size(); ++i) {
        os << tr.t[i];
        for (double v : tr.states[i].flat())
            os << ',' << v;
        for (double v : tr.integrals[i])
            os << ',' << v;
        os << '\n';
    }
}

}  // namespace lagtop
