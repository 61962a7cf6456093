#include "lagtop/poly.hpp"

#include <Eigen/Dense>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lagtop {

ComplexPoly::ComplexPoly(std::vector<cplx> ascending) : c_(std::move(ascending)) { strip(); }

ComplexPoly ComplexPoly::from_real(const std::vector<double>& ascending)
{
    std::vector<cplx> c(ascending.begin(), ascending.end());
    return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::from_descending(const std::vector<double>& descending)
{
    std::vector<cplx> c(descending.rbegin(), descending.rend());
    return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::from_roots(const std::vector<cplx>& roots, cplx lead)
{
    std::vector<cplx> c{lead};
    for (cplx r : roots) {
        std::vector<cplx> n(c.size() + 1, 0.0);
        for (size_t k = 0; k < c.size(); ++k) {
            n[k + 1] += c[k];
            n[k] -= r * c[k];
        }
        c.swap(n);
    }
    return ComplexPoly(std::move(c));
}

void ComplexPoly::strip()
{
    while (!c_.empty() && c_.back() == cplx(0))
        c_.pop_back();
}

cplx ComplexPoly::lead() const
{
    if (c_.empty())
        throw std::domain_error("lead of the zero polynomial");
    return c_.back();
}

cplx ComplexPoly::operator()(cplx x) const
{
    cplx v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        v = v * x + *it;
    return v;
}

ComplexPoly ComplexPoly::derivative() const
{
    if (c_.size() <= 1)
        return {};
    std::vector<cplx> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k)
        d[k - 1] = c_[k] * double(k);
    return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::conj() const
{
    std::vector<cplx> d(c_);
    for (auto& z : d)
        z = std::conj(z);
    return ComplexPoly(std::move(d));
}

double ComplexPoly::max_abs_coeff() const
{
    double m = 0;
    for (auto z : c_)
        m = std::max(m, std::abs(z));
    return m;
}

bool ComplexPoly::is_real(double tol) const
{
    double s = max_abs_coeff();
    for (auto z : c_)
        if (std::abs(z.imag()) > tol * s)
            return false;
    return true;
}

std::vector<double> ComplexPoly::real_coeffs() const
{
    std::vector<double> r(c_.size());
    for (size_t k = 0; k < c_.size(); ++k)
        r[k] = c_[k].real();
    return r;
}

ComplexPoly ComplexPoly::operator+(const ComplexPoly& o) const
{
    std::vector<cplx> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
    return ComplexPoly(std::move(r));
}

ComplexPoly ComplexPoly::operator-(const ComplexPoly& o) const { return *this + o * cplx(-1); }

ComplexPoly ComplexPoly::operator*(const ComplexPoly& o) const
{
    if (c_.empty() || o.c_.empty())
        return {};
    std::vector<cplx> r(c_.size() + o.c_.size() - 1, 0.0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    return ComplexPoly(std::move(r));
}

ComplexPoly ComplexPoly::operator*(cplx s) const
{
    std::vector<cplx> r(c_);
    for (auto& z : r) z *= s;
    return ComplexPoly(std::move(r));
}

// ---------------------------------------------------------------- roots

double root_residual(const ComplexPoly& p, cplx r)
{
    double scale = p.max_abs_coeff() * std::pow(std::max(1.0, std::abs(r)), p.degree());
    return std::abs(p(r)) / scale;
}

namespace {

constexpr int MAX_ABERTH_ITER = 600;

/// sum |a_k| |z|^k, the natural scale of a rounding error in p(z)
double eval_scale(const std::vector<cplx>& c, double az)
{
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        v = v * az + std::abs(*it);
    return v;
}

std::vector<cplx> aberth(const ComplexPoly& p, std::vector<cplx> z, double tol)
{
    const int n = p.degree();
    const auto& c = p.coeffs();
    ComplexPoly dp = p.derivative();
    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<char> done(n, 0);

    for (int it = 0; it < MAX_ABERTH_ITER; ++it) {
        bool all = true;
        for (int i = 0; i < n; ++i) {
            if (done[i])
                continue;
            cplx pz = p(z[i]);
            if (std::abs(pz) <= 4 * n * eps * eval_scale(c, std::abs(z[i]))) {
                done[i] = 1;
                continue;
            }
            all = false;
            cplx ratio = pz / dp(z[i]);
            cplx s = 0;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    s += 1.0 / (z[i] - z[j]);
            cplx w = ratio / (1.0 - ratio * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
                w = ratio;
            z[i] -= w;
            if (std::abs(w) <= eps * std::abs(z[i]))
                done[i] = 1;
        }
        if (all)
            break;
    }
    double worst = 0;
    for (auto r : z)
        worst = std::max(worst, root_residual(p, r));
    if (!(worst <= tol))
        throw RootFindError("root finder did not converge", worst);
    return z;
}

void check_rootable(const ComplexPoly& p)
{
    if (p.degree() < 1)
        throw std::invalid_argument("roots: degree must be at least 1");
    for (auto z : p.coeffs())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("roots: non-finite coefficient");
}

}  // namespace

std::vector<cplx> roots(const ComplexPoly& p, double tol)
{
    check_rootable(p);
    const int n = p.degree();
    const auto& c = p.coeffs();
    // Fujiwara bound
    double bound = 0;
    for (int k = 1; k <= n; ++k) {
        double q = std::abs(c[n - k] / c[n]);
        if (k == n)
            q /= 2;
        bound = std::max(bound, std::pow(q, 1.0 / k));
    }
    bound *= 2;
    if (bound == 0)
        bound = 1;
    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(bound, 2 * std::numbers::pi * k / n + 0.4);
    z = aberth(p, std::move(z), tol);
    std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
        long long ka = std::llround(a.real() * 1e9), kb = std::llround(b.real() * 1e9);
        if (ka != kb)
            return ka < kb;
        return a.imag() < b.imag();
    });
    return z;
}

std::vector<cplx> roots_from(const ComplexPoly& p, const std::vector<cplx>& guess, double tol)
{
    check_rootable(p);
    if ((int)guess.size() != p.degree())
        throw std::invalid_argument("roots_from: guess count differs from degree");
    return aberth(p, guess, tol);
}

// --------------------------------------------------------- discriminant

cplx resultant(const ComplexPoly& p, const ComplexPoly& q)
{
    const int n = p.degree(), m = q.degree();
    if (n < 0 || m < 0)
        return 0;
    if (n + m == 0)
        return 1;
    const int N = n + m;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N, N);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            S(r, r + k) = p.coeff(n - k);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k)
            S(m + r, r + k) = q.coeff(m - k);
    return S.fullPivLu().determinant();
}

cplx discriminant(const ComplexPoly& p)
{
    const int n = p.degree();
    if (n < 2)
        throw std::invalid_argument("discriminant: degree must be at least 2");
    double sign = ((n * (n - 1) / 2) % 2) ? -1.0 : 1.0;
    return sign * resultant(p, p.derivative()) / p.lead();
}

double normalized_discriminant(const ComplexPoly& p)
{
    const int n = p.degree();
    return std::abs(discriminant(p)) / std::pow(p.max_abs_coeff(), 2 * n - 2);
}

// ------------------------------------------------------------- Sturm

namespace {

using QPoly = std::vector<mpq_class>;  // ascending

void qstrip(QPoly& a)
{
    while (!a.empty() && sgn(a.back()) == 0)
        a.pop_back();
}

QPoly qrem(QPoly a, const QPoly& b)
{
    const int db = (int)b.size() - 1;
    while ((int)a.size() - 1 >= db && !a.empty()) {
        int shift = (int)a.size() - 1 - db;
        mpq_class f = a.back() / b.back();
        for (int k = 0; k <= db; ++k)
            a[shift + k] -= f * b[k];
        a.pop_back();
        qstrip(a);
    }
    return a;
}

int qsign_at(const QPoly& a, const mpq_class& x)
{
    mpq_class v = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it)
        v = v * x + *it;
    return sgn(v);
}

int qsign_inf(const QPoly& a, int dir)
{
    int s = sgn(a.back());
    if (dir < 0 && ((a.size() - 1) % 2))
        s = -s;
    return s;
}

template <class SignFn>
int variations(const std::vector<QPoly>& seq, SignFn sign)
{
    int v = 0, last = 0;
    for (auto& q : seq) {
        int s = sign(q);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++v;
        last = s;
    }
    return v;
}

}  // namespace

int real_root_count(const ComplexPoly& p, std::optional<std::pair<double, double>> interval,
                    Endpoint ends)
{
    if (p.degree() < 0)
        throw std::invalid_argument("real_root_count: zero polynomial");
    if (!p.is_real(1e-12))
        throw std::invalid_argument("real_root_count: coefficients are not real");
    QPoly a;
    for (auto z : p.coeffs())
        a.emplace_back(z.real());
    qstrip(a);
    if (a.size() <= 1)
        return 0;

    std::vector<QPoly> seq{a};
    QPoly d(a.size() - 1);
    for (size_t k = 1; k < a.size(); ++k)
        d[k - 1] = a[k] * mpq_class(static_cast<long>(k));
    seq.push_back(d);
    while (seq.back().size() > 1) {
        QPoly r = qrem(seq[seq.size() - 2], seq.back());
        if (r.empty())
            break;
        for (auto& x : r)
            x = -x;
        seq.push_back(r);
    }

    if (!interval) {
        return variations(seq, [](const QPoly& q) { return qsign_inf(q, -1); })
             - variations(seq, [](const QPoly& q) { return qsign_inf(q, +1); });
    }
    auto [lo, hi] = *interval;
    if (!(lo <= hi))
        throw std::invalid_argument("real_root_count: empty interval");
    mpq_class qa(lo), qb(hi);
    int extra = 0;
    bool root_a = qsign_at(a, qa) == 0, root_b = qsign_at(a, qb) == 0;
    if (root_a || root_b) {
        if (ends == Endpoint::Reject)
            throw DegenerateInput("real_root_count: root at an interval endpoint");
        if (root_a)
            extra = 1;
    }
    int va = variations(seq, [&](const QPoly& q) { return qsign_at(q, qa); });
    int vb = variations(seq, [&](const QPoly& q) { return qsign_at(q, qb); });
    // V(c) = V(c+) at a root c of p, so va - vb counts roots in (a, b]
    return va - vb + extra;
}

}  // namespace lagtop
