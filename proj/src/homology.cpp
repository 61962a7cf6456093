#include "lagtop/homology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lagtop {

BranchConfig build_basis(const std::vector<cplx>& roots, int g, double tol)
{
    const int n = 2 * g + 2;
    if ((int)roots.size() != n)
        throw std::invalid_argument("build_basis: expected 2g+2 roots");
    BranchConfig b;
    b.g = g;
    b.roots = roots;
    double sep = INFINITY;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            sep = std::min(sep, std::abs(roots[i] - roots[j]));
    b.min_separation = sep;
    if (!(sep > tol))
        throw std::invalid_argument("build_basis: branch points collide");

    std::vector<int> up, lo;
    for (int i = 0; i < n; ++i)
        (roots[i].imag() > tol ? up : roots[i].imag() < -tol ? lo : up).push_back(i);
    bool ok = (int)up.size() == g + 1 && (int)lo.size() == g + 1;
    if (ok) {
        for (int i : up)
            if (!(roots[i].imag() > tol))
                ok = false;
    }
    if (ok) {
        std::sort(up.begin(), up.end(),
                  [&](int a, int c) { return roots[a].real() < roots[c].real(); });
        std::vector<char> used(n, 0);
        for (int u : up) {
            int best = -1;
            double bd = INFINITY;
            for (int l : lo)
                if (!used[l] && std::abs(roots[l] - std::conj(roots[u])) < bd) {
                    bd = std::abs(roots[l] - std::conj(roots[u]));
                    best = l;
                }
            // a partner farther than half the separation is not a conjugate
            if (best < 0 || bd > 0.5 * sep + tol) {
                ok = false;
                break;
            }
            used[best] = 1;
            b.pairing.emplace_back(u, best);
        }
    }
    if (!ok) {
        b.pairing.clear();
        b.conjugate = false;
        b.warning = "no conjugate pairing (real roots present); paired by real part";
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int c) {
            if (roots[a].real() != roots[c].real())
                return roots[a].real() < roots[c].real();
            return roots[a].imag() > roots[c].imag();
        });
        for (int k = 0; k < n; k += 2)
            b.pairing.emplace_back(idx[k], idx[k + 1]);
    }
    return b;
}

CycleClass::CycleClass(int g_, std::vector<long long> coeffs) : g(g_), c(std::move(coeffs))
{
    if ((int)c.size() != 2 * g + 1)
        throw std::invalid_argument("CycleClass: expected 2g+1 coefficients");
}

CycleClass CycleClass::zero(int g) { return CycleClass(g, std::vector<long long>(2 * g + 1, 0)); }

CycleClass CycleClass::gamma(int g, int k)
{
    if (k < 1 || k > g + 1)
        throw std::out_of_range("CycleClass::gamma index");
    CycleClass r = zero(g);
    r.c[k - 1] = 1;
    return r;
}

CycleClass CycleClass::delta(int g, int j)
{
    if (j < 1 || j > g)
        throw std::out_of_range("CycleClass::delta index");
    CycleClass r = zero(g);
    r.c[g + j] = 1;
    return r;
}

CycleClass CycleClass::delta_prime(int g, int j)
{
    return delta(g, j) + gamma(g, j) + gamma(g, j + 1);
}

CycleClass CycleClass::gamma_inf(int g)
{
    CycleClass r = zero(g);
    for (int k = 0; k <= g; ++k)
        r.c[k] = -1;
    return r;
}

CycleClass CycleClass::operator+(const CycleClass& o) const
{
    if (o.g != g)
        throw std::invalid_argument("CycleClass: basis mismatch");
    CycleClass r = *this;
    for (size_t i = 0; i < c.size(); ++i)
        r.c[i] += o.c[i];
    return r;
}

CycleClass CycleClass::operator-(const CycleClass& o) const { return *this + o * -1; }

CycleClass CycleClass::operator*(long long s) const
{
    CycleClass r = *this;
    for (auto& v : r.c)
        v *= s;
    return r;
}

std::vector<std::string> CycleClass::labels() const
{
    std::vector<std::string> l;
    for (int k = 1; k <= g + 1; ++k)
        l.push_back("gamma_" + std::to_string(k));
    for (int j = 1; j <= g; ++j)
        l.push_back("delta_" + std::to_string(j));
    return l;
}

IntMatrix intersection_matrix(int g)
{
    const int n = 2 * g + 1;
    IntMatrix J(n, std::vector<long long>(n, 0));
    auto set = [&](int a, int b, long long v) {
        J[a][b] = v;
        J[b][a] = -v;
    };
    for (int j = 1; j <= g; ++j) {
        int d = g + j;
        set(j - 1, d, 1);   // gamma_j . delta_j
        set(j, d, -1);      // gamma_{j+1} . delta_j
        if (j < g)
            set(d, d + 1, -1);
    }
    return J;
}

long long intersection(const CycleClass& a, const CycleClass& b)
{
    if (a.g != b.g || (int)a.c.size() != a.size() || (int)b.c.size() != b.size())
        throw std::invalid_argument("intersection: basis mismatch");
    IntMatrix J = intersection_matrix(a.g);
    long long v = 0;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            v += a.c[i] * J[i][j] * b.c[j];
    return v;
}

CycleClass picard_lefschetz(const CycleClass& c, const CycleClass& vanishing, int power)
{
    return c + vanishing * (power * intersection(c, vanishing));
}

IntMatrix picard_lefschetz_matrix(int g, const std::vector<std::pair<CycleClass, int>>& twists)
{
    const int n = 2 * g + 1;
    IntMatrix M(n, std::vector<long long>(n, 0));
    for (int j = 0; j < n; ++j) {
        CycleClass e = CycleClass::zero(g);
        e.c[j] = 1;
        for (auto& [v, p] : twists)
            e = picard_lefschetz(e, v, p);
        for (int i = 0; i < n; ++i)
            M[i][j] = e.c[i];
    }
    return M;
}

IntMatrix identity_matrix(int n)
{
    IntMatrix I(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        I[i][i] = 1;
    return I;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b)
{
    const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMatrix r(n, std::vector<long long>(m, 0));
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != k)
            throw std::invalid_argument("multiply: shape mismatch");
        for (size_t l = 0; l < k; ++l)
            for (size_t j = 0; j < m; ++j)
                r[i][j] += a[i][l] * b[l][j];
    }
    return r;
}

long long determinant(const IntMatrix& a)
{
    // Bareiss fraction-free elimination
    const int n = (int)a.size();
    if (n == 0)
        return 1;
    std::vector<std::vector<__int128>> M(n, std::vector<__int128>(n));
    for (int i = 0; i < n; ++i) {
        if ((int)a[i].size() != n)
            throw std::invalid_argument("determinant: matrix not square");
        for (int j = 0; j < n; ++j)
            M[i][j] = a[i][j];
    }
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M[k][k] == 0) {
            int p = k + 1;
            while (p < n && M[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(M[k], M[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign * (long long)M[n - 1][n - 1];
}

CycleClass apply(const IntMatrix& m, const CycleClass& c)
{
    if ((int)m.size() != c.size())
        throw std::invalid_argument("apply: shape mismatch");
    CycleClass r = CycleClass::zero(c.g);
    for (int i = 0; i < c.size(); ++i)
        for (int j = 0; j < c.size(); ++j)
            r.c[i] += m[i][j] * c.c[j];
    return r;
}

}  // namespace lagtop
