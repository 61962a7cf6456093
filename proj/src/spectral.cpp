#include "lagtop/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lagtop {

void SpectralCoeffs::validate() const
{
    if (g < 0 || (int)a.size() != 2 * g + 2)
        throw std::invalid_argument("SpectralCoeffs: expected 2g+2 coefficients");
    for (double v : a)
        if (!std::isfinite(v))
            throw std::invalid_argument("SpectralCoeffs: non-finite coefficient");
}

ComplexPoly SpectralCoeffs::poly() const
{
    validate();
    return ComplexPoly::from_descending(descending());
}

std::vector<double> SpectralCoeffs::descending() const
{
    std::vector<double> d{1.0};
    d.insert(d.end(), a.begin(), a.end());
    return d;
}

SpectralCoeffs SpectralCoeffs::from_poly(const ComplexPoly& f, double imag_tol)
{
    const int n = f.degree();
    if (n < 2 || n % 2)
        throw std::invalid_argument("SpectralCoeffs: need even degree >= 2");
    if (std::abs(f.lead() - cplx(1)) > 1e-12)
        throw std::invalid_argument("SpectralCoeffs: polynomial is not monic");
    if (!f.is_real(imag_tol))
        throw std::invalid_argument("SpectralCoeffs: coefficients are not real");
    SpectralCoeffs s;
    s.g = n / 2 - 1;
    for (int k = n - 1; k >= 0; --k)
        s.a.push_back(f.coeff(k).real());
    return s;
}

JacobiPolys jacobi_uvw(const TopState& s)
{
    s.validate();
    const int g = s.g;
    const cplx I(0, 1);
    std::vector<cplx> u(g + 2), v(g + 1), w(g + 2);
    u[g + 1] = w[g + 1] = 1;
    u[g] = (1 + s.m) * s.omega[2] - I * s.omega[1];
    w[g] = (1 + s.m) * s.omega[2] + I * s.omega[1];
    v[g] = s.omega[0];
    for (int k = 1; k <= g; ++k) {
        const Vec3& r = s.gamma[k - 1];
        u[g - k] = -(r[2] - I * r[1]);
        w[g - k] = -(r[2] + I * r[1]);
        v[g - k] = -r[0];
    }
    return {ComplexPoly(u), ComplexPoly(v), ComplexPoly(w)};
}

SpectralCoeffs spectral_from_state(const TopState& s)
{
    JacobiPolys j = jacobi_uvw(s);
    ComplexPoly f = j.V * j.V + j.U * j.W;
    return SpectralCoeffs::from_poly(f, 1e-12);
}

SpectralCoeffs spectral_from_levels(const LevelVector& h)
{
    h.validate();
    SpectralCoeffs f;
    f.g = h.g;
    f.a.push_back(2 * h.h_m1);
    f.a.push_back(2 * h.h + h.m / (1 + h.m) * h.h_m1 * h.h_m1);
    for (double v : h.hk)
        f.a.push_back(2 * v);
    return f;
}

LevelVector levels_from_spectral(const SpectralCoeffs& f, double m)
{
    f.validate();
    if (1 + m == 0)
        throw std::invalid_argument("levels_from_spectral: 1+m must be nonzero");
    LevelVector h;
    h.g = f.g;
    h.m = m;
    h.h_m1 = f.a[0] / 2;
    h.h = (f.a[1] - m / (1 + m) * h.h_m1 * h.h_m1) / 2;
    for (size_t k = 2; k < f.a.size(); ++k)
        h.hk.push_back(f.a[k] / 2);
    return h;
}

double spectral_identity_residual(const TopState& s)
{
    JacobiPolys j = jacobi_uvw(s);
    ComplexPoly f = j.V * j.V + j.U * j.W;
    SpectralCoeffs lv = spectral_from_levels(first_integrals(s).levels);
    ComplexPoly fl = lv.poly();
    double r = 0;
    for (int k = 0; k <= std::max(f.degree(), fl.degree()); ++k)
        r = std::max(r, std::abs(f.coeff(k) - fl.coeff(k)));
    return r;
}

}  // namespace lagtop
