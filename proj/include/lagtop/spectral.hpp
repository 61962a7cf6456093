#ifndef LAGTOP_SPECTRAL_HPP
#define LAGTOP_SPECTRAL_HPP

#include "lagtop/poly.hpp"
#include "lagtop/topsys.hpp"

#include <vector>

namespace lagtop {

/// f(x) = x^{2g+2} + a_1 x^{2g+1} + ... + a_{2g+2}; a holds a_1..a_{2g+2}.
struct SpectralCoeffs {
    int g = 0;
    std::vector<double> a;

    void validate() const;
    ComplexPoly poly() const;
    /// 1, a_1, ..., a_{2g+2}
    std::vector<double> descending() const;
    static SpectralCoeffs from_poly(const ComplexPoly& f, double imag_tol = 1e-9);
};

struct JacobiPolys {
    ComplexPoly U, V, W;
};

/// U = x^{g+1} + ((1+m)w3 - i w2) x^g - sum (g_{k,3} - i g_{k,2}) x^{g-k},
/// V = w1 x^g - sum g_{k,1} x^{g-k}, W = the same as U with +i.
JacobiPolys jacobi_uvw(const TopState& s);

/// Coefficients of V^2 + U W. Throws if an imaginary part exceeds 1e-12 of scale.
SpectralCoeffs spectral_from_state(const TopState& s);

/// a_1 = 2h_{-1}, a_2 = 2h + m/(1+m) h_{-1}^2 (= 2H_0), a_{k+2} = 2h_k.
SpectralCoeffs spectral_from_levels(const LevelVector& h);

/// Inverse of spectral_from_levels for a given m.
LevelVector levels_from_spectral(const SpectralCoeffs& f, double m);

/// max |coeff(V^2+UW) - coeff(spectral_from_levels(first_integrals(s)))|
double spectral_identity_residual(const TopState& s);

}  // namespace lagtop

#endif
