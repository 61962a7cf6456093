#ifndef LAGTOP_PERIODS_HPP
#define LAGTOP_PERIODS_HPP

#include "lagtop/homology.hpp"
#include "lagtop/poly.hpp"
#include "lagtop/spectral.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagtop {

/// p(x) dx / y with p a Laurent polynomial: p(x) = sum c[i] x^{lo+i}.
struct LaurentForm {
    int lo = 0;
    std::vector<cplx> c;

    cplx operator()(cplx x) const;
    bool pole_at_zero() const;
};

LaurentForm x_power_form(int k);
/// y dx / x^2 written as (f(x)/x^2) dx / y
LaurentForm y_over_x2_form(const ComplexPoly& f);

struct ContourError : std::runtime_error {
    cplx where;
    ContourError(const std::string& msg, cplx w) : std::runtime_error(msg), where(w) {}
};

struct QuadTol {
    double abs = 1e-13;
    double rel = 1e-12;
};

using PeriodRow = std::vector<cplx>;  // one entry per form

/// y^2 = f(x) with its branch points. y is continued along straight
/// segments by y(x) = y(p) prod_k sqrt((x - r_k)/(p - r_k)) (principal
/// roots), which is continuous as long as no branch point lies on [p, x].
class Curve {
public:
    explicit Curve(const ComplexPoly& f);
    Curve(const ComplexPoly& f, std::vector<cplx> roots);

    const ComplexPoly& f() const { return f_; }
    const std::vector<cplx>& roots() const { return r_; }
    int n() const { return (int)r_.size(); }

    cplx y_principal(cplx x) const;
    cplx continue_y(cplx p, cplx yp, cplx x) const;

    /// integral over the straight segment p -> q, y continued from yp at p
    PeriodRow segment(cplx p, cplx yp, cplx q, const std::vector<LaurentForm>& forms,
                      QuadTol tol = {}) const;
    /// integral over the straight segment p -> root ri (square-root endpoint)
    PeriodRow ray_to_root(cplx p, cplx yp, int ri, const std::vector<LaurentForm>& forms,
                          QuadTol tol = {}) const;
    /// distance from [p, q] to the branch points other than `skip` (and to 0 if asked)
    double clearance(cplx p, cplx q, int skip_a = -1, int skip_b = -1, bool zero = false) const;

private:
    ComplexPoly f_;
    std::vector<cplx> r_;
    cplx sqrt_lead_;
};

/// The reference sheet: vertical cuts join each conjugate pair, and y behaves
/// like +x^{g+1} near +infinity. On the real axis y = (-1)^(cuts to the right) sqrt(f).
class ReferenceSheet {
public:
    ReferenceSheet(const Curve& c, const BranchConfig& b);

    const Curve& curve() const { return c_; }
    const BranchConfig& branches() const { return b_; }

    double y_real(double x) const;
    cplx y(cplx x) const;
    /// y_ref(0) / sqrt(f(0))
    int sign_at_zero() const;

    /// ccw loop around the k-th pair (k = 1..g+1) as twice the integral
    /// from the lower to the upper root on the east side of the cut
    PeriodRow gamma(int k, const std::vector<LaurentForm>& forms, QuadTol tol = {}) const;
    /// ccw loop around [u_j, u_{j+1}] (upper roots), as twice the integral
    /// u_j -> u_{j+1} on its south side
    PeriodRow delta(int j, const std::vector<LaurentForm>& forms, QuadTol tol = {}) const;
    /// rows gamma_1..gamma_{g+1}, delta_1..delta_g
    std::vector<PeriodRow> basis(const std::vector<LaurentForm>& forms, QuadTol tol = {}) const;
    /// negatively oriented circle enclosing every branch point (gamma_inf)
    PeriodRow big_loop(const std::vector<LaurentForm>& forms, double radius = 0,
                       QuadTol tol = {}) const;
    /// closed polygon, traversed in the given vertex order, y from the
    /// reference sheet at the first vertex; throws if y does not close up
    PeriodRow polyline(const std::vector<cplx>& pts, const std::vector<LaurentForm>& forms,
                       QuadTol tol = {}) const;

private:
    Curve c_;
    BranchConfig b_;
};

struct ContourSpec {
    enum class Kind { PairLoop, DeltaLoop, BigLoop, Polyline };
    Kind kind = Kind::PairLoop;
    int index = 1;  // k for PairLoop, j for DeltaLoop
    std::vector<cplx> points;
    double clearance = 1e-6;
};

/// Integral of `form` over the contour on the reference sheet of f.
cplx cycle_integral(const SpectralCoeffs& f, const ContourSpec& contour, const LaurentForm& form,
                    QuadTol tol = {});

/// Star spanning set of H_1 of the affine curve: with x0 far out and J_i the
/// integral from x0 to branch point i, the cycles 2(J_0 - J_i), i = 1..n-1.
/// x0 maximizes the distance of the rays to the other branch points (and to
/// the origin when `avoid_zero`).
struct StarLattice {
    std::vector<PeriodRow> gens;
    cplx x0;
    double clearance = 0;
};
StarLattice star_lattice(const Curve& c, const std::vector<LaurentForm>& forms, bool avoid_zero,
                         QuadTol tol = {});

// ------------------------------------------------------------ g = 1 actions

/// x^4 + a1 x^3 + a2 x^2 + a3 x + 1
ComplexPoly quartic(const std::array<double, 3>& a);

/// I_1 = (A i / 2 pi) \oint_{gamma_1} y dx / x^2 with gamma_1 the leftmost pair loop.
double action_I1(const std::array<double, 3>& a, double A = 1.0, QuadTol tol = {});

/// I_1 = (A / pi) \int_{u1}^{u2} sqrt(g(u)) / (1 - u^2) du with
/// g(u) = 2u^3 - a2 u^2 + (a1 a3 / 2 - 2) u + a2 - (a1^2 + a3^2) / 4.
double action_I1_cubic(const std::array<double, 3>& a, double A = 1.0);

/// (I_1, I_2, I_3) = (action_I1, A a1 / 2, A a3 / 2)
std::array<double, 3> actions_g1(const std::array<double, 3>& a, double A = 1.0);

/// |\oint_{gamma_inf} y dx / x^2 + i pi a1|
double residue_check(const std::array<double, 3>& a, QuadTol tol = {});

}  // namespace lagtop

#endif
