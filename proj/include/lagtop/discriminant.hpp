#ifndef LAGTOP_DISCRIMINANT_HPP
#define LAGTOP_DISCRIMINANT_HPP

#include "lagtop/poly.hpp"
#include "lagtop/spectral.hpp"

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace lagtop {

struct StratumPoint {
    enum class Kind { DoubleRootBranch, TripleRoot, Crossing, IsolatedComplexPair, QuadrupleRoot };
    Kind kind = Kind::DoubleRootBranch;
    std::vector<double> location;  // (a1, a2) for the g = 1 sections
    std::vector<cplx> witness;     // the repeated root(s)
    double normalized_disc = 0;
};

std::string kind_name(StratumPoint::Kind k);

/// (a1, a2) on the section a3 = c for which u is a real double root of
/// x^4 + a1 x^3 + a2 x^2 + c x + 1.
std::pair<double, double> delta_c_section(double c, double u);

/// Quadruple, triple-root, crossing and isolated points of the section a3 = c.
std::vector<StratumPoint> classify_special_points(double c);

struct IsolationReport {
    enum class Family { A3, Intro };  // (x^2+1)^2 + (a1 x + a2) x^2  |  (x^2+1)^2 + a x + b
    Family family = Family::A3;
    double radius = 0;
    int grid = 0;
    int samples = 0;
    double origin_disc = 0;
    double min_normalized_disc = 0;  // over the sampled disk minus the origin
    std::pair<double, double> argmin{0, 0};
    bool isolated = false;           // min above floor
    double floor = 1e-14;
};

/// Scans a grid x grid lattice over [-r, r]^2 restricted to the disk,
/// origin excluded.
IsolationReport a3_isolated_check(double r, int grid = 100,
                                  IsolationReport::Family family = IsolationReport::Family::A3);

/// (x^2+1)^3 + x^3 (a x^2 + b x + c)
ComplexPoly g2_poly(double a, double b, double c);

struct G2Branch {
    double c2 = 1;
    int sign = 1;
    double alpha = 0;
    double a = 0, b = 0, c = 0;
    double c1 = 0, d1 = 0, d2 = 1;
    double Delta1 = 0, Delta2 = 0;                // closed forms
    double Delta1_direct = 0, Delta2_direct = 0;  // c1^2 - 4 c2, d1^2 - 4 d2
    double factor_residual = 0;  // max coeff gap between P and (x^2+c1x+c2)^2 (x^2+d1x+d2)
};

/// Point of the g = 2 discriminant branch with 3 alpha^2 = c2 (c2 + 2).
G2Branch g2_branch(double c2, int sign);

struct ComponentCheck {
    bool in_C = false;
    bool near_discriminant = false;
    int real_roots = 0;
    double normalized_disc = 0;
};

/// In the component C iff there are no real roots and the normalized
/// discriminant exceeds tol. Values within 1e3 * tol of it are flagged.
ComponentCheck component_check(const SpectralCoeffs& f, double tol = 1e-12);
bool in_component_C(const SpectralCoeffs& f, double tol = 1e-12);

/// CSV "c,u,a1,a2" over u in [u_min, u_max] (u = 0 skipped).
void write_section_csv(std::ostream& os, double c, double u_min, double u_max, int n);
/// CSV "c2,sign,a,b,c,Delta1,Delta2" over c2 in [lo, hi], both signs.
void write_g2_branch_csv(std::ostream& os, double lo, double hi, int n);

}  // namespace lagtop

#endif
