#ifndef LAGTOP_HOMOLOGY_HPP
#define LAGTOP_HOMOLOGY_HPP

#include "lagtop/poly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace lagtop {

using IntMatrix = std::vector<std::vector<long long>>;

/// Labeled branch points of y^2 = f(x). pairing[k] = (upper, lower) root
/// indices of the k-th conjugate pair, pairs ordered by increasing real part.
struct BranchConfig {
    int g = 0;
    std::vector<cplx> roots;
    std::vector<std::pair<int, int>> pairing;
    bool conjugate = true;  // false: real-part fallback pairing was used
    std::string warning;
    double min_separation = 0;

    /// upper root of pair k (0-based)
    cplx upper(int k) const { return roots[pairing[k].first]; }
    cplx lower(int k) const { return roots[pairing[k].second]; }
};

/// Canonical pairing: gamma_k encircles the k-th conjugate pair by real part.
/// With real roots present the roots are sorted by real part and paired
/// consecutively instead, and `conjugate` is cleared with a warning.
BranchConfig build_basis(const std::vector<cplx>& roots, int g, double tol = 1e-9);

/// Integer class over (gamma_1..gamma_{g+1}, delta_1..delta_g).
struct CycleClass {
    int g = 0;
    std::vector<long long> c;

    CycleClass() = default;
    CycleClass(int g_, std::vector<long long> coeffs);
    static CycleClass zero(int g);
    static CycleClass gamma(int g, int k);        // k = 1..g+1
    static CycleClass delta(int g, int j);        // j = 1..g
    /// conjugate of delta_j: delta_j + gamma_j + gamma_{j+1}
    static CycleClass delta_prime(int g, int j);
    /// big loop around every branch point: -sum gamma_i
    static CycleClass gamma_inf(int g);

    int size() const { return 2 * g + 1; }
    CycleClass operator+(const CycleClass& o) const;
    CycleClass operator-(const CycleClass& o) const;
    CycleClass operator*(long long s) const;
    bool operator==(const CycleClass& o) const = default;
    std::vector<std::string> labels() const;
};

/// Antisymmetric form on the basis: <gamma_j, delta_j> = +1,
/// <gamma_{j+1}, delta_j> = -1, <delta_j, delta_{j+1}> = -1, the rest 0.
IntMatrix intersection_matrix(int g);
long long intersection(const CycleClass& a, const CycleClass& b);

/// c -> c + power * <c, v> v (power = +1 for a counterclockwise
/// half-twist of the colliding branch points).
CycleClass picard_lefschetz(const CycleClass& c, const CycleClass& vanishing, int power = 1);

/// Matrix whose column j is the image of basis cycle j under the product of
/// twists (applied in list order; the twists must commute pairwise).
IntMatrix picard_lefschetz_matrix(int g, const std::vector<std::pair<CycleClass, int>>& twists);

// integer matrix helpers
IntMatrix identity_matrix(int n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
long long determinant(const IntMatrix& a);
CycleClass apply(const IntMatrix& m, const CycleClass& c);

}  // namespace lagtop

#endif
