#ifndef LAGTOP_POLY_HPP
#define LAGTOP_POLY_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lagtop {

using cplx = std::complex<double>;

/// Dense polynomial with complex coefficients, ascending order:
/// coeffs()[k] multiplies x^k. Trailing zeros are stripped, so the
/// zero polynomial has no coefficients and degree -1.
class ComplexPoly {
public:
    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<cplx> ascending);

    static ComplexPoly from_real(const std::vector<double>& ascending);
    static ComplexPoly from_descending(const std::vector<double>& descending);
    /// lead * prod (x - r)
    static ComplexPoly from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx coeff(int k) const { return (k >= 0 && k < (int)c_.size()) ? c_[k] : cplx(0); }
    cplx lead() const;

    cplx operator()(cplx x) const;
    ComplexPoly derivative() const;
    ComplexPoly conj() const;
    double max_abs_coeff() const;
    /// true if every imaginary part is below tol * max_abs_coeff
    bool is_real(double tol = 1e-12) const;
    std::vector<double> real_coeffs() const;

    ComplexPoly operator+(const ComplexPoly& o) const;
    ComplexPoly operator-(const ComplexPoly& o) const;
    ComplexPoly operator*(const ComplexPoly& o) const;
    ComplexPoly operator*(cplx s) const;

private:
    void strip();
    std::vector<cplx> c_;
};

struct RootFindError : std::runtime_error {
    double best_residual;
    RootFindError(const std::string& msg, double res)
        : std::runtime_error(msg), best_residual(res) {}
};

/// All roots with multiplicity (Aberth-Ehrlich iteration, Fujiwara-bound
/// starting circle), sorted lexicographically by (real, imag).
std::vector<cplx> roots(const ComplexPoly& p, double tol = 1e-12);

/// Same iteration warm-started from `guess`; the output keeps the order of
/// the guesses. Used by continuation, where labels must persist.
std::vector<cplx> roots_from(const ComplexPoly& p, const std::vector<cplx>& guess,
                             double tol = 1e-12);

/// Backward residual |p(r)| / (max|coeff| * max(1,|r|)^deg), the quantity
/// bounded by the `tol` of roots().
double root_residual(const ComplexPoly& p, cplx r);

/// Sylvester resultant Res(p, q).
cplx resultant(const ComplexPoly& p, const ComplexPoly& q);

/// disc(p) = (-1)^{n(n-1)/2} Res(p, p') / lead(p)
///         = lead^{2n-2} prod_{i<j} (r_i - r_j)^2.
/// With this sign disc(x^2+bx+c) = b^2-4c for every degree, no extra
/// parity factor.
cplx discriminant(const ComplexPoly& p);

/// |disc(p)| / max|coeff|^{2n-2}; invariant under p -> s*p.
double normalized_discriminant(const ComplexPoly& p);

enum class Endpoint { Reject, Include };

struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Number of distinct real roots, via a Sturm sequence in exact rational
/// arithmetic (every double is a dyadic rational, so the input is exact).
/// Without an interval all reals are counted. With [a,b] a root sitting
/// exactly on an endpoint throws DegenerateInput unless `ends` is Include,
/// in which case the closed interval is counted.
int real_root_count(const ComplexPoly& p,
                    std::optional<std::pair<double, double>> interval = std::nullopt,
                    Endpoint ends = Endpoint::Reject);

}  // namespace lagtop

#endif
