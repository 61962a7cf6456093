#ifndef LAGTOP_TOPSYS_HPP
#define LAGTOP_TOPSYS_HPP

#include <array>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagtop {

using Vec3 = std::array<double, 3>;

/// Phase-space point of the degree-g top. Row 0 of the gamma table,
/// (w1, w2, (1+m) w3), is derived and never stored.
struct TopState {
    int g = 0;
    double m = 0;
    Vec3 omega{};
    std::vector<Vec3> gamma;  // rows 1..g

    TopState() = default;
    TopState(int g_, double m_, Vec3 w, std::vector<Vec3> rows = {});

    void validate() const;
    /// gamma_{i,.} for i = 0..g, with the derived row at i = 0 and zero above g
    Vec3 row(int i) const;

    int dim() const { return 3 + 3 * g; }
    std::vector<double> flat() const;
    static TopState from_flat(int g, double m, const std::vector<double>& z);
    /// "w1","w2","w3","g1_1",...
    static std::vector<std::string> coordinate_names(int g);
};

/// (h_{-1}, h, h_1, ..., h_{2g}) plus m.
struct LevelVector {
    int g = 0;
    double m = 0;
    double h_m1 = 0;
    double h = 0;
    std::vector<double> hk;  // h_1..h_{2g}

    void validate() const;
    /// flat (h_{-1}, h, h_1..h_{2g}), length 2g+2
    std::vector<double> values() const;
};

struct FirstIntegrals {
    LevelVector levels;  // h = reduced Hamiltonian H
    double H0 = 0;       // unreduced H_0
};

/// Time derivative along the Lax flow, same shape as the state.
TopState lax_rhs(const TopState& s);

/// Residue formula on the Laurent expansion of tr(Gamma(lambda)^2).
FirstIntegrals first_integrals(const TopState& s);

/// Names matching LevelVector::values(): "H_-1","H","H_1",...
std::vector<std::string> integral_names(int g);

// ------------------------------------------------------------ observables

/// Polynomial in the state coordinates (TopState::flat order), stored as a
/// sparse map from exponent vectors to coefficients.
class Observable {
public:
    using Exponents = std::vector<int>;

    Observable() = default;
    explicit Observable(int dim) : dim_(dim) {}
    static Observable constant(int dim, double c);
    static Observable coordinate(int dim, int index, double c = 1.0);

    int dim() const { return dim_; }
    const std::map<Exponents, double>& terms() const { return t_; }
    void add_term(const Exponents& e, double c);

    double operator()(const std::vector<double>& z) const;
    Observable partial(int index) const;

    Observable operator+(const Observable& o) const;
    Observable operator-(const Observable& o) const;
    Observable operator*(const Observable& o) const;
    Observable operator*(double s) const;

private:
    int dim_ = 0;
    std::map<Exponents, double> t_;
};

/// Observable for the coordinate gamma_{i,k} (i = 0 gives the derived row).
Observable gamma_observable(int g, double m, int i, int k);

/// H_k as a polynomial observable, k = -1..2g; k = 0 gives the reduced H
/// when `reduced` is set, else H_0.
Observable integral_observable(int g, double m, int k, bool reduced = true);

/// {x_a, x_b} at s in TopState::flat coordinates:
/// {gamma_{i,k}, gamma_{j,l}} = eps_{ij} sum_c Lambda^c_{kl} gamma_{i+j,c}, with
/// eps_{ij} = -1 when i, j >= 1 (else +1), converted to omega_3 by the chain rule.
double structure_entry(const TopState& s, int a, int b);

/// Leibniz-expanded bracket {F, G} evaluated at s. gamma_{i+j} is taken as
/// zero when i+j > g.
double poisson_bracket(const Observable& F, const Observable& G, const TopState& s);

// ------------------------------------------------------------ integration

struct IntegrationError : std::runtime_error {
    double t;
    IntegrationError(const std::string& msg, double t_)
        : std::runtime_error(msg), t(t_) {}
};

struct Trajectory {
    std::vector<double> t;
    std::vector<TopState> states;
    std::vector<std::vector<double>> integrals;  // LevelVector::values per sample
    std::vector<double> max_rel_drift;           // per integral, over every step
};

/// Classical RK4 with fixed dt (last step shortened to hit t_end).
/// Every `stride`-th step is stored; t = 0 and t = t_end always are.
/// Drift of integral k is max |H_k(t) - H_k(0)| / max(|H_k(0)|, 1e-3 * max_j |H_j(0)|).
Trajectory integrate(const TopState& s0, double t_end, double dt, int stride = 1);

void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

}  // namespace lagtop

#endif
