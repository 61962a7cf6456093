#ifndef LAGTOP_TRACKING_HPP
#define LAGTOP_TRACKING_HPP

#include "lagtop/homology.hpp"
#include "lagtop/periods.hpp"
#include "lagtop/spectral.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagtop {

/// Straight segment or circular arc in a parameter chart.
struct LoopPiece {
    enum class Kind { Segment, Arc };
    Kind kind = Kind::Segment;
    std::vector<double> p, q;               // segment ends
    std::vector<double> center, e1, e2;     // arc: center + radius (cos th e1 + sin th e2)
    double radius = 0, th0 = 0, th1 = 0;

    std::vector<double> at(double s) const;  // s in [0, 1]
    double length() const;
    LoopPiece reversed() const;
};

/// Small circle around a discriminant point reached from the base by a
/// straight tail: base -> center + radius e1, then around with `turn` = +1
/// meaning e1 -> e2 first.
struct LassoInfo {
    std::vector<double> base, center, e1, e2;
    double radius = 0;
    int turn = 1;
};

class ParameterLoop {
public:
    /// G1: (a1, a2, a3) -> x^4 + a1 x^3 + a2 x^2 + a3 x + 1
    /// G2: (a, b, c)    -> (x^2+1)^3 + x^3 (a x^2 + b x + c)
    /// Full: (a_1, ..., a_{2g+2})
    enum class Chart { G1, G2, Full };

    Chart chart = Chart::G1;
    int g = 1;
    std::string name;
    /// +1 traverses `pieces` as stored, -1 backwards
    int orientation = 1;
    std::vector<LoopPiece> pieces;
    std::optional<LassoInfo> lasso;  // geometry as stored (before orientation)

    int dim() const;
    std::vector<double> point(double t) const;  // t in [0, 1], arc-length parameter
    SpectralCoeffs coeffs(double t) const;
    /// index of the traversed piece containing t
    int piece_at(double t) const;
    /// turn of the circle actually traversed (lasso only)
    int effective_turn() const;

    /// throws std::invalid_argument if not closed or a waypoint is near Δ
    void validate(double disc_tol = 1e-12) const;

    ParameterLoop reversed() const;

    static ParameterLoop from_waypoints(Chart chart, int g, std::vector<std::vector<double>> wps,
                                        int orientation = 1, std::string name = "");
    static ParameterLoop constant(Chart chart, int g, std::vector<double> p, std::string name = "trivial");
    static ParameterLoop make_lasso(Chart chart, int g, const LassoInfo& L, int orientation,
                                    std::string name);
    /// first a, then b; a and b must share the base point
    static ParameterLoop compose(const ParameterLoop& a, const ParameterLoop& b);
};

SpectralCoeffs chart_coeffs(ParameterLoop::Chart chart, int g, const std::vector<double>& p);
std::string chart_name(ParameterLoop::Chart c);

// ------------------------------------------------------------ named loops

/// Base (a1,a2,a3) = base (default (0,1,0)): tail to (0,1.5,0), then the
/// circle of radius 1/2 around (0,2,0) in the a3 = 0 plane. orientation -1
/// is clockwise in the (a1, a2) plane.
ParameterLoop cushman_loop(std::vector<double> base = {0, 1, 0}, int orientation = -1);

/// Circle of radius 0.2 |Q| around Q = g2 branch point (c2, sign), in the
/// plane normal to dQ/dc2, with a straight tail from `base`.
ParameterLoop kappa_loop(double c2, int sign, int orientation, std::vector<double> base,
                         std::string name);
/// kappa1: (c2, sign) = (0.8, -1); kappa2: (0.8, +1); kappa3: (1.2, +1); base (0, -0.05, 0).
ParameterLoop named_loop(const std::string& name, int orientation = -1,
                         std::optional<std::vector<double>> base = std::nullopt);

// ------------------------------------------------------------ root tracking

struct TrackingError : std::runtime_error {
    int piece;
    double t;
    TrackingError(const std::string& msg, int piece_, double t_)
        : std::runtime_error(msg), piece(piece_), t(t_) {}
};

struct RootTrack {
    std::vector<double> t;
    std::vector<std::vector<cplx>> roots;  // labels fixed by the sorted roots at t = 0
    /// label i ends where label permutation[i] started
    std::vector<int> permutation;
    int steps_used = 0;
    double min_separation = 0;
    double closure_error = 0;
};

/// Continuation with bisection whenever a root moves by more than a third
/// of the current minimal separation. sep_tol is relative to the root scale.
RootTrack track_roots(const ParameterLoop& loop, int steps = 64, double sep_tol = 1e-8);
/// Same, along t in [t0, t1] of the loop, starting from given labeled roots.
RootTrack track_roots_from(const ParameterLoop& loop, double t0, double t1,
                           std::vector<cplx> start, int steps = 64, double sep_tol = 1e-8);

// ------------------------------------------------------------ monodromy

struct TrackOptions {
    int min_steps = 32;
    double step_tol = 0;      // 0: 1e-6 for g = 1, 1e-4 otherwise
    int max_steps = 100000;
    int order = 3;            // Lagrange extrapolation order
    QuadTol quad{1e-13, 1e-12};

    double step_tol_for(int g) const { return step_tol > 0 ? step_tol : (g == 1 ? 1e-6 : 1e-4); }
};

struct MonodromyResult {
    static constexpr int schema_version = 1;
    std::string name;
    std::string route;  // "periods", "picard-lefschetz", "actions"
    std::vector<std::string> basis;
    IntMatrix matrix;   // column j = image of basis element j
    double residual = 0;
    double tracking_residual = 0;  // worst per-step distance to the lattice
    double final_residual = 0;     // change of basis at the end
    std::vector<int> permutation;
    int orientation = 1;
    int steps_used = 0;
    double condition = 0;  // of the realified base period matrix
    std::map<std::string, double> tolerances;
};

/// Period route on the basis (gamma_1..gamma_{g+1}, delta_1..delta_g).
MonodromyResult monodromy_periods(const ParameterLoop& loop, const TrackOptions& opt = {});

/// g = 2 reduction to the torus basis (gamma_1, gamma_3, gamma_inf) with
/// gamma_inf = gamma_1 + gamma_2 + gamma_3. Throws if that span is not invariant.
MonodromyResult to_torus_basis(const MonodromyResult& full);

/// (I_1, I_2, I_3) chart for g = 1.
MonodromyResult monodromy_actions_g1(const ParameterLoop& loop, double A = 1.0,
                                     const TrackOptions& opt = {});

struct VanishingData {
    int label_a = 0, label_b = 0;  // base labels of the colliding roots
    CycleClass cycle;
    int power = 0;                 // signed half-twists of the pair around the loop
    double separation_ratio = 0;   // |r_a - r_b| at the shrunk radius over its value at full radius
    bool transported = false;      // class read off by period continuation, not by labels
};

/// Vanishing cycles of the lasso's enclosed discriminant point. Colliding
/// roots are found on the radius shrunk toward the center; the class is
/// read from the base labels when the pair is adjacent (conjugate or
/// consecutive), else by carrying the short loop back to the base.
std::vector<VanishingData> vanishing_cycles(const ParameterLoop& loop, double shrink = 1e-4);

/// Picard-Lefschetz route on the same basis as monodromy_periods.
MonodromyResult picard_lefschetz_route(const ParameterLoop& loop, double shrink = 1e-4);

/// Transport of the basis along an open path (pieces, no closure):
/// column j = basis cycle j at the start expressed in the basis at the end.
IntMatrix transport_matrix(const ParameterLoop& path, const TrackOptions& opt = {},
                           double* residual = nullptr);

}  // namespace lagtop

#endif
