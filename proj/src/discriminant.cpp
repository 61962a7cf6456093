#include "lagtop/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lagtop {

namespace {

ComplexPoly section_quartic(double a1, double a2, double c) {
    return ComplexPoly::from_descending({1.0, a1, a2, c, 1.0});
}

// roots of x^2 + p x + q
std::vector<cplx> quadratic_roots(double p, double q) {
    cplx d = std::sqrt(cplx(p * p - 4 * q));
    return {(-p - d) / 2.0, (-p + d) / 2.0};
}

StratumPoint make_point(StratumPoint::Kind k, double a1, double a2, double c,
                        std::vector<cplx> witness) {
    StratumPoint s;
    s.kind = k;
    s.location = {a1, a2};
    s.witness = std::move(witness);
    s.normalized_disc = normalized_discriminant(section_quartic(a1, a2, c));
    return s;
}

}  // namespace

std::string kind_name(StratumPoint::Kind k) {
    switch (k) {
        case StratumPoint::Kind::DoubleRootBranch: return "double-root-branch";
        case StratumPoint::Kind::TripleRoot: return "triple-root";
        case StratumPoint::Kind::Crossing: return "two-real-double-roots-crossing";
        case StratumPoint::Kind::IsolatedComplexPair: return "isolated-complex-double-pair";
        case StratumPoint::Kind::QuadrupleRoot: return "quadruple-root";
    }
    return "unknown";
}

std::pair<double, double> delta_c_section(double c, double u) {
    if (u == 0.0) throw std::invalid_argument("delta_c_section: u must be nonzero");
    double a1 = (c + 2.0 / u) / (u * u) - 2.0 * u;
    double a2 = -3.0 / (u * u) - 2.0 * c / u + u * u;
    return {a1, a2};
}

std::vector<StratumPoint> classify_special_points(double c) {
    std::vector<StratumPoint> out;
    const double ac = std::abs(c);

    // f = (x^2 - (c/2) x - 1)^2: two real double roots of opposite sign
    out.push_back(make_point(StratumPoint::Kind::Crossing, -c, -2.0 + c * c / 4, c,
                             quadratic_roots(-c / 2, -1.0)));

    // f = (x^2 + (c/2) x + 1)^2
    if (ac < 4) {
        out.push_back(make_point(StratumPoint::Kind::IsolatedComplexPair, c, 2.0 + c * c / 4, c,
                                 quadratic_roots(c / 2, 1.0)));
    } else if (ac > 4) {
        out.push_back(make_point(StratumPoint::Kind::Crossing, c, 2.0 + c * c / 4, c,
                                 quadratic_roots(c / 2, 1.0)));
    } else {
        double u = -c / 4;
        out.push_back(make_point(StratumPoint::Kind::QuadrupleRoot, c, 6.0, c, {u, u}));
    }

    // (x-u)^3 (x - 1/u^3): c = -3/u - u^3, i.e. u^4 + c u + 3 = 0
    if (ac > 4) {
        ComplexPoly h = ComplexPoly::from_descending({1.0, 0.0, 0.0, c, 3.0});
        std::vector<double> us;
        for (cplx r : roots(h)) {
            if (std::abs(r.imag()) < 1e-9 * std::max(1.0, std::abs(r))) us.push_back(r.real());
        }
        std::sort(us.begin(), us.end());
        for (double u : us) {
            auto [a1, a2] = delta_c_section(c, u);
            out.push_back(make_point(StratumPoint::Kind::TripleRoot, a1, a2, c, {u}));
        }
    }
    return out;
}

IsolationReport a3_isolated_check(double r, int grid, IsolationReport::Family family) {
    if (r <= 0 || grid < 2) throw std::invalid_argument("a3_isolated_check: need r > 0, grid >= 2");
    auto poly = [family](double p, double q) {
        if (family == IsolationReport::Family::A3)
            return ComplexPoly::from_descending({1.0, p, 2.0 + q, 0.0, 1.0});
        return ComplexPoly::from_descending({1.0, 0.0, 2.0, p, 1.0 + q});
    };
    IsolationReport rep;
    rep.family = family;
    rep.radius = r;
    rep.grid = grid;
    rep.origin_disc = normalized_discriminant(poly(0, 0));
    rep.min_normalized_disc = INFINITY;
    for (int i = 0; i < grid; ++i) {
        double p = -r + 2 * r * i / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            double q = -r + 2 * r * j / (grid - 1);
            if (p * p + q * q > r * r || (p == 0 && q == 0)) continue;
            ++rep.samples;
            double d = normalized_discriminant(poly(p, q));
            if (d < rep.min_normalized_disc) {
                rep.min_normalized_disc = d;
                rep.argmin = {p, q};
            }
        }
    }
    rep.isolated = rep.samples > 0 && rep.min_normalized_disc > rep.floor;
    return rep;
}

ComplexPoly g2_poly(double a, double b, double c) {
    return ComplexPoly::from_descending({1.0, a, 3.0 + b, c, 3.0, 0.0, 1.0});
}

G2Branch g2_branch(double c2, int sign) {
    if (!(c2 > 0)) throw std::invalid_argument("g2_branch: c2 must be positive");
    if (sign != 1 && sign != -1) throw std::invalid_argument("g2_branch: sign must be +1 or -1");
    G2Branch r;
    r.c2 = c2;
    r.sign = sign;
    r.alpha = sign * std::sqrt(c2 * (c2 + 2) / 3);
    const double al = r.alpha, c2_2 = c2 * c2, c2_3 = c2_2 * c2, cm = c2 - 1;
    r.a = 2 * al * cm * (c2_3 - 1) / c2_3;
    r.b = cm * cm * cm * (c2_3 + 3 * c2_2 + 3 * c2 + 5) / (3 * c2_2);
    r.c = 2 * al * cm * (2 * c2_3 + 3 * c2 - 5) / (3 * c2_2);
    r.c1 = al * cm;
    r.d1 = -2 * al * cm / c2_3;
    r.d2 = 1 / c2_2;
    // numerators first so c2 = 1 evaluates exactly
    r.Delta1 = c2 * (c2_3 - 3 * c2 - 10) / 3;
    r.Delta2 = -4 * (2 * c2_3 + 3 * c2 - 2) / (3 * c2_3 * c2_2);
    r.Delta1_direct = r.c1 * r.c1 - 4 * c2;
    r.Delta2_direct = r.d1 * r.d1 - 4 * r.d2;

    ComplexPoly q1 = ComplexPoly::from_descending({1.0, r.c1, c2});
    ComplexPoly q2 = ComplexPoly::from_descending({1.0, r.d1, r.d2});
    ComplexPoly diff = q1 * q1 * q2 - g2_poly(r.a, r.b, r.c);
    r.factor_residual = diff.max_abs_coeff();
    return r;
}

ComponentCheck component_check(const SpectralCoeffs& f, double tol) {
    f.validate();
    ComplexPoly p = f.poly();
    ComponentCheck out;
    out.normalized_disc = normalized_discriminant(p);
    out.real_roots = real_root_count(p);
    out.in_C = out.real_roots == 0 && out.normalized_disc > tol;
    out.near_discriminant = out.normalized_disc <= 1e3 * tol;
    return out;
}

bool in_component_C(const SpectralCoeffs& f, double tol) { return component_check(f, tol).in_C; }

void write_section_csv(std::ostream& os, double c, double u_min, double u_max, int n) {
    if (n < 2) throw std::invalid_argument("write_section_csv: n >= 2");
    os << "c,u,a1,a2\n";
    os.precision(17);
    for (int i = 0; i < n; ++i) {
        double u = u_min + (u_max - u_min) * i / (n - 1);
        if (u == 0.0) continue;
        auto [a1, a2] = delta_c_section(c, u);
        os << c << ',' << u << ',' << a1 << ',' << a2 << '\n';
    }
}

void write_g2_branch_csv(std::ostream& os, double lo, double hi, int n) {
    if (n < 2) throw std::invalid_argument("write_g2_branch_csv: n >= 2");
    os << "c2,sign,a,b,c,Delta1,Delta2\n";
    os.precision(17);
    for (int sign : {1, -1}) {
        for (int i = 0; i < n; ++i) {
            double c2 = lo + (hi - lo) * i / (n - 1);
            G2Branch b = g2_branch(c2, sign);
            os << c2 << ',' << sign << ',' << b.a << ',' << b.b << ',' << b.c << ','
               << b.Delta1 << ',' << b.Delta2 << '\n';
        }
    }
}

}  // namespace lagtop
