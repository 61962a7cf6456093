#include "lagtop/poly.hpp"
#include "support.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

using namespace lagtop;
using lagtop::testing::uniform;

namespace {

// eigenvalues of the companion matrix of a monic real polynomial
std::vector<cplx> companion_roots(const std::vector<double>& asc)
{
    int n = (int)asc.size() - 1;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        C(i, i - 1) = 1;
    for (int i = 0; i < n; ++i)
        C(i, n - 1) = -asc[i] / asc[n];
    Eigen::EigenSolver<Eigen::MatrixXd> es(C);
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return r;
}

double match_distance(std::vector<cplx> a, std::vector<cplx> b)
{
    double worst = 0;
    for (auto& x : a) {
        auto it = std::min_element(b.begin(), b.end(),
                                   [&](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

}  // namespace

TEST(Poly, ZeroPolynomialHasDegreeMinusOne)
{
    ComplexPoly z(std::vector<cplx>{0, 0, 0});
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.degree(), -1);
    EXPECT_EQ(ComplexPoly::from_real({1, 2, 0}).degree(), 1);
}

TEST(Poly, RootsOfXSquaredPlusOne)
{
    auto r = roots(ComplexPoly::from_real({1, 0, 1}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(std::abs(r[0] - cplx(0, -1)), 0, 1e-14);
    EXPECT_NEAR(std::abs(r[1] - cplx(0, 1)), 0, 1e-14);
}

TEST(Poly, RootsOfX4PlusX2PlusOneAreSixthRootsOfUnity)
{
    auto r = roots(ComplexPoly::from_real({1, 0, 1, 0, 1}));
    std::vector<cplx> expect;
    for (int k : {1, 2, 4, 5})
        expect.push_back(std::polar(1.0, k * std::numbers::pi / 3));
    EXPECT_LT(match_distance(r, expect), 1e-13);
    for (size_t i = 1; i < r.size(); ++i)
        EXPECT_TRUE(r[i - 1].real() < r[i].real() ||
                    (r[i - 1].real() == r[i].real() && r[i - 1].imag() <= r[i].imag()));
}

TEST(Poly, SexticAgreesWithCompanionEigenvalues)
{
    std::vector<double> asc{1, 0, 0, 0, 1, 2, 1};  // x^6 + 2x^5 + x^4 + 1
    auto r = roots(ComplexPoly::from_real(asc));
    EXPECT_LT(match_distance(r, companion_roots(asc)), 1e-10);
}

TEST(Poly, RootsAreDeterministicAndMeetResidualContract)
{
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 6;
        std::vector<cplx> c;
        for (int k = 0; k <= n; ++k)
            c.push_back({uniform(-2, 2), uniform(-2, 2)});
        ComplexPoly p(c);
        auto r1 = roots(p), r2 = roots(p);
        ASSERT_EQ((int)r1.size(), p.degree());
        EXPECT_EQ(r1, r2);
        for (auto z : r1)
            EXPECT_LE(root_residual(p, z), 1e-12);
    }
}

TEST(Poly, RebuildFromRootsReproducesCoefficients)
{
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + trial % 5;
        std::vector<double> asc;
        for (int k = 0; k <= n; ++k)
            asc.push_back(uniform(-3, 3));
        ComplexPoly p = ComplexPoly::from_real(asc);
        ComplexPoly q = ComplexPoly::from_roots(roots(p), p.lead());
        double scale = p.max_abs_coeff();
        for (int k = 0; k <= n; ++k)
            EXPECT_NEAR(std::abs(p.coeff(k) - q.coeff(k)) / scale, 0, 1e-8);
    }
}

TEST(Poly, DiscriminantKnownValues)
{
    EXPECT_NEAR(std::abs(discriminant(ComplexPoly::from_real({1, 0, 1})) - cplx(-4)), 0, 1e-14);
    // (x^2 + x/2 + 1)^2 has double roots
    ComplexPoly q = ComplexPoly::from_real({1, 0.5, 1});
    EXPECT_LT(normalized_discriminant(q * q), 1e-14);
    // disc(x^2 + bx + c) = b^2 - 4c for random b, c
    for (int i = 0; i < 20; ++i) {
        double b = uniform(-3, 3), c = uniform(-3, 3);
        EXPECT_NEAR(discriminant(ComplexPoly::from_real({c, b, 1})).real(), b * b - 4 * c, 1e-12);
    }
}

TEST(Poly, DiscriminantMatchesProductOverRootPairs)
{
    auto oracle = [](const ComplexPoly& p) {
        auto r = roots(p);
        cplx prod = 1;
        for (size_t i = 0; i < r.size(); ++i)
            for (size_t j = i + 1; j < r.size(); ++j)
                prod *= (r[i] - r[j]) * (r[i] - r[j]);
        return std::pow(p.lead(), 2 * p.degree() - 2) * prod;
    };
    ComplexPoly f = ComplexPoly::from_real({1, 0, 1, 0, 1});
    EXPECT_LT(std::abs(discriminant(f) - oracle(f)), 1e-12);
    EXPECT_NEAR(discriminant(f).real(), 144.0, 1e-10);  // 16 * 3^2, by hand from the roots
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + trial % 5;
        std::vector<cplx> c;
        for (int k = 0; k <= n; ++k)
            c.push_back({uniform(-2, 2), uniform(-2, 2)});
        ComplexPoly p(c);
        cplx d = discriminant(p), o = oracle(p);
        EXPECT_LT(std::abs(d - o), 1e-8 * std::max(1.0, std::abs(o)));
    }
}

TEST(Poly, ResultantOfCoprimeLinearFactors)
{
    // |Res(x - a, x - b)| = |a - b|; a common factor kills it
    ComplexPoly p = ComplexPoly::from_real({-2, 1}), q = ComplexPoly::from_real({-5, 1});
    EXPECT_NEAR(std::abs(resultant(p, q)), 3.0, 1e-14);
    EXPECT_NEAR(std::abs(resultant(p * q, p)), 0.0, 1e-12);
}

TEST(Poly, RealRootCountExamples)
{
    EXPECT_EQ(real_root_count(ComplexPoly::from_real({1, 0, 1, 0, 1})), 0);
    // (x - 1)^2 (x^2 + 1)
    ComplexPoly p = ComplexPoly::from_roots({1, 1, cplx(0, 1), cplx(0, -1)});
    EXPECT_EQ(real_root_count(p), 1);
    // g(u) at (a1, a2, a3) = (0, 3, 0): 2u^3 - 3u^2 - 2u + 3 = (u - 1)(2u^2 - u - 3)
    ComplexPoly g = ComplexPoly::from_real({3, -2, -3, 2});
    EXPECT_THROW(real_root_count(g, std::make_pair(-1.0, 1.0)), DegenerateInput);
    EXPECT_EQ(real_root_count(g, std::make_pair(-1.0, 1.0), Endpoint::Include), 2);
    EXPECT_EQ(real_root_count(g, std::make_pair(-0.9, 0.9)), 0);
}

TEST(Poly, RealRootCountAgreesWithNumericRoots)
{
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + trial % 6;
        // well separated roots: real ones on a grid, complex ones well off the axis
        std::vector<cplx> r;
        std::vector<double> grid{-2.5, -1.5, -0.5, 0.5, 1.5, 2.5};
        std::shuffle(grid.begin(), grid.end(), lagtop::testing::rng());
        int nreal = n;
        int pairs = (int)std::floor(uniform(0, n / 2 + 1));
        nreal = n - 2 * pairs;
        for (int i = 0; i < nreal; ++i)
            r.push_back(grid[i] + uniform(-0.2, 0.2));
        for (int i = 0; i < pairs; ++i) {
            cplx z(uniform(-2, 2), uniform(0.5, 2));
            r.push_back(z);
            r.push_back(std::conj(z));
        }
        ComplexPoly p = ComplexPoly::from_real(ComplexPoly::from_roots(r).real_coeffs());
        int numeric = 0;
        for (auto z : roots(p))
            numeric += std::abs(z.imag()) < 1e-9;
        EXPECT_EQ(real_root_count(p), numeric);
        EXPECT_EQ(numeric, nreal);
        ++checked;
    }
    EXPECT_EQ(checked, 1000);
}
