#include "lagtop/homology.hpp"
#include "lagtop/poly.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace lagtop;
using lagtop::testing::uniform;

namespace {

CycleClass random_class(int g)
{
    std::vector<long long> c(2 * g + 1);
    for (auto& v : c)
        v = (long long)std::floor(uniform(-5, 6));
    return CycleClass(g, c);
}

IntMatrix column_matrix(const std::vector<CycleClass>& cols)
{
    int n = (int)cols.size();
    IntMatrix M(n, std::vector<long long>(n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            M[i][j] = cols[j].c[i];
    return M;
}

}  // namespace

TEST(BuildBasis, SixthRootsOfUnity)
{
    auto r = roots(ComplexPoly::from_real({1, 0, 1, 0, 1}));
    auto b = build_basis(r, 1);
    ASSERT_TRUE(b.conjugate);
    ASSERT_EQ(b.pairing.size(), 2u);
    EXPECT_LT(std::abs(b.upper(0) - std::polar(1.0, 2 * std::numbers::pi / 3)), 1e-12);
    EXPECT_LT(std::abs(b.lower(0) - std::polar(1.0, -2 * std::numbers::pi / 3)), 1e-12);
    EXPECT_LT(std::abs(b.upper(1) - std::polar(1.0, std::numbers::pi / 3)), 1e-12);
    EXPECT_LT(std::abs(b.lower(1) - std::polar(1.0, -std::numbers::pi / 3)), 1e-12);
}

TEST(BuildBasis, PerturbedSexticHasThreePairsNearI)
{
    // (x^2+1)^3 + x^3 (0.01 x^2 + 0.01 x + 0.01)
    ComplexPoly p = ComplexPoly::from_descending({1, 0.01, 3.01, 0.01, 3, 0, 1});
    auto b = build_basis(roots(p), 2);
    ASSERT_TRUE(b.conjugate);
    ASSERT_EQ(b.pairing.size(), 3u);
    for (int k = 0; k < 3; ++k) {
        EXPECT_LT(std::abs(b.upper(k) - cplx(0, 1)), 0.5);
        EXPECT_LT(std::abs(b.lower(k) - std::conj(b.upper(k))), 1e-9);
        if (k > 0)
            EXPECT_LT(b.upper(k - 1).real(), b.upper(k).real());
    }
}

TEST(BuildBasis, StableUnderSmallPerturbation)
{
    auto r = roots(ComplexPoly::from_real({1, 0.3, 1.2, 0.1, 1}));
    auto b = build_basis(r, 1);
    auto r2 = r;
    for (auto& z : r2)
        z += cplx(uniform(-1, 1), uniform(-1, 1)) * (0.1 * b.min_separation);
    // conjugate symmetry is broken by the perturbation; pair with a loose tolerance
    auto b2 = build_basis(r2, 1, 1e-9);
    EXPECT_EQ(b.pairing, b2.pairing);
}

TEST(BuildBasis, RealRootsFallBack)
{
    std::vector<cplx> r{-2, -1, cplx(1, 1), cplx(1, -1)};
    auto b = build_basis(r, 1);
    EXPECT_FALSE(b.conjugate);
    EXPECT_FALSE(b.warning.empty());
    EXPECT_EQ(b.pairing[0], std::make_pair(0, 1));
    EXPECT_THROW(build_basis({0, 0, 1, 2}, 1), std::invalid_argument);
    EXPECT_THROW(build_basis({0, 1}, 1), std::invalid_argument);
}

TEST(Intersection, FormIsAntisymmetricAndNormalized)
{
    for (int g = 1; g <= 3; ++g) {
        IntMatrix J = intersection_matrix(g);
        int n = 2 * g + 1;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                EXPECT_EQ(J[a][b], -J[b][a]);
        for (int k = 1; k <= g + 1; ++k)
            for (int l = 1; l <= g + 1; ++l)
                EXPECT_EQ(intersection(CycleClass::gamma(g, k), CycleClass::gamma(g, l)), 0);
        for (int j = 1; j <= g; ++j) {
            EXPECT_EQ(intersection(CycleClass::gamma(g, j), CycleClass::delta(g, j)), 1);
            EXPECT_EQ(intersection(CycleClass::gamma(g, j + 1), CycleClass::delta(g, j)), -1);
        }
        for (int t = 0; t < 20; ++t) {
            CycleClass c = random_class(g);
            EXPECT_EQ(intersection(c, c), 0);
        }
        // gamma_inf = -sum gamma is in the radical
        for (int t = 0; t < 20; ++t)
            EXPECT_EQ(intersection(CycleClass::gamma_inf(g), random_class(g)), 0);
        // the symplectic part (gamma_1..gamma_g, delta_1..delta_g) is unimodular
        std::vector<int> idx;
        for (int k = 0; k < g; ++k)
            idx.push_back(k);
        for (int j = 0; j < g; ++j)
            idx.push_back(g + 1 + j);
        IntMatrix S(2 * g, std::vector<long long>(2 * g));
        for (int a = 0; a < 2 * g; ++a)
            for (int b = 0; b < 2 * g; ++b)
                S[a][b] = J[idx[a]][idx[b]];
        EXPECT_EQ(std::abs(determinant(S)), 1);
    }
}

TEST(Intersection, DeltaPrimeMeetsItsNeighbours)
{
    for (int g = 1; g <= 3; ++g)
        for (int j = 1; j <= g; ++j) {
            CycleClass d = CycleClass::delta(g, j), dp = CycleClass::delta_prime(g, j);
            EXPECT_EQ(dp, d + CycleClass::gamma(g, j) + CycleClass::gamma(g, j + 1));
            EXPECT_EQ(intersection(d, dp), 0);
        }
}

TEST(PicardLefschetz, OrthogonalClassUnchanged)
{
    CycleClass v = CycleClass::delta(2, 1);
    CycleClass c = CycleClass::gamma(2, 3);
    ASSERT_EQ(intersection(c, v), 0);
    EXPECT_EQ(picard_lefschetz(c, v), c);
}

TEST(PicardLefschetz, G1IsolatedPointTwists)
{
    // Two simultaneous twists along delta_1 and delta_1': gamma_1 -> gamma_1 + delta_1 - delta_1'
    IntMatrix M = picard_lefschetz_matrix(1, {{CycleClass::delta(1, 1), 1},
                                              {CycleClass::delta_prime(1, 1), -1}});
    CycleClass img = lagtop::apply(M, CycleClass::gamma(1, 1));
    EXPECT_EQ(img, CycleClass::gamma(1, 1) + CycleClass::delta(1, 1) - CycleClass::delta_prime(1, 1));
    EXPECT_EQ(img, CycleClass::gamma(1, 1) + CycleClass::gamma_inf(1));
    EXPECT_EQ(img.c, (std::vector<long long>{0, -1, 0}));
    EXPECT_EQ(M, (IntMatrix{{0, 1, 0}, {-1, 2, 0}, {0, 0, 1}}));
}

TEST(PicardLefschetz, InverseTwistAndFormPreservation)
{
    for (int g = 1; g <= 3; ++g)
        for (int t = 0; t < 50; ++t) {
            CycleClass v = random_class(g), c1 = random_class(g), c2 = random_class(g);
            int p = t % 2 ? 1 : -1;
            EXPECT_EQ(picard_lefschetz(picard_lefschetz(c1, v, p), v, -p), c1);
            EXPECT_EQ(intersection(picard_lefschetz(c1, v, p), picard_lefschetz(c2, v, p)),
                      intersection(c1, c2));
        }
}

TEST(PicardLefschetz, MatrixColumnsAreImages)
{
    CycleClass v = CycleClass::delta(2, 2);
    IntMatrix M = picard_lefschetz_matrix(2, {{v, 1}});
    std::vector<CycleClass> cols;
    for (int i = 0; i < 5; ++i) {
        std::vector<long long> e(5, 0);
        e[i] = 1;
        cols.push_back(picard_lefschetz(CycleClass(2, e), v));
    }
    EXPECT_EQ(M, column_matrix(cols));
    EXPECT_EQ(std::abs(determinant(M)), 1);
}

TEST(IntMatrixHelpers, MultiplyAndDeterminant)
{
    IntMatrix a{{2, -1}, {1, 0}}, b{{1, 3}, {0, 1}};
    EXPECT_EQ(multiply(a, b), (IntMatrix{{2, 5}, {1, 3}}));
    EXPECT_EQ(determinant(a), 1);
    EXPECT_EQ(multiply(identity_matrix(2), a), a);
    EXPECT_EQ(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}), -3);
    EXPECT_EQ(CycleClass::gamma(1, 1).labels(), (std::vector<std::string>{"gamma_1", "gamma_2", "delta_1"}));
}
