#include "lagtop/discriminant.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace lagtop;
using lagtop::testing::uniform;

namespace {

ComplexPoly section_poly(double a1, double a2, double c)
{
    return ComplexPoly::from_descending({1, a1, a2, c, 1});
}

const StratumPoint* find(const std::vector<StratumPoint>& v, StratumPoint::Kind k, double a1, double a2)
{
    for (auto& p : v)
        if (p.kind == k && std::abs(p.location[0] - a1) < 1e-12 && std::abs(p.location[1] - a2) < 1e-12)
            return &p;
    return nullptr;
}

int count(const std::vector<StratumPoint>& v, StratumPoint::Kind k)
{
    int n = 0;
    for (auto& p : v)
        n += p.kind == k;
    return n;
}

}  // namespace

TEST(DeltaSection, Examples)
{
    auto [a1, a2] = delta_c_section(0, 1);
    EXPECT_NEAR(a1, 0, 1e-15);
    EXPECT_NEAR(a2, -2, 1e-15);
    auto [b1, b2] = delta_c_section(4, -1);
    EXPECT_NEAR(b1, 4, 1e-15);
    EXPECT_NEAR(b2, 6, 1e-15);
    EXPECT_THROW(delta_c_section(1, 0), std::invalid_argument);
}

TEST(DeltaSection, UIsADoubleRoot)
{
    for (int t = 0; t < 200; ++t) {
        double c = uniform(-6, 6), u = uniform(-3, 3);
        if (std::abs(u) < 0.05)
            continue;
        auto [a1, a2] = delta_c_section(c, u);
        ComplexPoly f = section_poly(a1, a2, c);
        double scale = f.max_abs_coeff() * std::pow(std::max(1.0, std::abs(u)), 4);
        EXPECT_LT(std::abs(f(u)), 1e-9 * scale);
        EXPECT_LT(std::abs(f.derivative()(u)), 1e-9 * scale);
        EXPECT_LT(normalized_discriminant(f), 1e-9);
    }
}

TEST(SpecialPoints, SectionAtZero)
{
    auto pts = classify_special_points(0);
    auto iso = find(pts, StratumPoint::Kind::IsolatedComplexPair, 0, 2);
    auto cross = find(pts, StratumPoint::Kind::Crossing, 0, -2);
    ASSERT_NE(iso, nullptr);
    ASSERT_NE(cross, nullptr);
    EXPECT_EQ(count(pts, StratumPoint::Kind::TripleRoot), 0);
    EXPECT_EQ(count(pts, StratumPoint::Kind::QuadrupleRoot), 0);
    // witnesses: +-i for the isolated point, +-1 for the crossing
    std::vector<double> im, re;
    for (auto z : iso->witness)
        im.push_back(std::abs(z.imag()));
    for (auto z : cross->witness)
        re.push_back(z.real());
    std::sort(re.begin(), re.end());
    for (double v : im)
        EXPECT_NEAR(v, 1, 1e-12);
    ASSERT_EQ(re.size(), 2u);
    EXPECT_NEAR(re[0], -1, 1e-12);
    EXPECT_NEAR(re[1], 1, 1e-12);
}

TEST(SpecialPoints, LargeSection)
{
    auto pts = classify_special_points(5);
    EXPECT_NE(find(pts, StratumPoint::Kind::Crossing, -5, 4.25), nullptr);
    EXPECT_NE(find(pts, StratumPoint::Kind::Crossing, 5, 8.25), nullptr);
    EXPECT_EQ(count(pts, StratumPoint::Kind::TripleRoot), 2);
    EXPECT_EQ(count(pts, StratumPoint::Kind::IsolatedComplexPair), 0);
    for (auto& p : pts)
        if (p.kind == StratumPoint::Kind::TripleRoot) {
            double u = p.witness[0].real();
            ComplexPoly f = section_poly(p.location[0], p.location[1], 5);
            ComplexPoly d2 = f.derivative().derivative();
            EXPECT_LT(std::abs(d2(u)), 1e-9 * f.max_abs_coeff() * std::pow(std::max(1.0, std::abs(u)), 4));
        }
}

TEST(SpecialPoints, QuadrupleRoot)
{
    for (double c : {4.0, -4.0}) {
        auto pts = classify_special_points(c);
        auto q = find(pts, StratumPoint::Kind::QuadrupleRoot, c, 6);
        ASSERT_NE(q, nullptr) << c;
        double u = q->witness[0].real();
        EXPECT_NEAR(u, -c / 4, 1e-15);
        // (x - u)^4 with u = -c/4 and u^4 = 1
        ComplexPoly f = section_poly(c, 6, c);
        ComplexPoly g = ComplexPoly::from_roots({u, u, u, u});
        for (int k = 0; k <= 4; ++k)
            EXPECT_NEAR(std::abs(f.coeff(k) - g.coeff(k)), 0, 1e-15);
    }
}

TEST(SpecialPoints, WitnessesAreRepeatedAndStableWithinRegimes)
{
    for (double c : {-7.0, -4.5, -3.0, -0.5, 0.0, 1.0, 3.9, 4.1, 6.0}) {
        auto pts = classify_special_points(c);
        for (auto& p : pts)
            EXPECT_LT(p.normalized_disc, 1e-9) << kind_name(p.kind) << " c=" << c;
        auto kinds = [](const std::vector<StratumPoint>& v) {
            std::vector<int> k;
            for (auto& p : v)
                k.push_back((int)p.kind);
            std::sort(k.begin(), k.end());
            return k;
        };
        EXPECT_EQ(kinds(pts), kinds(classify_special_points(c + 0.01 * (c >= 0 ? 1 : -1))));
    }
}

TEST(Isolation, A3Family)
{
    auto r = a3_isolated_check(0.1, 100);
    EXPECT_EQ(r.origin_disc, 0.0);
    EXPECT_TRUE(r.isolated);
    EXPECT_GT(r.min_normalized_disc, r.floor);
    EXPECT_GT(r.samples, 7000);  // 10^4 grid points, about pi/4 of them in the disk
    auto i = a3_isolated_check(0.1, 100, IsolationReport::Family::Intro);
    EXPECT_TRUE(i.isolated);
    EXPECT_EQ(i.origin_disc, 0.0);
}

TEST(G2Branch, OriginAndClosedForms)
{
    auto b = g2_branch(1, 1);
    EXPECT_EQ(b.a, 0.0);
    EXPECT_EQ(b.b, 0.0);
    EXPECT_EQ(b.c, 0.0);
    EXPECT_EQ(b.Delta1, -4.0);
    EXPECT_EQ(b.Delta2, -4.0);
    EXPECT_NEAR(b.Delta1_direct, -4.0, 1e-12);
    EXPECT_NEAR(b.Delta2_direct, -4.0, 1e-12);
    EXPECT_THROW(g2_branch(0, 1), std::invalid_argument);
    EXPECT_THROW(g2_branch(-1, 1), std::invalid_argument);
}

TEST(G2Branch, FactorizationAlongTheBranch)
{
    for (int i = 0; i <= 40; ++i) {
        double c2 = 0.5 + 1.5 * i / 40;
        for (int sign : {1, -1}) {
            auto b = g2_branch(c2, sign);
            EXPECT_LT(b.factor_residual, 1e-9);
            // expand (x^2 + c1 x + c2)^2 (x^2 + d1 x + d2) independently
            ComplexPoly q = ComplexPoly::from_real({c2, b.c1, 1});
            ComplexPoly r = ComplexPoly::from_real({b.d2, b.d1, 1});
            ComplexPoly prod = q * q * r, P = g2_poly(b.a, b.b, b.c);
            for (int k = 0; k <= 6; ++k)
                EXPECT_LT(std::abs(prod.coeff(k) - P.coeff(k)), 1e-9);
            EXPECT_LT(normalized_discriminant(P), 1e-9);
            EXPECT_NEAR(b.Delta1, b.Delta1_direct, 1e-9);
            EXPECT_NEAR(b.Delta2, b.Delta2_direct, 1e-9);
            EXPECT_NEAR(3 * b.alpha * b.alpha, c2 * (c2 + 2), 1e-12);
        }
        auto p = g2_branch(c2, 1), m = g2_branch(c2, -1);
        EXPECT_NEAR(p.a, -m.a, 1e-15);
        EXPECT_NEAR(p.c, -m.c, 1e-15);
        EXPECT_EQ(p.b, m.b);
    }
}

TEST(ComponentC, Membership)
{
    EXPECT_TRUE(in_component_C(SpectralCoeffs{1, {0, 1, 0, 1}}));
    EXPECT_FALSE(in_component_C(SpectralCoeffs{1, {0, -2, 0, 1}}));
    EXPECT_TRUE(in_component_C(SpectralCoeffs{2, {0.01, 3.01, 0.01, 3, 0, 1}}));
    auto on = component_check(SpectralCoeffs{1, {0, 2, 0, 1}});  // (x^2+1)^2, double pair
    EXPECT_FALSE(on.in_C);
    EXPECT_TRUE(on.near_discriminant);
    EXPECT_EQ(on.real_roots, 0);
}

TEST(ComponentC, InvariantAlongPathsAvoidingTheDiscriminant)
{
    // the segment from (0, 1, 0) to (0.3, 3, -0.2) stays in C
    for (int i = 0; i <= 100; ++i) {
        double t = i / 100.0;
        SpectralCoeffs f{1, {0.3 * t, 1 + 2 * t, -0.2 * t, 1}};
        EXPECT_TRUE(in_component_C(f)) << t;
    }
    // crossing a3 = 0, a1 = 0 below a2 = -2 leaves C
    EXPECT_FALSE(in_component_C(SpectralCoeffs{1, {0, -2.5, 0, 1}}));
}

TEST(Csv, SectionAndBranch)
{
    std::ostringstream a, b;
    write_section_csv(a, 0.5, -2, 2, 11);
    write_g2_branch_csv(b, 0.5, 2, 5);
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "c,u,a1,a2");
    EXPECT_EQ(b.str().substr(0, b.str().find('\n')), "c2,sign,a,b,c,Delta1,Delta2");
    std::string branch = b.str();
    EXPECT_EQ(std::count(branch.begin(), branch.end(), '\n'), 11);
}
