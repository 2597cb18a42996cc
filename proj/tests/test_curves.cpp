#include "elastica/curves.hpp"
#include "elastica/energy.hpp"

#include <Eigen/Cholesky>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace elastica;

namespace {

const double pi = std::numbers::pi;

DiscreteCurve rigid_motion(const DiscreteCurve& c, double angle, const Eigen::Vector2d& shift)
{
    Eigen::Matrix2d R;
    R << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    Eigen::MatrixXd p = R * c.points();
    p.colwise() += shift;
    return DiscreteCurve(std::move(p), c.closed(), c.vertex_marks());
}

// Recursive enumeration of sign sequences, independent of the bitmask loop.
void brute_force(int k, double eps, std::vector<int>& prefix, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(prefix.size()) == k) {
        double turn = 0.0;
        for (int s : prefix)
            turn += s * 2.0 * constants().phi_star;
        const double r = std::remainder(turn, 2.0 * pi);
        if (std::abs(r) < eps)
            out.push_back(prefix);
        return;
    }
    for (int s : {-1, 1}) {
        prefix.push_back(s);
        brute_force(k, eps, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

TEST(DiscreteCurve, RejectsRepeatedPoints)
{
    Eigen::MatrixXd p(2, 3);
    p << 0, 1, 1, 0, 0, 0;
    EXPECT_THROW(DiscreteCurve(p, false), curve_error);
}

TEST(FigureEight, PassesOriginAtMarkedVertices)
{
    const auto c = sample_figure_eight(4, 400);
    ASSERT_EQ(c.vertex_marks().size(), 5u);
    for (auto i : c.vertex_marks())
        EXPECT_LT(c.point(i).norm(), 1e-13);
}

TEST(FigureEight, LeafTangentsSitAtAngleTwoPhi)
{
    const auto c = canonical_half_leaf(4001);
    const auto t0 = end_tangent(c, true);
    const auto t1 = end_tangent(c, false);
    const auto expected = canonical_leaf_tangents();
    EXPECT_NEAR((t0 - expected[0]).norm(), 0.0, 1e-6);
    EXPECT_NEAR((t1 - expected[1]).norm(), 0.0, 1e-6);
    EXPECT_NEAR(angle_between(t0, t1), 2.0 * constants().phi_star, 1e-6);
}

TEST(FigureEight, UnitSpeedParametrisation)
{
    const auto c = canonical_half_leaf(2049);
    EXPECT_NEAR(length(c), 2.0 * constants().K_star, 1e-5);
}

TEST(FigureEight, ClosedNeedsEvenHalves)
{
    EXPECT_THROW(sample_figure_eight(3, 300, true), std::invalid_argument);
    EXPECT_THROW(sample_figure_eight(0, 300), std::invalid_argument);
}

TEST(Wavelike, CurvatureIsScaledCn)
{
    const double m = 0.6;
    const int n = 4001;
    const double K = complete_K(m);
    const auto c = sample_wavelike(m, -K, K, n);
    const auto k = nodal_curvature(c);
    for (std::size_t i = 200; i < 4000; i += 400) {
        const double s = -K + 2.0 * K * static_cast<double>(i) / (n - 1);
        EXPECT_NEAR(k.kappa.col(static_cast<Eigen::Index>(i)).norm(), 2.0 * std::sqrt(m) * std::abs(cn(s, m)), 1e-5);
    }
}

TEST(TangentTuple, FigureEightPairIsValid)
{
    const auto t = build_tangent_tuple_figure_eight();
    EXPECT_LT(t.relation_residual(), 1e-14);
    EXPECT_EQ(t.size(), 2u);
}

TEST(TangentTuple, RejectsBrokenChain)
{
    std::vector<Eigen::VectorXd> w{Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
    EXPECT_THROW(TangentTuple{w}, tangent_chain_error);
    std::vector<Eigen::VectorXd> not_unit{Eigen::Vector2d(2, 0), Eigen::Vector2d(0, 1)};
    EXPECT_THROW(TangentTuple{not_unit}, tangent_chain_error);
}

TEST(TangentTuple, PropellerMatchesGramOracle)
{
    // Three unit vectors with pairwise products c realise the Gram matrix
    // [[1,c,c],[c,1,c],[c,c,1]]; |sum w|^2 = 3 + 6c fixes the axis angle.
    const double c = cos_two_phi_star();
    Eigen::Matrix3d G;
    G << 1, c, c, c, 1, c, c, c, 1;
    Eigen::LLT<Eigen::Matrix3d> llt(G);
    ASSERT_EQ(llt.info(), Eigen::Success);
    const double oracle_cos = std::sqrt(3.0 + 6.0 * c) / 3.0;
    EXPECT_NEAR(propeller_cos_theta(), oracle_cos, 1e-14);

    const auto t = build_tangent_tuple_propeller();
    EXPECT_LT(t.relation_residual(), 1e-10);
    Eigen::Matrix3d W;
    for (int i = 0; i < 3; ++i)
        W.col(i) = t[static_cast<std::size_t>(i)];
    EXPECT_LT((W.transpose() * W - G).norm(), 1e-13);
}

TEST(TangentTuple, PropellerEightComposites)
{
    for (int k : {3, 5, 7}) {
        const auto t = build_tangent_tuple_propeller_eight(k);
        EXPECT_EQ(t.size(), static_cast<std::size_t>(k));
        EXPECT_LT(t.relation_residual(), 1e-10);
    }
    EXPECT_THROW(build_tangent_tuple_propeller_eight(4), std::invalid_argument);
}

TEST(Leafed, PropellerClosesWithTripleOrigin)
{
    const auto p = elastic_propeller(256);
    EXPECT_TRUE(p.closed());
    EXPECT_EQ(p.dimension(), 3);
    EXPECT_EQ(multiplicity(p, Eigen::Vector3d::Zero(), default_multiplicity_eps(p)).count, 3);
    EXPECT_NEAR(length(p), 3.0, 1e-3);
}

TEST(Leafed, ClosedFigureEightFromTuple)
{
    const auto c = assemble_leafed(closed_leafed_spec(build_tangent_tuple_figure_eight(), 2.0), 256);
    EXPECT_EQ(multiplicity(c, Eigen::Vector2d::Zero(), default_multiplicity_eps(c)).count, 2);
    EXPECT_NEAR(normalized_bending(c) / (4.0 * constants().varpi_star), 1.0, 1e-3);
}

TEST(ClosureSearch, MatchesRecursiveEnumeration)
{
    for (int k = 1; k <= 12; ++k) {
        std::vector<int> prefix;
        std::vector<std::vector<int>> expected;
        brute_force(k, 1e-6, prefix, expected);
        auto got = search_planar_closure(k, 1e-6);
        std::sort(got.begin(), got.end());
        std::sort(expected.begin(), expected.end());
        EXPECT_EQ(got, expected) << "k=" << k;
    }
}

TEST(ClosureSearch, OddCountsNeverClose)
{
    for (int k : {3, 5, 7, 9})
        EXPECT_TRUE(search_planar_closure(k, 1e-6).empty());
}

TEST(ClosureSearch, BalancedPairCloses)
{
    const auto found = search_planar_closure(2, 1e-6);
    EXPECT_EQ(found.size(), 2u);
    for (const auto& s : found)
        EXPECT_EQ(s[0] + s[1], 0);
}

TEST(ClosureSearch, Budget)
{
    EXPECT_THROW(search_planar_closure(26, 1e-6), budget_error);
    EXPECT_THROW(search_planar_closure(0, 1e-6), std::invalid_argument);
    EXPECT_THROW(search_planar_closure(3, 0.0), std::invalid_argument);
}

TEST(Multiplicity, CircleTraversedTwice)
{
    const auto c = circle(2, 1.0, 400, 2);
    EXPECT_EQ(multiplicity(c, Eigen::Vector2d(1.0, 0.0), 1e-6).count, 2);
    EXPECT_EQ(multiplicity(c, Eigen::Vector2d(0.0, 0.0), 1e-6).count, 0);
}

TEST(Multiplicity, FindsFigureEightCrossing)
{
    const auto c = sample_figure_eight(2, 512, true);
    const auto mp = find_multiple_point(c, 2, default_multiplicity_eps(c));
    ASSERT_TRUE(mp.has_value());
    EXPECT_LT(mp->point.norm(), 1e-9);
    EXPECT_FALSE(find_multiple_point(circle(2, 1.0, 256), 2, 1e-6).has_value());
}

TEST(Embedded, SimpleAndCrossingCurves)
{
    EXPECT_TRUE(is_embedded(circle(2, 1.0, 300)));
    EXPECT_FALSE(is_embedded(sample_figure_eight(2, 512, true)));
    EXPECT_FALSE(is_embedded(circle(2, 1.0, 301, 2)));
}

TEST(Embedded, AgreesWithQuadraticCheckOnRandomPolygons)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto cross = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); };
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 5 + trial % 6;
        Eigen::MatrixXd p(2, n);
        for (int i = 0; i < n; ++i)
            p.col(i) = Eigen::Vector2d(u(rng), u(rng));
        const DiscreteCurve c(p, true);
        bool simple = true;
        for (int i = 0; i < n && simple; ++i)
            for (int j = i + 2; j < n && simple; ++j) {
                if (i == 0 && j == n - 1)
                    continue;
                const Eigen::Vector2d a = p.col(i), b = p.col((i + 1) % n), q0 = p.col(j), q1 = p.col((j + 1) % n);
                const double d1 = cross(b - a, q0 - a), d2 = cross(b - a, q1 - a);
                const double d3 = cross(q1 - q0, a - q0), d4 = cross(q1 - q0, b - q0);
                if ((d1 > 0) != (d2 > 0) && (d3 > 0) != (d4 > 0))
                    simple = false;
            }
        EXPECT_EQ(is_embedded(c), simple) << "trial " << trial;
    }
}

TEST(Invariance, RigidMotionsPreserveEnergyAndMultiplicity)
{
    const auto c = sample_figure_eight(2, 512, true);
    const auto moved = rigid_motion(c, 0.7, Eigen::Vector2d(3.0, -2.0));
    EXPECT_NEAR(normalized_bending(moved), normalized_bending(c), 1e-9);
    EXPECT_NEAR(total_curvature(moved), total_curvature(c), 1e-10);
    EXPECT_EQ(multiplicity(moved, moved.point(0), default_multiplicity_eps(moved)).count, 2);
}
