#include "elastica/networks.hpp"

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace elastica;

namespace {

const double pi = std::numbers::pi;

double oracle_formula(double m)
{
    const double K = boost::math::ellint_1(std::sqrt(m));
    const double E = boost::math::ellint_2(std::sqrt(m));
    return 2.0 * std::sqrt(32.0 * (2.0 * E + K) * (E - (1.0 - m) * K));
}

// Two arcs of radius R = 1/sin(alpha) and angle 2 alpha over a chord of
// length 2, optimally rescaled: E = 2 sqrt(B L).
double oracle_double_bubble(double alpha)
{
    const double R = 1.0 / std::sin(alpha);
    const double L = 2.0 * (2.0 * alpha * R) + 2.0;
    const double B = 2.0 * (2.0 * alpha * R) / (R * R);
    return 2.0 * std::sqrt(B * L);
}

} // namespace

TEST(Formula, MatchesBoostOracle)
{
    for (double m : {0.1, 0.5, 0.75, 0.8})
        EXPECT_NEAR(network_energy_formula(m), oracle_formula(m), 1e-12);
    EXPECT_NEAR(network_energy_formula(0.75), 19.8442063478638, 1e-10);
}

TEST(Formula, BelowThresholdAtThreeQuarters)
{
    EXPECT_LT(network_energy_formula(0.75), 4.0 * std::sqrt(constants().varpi_star));
    EXPECT_NEAR(4.0 * std::sqrt(constants().varpi_star), 21.2075, 1e-4);
}

TEST(Formula, MonotoneOnGrid)
{
    const double ms = constants().m_star;
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double v = network_energy_formula(ms * i / 1001.0);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(Formula, LimitAtCriticalParameter)
{
    const double threshold = 4.0 * std::sqrt(constants().varpi_star);
    EXPECT_LT(std::abs(network_energy_formula(constants().m_star - 1e-8) - threshold), 1e-5);
    EXPECT_NEAR(network_energy_formula(constants().m_star), threshold, 1e-10);
}

TEST(Formula, MonotonicityCertificates)
{
    std::vector<double> grid;
    for (int i = 1; i < 100; ++i)
        grid.push_back(i / 100.0);
    const auto rep = monotonicity_certificates(grid);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.points.size(), grid.size());
}

TEST(JunctionAngle, ThirdOfPiAtThreeQuarters)
{
    EXPECT_NEAR(wavelike_junction_angle(0.75), pi / 3.0, 1e-8);
    for (double m : {0.2, 0.5, 0.8})
        EXPECT_NEAR(wavelike_junction_angle(m), std::acos(2.0 * m - 1.0), 1e-12);
}

TEST(Wavelike, DiscreteEnergyMatchesFormula)
{
    for (double m : {0.5, 0.75, 0.8}) {
        const auto net = build_wavelike_network(m, 1024);
        EXPECT_NEAR(theta_energy(net) / network_energy_formula(m), 1.0, 2e-3) << "m=" << m;
    }
}

TEST(Wavelike, AtThreeQuartersIsSymmetricTheta)
{
    const auto net = build_wavelike_network(0.75, 512);
    const auto ang = net.junction_angles();
    for (std::size_t p = 0; p < 3; ++p) {
        EXPECT_NEAR(ang.at_a[p], 2.0 * pi / 3.0, 1e-6);
        EXPECT_NEAR(ang.at_b[p], 2.0 * pi / 3.0, 1e-6);
    }
    EXPECT_NO_THROW(ThetaNetwork(net.curves(), AngleSpec::symmetric()));
}

TEST(Wavelike, ScaleLawAndOptimalSize)
{
    const auto net = build_wavelike_network(0.7, 256);
    double L = 0.0, B = 0.0;
    for (const auto& c : net.curves()) {
        L += length(c);
        B += bending_energy(c);
    }
    EXPECT_NEAR(B / L, 1.0, 1e-3);
    for (double f : {0.5, 2.0}) {
        const auto other = net.scaled(f);
        EXPECT_NEAR(theta_energy(other), B / f + f * L, 1e-9 * (B + L));
        EXPECT_GT(theta_energy(other), theta_energy(net));
        const auto a0 = net.junction_angles(), a1 = other.junction_angles();
        for (std::size_t p = 0; p < 3; ++p)
            EXPECT_NEAR(a0.at_a[p], a1.at_a[p], 1e-12);
    }
}

TEST(Wavelike, DomainChecks)
{
    EXPECT_THROW(build_wavelike_network(0.9, 256), std::domain_error);
    EXPECT_THROW(build_wavelike_network(constants().m_star, 256), std::domain_error);
    EXPECT_THROW(build_wavelike_network(0.5, 16), std::invalid_argument);
}

TEST(Theta, RejectsBrokenJunctions)
{
    const auto net = build_wavelike_network(0.75, 256);
    auto curves = net.curves();
    Eigen::MatrixXd p = curves[2].points();
    p.col(0) += Eigen::Vector2d(0.0, 1e-3);
    curves[2] = DiscreteCurve(p, false);
    EXPECT_THROW(ThetaNetwork(curves, AngleSpec::symmetric()), network_error);
}

TEST(Theta, RejectsWrongAngles)
{
    const auto net = build_wavelike_network(0.6, 256);
    EXPECT_THROW(ThetaNetwork(net.curves(), AngleSpec::symmetric()), network_error);
}

TEST(DoubleBubble, ClosedFormMatchesArcOracle)
{
    for (double a : {0.3, pi / 2.0, 2.0 * pi / 3.0, 3.0 * pi / 4.0, 3.0})
        EXPECT_NEAR(double_bubble_energy(a), oracle_double_bubble(a), 1e-12);
    EXPECT_NEAR(double_bubble_energy(3.0 * pi / 4.0), 20.214, 0.01);
    EXPECT_NEAR(double_bubble_energy(3.0 * pi / 4.0), 20.2143600862634, 1e-11);
    EXPECT_NEAR(double_bubble_energy(2.0 * pi / 3.0), 18.4058956242538, 1e-11);
    EXPECT_THROW(double_bubble_energy(0.0), std::domain_error);
}

TEST(DoubleBubble, DiscreteConstruction)
{
    const double a = 3.0 * pi / 4.0;
    const auto net = build_double_bubble(a, 4096);
    EXPECT_NEAR(theta_energy(net) / double_bubble_energy(a), 1.0, 5e-4);
    const auto ang = net.junction_angles();
    EXPECT_NEAR(ang.at_a[1], a, 1e-6);
    EXPECT_NEAR(ang.at_a[2], a, 1e-6);
}

TEST(DoubleBubble, FeasibilityPredicate)
{
    EXPECT_TRUE(generalized_junction_feasible(2.0 * pi / 3.0));
    EXPECT_FALSE(generalized_junction_feasible(3.0 * pi / 4.0));
    EXPECT_TRUE(generalized_junction_feasible(pi - constants().phi_star - 1e-9));
    EXPECT_FALSE(generalized_junction_feasible(pi - constants().phi_star + 1e-9));
}

TEST(Drop, HalfLeafAtOptimalLength)
{
    const auto leaf = canonical_half_leaf(512);
    const double varpi = constants().varpi_star;
    const auto drop = leaf.scaled(std::sqrt(varpi) / length(leaf));
    EXPECT_LT(std::abs(drop_margin(drop)) / (2.0 * std::sqrt(varpi)), 5e-3);
    // any other scale costs more
    EXPECT_GT(drop_margin(drop.scaled(1.2)), drop_margin(drop));
    EXPECT_GT(drop_margin(drop.scaled(0.8)), drop_margin(drop));
}

TEST(Drop, RandomDropsHavePositiveMargin)
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        EXPECT_GT(drop_margin(random_drop(seed)), 0.0) << "seed " << seed;
        EXPECT_GT(drop_margin(random_drop(seed, 256, 3)), 0.0) << "seed " << seed;
    }
}

TEST(Drop, RequiresCoincidentEnds)
{
    EXPECT_THROW(drop_margin(segment(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), 8)), network_error);
    EXPECT_THROW(drop_margin(circle(2, 1.0, 32)), network_error);
}
