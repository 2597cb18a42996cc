#include "elastica/elliptic.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <boost/math/tools/roots.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace elastica;

namespace {

// Independent oracles: boost takes the modulus k = sqrt(m).
double oracle_K(double m) { return boost::math::ellint_1(std::sqrt(m)); }
double oracle_E(double m) { return boost::math::ellint_2(std::sqrt(m)); }
double oracle_F(double x, double m) { return boost::math::ellint_1(std::sqrt(m), x); }
double oracle_Ex(double x, double m) { return boost::math::ellint_2(std::sqrt(m), x); }

double quadrature_K(double m)
{
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate([m](double t) { return 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); }, 0.0,
                       std::numbers::pi / 2.0);
}

double oracle_m_star()
{
    auto f = [](double m) { return oracle_K(m) - 2.0 * oracle_E(m); };
    boost::uintmax_t iters = 200;
    const auto r =
        boost::math::tools::toms748_solve(f, 0.75, 0.85, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
}

} // namespace

TEST(Complete, MatchesBoostOnGrid)
{
    for (int i = 1; i < 100; ++i) {
        const double m = i / 100.0;
        EXPECT_NEAR(complete_K(m), oracle_K(m), 1e-14 * oracle_K(m)) << "m=" << m;
        EXPECT_NEAR(complete_E(m), oracle_E(m), 1e-14) << "m=" << m;
    }
}

TEST(Complete, NearSingularEndpoint)
{
    // K is ill-conditioned as m -> 1 (relative condition ~ 1/(1-m)), so the
    // two implementations may only agree to that level.
    for (double m : {1e-12, 1e-6, 0.999, 0.999999, 1.0 - 1e-9}) {
        const double tol = 1e-15 / (1.0 - m);
        EXPECT_NEAR(complete_K(m), oracle_K(m), tol * oracle_K(m)) << "m=" << m;
        EXPECT_NEAR(complete_E(m), oracle_E(m), tol) << "m=" << m;
    }
}

TEST(Complete, AgreesWithTanhSinhQuadrature)
{
    for (double m : {0.1, 0.5, 0.826, 0.95})
        EXPECT_NEAR(complete_K(m), quadrature_K(m), 1e-13);
}

TEST(Complete, LegendreRelation)
{
    // E K' + E' K - K K' = pi/2
    for (double m : {0.05, 0.3, 0.5, 0.77, 0.95}) {
        const double K = complete_K(m), E = complete_E(m);
        const double Kp = complete_K(1.0 - m), Ep = complete_E(1.0 - m);
        EXPECT_NEAR(E * Kp + Ep * K - K * Kp, std::numbers::pi / 2.0, 1e-14);
    }
}

TEST(Complete, ParameterOutsideOpenIntervalThrows)
{
    for (double m : {0.0, 1.0, -0.1, 1.5, std::nan("")}) {
        EXPECT_THROW(complete_K(m), std::domain_error);
        EXPECT_THROW(complete_E(m), std::domain_error);
    }
}

TEST(Incomplete, MatchesBoostOnRandomPoints)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-1.5, 1.5), um(0.01, 0.99);
    for (int i = 0; i < 300; ++i) {
        const double x = ux(rng), m = um(rng);
        EXPECT_NEAR(incomplete_F(x, m), oracle_F(x, m), 2e-15 * std::max(1.0, std::abs(oracle_F(x, m))));
        EXPECT_NEAR(incomplete_E(x, m), oracle_Ex(x, m), 2e-15 * std::max(1.0, std::abs(oracle_Ex(x, m))));
    }
}

TEST(Incomplete, QuasiPeriodicity)
{
    for (double m : {0.2, 0.75, 0.9}) {
        for (double x : {-0.4, 0.3, 1.2}) {
            EXPECT_NEAR(incomplete_F(x + std::numbers::pi, m), incomplete_F(x, m) + 2.0 * complete_K(m), 1e-13);
            EXPECT_NEAR(incomplete_E(x + std::numbers::pi, m), incomplete_E(x, m) + 2.0 * complete_E(m), 1e-13);
            EXPECT_NEAR(incomplete_F(-x, m), -incomplete_F(x, m), 1e-15);
        }
        EXPECT_NEAR(incomplete_F(std::numbers::pi / 2.0, m), complete_K(m), 1e-14);
        EXPECT_NEAR(incomplete_E(std::numbers::pi / 2.0, m), complete_E(m), 1e-14);
    }
}

TEST(Incomplete, NonFiniteAmplitudeThrows)
{
    EXPECT_THROW(incomplete_F(INFINITY, 0.5), std::domain_error);
    EXPECT_THROW(incomplete_E(std::nan(""), 0.5), std::domain_error);
}

TEST(Amplitude, InvertsF)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-7.0, 7.0), um(0.01, 0.99);
    for (int i = 0; i < 300; ++i) {
        const double x = ux(rng), m = um(rng);
        EXPECT_NEAR(amplitude(incomplete_F(x, m), m), x, 1e-13 * std::max(1.0, std::abs(x)));
    }
}

TEST(Amplitude, JacobiFunctionsMatchBoost)
{
    for (double m : {0.1, 0.5, 0.8261, 0.97}) {
        const double k = std::sqrt(m);
        for (double u = -9.0; u <= 9.0; u += 0.37) {
            EXPECT_NEAR(cn(u, m), boost::math::jacobi_cn(k, u), 1e-13) << "u=" << u << " m=" << m;
            EXPECT_NEAR(sn(u, m), boost::math::jacobi_sn(k, u), 1e-13) << "u=" << u << " m=" << m;
        }
    }
}

TEST(Amplitude, BracketEndsAndPeriods)
{
    for (double m : {0.3, 0.75}) {
        const double K = complete_K(m);
        EXPECT_EQ(amplitude(0.0, m), 0.0);
        EXPECT_NEAR(amplitude(K, m), std::numbers::pi / 2.0, 1e-14);
        EXPECT_NEAR(amplitude(-K, m), -std::numbers::pi / 2.0, 1e-14);
        for (double u : {0.1, 1.0, 2.5})
            EXPECT_NEAR(amplitude(u + 2.0 * K, m), amplitude(u, m) + std::numbers::pi, 1e-13);
    }
}

TEST(Derivatives, MatchCentralDifferences)
{
    for (double m : {0.2, 0.5, 0.8}) {
        const double h = 1e-5;
        const double fdK = (complete_K(m + h) - complete_K(m - h)) / (2.0 * h);
        const double fdE = (complete_E(m + h) - complete_E(m - h)) / (2.0 * h);
        EXPECT_NEAR(dK_dm(m), fdK, 1e-8 * std::abs(fdK));
        EXPECT_NEAR(dE_dm(m), fdE, 1e-8 * std::abs(fdE));
    }
}

TEST(Constants, AgreeWithIndependentRootFinder)
{
    const auto& c = constants();
    EXPECT_NEAR(c.m_star, oracle_m_star(), 1e-14);
    EXPECT_NEAR(c.K_star, oracle_K(c.m_star), 1e-14);
    EXPECT_NEAR(c.E_star, oracle_E(c.m_star), 1e-14);
    EXPECT_LT(std::abs(complete_K(c.m_star) - 2.0 * complete_E(c.m_star)), 1e-12);
}

TEST(Constants, PublishedValues)
{
    const auto& c = constants();
    EXPECT_NEAR(c.m_star, 0.82611, 1e-4);
    EXPECT_NEAR(c.varpi_star, 28.109, 1e-2);
    EXPECT_NEAR(c.phi_star * 180.0 / std::numbers::pi, 49.290, 0.01);
    EXPECT_NEAR(std::cos(c.phi_star), 2.0 * c.m_star - 1.0, 1e-15);
}

TEST(Constants, EnergyIdentity)
{
    // varpi* = 32 (2m*-1) E*^2 and K* = 2E*, so varpi* = 8 (2m*-1) K*^2.
    const auto& c = constants();
    EXPECT_NEAR(c.varpi_star, 8.0 * (2.0 * c.m_star - 1.0) * c.K_star * c.K_star, 1e-12);
}

TEST(Constants, RootIsUniqueOnGrid)
{
    int sign_changes = 0;
    double prev = complete_K(0.001) - 2.0 * complete_E(0.001);
    for (int i = 2; i < 1000; ++i) {
        const double m = i / 1000.0;
        const double v = complete_K(m) - 2.0 * complete_E(m);
        sign_changes += (v > 0) != (prev > 0);
        prev = v;
    }
    EXPECT_EQ(sign_changes, 1);
}
