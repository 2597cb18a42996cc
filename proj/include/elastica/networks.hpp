/**
 * @file networks.hpp
 * @brief Theta-networks (three open curves between two triple junctions),
 *        the wavelike competitor network and its closed-form energy, the
 *        monotonicity certificates behind it, drops, and double bubbles.
 */
#pragma once

#include "elastica/curves.hpp"
#include "elastica/discrete.hpp"
#include "elastica/energy.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace elastica {

struct network_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Angles between the unit start tangents at each junction. Symmetric: all
/// three are 2 pi/3. Generalised (alpha, alpha, beta): curves 0 and 1 meet
/// curve 2 at alpha and each other at beta (an angle around the junction,
/// possibly > pi; compared as the unsigned angle min(beta, 2 pi - beta)).
struct AngleSpec {
    enum class Kind { symmetric, generalized } kind = Kind::symmetric;
    double alpha = 2.0 * std::numbers::pi / 3.0;
    double beta = 2.0 * std::numbers::pi / 3.0;

    static AngleSpec symmetric() { return {}; }
    static AngleSpec generalized(double alpha, double beta) { return {Kind::generalized, alpha, beta}; }

    /// Expected unsigned angles for the pairs (0,1), (0,2), (1,2).
    std::array<double, 3> pair_angles() const
    {
        const double b = std::min(beta, 2.0 * std::numbers::pi - beta);
        return {b, alpha, alpha};
    }
};

struct JunctionAngles {
    std::array<double, 3> at_a; ///< pairs (0,1), (0,2), (1,2)
    std::array<double, 3> at_b;
};

class ThetaNetwork {
public:
    ThetaNetwork(std::array<DiscreteCurve, 3> curves, AngleSpec spec, double angle_tol = 1e-6)
        : curves_(std::move(curves)), spec_(spec)
    {
        const auto dim = curves_[0].dimension();
        for (const auto& c : curves_) {
            if (c.closed())
                throw network_error("ThetaNetwork: curves must be open");
            if (c.dimension() != dim)
                throw network_error("ThetaNetwork: curves must share one dimension");
        }
        junction_a_ = curves_[0].point(0);
        junction_b_ = curves_[0].point(curves_[0].size() - 1);
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& c = curves_[i];
            if ((c.point(0) - junction_a_).norm() > 1e-9 || (c.point(c.size() - 1) - junction_b_).norm() > 1e-9)
                throw network_error("ThetaNetwork: curve " + std::to_string(i) +
                                    " does not run from junction a to junction b");
        }
        const auto got = junction_angles();
        const auto want = spec_.pair_angles();
        for (std::size_t p = 0; p < 3; ++p)
            if (std::abs(got.at_a[p] - want[p]) > angle_tol || std::abs(got.at_b[p] - want[p]) > angle_tol)
                throw network_error("ThetaNetwork: junction angles do not match the angle specification");
    }

    const std::array<DiscreteCurve, 3>& curves() const { return curves_; }
    const DiscreteCurve& curve(std::size_t i) const { return curves_.at(i); }
    const Eigen::VectorXd& junction_a() const { return junction_a_; }
    const Eigen::VectorXd& junction_b() const { return junction_b_; }
    const AngleSpec& angle_spec() const { return spec_; }

    /// Pairwise angles between the tangents leaving each junction.
    JunctionAngles junction_angles() const
    {
        std::array<Eigen::VectorXd, 3> ta, tb;
        for (std::size_t i = 0; i < 3; ++i) {
            ta[i] = end_tangent(curves_[i], true);
            tb[i] = -end_tangent(curves_[i], false);
        }
        auto pairs = [](const std::array<Eigen::VectorXd, 3>& t) {
            return std::array<double, 3>{angle_between(t[0], t[1]), angle_between(t[0], t[2]),
                                         angle_between(t[1], t[2])};
        };
        return {pairs(ta), pairs(tb)};
    }

    ThetaNetwork scaled(double factor) const
    {
        return ThetaNetwork({curves_[0].scaled(factor), curves_[1].scaled(factor), curves_[2].scaled(factor)}, spec_);
    }

private:
    std::array<DiscreteCurve, 3> curves_;
    AngleSpec spec_;
    Eigen::VectorXd junction_a_;
    Eigen::VectorXd junction_b_;
};

/// Sum over the three curves of B + L.
inline double theta_energy(const ThetaNetwork& net)
{
    double e = 0.0;
    for (const auto& c : net.curves())
        e += bending_energy(c) + length(c);
    return e;
}

/// 2 sqrt(32 (2E + K)(E - (1-m) K)): energy of the optimally scaled wavelike network.
inline double network_energy_formula(EllipticParameter m)
{
    const double K = complete_K(m);
    const double E = complete_E(m);
    return 2.0 * std::sqrt(32.0 * (2.0 * E + K) * (E - (1.0 - m.value()) * K));
}

/// Unit tangent of the wavelike elastica, (2 dn^2 - 1, 2 sqrt(m) sn dn).
inline Eigen::Vector2d wavelike_tangent(EllipticParameter m, double s)
{
    const double phi = amplitude(s, m);
    const double sn_ = std::sin(phi);
    const double dn = std::sqrt(1.0 - m.value() * sn_ * sn_);
    return {2.0 * dn * dn - 1.0, 2.0 * std::sqrt(m.value()) * sn_ * dn};
}

/// Angle at the junction between the arc's tangent and -e1; equals arccos(2m - 1).
inline double wavelike_junction_angle(EllipticParameter m)
{
    const Eigen::Vector2d t = wavelike_tangent(m, -complete_K(m));
    return angle_between(t, Eigen::Vector2d(-1.0, 0.0));
}

/// Arc (wavelike, s in [-K, K]), its mirror image across the first axis, and
/// the segment joining the junctions, scaled by sqrt(B/L) so E = 2 sqrt(B L).
inline ThetaNetwork build_wavelike_network(EllipticParameter m, int n_samples)
{
    if (!(m.value() < constants().m_star))
        throw std::domain_error("build_wavelike_network: need m < m* (the segment degenerates otherwise)");
    if (n_samples < 64)
        throw std::invalid_argument("build_wavelike_network: need n_samples >= 64");
    const double K = complete_K(m);
    const double E = complete_E(m);
    const double half = 2.0 * E - K;

    DiscreteCurve arc = sample_wavelike(m, -K, K, n_samples);
    Eigen::MatrixXd p = arc.points();
    p.col(0) = Eigen::Vector2d(-half, 0.0);
    p.col(n_samples - 1) = Eigen::Vector2d(half, 0.0);
    Eigen::MatrixXd mirrored = p;
    mirrored.row(1) *= -1.0;
    DiscreteCurve lower(std::move(p), false);
    DiscreteCurve upper(std::move(mirrored), false);
    DiscreteCurve seg = segment(Eigen::Vector2d(-half, 0.0), Eigen::Vector2d(half, 0.0), n_samples);

    const double total_L = 2.0 * (2.0 * E + K);
    const double total_B = 16.0 * (E - (1.0 - m.value()) * K);
    const double scale = std::sqrt(total_B / total_L);
    const double phi = std::acos(2.0 * m.value() - 1.0);
    return ThetaNetwork({lower.scaled(scale), upper.scaled(scale), seg.scaled(scale)},
                        AngleSpec::generalized(std::numbers::pi - phi, 2.0 * phi));
}

// ---------------------------------------------------------------------------
// Monotonicity of the formula in m
// ---------------------------------------------------------------------------

struct MonotonicityPoint {
    double m;
    double f_prime, f_prime_fd;
    double g_prime, g_prime_fd;
    double h_prime, h_prime_fd;
    bool passed;
};

struct MonotonicityReport {
    std::vector<MonotonicityPoint> points;
    bool passed() const
    {
        for (const auto& p : points)
            if (!p.passed)
                return false;
        return !points.empty();
    }
};

/// With h = E - (1-m)K, f = E h and g = K h, checks
///   f' = h^2/(2m) + (1-m) K^2/2 > 0,   g' = h^2/(2m(1-m)) + K^2/2 > 0,   h' = K/2
/// against central differences (step 1e-5, relative tolerance 1e-5).
inline MonotonicityReport monotonicity_certificates(const std::vector<double>& m_grid)
{
    auto h = [](double m) { return complete_E(m) - (1.0 - m) * complete_K(m); };
    auto f = [&](double m) { return complete_E(m) * h(m); };
    auto g = [&](double m) { return complete_K(m) * h(m); };
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    MonotonicityReport rep;
    for (double m : m_grid) {
        EllipticParameter mp(m);
        const double step = 1e-5 * std::min({1.0, m, 1.0 - m});
        const double K = complete_K(m);
        const double hv = h(m);
        MonotonicityPoint pt{};
        pt.m = m;
        pt.f_prime = hv * hv / (2.0 * m) + (1.0 - m) * K * K / 2.0;
        pt.g_prime = hv * hv / (2.0 * m * (1.0 - m)) + K * K / 2.0;
        pt.h_prime = K / 2.0;
        pt.f_prime_fd = (f(m + step) - f(m - step)) / (2.0 * step);
        pt.g_prime_fd = (g(m + step) - g(m - step)) / (2.0 * step);
        pt.h_prime_fd = (h(m + step) - h(m - step)) / (2.0 * step);
        pt.passed = pt.f_prime > 0.0 && pt.g_prime > 0.0 && rel(pt.f_prime_fd, pt.f_prime) < 1e-5 &&
                    rel(pt.g_prime_fd, pt.g_prime) < 1e-5 && rel(pt.h_prime_fd, pt.h_prime) < 1e-5;
        rep.points.push_back(pt);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Drops and double bubbles
// ---------------------------------------------------------------------------

/// E_1[curve] - 2 sqrt(varpi*) for an open curve whose endpoints coincide.
inline double drop_margin(const DiscreteCurve& c)
{
    if (c.closed())
        throw network_error("drop_margin: open curve required");
    if ((c.point(0) - c.point(c.size() - 1)).norm() > 1e-9)
        throw network_error("drop_margin: endpoints do not coincide");
    return bending_energy(c) + length(c) - 2.0 * std::sqrt(constants().varpi_star);
}

/// Open cubic Bezier loop with both end points at the origin and random
/// inner control points (coordinates uniform in [-1, 1], norms >= 0.2,
/// not collinear).
inline DiscreteCurve random_drop(std::uint64_t seed, int n_samples = 512, int dim = 2)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd p1(dim), p2(dim);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        for (int k = 0; k < dim; ++k) {
            p1[k] = u(rng);
            p2[k] = u(rng);
        }
        const double cross = std::sqrt(std::max(p1.squaredNorm() * p2.squaredNorm() - std::pow(p1.dot(p2), 2), 0.0));
        if (p1.norm() > 0.2 && p2.norm() > 0.2 && cross > 0.05 * p1.norm() * p2.norm())
            break;
    }
    Eigen::MatrixXd p(dim, n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / (n_samples - 1);
        const double s = 1.0 - t;
        p.col(i) = 3.0 * s * s * t * p1 + 3.0 * s * t * t * p2;
    }
    p.col(0).setZero();
    p.col(n_samples - 1).setZero();
    return DiscreteCurve(std::move(p), false, {0, static_cast<std::size_t>(n_samples - 1)});
}

/// 4 sqrt(2 alpha (2 alpha + sin alpha)).
inline double double_bubble_energy(double alpha)
{
    if (!(alpha > 0.0 && alpha < std::numbers::pi))
        throw std::domain_error("double_bubble_energy: alpha must lie in (0, pi)");
    return 4.0 * std::sqrt(2.0 * alpha * (2.0 * alpha + std::sin(alpha)));
}

/// The wavelike competitor applies for junction angles (alpha, alpha, 2pi - 2alpha)
/// with alpha < pi - phi*.
inline bool generalized_junction_feasible(double alpha)
{
    if (!(alpha > 0.0 && alpha < std::numbers::pi))
        throw std::domain_error("generalized_junction_feasible: alpha must lie in (0, pi)");
    return alpha < std::numbers::pi - constants().phi_star;
}

/// Two circular arcs of central angle 2 alpha over the chord [-1, 1] x {0},
/// one on each side, plus the chord itself, scaled to the optimal size.
inline ThetaNetwork build_double_bubble(double alpha, int n_samples)
{
    if (!(alpha > 0.0 && alpha < std::numbers::pi))
        throw std::domain_error("build_double_bubble: alpha must lie in (0, pi)");
    if (n_samples < 64)
        throw std::invalid_argument("build_double_bubble: need n_samples >= 64");
    const double R = 1.0 / std::sin(alpha);
    const double cy = -R * std::cos(alpha); // centre below (alpha < pi/2) or above the chord
    Eigen::MatrixXd up(2, n_samples);
    for (int i = 0; i < n_samples; ++i) {
        // angle measured from the centre, sweeping from a = (-1,0) over the top to b = (1,0)
        const double t = static_cast<double>(i) / (n_samples - 1);
        const double theta = std::numbers::pi / 2.0 + alpha - 2.0 * alpha * t;
        up(0, i) = R * std::cos(theta);
        up(1, i) = cy + R * std::sin(theta);
    }
    up.col(0) = Eigen::Vector2d(-1.0, 0.0);
    up.col(n_samples - 1) = Eigen::Vector2d(1.0, 0.0);
    Eigen::MatrixXd down = up;
    down.row(1) *= -1.0;
    const double L = 4.0 * alpha / std::sin(alpha) + 2.0;
    const double B = 4.0 * alpha * std::sin(alpha);
    const double scale = std::sqrt(B / L);
    return ThetaNetwork({DiscreteCurve(std::move(up), false).scaled(scale),
                         DiscreteCurve(std::move(down), false).scaled(scale),
                         segment(Eigen::Vector2d(-1.0, 0.0), Eigen::Vector2d(1.0, 0.0), n_samples).scaled(scale)},
                        AngleSpec::generalized(alpha, 2.0 * std::numbers::pi - 2.0 * alpha));
}

} // namespace elastica
