/**
 * @file elliptic.hpp
 * @brief Elliptic integrals, Jacobi amplitude / cn / sn, and the figure-eight
 *        constants m*, K(m*), E(m*), varpi*, phi*.
 *
 * Conventions: the second argument is always the parameter m (squared
 * modulus) and must lie in the open interval (0, 1).
 */
#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace elastica {

/// Thrown when a numerical iteration misses its tolerance within budget.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter m of the elliptic integrals, restricted to (0, 1).
class EllipticParameter {
public:
    EllipticParameter(double m) : m_(m) // NOLINT: implicit by intent
    {
        if (!(m > 0.0 && m < 1.0))
            throw std::domain_error("elliptic parameter must lie in (0,1), got " + std::to_string(m));
    }
    constexpr double value() const noexcept { return m_; }
    constexpr operator double() const noexcept { return m_; }

private:
    double m_;
};

namespace detail {

inline constexpr double half_pi = std::numbers::pi / 2.0;

// Arithmetic-geometric mean with the c_n^2 2^{n-1} accumulator needed for E.
struct AgmResult {
    double agm;
    double weighted_c2; // sum_{n>=0} 2^{n-1} c_n^2, c_0^2 = m
};

inline AgmResult agm_sequence(double m)
{
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double sum = 0.5 * m;
    double pow2 = 0.5;
    for (int it = 0; it < 64; ++it) {
        const double c = 0.5 * (a - b);
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        pow2 *= 2.0;
        sum += pow2 * c * c;
        a = an;
        b = bn;
        if (std::abs(c) <= 4.0 * std::numeric_limits<double>::epsilon() * a)
            return {a, sum};
    }
    throw convergence_error("AGM iteration did not converge");
}

// Adaptive bisection over single G7K15 panels. The panel error |K15 - G7|
// overestimates the K15 error by orders of magnitude on these analytic
// integrands, so 1e-13 relative per panel lands at round-off.
template <class F>
double integrate_gk(const F& f, double lo, double hi, int depth = 24)
{
    using rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    if (lo == hi)
        return 0.0;
    double err = 0.0;
    const double v = rule::integrate(f, lo, hi, 0, 0.0, &err);
    err *= 0.5 * std::abs(hi - lo); // reported on the reference interval [-1, 1]
    const double scale = std::max(std::abs(v), std::abs(hi - lo));
    if (depth == 0 || std::abs(hi - lo) < 1e-6 || err <= std::max(1e-13 * scale, 1e-15))
        return v;
    const double mid = 0.5 * (lo + hi);
    return integrate_gk(f, lo, mid, depth - 1) + integrate_gk(f, mid, hi, depth - 1);
}

// Splits x = j*pi + r with r in [-pi/2, pi/2].
inline double reduce_half_period(double x, double& j)
{
    j = std::round(x / std::numbers::pi);
    return x - j * std::numbers::pi;
}

} // namespace detail

/// Complete elliptic integral of the first kind, K(m) = F(pi/2, m), via AGM.
inline double complete_K(EllipticParameter m)
{
    return detail::half_pi / detail::agm_sequence(m).agm;
}

/// Complete elliptic integral of the second kind, E(m) = E(pi/2, m), via AGM.
inline double complete_E(EllipticParameter m)
{
    const auto r = detail::agm_sequence(m);
    return detail::half_pi / r.agm * (1.0 - r.weighted_c2);
}

/// Incomplete integral of the first kind F(x, m).
inline double incomplete_F(double x, EllipticParameter m)
{
    if (!std::isfinite(x))
        throw std::domain_error("incomplete_F: non-finite amplitude");
    const double mv = m;
    double j = 0.0;
    const double r = detail::reduce_half_period(x, j);
    const double part = detail::integrate_gk(
        [mv](double t) {
            const double s = std::sin(t);
            return 1.0 / std::sqrt(1.0 - mv * s * s);
        },
        0.0, r);
    return part + 2.0 * j * complete_K(m);
}

/// Incomplete integral of the second kind E(x, m).
inline double incomplete_E(double x, EllipticParameter m)
{
    if (!std::isfinite(x))
        throw std::domain_error("incomplete_E: non-finite amplitude");
    const double mv = m;
    double j = 0.0;
    const double r = detail::reduce_half_period(x, j);
    const double part = detail::integrate_gk(
        [mv](double t) {
            const double s = std::sin(t);
            return std::sqrt(1.0 - mv * s * s);
        },
        0.0, r);
    return part + 2.0 * j * complete_E(m);
}

/// Jacobi amplitude am(u, m), the inverse of F(., m).
///
/// u is reduced modulo 2K so that Newton runs on [-pi/2, pi/2], where
/// F' = (1 - m sin^2 x)^{-1/2} >= 1; a bisection step is taken whenever a
/// Newton iterate leaves the current bracket.
inline double amplitude(double u, EllipticParameter m)
{
    if (!std::isfinite(u))
        throw std::domain_error("amplitude: non-finite argument");
    const double mv = m;
    const double K = complete_K(m);
    const double j = std::round(u / (2.0 * K));
    const double r = u - 2.0 * K * j;

    double lo = -detail::half_pi;
    double hi = detail::half_pi;
    double x = r * detail::half_pi / K;
    for (int it = 0; it < 100; ++it) {
        const double g = incomplete_F(x, m) - r;
        if (std::abs(g) <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(r)))
            return x + j * std::numbers::pi;
        (g > 0.0 ? hi : lo) = x;
        const double s = std::sin(x);
        double next = x - g * std::sqrt(1.0 - mv * s * s);
        if (!(next >= lo && next <= hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
            return next + j * std::numbers::pi;
        x = next;
    }
    throw convergence_error("amplitude: Newton/bisection did not converge");
}

inline double cn(double u, EllipticParameter m) { return std::cos(amplitude(u, m)); }
inline double sn(double u, EllipticParameter m) { return std::sin(amplitude(u, m)); }

/// dE/dm = (E - K) / (2m).
inline double dE_dm(EllipticParameter m)
{
    return (complete_E(m) - complete_K(m)) / (2.0 * m.value());
}

/// dK/dm = (E - (1-m) K) / (2m(1-m)).
inline double dK_dm(EllipticParameter m)
{
    const double mv = m;
    return (complete_E(m) - (1.0 - mv) * complete_K(m)) / (2.0 * mv * (1.0 - mv));
}

/// The figure-eight constants. Immutable once solved.
struct EllipticConstants {
    double m_star;
    double K_star;
    double E_star;
    double varpi_star; ///< 32 (2m* - 1) E(m*)^2, normalised bending energy of one leaf
    double phi_star;   ///< radians, cos(phi*) = 2m* - 1
};

/// Root of K(m) - 2E(m) in [0.75, 0.85]: bisection to width 1e-4, then Newton.
inline EllipticConstants solve_m_star()
{
    auto f = [](double m) { return complete_K(m) - 2.0 * complete_E(m); };
    double lo = 0.75;
    double hi = 0.85;
    if (!(f(lo) < 0.0 && f(hi) > 0.0))
        throw convergence_error("solve_m_star: K - 2E does not change sign on [0.75, 0.85]");
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double m = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        const double g = f(m);
        if (std::abs(g) < 1e-14)
            break;
        m -= g / (dK_dm(m) - 2.0 * dE_dm(m));
    }
    const double residual = std::abs(f(m));
    if (!(residual < 1e-12) || !(m > lo - 1e-4 && m < hi + 1e-4))
        throw convergence_error("solve_m_star: residual target 1e-12 not met");

    EllipticConstants c{};
    c.m_star = m;
    c.K_star = complete_K(m);
    c.E_star = complete_E(m);
    c.varpi_star = 32.0 * (2.0 * m - 1.0) * c.E_star * c.E_star;
    c.phi_star = std::acos(2.0 * m - 1.0);
    return c;
}

/// Process-wide cached constants.
inline const EllipticConstants& constants()
{
    static const EllipticConstants c = solve_m_star();
    return c;
}

} // namespace elastica
