/**
 * @file exact_bounds.hpp
 * @brief Exact rational bracketing of (2/pi)(K - 2E) + 1 by the partial sums
 *        S_N(m) and the geometric-tail bound T_N(m), used to certify
 *        0.75 < m* < 0.85 with integer arithmetic only.
 */
#pragma once

#include "elastica/elliptic.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace elastica {

using BigInt = boost::multiprecision::cpp_int;
/// Always normalised: lowest terms, positive denominator.
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigRational& q)
{
    std::ostringstream os;
    os << numerator(q) << '/' << denominator(q);
    return os.str();
}

/// A_n = ((2n-1)!! / (2n)!!)^2 (2n+1)/(2n-1).
inline BigRational coeff_A(int n)
{
    if (n < 1)
        throw std::domain_error("coeff_A: n must be >= 1");
    BigRational ratio{1};
    for (int j = 1; j <= n; ++j)
        ratio *= BigRational(BigInt(2 * j - 1), BigInt(2 * j));
    return ratio * ratio * BigRational(BigInt(2 * n + 1), BigInt(2 * n - 1));
}

namespace detail {
inline void require_unit_interval(const BigRational& m)
{
    if (!(m > 0 && m < 1))
        throw std::domain_error("series bracket: m must lie strictly in (0,1), got " + to_string(m));
}
} // namespace detail

/// S_N(m) = sum_{n=1}^N A_n m^n.
inline BigRational partial_S(int N, const BigRational& m)
{
    if (N < 1)
        throw std::domain_error("partial_S: N must be >= 1");
    detail::require_unit_interval(m);
    BigRational sum{0};
    BigRational power{1};
    BigRational ratio{1}; // (2n-1)!!/(2n)!!, built incrementally
    for (int n = 1; n <= N; ++n) {
        power *= m;
        ratio *= BigRational(BigInt(2 * n - 1), BigInt(2 * n));
        sum += ratio * ratio * BigRational(BigInt(2 * n + 1), BigInt(2 * n - 1)) * power;
    }
    return sum;
}

/// T_N(m) = S_N(m) + m^{N+1} / (1 - m).
inline BigRational tail_T(int N, const BigRational& m)
{
    BigRational power{1};
    for (int n = 0; n <= N; ++n)
        power *= m;
    return partial_S(N, m) + power / (BigRational{1} - m);
}

struct SeriesBracket {
    int N;
    BigRational m;
    BigRational lower_S;
    BigRational upper_T;
};

inline SeriesBracket series_bracket(int N, const BigRational& m)
{
    return {N, m, partial_S(N, m), tail_T(N, m)};
}

/// f(m) + 1 = (2/pi)(K(m) - 2E(m)) + 1 in floating point.
inline double series_target(double m)
{
    return 2.0 / std::numbers::pi * (complete_K(m) - 2.0 * complete_E(m)) + 1.0;
}

struct BracketCheck {
    std::string name;
    bool passed;
    std::string detail;
};

struct BracketReport {
    std::vector<BracketCheck> checks;
    bool passed() const
    {
        for (const auto& c : checks)
            if (!c.passed)
                return false;
        return true;
    }
};

/// Exact certificates T_10(3/4) < 1 < S_7(17/20), plus float sandwich checks
/// S_N <= f+1 <= T_N at m in {3/4, 17/20}, N in {7, 10} (slack 1e-10).
inline BracketReport verify_bracket()
{
    BracketReport report;
    const BigRational three_quarters(BigInt(3), BigInt(4));
    const BigRational seventeen_twentieths(BigInt(17), BigInt(20));

    const BigRational t10 = tail_T(10, three_quarters);
    report.checks.push_back({"T_10(3/4) < 1", t10 < 1, "T_10(3/4) = " + to_string(t10)});
    const BigRational s7 = partial_S(7, seventeen_twentieths);
    report.checks.push_back({"S_7(17/20) > 1", s7 > 1, "S_7(17/20) = " + to_string(s7)});

    for (const auto& [m, label] : {std::pair{three_quarters, std::string("3/4")},
                                   std::pair{seventeen_twentieths, std::string("17/20")}}) {
        const double target = series_target(static_cast<double>(m));
        for (int N : {7, 10}) {
            const auto b = series_bracket(N, m);
            const double lo = static_cast<double>(b.lower_S);
            const double hi = static_cast<double>(b.upper_T);
            std::ostringstream os;
            os.precision(17);
            os << lo << " <= " << target << " <= " << hi;
            report.checks.push_back({"sandwich N=" + std::to_string(N) + " m=" + label,
                                     lo <= target + 1e-10 && target <= hi + 1e-10, os.str()});
        }
    }
    return report;
}

} // namespace elastica
