/**
 * @file energy.hpp
 * @brief Length, bending energy B, normalised bending L*B, total curvature,
 *        E_lambda = B + lambda L, and Li-Yau type multiplicity margins.
 */
#pragma once

#include "elastica/curves.hpp"
#include "elastica/discrete.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace elastica {

inline double length(const DiscreteCurve& c) { return curve_length(c); }

/// sum_i |kappa_i|^2 w_i
inline double bending_energy(const DiscreteCurve& c)
{
    const auto k = nodal_curvature(c);
    double b = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        b += k.kappa.col(static_cast<Eigen::Index>(i)).squaredNorm() * k.weight[i];
    return b;
}

inline double normalized_bending(const DiscreteCurve& c) { return length(c) * bending_energy(c); }

/// Sum of nodal turning angles. For a polygon this is its exact total
/// curvature; on samples of a smooth curve it converges to the integral of |kappa|.
inline double total_curvature(const DiscreteCurve& c)
{
    double tc = 0.0;
    for (double t : turning_angles(c))
        tc += t;
    return tc;
}

struct junction_mismatch_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PiecewiseCurvature {
    double smooth_part;    ///< sum of TC over the pieces
    double vertex_angles;  ///< sum of exterior angles at the junctions, each in [0, pi]
    double fenchel_defect; ///< smooth_part + vertex_angles - 2 pi
};

/// Total curvature of a closed cycle of open pieces, piece j ending where
/// piece j+1 starts (cyclically, to 1e-9).
inline PiecewiseCurvature total_curvature_piecewise(const std::vector<DiscreteCurve>& pieces)
{
    if (pieces.empty())
        throw std::invalid_argument("total_curvature_piecewise: no pieces");
    PiecewiseCurvature out{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < pieces.size(); ++j) {
        const auto& a = pieces[j];
        const auto& b = pieces[(j + 1) % pieces.size()];
        if (a.closed() || b.closed())
            throw std::invalid_argument("total_curvature_piecewise: pieces must be open");
        if ((a.point(a.size() - 1) - b.point(0)).norm() > 1e-9)
            throw junction_mismatch_error("total_curvature_piecewise: piece " + std::to_string(j) +
                                          " does not end where the next one starts");
        out.smooth_part += total_curvature(a);
        out.vertex_angles += angle_between(end_edge_direction(a, false), end_edge_direction(b, true));
    }
    out.fenchel_defect = out.smooth_part + out.vertex_angles - 2.0 * std::numbers::pi;
    return out;
}

/// Closed cycle of 3..6 random cubic Bezier arcs through random vertices in
/// the unit cube of R^dim, each arc sampled at n_per_arc points.
inline std::vector<DiscreteCurve> random_piecewise_cycle(std::uint64_t seed, int dim = 2, int n_per_arc = 64)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> count(3, 6);
    const int k = count(rng);
    auto random_point = [&] {
        Eigen::VectorXd x(dim);
        for (int d = 0; d < dim; ++d)
            x[d] = u(rng);
        return x;
    };
    std::vector<Eigen::VectorXd> v;
    while (static_cast<int>(v.size()) < k) {
        Eigen::VectorXd x = random_point();
        if (v.empty() || (x - v.back()).norm() > 0.1)
            v.push_back(x);
    }
    if ((v.front() - v.back()).norm() <= 0.1)
        v.back() += Eigen::VectorXd::Constant(dim, 0.2);
    std::vector<DiscreteCurve> pieces;
    for (int j = 0; j < k; ++j) {
        const Eigen::VectorXd& a = v[static_cast<std::size_t>(j)];
        const Eigen::VectorXd& b = v[static_cast<std::size_t>((j + 1) % k)];
        const Eigen::VectorXd c1 = a + 0.5 * random_point();
        const Eigen::VectorXd c2 = b + 0.5 * random_point();
        Eigen::MatrixXd p(dim, n_per_arc);
        for (int i = 0; i < n_per_arc; ++i) {
            const double t = static_cast<double>(i) / (n_per_arc - 1);
            const double s = 1.0 - t;
            p.col(i) = s * s * s * a + 3.0 * s * s * t * c1 + 3.0 * s * t * t * c2 + t * t * t * b;
        }
        p.col(0) = a;
        p.col(n_per_arc - 1) = b;
        pieces.emplace_back(std::move(p), false);
    }
    return pieces;
}

inline double e_lambda(const DiscreteCurve& c, double lambda)
{
    if (!(lambda >= 0.0))
        throw std::invalid_argument("e_lambda: lambda must be >= 0");
    return bending_energy(c) + lambda * length(c);
}

struct EnergyReport {
    double length;
    double bending;
    double normalized_bending;
    double total_curvature;
    double e_lambda;
    double lambda;
};

inline EnergyReport energy_report(const DiscreteCurve& c, double lambda = 0.0)
{
    EnergyReport r{};
    r.length = length(c);
    r.bending = bending_energy(c);
    r.normalized_bending = r.length * r.bending;
    r.total_curvature = total_curvature(c);
    r.lambda = lambda;
    r.e_lambda = r.bending + lambda * r.length;
    return r;
}

struct multiplicity_not_found_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LiYauMargin {
    double margin;       ///< B̄ - varpi* k^2 (closed) or B̄ - varpi* (k-1)^2 (open)
    double bound;        ///< the subtracted lower bound
    double normalized_bending;
    int multiplicity;    ///< multiplicity actually found
    std::size_t samples; ///< refinement level
    Eigen::VectorXd point;
};

/// Margin of the Li-Yau type inequality for a curve carrying a point of
/// multiplicity >= k. eps defaults to 1e-6 times the length.
inline LiYauMargin li_yau_margin(const DiscreteCurve& c, int k, std::optional<double> eps = std::nullopt)
{
    if (k < 2)
        throw std::invalid_argument("li_yau_margin: k must be >= 2");
    const double tol = eps.value_or(default_multiplicity_eps(c));
    const auto found = find_multiple_point(c, k, tol);
    if (!found)
        throw multiplicity_not_found_error("li_yau_margin: no point of multiplicity >= " + std::to_string(k));
    const double varpi = constants().varpi_star;
    const int factor = c.closed() ? k : k - 1;
    LiYauMargin r;
    r.normalized_bending = normalized_bending(c);
    r.bound = varpi * factor * factor;
    r.margin = r.normalized_bending - r.bound;
    r.multiplicity = found->count;
    r.samples = c.size();
    r.point = found->point;
    return r;
}

} // namespace elastica
