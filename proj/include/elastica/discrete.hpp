/**
 * @file discrete.hpp
 * @brief Nodal discrete differential quantities on a DiscreteCurve.
 *
 * Curvature is the non-uniform three-point second difference of position
 * with respect to chord length,
 *   kappa_i = 2 (e_i / h_i - e_{i-1} / h_{i-1}) / (h_i + h_{i-1}),
 * paired with the dual weight w_i = (h_{i-1} + h_i) / 2. On open curves the
 * two boundary nodes carry no curvature and no weight.
 */
#pragma once

#include "elastica/curve.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace elastica {

/// Edges shorter than this make the stencils meaningless.
inline constexpr double degenerate_edge_tolerance = 1e-14;

struct degenerate_edge_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_nondegenerate(const DiscreteCurve& c)
{
    for (std::size_t i = 0; i < c.edge_count(); ++i)
        if (c.edge_length(i) < degenerate_edge_tolerance)
            throw degenerate_edge_error("degenerate edge " + std::to_string(i));
}

/// True for nodes that carry curvature (all nodes of a closed curve,
/// interior nodes of an open one).
inline bool is_interior(const DiscreteCurve& c, std::size_t i)
{
    return c.closed() || (i > 0 && i + 1 < c.size());
}

struct NodalCurvature {
    Eigen::MatrixXd kappa;       ///< dimension x size, zero at open endpoints
    std::vector<double> weight;  ///< dual lengths, zero at open endpoints
};

inline NodalCurvature nodal_curvature(const DiscreteCurve& c)
{
    require_nondegenerate(c);
    const auto n = c.size();
    NodalCurvature out{Eigen::MatrixXd::Zero(c.dimension(), static_cast<Eigen::Index>(n)),
                       std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_interior(c, i))
            continue;
        const std::size_t a = c.prev(i);
        const Eigen::VectorXd e_prev = c.point(i) - c.point(a);
        const Eigen::VectorXd e_next = c.point(c.next(i)) - c.point(i);
        const double h_prev = e_prev.norm();
        const double h_next = e_next.norm();
        out.kappa.col(static_cast<Eigen::Index>(i)) = 2.0 * (e_next / h_next - e_prev / h_prev) / (h_prev + h_next);
        out.weight[i] = 0.5 * (h_prev + h_next);
    }
    return out;
}

/// Unsigned angle between two nonzero vectors, accurate near 0 and pi.
inline double angle_between(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    const Eigen::VectorXd ua = a.normalized();
    const Eigen::VectorXd ub = b.normalized();
    return 2.0 * std::atan2((ua - ub).norm(), (ua + ub).norm());
}

/// Turning angle at each curvature-carrying node (zero elsewhere).
inline std::vector<double> turning_angles(const DiscreteCurve& c)
{
    require_nondegenerate(c);
    std::vector<double> theta(c.size(), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (is_interior(c, i))
            theta[i] = angle_between(c.point(i) - c.point(c.prev(i)), c.point(c.next(i)) - c.point(i));
    return theta;
}

/// Unit tangent at an open end from a one-sided Lagrange fit through up to
/// five points parametrised by cumulative chord length (fourth order).
inline Eigen::VectorXd end_tangent(const DiscreteCurve& c, bool at_start)
{
    const std::size_t n = std::min<std::size_t>(5, c.size());
    std::vector<Eigen::VectorXd> p(n);
    std::vector<double> t(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t idx = at_start ? j : c.size() - 1 - j;
        p[j] = c.point(idx);
        if (j > 0)
            t[j] = t[j - 1] + (p[j] - p[j - 1]).norm();
    }
    // derivative at t0 = 0 of the interpolant: sum_j p_j * l_j'(0)
    Eigen::VectorXd d = Eigen::VectorXd::Zero(c.dimension());
    for (std::size_t j = 0; j < n; ++j) {
        double lj = 0.0;
        if (j == 0) {
            for (std::size_t k = 1; k < n; ++k)
                lj += 1.0 / (t[0] - t[k]);
        } else {
            double prod = 1.0 / (t[j] - t[0]);
            for (std::size_t k = 1; k < n; ++k)
                if (k != j)
                    prod *= (t[0] - t[k]) / (t[j] - t[k]);
            lj = prod;
        }
        d += lj * p[j];
    }
    d.normalize();
    return at_start ? d : Eigen::VectorXd(-d);
}

/// Unit direction of the first (or last) edge of an open curve.
inline Eigen::VectorXd end_edge_direction(const DiscreteCurve& c, bool at_start)
{
    const std::size_t last = c.size() - 1;
    return at_start ? Eigen::VectorXd((c.point(1) - c.point(0)).normalized())
                    : Eigen::VectorXd((c.point(last) - c.point(last - 1)).normalized());
}

} // namespace elastica
