/**
 * @file curve.hpp
 * @brief DiscreteCurve: an ordered polyline in R^n, open or closed.
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace elastica {

using Point = Eigen::VectorXd;

/// Thrown for malformed curves (too few points, repeated consecutive points,
/// mismatched dimensions).
struct curve_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Immutable polyline. Points are stored column-wise (dimension x count).
/// A closed curve is read cyclically; its last point is not a copy of the first.
class DiscreteCurve {
public:
    DiscreteCurve(Eigen::MatrixXd points, bool closed, std::vector<std::size_t> vertex_marks = {})
        : points_(std::move(points)), closed_(closed), marks_(std::move(vertex_marks))
    {
        if (points_.rows() < 2)
            throw curve_error("DiscreteCurve: dimension must be >= 2");
        if (points_.cols() < 3)
            throw curve_error("DiscreteCurve: at least 3 points required");
        if (!points_.allFinite())
            throw curve_error("DiscreteCurve: non-finite coordinate");
        const auto edges = edge_count();
        for (std::size_t i = 0; i < edges; ++i)
            if ((point(next(i)) - point(i)).squaredNorm() == 0.0)
                throw curve_error("DiscreteCurve: consecutive points coincide at index " + std::to_string(i));
        for (auto m : marks_)
            if (m >= size())
                throw curve_error("DiscreteCurve: vertex mark out of range");
    }

    static DiscreteCurve from_points(const std::vector<Point>& pts, bool closed,
                                     std::vector<std::size_t> vertex_marks = {})
    {
        if (pts.empty())
            throw curve_error("DiscreteCurve: no points");
        Eigen::MatrixXd m(pts.front().size(), static_cast<Eigen::Index>(pts.size()));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i].size() != m.rows())
                throw curve_error("DiscreteCurve: inconsistent point dimensions");
            m.col(static_cast<Eigen::Index>(i)) = pts[i];
        }
        return DiscreteCurve(std::move(m), closed, std::move(vertex_marks));
    }

    int dimension() const noexcept { return static_cast<int>(points_.rows()); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(points_.cols()); }
    bool closed() const noexcept { return closed_; }
    std::size_t edge_count() const noexcept { return closed_ ? size() : size() - 1; }

    Eigen::MatrixXd::ConstColXpr point(std::size_t i) const { return points_.col(static_cast<Eigen::Index>(i)); }
    const Eigen::MatrixXd& points() const noexcept { return points_; }
    const std::vector<std::size_t>& vertex_marks() const noexcept { return marks_; }

    /// Index of the edge end following vertex i (cyclic for closed curves).
    std::size_t next(std::size_t i) const noexcept { return i + 1 == size() ? 0 : i + 1; }
    std::size_t prev(std::size_t i) const noexcept { return i == 0 ? size() - 1 : i - 1; }

    Eigen::VectorXd edge(std::size_t i) const { return point(next(i)) - point(i); }
    double edge_length(std::size_t i) const { return edge(i).norm(); }

    std::vector<double> edge_lengths() const
    {
        std::vector<double> h(edge_count());
        for (std::size_t i = 0; i < h.size(); ++i)
            h[i] = edge_length(i);
        return h;
    }

    double min_edge_length() const
    {
        double best = edge_length(0);
        for (std::size_t i = 1; i < edge_count(); ++i)
            best = std::min(best, edge_length(i));
        return best;
    }

    /// x -> scale * R x + shift, R given as a dimension x dimension matrix.
    DiscreteCurve transformed(const Eigen::MatrixXd& rotation, const Eigen::VectorXd& shift, double scale = 1.0) const
    {
        Eigen::MatrixXd p = scale * (rotation * points_);
        p.colwise() += shift;
        return DiscreteCurve(std::move(p), closed_, marks_);
    }

    DiscreteCurve scaled(double factor) const
    {
        return DiscreteCurve(points_ * factor, closed_, marks_);
    }

    DiscreteCurve with_points(Eigen::MatrixXd p) const { return DiscreteCurve(std::move(p), closed_, marks_); }

    Eigen::VectorXd centroid() const { return points_.rowwise().mean(); }

    /// Embeds the curve into R^dim (dim >= dimension()) by zero padding.
    DiscreteCurve lifted(int dim) const
    {
        if (dim < dimension())
            throw curve_error("DiscreteCurve::lifted: target dimension too small");
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, points_.cols());
        p.topRows(points_.rows()) = points_;
        return DiscreteCurve(std::move(p), closed_, marks_);
    }

private:
    Eigen::MatrixXd points_;
    bool closed_;
    std::vector<std::size_t> marks_;
};

} // namespace elastica
