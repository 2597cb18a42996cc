/**
 * @file curves.hpp
 * @brief Analytic curve generators (wavelike elastica, figure-eight, leaves,
 *        leafed elasticae, circles, segments), the cyclic tangent relation
 *        <w_i, w_{i-1}> = cos(2 phi*), planar closure search, and discrete
 *        multiplicity / embeddedness predicates.
 */
#pragma once

#include "elastica/curve.hpp"
#include "elastica/elliptic.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace elastica {

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// gamma(s) = (2E(am(s,m),m) - s, -2 sqrt(m) cn(s,m)) at n uniform s-samples
/// on [s_lo, s_hi]. Unit speed; signed curvature 2 sqrt(m) cn(s, m).
inline DiscreteCurve sample_wavelike(EllipticParameter m, double s_lo, double s_hi, int n_samples)
{
    if (!(s_lo < s_hi))
        throw std::invalid_argument("sample_wavelike: need s_lo < s_hi");
    if (n_samples < 3)
        throw std::invalid_argument("sample_wavelike: need at least 3 samples");
    const double root_m = std::sqrt(m.value());
    Eigen::MatrixXd p(2, n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double s = s_lo + (s_hi - s_lo) * i / (n_samples - 1);
        const double phi = amplitude(s, m);
        p(0, i) = 2.0 * incomplete_E(phi, m) - s;
        p(1, i) = -2.0 * root_m * std::cos(phi);
    }
    return DiscreteCurve(std::move(p), false);
}

/// Figure-eight elastica with arclength parameter, passing through the origin
/// at s = 0, 2K(m*), 4K(m*), ...:
///   gamma(s) = (-2E(am(s - K*)) + (s - K*), 2 sqrt(m*) cn(s - K*)).
inline Eigen::Vector2d figure_eight_point(double s)
{
    const auto& c = constants();
    const double u = s - c.K_star;
    const double phi = amplitude(u, c.m_star);
    return {-2.0 * incomplete_E(phi, c.m_star) + u, 2.0 * std::sqrt(c.m_star) * std::cos(phi)};
}

/// N/2-fold figure-eight on s in [0, 2N K(m*)].
///
/// Each half-period receives the same number of edges (n_samples is rounded
/// up accordingly) so every origin passage is a vertex; those vertices are
/// marked. With `closed` (N even) the final point is dropped and the curve is
/// read cyclically.
inline DiscreteCurve sample_figure_eight(int N_halves, int n_samples, bool closed = false)
{
    if (N_halves < 1)
        throw std::invalid_argument("sample_figure_eight: N must be positive");
    if (n_samples < 8 * N_halves)
        throw std::invalid_argument("sample_figure_eight: need n_samples >= 8 N");
    if (closed && N_halves % 2 != 0)
        throw std::invalid_argument("sample_figure_eight: closed figure-eights need an even number of halves");
    const int per_half = (n_samples - 1 + N_halves - 1) / N_halves;
    const int edges = per_half * N_halves;
    const int count = closed ? edges : edges + 1;
    const double K = constants().K_star;
    Eigen::MatrixXd p(2, count);
    std::vector<std::size_t> marks;
    for (int i = 0; i < count; ++i) {
        const double s = 2.0 * K * N_halves * i / edges;
        p.col(i) = figure_eight_point(s);
        if (i % per_half == 0)
            marks.push_back(static_cast<std::size_t>(i));
    }
    return DiscreteCurve(std::move(p), closed, std::move(marks));
}

/// One leaf: the figure-eight restricted to [0, 2K(m*)], unit speed,
/// both ends exactly at the origin.
inline DiscreteCurve canonical_half_leaf(int n_samples)
{
    if (n_samples < 16)
        throw std::invalid_argument("canonical_half_leaf: need at least 16 samples");
    const double K = constants().K_star;
    Eigen::MatrixXd p(2, n_samples);
    for (int i = 0; i < n_samples; ++i)
        p.col(i) = figure_eight_point(2.0 * K * i / (n_samples - 1));
    p.col(0).setZero();
    p.col(n_samples - 1).setZero();
    return DiscreteCurve(std::move(p), false, {0, static_cast<std::size_t>(n_samples - 1)});
}

/// Unit tangents of the canonical leaf at its start and end:
/// (cos phi*, sin phi*) and (cos phi*, -sin phi*).
inline std::array<Eigen::Vector2d, 2> canonical_leaf_tangents()
{
    const double phi = constants().phi_star;
    return {Eigen::Vector2d(std::cos(phi), std::sin(phi)), Eigen::Vector2d(std::cos(phi), -std::sin(phi))};
}

/// Circle of given radius in the first two coordinates of R^dim, traversed
/// `turns` times, closed.
inline DiscreteCurve circle(int dim, double radius, int n_samples, int turns = 1)
{
    if (dim < 2 || !(radius > 0.0) || n_samples < 3 || turns < 1)
        throw std::invalid_argument("circle: need dim >= 2, radius > 0, n >= 3, turns >= 1");
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double t = 2.0 * std::numbers::pi * turns * i / n_samples;
        p(0, i) = radius * std::cos(t);
        p(1, i) = radius * std::sin(t);
    }
    return DiscreteCurve(std::move(p), true);
}

/// Straight segment from p to q with n uniformly spaced points, open.
inline DiscreteCurve segment(const Point& p, const Point& q, int n_samples)
{
    if (p.size() != q.size() || (p - q).norm() == 0.0 || n_samples < 3)
        throw std::invalid_argument("segment: need distinct endpoints of equal dimension and n >= 3");
    Eigen::MatrixXd m(p.size(), n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / (n_samples - 1);
        m.col(i) = (1.0 - t) * p + t * q;
    }
    return DiscreteCurve(std::move(m), false);
}

// ---------------------------------------------------------------------------
// Tangent tuples and leafed elasticae
// ---------------------------------------------------------------------------

struct tangent_chain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline double cos_two_phi_star()
{
    return std::cos(2.0 * constants().phi_star);
}

/// k unit vectors in R^n with <w_i, w_{i-1}> = cos(2 phi*) cyclically (w_0 := w_k).
class TangentTuple {
public:
    explicit TangentTuple(std::vector<Eigen::VectorXd> omegas, double tol = 1e-10) : omegas_(std::move(omegas))
    {
        if (omegas_.empty())
            throw tangent_chain_error("TangentTuple: empty");
        const auto n = omegas_.front().size();
        const double target = cos_two_phi_star();
        for (std::size_t i = 0; i < omegas_.size(); ++i) {
            if (omegas_[i].size() != n)
                throw tangent_chain_error("TangentTuple: inconsistent dimensions");
            if (std::abs(omegas_[i].norm() - 1.0) > 1e-12)
                throw tangent_chain_error("TangentTuple: omega_" + std::to_string(i + 1) + " is not a unit vector");
            const auto& prev = omegas_[(i + omegas_.size() - 1) % omegas_.size()];
            if (std::abs(omegas_[i].dot(prev) - target) > tol)
                throw tangent_chain_error("TangentTuple: <omega_i, omega_{i-1}> != cos(2 phi*) at i = " +
                                          std::to_string(i + 1));
        }
    }

    int dimension() const { return static_cast<int>(omegas_.front().size()); }
    std::size_t size() const { return omegas_.size(); }
    const std::vector<Eigen::VectorXd>& omegas() const { return omegas_; }
    const Eigen::VectorXd& operator[](std::size_t i) const { return omegas_[i]; }

    /// Largest deviation |<w_i, w_{i-1}> - cos(2 phi*)|.
    double relation_residual() const
    {
        double worst = 0.0;
        for (std::size_t i = 0; i < omegas_.size(); ++i) {
            const auto& prev = omegas_[(i + omegas_.size() - 1) % omegas_.size()];
            worst = std::max(worst, std::abs(omegas_[i].dot(prev) - cos_two_phi_star()));
        }
        return worst;
    }

private:
    std::vector<Eigen::VectorXd> omegas_;
};

/// Elevation angle of the propeller tangents over the symmetry axis:
/// cos^2 theta = (cos 2phi* + 1/2) / (3/2).
inline double propeller_cos_theta()
{
    const double c2 = cos_two_phi_star();
    if (!(c2 > -0.5))
        throw std::logic_error("propeller: cos(2 phi*) <= -1/2, no symmetric solution");
    return std::sqrt((c2 + 0.5) / 1.5);
}

/// The Omega*(3,3) triple w_i = (sin t cos(2 pi i/3), sin t sin(2 pi i/3), cos t).
inline TangentTuple build_tangent_tuple_propeller()
{
    const double ct = propeller_cos_theta();
    const double st = std::sqrt(1.0 - ct * ct);
    std::vector<Eigen::VectorXd> w;
    for (int i = 1; i <= 3; ++i) {
        const double a = 2.0 * std::numbers::pi * i / 3.0;
        w.push_back(Eigen::Vector3d(st * std::cos(a), st * std::sin(a), ct));
    }
    return TangentTuple(std::move(w), 1e-12);
}

/// Propeller followed by (k-3)/2 copies of a figure-eight pair attached at w_3,
/// a closed (3,k)-leafed tuple for odd k >= 3.
inline TangentTuple build_tangent_tuple_propeller_eight(int k)
{
    if (k < 3 || k % 2 == 0)
        throw std::invalid_argument("propeller-eight composite needs odd k >= 3");
    const auto prop = build_tangent_tuple_propeller();
    std::vector<Eigen::VectorXd> w = prop.omegas();
    // reflection of w_2 about the w_3 axis: unit, at angle 2 phi* from w_3
    const Eigen::VectorXd mirrored = 2.0 * prop[1].dot(prop[2]) * prop[2] - prop[1];
    for (int j = 0; j < (k - 3) / 2; ++j) {
        w.push_back(mirrored);
        w.push_back(prop[2]);
    }
    return TangentTuple(std::move(w));
}

/// Planar tuple (w, R(2phi*) w) describing the one-fold closed figure-eight.
inline TangentTuple build_tangent_tuple_figure_eight(const Eigen::Vector2d& first = Eigen::Vector2d::UnitX())
{
    const double a = 2.0 * constants().phi_star;
    const Eigen::Vector2d w1 = first.normalized();
    const Eigen::Vector2d w2(std::cos(a) * w1.x() - std::sin(a) * w1.y(), std::sin(a) * w1.x() + std::cos(a) * w1.y());
    return TangentTuple({w1, w2});
}

/// Blueprint of a k-leafed elastica. Closed: `tangents` holds w_1..w_k and
/// leaf i runs from w_{i-1} to w_i (w_0 := w_k). Open: `tangents` holds the
/// chain t_0..t_k and leaf i runs from t_{i-1} to t_i.
struct LeafedElasticaSpec {
    int k;
    bool closed;
    std::vector<Eigen::VectorXd> tangents;
    double leaf_length = 1.0;
};

inline LeafedElasticaSpec closed_leafed_spec(const TangentTuple& tuple, double leaf_length = 1.0)
{
    return {static_cast<int>(tuple.size()), true, tuple.omegas(), leaf_length};
}

namespace detail {

/// Places the canonical leaf so that its start/end tangents become (a, b):
/// the leaf's bisector e1 maps to (a+b)/|a+b| and e2 to (a-b)/|a-b|.
inline Eigen::MatrixXd leaf_frame(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    const double phi = constants().phi_star;
    Eigen::MatrixXd q(a.size(), 2);
    q.col(0) = (a + b) / (2.0 * std::cos(phi));
    q.col(1) = (a - b) / (2.0 * std::sin(phi));
    return q;
}

} // namespace detail

/// Concatenates rigid copies of the canonical leaf (scaled to leaf_length),
/// all joints at the origin. Joint vertices are marked.
inline DiscreteCurve assemble_leafed(const LeafedElasticaSpec& spec, int n_samples_per_leaf)
{
    if (spec.k < 1)
        throw tangent_chain_error("assemble_leafed: k must be >= 1");
    if (!(spec.leaf_length > 0.0))
        throw std::invalid_argument("assemble_leafed: leaf_length must be positive");
    const std::size_t expected = spec.closed ? static_cast<std::size_t>(spec.k) : static_cast<std::size_t>(spec.k) + 1;
    if (spec.tangents.size() != expected)
        throw tangent_chain_error("assemble_leafed: expected " + std::to_string(expected) + " tangents, got " +
                                  std::to_string(spec.tangents.size()));
    if (spec.closed && spec.k < 2)
        throw tangent_chain_error("assemble_leafed: a closed leafed elastica needs k >= 2");

    const double target = cos_two_phi_star();
    const int dim = static_cast<int>(spec.tangents.front().size());
    auto tangent_at = [&](int i) -> const Eigen::VectorXd& {
        // leaf i (1-based) starts at index i-1 and ends at index i
        if (spec.closed)
            return spec.tangents[static_cast<std::size_t>((i + spec.k) % spec.k)];
        return spec.tangents[static_cast<std::size_t>(i)];
    };
    for (const auto& t : spec.tangents)
        if (t.size() != dim || std::abs(t.norm() - 1.0) > 1e-8)
            throw tangent_chain_error("assemble_leafed: tangents must be unit vectors of one dimension");
    for (int i = 1; i <= spec.k; ++i) {
        const double c = tangent_at(i - 1).dot(tangent_at(i));
        if (std::abs(c - target) > 1e-8)
            throw tangent_chain_error("assemble_leafed: tangents of leaf " + std::to_string(i) +
                                      " are not at angle 2 phi*");
    }
    if (spec.closed && (tangent_at(spec.k) - tangent_at(0)).norm() > 1e-8)
        throw tangent_chain_error("assemble_leafed: closed chain does not return to its start tangent");

    const auto leaf = canonical_half_leaf(n_samples_per_leaf);
    const double scale = spec.leaf_length / (2.0 * constants().K_star);
    const int per_leaf = n_samples_per_leaf - 1;
    const int count = spec.k * per_leaf + (spec.closed ? 0 : 1);
    Eigen::MatrixXd p(dim, count);
    std::vector<std::size_t> joints;
    for (int i = 1; i <= spec.k; ++i) {
        const Eigen::MatrixXd frame = detail::leaf_frame(tangent_at(i - 1), tangent_at(i));
        const int offset = (i - 1) * per_leaf;
        const int take = (!spec.closed && i == spec.k) ? per_leaf + 1 : per_leaf;
        p.middleCols(offset, take) = scale * frame * leaf.points().leftCols(take);
        joints.push_back(static_cast<std::size_t>(offset));
    }
    if (!spec.closed)
        joints.push_back(static_cast<std::size_t>(count - 1));
    return DiscreteCurve(std::move(p), spec.closed, std::move(joints));
}

/// The elastic propeller: closed (3,3)-leafed elastica in R^3.
inline DiscreteCurve elastic_propeller(int n_samples_per_leaf, double leaf_length = 1.0)
{
    return assemble_leafed(closed_leafed_spec(build_tangent_tuple_propeller(), leaf_length), n_samples_per_leaf);
}

// ---------------------------------------------------------------------------
// Planar closure search
// ---------------------------------------------------------------------------

struct budget_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// All sign sequences s in {-1,+1}^k whose turning sum sum_i s_i 2 phi* lies
/// within eps of a multiple of 2 pi. Exhaustive over 2^k sequences, k <= 25.
inline std::vector<std::vector<int>> search_planar_closure(int k, double eps)
{
    if (k < 1)
        throw std::invalid_argument("search_planar_closure: k must be >= 1");
    if (k > 25)
        throw budget_error("search_planar_closure: 2^k enumeration budget exceeded (k > 25)");
    if (!(eps > 0.0))
        throw std::invalid_argument("search_planar_closure: eps must be positive");
    const double step = 2.0 * constants().phi_star;
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<std::vector<int>> found;
    const std::uint32_t total = std::uint32_t{1} << k;
    for (std::uint32_t bits = 0; bits < total; ++bits) {
        int net = 0;
        for (int i = 0; i < k; ++i)
            net += (bits >> i) & 1U ? 1 : -1;
        const double angle = net * step;
        const double dist = std::abs(angle - two_pi * std::round(angle / two_pi));
        if (dist < eps) {
            std::vector<int> seq(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i)
                seq[static_cast<std::size_t>(i)] = (bits >> i) & 1U ? 1 : -1;
            found.push_back(std::move(seq));
        }
    }
    return found;
}

// ---------------------------------------------------------------------------
// Multiplicity and embeddedness
// ---------------------------------------------------------------------------

inline double curve_length(const DiscreteCurve& c)
{
    double total = 0.0;
    for (std::size_t i = 0; i < c.edge_count(); ++i)
        total += c.edge_length(i);
    return total;
}

/// Default multiplicity tolerance: 1e-6 times curve length.
inline double default_multiplicity_eps(const DiscreteCurve& c) { return 1e-6 * curve_length(c); }

inline double point_segment_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    const Eigen::VectorXd d = b - a;
    const double t = std::clamp((x - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
    return (a + t * d - x).norm();
}

struct MultiplicityResult {
    int count = 0;
    bool eps_too_large = false; ///< eps exceeds half the minimum edge length
};

/// Number of separate passes of the curve through the eps-ball around `point`.
/// Edges within eps of the point form clusters; a cluster only ends once a
/// vertex gets farther than 2 eps away.
inline MultiplicityResult multiplicity(const DiscreteCurve& c, const Eigen::VectorXd& point, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("multiplicity: eps must be positive");
    MultiplicityResult res;
    res.eps_too_large = eps > 0.5 * c.min_edge_length();

    const std::size_t edges = c.edge_count();
    std::vector<char> hit(edges);
    for (std::size_t i = 0; i < edges; ++i)
        hit[i] = point_segment_distance(point, c.point(i), c.point(c.next(i))) < eps;

    // Walk edges in order; a cluster closes once a vertex lies beyond 2 eps.
    int clusters = 0;
    bool inside = false;
    bool first_cluster_open_at_start = false;
    for (std::size_t i = 0; i < edges; ++i) {
        if (hit[i] && !inside) {
            ++clusters;
            inside = true;
            if (i == 0)
                first_cluster_open_at_start = true;
        }
        if (inside && (c.point(c.next(i)) - point).norm() > 2.0 * eps)
            inside = false;
    }
    // A closed curve whose first and last clusters wrap around is one pass.
    if (c.closed() && clusters > 1 && first_cluster_open_at_start && inside)
        --clusters;
    res.count = clusters;
    return res;
}

namespace detail {

using Int128 = __int128;
using WideInt = boost::multiprecision::int256_t;

inline constexpr double snap_scale = 1099511627776.0; // 2^40

inline std::vector<std::int64_t> snap(const Eigen::VectorXd& p)
{
    std::vector<std::int64_t> q(static_cast<std::size_t>(p.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i)
        q[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::llround(p[i] * snap_scale));
    return q;
}

using SnappedPoint = std::vector<std::int64_t>;

// Exact test whether closed segments [a,b] and [c,d] on the integer grid meet.
inline bool segments_intersect(const SnappedPoint& a, const SnappedPoint& b, const SnappedPoint& c,
                               const SnappedPoint& d)
{
    const std::size_t n = a.size();
    std::vector<WideInt> u(n), v(n), w(n);
    for (std::size_t k = 0; k < n; ++k) {
        u[k] = WideInt(b[k]) - a[k];
        v[k] = WideInt(d[k]) - c[k];
        w[k] = WideInt(c[k]) - a[k];
    }
    // Find the coordinate pair with a nonzero 2x2 determinant of (u, v).
    std::size_t pi = n, pj = n;
    WideInt det = 0;
    for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const WideInt dd = u[i] * v[j] - u[j] * v[i];
            if (dd != 0) {
                pi = i;
                pj = j;
                det = dd;
                break;
            }
        }
    if (pi == n) {
        // parallel: must be collinear (w parallel to u) and overlap on the line
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (u[i] * w[j] - u[j] * w[i] != 0)
                    return false;
        WideInt uu = 0, t_c = 0, t_d = 0;
        for (std::size_t k = 0; k < n; ++k) {
            uu += u[k] * u[k];
            t_c += w[k] * u[k];
            t_d += (w[k] + v[k]) * u[k];
        }
        const WideInt lo = std::min(t_c, t_d);
        const WideInt hi = std::max(t_c, t_d);
        return !(hi < 0 || lo > uu);
    }
    // Solve a + t u = c + s v in the chosen plane: t = (w x v)/(u x v), s = (w x u)/(u x v).
    WideInt t_num = w[pi] * v[pj] - w[pj] * v[pi];
    WideInt s_num = w[pi] * u[pj] - w[pj] * u[pi];
    WideInt den = det;
    if (den < 0) {
        den = -den;
        t_num = -t_num;
        s_num = -s_num;
    }
    if (t_num < 0 || t_num > den || s_num < 0 || s_num > den)
        return false;
    // Remaining coordinates must agree exactly: (a + t u) * den == (c + s v) * den.
    for (std::size_t k = 0; k < n; ++k) {
        if (k == pi || k == pj)
            continue;
        if (WideInt(a[k]) * den + t_num * u[k] != WideInt(c[k]) * den + s_num * v[k])
            return false;
    }
    return true;
}

} // namespace detail

/// Distance between segments [a,b] and [p,q].
inline double segment_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& p,
                               const Eigen::VectorXd& q)
{
    const Eigen::VectorXd u = b - a, v = q - p, w = a - p;
    const double uu = u.dot(u), uv = u.dot(v), vv = v.dot(v), uw = u.dot(w), vw = v.dot(w);
    const double den = uu * vv - uv * uv;
    double t = den > 1e-14 * uu * vv ? std::clamp((uv * vw - vv * uw) / den, 0.0, 1.0) : 0.0;
    double s = std::clamp((uv * t + vw) / vv, 0.0, 1.0);
    t = std::clamp((uv * s - uw) / uu, 0.0, 1.0);
    double best = (a + t * u - p - s * v).norm();
    best = std::min({best, point_segment_distance(a, p, q), point_segment_distance(b, p, q),
                     point_segment_distance(p, a, b), point_segment_distance(q, a, b)});
    return best;
}

/// True iff no two non-adjacent edges meet. Coordinates are rounded to a
/// 2^-40 grid and compared with exact integer predicates. With eps > 0,
/// non-adjacent edges closer than eps also count as touching.
inline bool is_embedded(const DiscreteCurve& c, double eps = 0.0)
{
    const std::size_t edges = c.edge_count();
    std::vector<detail::SnappedPoint> q(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        q[i] = detail::snap(c.point(i));
    const Eigen::Index dim = c.dimension();
    Eigen::MatrixXd lo(dim, static_cast<Eigen::Index>(edges)), hi(dim, static_cast<Eigen::Index>(edges));
    for (std::size_t i = 0; i < edges; ++i) {
        lo.col(static_cast<Eigen::Index>(i)) = c.point(i).cwiseMin(c.point(c.next(i)));
        hi.col(static_cast<Eigen::Index>(i)) = c.point(i).cwiseMax(c.point(c.next(i)));
    }
    const double pad = 2.0 / detail::snap_scale + std::max(eps, 0.0);
    // sweep along the first coordinate
    std::vector<std::size_t> order(edges);
    for (std::size_t i = 0; i < edges; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo(0, a) < lo(0, b); });
    for (std::size_t oi = 0; oi < edges; ++oi) {
        const std::size_t i = order[oi];
        const auto ci = static_cast<Eigen::Index>(i);
        for (std::size_t oj = oi + 1; oj < edges; ++oj) {
            const std::size_t j = order[oj];
            const auto cj = static_cast<Eigen::Index>(j);
            if (lo(0, cj) > hi(0, ci) + pad)
                break;
            const std::size_t a = std::min(i, j), b = std::max(i, j);
            const bool adjacent = b == a + 1 || (c.closed() && a == 0 && b == edges - 1);
            if (adjacent)
                continue;
            bool apart = false;
            for (Eigen::Index d = 1; d < dim && !apart; ++d)
                apart = lo(d, cj) > hi(d, ci) + pad || lo(d, ci) > hi(d, cj) + pad;
            if (apart)
                continue;
            if (detail::segments_intersect(q[i], q[c.next(i)], q[j], q[c.next(j)]))
                return false;
            if (eps > 0.0 && segment_distance(c.point(i), c.point(c.next(i)), c.point(j), c.point(c.next(j))) < eps)
                return false;
        }
    }
    // Adjacent edges folding back onto each other also break injectivity.
    for (std::size_t i = 0; i + 1 < edges || (c.closed() && i < edges); ++i) {
        const std::size_t j = (i + 1) % edges;
        const Eigen::VectorXd e1 = c.edge(i);
        const Eigen::VectorXd e2 = c.edge(j);
        if (e1.dot(e2) < 0.0 && std::abs(e1.norm() * e2.norm() + e1.dot(e2)) <= 1e-15 * e1.norm() * e2.norm())
            return false;
    }
    return true;
}

/// Point of highest multiplicity among vertices and near-crossings, if any
/// reaches `min_count`.
struct MultiplePoint {
    Eigen::VectorXd point;
    int count;
};

inline std::optional<MultiplePoint> find_multiple_point(const DiscreteCurve& c, int min_count, double eps)
{
    std::vector<Eigen::VectorXd> candidates;
    for (auto m : c.vertex_marks())
        candidates.push_back(c.point(m));
    const std::size_t edges = c.edge_count();
    for (std::size_t i = 0; i < edges; ++i) {
        for (std::size_t j = i + 2; j < edges; ++j) {
            if (c.closed() && i == 0 && j == edges - 1)
                continue;
            // closest approach between the two edges, sampled at endpoints
            const Eigen::VectorXd a = c.point(i), b = c.point(c.next(i));
            const Eigen::VectorXd p = c.point(j), q = c.point(c.next(j));
            if (point_segment_distance(a, p, q) < eps)
                candidates.push_back(a);
            else if (point_segment_distance(p, a, b) < eps)
                candidates.push_back(p);
            else {
                // proper crossing: midpoint of the common perpendicular
                const Eigen::VectorXd u = b - a, v = q - p, w = a - p;
                const double uu = u.dot(u), uv = u.dot(v), vv = v.dot(v), uw = u.dot(w), vw = v.dot(w);
                const double den = uu * vv - uv * uv;
                if (den <= 1e-300)
                    continue;
                const double t = (uv * vw - vv * uw) / den;
                const double s = (uu * vw - uv * uw) / den;
                if (t < 0.0 || t > 1.0 || s < 0.0 || s > 1.0)
                    continue;
                const Eigen::VectorXd x = a + t * u;
                const Eigen::VectorXd y = p + s * v;
                if ((x - y).norm() < eps)
                    candidates.push_back(0.5 * (x + y));
            }
        }
    }
    std::optional<MultiplePoint> best;
    for (const auto& x : candidates) {
        const int count = multiplicity(c, x, eps).count;
        if (count >= min_count && (!best || count > best->count))
            best = MultiplePoint{x, count};
    }
    return best;
}

} // namespace elastica
