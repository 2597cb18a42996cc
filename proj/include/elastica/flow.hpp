/**
 * @file flow.hpp
 * @brief Elastic flow d/dt gamma = -2 nabla_s^2 kappa - |kappa|^2 kappa + lambda kappa
 *        on closed polylines, with a fixed multiplier or the length-preserving
 *        multiplier lambda(t).
 *
 * Time stepping is implicit-explicit. With M = diag(w) the dual lengths and
 * L the symmetric non-uniform second difference, A = M^-1 L M^-1 L is a
 * discrete d^4/ds^4 and each step solves
 *
 *   (M + 2 dt L M^-1 L) delta = dt M V(gamma^n),   gamma^{n+1} = gamma^n + delta.
 *
 * The implicit operator only damps the stiff part; fixed points are exactly
 * the zeros of the discrete velocity V. Nodes are redistributed by periodic
 * cubic spline resampling every few steps.
 */
#pragma once

#include "elastica/curves.hpp"
#include "elastica/discrete.hpp"
#include "elastica/energy.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace elastica {

enum class FlowMode { fixed_lambda, fixed_length };

inline std::string to_string(FlowMode m) { return m == FlowMode::fixed_lambda ? "fixed-lambda" : "fixed-length"; }

struct zero_curvature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct step_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_closed(const DiscreteCurve& c, const char* who)
{
    if (!c.closed())
        throw std::invalid_argument(std::string(who) + ": closed curve required");
}

/// Unit tangent at node i: normalised sum of the adjacent unit edge vectors.
inline Eigen::VectorXd node_tangent(const DiscreteCurve& c, std::size_t i)
{
    const Eigen::VectorXd a = c.edge(c.prev(i)).normalized();
    const Eigen::VectorXd b = c.edge(i).normalized();
    const Eigen::VectorXd t = a + b;
    const double n = t.norm();
    return n > 1e-12 ? Eigen::VectorXd(t / n) : b;
}

inline void remove_component(Eigen::Ref<Eigen::VectorXd> v, const Eigen::VectorXd& unit)
{
    v -= v.dot(unit) * unit;
}

} // namespace detail

/// Curvature, its normal Laplacian and the node weights of one curve.
struct FlowFields {
    Eigen::MatrixXd kappa;
    Eigen::MatrixXd laplacian; ///< discrete nabla_s^2 kappa
    std::vector<double> weight;
};

inline FlowFields flow_fields(const DiscreteCurve& c)
{
    detail::require_closed(c, "flow_fields");
    auto nc = nodal_curvature(c);
    const auto n = c.size();
    const auto d = c.dimension();
    // first derivative on edges, normal to the edge
    Eigen::MatrixXd dk(d, static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double h = c.edge_length(i);
        const Eigen::VectorXd t = c.edge(i) / h;
        Eigen::VectorXd g = (nc.kappa.col(static_cast<Eigen::Index>(c.next(i))) -
                             nc.kappa.col(static_cast<Eigen::Index>(i))) / h;
        detail::remove_component(g, t);
        dk.col(static_cast<Eigen::Index>(i)) = g;
    }
    // second derivative at nodes, normal to the node tangent
    Eigen::MatrixXd lap(d, static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::VectorXd g = (dk.col(static_cast<Eigen::Index>(i)) - dk.col(static_cast<Eigen::Index>(c.prev(i)))) /
                            nc.weight[i];
        detail::remove_component(g, detail::node_tangent(c, i));
        lap.col(static_cast<Eigen::Index>(i)) = g;
    }
    return {std::move(nc.kappa), std::move(lap), std::move(nc.weight)};
}

inline Eigen::MatrixXd normal_laplacian_kappa(const DiscreteCurve& c) { return flow_fields(c).laplacian; }

inline double lambda_fixed_length(const FlowFields& f)
{
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index i = 0; i < f.kappa.cols(); ++i) {
        const auto k = f.kappa.col(i);
        const double k2 = k.squaredNorm();
        num += (2.0 * f.laplacian.col(i).dot(k) + k2 * k2) * f.weight[static_cast<std::size_t>(i)];
        den += k2 * f.weight[static_cast<std::size_t>(i)];
    }
    if (den < 1e-14)
        throw zero_curvature_error("lambda_fixed_length: curve has (numerically) zero bending energy");
    return num / den;
}

/// lambda = <2 nabla_s^2 kappa + |kappa|^2 kappa, kappa> / <kappa, kappa>, weighted by w.
inline double lambda_fixed_length(const DiscreteCurve& c) { return lambda_fixed_length(flow_fields(c)); }

/// Normal velocity -2 nabla_s^2 kappa - |kappa|^2 kappa + lambda kappa at every node.
inline Eigen::MatrixXd flow_velocity(const DiscreteCurve& c, const FlowFields& f, double lambda)
{
    Eigen::MatrixXd v(c.dimension(), static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto ci = static_cast<Eigen::Index>(i);
        const auto k = f.kappa.col(ci);
        Eigen::VectorXd vi = -2.0 * f.laplacian.col(ci) - k.squaredNorm() * k + lambda * k;
        detail::remove_component(vi, detail::node_tangent(c, i));
        v.col(ci) = vi;
    }
    return v;
}

inline Eigen::MatrixXd flow_velocity(const DiscreteCurve& c, double lambda)
{
    return flow_velocity(c, flow_fields(c), lambda);
}

/// Discrete L2 norm of the elastica operator 2 nabla_s^2 kappa + |kappa|^2 kappa - lambda kappa.
inline double stationarity_residual(const DiscreteCurve& c, double lambda)
{
    const auto f = flow_fields(c);
    const auto v = flow_velocity(c, f, lambda);
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        s += v.col(static_cast<Eigen::Index>(i)).squaredNorm() * f.weight[i];
    return std::sqrt(s);
}

/// Resamples a closed curve to n uniformly spaced values of the cumulative
/// chord parameter of a periodic cubic spline through its nodes. Node 0 stays put.
inline DiscreteCurve remesh_uniform(const DiscreteCurve& c, std::size_t n_out = 0)
{
    detail::require_closed(c, "remesh_uniform");
    const std::size_t n = c.size();
    if (n_out == 0)
        n_out = n;
    const auto h = c.edge_lengths();
    std::vector<double> t(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        t[i + 1] = t[i] + h[i];
    const double total = t[n];

    using Sparse = Eigen::SparseMatrix<double>;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t p = c.prev(i);
        const auto ii = static_cast<int>(i);
        trip.emplace_back(ii, static_cast<int>(p), h[p]);
        trip.emplace_back(ii, ii, 2.0 * (h[p] + h[i]));
        trip.emplace_back(ii, static_cast<int>(c.next(i)), h[i]);
    }
    Sparse S(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    S.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Sparse> solver(S);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("remesh_uniform: spline system is singular");

    const Eigen::MatrixXd& y = c.points();
    Eigen::MatrixXd rhs(static_cast<Eigen::Index>(n), y.rows());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t p = c.prev(i);
        const auto ci = static_cast<Eigen::Index>(i);
        rhs.row(ci) = (6.0 * ((y.col(static_cast<Eigen::Index>(c.next(i))) - y.col(ci)) / h[i] -
                              (y.col(ci) - y.col(static_cast<Eigen::Index>(p))) / h[p]))
                          .transpose();
    }
    const Eigen::MatrixXd m2 = solver.solve(rhs); // n x dim second derivatives

    Eigen::MatrixXd out(y.rows(), static_cast<Eigen::Index>(n_out));
    std::size_t seg = 0;
    for (std::size_t j = 0; j < n_out; ++j) {
        const double s = total * static_cast<double>(j) / static_cast<double>(n_out);
        while (seg + 1 < n && t[seg + 1] <= s)
            ++seg;
        const std::size_t nx = c.next(seg);
        const double hs = h[seg];
        const double a = t[seg + 1] - s;
        const double b = s - t[seg];
        const auto cs = static_cast<Eigen::Index>(seg);
        const auto cn_ = static_cast<Eigen::Index>(nx);
        out.col(static_cast<Eigen::Index>(j)) =
            (m2.row(cs).transpose() * (a * a * a) + m2.row(cn_).transpose() * (b * b * b)) / (6.0 * hs) +
            (y.col(cs) / hs - m2.row(cs).transpose() * hs / 6.0) * a +
            (y.col(cn_) / hs - m2.row(cn_).transpose() * hs / 6.0) * b;
    }
    return DiscreteCurve(std::move(out), true);
}

/// Standard deviation over mean of the node distances to the centroid.
inline double roundness(const DiscreteCurve& c)
{
    const Eigen::VectorXd m = c.centroid();
    Eigen::VectorXd r(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        r[static_cast<Eigen::Index>(i)] = (c.point(i) - m).norm();
    const double mean = r.mean();
    return std::sqrt((r.array() - mean).square().mean()) / mean;
}

inline double mean_radius(const DiscreteCurve& c)
{
    const Eigen::VectorXd m = c.centroid();
    double sum = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        sum += (c.point(i) - m).norm();
    return sum / static_cast<double>(c.size());
}

/// Step sizes and speeds are quoted for a curve of length 2 pi. A curve of
/// length L runs with dt scaled by (L/2pi)^4 and tol_velocity by (2pi/L)^3,
/// so rescaled curves follow the same discrete trajectory.
struct FlowConfig {
    double dt = 2e-2;            ///< upper cap on the adaptive step
    double dt_initial = 1e-5;
    double tol_velocity = 1e-5;  ///< round-off floor is ~2e-6 at 1024 nodes
    int remesh_every = 20;
    long max_steps = 100000;
    double embed_eps = 0.0;      ///< non-adjacent edges closer than this count as touching
    int embed_every = 10;
    int record_every = 1;
    double energy_slack = 1e-9;  ///< relative energy increase tolerated per step
    int max_halvings = 20;
};

struct FlowState {
    DiscreteCurve curve;
    double time = 0.0;
    double lambda = 0.0;
    FlowMode mode = FlowMode::fixed_lambda;
    double target_length = 0.0;
    double dt = 1e-5;
    long steps = 0;
    double speed = 0.0;  ///< largest node speed at the start of the last step
    double energy = 0.0; ///< E_lambda (fixed multiplier) or B (fixed length)
    int rejected = 0;    ///< total halvings so far
};

namespace detail {

/// L / 2pi.
inline double flow_scale(const DiscreteCurve& c) { return length(c) / (2.0 * std::numbers::pi); }

inline double flow_energy(const DiscreteCurve& c, FlowMode mode, double lambda)
{
    return mode == FlowMode::fixed_lambda ? bending_energy(c) + lambda * length(c) : bending_energy(c);
}

inline DiscreteCurve rescale_to_length(const DiscreteCurve& c, double target)
{
    const Eigen::VectorXd m = c.centroid();
    Eigen::MatrixXd p = c.points();
    p.colwise() -= m;
    p *= target / length(c);
    p.colwise() += m;
    return c.with_points(std::move(p));
}

// (M + 2 dt L M^-1 L) delta = dt M V, solved per coordinate.
inline Eigen::MatrixXd imex_increment(const DiscreteCurve& c, const Eigen::MatrixXd& velocity, double dt)
{
    using Sparse = Eigen::SparseMatrix<double>;
    const std::size_t n = c.size();
    const auto h = c.edge_lengths();
    std::vector<double> w(n);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t p = c.prev(i);
        w[i] = 0.5 * (h[p] + h[i]);
        const auto ii = static_cast<int>(i);
        trip.emplace_back(ii, static_cast<int>(p), 1.0 / h[p]);
        trip.emplace_back(ii, ii, -1.0 / h[p] - 1.0 / h[i]);
        trip.emplace_back(ii, static_cast<int>(c.next(i)), 1.0 / h[i]);
    }
    const auto N = static_cast<Eigen::Index>(n);
    Sparse L(N, N);
    L.setFromTriplets(trip.begin(), trip.end());
    Eigen::VectorXd winv(N), wv(N);
    for (std::size_t i = 0; i < n; ++i) {
        winv[static_cast<Eigen::Index>(i)] = 1.0 / w[i];
        wv[static_cast<Eigen::Index>(i)] = w[i];
    }
    Sparse Minv(N, N), M(N, N);
    Minv.reserve(Eigen::VectorXi::Constant(N, 1));
    M.reserve(Eigen::VectorXi::Constant(N, 1));
    for (Eigen::Index i = 0; i < N; ++i) {
        Minv.insert(i, i) = winv[i];
        M.insert(i, i) = wv[i];
    }
    const Sparse system = M + 2.0 * dt * Sparse(L * Minv * L);
    Eigen::SimplicialLDLT<Sparse> solver(system);
    if (solver.info() != Eigen::Success)
        throw step_failure("imex step: factorisation failed");
    Eigen::MatrixXd rhs = (velocity * wv.asDiagonal()).transpose() * dt; // n x dim
    return solver.solve(rhs).transpose();
}

} // namespace detail

inline FlowState make_flow_state(const DiscreteCurve& initial, FlowMode mode, double lambda_or_L0,
                                 const FlowConfig& config)
{
    detail::require_closed(initial, "make_flow_state");
    FlowState s{remesh_uniform(initial)};
    s.mode = mode;
    if (mode == FlowMode::fixed_length) {
        s.target_length = lambda_or_L0 > 0.0 ? lambda_or_L0 : length(initial);
        s.curve = detail::rescale_to_length(s.curve, s.target_length);
        s.lambda = lambda_fixed_length(s.curve);
    } else {
        if (!(lambda_or_L0 >= 0.0))
            throw std::invalid_argument("flow: lambda must be >= 0");
        s.lambda = lambda_or_L0;
    }
    s.dt = config.dt_initial * std::pow(detail::flow_scale(s.curve), 4);
    s.energy = detail::flow_energy(s.curve, mode, s.lambda);
    return s;
}

/// One accepted IMEX step. Rejects and halves dt while the energy grows by
/// more than energy_slack (relative); throws step_failure after max_halvings.
inline FlowState step(const FlowState& state, const FlowConfig& config)
{
    const auto fields = flow_fields(state.curve);
    const double lambda = state.mode == FlowMode::fixed_length ? lambda_fixed_length(fields) : state.lambda;
    const double e0 = detail::flow_energy(state.curve, state.mode, lambda);
    const Eigen::MatrixXd v = flow_velocity(state.curve, fields, lambda);
    const double speed = v.colwise().norm().maxCoeff();

    const double dt_cap = config.dt * std::pow(detail::flow_scale(state.curve), 4);
    double dt = std::min(state.dt, dt_cap);
    for (int attempt = 0; attempt <= config.max_halvings; ++attempt, dt *= 0.5) {
        const Eigen::MatrixXd delta = detail::imex_increment(state.curve, v, dt);
        try {
            DiscreteCurve next = state.curve.with_points(state.curve.points() + delta);
            if (state.mode == FlowMode::fixed_length)
                next = detail::rescale_to_length(next, state.target_length);
            const double e1 = detail::flow_energy(next, state.mode, lambda);
            if (!std::isfinite(e1) || e1 > e0 + config.energy_slack * std::abs(e0))
                continue;
            FlowState out = state;
            out.rejected += attempt;
            out.time += dt;
            out.dt = std::min(dt * 1.25, dt_cap);
            out.steps += 1;
            out.speed = speed;
            out.lambda = lambda;
            if (config.remesh_every > 0 && out.steps % config.remesh_every == 0) {
                next = remesh_uniform(next);
                if (state.mode == FlowMode::fixed_length)
                    next = detail::rescale_to_length(next, state.target_length);
            }
            out.energy = detail::flow_energy(next, state.mode, lambda);
            out.curve = std::move(next);
            return out;
        } catch (const curve_error&) {
        } catch (const degenerate_edge_error&) {
        }
    }
    throw step_failure("flow step: energy kept increasing after " + std::to_string(config.max_halvings) +
                       " step halvings");
}

struct FlowTraceRow {
    double time;
    double energy;
    double length;
    double roundness;
    bool embedded;
};

struct FlowReport {
    std::vector<FlowTraceRow> trace;
    bool embedded_throughout = true;
    double final_roundness = 0.0;
    double limit_radius = 0.0;
    bool converged = false;
    std::string stop_reason;
    long steps = 0;
    int rejected = 0;
    double final_lambda = 0.0;
    double final_speed = 0.0;
    std::optional<FlowState> final_state;

    std::vector<std::pair<double, double>> energy_trace() const
    {
        std::vector<std::pair<double, double>> e;
        for (const auto& r : trace)
            e.emplace_back(r.time, r.energy);
        return e;
    }
    std::vector<bool> embedded_trace() const
    {
        std::vector<bool> e;
        for (const auto& r : trace)
            e.push_back(r.embedded);
        return e;
    }
};

/// Runs the flow until the largest node speed drops below the scaled tol_velocity or
/// max_steps is reached. lambda_or_L0 is the multiplier (fixed_lambda) or the
/// target length (fixed_length; <= 0 keeps the initial length).
inline FlowReport run(const DiscreteCurve& initial, FlowMode mode, double lambda_or_L0, const FlowConfig& config)
{
    FlowState s = make_flow_state(initial, mode, lambda_or_L0, config);
    FlowReport rep{};
    bool embedded = is_embedded(s.curve, config.embed_eps);
    rep.embedded_throughout = embedded;
    rep.trace.push_back({s.time, s.energy, length(s.curve), roundness(s.curve), embedded});
    rep.stop_reason = "budget exhausted";
    while (s.steps < config.max_steps) {
        try {
            s = step(s, config);
        } catch (const step_failure& e) {
            rep.stop_reason = e.what();
            break;
        }
        const bool last = s.speed < config.tol_velocity * std::pow(detail::flow_scale(s.curve), -3);
        if (last || (config.embed_every > 0 && s.steps % config.embed_every == 0)) {
            embedded = is_embedded(s.curve, config.embed_eps);
            rep.embedded_throughout = rep.embedded_throughout && embedded;
        }
        if (last || (config.record_every > 0 && s.steps % config.record_every == 0))
            rep.trace.push_back({s.time, s.energy, length(s.curve), roundness(s.curve), embedded});
        if (last) {
            rep.converged = true;
            rep.stop_reason = "converged";
            break;
        }
    }
    rep.final_roundness = roundness(s.curve);
    rep.limit_radius = mean_radius(s.curve);
    rep.steps = s.steps;
    rep.rejected = s.rejected;
    rep.final_lambda = s.lambda;
    rep.final_speed = s.speed;
    rep.final_state = std::move(s);
    return rep;
}

struct PerturbedCircle {
    DiscreteCurve curve;
    int draws; ///< number of draws until the energy cap was met
};

/// Unit circle with a smooth radial perturbation sum_{k=2..6} (a_k cos k t + b_k sin k t),
/// a_k, b_k ~ N(0, 1/k^2), scaled so max |r - 1| = amplitude. Redrawn until
/// L*B < energy_cap (default 0.95 * 4 varpi*).
inline PerturbedCircle perturbed_circle(std::uint64_t seed, int n_samples = 1024, double amplitude = 0.05,
                                        double energy_cap = 0.0)
{
    if (n_samples < 16 || !(amplitude > 0.0 && amplitude < 0.5))
        throw std::invalid_argument("perturbed_circle: need n >= 16 and 0 < amplitude < 0.5");
    if (energy_cap <= 0.0)
        energy_cap = 0.95 * 4.0 * constants().varpi_star;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int draw = 1; draw <= 1000; ++draw) {
        double a[7] = {}, b[7] = {};
        for (int k = 2; k <= 6; ++k) {
            a[k] = normal(rng) / k;
            b[k] = normal(rng) / k;
        }
        std::vector<double> r(static_cast<std::size_t>(n_samples));
        double peak = 0.0;
        for (int i = 0; i < n_samples; ++i) {
            const double t = 2.0 * std::numbers::pi * i / n_samples;
            double d = 0.0;
            for (int k = 2; k <= 6; ++k)
                d += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
            r[static_cast<std::size_t>(i)] = d;
            peak = std::max(peak, std::abs(d));
        }
        Eigen::MatrixXd p(2, n_samples);
        for (int i = 0; i < n_samples; ++i) {
            const double t = 2.0 * std::numbers::pi * i / n_samples;
            const double rad = 1.0 + amplitude * r[static_cast<std::size_t>(i)] / peak;
            p(0, i) = rad * std::cos(t);
            p(1, i) = rad * std::sin(t);
        }
        DiscreteCurve c(std::move(p), true);
        if (normalized_bending(c) < energy_cap)
            return {std::move(c), draw};
    }
    throw std::runtime_error("perturbed_circle: no draw met the energy cap in 1000 attempts");
}

} // namespace elastica
