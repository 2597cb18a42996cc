/**
 * @file verify.hpp
 * @brief The acceptance suite: ten numbered criteria, each returning a
 *        PASS/FAIL verdict with the measured quantities.
 */
#pragma once

#include "elastica/elliptic.hpp"
#include "elastica/energy.hpp"
#include "elastica/exact_bounds.hpp"
#include "elastica/flow.hpp"
#include "elastica/networks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace elastica {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyOptions {
    unsigned threads = 1;
    int flow_seeds = 20;
    std::uint64_t seed = 1; ///< first seed of every seeded batch
};

namespace detail {

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::ostringstream detail_stream()
{
    std::ostringstream os;
    os.precision(6);
    return os;
}

/// Calls job(i) for i in [0, count) on up to `threads` workers.
inline void parallel_for(int count, unsigned threads, const std::function<void(int)>& job)
{
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (workers == 1) {
        for (int i = 0; i < count; ++i)
            job(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++)
                job(i);
        });
    for (auto& t : pool)
        t.join();
}

} // namespace detail

inline CriterionResult verify_constants()
{
    detail::Stopwatch sw;
    const EllipticConstants c = solve_m_star();
    const double elapsed = sw.seconds();
    const double residual = std::abs(complete_K(c.m_star) - 2.0 * complete_E(c.m_star));
    const double phi_deg = c.phi_star * 180.0 / std::numbers::pi;
    const bool ok = std::abs(c.m_star - 0.82611) <= 1e-4 && std::abs(c.varpi_star - 28.109) <= 1e-2 &&
                    std::abs(phi_deg - 49.290) <= 0.01 && residual < 1e-12 && elapsed < 1.0;
    auto os = detail::detail_stream();
    os.precision(12);
    os << "m*=" << c.m_star << " varpi*=" << c.varpi_star << " phi*=" << phi_deg << "deg residual=" << residual
       << " t=" << elapsed << "s";
    return {1, "constants", ok, os.str()};
}

inline CriterionResult verify_exact_bounds()
{
    detail::Stopwatch sw;
    const BigRational t10 = tail_T(10, BigRational(BigInt(3), BigInt(4)));
    const BigRational s7 = partial_S(7, BigRational(BigInt(17), BigInt(20)));
    const double elapsed = sw.seconds();
    const std::string t10_expected = "71740047753969831/72057594037927936";
    const std::string s7_expected = "1739865847127/1717986918400";
    const bool ok =
        to_string(t10) == t10_expected && to_string(s7) == s7_expected && t10 < 1 && s7 > 1 && elapsed < 1.0;
    auto os = detail::detail_stream();
    os << "T10(3/4)=" << to_string(t10) << " S7(17/20)=" << to_string(s7) << " t=" << elapsed << "s";
    return {2, "exact bounds", ok, os.str()};
}

inline CriterionResult verify_energy_closed_forms()
{
    const double varpi = constants().varpi_star;
    double err[3];
    const int sizes[3] = {128, 256, 512};
    for (int i = 0; i < 3; ++i)
        err[i] = std::abs(normalized_bending(canonical_half_leaf(sizes[i])) / varpi - 1.0);
    const double order = std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));
    double worst_fold = 0.0;
    for (int N = 1; N <= 4; ++N)
        worst_fold =
            std::max(worst_fold, std::abs(normalized_bending(sample_figure_eight(N, 512 * N)) / (varpi * N * N) - 1.0));
    const bool ok = err[2] < 1e-3 && order >= 1.8 && worst_fold < 1e-3;
    auto os = detail::detail_stream();
    os << "half-leaf rel.err@512=" << err[2] << " order=" << order << " worst N-fold rel.err=" << worst_fold;
    return {3, "energy closed forms", ok, os.str()};
}

inline CriterionResult verify_rigidity()
{
    const double varpi = constants().varpi_star;
    const auto eight = li_yau_margin(sample_figure_eight(2, 1024, true), 2);
    const auto prop = li_yau_margin(elastic_propeller(512), 3);
    const double rel8 = std::abs(eight.margin) / (varpi * 4.0);
    const double rel3 = std::abs(prop.margin) / (varpi * 9.0);
    const double residual = build_tangent_tuple_propeller().relation_residual();
    const bool ok = rel8 < 5e-3 && rel3 < 5e-3 && residual < 1e-10;
    auto os = detail::detail_stream();
    os << "figure-eight |margin|/bound=" << rel8 << " (mult " << eight.multiplicity << ") propeller=" << rel3
       << " (mult " << prop.multiplicity << ") tuple residual=" << residual;
    return {4, "rigidity witnesses", ok, os.str()};
}

inline CriterionResult verify_planar_closure()
{
    detail::Stopwatch sw;
    std::size_t hits = 0;
    for (int k : {3, 5, 7, 9})
        hits += search_planar_closure(k, 1e-6).size();
    const double elapsed = sw.seconds();
    auto os = detail::detail_stream();
    os << "closures found for k in {3,5,7,9}: " << hits << " t=" << elapsed << "s";
    return {5, "planar closure search", hits == 0 && elapsed < 1.0, os.str()};
}

inline CriterionResult verify_quantization()
{
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double b_circle = normalized_bending(circle(2, 1.0, 1024));
    const double b_eight = normalized_bending(sample_figure_eight(2, 1024, true));
    const double b_double = normalized_bending(circle(2, 1.0, 2048, 2));
    const double e1 = std::abs(b_circle / (4.0 * pi2) - 1.0);
    const double e2 = std::abs(b_eight / (4.0 * constants().varpi_star) - 1.0);
    const double e3 = std::abs(b_double / (16.0 * pi2) - 1.0);
    const bool ok = e1 < 5e-3 && e2 < 5e-3 && e3 < 5e-3 && b_circle < b_eight && b_eight < b_double;
    auto os = detail::detail_stream();
    os.precision(8);
    os << "circle=" << b_circle << " figure-eight=" << b_eight << " double circle=" << b_double;
    return {6, "quantization ladder", ok, os.str()};
}

inline CriterionResult verify_flow(const VerifyOptions& opt)
{
    struct Outcome {
        bool embedded = false, converged = false;
        double roundness = 1.0, radius_err = 1.0;
    };
    const int n = opt.flow_seeds;
    std::vector<Outcome> fixed_length(static_cast<std::size_t>(n)), fixed_lambda(static_cast<std::size_t>(n));
    const FlowConfig cfg{};
    detail::Stopwatch sw;
    detail::parallel_for(2 * n, opt.threads, [&](int job) {
        const int i = job % n;
        const auto start = perturbed_circle(opt.seed + static_cast<std::uint64_t>(i)).curve;
        Outcome o;
        if (job < n) {
            const double L0 = length(start);
            const auto rep = run(start, FlowMode::fixed_length, L0, cfg);
            o = {rep.embedded_throughout, rep.converged, rep.final_roundness,
                 std::abs(rep.limit_radius / (L0 / (2.0 * std::numbers::pi)) - 1.0)};
            fixed_length[static_cast<std::size_t>(i)] = o;
        } else {
            const auto rep = run(start, FlowMode::fixed_lambda, 0.5, cfg);
            o = {rep.embedded_throughout, rep.converged, rep.final_roundness, std::abs(rep.limit_radius - 1.0)};
            fixed_lambda[static_cast<std::size_t>(i)] = o;
        }
    });
    const double elapsed = sw.seconds();

    bool ok_len = true, ok_lam = true;
    double worst_round = 0.0, worst_rad = 0.0, worst_lam = 0.0;
    for (const auto& o : fixed_length) {
        ok_len = ok_len && o.embedded && o.converged && o.roundness < 1e-3 && o.radius_err < 1e-2;
        worst_round = std::max(worst_round, o.roundness);
        worst_rad = std::max(worst_rad, o.radius_err);
    }
    for (const auto& o : fixed_lambda) {
        ok_lam = ok_lam && o.converged && o.radius_err < 1e-2;
        worst_lam = std::max(worst_lam, o.radius_err);
    }
    auto os = detail::detail_stream();
    os << "fixed-length " << (ok_len ? "ok" : "FAIL") << " (worst roundness=" << worst_round
       << ", worst radius rel.err=" << worst_rad << "); fixed-lambda=1/2 " << (ok_lam ? "ok" : "FAIL")
       << " (worst |R-1|=" << worst_lam << ") t=" << elapsed << "s";
    return {7, "elastic flow", ok_len && ok_lam, os.str()};
}

inline CriterionResult verify_network_chain()
{
    const double threshold = 4.0 * std::sqrt(constants().varpi_star);
    const double f34 = network_energy_formula(0.75);
    const double discrete = theta_energy(build_wavelike_network(0.75, 1024));
    const double disc_err = std::abs(discrete / f34 - 1.0);
    const double angle_err = std::abs(wavelike_junction_angle(0.75) - std::numbers::pi / 3.0);

    const double m_star = constants().m_star;
    bool monotone = true;
    double prev = -1.0;
    for (int i = 1; i <= 1000; ++i) {
        const double v = network_energy_formula(m_star * i / 1001.0);
        monotone = monotone && v > prev;
        prev = v;
    }
    const double limit_err = std::abs(network_energy_formula(m_star - 1e-8) - threshold);
    const double bubble = double_bubble_energy(3.0 * std::numbers::pi / 4.0);

    const bool ok = f34 < threshold && disc_err < 2e-3 && angle_err < 1e-8 && monotone && limit_err < 1e-5 &&
                    std::abs(bubble - 20.214) <= 0.01;
    auto os = detail::detail_stream();
    os.precision(10);
    os << "formula(3/4)=" << f34 << " < " << threshold << "; discrete rel.err=" << disc_err
       << "; angle err=" << angle_err << "; monotone=" << (monotone ? "yes" : "no") << "; limit err=" << limit_err
       << "; double bubble=" << bubble;
    return {8, "network threshold chain", ok, os.str()};
}

inline CriterionResult verify_drop_bound(const VerifyOptions& opt)
{
    const double target = 2.0 * std::sqrt(constants().varpi_star);
    const auto leaf = canonical_half_leaf(512);
    const auto drop = leaf.scaled(std::sqrt(constants().varpi_star) / length(leaf));
    const double rel = std::abs(drop_margin(drop) / target);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 50; ++i)
        worst = std::min(worst, drop_margin(random_drop(opt.seed + static_cast<std::uint64_t>(i))));
    auto os = detail::detail_stream();
    os << "half-leaf |E1/(2 sqrt varpi*) - 1|=" << rel << "; min random margin=" << worst;
    return {9, "drop bound", rel < 5e-3 && worst > 0.0, os.str()};
}

inline CriterionResult verify_piecewise_fenchel(const VerifyOptions& opt)
{
    const double s3 = std::sqrt(3.0) / 2.0;
    const Eigen::Vector2d a(0.0, 0.0), b(1.0, 0.0), c(0.5, s3);
    const auto tri = total_curvature_piecewise({segment(a, b, 8), segment(b, c, 8), segment(c, a, 8)});
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 50; ++i) {
        const int dim = i % 2 == 0 ? 2 : 3;
        worst = std::min(worst, total_curvature_piecewise(random_piecewise_cycle(opt.seed + i, dim)).fenchel_defect);
    }
    auto os = detail::detail_stream();
    os << "triangle defect=" << tri.fenchel_defect << "; min random defect=" << worst;
    return {10, "piecewise Fenchel", std::abs(tri.fenchel_defect) < 1e-12 && worst >= -1e-6, os.str()};
}

inline std::vector<CriterionResult> verify_all(const VerifyOptions& opt = {})
{
    std::vector<CriterionResult> out;
    auto guarded = [&](int id, const char* name, const std::function<CriterionResult()>& f) {
        try {
            out.push_back(f());
        } catch (const std::exception& e) {
            out.push_back({id, name, false, std::string("error: ") + e.what()});
        }
    };
    guarded(1, "constants", verify_constants);
    guarded(2, "exact bounds", verify_exact_bounds);
    guarded(3, "energy closed forms", verify_energy_closed_forms);
    guarded(4, "rigidity witnesses", verify_rigidity);
    guarded(5, "planar closure search", verify_planar_closure);
    guarded(6, "quantization ladder", verify_quantization);
    guarded(7, "elastic flow", [&] { return verify_flow(opt); });
    guarded(8, "network threshold chain", verify_network_chain);
    guarded(9, "drop bound", [&] { return verify_drop_bound(opt); });
    guarded(10, "piecewise Fenchel", [&] { return verify_piecewise_fenchel(opt); });
    return out;
}

} // namespace elastica
