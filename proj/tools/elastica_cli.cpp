// Command-line front end: constants, curve generation, energies, flows,
// networks, closure search and the acceptance suite.

#include "elastica/elastica.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

using namespace elastica;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << v;
    return os.str();
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct GenerateArgs {
    std::string kind;
    std::string out;
    int n = 512;
    int dim = 2;
    double radius = 1.0;
    int turns = 1;
    int halves = 2;
    bool closed = false;
    double m = 0.75;
    std::optional<double> s_lo, s_hi;
    double leaf_length = 1.0;
    double amplitude = 0.05;
    std::optional<std::uint64_t> seed;
};

int run_generate(const GenerateArgs& a)
{
    json params = json::object();
    params["n"] = a.n;
    std::optional<DiscreteCurve> c;
    if (a.kind == "circle") {
        c = circle(a.dim, a.radius, a.n, a.turns);
        params.update({{"dim", a.dim}, {"radius", a.radius}, {"turns", a.turns}});
    } else if (a.kind == "figure-eight") {
        c = sample_figure_eight(a.halves, a.n, a.closed);
        params.update({{"halves", a.halves}, {"closed", a.closed}});
    } else if (a.kind == "half-leaf") {
        c = canonical_half_leaf(a.n);
    } else if (a.kind == "wavelike") {
        const double K = complete_K(a.m);
        const double lo = a.s_lo.value_or(-K);
        const double hi = a.s_hi.value_or(K);
        c = sample_wavelike(a.m, lo, hi, a.n);
        params.update({{"m", a.m}, {"s_lo", lo}, {"s_hi", hi}});
    } else if (a.kind == "propeller") {
        c = elastic_propeller(a.n, a.leaf_length);
        params["leaf_length"] = a.leaf_length;
    } else if (a.kind == "perturbed-circle" || a.kind == "random-drop") {
        if (!a.seed)
            throw usage_error("generate " + a.kind + ": --seed is required");
        params["seed"] = *a.seed;
        if (a.kind == "perturbed-circle") {
            auto pc = perturbed_circle(*a.seed, a.n, a.amplitude);
            params["amplitude"] = a.amplitude;
            params["draws"] = pc.draws;
            c = std::move(pc.curve);
        } else {
            c = random_drop(*a.seed, a.n, a.dim);
            params["dim"] = a.dim;
        }
    } else {
        throw usage_error("generate: unknown kind '" + a.kind +
                          "' (circle, figure-eight, half-leaf, wavelike, propeller, perturbed-circle, random-drop)");
    }
    save_curve(a.out, *c, json{{"generator", a.kind}, {"parameters", params}});

    RunManifest man{"generate " + a.kind, {}, {a.out}};
    for (auto it = params.begin(); it != params.end(); ++it)
        man.parameters[it.key()] = it.value().dump();
    write_manifest(man);
    return exit_ok;
}

// ---------------------------------------------------------------------------

int run_energy(const std::string& in, double lambda, std::optional<int> k)
{
    const DiscreteCurve c = load_curve(in);
    const auto r = energy_report(c, lambda);
    json j{{"length", r.length},
           {"bending", r.bending},
           {"normalized_bending", r.normalized_bending},
           {"total_curvature", r.total_curvature},
           {"lambda", r.lambda},
           {"e_lambda", r.e_lambda}};
    if (k) {
        const auto m = li_yau_margin(c, *k);
        j["li_yau"] = {{"k", *k},
                       {"multiplicity", m.multiplicity},
                       {"bound", m.bound},
                       {"margin", m.margin},
                       {"point", std::vector<double>(m.point.data(), m.point.data() + m.point.size())}};
    }
    print_json(j);
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct FlowArgs {
    std::string in, out, mode, final_curve;
    std::optional<double> lambda, L0;
    long steps = 100000;
    double tol = FlowConfig{}.tol_velocity;
};

int run_flow(const FlowArgs& a)
{
    FlowMode mode;
    double param;
    if (a.mode == "fixed-lambda") {
        if (!a.lambda || a.L0)
            throw usage_error("flow --mode fixed-lambda needs --lambda (and no --L0)");
        mode = FlowMode::fixed_lambda;
        param = *a.lambda;
    } else if (a.mode == "fixed-length") {
        if (a.lambda)
            throw usage_error("flow --mode fixed-length takes --L0, not --lambda");
        mode = FlowMode::fixed_length;
        param = a.L0.value_or(0.0);
    } else {
        throw usage_error("flow: --mode must be fixed-lambda or fixed-length");
    }
    FlowConfig cfg;
    cfg.max_steps = a.steps;
    cfg.tol_velocity = a.tol;
    const auto rep = run(load_curve(a.in), mode, param, cfg);

    std::ostringstream os;
    os << "time,energy,length,roundness,embedded\n";
    for (const auto& r : rep.trace)
        os << fmt(r.time) << ',' << fmt(r.energy) << ',' << fmt(r.length) << ',' << fmt(r.roundness) << ','
           << (r.embedded ? 1 : 0) << '\n';
    write_file(a.out, os.str());

    RunManifest man{"flow", {{"in", a.in}, {"mode", a.mode}, {"steps", std::to_string(a.steps)}, {"tol", fmt(a.tol)}},
                    {a.out}};
    if (a.lambda)
        man.parameters["lambda"] = fmt(*a.lambda);
    if (a.L0)
        man.parameters["L0"] = fmt(*a.L0);
    if (!a.final_curve.empty()) {
        save_curve(a.final_curve, rep.final_state->curve,
                   json{{"generator", "flow"}, {"parameters", {{"in", a.in}, {"mode", a.mode}}}});
        man.outputs.push_back(a.final_curve);
    }
    write_manifest(man);

    print_json({{"mode", to_string(mode)},
                {"converged", rep.converged},
                {"stop_reason", rep.stop_reason},
                {"steps", rep.steps},
                {"rejected_steps", rep.rejected},
                {"final_roundness", rep.final_roundness},
                {"limit_radius", rep.limit_radius},
                {"final_lambda", rep.final_lambda},
                {"final_speed", rep.final_speed},
                {"embedded_throughout", rep.embedded_throughout}});
    return exit_ok;
}

// ---------------------------------------------------------------------------

int run_network_wavelike(double m, int n, const std::string& out)
{
    const auto net = build_wavelike_network(m, n);
    write_file(out, network_to_json(net, {{"generator", "wavelike"}, {"parameters", {{"m", m}, {"n", n}}}}).dump(2) +
                        "\n");
    write_manifest({"network wavelike", {{"m", fmt(m)}, {"n", std::to_string(n)}}, {out}});
    return exit_ok;
}

int run_network_double_bubble(double alpha, int n, const std::string& out)
{
    const auto net = build_double_bubble(alpha, n);
    write_file(out,
               network_to_json(net, {{"generator", "double-bubble"}, {"parameters", {{"alpha", alpha}, {"n", n}}}})
                       .dump(2) +
                   "\n");
    write_manifest({"network double-bubble", {{"alpha", fmt(alpha)}, {"n", std::to_string(n)}}, {out}});
    return exit_ok;
}

int run_network_energy(const std::string& in)
{
    const auto net = load_network(in);
    const auto ang = net.junction_angles();
    json curves = json::array();
    for (const auto& c : net.curves())
        curves.push_back({{"length", length(c)}, {"bending", bending_energy(c)}});
    print_json({{"energy", theta_energy(net)},
                {"threshold", 4.0 * std::sqrt(constants().varpi_star)},
                {"curves", curves},
                {"junction_angles_a", ang.at_a},
                {"junction_angles_b", ang.at_b}});
    return exit_ok;
}

int run_network_sweep(double lo, double hi, int steps, const std::string& out, unsigned threads)
{
    if (!(lo > 0.0 && lo < hi && hi < constants().m_star) || steps < 2)
        throw usage_error("network sweep: need 0 < m-lo < m-hi < m* and steps >= 2");
    const double threshold = 4.0 * std::sqrt(constants().varpi_star);
    std::vector<std::string> rows(static_cast<std::size_t>(steps));
    detail::parallel_for(steps, threads, [&](int i) {
        const double m = lo + (hi - lo) * i / (steps - 1);
        const double e = network_energy_formula(m);
        rows[static_cast<std::size_t>(i)] = fmt(m) + ',' + fmt(e) + ',' + fmt(wavelike_junction_angle(m)) + ',' +
                                            (e < threshold ? "1" : "0") + '\n';
    });
    std::string text = "m,energy,junction_angle,below_threshold\n";
    for (const auto& r : rows)
        text += r;
    write_file(out, text);
    write_manifest({"network sweep", {{"m_lo", fmt(lo)}, {"m_hi", fmt(hi)}, {"steps", std::to_string(steps)}}, {out}});
    return exit_ok;
}

// ---------------------------------------------------------------------------

int run_closure_search(int k, double eps)
{
    const auto found = search_planar_closure(k, eps);
    if (found.empty()) {
        std::cout << "no closures found\n";
        return exit_ok;
    }
    for (const auto& seq : found) {
        for (std::size_t i = 0; i < seq.size(); ++i)
            std::cout << (i ? " " : "") << (seq[i] > 0 ? '+' : '-');
        std::cout << '\n';
    }
    return exit_ok;
}

int run_verify_exact_bounds()
{
    const auto rep = verify_bracket();
    for (const auto& c : rep.checks)
        std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  " << c.detail << '\n';
    return rep.passed() ? exit_ok : exit_verify_failed;
}

int run_verify_all(const VerifyOptions& opt)
{
    bool all = true;
    for (const auto& r : verify_all(opt)) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << std::left
                  << std::setw(26) << r.name << std::right << r.detail << std::endl;
        all = all && r.passed;
    }
    return all ? exit_ok : exit_verify_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Elastic curves and networks: constants, energies, flows, certificates"};
    app.require_subcommand(1);
    unsigned threads = std::max(1U, std::thread::hardware_concurrency());
    app.add_option("--threads", threads, "Worker thread cap")->check(CLI::PositiveNumber);

    auto* constants_cmd = app.add_subcommand("constants", "Print the figure-eight constants as JSON");

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "Sample a curve and write it as CSV or JSON");
    generate_cmd->add_option("kind", gen.kind,
                             "circle | figure-eight | half-leaf | wavelike | propeller | perturbed-circle | random-drop")
        ->required();
    generate_cmd->add_option("--out", gen.out, "Output file (.json for JSON, CSV otherwise)")->required();
    generate_cmd->add_option("--n", gen.n, "Number of samples");
    generate_cmd->add_option("--dim", gen.dim, "Ambient dimension (circle, random-drop)");
    generate_cmd->add_option("--radius", gen.radius, "Circle radius");
    generate_cmd->add_option("--turns", gen.turns, "Circle multiplicity");
    generate_cmd->add_option("--halves", gen.halves, "Number of half-periods of the figure-eight");
    generate_cmd->add_flag("--closed", gen.closed, "Close the figure-eight (even --halves)");
    generate_cmd->add_option("--m", gen.m, "Elliptic parameter (wavelike)");
    generate_cmd->add_option("--s-lo", gen.s_lo, "Arclength start (wavelike, default -K(m))");
    generate_cmd->add_option("--s-hi", gen.s_hi, "Arclength end (wavelike, default K(m))");
    generate_cmd->add_option("--leaf-length", gen.leaf_length, "Leaf length (propeller)");
    generate_cmd->add_option("--amplitude", gen.amplitude, "Radial noise amplitude (perturbed-circle)");
    generate_cmd->add_option("--seed", gen.seed, "Random seed (perturbed-circle, random-drop)");

    std::string energy_in;
    double energy_lambda = 0.0;
    std::optional<int> energy_k;
    auto* energy_cmd = app.add_subcommand("energy", "Energy report of a curve as JSON");
    energy_cmd->add_option("--in", energy_in, "Curve file")->required();
    energy_cmd->add_option("--lambda", energy_lambda, "Length multiplier")->check(CLI::NonNegativeNumber);
    energy_cmd->add_option("--k", energy_k, "Multiplicity for the Li-Yau margin")->check(CLI::Range(2, 1000));

    FlowArgs fl;
    auto* flow_cmd = app.add_subcommand("flow", "Run the elastic flow and write its trace");
    flow_cmd->add_option("--in", fl.in, "Initial closed curve")->required();
    flow_cmd->add_option("--mode", fl.mode, "fixed-lambda | fixed-length")->required();
    flow_cmd->add_option("--lambda", fl.lambda, "Multiplier (fixed-lambda)")->check(CLI::NonNegativeNumber);
    flow_cmd->add_option("--L0", fl.L0, "Target length (fixed-length, default: initial length)")
        ->check(CLI::PositiveNumber);
    flow_cmd->add_option("--steps", fl.steps, "Maximum number of accepted steps")->check(CLI::PositiveNumber);
    flow_cmd->add_option("--tol", fl.tol, "Stop when the largest node speed drops below this")
        ->check(CLI::PositiveNumber);
    flow_cmd->add_option("--out", fl.out, "Trace CSV")->required();
    flow_cmd->add_option("--final", fl.final_curve, "Also write the final curve here");

    auto* network_cmd = app.add_subcommand("network", "Theta-networks");
    network_cmd->require_subcommand(1);
    double net_m = 0.75, net_alpha = 3.0 * std::numbers::pi / 4.0, m_lo = 0.5, m_hi = 0.82;
    int net_n = 512, sweep_steps = 100;
    std::string net_out, net_in;
    auto* wavelike_cmd = network_cmd->add_subcommand("wavelike", "Build the wavelike competitor network");
    wavelike_cmd->add_option("--m", net_m, "Elliptic parameter, below m*");
    wavelike_cmd->add_option("--n", net_n, "Samples per curve");
    wavelike_cmd->add_option("--out", net_out, "Network JSON")->required();
    auto* bubble_cmd = network_cmd->add_subcommand("double-bubble", "Build a double bubble from circular arcs");
    bubble_cmd->add_option("--alpha", net_alpha, "Junction angle between each arc and the chord");
    bubble_cmd->add_option("--n", net_n, "Samples per curve");
    bubble_cmd->add_option("--out", net_out, "Network JSON")->required();
    auto* net_energy_cmd = network_cmd->add_subcommand("energy", "Energy of a network file");
    net_energy_cmd->add_option("--in", net_in, "Network JSON")->required();
    auto* sweep_cmd = network_cmd->add_subcommand("sweep", "Tabulate the network energy formula over m");
    sweep_cmd->add_option("--m-lo", m_lo, "First m");
    sweep_cmd->add_option("--m-hi", m_hi, "Last m");
    sweep_cmd->add_option("--steps", sweep_steps, "Grid points");
    sweep_cmd->add_option("--out", net_out, "Output CSV")->required();

    int closure_k = 3;
    double closure_eps = 1e-6;
    auto* closure_cmd = app.add_subcommand("closure-search", "Search planar closed k-leafed sign sequences");
    closure_cmd->add_option("--k", closure_k, "Number of leaves")->required();
    closure_cmd->add_option("--eps", closure_eps, "Closure tolerance on the turning angle");

    auto* verify_cmd = app.add_subcommand("verify", "Certificates and the acceptance suite");
    verify_cmd->require_subcommand(1);
    auto* verify_bounds_cmd = verify_cmd->add_subcommand("exact-bounds", "Exact series bracket of m*");
    VerifyOptions vopt;
    auto* verify_all_cmd = verify_cmd->add_subcommand("all", "Run every acceptance criterion");
    verify_all_cmd->add_option("--seed", vopt.seed, "First seed of the seeded batches");
    verify_all_cmd->add_option("--flow-seeds", vopt.flow_seeds, "Number of seeded flow runs")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return exit_usage;
    }

    try {
        if (*constants_cmd) {
            const auto j = constants_json();
            print_json(j);
            return exit_ok;
        }
        if (*generate_cmd)
            return run_generate(gen);
        if (*energy_cmd)
            return run_energy(energy_in, energy_lambda, energy_k);
        if (*flow_cmd)
            return run_flow(fl);
        if (*wavelike_cmd)
            return run_network_wavelike(net_m, net_n, net_out);
        if (*bubble_cmd)
            return run_network_double_bubble(net_alpha, net_n, net_out);
        if (*net_energy_cmd)
            return run_network_energy(net_in);
        if (*sweep_cmd)
            return run_network_sweep(m_lo, m_hi, sweep_steps, net_out, threads);
        if (*closure_cmd)
            return run_closure_search(closure_k, closure_eps);
        if (*verify_bounds_cmd)
            return run_verify_exact_bounds();
        if (*verify_all_cmd) {
            vopt.threads = threads;
            return run_verify_all(vopt);
        }
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_verify_failed;
    }
    return exit_usage;
}
