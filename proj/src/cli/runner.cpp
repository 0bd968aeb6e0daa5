#include "fluorsq/cli/runner.hpp"

#include "fluorsq/dressed.hpp"
#include "fluorsq/errors.hpp"
#include "fluorsq/spectrum.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

namespace fluorsq::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string p_suffix(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

SystemParams with_p(SystemParams s, double p) {
    s.p = p;
    return s;
}

json state_diagnostics(const StationaryProblem& problem) {
    const auto& st = problem.state;
    const double trace = st.psi(0).real() + st.psi(1).real() + st.psi(2).real() + st.rho44;
    return json{{"p", problem.params.p},
                {"populations", {st.psi(0).real(), st.psi(1).real(), st.psi(2).real(), st.rho44}},
                {"trace", trace},
                {"hermiticity_defect", hermiticity_defect(st)},
                {"residual", residual_norm(problem.system, st)},
                {"spectral_abscissa", spectral_abscissa(problem.system)}};
}

json eigen_json(const DressedBasis& basis) {
    return json::array({basis.lambdas(0), basis.lambdas(1), basis.lambdas(2), basis.lambdas(3)});
}

json labels_json(const DressedBasis& basis) {
    const auto& l = basis.labels;
    return json{{"alpha", basis.lambda(l.alpha)},
                {"beta", basis.lambda(l.beta)},
                {"kappa", basis.lambda(l.kappa)},
                {"delta", basis.lambda(l.delta)}};
}

// Dressed eigenvalues are informative for every command; a degenerate
// spectrum only disables that block.
std::optional<DressedBasis> try_dressed(const SystemParams& params, std::vector<std::string>& warnings) {
    try {
        return dressed_basis(params);
    } catch (const Error& e) {
        warnings.emplace_back(std::string("dressed analysis skipped: ") + e.what());
        return std::nullopt;
    }
}

struct Context {
    const RunConfig& config;
    SystemParams params;
    std::vector<double> grid;
    RunResult result;
    json timings = json::object();
    json diagnostics = json::array();
    json dressed = json::object();
};

void run_spectrum(Context& ctx) {
    const auto ps = ctx.config.resolved_p_values();
    ctx.result.table.add("omega", ctx.grid);
    std::optional<SpectrumSeries> first;
    for (double p : ps) {
        const auto start = Clock::now();
        const auto problem = prepare(with_p(ctx.params, p));
        auto series = sweep(problem, ctx.grid, ctx.config.channel, ctx.params.theta);
        ctx.timings["sweep_p" + p_suffix(p) + "_ms"] = elapsed_ms(start);
        auto diag = state_diagnostics(problem);
        diag["max_abs_imag"] = series.max_abs_imag();
        ctx.diagnostics.push_back(diag);
        ctx.result.table.add(ps.size() == 1 ? "value" : "S_p" + p_suffix(p), series.values);
        if (!first) first = std::move(series);
    }
    if (auto basis = try_dressed(ctx.params, ctx.result.warnings)) {
        ctx.dressed["eigenvalues"] = eigen_json(*basis);
        ctx.dressed["labels"] = labels_json(label_from_spectrum(*basis, *first));
    }
}

void run_decompose(Context& ctx) {
    const auto ps = ctx.config.resolved_p_values();
    if (ps.size() != 1) throw ConfigError("decompose takes exactly one p value");
    if (ctx.params.theta != 0.0) throw ConfigError("decompose is defined at theta = 0");
    if (ctx.config.channel != Channel::a) throw ConfigError("decompose applies to channel a");

    const auto start = Clock::now();
    const auto problem = prepare(with_p(ctx.params, ps.front()));
    const auto series = sweep(problem, ctx.grid, Channel::a, 0.0, true);
    ctx.timings["sweep_ms"] = elapsed_ms(start);
    auto diag = state_diagnostics(problem);
    diag["max_abs_imag"] = series.max_abs_imag();
    ctx.diagnostics.push_back(diag);

    auto& t = ctx.result.table;
    t.add("omega", ctx.grid);
    t.add("value", series.values);
    t.add("S1", series.components->s1);
    t.add("S2", series.components->s2);
    t.add("S12", series.components->s12);
    t.add("S21", series.components->s21);
    if (auto basis = try_dressed(ctx.params, ctx.result.warnings)) ctx.dressed["eigenvalues"] = eigen_json(*basis);
}

json pair_json(const DressedPair& pair) {
    return json{{"omega_ab", pair.omega_ij},
                {"gamma_ab", pair.gamma_ij},
                {"pop_alpha", pair.pop_i},
                {"pop_beta", pair.pop_j}};
}

void run_dressed(Context& ctx) {
    const auto ps = ctx.config.resolved_p_values();
    const auto start = Clock::now();
    const DressedBasis bare = dressed_basis(ctx.params);
    ctx.dressed["eigenvalues"] = eigen_json(bare);
    if (bare.closed_form_deviation) ctx.dressed["closed_form_deviation"] = *bare.closed_form_deviation;
    ctx.result.table.add("omega", ctx.grid);

    json pairs = json::array();
    std::optional<DressedBasis> reference;
    for (double p : ps) {
        const SystemParams params = with_p(ctx.params, p);
        const auto problem = prepare(params);
        const auto series = sweep(problem, ctx.grid, ctx.config.channel, 0.0);
        const DressedBasis basis = label_from_spectrum(bare, series);
        if (!reference) reference = basis;
        const auto pops = dressed_populations(basis, problem.state);
        const DressedPair pair = alpha_beta(basis, problem.params, pops);

        std::vector<double> approx(ctx.grid.size());
        for (std::size_t i = 0; i < ctx.grid.size(); ++i) {
            approx[i] = ctx.config.channel == Channel::a ? lorentzian_a(basis, pair, problem.params, ctx.grid[i])
                                                         : lorentzian_b(basis, pair, ctx.grid[i]);
        }
        const bool single = ps.size() == 1;
        ctx.result.table.add(single ? "value" : "S_p" + p_suffix(p), series.values);
        ctx.result.table.add(single ? "lorentzian" : "L_p" + p_suffix(p), std::move(approx));

        auto entry = pair_json(pair);
        entry["p"] = p;
        entry["labels"] = labels_json(basis);
        entry["dressed_populations"] = {pops(0), pops(1), pops(2), pops(3)};
        entry["deepest_dip"] = deepest_dip(series);
        pairs.push_back(entry);
        ctx.diagnostics.push_back(state_diagnostics(problem));
        if (pair.gamma_ij < 0.0) ctx.result.warnings.emplace_back("negative dressed coherence decay rate");
    }
    const auto& basis = *reference;
    ctx.dressed["labels"] = labels_json(basis);
    ctx.dressed["omega_ab"] = basis.lambda(basis.labels.alpha) - basis.lambda(basis.labels.beta);
    ctx.dressed["gamma_ab_p0"] = coherence_decay_rate(basis, basis.labels.alpha, basis.labels.beta, with_p(ctx.params, 0.0));
    ctx.dressed["gamma_ab_p1"] = coherence_decay_rate(basis, basis.labels.alpha, basis.labels.beta, with_p(ctx.params, 1.0));
    ctx.dressed["pairs"] = pairs;
    ctx.timings["dressed_ms"] = elapsed_ms(start);
}

void run_gamma_scan(Context& ctx) {
    std::vector<double> ps = ctx.config.p_values;
    if (ps.empty()) ps = linear_grid(ctx.config.full_range ? -1.0 : 0.0, 1.0, kGammaScanPoints);

    const auto start = Clock::now();
    const auto problem = prepare(ctx.params);
    const auto series = sweep(problem, ctx.grid, ctx.config.channel, 0.0);
    const DressedBasis basis = label_from_spectrum(dressed_basis(problem.params), series);
    const int al = basis.labels.alpha, be = basis.labels.beta;

    std::vector<double> gammas;
    gammas.reserve(ps.size());
    for (double p : ps) {
        if (!(p >= -1.0 && p <= 1.0)) throw ConfigError("every p value must lie in [-1, 1]");
        gammas.push_back(coherence_decay_rate(basis, al, be, with_p(problem.params, p)));
    }
    ctx.result.table.add("p", ps);
    ctx.result.table.add("gamma_ab", gammas);

    const DecayRateTerms terms = decay_rate_terms(basis, al, be);
    const double g = problem.params.gamma1 * problem.params.gamma2;
    ctx.dressed["eigenvalues"] = eigen_json(basis);
    ctx.dressed["labels"] = labels_json(basis);
    ctx.dressed["omega_ab"] = basis.lambda(al) - basis.lambda(be);
    ctx.dressed["intercept"] = coherence_decay_rate(basis, al, be, with_p(problem.params, 0.0));
    ctx.dressed["slope"] = terms.gprime * std::sqrt(g);
    ctx.diagnostics.push_back(state_diagnostics(problem));
    ctx.timings["gamma_scan_ms"] = elapsed_ms(start);
}

std::string plot_title(const RunConfig& c) {
    std::string title = c.preset ? *c.preset + ": " : std::string();
    switch (c.command) {
    case Command::gamma_scan: return title + "dressed coherence decay rate vs p";
    case Command::decompose: return title + "S_a decomposition (theta = 0)";
    default: return title + "S_" + std::string(to_string(c.channel)) + "(omega, theta)";
    }
}

} // namespace

RunResult compute(const RunConfig& config) {
    if (config.command == Command::figure) throw ConfigError("figure presets must be resolved before compute()");
    config.check();

    Context ctx{config, validate(config.params), {}, {}};
    ctx.grid = linear_grid(config.grid.min, config.grid.max, static_cast<std::size_t>(config.grid.points));
    ctx.result.warnings = warnings(ctx.params);

    const auto start = Clock::now();
    switch (config.command) {
    case Command::spectrum: run_spectrum(ctx); break;
    case Command::decompose: run_decompose(ctx); break;
    case Command::dressed: run_dressed(ctx); break;
    case Command::gamma_scan: run_gamma_scan(ctx); break;
    case Command::figure: break;
    }
    ctx.timings["total_ms"] = elapsed_ms(start);

    RunConfig resolved = config;
    if (resolved.p_values.empty() && config.command != Command::gamma_scan)
        resolved.p_values = config.resolved_p_values();
    json meta = config_to_json(resolved);
    meta["meta"] = json{{"version", kVersion},
                        {"timings", ctx.timings},
                        {"dressed", ctx.dressed},
                        {"steady_state", ctx.diagnostics},
                        {"warnings", ctx.result.warnings}};
    if (config.preset) meta["meta"]["preset"] = *config.preset;
    ctx.result.meta = std::move(meta);
    return std::move(ctx.result);
}

int run(const RunConfig& config, std::ostream& err) {
    try {
        const RunResult result = compute(config);
        for (const auto& w : result.warnings) err << "warning: " << w << '\n';
        const std::string stem = config.output.empty() ? "fluorsq_" + std::string(to_string(config.command))
                                                       : config.output;
        if (config.formats.csv) write_atomic(stem + ".csv", to_csv(result.table));
        if (config.formats.json) write_atomic(stem + ".meta.json", result.meta.dump(2) + "\n");
        if (config.formats.svg) write_atomic(stem + ".svg", to_svg(result.table, plot_title(config)));
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        if (e.is_input_error()) {
            err << "config error: " << e.what() << '\n';
            return kExitConfig;
        }
        err << "numerical failure in " << to_string(config.command) << ": " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int main_with_args(int argc, char** argv) {
    CLI::App app{"Phase-dependent squeezing spectra of a driven Y-type atom"};
    app.require_subcommand(1);

    std::string config_path, out, channel;
    std::vector<std::string> formats;
    std::vector<double> p_list;
    std::optional<double> omega_min, omega_max, theta;
    std::optional<int> points;
    bool full_range = false;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out, "output path stem");
    app.add_option("--format", formats, "comma-separated subset of csv,json,svg")->delimiter(',');
    app.add_option("--omega-min", omega_min, "lower end of the frequency grid");
    app.add_option("--omega-max", omega_max, "upper end of the frequency grid");
    app.add_option("--points", points, "number of grid points");
    app.add_option("--p", p_list, "comma-separated interference parameters")->delimiter(',');
    app.add_option("--theta", theta, "quadrature phase (radians)");
    app.add_option("--channel", channel, "a (upper transitions) or b (lower transition)");
    app.add_flag("--full-range", full_range, "gamma-scan over p in [-1, 1] instead of [0, 1]");

    std::string figure_id;
    for (const char* name : {"spectrum", "decompose", "dressed", "gamma-scan"}) {
        app.add_subcommand(name)->fallthrough();
    }
    auto* figure = app.add_subcommand("figure", "reproduce a figure preset")->fallthrough();
    figure->add_option("id", figure_id, "fig2a|fig2b|fig3|fig4|fig5|fig6")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        RunConfig config;
        if (name == "figure") {
            config = figure_preset(figure_id);
            if (out.empty()) out = figure_id;
        } else {
            if (config_path.empty()) throw ConfigError("--config is required for '" + name + "'");
            config = load_config(config_path);
            config.command = parse_command(name);
        }
        if (!out.empty()) config.output = out;
        if (!formats.empty()) {
            config.formats = Formats{false, false, false};
            for (const auto& f : formats) {
                if (f == "csv") config.formats.csv = true;
                else if (f == "json") config.formats.json = true;
                else if (f == "svg") config.formats.svg = true;
                else throw ConfigError("unknown format '" + f + "'");
            }
        }
        if (omega_min) config.grid.min = *omega_min;
        if (omega_max) config.grid.max = *omega_max;
        if (points) config.grid.points = *points;
        if (!p_list.empty()) config.p_values = p_list;
        if (theta) config.params.theta = *theta;
        if (!channel.empty()) {
            if (channel == "a") config.channel = Channel::a;
            else if (channel == "b") config.channel = Channel::b;
            else throw ConfigError("--channel must be 'a' or 'b'");
        }
        if (full_range) config.full_range = true;
        config.check();
        return run(config, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace fluorsq::cli
