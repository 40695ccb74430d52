// Command-line front end: dataset ingestion, censoring-scheme specification,
// fitting, solver benchmarking, and seeded sample generation.
//
// Exit codes: 0 success, 2 argument errors (including missing files and
// unsupported family/regime combinations), 3 data-domain errors, 4
// convergence failures. Reports are a single JSON document on stdout;
// --pretty switches to a human-readable rendering. Diagnostics go to stderr.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "evdfit/evdfit.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_data = 3;
constexpr int exit_convergence = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

evdfit::Family parse_family(const std::string& s) {
    if (s == "gumbel") return evdfit::Family::gumbel;
    if (s == "lev") return evdfit::Family::lev;
    if (s == "weibull") return evdfit::Family::weibull;
    throw UsageError("unknown family: " + s);
}

std::vector<int> parse_removals(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size() || v < 0) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad removals list entry: '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("empty removals list");
    return out;
}

// precedence: --seed flag > EVDFIT_SEED environment variable > 0
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("EVDFIT_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw UsageError("EVDFIT_SEED is not an integer");
        return v;
    }
    return 0;
}

using AnyData = std::variant<evdfit::Sample, evdfit::CensoredSample, evdfit::ProgressiveSample>;

struct DataOptions {
    std::string path;
    std::string censoring = "none";
    std::optional<int> total_n;
    std::optional<double> censor_time;
};

AnyData load_data(const DataOptions& opt) {
    using namespace evdfit;
    if (opt.censoring == "progressive") {
        const auto rows = read_progressive_dataset(opt.path);
        std::vector<double> values;
        std::vector<int> removals;
        for (const auto& row : rows) {
            values.push_back(row.value);
            removals.push_back(row.removals);
        }
        ProgressiveSample p(std::move(values), std::move(removals));
        if (opt.total_n && *opt.total_n != p.total_n())
            throw UsageError("--n disagrees with the removal counts in the file");
        return p;
    }
    auto values = read_plain_dataset(opt.path);
    if (opt.censoring == "none") {
        if (opt.total_n && *opt.total_n != static_cast<int>(values.size()))
            throw UsageError("--n disagrees with the number of values in the file");
        return Sample(std::move(values));
    }
    if (!opt.total_n) throw UsageError("--n is required for " + opt.censoring + " censoring");
    if (opt.censoring == "type2")
        return CensoredSample::type2(std::move(values), *opt.total_n);
    if (opt.censoring == "type1") {
        if (!opt.censor_time) throw UsageError("--time is required for type1 censoring");
        return CensoredSample::type1(std::move(values), *opt.total_n, *opt.censor_time);
    }
    throw UsageError("unknown censoring mode: " + opt.censoring);
}

evdfit::ReportInput describe(const AnyData& data, const DataOptions& opt,
                             evdfit::Family family) {
    using namespace evdfit;
    ReportInput in;
    in.source = opt.path;
    in.family = family;
    if (const auto* s = std::get_if<Sample>(&data)) {
        in.regime = Regime::complete;
        in.n = static_cast<int>(s->size());
        in.r = in.n;
    } else if (const auto* c = std::get_if<CensoredSample>(&data)) {
        in.regime = c->mode() == CensoringMode::type1 ? Regime::type1 : Regime::type2;
        in.n = c->total_n();
        in.r = c->num_observed();
        if (c->mode() == CensoringMode::type1) in.censor_time = c->censor_time();
    } else {
        const auto& p = std::get<ProgressiveSample>(data);
        in.regime = Regime::progressive;
        in.n = p.total_n();
        in.r = p.num_observed();
        in.removals = p.removals();
    }
    return in;
}

std::string pretty_fit_report(const evdfit::ReportInput& in, const std::string& method,
                              const evdfit::ReportConfig& cfg, double primary,
                              double secondary, int iterations, const std::string& termination,
                              double final_residual, double log_likelihood) {
    using namespace evdfit;
    char buf[256];
    std::string out;
    out += "evdfit fit: " + std::string(to_string(in.family)) + " / " +
           (in.regime == Regime::complete ? "complete" : to_string(in.regime)) + "\n";
    std::snprintf(buf, sizeof buf, "  data: %s (n=%d, r=%d)\n", in.source.c_str(), in.n, in.r);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "  method: %s (tol %g, max-iter %d, init %g, acceleration %s)\n",
                  method.c_str(), cfg.tolerance, cfg.max_iterations, cfg.initial,
                  cfg.aitken ? "aitken" : "off");
    out += buf;
    std::snprintf(buf, sizeof buf, "  %s = %.6f\n", in.family == Family::weibull ? "beta" : "sigma",
                  primary);
    out += buf;
    std::snprintf(buf, sizeof buf, "  %s = %.6f\n", in.family == Family::weibull ? "theta" : "mu",
                  secondary);
    out += buf;
    std::snprintf(buf, sizeof buf, "  solver: %d iterations, %s, final residual %.3g\n",
                  iterations, termination.c_str(), final_residual);
    out += buf;
    std::snprintf(buf, sizeof buf, "  log-likelihood: %.6f\n", log_likelihood);
    out += buf;
    return out;
}

int run_fit(const DataOptions& data_opt, const std::string& family_name,
            const std::string& method, const evdfit::SolverConfig& solver_cfg, bool pretty) {
    using namespace evdfit;
    const Family family = parse_family(family_name);
    const AnyData data = load_data(data_opt);
    const ReportInput input = describe(data, data_opt, family);

    ReportConfig cfg_echo;
    cfg_echo.tolerance = solver_cfg.tolerance;
    cfg_echo.max_iterations = solver_cfg.max_iterations;
    cfg_echo.aitken = solver_cfg.aitken;
    cfg_echo.initial = solver_cfg.initial.value_or(std::visit(
        [&](const auto& d) { return default_initial(d, family); }, data));

    double primary = 0.0;
    double secondary = 0.0;
    double log_likelihood = 0.0;
    int iterations = 0;
    std::string termination;
    double final_residual = 0.0;

    if (method == "oracle") {
        const OracleResult res =
            std::visit([&](const auto& d) { return oracle_fit(d, family); }, data);
        primary = res.primary;
        secondary = res.secondary;
        log_likelihood = res.log_likelihood;
        iterations = res.refine_evaluations;
        termination = "converged";
        final_residual = res.refined.hi - res.refined.lo;
    } else {
        const Method m = method == "newton" ? Method::newton : Method::fixed_point;
        if (method != "newton" && method != "fixed-point")
            throw UsageError("unknown method: " + method);
        const FitReport report =
            std::visit([&](const auto& d) { return fit(d, family, solver_cfg, m); }, data);
        if (report.solver.termination == Termination::max_iterations_exceeded)
            throw convergence_error("iteration budget exhausted without convergence");
        primary = report.primary;
        secondary = report.secondary;
        log_likelihood = report.log_likelihood;
        iterations = report.solver.iterations;
        termination = to_string(report.solver.termination);
        final_residual =
            report.solver.residual_trace.empty() ? 0.0 : report.solver.residual_trace.back();
    }

    if (pretty)
        std::cout << pretty_fit_report(input, method, cfg_echo, primary, secondary, iterations,
                                       termination, final_residual, log_likelihood);
    else
        std::cout << render_fit_report(input, method, cfg_echo, primary, secondary, iterations,
                                       termination, final_residual, log_likelihood)
                  << "\n";
    return exit_ok;
}

struct SimulationOptions {
    std::string family;
    std::optional<double> mu, sigma, theta, beta;
    int n = 0;
    std::string censoring = "none";
    std::optional<int> observed_count;
    std::optional<double> censor_time;
    std::optional<std::string> removals_csv;
    std::optional<std::uint64_t> seed;
};

evdfit::AnyParams parse_params(const SimulationOptions& opt) {
    using namespace evdfit;
    const Family family = parse_family(opt.family);
    try {
        switch (family) {
            case Family::gumbel:
                if (!opt.mu || !opt.sigma) throw UsageError("gumbel needs --mu and --sigma");
                return GumbelParams(*opt.mu, *opt.sigma);
            case Family::lev:
                if (!opt.mu || !opt.sigma) throw UsageError("lev needs --mu and --sigma");
                return LevParams(*opt.mu, *opt.sigma);
            case Family::weibull:
                if (!opt.theta || !opt.beta) throw UsageError("weibull needs --theta and --beta");
                return WeibullParams(*opt.theta, *opt.beta);
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown family");
}

evdfit::CensoringScheme parse_scheme(const SimulationOptions& opt) {
    using namespace evdfit;
    if (opt.censoring == "none") return CensoringScheme::none();
    if (opt.censoring == "type2") {
        if (!opt.observed_count) throw UsageError("type2 scheme needs --r");
        return CensoringScheme::type2(*opt.observed_count);
    }
    if (opt.censoring == "type1") {
        if (!opt.censor_time) throw UsageError("type1 scheme needs --time");
        return CensoringScheme::type1(*opt.censor_time);
    }
    if (opt.censoring == "progressive") {
        if (!opt.removals_csv) throw UsageError("progressive scheme needs --removals");
        return CensoringScheme::progressive(parse_removals(*opt.removals_csv));
    }
    throw UsageError("unknown censoring mode: " + opt.censoring);
}

int run_simulate(const SimulationOptions& opt, const std::optional<std::string>& out_path) {
    using namespace evdfit;
    if (opt.n < 1) throw UsageError("--n must be at least 1");
    const AnyParams params = parse_params(opt);
    const CensoringScheme scheme = parse_scheme(opt);
    const std::uint64_t seed = resolve_seed(opt.seed);

    const Sample complete = std::visit(
        [&](const auto& p) { return draw_sample(p, opt.n, seed); }, params);
    const CensoredData data =
        apply_censoring(complete, scheme, evdfit::detail::splitmix64(seed));

    std::ostringstream body;
    if (const auto* s = std::get_if<Sample>(&data)) {
        write_plain_dataset(body, s->values());
    } else if (const auto* c = std::get_if<CensoredSample>(&data)) {
        write_plain_dataset(body, c->observed());
    } else {
        const auto& p = std::get<ProgressiveSample>(data);
        write_progressive_dataset(body, p.observed(), p.removals());
    }

    if (out_path) {
        std::ofstream out(*out_path);
        if (!out) throw file_error("cannot write file: " + *out_path);
        out << body.str();
    } else {
        std::cout << body.str();
    }
    return exit_ok;
}

std::vector<evdfit::Method> parse_methods(const std::string& csv) {
    std::vector<evdfit::Method> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "fixed-point")
            out.push_back(evdfit::Method::fixed_point);
        else if (item == "newton")
            out.push_back(evdfit::Method::newton);
        else
            throw UsageError("unknown method in --methods: '" + item + "'");
    }
    if (out.empty()) throw UsageError("empty --methods list");
    return out;
}

int run_benchmark(const std::optional<DataOptions>& data_opt, const std::string& family_name,
                  const std::string& methods_csv, const evdfit::SolverConfig& solver_cfg,
                  bool simulate, const SimulationOptions& sim_opt, int replications,
                  bool pretty) {
    using namespace evdfit;
    const auto methods = parse_methods(methods_csv);

    JsonBuilder j;
    j.begin_object();
    j.key("tool").value("evdfit");
    j.key("version").value(tool_version);
    j.key("command").value("benchmark");

    std::string pretty_out = "evdfit benchmark\n";
    char buf[256];

    if (simulate) {
        if (replications < 1) throw UsageError("--replications must be at least 1");
        SimConfig config{parse_params(sim_opt), sim_opt.n, parse_scheme(sim_opt),
                         resolve_seed(sim_opt.seed), replications};
        const auto table = benchmark_iterations(config, methods, solver_cfg);

        j.key("simulation").begin_object();
        j.key("family").value(to_string(family_of(config.params)));
        j.key("n").value(config.n);
        j.key("censoring").value(sim_opt.censoring);
        j.key("seed").value(config.seed);
        j.key("replications").value(config.replications);
        j.end_object();
        j.key("rows").begin_array();
        for (const auto& row : table) {
            j.begin_object();
            j.key("method").value(to_string(row.method));
            j.key("replications").value(row.replications);
            j.key("failures").value(row.failures);
            j.key("min_iterations").value(row.min_iterations);
            j.key("median_iterations").value(row.median_iterations);
            j.key("max_iterations").value(row.max_iterations);
            j.end_object();
            std::snprintf(buf, sizeof buf,
                          "  %-12s reps=%d failures=%d iterations min/median/max = %d/%.1f/%d\n",
                          to_string(row.method), row.replications, row.failures,
                          row.min_iterations, row.median_iterations, row.max_iterations);
            pretty_out += buf;
        }
        j.end_array();
    } else {
        if (!data_opt) throw UsageError("benchmark needs a dataset or --simulate");
        const Family family = parse_family(family_name);
        const AnyData data = load_data(*data_opt);
        const ReportInput input = describe(data, *data_opt, family);
        detail::append_input(j, input);
        j.key("rows").begin_array();
        for (Method m : methods) {
            const FitReport report = std::visit(
                [&](const auto& d) { return fit(d, family, solver_cfg, m); }, data);
            j.begin_object();
            j.key("method").value(to_string(m));
            j.key("estimate").value(report.primary);
            j.key("iterations").value(report.solver.iterations);
            j.key("termination").value(to_string(report.solver.termination));
            j.end_object();
            std::snprintf(buf, sizeof buf, "  %-12s estimate=%.6f iterations=%d (%s)\n",
                          to_string(m), report.primary, report.solver.iterations,
                          to_string(report.solver.termination));
            pretty_out += buf;
        }
        j.end_array();
    }
    j.end_object();

    if (pretty)
        std::cout << pretty_out;
    else
        std::cout << j.str() << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum likelihood fitting of extreme value distributions via fixed-point iteration"};
    app.require_subcommand(1);

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit a distribution to a dataset");
    DataOptions fit_data;
    std::string fit_family;
    std::string fit_method = "fixed-point";
    double fit_tol = 5e-5;
    std::optional<double> fit_init;
    int fit_max_iter = 500;
    bool fit_accelerate = false;
    bool fit_no_fallback = false;
    bool fit_pretty = false;
    fit_cmd->add_option("data", fit_data.path, "dataset file")->required();
    fit_cmd->add_option("--family", fit_family, "gumbel | lev | weibull")->required();
    fit_cmd->add_option("--censoring", fit_data.censoring, "none | type1 | type2 | progressive");
    fit_cmd->add_option("--n", fit_data.total_n, "total items on test (type1/type2)");
    fit_cmd->add_option("--time", fit_data.censor_time, "type1 censoring time");
    fit_cmd->add_option("--method", fit_method, "fixed-point | newton | oracle");
    fit_cmd->add_option("--tol", fit_tol, "stopping tolerance");
    fit_cmd->add_option("--init", fit_init, "initial value for the iteration");
    fit_cmd->add_option("--max-iter", fit_max_iter, "iteration cap");
    fit_cmd->add_flag("--accelerate", fit_accelerate, "Aitken delta-squared acceleration");
    fit_cmd->add_flag("--no-fallback", fit_no_fallback, "disable the bisection fallback");
    fit_cmd->add_flag("--pretty", fit_pretty, "human-readable report");

    // benchmark
    auto* bench_cmd = app.add_subcommand("benchmark", "compare solvers on one dataset or a simulation");
    DataOptions bench_data;
    std::string bench_family;
    std::string bench_methods = "fixed-point,newton";
    bool bench_simulate = false;
    SimulationOptions bench_sim;
    int bench_replications = 100;
    double bench_tol = 5e-5;
    std::optional<double> bench_init;
    int bench_max_iter = 500;
    bool bench_pretty = false;
    bench_cmd->add_option("data", bench_data.path, "dataset file");
    bench_cmd->add_option("--family", bench_family, "gumbel | lev | weibull");
    bench_cmd->add_option("--censoring", bench_data.censoring,
                          "none | type1 | type2 | progressive");
    bench_cmd->add_option("--n", bench_data.total_n, "total items on test");
    bench_cmd->add_option("--time", bench_data.censor_time, "type1 censoring time");
    bench_cmd->add_option("--methods", bench_methods, "comma-separated solver list");
    bench_cmd->add_flag("--simulate", bench_simulate, "benchmark over seeded replications");
    bench_cmd->add_option("--replications", bench_replications, "simulation replications");
    bench_cmd->add_option("--mu", bench_sim.mu, "true location (gumbel/lev)");
    bench_cmd->add_option("--sigma", bench_sim.sigma, "true scale (gumbel/lev)");
    bench_cmd->add_option("--theta", bench_sim.theta, "true scale (weibull)");
    bench_cmd->add_option("--beta", bench_sim.beta, "true shape (weibull)");
    bench_cmd->add_option("--r", bench_sim.observed_count, "type2 observed count");
    bench_cmd->add_option("--removals", bench_sim.removals_csv, "progressive removals CSV");
    bench_cmd->add_option("--seed", bench_sim.seed, "simulation seed");
    bench_cmd->add_option("--tol", bench_tol, "stopping tolerance");
    bench_cmd->add_option("--init", bench_init, "initial value");
    bench_cmd->add_option("--max-iter", bench_max_iter, "iteration cap");
    bench_cmd->add_flag("--pretty", bench_pretty, "human-readable table");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "generate a seeded dataset");
    SimulationOptions sim;
    std::optional<std::string> sim_out;
    sim_cmd->add_option("--family", sim.family, "gumbel | lev | weibull")->required();
    sim_cmd->add_option("--mu", sim.mu, "location (gumbel/lev)");
    sim_cmd->add_option("--sigma", sim.sigma, "scale (gumbel/lev)");
    sim_cmd->add_option("--theta", sim.theta, "scale (weibull)");
    sim_cmd->add_option("--beta", sim.beta, "shape (weibull)");
    sim_cmd->add_option("--n", sim.n, "sample size")->required();
    sim_cmd->add_option("--censoring", sim.censoring, "none | type1 | type2 | progressive");
    sim_cmd->add_option("--r", sim.observed_count, "type2 observed count");
    sim_cmd->add_option("--time", sim.censor_time, "type1 censoring time");
    sim_cmd->add_option("--removals", sim.removals_csv, "progressive removals CSV");
    sim_cmd->add_option("--seed", sim.seed, "generator seed");
    sim_cmd->add_option("--out", sim_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "evdfit: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (fit_cmd->parsed()) {
            evdfit::SolverConfig cfg;
            cfg.initial = fit_init;
            cfg.tolerance = fit_tol;
            cfg.max_iterations = fit_max_iter;
            cfg.aitken = fit_accelerate;
            cfg.use_fallback = !fit_no_fallback;
            return run_fit(fit_data, fit_family, fit_method, cfg, fit_pretty);
        }
        if (bench_cmd->parsed()) {
            evdfit::SolverConfig cfg;
            cfg.initial = bench_init;
            cfg.tolerance = bench_tol;
            cfg.max_iterations = bench_max_iter;
            if (bench_simulate) {
                if (bench_sim.family.empty()) bench_sim.family = bench_family;
                if (!bench_data.total_n) throw UsageError("--simulate needs --n");
                bench_sim.n = *bench_data.total_n;
                bench_sim.censoring = bench_data.censoring;
                if (bench_data.censor_time) bench_sim.censor_time = bench_data.censor_time;
            }
            const std::optional<DataOptions> data_opt =
                bench_data.path.empty() ? std::nullopt : std::make_optional(bench_data);
            if (bench_simulate && data_opt)
                throw UsageError("--simulate and a dataset are mutually exclusive");
            return run_benchmark(data_opt, bench_family, bench_methods, cfg, bench_simulate,
                                 bench_sim, bench_replications, bench_pretty);
        }
        return run_simulate(sim, sim_out);
    } catch (const UsageError& e) {
        std::cerr << "evdfit: " << e.what() << "\n";
        return exit_usage;
    } catch (const evdfit::file_error& e) {
        std::cerr << "evdfit: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "evdfit: " << e.what() << "\n";
        return exit_usage;
    } catch (const evdfit::convergence_error& e) {
        std::cerr << "evdfit: " << e.what() << "\n";
        return exit_convergence;
    } catch (const std::domain_error& e) {
        std::cerr << "evdfit: " << e.what() << "\n";
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "evdfit: " << e.what() << "\n";
        return exit_data;
    }
}
