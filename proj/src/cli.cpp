#include "market_clock/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "market_clock/analytics.hpp"
#include "market_clock/growth_optimizer.hpp"
#include "market_clock/spec_io.hpp"

namespace mclock::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct RunConfig {
    std::string command;
    std::string spec_path;
    double x = 1.0;
    double level = 0.0;
    std::vector<double> levels;
    std::size_t reps = 10000;
    std::optional<std::string> scheme;
    double dt = 1e-3;
    std::uint64_t seed = 1;
    std::optional<unsigned> threads;
    std::string out_dir;
    double k_sigma = kDefaultKSigma;
    std::vector<double> pi;
};

class InvalidConfig : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Round-trips through 12 significant digits so JSON output matches the CSV.
json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return std::strtod(format_number(v).c_str(), nullptr);
}

json num_array(const Vector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(num(v(i)));
    return arr;
}

unsigned resolve_threads(const std::optional<unsigned>& flag) {
    if (flag) return std::max(1u, *flag);
    if (const char* env = std::getenv("MARKET_CLOCK_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

json solution_json(const GrowthSolution& sol) {
    json j;
    j["market"] = "levy";
    j["viable"] = sol.viable;
    j["status"] = to_string(sol.status);
    j["rho"] = num_array(sol.rho);
    j["g_star"] = num(sol.g_star);
    j["alpha"] = num(sol.alpha);
    j["log1p_alpha"] = num(std::log1p(sol.alpha));
    j["iterations"] = sol.iterations;
    j["grad_norm"] = num(sol.grad_norm);
    j["selection"] = sol.selection;
    if (sol.witness) j["witness"] = num_array(*sol.witness);
    return j;
}

struct Analysis {
    json summary;
    bool usable = false;
    GrowthSolution growth;  // Levy only
};

Analysis analyze(const MarketSpec& market) {
    Analysis a;
    if (const auto* levy = std::get_if<LevyMarketSpec>(&market)) {
        a.growth = analyze_market(*levy);
        a.summary = solution_json(a.growth);
        a.usable = a.growth.usable();
        return a;
    }
    const auto& ito = std::get<ItoMarketSpec>(market);
    const RiskPremium rp = risk_premium(ito.a, ito.sigma);
    a.summary["market"] = "ito";
    a.summary["solvable"] = rp.solvable;
    a.summary["viable"] = rp.solvable && rp.lambda_sq > 0.0;
    a.summary["rho"] = num_array(rp.rho);
    a.summary["lambda"] = num_array(rp.lambda);
    a.summary["g_star"] = num(0.5 * rp.lambda_sq);
    a.summary["alpha"] = 0.0;
    a.summary["log1p_alpha"] = 0.0;
    a.summary["note"] = "values for the coefficients in force at t = 0";
    a.usable = rp.solvable && rp.lambda_sq > 0.0;
    return a;
}

void ensure_dir(const std::string& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InvalidConfig("cannot create output directory " + dir + ": " + ec.message());
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidConfig("cannot write " + path.string());
    f << content;
}

std::string replications_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "rep,tau_calendar,T_market,overshoot,reached\n";
    for (const auto& row : report.rows) {
        os << row.rep << ',';
        if (row.reached) {
            os << format_number(row.tau) << ',' << format_number(row.market_time) << ','
               << format_number(row.overshoot);
        } else {
            os << ",,";
        }
        os << ',' << (row.reached ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string study_csv(const std::vector<RatioRow>& rows) {
    std::ostringstream os;
    os << "level,logl,mean_T,stderr,ratio,band_lo,band_hi\n";
    for (const auto& r : rows) {
        os << format_number(r.level) << ',' << format_number(r.log_level) << ',' << format_number(r.mean_T) << ','
           << format_number(r.stderr_T) << ',' << format_number(r.ratio) << ',' << format_number(r.band_lo) << ','
           << format_number(r.band_hi) << '\n';
    }
    return os.str();
}

SimulationOptions sim_options(const RunConfig& cfg, bool ito) {
    SimulationOptions sim;
    sim.recording = Recording::sparse;
    sim.dt = cfg.dt;
    if (cfg.scheme && *cfg.scheme == "event") {
        if (ito) throw InvalidConfig("the event scheme requires a Levy market; use --scheme grid");
        sim.scheme = Scheme::event;
    } else if (cfg.scheme && *cfg.scheme == "grid") {
        sim.scheme = Scheme::grid;
    } else if (cfg.scheme) {
        throw InvalidConfig("--scheme must be event or grid");
    } else {
        sim.scheme = ito ? Scheme::grid : Scheme::event;
    }
    if (sim.scheme == Scheme::grid && !(cfg.dt > 0.0)) throw InvalidConfig("--dt must be positive");
    return sim;
}

void check_common(const RunConfig& cfg) {
    if (cfg.reps < 1) throw InvalidConfig("--reps must be at least 1");
    if (!(cfg.x > 0.0)) throw InvalidConfig("--x must be positive");
    if (!(cfg.k_sigma >= 0.0)) throw InvalidConfig("--k-sigma must be nonnegative");
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    const MarketSpec market = load_market_spec(cfg.spec_path);
    const Analysis a = analyze(market);
    out << a.summary.dump(2) << '\n';
    return a.usable ? kOk : kNotViable;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_common(cfg);
    if (!(cfg.level > cfg.x)) throw InvalidConfig("--level must exceed --x");
    const MarketSpec market = load_market_spec(cfg.spec_path);
    const bool ito = std::holds_alternative<ItoMarketSpec>(market);
    ExperimentConfig ec;
    ec.reps = cfg.reps;
    ec.master_seed = cfg.seed;
    ec.threads = resolve_threads(cfg.threads);
    ec.sim = sim_options(cfg, ito);

    const Analysis a = analyze(market);
    if (!a.usable) {
        out << a.summary.dump(2) << '\n';
        err << "market is not viable (arbitrage, or maximal growth rate zero)\n";
        return kNotViable;
    }

    Strategy strategy = Strategy::growth_optimal();
    if (!cfg.pi.empty()) strategy = Strategy::constant(Eigen::Map<const Vector>(cfg.pi.data(), cfg.pi.size()));

    ExperimentReport report;
    double alpha = 0.0;
    try {
        if (ito) {
            const auto& spec = std::get<ItoMarketSpec>(market);
            if (!strategy.numeraire && strategy.pi.size() != spec.d) throw InvalidConfig("--pi has the wrong dimension");
            report = upcrossing_experiment(spec, strategy, cfg.x, cfg.level, ec);
        } else {
            const auto& spec = std::get<LevyMarketSpec>(market);
            if (!strategy.numeraire && strategy.pi.size() != spec.d) throw InvalidConfig("--pi has the wrong dimension");
            alpha = a.growth.alpha;
            report = upcrossing_experiment(spec, a.growth, strategy, cfg.x, cfg.level, ec);
        }
    } catch (const DomainError& ex) {
        throw InvalidConfig(ex.what());
    } catch (const NoNumeraireError& ex) {
        out << a.summary.dump(2) << '\n';
        err << ex.what() << '\n';
        return kNotViable;
    }

    const BoundReport bounds = theoretical_bounds(cfg.x, cfg.level, alpha);
    std::string verdict;
    int code = kOk;
    try {
        Verdict v = check_estimate(report, bounds, cfg.k_sigma);
        // The upper bound only concerns the numeraire.
        if (!strategy.numeraire && v == Verdict::upper_violation) v = Verdict::consistent;
        verdict = to_string(v);
        if (v != Verdict::consistent) code = kBoundViolation;
    } catch (const InsufficientReachError&) {
        verdict = "inconclusive";
    }

    json s;
    s["command"] = "simulate";
    s["market"] = ito ? "ito" : "levy";
    s["strategy"] = strategy.numeraire ? json("numeraire") : json(num_array(strategy.pi));
    s["scheme"] = to_string(report.scheme);
    s["dt"] = report.scheme == Scheme::grid ? num(cfg.dt) : json(nullptr);
    s["seed"] = cfg.seed;
    s["reps"] = report.reps;
    s["reached"] = report.reached;
    s["reached_fraction"] = num(report.reached_fraction);
    s["x"] = num(cfg.x);
    s["level"] = num(cfg.level);
    s["mean_T"] = num(report.mean_T);
    s["stderr_T"] = num(report.stderr_T);
    s["mean_tau"] = num(report.mean_tau);
    s["mean_log1p_alpha"] = num(report.mean_log1p_alpha);
    s["g_star"] = a.summary["g_star"];
    s["alpha"] = num(alpha);
    s["bounds"] = {{"lower", num(bounds.lower)},
                   {"upper", num(bounds.upper)},
                   {"alpha_used", num(bounds.alpha_used)},
                   {"alpha_from_samples", bounds.alpha_from_samples}};
    s["k_sigma"] = num(cfg.k_sigma);
    s["verdict"] = verdict;
    json hist = json::array();
    for (auto c : report.overshoot_histogram.counts) hist.push_back(c);
    s["overshoot_histogram"] = {{"bin_width", num(report.overshoot_histogram.bin_width)}, {"counts", hist}};
    s["warnings"] = report.warnings;

    if (!cfg.out_dir.empty()) {
        ensure_dir(cfg.out_dir);
        write_file(fs::path(cfg.out_dir) / "replications.csv", replications_csv(report));
        write_file(fs::path(cfg.out_dir) / "summary.json", s.dump(2) + "\n");
    }
    out << s.dump(2) << '\n';
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    return code;
}

int cmd_study(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_common(cfg);
    if (cfg.levels.empty()) throw InvalidConfig("--levels must list at least one level");
    for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
        if (!(cfg.levels[i] > cfg.x)) throw InvalidConfig("every level must exceed --x");
        if (i > 0 && !(cfg.levels[i] > cfg.levels[i - 1])) throw InvalidConfig("--levels must be increasing");
    }
    const MarketSpec market = load_market_spec(cfg.spec_path);
    const bool ito = std::holds_alternative<ItoMarketSpec>(market);
    StudyConfig sc;
    sc.reps = cfg.reps;
    sc.seed = cfg.seed;
    sc.threads = resolve_threads(cfg.threads);
    sc.sim = sim_options(cfg, ito);

    const Analysis a = analyze(market);
    if (!a.usable) {
        out << a.summary.dump(2) << '\n';
        err << "market is not viable (arbitrage, or maximal growth rate zero)\n";
        return kNotViable;
    }
    std::vector<RatioRow> rows;
    try {
        rows = ito ? asymptotic_ratio_study(std::get<ItoMarketSpec>(market), cfg.x, cfg.levels, sc)
                   : asymptotic_ratio_study(std::get<LevyMarketSpec>(market), a.growth, cfg.x, cfg.levels, sc);
    } catch (const NoNumeraireError& ex) {
        err << ex.what() << '\n';
        return kNotViable;
    }
    const std::string csv = study_csv(rows);
    if (!cfg.out_dir.empty()) {
        ensure_dir(cfg.out_dir);
        write_file(fs::path(cfg.out_dir) / "study.csv", csv);
    }
    out << csv;
    return kOk;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Growth-optimal portfolios and expected market time to reach a wealth level", "market_clock"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_spec = [&](CLI::App* sub) { sub->add_option("--spec", cfg.spec_path, "Market spec JSON file")->required(); };
    auto add_run = [&](CLI::App* sub) {
        sub->add_option("--x", cfg.x, "Initial wealth");
        sub->add_option("--reps", cfg.reps, "Monte Carlo replications");
        sub->add_option("--scheme", cfg.scheme, "event | grid (default: event for Levy, grid for Ito)");
        sub->add_option("--dt", cfg.dt, "Grid step in calendar time");
        sub->add_option("--seed", cfg.seed, "Master seed");
        sub->add_option("--threads", cfg.threads, "Worker threads (fallback: MARKET_CLOCK_THREADS)");
        sub->add_option("--out", cfg.out_dir, "Output directory");
        sub->add_option("--k-sigma", cfg.k_sigma, "Standard errors allowed by the bound check");
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "Viability check and growth-optimal portfolio");
    add_spec(analyze_cmd);

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of the expected market time");
    add_spec(simulate_cmd);
    add_run(simulate_cmd);
    simulate_cmd->add_option("--level", cfg.level, "Target wealth level")->required();
    simulate_cmd->add_option("--pi", cfg.pi, "Constant proportions instead of the numeraire")->delimiter(',');

    auto* study_cmd = app.add_subcommand("study", "Expected market time over increasing levels");
    add_spec(study_cmd);
    add_run(study_cmd);
    study_cmd->add_option("--levels", cfg.levels, "Comma-separated increasing levels")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInvalidInput;
    }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(cfg, out);
        if (simulate_cmd->parsed()) return cmd_simulate(cfg, out, err);
        if (study_cmd->parsed()) return cmd_study(cfg, out, err);
    } catch (const SpecError& e) {
        for (const auto& msg : e.errors) err << "spec error: " << msg << '\n';
        return kInvalidInput;
    } catch (const InvalidConfig& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kInvalidInput;
    }
    return kInvalidInput;
}

}  // namespace mclock::cli
