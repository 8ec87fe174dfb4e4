// Command-line front end: resource allocation, coverage, clustering,
// deployment search, parameter sweeps and the oracle validation suites.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ccr/assign.hpp"
#include "ccr/coverage.hpp"
#include "ccr/deploy.hpp"
#include "ccr/error.hpp"
#include "ccr/instances.hpp"
#include "ccr/parallel.hpp"
#include "ccr/scenario.hpp"
#include "csv.hpp"
#include "validate.hpp"

namespace {

using namespace ccr;
using cli::CsvWriter;

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_usage = 2;

struct Global {
    std::string scenario;
    std::string out;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("CCR_SEED");
    if (!v || !*v) return std::nullopt;
    try {
        std::size_t used = 0;
        const auto seed = std::stoull(v, &used);
        if (used != std::string(v).size()) throw std::invalid_argument(v);
        return seed;
    } catch (const std::exception&) {
        throw ConfigError(std::string("CCR_SEED must be an unsigned integer, got '") + v + "'");
    }
}

// The seed override is applied before parsing so generated users follow it.
ScenarioConfig load(const Global& g) {
    nlohmann::json j = g.scenario.empty() ? nlohmann::json{{"rng_seed", 1}} : nlohmann::json::parse(read_file(g.scenario));
    if (const auto seed = env_seed()) j["rng_seed"] = *seed;
    auto cfg = parse_scenario(j.dump());
    validate(cfg);
    return cfg;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ConfigError("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

// ---------------------------------------------------------------- ra

struct RaOptions {
    std::vector<double> uav;
};

Position uav_of(const ScenarioConfig& cfg, const std::vector<double>& v) {
    return v.empty() ? cfg.uav : Position{v[0], v[1], v[2]};
}

int run_ra(const Global& g, const RaOptions& o) {
    const auto cfg = load(g);
    const auto uav = uav_of(cfg, o.uav);
    const assign::ClusterMetric metric(cfg, uav);
    const auto asg = assign::cluster_and_assign(metric);
    Output out(g.out);
    CsvWriter csv(out.stream(), "ra",
                  {"channel", "order", "user", "alpha", "beta", "lambda", "gamma_star", "maxmin_rate_bps",
                   "energy"});
    for (std::size_t k = 0; k < asg.clusters.size(); ++k) {
        if (asg.clusters[k].empty()) continue;
        const auto a = metric.allocate(k, asg.clusters[k]);
        const auto s = metric.state(asg.clusters[k]);
        for (std::size_t n = 0; n < s.size(); ++n)
            csv.row() << k << n << s.user_order[n] << a.alpha[n] << a.beta[n] << a.lambda << a.gamma_star
                      << a.maxmin_rate << a.energy;
    }
    return exit_ok;
}

// ---------------------------------------------------------- coverage

struct CoverageOptions {
    std::vector<double> uav;
    std::vector<double> range;  // start stop steps
    std::size_t trials = 100000;
};

std::vector<double> linspace(double a, double b, std::size_t steps) {
    if (steps < 2) throw ConfigError("a range needs at least 2 steps");
    std::vector<double> v(steps);
    for (std::size_t i = 0; i < steps; ++i) v[i] = a + (b - a) * static_cast<double>(i) / (steps - 1);
    return v;
}

std::vector<double> range_of(const std::vector<double>& r) {
    if (r[2] != std::floor(r[2]) || r[2] < 2) throw ConfigError("range steps must be an integer >= 2");
    return linspace(r[0], r[1], static_cast<std::size_t>(r[2]));
}

struct CoverageRow {
    double analytic = 1.0;
    double mc = 1.0;
    double mc_stderr = 0.0;
};

// Minimum end-to-end coverage over the members of every nonempty cluster.
std::vector<CoverageRow> min_coverage(const assign::ClusterMetric& metric, const assign::Assignment& asg,
                                      const std::vector<double>& rbars, std::size_t trials, std::uint64_t seed) {
    std::vector<CoverageRow> rows(rbars.size());
    for (std::size_t k = 0; k < asg.clusters.size(); ++k) {
        if (asg.clusters[k].empty()) continue;
        const auto a = metric.allocate(k, asg.clusters[k]);
        const auto model = metric.coverage_model(k, asg.clusters[k]);
        std::vector<std::vector<coverage::CoverageResult>> mc;
        if (trials > 0) mc = coverage::monte_carlo_coverage(model, a, rbars, trials, seed + k);
        for (std::size_t t = 0; t < rbars.size(); ++t) {
            rows[t].analytic = std::min(rows[t].analytic, coverage::cluster_coverage(model, a, rbars[t]));
            if (trials == 0) continue;
            for (const auto& r : mc[t]) {
                if (r.p_e2e < rows[t].mc) {
                    rows[t].mc = r.p_e2e;
                    rows[t].mc_stderr = r.mc_stderr.value_or(0.0);
                }
            }
        }
    }
    return rows;
}

int run_coverage(const Global& g, const CoverageOptions& o) {
    const auto cfg = load(g);
    const auto uav = uav_of(cfg, o.uav);
    const auto rbars = o.range.empty() ? std::vector<double>{cfg.rbar_bps} : range_of(o.range);
    const assign::ClusterMetric metric(cfg, uav);
    const auto asg = assign::cluster_and_assign(metric);
    const auto rows = min_coverage(metric, asg, rbars, o.trials, cfg.rng_seed);
    Output out(g.out);
    CsvWriter csv(out.stream(), "coverage", {"rbar_bps", "analytic", "monte_carlo", "mc_stderr", "trials"});
    for (std::size_t t = 0; t < rbars.size(); ++t) {
        auto row = csv.row();
        row << rbars[t] << rows[t].analytic;
        if (o.trials > 0)
            row << rows[t].mc << rows[t].mc_stderr;
        else
            row << "" << "";
        row << o.trials;
    }
    return exit_ok;
}

// ----------------------------------------------------------- cluster

struct ClusterOptions {
    std::vector<double> uav;
    int k = 0;
    int n = 0;
    bool oracle = false;
    bool matrix = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_matrix_lba(const Global& g, const ScenarioConfig& cfg, const ClusterOptions& o) {
    if (o.k != o.n || o.k < 1) throw ConfigError("--matrix needs --k equal to --n");
    Rng rng(cfg.rng_seed, Stream::instances);
    const auto m = instances::random_probability_matrix(rng, static_cast<std::size_t>(o.n));
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = assign::lba_solve(m);
    std::cerr << "lba " << o.k << "x" << o.n << " solved in " << seconds_since(t0) << " s\n";
    Output out(g.out);
    CsvWriter csv(out.stream(), "lba", {"row", "col", "value", "bottleneck"});
    for (std::size_t row = 0; row < r.row_to_col.size(); ++row)
        csv.row() << row << r.row_to_col[row] << m(row, r.row_to_col[row]) << r.bottleneck;
    return exit_ok;
}

int run_cluster(const Global& g, const ClusterOptions& o) {
    auto cfg = load(g);
    if (o.matrix) return run_matrix_lba(g, cfg, o);
    if (o.k > 0) cfg.budget.k_channels = o.k;
    if (o.n > 0) {
        Rng rng(cfg.rng_seed, Stream::users);
        cfg.secondary_users = generate_hotspot_users(cfg.hotspot, static_cast<std::size_t>(o.n), rng);
        cfg.max_cluster_size = 0;
    }
    validate(cfg);
    const auto uav = uav_of(cfg, o.uav);
    const assign::ClusterMetric metric(cfg, uav);
    const auto t0 = std::chrono::steady_clock::now();
    const auto asg = assign::cluster_and_assign(metric);
    std::cerr << "clustering K=" << cfg.budget.k_channels << " N=" << cfg.n_users() << " solved in "
              << seconds_since(t0) << " s, min metric " << asg.min_metric << "\n";
    int status = exit_ok;
    if (o.oracle) {
        const auto exact = assign::exhaustive_assignment_oracle(metric);
        const bool same = exact.min_metric == asg.min_metric ||
                          std::abs(exact.min_metric - asg.min_metric) <= 1e-12 * std::abs(exact.min_metric);
        std::cerr << "oracle min metric " << exact.min_metric << (same ? " (match)" : " (MISMATCH)") << "\n";
        if (!same) status = exit_validation;
    }
    Output out(g.out);
    CsvWriter csv(out.stream(), "cluster", {"channel", "members", "metric", "min_metric"});
    for (std::size_t k = 0; k < asg.clusters.size(); ++k) {
        auto row = csv.row();
        row << k << cli::join(asg.clusters[k]);
        if (asg.clusters[k].empty())
            row << "";
        else
            row << asg.cluster_metric[k];
        row << asg.min_metric;
    }
    return status;
}

// ------------------------------------------------------------ deploy

struct DeployOptions {
    int iters = 500;
    double t0 = 0.0;
    double kappa = 0.95;
    double step = 0.05;
};

deploy::SearchSpace space_of(const ScenarioConfig& cfg, const DeployOptions& o) {
    deploy::SearchSpace s;
    s.bounds = cfg.search;
    s.iterations = o.iters;
    s.t0 = o.t0;
    s.kappa = o.kappa;
    s.step_fraction = o.step;
    return s;
}

int run_deploy(const Global& g, const DeployOptions& o) {
    const auto cfg = load(g);
    const auto res = deploy::simulated_annealing(cfg, space_of(cfg, o));
    std::cerr << "best " << res.best_fitness << " at (" << res.best_c.x << ", " << res.best_c.y << ", "
              << res.best_c.z << "), T0 " << res.t0 << "\n";
    Output out(g.out);
    CsvWriter csv(out.stream(), "deploy", {"iteration", "x", "y", "z", "fitness", "accepted", "best_fitness"});
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& e : res.trace) {
        if (e.accepted) best = std::max(best, e.fitness);
        csv.row() << e.iteration << e.c.x << e.c.y << e.c.z << e.fitness << (e.accepted ? 1 : 0) << best;
    }
    return exit_ok;
}

// ------------------------------------------------------------- sweep

enum class SweepMode { deterministic, monte_carlo };

struct SweepOptions {
    std::string variable;
    std::vector<double> range;
    SweepMode mode = SweepMode::deterministic;
    std::size_t trials = 100000;
    bool optimize = false;
    DeployOptions deploy;
};

int rounded(double v, const char* what) {
    const double r = std::round(v);
    if (r < 1.0 || std::abs(r - v) > 1e-9) throw ConfigError(std::string(what) + " must be a positive integer");
    return static_cast<int>(r);
}

ScenarioConfig apply(ScenarioConfig cfg, const std::string& var, double v) {
    if (var == "uav_d") {
        cfg.uav.x = v;
    } else if (var == "uav_h") {
        cfg.uav.z = v;
    } else if (var == "tx_power_dbm") {
        cfg.budget.sbs_dbm = v;
        cfg.budget.uav_dbm = v;
    } else if (var == "rbar") {
        cfg.rbar_bps = v;
    } else if (var == "cluster_size") {
        const int c = rounded(v, "cluster_size");
        const auto n = static_cast<int>(cfg.n_users());
        cfg.budget.k_channels = (n + c - 1) / c;
        cfg.max_cluster_size = c;
    } else if (var == "n_users") {
        const int c = cfg.cluster_capacity();
        const int n = rounded(v, "n_users");
        Rng rng(cfg.rng_seed, Stream::users);
        cfg.secondary_users = generate_hotspot_users(cfg.hotspot, static_cast<std::size_t>(n), rng);
        cfg.budget.k_channels = (n + c - 1) / c;
        cfg.max_cluster_size = c;
    } else {
        throw ConfigError("unknown sweep variable '" + var + "'");
    }
    validate(cfg);
    return cfg;
}

struct SweepPoint {
    double metric = 0.0;
    Position uav;
    CoverageRow mc;
};

int run_sweep(const Global& g, const SweepOptions& o) {
    const auto base = load(g);
    const auto values = range_of(o.range);
    std::vector<ScenarioConfig> cfgs;
    for (double v : values) cfgs.push_back(apply(base, o.variable, v));
    std::vector<SweepPoint> pts(values.size());
    parallel_for(values.size(), [&](std::size_t i) {
        const auto& cfg = cfgs[i];
        auto& p = pts[i];
        p.uav = cfg.uav;
        if (o.optimize) {
            const auto res = deploy::simulated_annealing(cfg, space_of(cfg, o.deploy));
            p.uav = res.best_c;
        }
        const assign::ClusterMetric metric(cfg, p.uav);
        const auto asg = assign::cluster_and_assign(metric);
        p.metric = asg.min_metric;
        if (o.mode == SweepMode::monte_carlo)
            p.mc = min_coverage(metric, asg, {cfg.rbar_bps}, o.trials, cfg.rng_seed).front();
    });
    Output out(g.out);
    const char* metric_name = base.metric == Metric::rate ? "maxmin_rate_bps" : "min_coverage";
    const bool mc = o.mode == SweepMode::monte_carlo;
    std::unique_ptr<CsvWriter> csv;
    if (mc)
        csv = std::make_unique<CsvWriter>(out.stream(), "sweep",
                                          std::initializer_list<std::string_view>{
                                              o.variable, metric_name, "uav_x", "uav_y", "uav_z", "mc_coverage",
                                              "mc_stderr"});
    else
        csv = std::make_unique<CsvWriter>(
            out.stream(), "sweep",
            std::initializer_list<std::string_view>{o.variable, metric_name, "uav_x", "uav_y", "uav_z"});
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto row = csv->row();
        row << values[i] << pts[i].metric << pts[i].uav.x << pts[i].uav.y << pts[i].uav.z;
        if (mc) row << pts[i].mc.mc << pts[i].mc.mc_stderr;
    }
    return exit_ok;
}

// ---------------------------------------------------------- validate

int run_validate(const Global& g, bool quick) {
    cli::ValidateOptions opt;
    opt.quick = quick;
    if (!g.scenario.empty()) opt.seed = load(g).rng_seed;
    else if (const auto seed = env_seed()) opt.seed = *seed;
    bool ok = true;
    for (const auto& r : cli::run_validation(opt)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << std::endl;
        ok = ok && r.passed;
    }
    return ok ? exit_ok : exit_validation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relay-assisted cognitive NOMA: allocation, coverage, clustering and UAV placement"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--scenario", g.scenario, "Scenario JSON file (defaults to the built-in reference)");
    app.add_option("-o,--out", g.out, "Write CSV here instead of stdout");

    RaOptions ra_opt;
    auto* ra = app.add_subcommand("ra", "Per-cluster power and time allocation at the UAV position");
    ra->add_option("--uav", ra_opt.uav, "UAV position x y z")->expected(3);

    CoverageOptions cov_opt;
    auto* cov = app.add_subcommand("coverage", "Analytic and Monte Carlo max-min coverage versus rate threshold");
    cov->add_option("--uav", cov_opt.uav, "UAV position x y z")->expected(3);
    cov->add_option("--range", cov_opt.range, "Threshold sweep: start stop steps (bit/s)")->expected(3);
    cov->add_option("--trials", cov_opt.trials, "Monte Carlo trials, 0 for analytic only");

    ClusterOptions cl_opt;
    auto* cl = app.add_subcommand("cluster", "User clustering and channel assignment");
    cl->add_option("--uav", cl_opt.uav, "UAV position x y z")->expected(3);
    cl->add_option("--k", cl_opt.k, "Number of channels")->check(CLI::PositiveNumber);
    cl->add_option("--n", cl_opt.n, "Number of hot-spot users to generate")->check(CLI::PositiveNumber);
    cl->add_flag("--oracle", cl_opt.oracle, "Compare against the exhaustive assignment");
    cl->add_flag("--matrix", cl_opt.matrix, "Solve an LBA on a random K x N probability matrix");

    DeployOptions dep_opt;
    auto* dep = app.add_subcommand("deploy", "Simulated annealing over UAV positions");
    auto add_deploy = [](CLI::App* c, DeployOptions& d) {
        c->add_option("--iters", d.iters, "Iterations")->check(CLI::PositiveNumber);
        c->add_option("--t0", d.t0, "Initial temperature, 0 for the warm-up estimate");
        c->add_option("--kappa", d.kappa, "Cooling factor")->check(CLI::Range(0.0, 1.0));
        c->add_option("--step", d.step, "Move half-width as a fraction of the box span")
            ->check(CLI::PositiveNumber);
    };
    add_deploy(dep, dep_opt);

    SweepOptions sw_opt;
    auto* sw = app.add_subcommand("sweep", "One-parameter sweep");
    sw->add_option("--variable", sw_opt.variable, "Swept parameter")
        ->required()
        ->check(CLI::IsMember({"uav_d", "uav_h", "tx_power_dbm", "rbar", "cluster_size", "n_users"}));
    sw->add_option("--range", sw_opt.range, "start stop steps")->required()->expected(3);
    sw->add_option("--mode", sw_opt.mode, "deterministic or monte_carlo")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, SweepMode>{{"deterministic", SweepMode::deterministic},
                                             {"monte_carlo", SweepMode::monte_carlo}}));
    sw->add_option("--trials", sw_opt.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    sw->add_flag("--optimize", sw_opt.optimize, "Place the UAV by simulated annealing at every point");
    add_deploy(sw, sw_opt.deploy);

    bool quick = false;
    auto* val = app.add_subcommand("validate", "Run the oracle validation suites");
    val->add_flag("--quick", quick, "Reduced instance counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (ra->parsed()) return run_ra(g, ra_opt);
        if (cov->parsed()) return run_coverage(g, cov_opt);
        if (cl->parsed()) return run_cluster(g, cl_opt);
        if (dep->parsed()) return run_deploy(g, dep_opt);
        if (sw->parsed()) return run_sweep(g, sw_opt);
        if (val->parsed()) return run_validate(g, quick);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed scenario: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
    return exit_usage;
}
