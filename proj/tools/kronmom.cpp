// kronmom: feature counting, closed-form moments, fitting and sampling for
// stochastic Kronecker graphs.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "kronmom/errors.hpp"
#include "kronmom/estimator.hpp"
#include "kronmom/experiment.hpp"
#include "kronmom/features.hpp"
#include "kronmom/generator.hpp"
#include "kronmom/graph_io.hpp"
#include "kronmom/moments.hpp"
#include "kronmom/parallel.hpp"
#include "kronmom/report.hpp"

namespace fs = std::filesystem;
using namespace kronmom;

namespace {

constexpr int kExitUser = 1;
constexpr int kExitInternal = 2;

/// Bad flags, bad input files, infeasible fits.
struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_file(const fs::path& path) {
    if (!fs::exists(path)) throw UserError("no such file: '" + path.string() + "'");
    if (fs::is_directory(path)) throw UserError("'" + path.string() + "' is a directory");
}

std::string read_file(const fs::path& path) {
    require_file(path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UserError("cannot open '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

bool looks_like_json(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{';
    }
    return false;
}

struct Observed {
    FeatureCounts counts;
    double seconds = 0.0;
};

/// An edge list, or a counts JSON as printed by `features`.
Observed load_observed(const fs::path& path, bool directed, unsigned workers) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string text = read_file(path);
    Observed out;
    if (looks_like_json(text)) {
        out.counts = counts_from_json(nlohmann::json::parse(text));
    } else {
        out.counts = count_features(parse_edge_list(text, directed).graph, workers);
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

struct FeaturesArgs {
    std::string path;
    bool directed = false;
    bool stats = false;
};

void cmd_features(const FeaturesArgs& args, unsigned workers) {
    const std::string text = read_file(args.path);
    const auto loaded = parse_edge_list(text, args.directed);
    if (loaded.stats.isolated_vertices > 0) {
        std::cerr << "note: " << loaded.stats.isolated_vertices
                  << " vertices appear only in self-loops and are kept with degree 0\n";
    }
    auto j = to_json(count_features(loaded.graph, workers));
    if (args.stats) j["load"] = to_json(loaded.stats);
    print_json(j);
}

struct ExpectedArgs {
    double a = 0.0, b = 0.0, c = 0.0;
    unsigned r = 1;
};

void cmd_expected(const ExpectedArgs& args) { print_json(expected_to_json(KroneckerParams(args.a, args.b, args.c, args.r))); }

struct FitArgs {
    std::string input;
    std::string objective = "dsq-f2";
    std::string method = "best";
    std::string features;
    std::optional<unsigned> r;
    unsigned starts = 50;
    unsigned grid_points = 100;
    std::uint64_t seed = 0;
    bool directed = false;
    std::string csv;
};

void cmd_fit(const FitArgs& args, unsigned workers) {
    const FeatureSet features = args.features.empty() ? FeatureSet::all() : FeatureSet::parse(args.features);
    const ObjectiveSpec spec = ObjectiveSpec::parse(args.objective, features);
    spec.validate(true);
    const auto method = parse_fit_method(args.method);
    if (!method) throw UserError("unknown method '" + args.method + "' (direct, grid, leading, best)");

    const Observed obs = load_observed(args.input, args.directed, workers);
    if (obs.counts.vertices == 0 && !args.r) throw UserError("the graph has no vertices; pass --r");
    const unsigned r = args.r.value_or(obs.counts.vertices == 0 ? 1u : choose_r(obs.counts.vertices));

    FitOptions opts;
    opts.direct.starts = args.starts;
    opts.direct.seed = args.seed;
    opts.direct.workers = workers;
    opts.grid.points_per_dim = args.grid_points;
    opts.grid.workers = workers;

    const FitResult result = fit(*method, obs.counts, r, spec, opts);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

    auto j = to_json(result, obs.counts);
    j["objective_spec"] = spec.name();
    j["features"] = spec.features.to_string();
    j["observed"] = to_json(obs.counts);
    print_json(j);

    if (!args.csv.empty()) {
        std::ofstream out(args.csv, std::ios::trunc);
        if (!out) throw UserError("cannot write '" + args.csv + "'");
        out << fit_csv_header() << '\n'
            << source_csv_row(obs.counts, obs.seconds) << '\n'
            << fit_csv_row(fit_method_name(result.method), result) << '\n';
        if (!out) throw std::runtime_error("failed writing '" + args.csv + "'");
    }
}

struct GenerateArgs {
    double a = 0.0, b = 0.0, c = 0.0;
    unsigned r = 1;
    std::uint64_t seed = 0;
    std::string out;
};

void cmd_generate(const GenerateArgs& args, unsigned workers) {
    const GeneratorJob job{KroneckerParams(args.a, args.b, args.c, args.r), args.seed};
    if (args.r > kSlowSweepPower) {
        std::cerr << "warning: r=" << args.r << " sweeps 2^" << 2 * args.r
                  << " cells; expect a long run\n";
    }
    if (args.out.empty() || args.out == "-") {
        write_generated_edge_list(job, std::cout, workers);
    } else {
        write_generated_edge_list(job, fs::path(args.out), workers);
    }
}

struct ExperimentArgs {
    std::string config;
    std::string output_dir;
};

void cmd_experiment(const ExperimentArgs& args, unsigned workers) {
    require_file(args.config);
    ExperimentConfig config = load_experiment_config(args.config);
    if (!args.output_dir.empty()) config.output_dir = args.output_dir;
    const auto outputs = run_experiment(config, workers);
    write_experiment_csv(outputs, config.output_dir);
    for (const auto& f : outputs.fits) {
        if (!f.result) std::cerr << "warning: " << f.source << " #" << f.replication << " " << fit_method_name(f.method)
                                 << ": " << f.error << '\n';
    }
    std::cout << "wrote " << outputs.fits.size() << " fit rows to " << config.output_dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Method-of-moments tools for stochastic Kronecker graphs"};
    app.require_subcommand(1);
    app.footer("Worker threads: set " + std::string(kThreadsEnvVar) + " (default 1).");

    FeaturesArgs features_args;
    auto* features = app.add_subcommand("features", "Count vertices, edges, hairpins, tripins and triangles");
    features->add_option("graph", features_args.path, "Edge list file")->required();
    features->add_flag("--directed", features_args.directed, "Input lists directed arcs; reciprocal pairs merge");
    features->add_flag("--stats", features_args.stats, "Include loader statistics");

    ExpectedArgs expected_args;
    auto* expected = app.add_subcommand("expected", "Expected feature counts for initiator (a, b, c) and power r");
    expected->add_option("--a", expected_args.a)->required();
    expected->add_option("--b", expected_args.b)->required();
    expected->add_option("--c", expected_args.c)->required();
    expected->add_option("--r", expected_args.r)->required();

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Fit (a, b, c) to a graph or to a counts JSON");
    fit_cmd->add_option("input", fit_args.input, "Edge list or counts JSON")->required();
    fit_cmd->add_option("--objective", fit_args.objective, "dsq-f, dsq-f2, dsq-e, dsq-e2, dabs-f or dabs-e")
        ->capture_default_str();
    fit_cmd->add_option("--method", fit_args.method, "direct, grid, leading or best")->capture_default_str();
    fit_cmd->add_option("--features", fit_args.features, "Comma-separated subset (default: all four)");
    fit_cmd->add_option("--r", fit_args.r, "Kronecker power (default: smallest r with 2^r >= vertices)");
    fit_cmd->add_option("--starts", fit_args.starts, "Direct-search starts")->capture_default_str();
    fit_cmd->add_option("--grid-points", fit_args.grid_points, "Grid intervals per dimension")->capture_default_str();
    fit_cmd->add_option("--seed", fit_args.seed, "Seed for direct-search starts")->capture_default_str();
    fit_cmd->add_flag("--directed", fit_args.directed, "Edge list holds directed arcs");
    fit_cmd->add_option("--csv", fit_args.csv, "Also write source and fit rows to this CSV file");

    GenerateArgs generate_args;
    auto* generate_cmd = app.add_subcommand("generate", "Sample a graph by exact coin flipping");
    generate_cmd->add_option("--a", generate_args.a)->required();
    generate_cmd->add_option("--b", generate_args.b)->required();
    generate_cmd->add_option("--c", generate_args.c)->required();
    generate_cmd->add_option("--r", generate_args.r)->required();
    generate_cmd->add_option("--seed", generate_args.seed)->capture_default_str();
    generate_cmd->add_option("--out", generate_args.out, "Output file (default: stdout)");

    ExperimentArgs experiment_args;
    auto* experiment = app.add_subcommand("experiment", "Run a fitting study described by a config file");
    experiment->add_option("config", experiment_args.config)->required();
    experiment->add_option("--output-dir", experiment_args.output_dir, "Overrides output_dir from the config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUser;
    }

    try {
        const unsigned workers = workers_from_env();
        if (*features) cmd_features(features_args, workers);
        if (*expected) cmd_expected(expected_args);
        if (*fit_cmd) cmd_fit(fit_args, workers);
        if (*generate_cmd) cmd_generate(generate_args, workers);
        if (*experiment) cmd_experiment(experiment_args, workers);
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUser;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUser;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUser;
    } catch (const FitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUser;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad JSON: " << e.what() << '\n';
        return kExitUser;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUser;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUser;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return 0;
}
