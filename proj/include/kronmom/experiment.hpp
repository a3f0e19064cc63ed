#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kronmom/estimator.hpp"
#include "kronmom/features.hpp"

namespace kronmom {

/// Kronecker parameters to sample, fit and re-sample `replications` times.
struct SyntheticSource {
    std::string name;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    unsigned r = 0;
    unsigned replications = 1;
};

/// An observed graph: an edge list, or a counts JSON from `features`.
struct GraphSource {
    std::string name;
    std::filesystem::path path;
    bool counts_json = false;
    bool directed = false;
    /// Defaults to choose_r(vertices).
    std::optional<unsigned> r;
};

struct ExperimentConfig {
    std::vector<SyntheticSource> synthetic;
    std::vector<GraphSource> graphs;
    ObjectiveSpec objective;
    std::vector<FitMethod> methods = {FitMethod::best};
    FitOptions fit;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = "results";
    /// Re-sample a graph from each synthetic fit.
    bool regenerate = true;
};

/// Parses the flat key-value format:
///
///     # global keys
///     seed = 7
///     objective = dsq-f2
///     methods = direct,grid,leading
///     [synthetic set-a]
///     params = 0.99, 0.48, 0.25
///     r = 10
///     replications = 20
///     [graph ca-GrQc]
///     path = CA-GrQc.txt
///
/// Relative paths resolve against `base_dir`. Throws ParseError with the
/// line number on malformed input.
ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir);

ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Throws std::invalid_argument if a replication count is 0 or a
/// referenced file does not exist.
void validate(const ExperimentConfig& config);

struct FitRow {
    std::string source;
    unsigned replication = 0;
    FitMethod method = FitMethod::best;
    std::optional<FitResult> result;
    std::string error;
};

struct ObservedRow {
    std::string source;
    unsigned replication = 0;
    FeatureCounts counts;
    double seconds = 0.0;
};

/// One feature of one (source, replication, method): the realized count,
/// the fitted expectation and, for synthetic sources, the count in a graph
/// re-sampled from the fitted parameters.
struct FeatureRow {
    std::string source;
    unsigned replication = 0;
    FitMethod method = FitMethod::best;
    Feature feature = Feature::edges;
    double observed = 0.0;
    double fitted_expected = 0.0;
    std::optional<double> regenerated;
    /// Expectation under the generating parameters (synthetic only).
    std::optional<double> true_expected;
};

struct SummaryRow {
    std::string source;
    FitMethod method = FitMethod::best;
    unsigned fits = 0;
    double median_a = 0.0;
    double median_b = 0.0;
    double median_c = 0.0;
    double median_objective = 0.0;
    std::optional<std::array<double, 3>> truth;
};

struct ExperimentOutputs {
    std::vector<ObservedRow> observed;
    std::vector<FitRow> fits;
    std::vector<FeatureRow> features;
    std::vector<SummaryRow> summary;
};

/// Runs every (source, replication) work item, `workers` at a time.
/// Realization k of a synthetic source uses seed + k. Rows come back sorted
/// by (source, method, replication) in config order.
ExperimentOutputs run_experiment(const ExperimentConfig& config, unsigned workers = 1);

/// Writes observed.csv, fits.csv, differences.csv, features.csv and
/// summary.csv into `dir` (created if missing).
void write_experiment_csv(const ExperimentOutputs& outputs, const std::filesystem::path& dir);

double median(std::vector<double> values);

}  // namespace kronmom
