#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kronmom/features.hpp"
#include "kronmom/moments.hpp"

namespace kronmom {

enum class Distance : std::uint8_t { squared, absolute };

/// Denominator of each objective term: observed F, F^2, expected E, E^2.
enum class Normalization : std::uint8_t { observed, observed_squared, expected, expected_squared };

/// Subset of the four features.
class FeatureSet {
public:
    constexpr FeatureSet() = default;

    static constexpr FeatureSet all() { return FeatureSet(0b1111); }
    /// Comma-separated feature names, e.g. "edges,hairpins,tripins".
    /// Throws std::invalid_argument on an unknown name.
    static FeatureSet parse(std::string_view list);

    constexpr bool contains(Feature f) const { return (mask_ >> static_cast<unsigned>(f)) & 1u; }
    constexpr FeatureSet with(Feature f) const { return FeatureSet(mask_ | bit(f)); }
    constexpr FeatureSet without(Feature f) const { return FeatureSet(mask_ & ~bit(f)); }
    constexpr unsigned size() const { return static_cast<unsigned>(__builtin_popcount(mask_)); }
    constexpr bool empty() const { return mask_ == 0; }

    std::string to_string() const;

    friend constexpr bool operator==(FeatureSet, FeatureSet) = default;

private:
    constexpr explicit FeatureSet(unsigned mask) : mask_(mask) {}
    static constexpr unsigned bit(Feature f) { return 1u << static_cast<unsigned>(f); }

    unsigned mask_ = 0;
};

/// Objective: sum over the feature set of D(F, E(F)) / N(F, E(F)).
struct ObjectiveSpec {
    Distance distance = Distance::squared;
    Normalization normalization = Normalization::observed_squared;
    FeatureSet features = FeatureSet::all();

    /// Parses "dsq-f", "dsq-f2", "dsq-e", "dsq-e2", "dabs-f", "dabs-e".
    /// The absolute distance with a squared normalization is rejected.
    static ObjectiveSpec parse(std::string_view name, FeatureSet features = FeatureSet::all());

    std::string name() const;

    /// Throws std::invalid_argument for an empty feature set, an absolute
    /// distance with a squared normalization, or (when fitting three
    /// parameters) fewer than three features.
    void validate(bool for_fitting) const;
};

struct ObjectiveEvaluation {
    double value = 0.0;
    std::vector<std::string> warnings;
};

/// Objective for already-evaluated expectations. Features observed as 0
/// under an observed-count normalization are skipped; a zero expected
/// denominator with a nonzero distance contributes +infinity.
double objective_from_expected(const ExpectedFeatures& expected, const ObjectiveSpec& spec,
                               const FeatureCounts& observed);

/// Same value as objective_from_expected plus a warning per skipped or
/// infinite term.
ObjectiveEvaluation evaluate_objective_detailed(const KroneckerParams& p, const ObjectiveSpec& spec,
                                                const FeatureCounts& observed);

double evaluate_objective(const KroneckerParams& p, const ObjectiveSpec& spec, const FeatureCounts& observed);

enum class FitMethod : std::uint8_t { direct, grid, leading, best };

std::string_view fit_method_name(FitMethod m);
std::optional<FitMethod> parse_fit_method(std::string_view name);

/// Outcome of one procedure inside fit_best.
struct MethodDiagnostic {
    FitMethod method;
    bool succeeded = false;
    std::optional<KroneckerParams> params;
    double objective_value = 0.0;
    double elapsed_seconds = 0.0;
    std::string error;
};

struct FitResult {
    KroneckerParams params;
    double objective_value = 0.0;
    ExpectedFeatures expected;
    /// E(F) / F_obs in feature order; NaN where F_obs is 0.
    std::array<double, 4> feature_ratios{};
    FitMethod method = FitMethod::direct;
    /// For fit_best: the procedure whose parameters were returned.
    FitMethod chosen_method = FitMethod::direct;
    double elapsed_seconds = 0.0;
    std::vector<std::string> warnings;
    std::vector<MethodDiagnostic> diagnostics;
    /// Set when the objective used exactly three features.
    std::optional<Feature> held_out;
    std::optional<double> held_out_ratio;
};

struct LeadingTransforms {
    double e = 0.0;      // (2E)^(1/r)
    double h = 0.0;      // (2H)^(1/r)
    double delta = 0.0;  // (6 triangles)^(1/r)
    double t = 0.0;      // (6T)^(1/r)
    /// a + b and b + c from the edge and hairpin lead terms; NaN if infeasible.
    double x = 0.0;
    double y = 0.0;
    bool feasible = false;
};

LeadingTransforms leading_transforms(const FeatureCounts& observed, unsigned r);

/// Exact integer form of h <= e^2 <= 2h: 2H <= 4E^2 <= 2^(r+1) H. With
/// N = 2^r vertices the right inequality says the degree variance is at
/// least the mean degree.
bool lead_terms_feasible(const FeatureCounts& observed, unsigned r);

struct GridOptions {
    /// Grid spacing is 1/points_per_dim; both endpoints are included.
    unsigned points_per_dim = 100;
    unsigned workers = 1;
};

struct DirectOptions {
    unsigned starts = 50;
    std::uint64_t seed = 0;
    double diameter_tolerance = 1e-8;
    unsigned max_iterations = 2000;
    unsigned workers = 1;
};

struct LeadingOptions {
    double b_step = 1e-4;
};

struct FitOptions {
    DirectOptions direct;
    GridOptions grid;
    LeadingOptions leading;
};

/// Exhaustive search over the grid restricted to a >= c. Ties go to the
/// lexicographically smallest (a, b, c).
FitResult fit_grid(const FeatureCounts& observed, unsigned r, const ObjectiveSpec& spec,
                   const GridOptions& options = {});

/// Best of `starts` bounded Nelder-Mead runs from uniform random starts in
/// the canonical region. Deterministic given the seed.
/// Throws FitError if no start reaches a finite objective.
FitResult fit_direct(const FeatureCounts& observed, unsigned r, const ObjectiveSpec& spec,
                     const DirectOptions& options = {});

/// Lead-term matching: solves the edge and hairpin lead terms for a+b and
/// b+c, then scans b for the best triangle lead-term match. `spec` is only
/// used to score the answer.
/// Throws std::invalid_argument unless E, H and triangles are positive, and
/// InfeasibleError when the lead-term equations have no real solution.
FitResult fit_leading(const FeatureCounts& observed, unsigned r, const ObjectiveSpec& spec = {},
                      const LeadingOptions& options = {});

/// Runs direct, grid and leading (leading is skipped when infeasible) and
/// returns the lowest objective. Throws FitError only if all three fail.
FitResult fit_best(const FeatureCounts& observed, unsigned r, const ObjectiveSpec& spec,
                   const FitOptions& options = {});

/// fit_best on a three-feature objective; the result reports the ratio of
/// the held-out feature.
FitResult fit_partial(const FeatureCounts& observed, unsigned r, const ObjectiveSpec& spec,
                      const FitOptions& options = {});

/// Dispatches on `method`.
FitResult fit(FitMethod method, const FeatureCounts& observed, unsigned r, const ObjectiveSpec& spec,
              const FitOptions& options = {});

}  // namespace kronmom
