#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "kronmom/estimator.hpp"
#include "kronmom/features.hpp"
#include "kronmom/graph_io.hpp"
#include "kronmom/moments.hpp"

namespace kronmom {

nlohmann::json to_json(const FeatureCounts& counts);
nlohmann::json to_json(const LoadStats& stats);
/// {a, b, c, r, E, H, T, Tri, alpha, ...}; alpha is null when infinite.
nlohmann::json expected_to_json(const KroneckerParams& p);
nlohmann::json to_json(const FitResult& fit, const FeatureCounts& observed);

/// Reads the object written by to_json(FeatureCounts). Throws
/// std::invalid_argument when a required key is missing or negative.
FeatureCounts counts_from_json(const nlohmann::json& j);

/// Column header for fit rows: fit_type, a, b, c, verts, the four ratios,
/// objective, seconds.
std::string fit_csv_header();
std::string fit_csv_row(std::string_view fit_type, const FitResult& fit);
/// The "Source" row: observed counts in the ratio columns.
std::string source_csv_row(const FeatureCounts& observed, double seconds);

/// Shortest text that round-trips the double; "nan"/"inf" for non-finite.
std::string format_number(double v);

}  // namespace kronmom
