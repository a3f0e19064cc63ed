#include "kronmom/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace kronmom {

namespace {

nlohmann::json number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

nlohmann::json params_json(const KroneckerParams& p) {
    return {{"a", p.a()}, {"b", p.b()}, {"c", p.c()}, {"r", p.r()}, {"swapped", p.swapped()}};
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

nlohmann::json to_json(const FeatureCounts& c) {
    return {{"vertices", c.vertices}, {"edges", c.edges},       {"hairpins", c.hairpins},
            {"tripins", c.tripins},   {"triangles", c.triangles}};
}

nlohmann::json to_json(const LoadStats& s) {
    return {{"lines", s.lines},
            {"comment_lines", s.comment_lines},
            {"loops_dropped", s.loops_dropped},
            {"duplicates_dropped", s.duplicates_dropped},
            {"reciprocal_merged", s.reciprocal_merged},
            {"isolated_vertices", s.isolated_vertices}};
}

nlohmann::json expected_to_json(const KroneckerParams& p) {
    const auto e = expected_features(p);
    const auto dom = dominance_exponent(p);
    nlohmann::json j = params_json(p);
    j["E"] = e.edges;
    j["H"] = e.hairpins;
    j["T"] = e.tripins;
    j["Tri"] = e.triangles;
    j["alpha"] = number_or_null(dom.alpha);
    j["alpha_weak"] = dom.weak;
    j["alpha_degenerate"] = dom.degenerate;
    return j;
}

nlohmann::json to_json(const FitResult& fit, const FeatureCounts& observed) {
    nlohmann::json j;
    j["method"] = fit_method_name(fit.method);
    j["chosen_method"] = fit_method_name(fit.chosen_method);
    j["params"] = params_json(fit.params);
    j["vertices"] = fit.params.num_vertices();
    j["objective"] = number_or_null(fit.objective_value);
    j["expected"] = {{"edges", fit.expected.edges},
                     {"hairpins", fit.expected.hairpins},
                     {"tripins", fit.expected.tripins},
                     {"triangles", fit.expected.triangles}};
    nlohmann::json ratios;
    for (Feature f : kAllFeatures) {
        ratios[std::string(feature_name(f))] = number_or_null(fit.feature_ratios[static_cast<std::size_t>(f)]);
    }
    j["ratios"] = ratios;
    j["observed"] = to_json(observed);
    j["seconds"] = fit.elapsed_seconds;
    j["warnings"] = fit.warnings;
    if (fit.held_out) {
        j["held_out"] = {{"feature", feature_name(*fit.held_out)},
                         {"ratio", number_or_null(fit.held_out_ratio.value_or(NAN))}};
    }
    if (!fit.diagnostics.empty()) {
        nlohmann::json diags = nlohmann::json::array();
        for (const auto& d : fit.diagnostics) {
            nlohmann::json dj{{"method", fit_method_name(d.method)},
                              {"succeeded", d.succeeded},
                              {"seconds", d.elapsed_seconds}};
            if (d.params) dj["params"] = params_json(*d.params);
            if (d.succeeded) dj["objective"] = number_or_null(d.objective_value);
            if (!d.error.empty()) dj["error"] = d.error;
            diags.push_back(std::move(dj));
        }
        j["diagnostics"] = diags;
    }
    return j;
}

FeatureCounts counts_from_json(const nlohmann::json& j) {
    auto get = [&](const char* key, bool required) -> std::uint64_t {
        if (!j.contains(key)) {
            if (required) throw std::invalid_argument(std::string("counts JSON is missing '") + key + "'");
            return 0;
        }
        const auto& v = j.at(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (d >= 0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
        }
        throw std::invalid_argument(std::string("counts JSON key '") + key + "' must be a non-negative integer");
    };
    FeatureCounts c;
    c.vertices = get("vertices", true);
    c.edges = get("edges", true);
    c.hairpins = get("hairpins", true);
    c.tripins = get("tripins", true);
    c.triangles = get("triangles", true);
    return c;
}

std::string fit_csv_header() {
    return "fit_type,a,b,c,verts,edges,hairpins,tripins,triangles,objective,seconds";
}

std::string fit_csv_row(std::string_view fit_type, const FitResult& fit) {
    std::string row(fit_type);
    for (double v : {fit.params.a(), fit.params.b(), fit.params.c()}) row += "," + format_number(v);
    row += "," + std::to_string(fit.params.num_vertices());
    for (double v : fit.feature_ratios) row += "," + format_number(v);
    row += "," + format_number(fit.objective_value);
    row += "," + format_number(fit.elapsed_seconds);
    return row;
}

std::string source_csv_row(const FeatureCounts& c, double seconds) {
    return "source,,,," + std::to_string(c.vertices) + "," + std::to_string(c.edges) + "," +
           std::to_string(c.hairpins) + "," + std::to_string(c.tripins) + "," + std::to_string(c.triangles) +
           ",," + format_number(seconds);
}

}  // namespace kronmom
