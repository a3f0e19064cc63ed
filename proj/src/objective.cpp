#include "kronmom/estimator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kronmom {

namespace {

bool normalizes_by_observed(Normalization n) {
    return n == Normalization::observed || n == Normalization::observed_squared;
}

bool squared_normalization(Normalization n) {
    return n == Normalization::observed_squared || n == Normalization::expected_squared;
}

enum class TermStatus { ok, skipped, infinite };

struct Term {
    double value;
    TermStatus status;
};

Term objective_term(double observed, double expected, Distance distance, Normalization normalization) {
    if (normalizes_by_observed(normalization) && observed == 0.0) return {0.0, TermStatus::skipped};

    const double diff = observed - expected;
    const double numerator = distance == Distance::squared ? diff * diff : std::abs(diff);
    double denominator = 0.0;
    switch (normalization) {
        case Normalization::observed: denominator = observed; break;
        case Normalization::observed_squared: denominator = observed * observed; break;
        case Normalization::expected: denominator = expected; break;
        case Normalization::expected_squared: denominator = expected * expected; break;
    }
    if (denominator == 0.0) {
        if (numerator == 0.0) return {0.0, TermStatus::ok};
        return {std::numeric_limits<double>::infinity(), TermStatus::infinite};
    }
    return {numerator / denominator, TermStatus::ok};
}

}  // namespace

FeatureSet FeatureSet::parse(std::string_view list) {
    FeatureSet out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        std::size_t end = list.find(',', pos);
        if (end == std::string_view::npos) end = list.size();
        std::string_view name = list.substr(pos, end - pos);
        while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
        while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
        if (!name.empty()) {
            auto f = parse_feature(name);
            if (!f) throw std::invalid_argument("unknown feature '" + std::string(name) + "'");
            out = out.with(*f);
        }
        pos = end + 1;
    }
    return out;
}

std::string FeatureSet::to_string() const {
    std::string out;
    for (Feature f : kAllFeatures) {
        if (!contains(f)) continue;
        if (!out.empty()) out += ',';
        out += feature_name(f);
    }
    return out;
}

ObjectiveSpec ObjectiveSpec::parse(std::string_view name, FeatureSet features) {
    ObjectiveSpec spec;
    spec.features = features;
    const auto dash = name.find('-');
    if (dash == std::string_view::npos) {
        throw std::invalid_argument("objective must look like dsq-f2 or dabs-e, got '" + std::string(name) + "'");
    }
    const auto d = name.substr(0, dash);
    const auto n = name.substr(dash + 1);
    if (d == "dsq") {
        spec.distance = Distance::squared;
    } else if (d == "dabs") {
        spec.distance = Distance::absolute;
    } else {
        throw std::invalid_argument("unknown distance '" + std::string(d) + "' (use dsq or dabs)");
    }
    if (n == "f") {
        spec.normalization = Normalization::observed;
    } else if (n == "f2") {
        spec.normalization = Normalization::observed_squared;
    } else if (n == "e") {
        spec.normalization = Normalization::expected;
    } else if (n == "e2") {
        spec.normalization = Normalization::expected_squared;
    } else {
        throw std::invalid_argument("unknown normalization '" + std::string(n) + "' (use f, f2, e or e2)");
    }
    spec.validate(false);
    return spec;
}

std::string ObjectiveSpec::name() const {
    std::string out = distance == Distance::squared ? "dsq-" : "dabs-";
    switch (normalization) {
        case Normalization::observed: out += "f"; break;
        case Normalization::observed_squared: out += "f2"; break;
        case Normalization::expected: out += "e"; break;
        case Normalization::expected_squared: out += "e2"; break;
    }
    return out;
}

void ObjectiveSpec::validate(bool for_fitting) const {
    if (features.empty()) throw std::invalid_argument("objective needs at least one feature");
    if (distance == Distance::absolute && squared_normalization(normalization)) {
        throw std::invalid_argument("the absolute distance cannot be combined with a squared normalization (" +
                                    name() + ")");
    }
    if (for_fitting && features.size() < 3) {
        throw std::invalid_argument("fitting three parameters needs at least three features, got " +
                                    std::to_string(features.size()));
    }
}

double objective_from_expected(const ExpectedFeatures& expected, const ObjectiveSpec& spec,
                               const FeatureCounts& observed) {
    double total = 0.0;
    for (Feature f : kAllFeatures) {
        if (!spec.features.contains(f)) continue;
        total += objective_term(static_cast<double>(observed[f]), expected[f], spec.distance, spec.normalization)
                     .value;
    }
    return total;
}

ObjectiveEvaluation evaluate_objective_detailed(const KroneckerParams& p, const ObjectiveSpec& spec,
                                                const FeatureCounts& observed) {
    spec.validate(false);
    const ExpectedFeatures expected = expected_features(p);
    ObjectiveEvaluation out;
    for (Feature f : kAllFeatures) {
        if (!spec.features.contains(f)) continue;
        const Term term =
            objective_term(static_cast<double>(observed[f]), expected[f], spec.distance, spec.normalization);
        if (term.status == TermStatus::skipped) {
            out.warnings.push_back("observed " + std::string(feature_name(f)) +
                                   " is 0; term dropped from the objective");
        } else if (term.status == TermStatus::infinite) {
            out.warnings.push_back("expected " + std::string(feature_name(f)) +
                                   " is 0 but observed is not; term is infinite");
        }
        out.value += term.value;
    }
    return out;
}

double evaluate_objective(const KroneckerParams& p, const ObjectiveSpec& spec, const FeatureCounts& observed) {
    spec.validate(false);
    return objective_from_expected(expected_features(p), spec, observed);
}

}  // namespace kronmom
