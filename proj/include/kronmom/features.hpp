#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "kronmom/graph_io.hpp"

namespace kronmom {

/// The four moment features, in reporting order.
enum class Feature : std::uint8_t { edges = 0, hairpins = 1, tripins = 2, triangles = 3 };

inline constexpr std::array<Feature, 4> kAllFeatures = {Feature::edges, Feature::hairpins,
                                                         Feature::tripins, Feature::triangles};

std::string_view feature_name(Feature f);
/// Accepts the names produced by feature_name plus a few aliases
/// ("tris", "wedges", "stars"). Returns nullopt for anything else.
std::optional<Feature> parse_feature(std::string_view name);

/// Exact feature counts of a concrete graph.
struct FeatureCounts {
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    std::uint64_t hairpins = 0;
    std::uint64_t tripins = 0;
    std::uint64_t triangles = 0;

    std::uint64_t operator[](Feature f) const;

    friend bool operator==(const FeatureCounts&, const FeatureCounts&) = default;
};

struct DegreeFeatures {
    std::uint64_t edges = 0;
    std::uint64_t hairpins = 0;
    std::uint64_t tripins = 0;
};

/// E = sum(d)/2, H = sum d(d-1)/2, T = sum d(d-1)(d-2)/6, accumulated in
/// 128 bits. Throws OverflowError if a total does not fit in 64 bits.
DegreeFeatures count_degree_features(const SimpleGraph& g, unsigned workers = 1);

/// Exact triangle count by degree-ordered neighbor intersection; each
/// triangle is found once from its lowest-ranked vertex.
std::uint64_t count_triangles(const SimpleGraph& g, unsigned workers = 1);

FeatureCounts count_features(const SimpleGraph& g, unsigned workers = 1);

}  // namespace kronmom
