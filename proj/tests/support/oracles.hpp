#pragma once

// Slow reference implementations shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "kronmom/features.hpp"
#include "kronmom/graph_io.hpp"
#include "kronmom/moments.hpp"

namespace kronmom::testing {

inline SimpleGraph erdos_renyi(Vertex n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    return SimpleGraph::from_edges(n, edges);
}

/// Counts by looking at every pair, triple and 4-star of vertices.
inline FeatureCounts enumerate_counts(const SimpleGraph& g) {
    const Vertex n = g.num_vertices();
    FeatureCounts out;
    out.vertices = n;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (g.has_edge(u, v)) ++out.edges;

    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j) {
            if (j == i || !g.has_edge(i, j)) continue;
            for (Vertex k = j + 1; k < n; ++k) {
                if (k == i || !g.has_edge(i, k)) continue;
                ++out.hairpins;
                for (Vertex l = k + 1; l < n; ++l)
                    if (l != i && g.has_edge(i, l)) ++out.tripins;
            }
        }

    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            if (!g.has_edge(u, v)) continue;
            for (Vertex w = v + 1; w < n; ++w)
                if (g.has_edge(u, w) && g.has_edge(v, w)) ++out.triangles;
        }
    return out;
}

/// Expected tripins by literal enumeration of (center, j < k < l).
inline double literal_tripin_expectation(const KroneckerParams& p) {
    const ProbabilityMatrix P(p);
    const auto n = P.size();
    double total = 0.0;
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::uint64_t k = j + 1; k < n; ++k) {
                if (k == i) continue;
                for (std::uint64_t l = k + 1; l < n; ++l)
                    if (l != i) total += P(i, j) * P(i, k) * P(i, l);
            }
        }
    return total;
}

/// Expected tripins with +5 and +4 on the two mixed diagonal terms instead
/// of +3 and +6. Reference tables were computed with this variant; it
/// disagrees with enumeration whenever those terms are not negligible.
inline double misprinted_tripin_expectation(double a, double b, double c, unsigned r) {
    auto pw = [r](double x) { return std::pow(x, static_cast<int>(r)); };
    return (pw(std::pow(a + b, 3) + std::pow(b + c, 3)) - 3 * pw(a * (a + b) * (a + b) + c * (b + c) * (b + c)) -
            3 * pw((a * a + b * b) * (a + b) + (b * b + c * c) * (b + c)) + 2 * pw(a * a * a + 2 * b * b * b + c * c * c) +
            5 * pw(a * (a * a + b * b) + c * (b * b + c * c)) + 4 * pw(a * a * (a + b) + c * c * (b + c)) -
            6 * pw(a * a * a + c * c * c)) /
           6;
}

inline double relative_error(double expected, double actual) {
    const double scale = std::max(std::abs(expected), std::abs(actual));
    return scale == 0.0 ? 0.0 : std::abs(expected - actual) / scale;
}

}  // namespace kronmom::testing
