#include "kronmom/features.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "kronmom/errors.hpp"
#include "kronmom/parallel.hpp"

namespace kronmom {

namespace {

using u128 = unsigned __int128;

void checked_add(u128& acc, u128 term, const char* what) {
    if (__builtin_add_overflow(acc, term, &acc)) {
        throw OverflowError(std::string(what) + " accumulator overflowed 128 bits");
    }
}

std::uint64_t narrow(u128 value, const char* what) {
    if (value > std::numeric_limits<std::uint64_t>::max()) {
        throw OverflowError(std::string(what) + " count does not fit in 64 bits");
    }
    return static_cast<std::uint64_t>(value);
}

// Vertices are processed in a fixed number of contiguous slices so the
// reduction order does not depend on the worker count.
constexpr std::size_t kSlices = 64;

struct Slice {
    Vertex begin;
    Vertex end;
};

Slice slice_of(std::size_t index, Vertex n) {
    const Vertex step = (n + kSlices - 1) / kSlices;
    const Vertex begin = std::min<Vertex>(n, index * step);
    return {begin, std::min<Vertex>(n, begin + step)};
}

}  // namespace

std::string_view feature_name(Feature f) {
    switch (f) {
        case Feature::edges: return "edges";
        case Feature::hairpins: return "hairpins";
        case Feature::tripins: return "tripins";
        case Feature::triangles: return "triangles";
    }
    return "?";
}

std::optional<Feature> parse_feature(std::string_view name) {
    if (name == "edges" || name == "E") return Feature::edges;
    if (name == "hairpins" || name == "wedges" || name == "H") return Feature::hairpins;
    if (name == "tripins" || name == "stars" || name == "T") return Feature::tripins;
    if (name == "triangles" || name == "tris" || name == "Tri") return Feature::triangles;
    return std::nullopt;
}

std::uint64_t FeatureCounts::operator[](Feature f) const {
    switch (f) {
        case Feature::edges: return edges;
        case Feature::hairpins: return hairpins;
        case Feature::tripins: return tripins;
        case Feature::triangles: return triangles;
    }
    return 0;
}

DegreeFeatures count_degree_features(const SimpleGraph& g, unsigned workers) {
    struct Partial {
        u128 degree_sum = 0;
        u128 pairs = 0;    // sum d(d-1)/2
        u128 triples = 0;  // sum d(d-1)(d-2)/6
    };
    std::vector<Partial> partial(kSlices);
    const Vertex n = g.num_vertices();

    parallel_for(kSlices, workers, [&](std::size_t s) {
        auto [begin, end] = slice_of(s, n);
        Partial acc;
        for (Vertex v = begin; v < end; ++v) {
            const u128 d = g.degree(v);
            if (d < 2) {
                checked_add(acc.degree_sum, d, "edge");
                continue;
            }
            // d(d-1) is even and d(d-1)(d-2) divisible by 6; divide before
            // the next multiply to stay well inside 128 bits.
            const u128 choose2 = d * (d - 1) / 2;
            u128 choose3 = 0;
            if (__builtin_mul_overflow(choose2, d - 2, &choose3)) {
                throw OverflowError("tripin term overflowed 128 bits");
            }
            choose3 /= 3;
            checked_add(acc.degree_sum, d, "edge");
            checked_add(acc.pairs, choose2, "hairpin");
            checked_add(acc.triples, choose3, "tripin");
        }
        partial[s] = acc;
    });

    Partial total;
    for (const auto& p : partial) {
        checked_add(total.degree_sum, p.degree_sum, "edge");
        checked_add(total.pairs, p.pairs, "hairpin");
        checked_add(total.triples, p.triples, "tripin");
    }
    return {narrow(total.degree_sum / 2, "edge"), narrow(total.pairs, "hairpin"),
            narrow(total.triples, "tripin")};
}

std::uint64_t count_triangles(const SimpleGraph& g, unsigned workers) {
    const Vertex n = g.num_vertices();

    // rank order: degree, then id. Orient every edge toward the higher rank.
    auto higher = [&](Vertex u, Vertex v) {
        const auto du = g.degree(u);
        const auto dv = g.degree(v);
        return dv > du || (dv == du && v > u);
    };

    std::vector<std::uint64_t> offsets(n + 1, 0);
    for (Vertex u = 0; u < n; ++u) {
        std::uint64_t out = 0;
        for (Vertex v : g.neighbors(u)) out += higher(u, v) ? 1 : 0;
        offsets[u + 1] = offsets[u] + out;
    }
    std::vector<Vertex> forward(offsets[n]);
    for (Vertex u = 0; u < n; ++u) {
        std::uint64_t k = offsets[u];
        // neighbors are sorted by id, so each forward list is sorted by id too.
        for (Vertex v : g.neighbors(u)) {
            if (higher(u, v)) forward[k++] = v;
        }
    }

    std::vector<u128> partial(kSlices, 0);
    parallel_for(kSlices, workers, [&](std::size_t s) {
        auto [begin, end] = slice_of(s, n);
        u128 acc = 0;
        for (Vertex u = begin; u < end; ++u) {
            const Vertex* ub = forward.data() + offsets[u];
            const Vertex* ue = forward.data() + offsets[u + 1];
            for (const Vertex* p = ub; p != ue; ++p) {
                const Vertex v = *p;
                const Vertex* a = ub;
                const Vertex* b = forward.data() + offsets[v];
                const Vertex* be = forward.data() + offsets[v + 1];
                std::uint64_t common = 0;
                while (a != ue && b != be) {
                    if (*a < *b) {
                        ++a;
                    } else if (*b < *a) {
                        ++b;
                    } else {
                        ++common;
                        ++a;
                        ++b;
                    }
                }
                acc += common;
            }
        }
        partial[s] = acc;
    });

    u128 total = 0;
    for (auto p : partial) checked_add(total, p, "triangle");
    return narrow(total, "triangle");
}

FeatureCounts count_features(const SimpleGraph& g, unsigned workers) {
    const auto deg = count_degree_features(g, workers);
    FeatureCounts out;
    out.vertices = g.num_vertices();
    out.edges = deg.edges;
    out.hairpins = deg.hairpins;
    out.tripins = deg.tripins;
    out.triangles = count_triangles(g, workers);
    return out;
}

}  // namespace kronmom
