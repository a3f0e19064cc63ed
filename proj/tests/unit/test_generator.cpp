#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "kronmom/features.hpp"
#include "kronmom/generator.hpp"
#include "kronmom/moments.hpp"
#include "kronmom/philox.hpp"

using namespace kronmom;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using C = Philox4x32::Counter;
    CHECK(Philox4x32::generate({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("counter deviates are uniform on [0, 1)") {
    double sum = 0.0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        const double u = counter_uniform(42, static_cast<std::uint64_t>(k), 7);
        CHECK_MESSAGE((u >= 0.0 && u < 1.0), u);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    CHECK(counter_uniform(1, 2, 3) == counter_uniform(1, 2, 3));
    CHECK(counter_uniform(1, 2, 3) != counter_uniform(1, 3, 2));
    CHECK(mix_seed(0) != mix_seed(1));
}

TEST_CASE("cell probabilities") {
    const KroneckerParams p(0.99, 0.48, 0.25, 3);
    CHECK(cell_probability(p, 0, 0) == doctest::Approx(std::pow(0.99, 3)).epsilon(1e-14));
    CHECK(cell_probability(p, 0, 7) == doctest::Approx(std::pow(0.48, 3)).epsilon(1e-14));
    CHECK(cell_probability(p, 5, 3) == doctest::Approx(0.48 * 0.48 * 0.25).epsilon(1e-14));
    CHECK(cell_probability({0.5, 0.0, 0.5, 4}, 1, 2) == 0.0);
    CHECK(cell_probability({0.0, 0.5, 0.5, 2}, 0, 3) > 0.0);

    const CellProbabilityTable table(p);
    for (Vertex i = 0; i < 8; ++i)
        for (Vertex j = 0; j < 8; ++j) CHECK(table(i, j) == cell_probability(p, i, j));
}

TEST_CASE("degenerate parameters") {
    const auto complete = generate({{1, 1, 1, 3}, 9});
    CHECK(complete.num_vertices() == 8);
    CHECK(complete.num_edges() == 28);

    const auto empty = generate({{0.9, 0.0, 0.7, 5}, 9});
    CHECK(empty.num_vertices() == 32);
    CHECK(empty.num_edges() == 0);

    CHECK_THROWS_AS(generate({{0.5, 0.5, 0.5, kInMemoryMaxPower + 1}, 0}), std::invalid_argument);
}

TEST_CASE("output does not depend on the worker count") {
    const GeneratorJob job{{0.99, 0.48, 0.25, 11}, 1234};
    const auto reference = generate(job, 1);
    CHECK(generate(job, 2) == reference);
    CHECK(generate(job, 5) == reference);

    std::ostringstream one, many;
    write_generated_edge_list(job, one, 1);
    write_generated_edge_list(job, many, 8);
    CHECK(one.str() == many.str());
    CHECK(generate(GeneratorJob{job.params, 1235}) != reference);
}

TEST_CASE("streamed edge list matches the in-memory graph") {
    const GeneratorJob job{{0.9, 0.6, 0.3, 7}, 77};
    std::ostringstream text;
    write_generated_edge_list(job, text, 3);
    const auto parsed = parse_edge_list(text.str());
    const auto g = generate(job);
    std::vector<Edge> streamed;
    for (auto [u, v] : parsed.graph.edge_list())
        streamed.emplace_back(parsed.original_label[u], parsed.original_label[v]);
    for (auto& e : streamed)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(streamed.begin(), streamed.end());
    CHECK(streamed == g.edge_list());

    std::istringstream lines(text.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# Stochastic Kronecker graph, exact coin flipping");
    std::getline(lines, line);
    CHECK(line == "# a=0.90000000000000002 b=0.59999999999999998 c=0.29999999999999999 r=7 seed=77");
    std::getline(lines, line);
    CHECK(line == "# vertices=128");
    Edge previous{0, 0};
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        Edge e;
        fields >> e.first >> e.second;
        CHECK(e.first < e.second);
        CHECK(previous < e);
        previous = e;
    }
}

TEST_CASE("each cell is included with its probability") {
    for (unsigned r : {3u, 4u}) {
        const KroneckerParams p(0.8, 0.55, 0.3, r);
        const Vertex n = p.num_vertices();
        const int seeds = 5000;
        std::vector<int> hits(n * n, 0);
        for (int s = 0; s < seeds; ++s) {
            for (auto [u, v] : generate({p, static_cast<std::uint64_t>(s)}).edge_list()) ++hits[u * n + v];
        }
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j) {
                const double prob = cell_probability(p, i, j);
                const double freq = static_cast<double>(hits[i * n + j]) / seeds;
                INFO("r=", r, " cell (", i, ",", j, ") p=", prob, " freq=", freq);
                CHECK(std::abs(freq - prob) <= 4 * std::sqrt(prob * (1 - prob) / seeds));
            }
    }
}

TEST_CASE("feature means match the closed form") {
    const KroneckerParams p(0.99, 0.48, 0.25, 7);
    const auto expected = expected_features(p);
    const int seeds = 200;
    std::array<double, 4> sum{}, sum_sq{};
    for (int s = 0; s < seeds; ++s) {
        const auto counts = count_features(generate({p, static_cast<std::uint64_t>(s)}));
        for (Feature f : kAllFeatures) {
            const auto k = static_cast<std::size_t>(f);
            const double x = static_cast<double>(counts[f]);
            sum[k] += x;
            sum_sq[k] += x * x;
        }
    }
    for (Feature f : kAllFeatures) {
        const auto k = static_cast<std::size_t>(f);
        const double mean = sum[k] / seeds;
        const double var = (sum_sq[k] - seeds * mean * mean) / (seeds - 1);
        const double se = std::sqrt(var / seeds);
        INFO(feature_name(f), " mean=", mean, " expected=", expected[f], " se=", se);
        CHECK(std::abs(mean - expected[f]) <= 5 * se);
        if (f == Feature::edges) CHECK(var <= 1.2 * mean);
    }
}
