#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "kronmom/errors.hpp"
#include "kronmom/graph_io.hpp"

using namespace kronmom;

TEST_CASE("loops dropped, reversed and repeated pairs merged") {
    const auto loaded = parse_edge_list("1 2\n2 1\n3 3\n# c\n1 2\n");
    CHECK(loaded.graph.num_vertices() == 3);
    CHECK(loaded.graph.num_edges() == 1);
    CHECK(loaded.graph.has_edge(0, 1));
    CHECK(loaded.stats.loops_dropped == 1);
    CHECK(loaded.stats.duplicates_dropped == 2);
    CHECK(loaded.stats.comment_lines == 1);
    CHECK(loaded.stats.isolated_vertices == 1);
    CHECK(loaded.original_label == std::vector<std::int64_t>{1, 2, 3});
}

TEST_CASE("directed input reports reciprocal pairs separately") {
    const auto loaded = parse_edge_list("1 2\n2 1\n1 2\n", true);
    CHECK(loaded.graph.num_edges() == 1);
    CHECK(loaded.stats.duplicates_dropped == 1);
    CHECK(loaded.stats.reciprocal_merged == 1);
}

TEST_CASE("empty input") {
    const auto loaded = parse_edge_list("");
    CHECK(loaded.graph.num_vertices() == 0);
    CHECK(loaded.graph.num_edges() == 0);
    const auto comments = parse_edge_list("# only\n\n   \n");
    CHECK(comments.graph.num_vertices() == 0);
}

TEST_CASE("labels densified by first appearance") {
    const auto loaded = parse_edge_list("100 7\n7 -3\t\n  42   100\r\n");
    CHECK(loaded.original_label == std::vector<std::int64_t>{100, 7, -3, 42});
    CHECK(loaded.graph.has_edge(0, 1));
    CHECK(loaded.graph.has_edge(1, 2));
    CHECK(loaded.graph.has_edge(0, 3));
    CHECK_FALSE(loaded.graph.has_edge(2, 3));
}

TEST_CASE("malformed lines report their line number") {
    auto line_of = [](std::string_view text) {
        try {
            parse_edge_list(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("1 2\n# x\n3 x\n") == 3);
    CHECK(line_of("1 2\n5\n") == 2);
    CHECK(line_of("1 2 3\n") == 1);
    CHECK(line_of("1.5 2\n") == 1);
}

TEST_CASE("unreadable file") {
    CHECK_THROWS_AS(load_edge_list("/nonexistent/graph.txt"), std::runtime_error);
}

TEST_CASE("loading a file twice gives identical graphs") {
    const auto path = std::filesystem::temp_directory_path() / "kronmom_io_twice.txt";
    {
        std::ofstream out(path);
        out << "# header\n5 9\n9 2\n2 5\n5 11\n11 9\n";
    }
    const auto first = load_edge_list(path);
    const auto second = load_edge_list(path);
    CHECK(first.graph == second.graph);
    CHECK(first.original_label == second.original_label);
    std::filesystem::remove(path);
}

TEST_CASE("degree sum and sorted adjacency") {
    const auto loaded = parse_edge_list("0 4\n4 1\n3 0\n1 0\n2 4\n4 3\n");
    const auto& g = loaded.graph;
    std::uint64_t sum = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        sum += g.degree(v);
        const auto nb = g.neighbors(v);
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        for (Vertex u : nb) {
            CHECK(u < g.num_vertices());
            CHECK(u != v);
        }
    }
    CHECK(sum == 2 * g.num_edges());
}

TEST_CASE("from_edges validates endpoints") {
    const std::vector<Edge> bad = {{0, 5}};
    CHECK_THROWS_AS(SimpleGraph::from_edges(3, bad), std::out_of_range);
    const std::vector<Edge> messy = {{2, 1}, {1, 2}, {0, 0}, {0, 2}};
    const auto g = SimpleGraph::from_edges(3, messy);
    CHECK(g.edge_list() == std::vector<Edge>{{0, 2}, {1, 2}});
}

TEST_CASE("choose_r") {
    CHECK(choose_r(5242) == 13);
    CHECK(choose_r(16384) == 14);
    CHECK(choose_r(16385) == 15);
    CHECK(choose_r(1) == 0);
    CHECK(choose_r(2) == 1);
    CHECK_THROWS_AS(choose_r(0), std::invalid_argument);
}
