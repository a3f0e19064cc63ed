#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace kronmom {

using Vertex = std::uint64_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected, loop-free, deduplicated graph in compressed sparse row form.
///
/// Vertex ids are 0..num_vertices()-1; every neighbor list is sorted
/// ascending. Instances are immutable once built.
class SimpleGraph {
public:
    SimpleGraph() = default;

    /// Builds a graph on `num_vertices` vertices from arbitrary pairs.
    /// Loops are dropped and duplicate or reversed pairs merged.
    /// Throws std::out_of_range if a pair references a vertex >= num_vertices.
    static SimpleGraph from_edges(Vertex num_vertices, std::span<const Edge> edges);

    /// Same as from_edges, but the caller promises pairs are already u < v,
    /// unique and sorted ascending (the generator's output order).
    static SimpleGraph from_sorted_unique_edges(Vertex num_vertices,
                                                std::span<const Edge> edges);

    Vertex num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::uint64_t num_edges() const noexcept { return neighbors_.size() / 2; }

    std::uint64_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }

    bool has_edge(Vertex u, Vertex v) const;

    /// Edges as (u, v) with u < v in ascending order.
    std::vector<Edge> edge_list() const;

    friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

private:
    std::vector<std::uint64_t> offsets_;
    std::vector<Vertex> neighbors_;
};

struct LoadStats {
    std::uint64_t lines = 0;
    std::uint64_t comment_lines = 0;
    std::uint64_t loops_dropped = 0;
    /// Repeated pairs merged, including reversed copies for undirected input.
    std::uint64_t duplicates_dropped = 0;
    /// Directed input only: (u,v)/(v,u) pairs collapsed into one undirected edge.
    std::uint64_t reciprocal_merged = 0;
    /// Vertices that only appear in self-loops.
    std::uint64_t isolated_vertices = 0;
};

struct LoadedGraph {
    SimpleGraph graph;
    /// original_label[v] is the file label of vertex v.
    std::vector<std::int64_t> original_label;
    LoadStats stats;
};

/// Reads a SNAP-style edge list: one whitespace-separated "u v" pair of
/// integer labels per line, '#' starts a comment line. Labels are densified
/// in order of first appearance. `directed_input` only changes how merged
/// reversed pairs are reported; the result is always undirected.
///
/// Throws std::runtime_error if the file cannot be read and ParseError on a
/// malformed line.
LoadedGraph load_edge_list(const std::filesystem::path& path, bool directed_input = false);

/// Parses edge-list text already in memory (same rules as load_edge_list).
LoadedGraph parse_edge_list(std::string_view text, bool directed_input = false);

/// Smallest r with 2^r >= num_vertices. Throws std::invalid_argument for 0.
unsigned choose_r(std::uint64_t num_vertices);

}  // namespace kronmom
