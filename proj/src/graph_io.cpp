#include "kronmom/graph_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "kronmom/errors.hpp"

namespace kronmom {

namespace {

bool is_space(char ch) {
    return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\v' || ch == '\f';
}

std::int64_t parse_label(std::string_view token, std::size_t line_no) {
    std::int64_t value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw ParseError("line " + std::to_string(line_no) + ": expected an integer vertex label, got '" +
                             std::string(token) + "'",
                         line_no);
    }
    return value;
}

}  // namespace

SimpleGraph SimpleGraph::from_sorted_unique_edges(Vertex num_vertices, std::span<const Edge> edges) {
    SimpleGraph g;
    g.offsets_.assign(num_vertices + 1, 0);
    for (const auto& [u, v] : edges) {
        if (u >= v || v >= num_vertices) {
            throw std::out_of_range("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") is not an ordered pair inside the vertex range");
        }
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (Vertex i = 0; i < num_vertices; ++i) g.offsets_[i + 1] += g.offsets_[i];

    g.neighbors_.resize(2 * edges.size());
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Two passes keep every list sorted without a per-vertex sort: lower
    // neighbors (as v of an earlier pair) are all smaller than upper ones.
    for (const auto& [u, v] : edges) g.neighbors_[cursor[v]++] = u;
    for (const auto& [u, v] : edges) g.neighbors_[cursor[u]++] = v;
    return g;
}

SimpleGraph SimpleGraph::from_edges(Vertex num_vertices, std::span<const Edge> edges) {
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u >= num_vertices || v >= num_vertices) {
            throw std::out_of_range("edge endpoint outside vertex range");
        }
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        canon.emplace_back(u, v);
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    return from_sorted_unique_edges(num_vertices, canon);
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const {
    if (u >= num_vertices() || v >= num_vertices()) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> SimpleGraph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < num_vertices(); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

LoadedGraph parse_edge_list(std::string_view text, bool directed_input) {
    LoadedGraph result;
    auto& stats = result.stats;
    std::unordered_map<std::int64_t, Vertex> ids;
    std::vector<Edge> ordered;

    auto intern = [&](std::int64_t label) {
        auto [it, inserted] = ids.try_emplace(label, static_cast<Vertex>(result.original_label.size()));
        if (inserted) result.original_label.push_back(label);
        return it->second;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        ++stats.lines;

        std::size_t i = 0;
        while (i < line.size() && is_space(line[i])) ++i;
        if (i == line.size()) continue;
        if (line[i] == '#') {
            ++stats.comment_lines;
            continue;
        }

        std::string_view tokens[2];
        int count = 0;
        while (i < line.size()) {
            std::size_t j = i;
            while (j < line.size() && !is_space(line[j])) ++j;
            if (count == 2) {
                throw ParseError("line " + std::to_string(line_no) + ": expected exactly two labels", line_no);
            }
            tokens[count++] = line.substr(i, j - i);
            i = j;
            while (i < line.size() && is_space(line[i])) ++i;
        }
        if (count != 2) {
            throw ParseError("line " + std::to_string(line_no) + ": expected exactly two labels", line_no);
        }

        const Vertex u = intern(parse_label(tokens[0], line_no));
        const Vertex v = intern(parse_label(tokens[1], line_no));
        if (u == v) {
            ++stats.loops_dropped;
            continue;
        }
        ordered.emplace_back(u, v);
    }

    const Vertex n = result.original_label.size();
    const std::uint64_t raw_pairs = ordered.size();

    // Exact repeats of the same ordered pair.
    std::sort(ordered.begin(), ordered.end());
    ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
    const std::uint64_t exact_repeats = raw_pairs - ordered.size();

    std::vector<Edge> undirected;
    undirected.reserve(ordered.size());
    for (auto [u, v] : ordered) undirected.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(undirected.begin(), undirected.end());
    undirected.erase(std::unique(undirected.begin(), undirected.end()), undirected.end());
    const std::uint64_t reversed = ordered.size() - undirected.size();

    if (directed_input) {
        stats.duplicates_dropped = exact_repeats;
        stats.reciprocal_merged = reversed;
    } else {
        stats.duplicates_dropped = exact_repeats + reversed;
    }

    result.graph = SimpleGraph::from_sorted_unique_edges(n, undirected);
    for (Vertex v = 0; v < n; ++v) {
        if (result.graph.degree(v) == 0) ++stats.isolated_vertices;
    }
    return result;
}

LoadedGraph load_edge_list(const std::filesystem::path& path, bool directed_input) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open edge list '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::runtime_error("error while reading '" + path.string() + "'");
    return parse_edge_list(buffer.str(), directed_input);
}

unsigned choose_r(std::uint64_t num_vertices) {
    if (num_vertices == 0) throw std::invalid_argument("choose_r needs at least one vertex");
    return static_cast<unsigned>(std::bit_width(num_vertices - 1));
}

}  // namespace kronmom
