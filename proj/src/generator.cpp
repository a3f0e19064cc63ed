#include "kronmom/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "kronmom/parallel.hpp"
#include "kronmom/philox.hpp"

namespace kronmom {

namespace {

// exp(n00 log a + ndiff log b + n11 log c) with 0 whenever a zero entry is
// actually used.
double pattern_probability(const KroneckerParams& p, unsigned same0, unsigned differ, unsigned same1) {
    double log_sum = 0.0;
    const std::pair<double, unsigned> factors[] = {{p.a(), same0}, {p.b(), differ}, {p.c(), same1}};
    for (auto [value, count] : factors) {
        if (count == 0) continue;
        if (value == 0.0) return 0.0;
        log_sum += static_cast<double>(count) * std::log(value);
    }
    return std::exp(log_sum);
}

// Row blocks are sized from the vertex count alone so the partition, and
// hence the output order, is the same for every worker count.
constexpr std::uint64_t kCellsPerBlock = std::uint64_t{1} << 20;

struct RowBlocks {
    std::uint64_t rows_per_block;
    std::uint64_t count;
};

RowBlocks row_blocks(std::uint64_t n) {
    const std::uint64_t rows = std::max<std::uint64_t>(1, kCellsPerBlock / std::max<std::uint64_t>(n, 1));
    return {rows, (n + rows - 1) / rows};
}

template <class Emit>
void sweep_rows(const CellProbabilityTable& table, std::uint64_t seed, std::uint64_t n, std::uint64_t row_begin,
                std::uint64_t row_end, Emit&& emit) {
    for (Vertex i = row_begin; i < row_end; ++i) {
        for (Vertex j = i + 1; j < n; ++j) {
            const double p = table(i, j);
            if (p <= 0.0) continue;
            if (p >= 1.0 || counter_uniform(seed, i, j) < p) emit(i, j);
        }
    }
}

void append_number(std::string& buf, std::uint64_t v) {
    char tmp[24];
    auto [ptr, ec] = std::to_chars(tmp, tmp + sizeof tmp, v);
    buf.append(tmp, ptr);
}

std::string format_real(double v) {
    char tmp[32];
    std::snprintf(tmp, sizeof tmp, "%.17g", v);
    return tmp;
}

}  // namespace

double cell_probability(const KroneckerParams& p, Vertex i, Vertex j) {
    const unsigned r = p.r();
    const Vertex mask = r >= 64 ? ~Vertex{0} : (Vertex{1} << r) - 1;
    const auto differ = static_cast<unsigned>(__builtin_popcountll((i ^ j) & mask));
    const auto same1 = static_cast<unsigned>(__builtin_popcountll((i & j) & mask));
    return pattern_probability(p, r - differ - same1, differ, same1);
}

CellProbabilityTable::CellProbabilityTable(const KroneckerParams& p) : stride_(p.r() + 1) {
    table_.assign(stride_ * stride_, 0.0);
    for (unsigned differ = 0; differ <= p.r(); ++differ) {
        for (unsigned same1 = 0; differ + same1 <= p.r(); ++same1) {
            table_[differ * stride_ + same1] = pattern_probability(p, p.r() - differ - same1, differ, same1);
        }
    }
}

SimpleGraph generate(const GeneratorJob& job, unsigned workers) {
    const KroneckerParams& p = job.params;
    if (p.r() > kInMemoryMaxPower) {
        throw std::invalid_argument("in-memory generation supports r <= " + std::to_string(kInMemoryMaxPower) +
                                    "; stream larger graphs to a file");
    }
    const CellProbabilityTable table(p);
    const std::uint64_t n = p.num_vertices();
    const RowBlocks blocks = row_blocks(n);

    std::vector<std::vector<Edge>> per_block(blocks.count);
    parallel_for(blocks.count, workers, [&](std::size_t b) {
        const std::uint64_t begin = b * blocks.rows_per_block;
        const std::uint64_t end = std::min(n, begin + blocks.rows_per_block);
        auto& out = per_block[b];
        sweep_rows(table, job.seed, n, begin, end, [&](Vertex u, Vertex v) { out.emplace_back(u, v); });
    });

    std::size_t total = 0;
    for (const auto& v : per_block) total += v.size();
    std::vector<Edge> edges;
    edges.reserve(total);
    for (auto& v : per_block) {
        edges.insert(edges.end(), v.begin(), v.end());
        std::vector<Edge>().swap(v);
    }
    return SimpleGraph::from_sorted_unique_edges(n, edges);
}

void write_generated_edge_list(const GeneratorJob& job, std::ostream& out, unsigned workers) {
    const KroneckerParams& p = job.params;
    const CellProbabilityTable table(p);
    const std::uint64_t n = p.num_vertices();
    const RowBlocks blocks = row_blocks(n);

    out << "# Stochastic Kronecker graph, exact coin flipping\n"
        << "# a=" << format_real(p.a()) << " b=" << format_real(p.b()) << " c=" << format_real(p.c())
        << " r=" << p.r() << " seed=" << job.seed << "\n"
        << "# vertices=" << n << "\n";

    const std::uint64_t wave = std::max<std::uint64_t>(1, workers) * 2;
    std::vector<std::string> text;
    for (std::uint64_t first = 0; first < blocks.count; first += wave) {
        const std::uint64_t count = std::min(wave, blocks.count - first);
        text.assign(count, std::string());
        parallel_for(count, workers, [&](std::size_t k) {
            const std::uint64_t begin = (first + k) * blocks.rows_per_block;
            const std::uint64_t end = std::min(n, begin + blocks.rows_per_block);
            std::string& buf = text[k];
            sweep_rows(table, job.seed, n, begin, end, [&](Vertex u, Vertex v) {
                append_number(buf, u);
                buf.push_back('\t');
                append_number(buf, v);
                buf.push_back('\n');
            });
        });
        for (const auto& chunk : text) out.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
        if (!out) throw std::runtime_error("failed writing generated edge list");
    }
    out.flush();
    if (!out) throw std::runtime_error("failed writing generated edge list");
}

void write_generated_edge_list(const GeneratorJob& job, const std::filesystem::path& path, unsigned workers) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_generated_edge_list(job, out, workers);
}

}  // namespace kronmom
