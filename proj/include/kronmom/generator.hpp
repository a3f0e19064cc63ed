#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "kronmom/graph_io.hpp"
#include "kronmom/moments.hpp"

namespace kronmom {

/// P_ij for the r-fold initiator power, evaluated as the exponential of the
/// summed log initiator entries. Exactly 0 when any factor is 0.
double cell_probability(const KroneckerParams& p, Vertex i, Vertex j);

/// Cell probabilities grouped by bit pattern. P_ij depends only on how many
/// bit positions are (0,0), differ, or are (1,1), so r+1 squared values cover
/// the whole matrix.
class CellProbabilityTable {
public:
    explicit CellProbabilityTable(const KroneckerParams& p);

    double operator()(Vertex i, Vertex j) const {
        return table_[static_cast<unsigned>(__builtin_popcountll(i ^ j)) * stride_ +
                      static_cast<unsigned>(__builtin_popcountll(i & j))];
    }

private:
    unsigned stride_;
    std::vector<double> table_;
};

struct GeneratorJob {
    KroneckerParams params;
    std::uint64_t seed = 0;
};

/// Largest r accepted by generate(); bigger sweeps must stream to a file.
inline constexpr unsigned kInMemoryMaxPower = 17;
/// The CLI warns about sweep time above this power.
inline constexpr unsigned kSlowSweepPower = 15;

/// Exact coin-flipping sample: every pair i < j is an edge independently
/// with probability P_ij, decided by a counter-based deviate of
/// (seed, i, j). The result does not depend on `workers`.
///
/// Throws std::invalid_argument if r > kInMemoryMaxPower.
SimpleGraph generate(const GeneratorJob& job, unsigned workers = 1);

/// Writes the same sample as an edge list: '#' header lines with the
/// parameters and seed, then one "u\tv" line per edge in ascending (u, v)
/// order. Memory stays bounded by a few row blocks per worker.
///
/// Throws std::runtime_error if the stream fails.
void write_generated_edge_list(const GeneratorJob& job, std::ostream& out, unsigned workers = 1);

/// File variant of write_generated_edge_list.
void write_generated_edge_list(const GeneratorJob& job, const std::filesystem::path& path,
                               unsigned workers = 1);

}  // namespace kronmom
