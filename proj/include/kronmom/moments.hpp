#pragma once

#include <cstdint>
#include <vector>

#include "kronmom/features.hpp"

namespace kronmom {

/// Initiator [[a, b], [b, c]] and Kronecker power r.
///
/// Construction validates 0 <= a, b, c <= 1 and r <= kMaxPower, then stores
/// the canonical representative with a >= c. (a,b,c) and (c,b,a) define the
/// same graph distribution; swapped() records whether the input was flipped.
class KroneckerParams {
public:
    static constexpr unsigned kMaxPower = 60;

    /// Throws std::invalid_argument on out-of-range or NaN input.
    KroneckerParams(double a, double b, double c, unsigned r);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    unsigned r() const noexcept { return r_; }
    bool swapped() const noexcept { return swapped_; }
    std::uint64_t num_vertices() const noexcept { return std::uint64_t{1} << r_; }

    /// Same initiator at another power.
    KroneckerParams with_power(unsigned r) const { return {a_, b_, c_, r}; }

    friend bool operator==(const KroneckerParams& x, const KroneckerParams& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.r_ == y.r_;
    }

private:
    double a_;
    double b_;
    double c_;
    unsigned r_;
    bool swapped_ = false;
};

/// Expected feature counts E(E), E(H), E(T), E(triangles).
struct ExpectedFeatures {
    double edges = 0.0;
    double hairpins = 0.0;
    double tripins = 0.0;
    double triangles = 0.0;

    double operator[](Feature f) const;
};

/// The r = 1 value of every full-range sum appearing in the expected counts.
/// For the r-fold power each of these sums is the base raised to r.
struct PowerSumBases {
    double diag1;             // sum_i P_ii           = a + c
    double diag2;             // sum_i P_ii^2         = a^2 + c^2
    double diag3;             // sum_i P_ii^3         = a^3 + c^3
    double row1;              // sum_ij P_ij          = a + 2b + c
    double row2;              // sum_ij P_ij^2        = a^2 + 2b^2 + c^2
    double row3;              // sum_ij P_ij^3        = a^3 + 2b^3 + c^3
    double diag1_row1;        // sum_ij P_ii P_ij     = a(a+b) + c(b+c)
    double diag1_row2;        // sum_ij P_ii P_ij^2   = a(a^2+b^2) + c(b^2+c^2)
    double diag2_row1;        // sum_ij P_ii^2 P_ij   = a^2(a+b) + c^2(b+c)
    double wedge;             // sum_ijk P_ij P_ik    = (a+b)^2 + (b+c)^2
    double wedge_sq;          // sum_ijk P_ij^2 P_ik
    double triangle;          // sum_ijk P_ij P_ik P_jk = a^3 + c^3 + 3b^2(a+c)
    double diag_wedge;        // sum_ijk P_ii P_ij P_ik = a(a+b)^2 + c(b+c)^2
    double claw;              // sum_ijkl P_ij P_ik P_il = (a+b)^3 + (b+c)^3
};

PowerSumBases power_sum_bases(double a, double b, double c);

/// Closed-form expected counts for the r-fold Kronecker graph with loops and
/// duplicate directions removed.
///
/// The alternating sums cancel badly when b is small, so the bases and their
/// powers are evaluated in double-double arithmetic and rounded once at the
/// end. Results are never negative; a value within rounding residue of zero
/// (below 1e-28 of the largest term) is reported as exactly 0.
ExpectedFeatures expected_features(const KroneckerParams& p);

/// Dense P^(r). Entry (i, j) is the product over bit positions s of
/// Theta[i_s][j_s].
class ProbabilityMatrix {
public:
    static constexpr unsigned kMaxPower = 12;

    /// Throws std::invalid_argument if r > kMaxPower.
    explicit ProbabilityMatrix(const KroneckerParams& p);

    std::uint64_t size() const noexcept { return n_; }
    double operator()(std::uint64_t i, std::uint64_t j) const { return entries_[i * n_ + j]; }

private:
    std::uint64_t n_;
    std::vector<double> entries_;
};

/// Maximum r accepted by brute_force_expected.
inline constexpr unsigned kBruteForceMaxPower = 7;

/// Reference expectations from the explicit matrix, summing only over
/// tuples of pairwise distinct vertices. Edges and triangles enumerate
/// pairs and triples directly; hairpins and tripins sum, per center vertex,
/// the elementary symmetric polynomials of its off-diagonal row (the sum
/// over distinct neighbor pairs and triples), built by the subset recurrence.
///
/// Throws std::invalid_argument for r > kBruteForceMaxPower.
ExpectedFeatures brute_force_expected(const KroneckerParams& p);

struct DominanceReport {
    /// log2((a + 2b + c) / (a + c)); +infinity when a + c == 0.
    double alpha;
    /// alpha <= 1/2: dropping the loop correction is not safely below the
    /// sampling noise in E.
    bool weak;
    /// a + c == 0.
    bool degenerate;
};

DominanceReport dominance_exponent(const KroneckerParams& p);

}  // namespace kronmom
