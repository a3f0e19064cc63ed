#include "kronmom/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "kronmom/detail/double_double.hpp"

namespace kronmom {

namespace {

using detail::DoubleDouble;

template <class Real>
struct Bases {
    Real diag1, diag2, diag3;
    Real row1, row2, row3;
    Real diag1_row1, diag1_row2, diag2_row1;
    Real wedge, wedge_sq, triangle, diag_wedge, claw;
};

template <class Real>
Bases<Real> make_bases(double a_in, double b_in, double c_in) {
    const Real a = a_in;
    const Real b = b_in;
    const Real c = c_in;
    const Real a2 = a * a, b2 = b * b, c2 = c * c;
    const Real a3 = a2 * a, b3 = b2 * b, c3 = c2 * c;
    const Real ab = a + b;
    const Real bc = b + c;
    const Real ac = a + c;

    Bases<Real> s;
    s.diag1 = ac;
    s.diag2 = a2 + c2;
    s.diag3 = a3 + c3;
    s.row1 = ac + b + b;
    s.row2 = a2 + c2 + b2 + b2;
    s.row3 = a3 + c3 + b3 + b3;
    s.diag1_row1 = a * ab + c * bc;
    s.diag1_row2 = a3 + c3 + b2 * ac;
    s.diag2_row1 = a3 + c3 + b * (a2 + c2);
    s.wedge = ab * ab + bc * bc;
    s.wedge_sq = a3 + c3 + b * (a2 + c2) + b2 * ac + b3 + b3;
    s.triangle = a3 + c3 + Real(3.0) * b2 * ac;
    s.diag_wedge = a * ab * ab + c * bc * bc;
    s.claw = ab * ab * ab + bc * bc * bc;
    return s;
}

// Signed combination of powers; `scale` collects the magnitude of the
// largest term so rounding residue can be told apart from a true value.
struct Combination {
    DoubleDouble sum = 0.0;
    double scale = 0.0;

    void add(double coefficient, DoubleDouble base, unsigned r) {
        const DoubleDouble term = DoubleDouble(coefficient) * detail::ipow(base, r);
        sum += term;
        scale = std::max(scale, std::abs(static_cast<double>(term)));
    }

    double finish(double divisor) const {
        const double value = static_cast<double>(sum);
        if (!(value > 1e-28 * scale)) return 0.0;
        return value / divisor;
    }
};

}  // namespace

KroneckerParams::KroneckerParams(double a, double b, double c, unsigned r) : r_(r) {
    auto check = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument(std::string("Kronecker parameter ") + name +
                                        " must lie in [0, 1], got " + std::to_string(v));
        }
    };
    check(a, "a");
    check(b, "b");
    check(c, "c");
    if (r > kMaxPower) {
        throw std::invalid_argument("Kronecker power r must be at most " + std::to_string(kMaxPower) +
                                    ", got " + std::to_string(r));
    }
    if (a < c) {
        std::swap(a, c);
        swapped_ = true;
    }
    a_ = a;
    b_ = b;
    c_ = c;
}

double ExpectedFeatures::operator[](Feature f) const {
    switch (f) {
        case Feature::edges: return edges;
        case Feature::hairpins: return hairpins;
        case Feature::tripins: return tripins;
        case Feature::triangles: return triangles;
    }
    return 0.0;
}

PowerSumBases power_sum_bases(double a, double b, double c) {
    const auto s = make_bases<double>(a, b, c);
    return {s.diag1,      s.diag2,      s.diag3,      s.row1,  s.row2,     s.row3,     s.diag1_row1,
            s.diag1_row2, s.diag2_row1, s.wedge,      s.wedge_sq, s.triangle, s.diag_wedge, s.claw};
}

ExpectedFeatures expected_features(const KroneckerParams& p) {
    const auto s = make_bases<DoubleDouble>(p.a(), p.b(), p.c());
    const unsigned r = p.r();

    Combination edges;
    edges.add(1.0, s.row1, r);
    edges.add(-1.0, s.diag1, r);

    Combination hairpins;
    hairpins.add(1.0, s.wedge, r);
    hairpins.add(-2.0, s.diag1_row1, r);
    hairpins.add(-1.0, s.row2, r);
    hairpins.add(2.0, s.diag2, r);

    Combination triangles;
    triangles.add(1.0, s.triangle, r);
    triangles.add(-3.0, s.diag1_row2, r);
    triangles.add(2.0, s.diag3, r);

    // Coefficients from the four-index fold with the last three indices
    // exchangeable: f_iijj occurs 3 times and f_iiij 6 times.
    Combination tripins;
    tripins.add(1.0, s.claw, r);
    tripins.add(-3.0, s.diag_wedge, r);
    tripins.add(-3.0, s.wedge_sq, r);
    tripins.add(2.0, s.row3, r);
    tripins.add(3.0, s.diag1_row2, r);
    tripins.add(6.0, s.diag2_row1, r);
    tripins.add(-6.0, s.diag3, r);

    return {edges.finish(2.0), hairpins.finish(2.0), tripins.finish(6.0), triangles.finish(6.0)};
}

ProbabilityMatrix::ProbabilityMatrix(const KroneckerParams& p) {
    if (p.r() > kMaxPower) {
        throw std::invalid_argument("ProbabilityMatrix supports r <= " + std::to_string(kMaxPower));
    }
    n_ = p.num_vertices();
    entries_.assign(n_ * n_, 1.0);
    const double theta[2][2] = {{p.a(), p.b()}, {p.b(), p.c()}};
    for (std::uint64_t i = 0; i < n_; ++i) {
        for (std::uint64_t j = 0; j < n_; ++j) {
            double prod = 1.0;
            for (unsigned s = 0; s < p.r(); ++s) prod *= theta[(i >> s) & 1u][(j >> s) & 1u];
            entries_[i * n_ + j] = prod;
        }
    }
}

ExpectedFeatures brute_force_expected(const KroneckerParams& p) {
    if (p.r() > kBruteForceMaxPower) {
        throw std::invalid_argument("brute_force_expected enumerates the full matrix and supports r <= " +
                                    std::to_string(kBruteForceMaxPower) + ", got r = " +
                                    std::to_string(p.r()));
    }
    const ProbabilityMatrix P(p);
    const std::uint64_t n = P.size();

    double twice_edges = 0.0;
    double twice_hairpins = 0.0;
    double six_tripins = 0.0;
    double six_triangles = 0.0;

    for (std::uint64_t i = 0; i < n; ++i) {
        // e[k]: sum over k-subsets of distinct off-diagonal row entries.
        std::array<double, 4> e = {1.0, 0.0, 0.0, 0.0};
        for (std::uint64_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double x = P(i, j);
            twice_edges += x;
            e[3] += e[2] * x;
            e[2] += e[1] * x;
            e[1] += x;
        }
        // Ordered distinct pairs / triples are 2! / 3! times the subsets.
        twice_hairpins += 2.0 * e[2];
        six_tripins += 6.0 * e[3];

        for (std::uint64_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::uint64_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                six_triangles += P(i, j) * P(i, k) * P(j, k);
            }
        }
    }
    return {twice_edges / 2.0, twice_hairpins / 2.0, six_tripins / 6.0, six_triangles / 6.0};
}

DominanceReport dominance_exponent(const KroneckerParams& p) {
    const double diag = p.a() + p.c();
    if (diag == 0.0) {
        return {std::numeric_limits<double>::infinity(), false, true};
    }
    const double alpha = std::log2((diag + 2.0 * p.b()) / diag);
    return {alpha, alpha <= 0.5, false};
}

}  // namespace kronmom
