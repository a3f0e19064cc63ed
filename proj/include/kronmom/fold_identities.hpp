#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace kronmom {

/// Dense real tensor with `Order` indices of `levels` values each.
template <std::size_t Order>
class Tensor {
public:
    explicit Tensor(std::size_t levels) : levels_(levels), data_(ipow(levels), 0.0) {}

    std::size_t levels() const noexcept { return levels_; }

    template <class... Idx>
    double& operator()(Idx... idx) {
        static_assert(sizeof...(Idx) == Order);
        return data_[flat(idx...)];
    }
    template <class... Idx>
    double operator()(Idx... idx) const {
        static_assert(sizeof...(Idx) == Order);
        return data_[flat(idx...)];
    }

    /// Sum of absolute values of all entries.
    double mass() const {
        double total = 0.0;
        for (double x : data_) total += x < 0 ? -x : x;
        return total;
    }

private:
    std::size_t ipow(std::size_t n) const {
        std::size_t out = 1;
        for (std::size_t k = 0; k < Order; ++k) out *= n;
        return out;
    }
    template <class... Idx>
    std::size_t flat(Idx... idx) const {
        std::size_t out = 0;
        ((out = out * levels_ + static_cast<std::size_t>(idx)), ...);
        return out;
    }

    std::size_t levels_;
    std::vector<double> data_;
};

using Tensor2 = Tensor<2>;
using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

// Sums over tuples whose indices are pairwise distinct, by enumeration.
double distinct_sum(const Tensor2& f);
double distinct_sum(const Tensor3& f);
double distinct_sum(const Tensor4& f);

// The same sums rewritten with unrestricted sums over index coincidences.
double fold_sum(const Tensor2& f);
double fold_sum(const Tensor3& f);
double fold_sum(const Tensor4& f);
/// Requires f_ijk = f_ikj.
double fold_sum_tail_exchangeable(const Tensor3& f);
/// Requires f_ijkl invariant under any permutation of (j, k, l).
double fold_sum_tail_exchangeable(const Tensor4& f);
/// Requires f_ijk invariant under every permutation of (i, j, k).
double fold_sum_symmetric(const Tensor3& f);

enum class FoldIdentity : std::uint8_t {
    two_index,
    three_index,
    four_index,
    three_index_tail_exchangeable,
    four_index_tail_exchangeable,
    three_index_symmetric,
};

std::string_view fold_identity_name(FoldIdentity id);

struct FoldCheck {
    FoldIdentity identity;
    double enumerated;
    double folded;
    /// |enumerated - folded| relative to the tensor's total absolute mass.
    double relative_error;
    bool passed;
};

/// One random tensor per identity, symmetrized as each identity requires.
struct FoldTensors {
    Tensor2 general2;
    Tensor3 general3;
    Tensor4 general4;
    Tensor3 tail_exchangeable3;
    Tensor4 tail_exchangeable4;
    Tensor3 symmetric3;
};

/// Entries uniform in [0, 1) from a counter-based stream keyed by `seed`.
FoldTensors random_fold_tensors(std::size_t levels, std::uint64_t seed);

/// Compares every fold identity against direct enumeration.
std::array<FoldCheck, 6> fold_identity_check(const FoldTensors& tensors, double tolerance = 1e-12);

}  // namespace kronmom
