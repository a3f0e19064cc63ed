#include "kronmom/fold_identities.hpp"

#include <algorithm>
#include <cmath>

#include "kronmom/philox.hpp"

namespace kronmom {

double distinct_sum(const Tensor2& f) {
    const std::size_t n = f.levels();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) total += f(i, j);
    return total;
}

double distinct_sum(const Tensor3& f) {
    const std::size_t n = f.levels();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t k = 0; k < n; ++k)
                if (k != i && k != j) total += f(i, j, k);
        }
    return total;
}

double distinct_sum(const Tensor4& f) {
    const std::size_t n = f.levels();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                for (std::size_t l = 0; l < n; ++l)
                    if (l != i && l != j && l != k) total += f(i, j, k, l);
            }
        }
    return total;
}

double fold_sum(const Tensor2& f) {
    const std::size_t n = f.levels();
    double all = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag += f(i, i);
        for (std::size_t j = 0; j < n; ++j) all += f(i, j);
    }
    return all - diag;
}

double fold_sum(const Tensor3& f) {
    const std::size_t n = f.levels();
    double all = 0.0, pairs = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag += f(i, i, i);
        for (std::size_t j = 0; j < n; ++j) {
            pairs += f(i, j, j) + f(i, j, i) + f(i, i, j);
            for (std::size_t k = 0; k < n; ++k) all += f(i, j, k);
        }
    }
    return all - pairs + 2.0 * diag;
}

double fold_sum(const Tensor4& f) {
    const std::size_t n = f.levels();
    double all = 0.0, triples = 0.0, pairs = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag += f(i, i, i, i);
        for (std::size_t j = 0; j < n; ++j) {
            pairs += 2.0 * (f(i, j, j, j) + f(i, j, i, i) + f(i, i, j, i) + f(i, i, i, j)) + f(i, j, i, j) +
                     f(i, j, j, i) + f(i, i, j, j);
            for (std::size_t k = 0; k < n; ++k) {
                triples += f(i, j, k, i) + f(i, j, k, j) + f(i, j, k, k) + f(i, j, i, k) + f(i, j, j, k) +
                           f(i, i, j, k);
                for (std::size_t l = 0; l < n; ++l) all += f(i, j, k, l);
            }
        }
    }
    return all - triples + pairs - 6.0 * diag;
}

double fold_sum_tail_exchangeable(const Tensor3& f) {
    const std::size_t n = f.levels();
    double all = 0.0, pairs = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag += f(i, i, i);
        for (std::size_t j = 0; j < n; ++j) {
            pairs += f(i, j, j) + 2.0 * f(i, i, j);
            for (std::size_t k = 0; k < n; ++k) all += f(i, j, k);
        }
    }
    return all - pairs + 2.0 * diag;
}

double fold_sum_tail_exchangeable(const Tensor4& f) {
    const std::size_t n = f.levels();
    double all = 0.0, triples = 0.0, pairs = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag += f(i, i, i, i);
        for (std::size_t j = 0; j < n; ++j) {
            // The three two-pair patterns collapse to f_iijj and the three
            // patterns with one index off the center to f_iiij.
            pairs += 2.0 * f(i, j, j, j) + 3.0 * f(i, i, j, j) + 6.0 * f(i, i, i, j);
            for (std::size_t k = 0; k < n; ++k) {
                triples += f(i, i, j, k) + f(i, j, j, k);
                for (std::size_t l = 0; l < n; ++l) all += f(i, j, k, l);
            }
        }
    }
    return all - 3.0 * triples + pairs - 6.0 * diag;
}

double fold_sum_symmetric(const Tensor3& f) {
    const std::size_t n = f.levels();
    double all = 0.0, pairs = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag += f(i, i, i);
        for (std::size_t j = 0; j < n; ++j) {
            pairs += f(i, i, j);
            for (std::size_t k = 0; k < n; ++k) all += f(i, j, k);
        }
    }
    return all - 3.0 * pairs + 2.0 * diag;
}

std::string_view fold_identity_name(FoldIdentity id) {
    switch (id) {
        case FoldIdentity::two_index: return "two-index";
        case FoldIdentity::three_index: return "three-index";
        case FoldIdentity::four_index: return "four-index";
        case FoldIdentity::three_index_tail_exchangeable: return "three-index, tail exchangeable";
        case FoldIdentity::four_index_tail_exchangeable: return "four-index, tail exchangeable";
        case FoldIdentity::three_index_symmetric: return "three-index, fully symmetric";
    }
    return "?";
}

FoldTensors random_fold_tensors(std::size_t levels, std::uint64_t seed) {
    std::uint64_t stream = 0;
    auto next = [&] { return counter_uniform(seed, stream++, 0xF01Dull); };

    FoldTensors t{Tensor2(levels), Tensor3(levels), Tensor4(levels),
                  Tensor3(levels), Tensor4(levels), Tensor3(levels)};
    const std::size_t n = levels;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            t.general2(i, j) = next();
            for (std::size_t k = 0; k < n; ++k) {
                t.general3(i, j, k) = next();
                for (std::size_t l = 0; l < n; ++l) t.general4(i, j, k, l) = next();
            }
        }

    // Symmetrize the general tensors by averaging over the required permutations.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const auto& g = t.general3;
                t.tail_exchangeable3(i, j, k) = 0.5 * (g(i, j, k) + g(i, k, j));
                t.symmetric3(i, j, k) =
                    (g(i, j, k) + g(i, k, j) + g(j, i, k) + g(j, k, i) + g(k, i, j) + g(k, j, i)) / 6.0;
                for (std::size_t l = 0; l < n; ++l) {
                    const auto& h = t.general4;
                    t.tail_exchangeable4(i, j, k, l) = (h(i, j, k, l) + h(i, j, l, k) + h(i, k, j, l) +
                                                        h(i, k, l, j) + h(i, l, j, k) + h(i, l, k, j)) /
                                                       6.0;
                }
            }
    return t;
}

std::array<FoldCheck, 6> fold_identity_check(const FoldTensors& t, double tolerance) {
    auto make = [tolerance](FoldIdentity id, double enumerated, double folded, double mass) {
        const double err = std::abs(enumerated - folded) / std::max(mass, 1e-300);
        return FoldCheck{id, enumerated, folded, err, err <= tolerance};
    };
    return {
        make(FoldIdentity::two_index, distinct_sum(t.general2), fold_sum(t.general2), t.general2.mass()),
        make(FoldIdentity::three_index, distinct_sum(t.general3), fold_sum(t.general3), t.general3.mass()),
        make(FoldIdentity::four_index, distinct_sum(t.general4), fold_sum(t.general4), t.general4.mass()),
        make(FoldIdentity::three_index_tail_exchangeable, distinct_sum(t.tail_exchangeable3),
             fold_sum_tail_exchangeable(t.tail_exchangeable3), t.tail_exchangeable3.mass()),
        make(FoldIdentity::four_index_tail_exchangeable, distinct_sum(t.tail_exchangeable4),
             fold_sum_tail_exchangeable(t.tail_exchangeable4), t.tail_exchangeable4.mass()),
        make(FoldIdentity::three_index_symmetric, distinct_sum(t.symmetric3), fold_sum_symmetric(t.symmetric3),
             t.symmetric3.mass()),
    };
}

}  // namespace kronmom
