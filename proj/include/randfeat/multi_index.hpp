#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace randfeat {

/// A multi-index alpha = (alpha_1, ..., alpha_m) of partial-derivative orders.
struct MultiIndex {
    std::vector<int> entries;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e) : entries(std::move(e)) {}
    static MultiIndex zero(int m) { return MultiIndex(std::vector<int>(m, 0)); }

    int dim() const { return static_cast<int>(entries.size()); }
    int operator[](int l) const { return entries[static_cast<size_t>(l)]; }

    /// |alpha| = alpha_1 + ... + alpha_m
    int order() const {
        int s = 0;
        for (int a : entries) s += a;
        return s;
    }

    bool operator==(const MultiIndex& other) const { return entries == other.entries; }
};

/// All alpha with |alpha| <= k in graded lexicographic order: sorted by |alpha|
/// first, then lexicographically by entries. First element is the zero index.
std::vector<MultiIndex> enumerate_multi_indices(int m, int k);

/// |{alpha : |alpha| <= k}| = binomial(m + k, k)
std::int64_t multi_index_count(int m, int k);

/// theta^alpha = prod_l theta_l^{alpha_l}
double monomial(const Eigen::VectorXd& theta, const MultiIndex& alpha);

}  // namespace randfeat
