#include "randfeat/multi_index.hpp"

#include <cassert>

namespace randfeat {

namespace {

void compositions_of(int total, int m, std::vector<int>& current,
                     std::vector<MultiIndex>& out) {
    const int pos = static_cast<int>(current.size());
    if (pos == m - 1) {
        current.push_back(total);
        out.emplace_back(current);
        current.pop_back();
        return;
    }
    for (int a = 0; a <= total; ++a) {
        current.push_back(a);
        compositions_of(total - a, m, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int m, int k) {
    assert(m >= 1 && k >= 0);
    std::vector<MultiIndex> out;
    out.reserve(static_cast<size_t>(multi_index_count(m, k)));
    std::vector<int> current;
    for (int total = 0; total <= k; ++total) {
        compositions_of(total, m, current, out);
    }
    return out;
}

std::int64_t multi_index_count(int m, int k) {
    // binomial(m + k, k), exact in 64-bit for the desk-scale (m, k) range
    std::int64_t result = 1;
    for (int j = 1; j <= k; ++j) {
        result = result * (m + j) / j;
    }
    return result;
}

double monomial(const Eigen::VectorXd& theta, const MultiIndex& alpha) {
    double p = 1.0;
    for (int l = 0; l < alpha.dim(); ++l) {
        for (int rep = 0; rep < alpha[l]; ++rep) p *= theta[l];
    }
    return p;
}

}  // namespace randfeat
