#pragma once

#include <cstdint>

namespace randfeat {

/// Unit ledger: one unit per elementary operation, feature evaluation, or
/// random-variable draw. Dominant stages are tracked by name; `remainder`
/// collects the lower-order terms (right-hand-side products, triangular
/// solves). Counters hold exact integer values in doubles except `solve`,
/// whose m n^2 / 2 + n^3 / 6 flop model is fractional by definition.
struct OperationCount {
    double rng = 0.0;
    double assembly = 0.0;
    double rhs = 0.0;
    double solve = 0.0;
    double remainder = 0.0;

    double total() const { return rng + assembly + rhs + solve + remainder; }
    double dominant() const { return rng + assembly + rhs + solve; }

    OperationCount& operator+=(const OperationCount& other) {
        rng += other.rng;
        assembly += other.assembly;
        rhs += other.rhs;
        solve += other.solve;
        remainder += other.remainder;
        return *this;
    }
};

/// Closed-form predicted unit counts for the least-squares training pipeline
/// with J data points, N parameter draws, e feature maps, d outputs, and all
/// derivatives up to order k in dimension m:
///   rng      = N + J
///   assembly = 2 J S d e N          (S = |{alpha : |alpha| <= k}|)
///   rhs      = 2 J S d
///   solve    = (J S d)(eN)^2 / 2 + (eN)^3 / 6
struct OperationBudget {
    double rng = 0.0;
    double assembly = 0.0;
    double rhs = 0.0;
    double solve = 0.0;

    double total() const { return rng + assembly + rhs + solve; }
};

OperationBudget operation_budget(std::int64_t J, std::int64_t N, int m, int k, int d, int e);

}  // namespace randfeat
