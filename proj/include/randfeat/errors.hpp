#pragma once

#include <stdexcept>
#include <string>

namespace randfeat {

struct DerivativeOrderExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RankDeficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ToleranceNotReached : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Divergent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAdmissible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeriesNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidTarget : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SerializationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace randfeat
