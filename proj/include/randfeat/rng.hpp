#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace randfeat {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace detail

/// Counter-based splittable random stream. Identical (root_seed, stream_id)
/// reproduce identical draws bit-for-bit; distinct stream_ids give independent
/// sequences. Single-owner: never sample one stream from two threads.
class SeededStream {
public:
    SeededStream(std::uint64_t root_seed, std::uint64_t stream_id)
        : root_seed_(root_seed),
          stream_id_(stream_id),
          key_(detail::mix64(detail::mix64(root_seed + 0x9E3779B97F4A7C15ULL) ^
                             (stream_id * 0xD6E8FEB86659FD93ULL + 0xA5A5A5A5A5A5A5A5ULL))) {}

    std::uint64_t root_seed() const { return root_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Child stream for parallel work; deterministic in (this stream, substream).
    SeededStream child(std::uint64_t substream) const {
        return SeededStream(key_, substream);
    }

    std::uint64_t next_u64() {
        return detail::mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform on [0, 1)
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] keeps the log finite
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * M_PI * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    Eigen::VectorXd normal_vector(int n) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = next_normal();
        return v;
    }

private:
    std::uint64_t root_seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Fixed stream ids: the random initializations and the training data are
/// drawn from distinct streams, test points from a third.
inline constexpr std::uint64_t kStreamInit = 1;
inline constexpr std::uint64_t kStreamData = 2;
inline constexpr std::uint64_t kStreamTest = 3;

}  // namespace randfeat
