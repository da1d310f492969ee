#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "jumpcast/numeric.hpp"

namespace jumpcast {

/// Streaming mean and variance.  Welford updates within a partition, Chan's rule
/// when merging partitions; the mean itself comes from a compensated sum.
class RunningStats {
public:
    void push(double x) noexcept {
        ++n_;
        sum_.add(x);
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }

    void merge(const RunningStats& other) noexcept {
        if (other.n_ == 0) return;
        if (n_ == 0) {
            *this = other;
            return;
        }
        const double na = static_cast<double>(n_);
        const double nb = static_cast<double>(other.n_);
        const double total = na + nb;
        const double delta = other.mean_ - mean_;
        mean_ += delta * (nb / total);
        m2_ += other.m2_ + delta * delta * (na * nb / total);
        n_ += other.n_;
        sum_.merge(other.sum_);
    }

    [[nodiscard]] std::size_t count() const noexcept { return n_; }

    [[nodiscard]] double mean() const noexcept {
        if (n_ == 0) return std::numeric_limits<double>::quiet_NaN();
        return sum_.value() / static_cast<double>(n_);
    }

    [[nodiscard]] double variance() const noexcept {
        if (n_ < 2) return std::numeric_limits<double>::quiet_NaN();
        return m2_ / static_cast<double>(n_ - 1);
    }

    /// Sample standard deviation over sqrt(n).
    [[nodiscard]] double std_error() const noexcept {
        return std::sqrt(variance() / static_cast<double>(n_));
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    CompensatedSum sum_;
};

/// (estimate - target) / std_error, with the degenerate zero-error case mapped to
/// 0 (exact agreement) or infinity.
inline double z_score(double estimate, double target, double std_error) noexcept {
    const double diff = estimate - target;
    if (std_error > 0.0) return diff / std_error;
    if (diff == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), diff);
}

} // namespace jumpcast
