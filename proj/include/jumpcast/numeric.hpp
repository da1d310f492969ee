#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace jumpcast {

/// Slack used wherever two algebraically equal quantities are compared in floating point.
inline constexpr std::uint64_t kCrossoverUlps = 8;

/// Number of representable doubles between a and b (0 when equal, max for NaN).
inline std::uint64_t ulp_distance(double a, double b) noexcept {
    if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<std::uint64_t>::max();
    if (a == b) return 0;
    // Map the sign-magnitude encoding onto a monotone integer line.
    auto key = [](double x) {
        const auto bits = std::bit_cast<std::int64_t>(x);
        return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
    };
    const std::int64_t ka = key(a);
    const std::int64_t kb = key(b);
    return ka > kb ? static_cast<std::uint64_t>(ka) - static_cast<std::uint64_t>(kb)
                   : static_cast<std::uint64_t>(kb) - static_cast<std::uint64_t>(ka);
}

inline bool within_ulps(double a, double b, std::uint64_t ulps) noexcept {
    return ulp_distance(a, b) <= ulps;
}

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    void merge(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.comp_);
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace jumpcast
