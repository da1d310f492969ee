#pragma once

// Exact simulation of p_t = alpha t + sigma W_t + J_t.
//
// Brownian increments are drawn as N(0, dt) on the requested grid and jump times
// as a homogeneous Poisson process, so sampled values carry no discretisation
// error.  Every generator is a pure function of its inputs and seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "jumpcast/error.hpp"
#include "jumpcast/model.hpp"
#include "jumpcast/parallel.hpp"
#include "jumpcast/rng.hpp"

namespace jumpcast {

enum class JumpKind { Gaussian, Constant, TwoPoint };

inline constexpr std::string_view to_string(JumpKind k) noexcept {
    switch (k) {
    case JumpKind::Gaussian: return "gaussian";
    case JumpKind::Constant: return "constant";
    case JumpKind::TwoPoint: return "two_point";
    }
    return "?";
}

inline std::optional<JumpKind> parse_jump_kind(std::string_view name) noexcept {
    for (auto k : {JumpKind::Gaussian, JumpKind::Constant, JumpKind::TwoPoint})
        if (to_string(k) == name) return k;
    return std::nullopt;
}

/// Law of a single jump size with mean nu and variance tau2.
///   Gaussian  N(nu, tau2)
///   Constant  nu (tau2 must be 0)
///   TwoPoint  nu - tau or nu + tau with probability 1/2 each
class JumpSpec {
public:
    JumpSpec(JumpKind kind, double nu, double tau2) : kind_(kind), nu_(nu), tau2_(tau2) {
        if (!std::isfinite(nu)) throw ValidationError("jumps.nu", "must be finite");
        if (!std::isfinite(tau2) || tau2 < 0.0)
            throw ValidationError("jumps.tau2", "must be finite and >= 0");
        if (kind == JumpKind::Constant && tau2 != 0.0)
            throw ValidationError("jumps.kind", "constant jumps require tau2 = 0");
    }

    /// Jump law of the given kind carrying the model's (nu, tau2).
    static JumpSpec for_model(JumpKind kind, const ModelParams& params) {
        return {kind, params.nu, params.tau2};
    }

    [[nodiscard]] JumpKind kind() const noexcept { return kind_; }
    [[nodiscard]] double nu() const noexcept { return nu_; }
    [[nodiscard]] double tau2() const noexcept { return tau2_; }

    template <class Engine>
    double sample(Engine& eng) const {
        switch (kind_) {
        case JumpKind::Gaussian:
            return std::normal_distribution<double>(nu_, std::sqrt(tau2_))(eng);
        case JumpKind::Constant:
            return nu_;
        case JumpKind::TwoPoint: {
            const double tau = std::sqrt(tau2_);
            return (eng() >> 63) != 0 ? nu_ + tau : nu_ - tau;
        }
        }
        return nu_;
    }

    /// The jump law must match the model's moments whenever jumps occur.
    void check_consistent(const ModelParams& params) const {
        if (params.has_jumps() && (nu_ != params.nu || tau2_ != params.tau2))
            throw ValidationError("jumps", "jump law (nu, tau2) differs from model parameters");
    }

private:
    JumpKind kind_;
    double nu_;
    double tau2_;
};

struct PathGrid {
    std::vector<double> times;
    std::vector<double> returns;
    std::vector<double> jump_times;
    std::uint64_t seed = 0;
};

struct TerminalPair {
    double p_t_obs = 0.0;
    double p_s_target = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
};

/// P_t = P_0 exp(p_t).
inline double price_from_return(double p0, double p) noexcept { return p0 * std::exp(p); }

namespace detail {

inline void check_grid(std::span<const double> times) {
    if (times.empty()) throw DomainError("simulate_path: empty grid");
    if (times.front() != 0.0) throw DomainError("simulate_path: grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] < 0.0)
            throw DomainError("simulate_path: grid times must be finite and >= 0");
        if (!(times[i] > times[i - 1]))
            throw DomainError("simulate_path: grid times must be strictly increasing");
    }
}

/// Sum of the jump sizes of a compound Poisson process over a window of length `span`.
template <class Engine>
double compound_poisson_sum(const ModelParams& params, const JumpSpec& jumps, double span,
                            Engine& eng) {
    if (!params.has_jumps() || span <= 0.0) return 0.0;
    const auto count = std::poisson_distribution<long long>(params.lambda * span)(eng);
    double sum = 0.0;
    for (long long k = 0; k < count; ++k) sum += jumps.sample(eng);
    return sum;
}

} // namespace detail

inline PathGrid simulate_path(const ModelParams& params, const JumpSpec& jumps,
                              std::span<const double> grid_times, std::uint64_t seed) {
    params.validate();
    jumps.check_consistent(params);
    detail::check_grid(grid_times);

    SplitMix64 eng(seed);
    PathGrid path;
    path.seed = seed;
    path.times.assign(grid_times.begin(), grid_times.end());
    path.returns.assign(grid_times.size(), 0.0);

    const double horizon = grid_times.back();
    std::vector<double> jump_sizes;
    if (params.has_jumps() && horizon > 0.0) {
        const auto count = std::poisson_distribution<long long>(params.lambda * horizon)(eng);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        path.jump_times.resize(static_cast<std::size_t>(count));
        // horizon * (1 - u) lies in (0, horizon].
        for (auto& t : path.jump_times) t = horizon * (1.0 - unit(eng));
        std::sort(path.jump_times.begin(), path.jump_times.end());
        jump_sizes.resize(path.jump_times.size());
        for (auto& x : jump_sizes) x = jumps.sample(eng);
    }

    std::normal_distribution<double> normal(0.0, 1.0);
    double brownian = 0.0;
    double jump_total = 0.0;
    std::size_t next_jump = 0;
    for (std::size_t i = 1; i < grid_times.size(); ++i) {
        brownian += std::sqrt(grid_times[i] - grid_times[i - 1]) * normal(eng);
        while (next_jump < path.jump_times.size() && path.jump_times[next_jump] <= grid_times[i])
            jump_total += jump_sizes[next_jump++];
        path.returns[i] = params.alpha * grid_times[i] + params.sigma * brownian + jump_total;
    }
    return path;
}

/// (p_T, p_S) from one realisation: p_T over [0, T], then an independent increment over (T, S].
inline TerminalPair simulate_terminal_pair(const ModelParams& params, const JumpSpec& jumps,
                                           const Horizon& h, std::uint64_t seed) {
    params.validate();
    jumps.check_consistent(params);

    SplitMix64 eng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double t = h.t_obs();
    const double lead = h.lead();

    const double w_t = std::sqrt(t) * normal(eng);
    const double j_t = detail::compound_poisson_sum(params, jumps, t, eng);
    const double dw = std::sqrt(lead) * normal(eng);
    const double dj = detail::compound_poisson_sum(params, jumps, lead, eng);

    TerminalPair pair;
    pair.seed = seed;
    pair.p_t_obs = params.alpha * t + params.sigma * w_t + j_t;
    pair.p_s_target = pair.p_t_obs + params.alpha * lead + params.sigma * dw + dj;
    return pair;
}

/// Pair `index` of the batch rooted at `master_seed`.
inline TerminalPair batch_pair(const ModelParams& params, const JumpSpec& jumps,
                               const Horizon& h, std::uint64_t master_seed,
                               std::uint64_t index) {
    auto pair = simulate_terminal_pair(params, jumps, h, child_seed(master_seed, index));
    pair.index = index;
    return pair;
}

/// n pairs, pair i seeded by child_seed(master_seed, i) and stored at position i.
/// The result does not depend on `workers` (0 = hardware concurrency).
inline std::vector<TerminalPair> batch_pairs(const ModelParams& params, const JumpSpec& jumps,
                                             const Horizon& h, std::size_t n,
                                             std::uint64_t master_seed, unsigned workers = 1) {
    if (n == 0) throw InsufficientSampleError("batch_pairs: empty batch requested");
    params.validate();
    jumps.check_consistent(params);
    std::vector<TerminalPair> out(n);
    constexpr std::size_t kChunk = 4096;
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    parallel_for(chunks, workers, [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i)
            out[i] = batch_pair(params, jumps, h, master_seed, i);
    });
    return out;
}

} // namespace jumpcast
