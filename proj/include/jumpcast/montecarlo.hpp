#pragma once

// Monte Carlo counterparts of the closed forms: empirical forecast MSEs over
// simulated (p_T, p_S) pairs and sample moments over simulated paths, each
// compared with theory through a z-score.
//
// Work is cut into fixed chunks of kChunkSize items.  Each chunk is reduced on
// its own and the chunk results are merged in index order, so every estimate is
// bit-identical for any worker count.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jumpcast/error.hpp"
#include "jumpcast/forecasts.hpp"
#include "jumpcast/model.hpp"
#include "jumpcast/parallel.hpp"
#include "jumpcast/simulation.hpp"
#include "jumpcast/stats.hpp"

namespace jumpcast {

inline constexpr std::size_t kMinMonteCarloSamples = 1000;
inline constexpr double kDefaultZThreshold = 4.0;
inline constexpr std::size_t kChunkSize = 4096;

struct MseEstimate {
    ForecastKind kind = ForecastKind::BestMeasurable;
    double mean_sq_err = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    std::uint64_t master_seed = 0;
};

struct VerificationReport {
    ForecastKind kind = ForecastKind::BestMeasurable;
    double theoretical = 0.0;
    MseEstimate empirical;
    double z_score = 0.0;
    bool pass = false;
};

namespace detail {

inline void require_samples(std::size_t n) {
    if (n < kMinMonteCarloSamples)
        throw InsufficientSampleError("Monte Carlo needs at least " +
                                      std::to_string(kMinMonteCarloSamples) + " samples, got " +
                                      std::to_string(n));
}

/// Runs fill(begin, end, partial) per chunk and merges the partials in chunk order.
template <class Partial, class Fill>
Partial chunked_reduce(std::size_t n, unsigned workers, Fill&& fill) {
    const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<Partial> partials(chunks);
    parallel_for(chunks, workers, [&](std::size_t c) {
        fill(c * kChunkSize, std::min(n, (c + 1) * kChunkSize), partials[c]);
    });
    Partial total{};
    for (const auto& p : partials) total.merge(p);
    return total;
}

struct ErrorPartials {
    std::array<RunningStats, 4> per_kind;

    void merge(const ErrorPartials& other) noexcept {
        for (std::size_t k = 0; k < per_kind.size(); ++k) per_kind[k].merge(other.per_kind[k]);
    }
};

} // namespace detail

/// Squared forecast errors of all four kinds over one shared batch of pairs.
/// Forecasts use the true derived parameters; with beta = 0 every kind is p_T.
inline std::array<MseEstimate, 4> empirical_mse_all(const ModelParams& params,
                                                    const JumpSpec& jumps, const Horizon& h,
                                                    std::size_t n, std::uint64_t master_seed,
                                                    unsigned workers = 1) {
    detail::require_samples(n);
    const DerivedParams d = derive(params);
    jumps.check_consistent(params);

    const auto totals = detail::chunked_reduce<detail::ErrorPartials>(
        n, workers, [&](std::size_t begin, std::size_t end, detail::ErrorPartials& acc) {
            for (std::size_t i = begin; i < end; ++i) {
                const auto pair = batch_pair(params, jumps, h, master_seed, i);
                for (auto k : kAllForecastKinds) {
                    const double err = pair.p_s_target - predict(k, pair.p_t_obs, h, d);
                    acc.per_kind[index_of(k)].push(err * err);
                }
            }
        });

    std::array<MseEstimate, 4> out{};
    for (auto k : kAllForecastKinds) {
        const auto& s = totals.per_kind[index_of(k)];
        out[index_of(k)] = MseEstimate{k, s.mean(), s.std_error(), s.count(), master_seed};
    }
    return out;
}

inline MseEstimate empirical_mse(ForecastKind kind, const ModelParams& params,
                                 const JumpSpec& jumps, const Horizon& h, std::size_t n,
                                 std::uint64_t master_seed, unsigned workers = 1) {
    return empirical_mse_all(params, jumps, h, n, master_seed, workers)[index_of(kind)];
}

inline VerificationReport make_report(double theoretical, const MseEstimate& empirical,
                                      double z_threshold = kDefaultZThreshold) {
    VerificationReport r;
    r.kind = empirical.kind;
    r.theoretical = theoretical;
    r.empirical = empirical;
    r.z_score = z_score(empirical.mean_sq_err, theoretical, empirical.std_error);
    r.pass = std::abs(r.z_score) <= z_threshold;
    return r;
}

/// One report per forecast kind, in kAllForecastKinds order.
inline std::vector<VerificationReport> verify_all(const ModelParams& params,
                                                  const JumpSpec& jumps, const Horizon& h,
                                                  std::size_t n, std::uint64_t master_seed,
                                                  double z_threshold = kDefaultZThreshold,
                                                  unsigned workers = 1) {
    const DerivedParams d = derive(params);
    const auto estimates = empirical_mse_all(params, jumps, h, n, master_seed, workers);
    std::vector<VerificationReport> reports;
    reports.reserve(estimates.size());
    for (const auto& e : estimates)
        reports.push_back(make_report(theoretical_mse(e.kind, h, d), e, z_threshold));
    return reports;
}

inline bool all_pass(std::span<const VerificationReport> reports) noexcept {
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

// ---------------------------------------------------------------------------
// Moments

enum class MomentKind { Mean, SecondMoment };

/// Mean cells have s == t.
struct MomentCell {
    MomentKind kind = MomentKind::Mean;
    double s = 0.0;
    double t = 0.0;
    double theoretical = 0.0;
    double sample = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;
    bool pass = false;
};

struct MomentReport {
    std::vector<MomentCell> cells;
    std::size_t n = 0;
    std::uint64_t master_seed = 0;

    [[nodiscard]] bool pass() const noexcept {
        return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.pass; });
    }
};

/// Compares sample E(p_t) with beta t at every grid time and sample E(p_s p_t) with
/// beta^2 s t + mu^2 min(s, t) at every pair s <= t.
inline MomentReport moment_check(const ModelParams& params, const JumpSpec& jumps,
                                 std::span<const double> time_grid, std::size_t n,
                                 std::uint64_t master_seed,
                                 double z_threshold = kDefaultZThreshold, unsigned workers = 1) {
    detail::require_samples(n);
    if (time_grid.empty()) throw DomainError("moment_check: empty time grid");
    std::vector<double> times(time_grid.begin(), time_grid.end());
    for (double t : times)
        if (!std::isfinite(t) || t <= 0.0) throw DomainError("moment_check: times must be > 0");
    std::sort(times.begin(), times.end());
    if (std::adjacent_find(times.begin(), times.end()) != times.end())
        throw DomainError("moment_check: duplicate times");

    const DerivedParams d = derive(params);
    std::vector<double> grid{0.0};
    grid.insert(grid.end(), times.begin(), times.end());

    const std::size_t m = times.size();
    const std::size_t pair_cells = m * (m + 1) / 2;

    struct Partial {
        std::vector<RunningStats> stats;
        void merge(const Partial& other) {
            if (stats.empty()) stats.resize(other.stats.size());
            for (std::size_t i = 0; i < other.stats.size(); ++i) stats[i].merge(other.stats[i]);
        }
    };

    const auto totals = detail::chunked_reduce<Partial>(
        n, workers, [&](std::size_t begin, std::size_t end, Partial& acc) {
            acc.stats.resize(m + pair_cells);
            for (std::size_t i = begin; i < end; ++i) {
                const auto path = simulate_path(params, jumps, grid, child_seed(master_seed, i));
                std::size_t cell = m;
                for (std::size_t a = 0; a < m; ++a) {
                    const double pa = path.returns[a + 1];
                    acc.stats[a].push(pa);
                    for (std::size_t b = a; b < m; ++b)
                        acc.stats[cell++].push(pa * path.returns[b + 1]);
                }
            }
        });

    MomentReport report;
    report.n = n;
    report.master_seed = master_seed;
    auto add = [&](MomentKind kind, double s, double t, double theory, const RunningStats& st) {
        MomentCell c{kind, s, t, theory, st.mean(), st.std_error(), 0.0, false};
        c.z_score = z_score(c.sample, theory, c.std_error);
        c.pass = std::abs(c.z_score) <= z_threshold;
        report.cells.push_back(c);
    };
    for (std::size_t a = 0; a < m; ++a)
        add(MomentKind::Mean, times[a], times[a], mean_return(times[a], d), totals.stats[a]);
    std::size_t cell = m;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b)
            add(MomentKind::SecondMoment, times[a], times[b],
                second_moment(times[a], times[b], d), totals.stats[cell++]);
    return report;
}

/// Cell-by-cell agreement of two reports on the same grid within joint z bands.
inline bool moments_agree(const MomentReport& a, const MomentReport& b,
                          double z_threshold = kDefaultZThreshold) {
    if (a.cells.size() != b.cells.size()) return false;
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        const auto& x = a.cells[i];
        const auto& y = b.cells[i];
        if (x.kind != y.kind || x.s != y.s || x.t != y.t) return false;
        const double joint = std::hypot(x.std_error, y.std_error);
        if (std::abs(z_score(x.sample, y.sample, joint)) > z_threshold) return false;
    }
    return true;
}

} // namespace jumpcast
