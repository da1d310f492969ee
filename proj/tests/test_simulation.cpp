#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "jumpcast/model.hpp"
#include "jumpcast/rng.hpp"
#include "jumpcast/simulation.hpp"
#include "jumpcast/stats.hpp"

using namespace jumpcast;

namespace {

constexpr double kZ = 4.0;
constexpr std::size_t kPaths = 100'000;

const ModelParams kJumpy{0.05, 0.2, 1.0, 0.01, 0.04, 100.0};

void expect_within_band(const RunningStats& st, double target, const char* what) {
    const double z = z_score(st.mean(), target, st.std_error());
    EXPECT_LE(std::abs(z), kZ) << what << ": sample " << st.mean() << " vs " << target;
}

} // namespace

TEST(JumpSpec, LawsHaveRequestedMoments) {
    for (auto kind : {JumpKind::Gaussian, JumpKind::TwoPoint}) {
        const JumpSpec spec(kind, 0.03, 0.04);
        SplitMix64 eng(123);
        RunningStats st;
        for (int i = 0; i < 200'000; ++i) st.push(spec.sample(eng));
        expect_within_band(st, 0.03, "jump mean");
        // Var of the sample variance ~ (m4 - s^4)/n; 2 tau^4 / n bounds both laws.
        EXPECT_NEAR(st.variance(), 0.04, kZ * std::sqrt(2.0 * 0.04 * 0.04 / 200'000.0));
    }
    const JumpSpec constant(JumpKind::Constant, 0.03, 0.0);
    SplitMix64 eng(1);
    EXPECT_EQ(constant.sample(eng), 0.03);
}

TEST(JumpSpec, TwoPointTakesOnlyTwoValues) {
    const JumpSpec spec(JumpKind::TwoPoint, 0.1, 0.25);
    SplitMix64 eng(9);
    std::set<double> seen;
    for (int i = 0; i < 1000; ++i) seen.insert(spec.sample(eng));
    EXPECT_EQ(seen, (std::set<double>{0.1 - 0.5, 0.1 + 0.5}));
}

TEST(JumpSpec, Validation) {
    EXPECT_THROW(JumpSpec(JumpKind::Constant, 0.1, 0.01), ValidationError);
    EXPECT_THROW(JumpSpec(JumpKind::Gaussian, 0.1, -0.01), ValidationError);
    EXPECT_THROW(JumpSpec(JumpKind::Gaussian, std::nan(""), 0.01), ValidationError);
    const auto mismatched = JumpSpec(JumpKind::Gaussian, 0.5, 0.04);
    const double grid[] = {0.0, 1.0};
    EXPECT_THROW((void)simulate_path(kJumpy, mismatched, grid, 1), ValidationError);
    // Without jumps the law is never used.
    auto no_jumps = kJumpy;
    no_jumps.lambda = 0.0;
    EXPECT_NO_THROW((void)simulate_path(no_jumps, mismatched, grid, 1));
    for (auto k : {JumpKind::Gaussian, JumpKind::Constant, JumpKind::TwoPoint})
        EXPECT_EQ(parse_jump_kind(to_string(k)), k);
}

TEST(SimulatePath, GridValidation) {
    const auto jumps = JumpSpec::for_model(JumpKind::Gaussian, kJumpy);
    EXPECT_THROW((void)simulate_path(kJumpy, jumps, std::vector<double>{}, 1), DomainError);
    EXPECT_THROW((void)simulate_path(kJumpy, jumps, std::vector<double>{0.5, 1.0}, 1), DomainError);
    EXPECT_THROW((void)simulate_path(kJumpy, jumps, std::vector<double>{0.0, 2.0, 1.0}, 1), DomainError);
    EXPECT_THROW((void)simulate_path(kJumpy, jumps, std::vector<double>{0.0, 1.0, 1.0}, 1), DomainError);
    EXPECT_THROW((void)simulate_path(kJumpy, jumps, std::vector<double>{0.0, -1.0}, 1), DomainError);
}

TEST(SimulatePath, ShapeAndReproducibility) {
    const auto jumps = JumpSpec::for_model(JumpKind::Gaussian, kJumpy);
    const std::vector<double> grid{0.0, 0.5, 1.0, 4.0, 9.0};
    const auto a = simulate_path(kJumpy, jumps, grid, 77);
    const auto b = simulate_path(kJumpy, jumps, grid, 77);
    const auto c = simulate_path(kJumpy, jumps, grid, 78);
    EXPECT_EQ(a.times, grid);
    ASSERT_EQ(a.returns.size(), grid.size());
    EXPECT_EQ(a.returns[0], 0.0);
    EXPECT_EQ(a.returns, b.returns);
    EXPECT_EQ(a.jump_times, b.jump_times);
    EXPECT_NE(a.returns, c.returns);
    EXPECT_TRUE(std::is_sorted(a.jump_times.begin(), a.jump_times.end()));
    for (double t : a.jump_times) {
        EXPECT_GT(t, 0.0);
        EXPECT_LE(t, 9.0);
    }
    EXPECT_NEAR(price_from_return(100.0, a.returns[2]), 100.0 * std::exp(a.returns[2]), 1e-12);
}

TEST(SimulatePath, NoJumpTimesWithoutIntensity) {
    ModelParams p{0.1, 0.3, 0.0, 0.2, 0.1, 1.0};
    const auto jumps = JumpSpec::for_model(JumpKind::Gaussian, p);
    const std::vector<double> grid{0.0, 1.0, 5.0};
    for (std::uint64_t seed = 0; seed < 500; ++seed)
        EXPECT_TRUE(simulate_path(p, jumps, grid, seed).jump_times.empty());
}

TEST(SimulatePath, PureDriftInExpectation) {
    ModelParams p{0.1, 0.2, 0.0, 0.0, 0.0, 1.0};
    const auto jumps = JumpSpec::for_model(JumpKind::Gaussian, p);
    const std::vector<double> grid{0.0, 1.0};
    RunningStats st;
    for (std::uint64_t i = 0; i < kPaths; ++i)
        st.push(simulate_path(p, jumps, grid, child_seed(5, i)).returns[1]);
    expect_within_band(st, 0.1, "E p_1");
}

TEST(SimulatePath, MomentsMatchClosedForms) {
    const auto jumps = JumpSpec::for_model(JumpKind::Gaussian, kJumpy);
    const auto d = derive(kJumpy);
    const std::vector<double> grid{0.0, 1.0, 3.0, 6.0, 9.0};
    constexpr std::size_t m = 4;
    std::array<RunningStats, m> mean;
    std::array<std::array<RunningStats, m>, m> prod, cov;
    std::array<RunningStats, m> incr;
    for (std::uint64_t i = 0; i < kPaths; ++i) {
        const auto path = simulate_path(kJumpy, jumps, grid, child_seed(17, i));
        for (std::size_t a = 0; a < m; ++a) {
            const double pa = path.returns[a + 1];
            mean[a].push(pa);
            incr[a].push(pa - path.returns[a] - d.beta * (grid[a + 1] - grid[a]));
            for (std::size_t b = 0; b < m; ++b) {
                const double pb = path.returns[b + 1];
                prod[a][b].push(pa * pb);
                cov[a][b].push((pa - d.beta * grid[a + 1]) * (pb - d.beta * grid[b + 1]));
            }
        }
    }
    for (std::size_t a = 0; a < m; ++a) {
        const double ta = grid[a + 1];
        expect_within_band(mean[a], mean_return(ta, d), "mean");
        expect_within_band(incr[a], 0.0, "centred increment");
        for (std::size_t b = 0; b < m; ++b) {
            const double tb = grid[b + 1];
            expect_within_band(prod[a][b], second_moment(ta, tb, d), "second moment");
            if (a < 3 && b < 3) expect_within_band(cov[a][b], covariance(ta, tb, d), "covariance");
        }
    }
}

TEST(TerminalPair, ShortLeadIncrementHasDrift) {
    ModelParams p{0.1, 1e-4, 0.0, 0.0, 0.0, 1.0};
    const auto jumps = JumpSpec::for_model(JumpKind::Gaussian, p);
    const Horizon h(6.0, 6.0 + 1e-3);
    RunningStats st;
    for (std::uint64_t i = 0; i < 20'000; ++i) {
        const auto pair = simulate_terminal_pair(p, jumps, h, child_seed(3, i));
        st.push(pair.p_s_target - pair.p_t_obs);
    }
    expect_within_band(st, 0.1 * 1e-3, "increment mean");
    EXPECT_NEAR(st.mean(), 1e-4, 1e-6);
}

TEST(TerminalPair, HighIntensityMeanFollowsAdjustedTrend) {
    ModelParams p{0.05, 0.2, 50.0, 0.01, 0.0, 1.0};
    const auto jumps = JumpSpec::for_model(JumpKind::Constant, p);
    const Horizon h(6.0, 9.0);
    RunningStats st;
    for (std::uint64_t i = 0; i < kPaths; ++i)
        st.push(simulate_terminal_pair(p, jumps, h, child_seed(8, i)).p_t_obs);
    expect_within_band(st, (0.05 + 50 * 0.01) * 6.0, "E p_T");
}

TEST(TerminalPair, MatchesPathValuesInDistribution) {
    const auto jumps = JumpSpec::for_model(JumpKind::TwoPoint, kJumpy);
    const Horizon h(6.0, 9.0);
    const std::vector<double> grid{0.0, 6.0, 9.0};
    std::array<RunningStats, 5> pair_stats, path_stats;
    auto push = [](std::array<RunningStats, 5>& st, double pt, double ps) {
        st[0].push(pt);
        st[1].push(ps);
        st[2].push(pt * pt);
        st[3].push(ps * ps);
        st[4].push(pt * ps);
    };
    for (std::uint64_t i = 0; i < kPaths; ++i) {
        const auto pair = simulate_terminal_pair(kJumpy, jumps, h, child_seed(21, i));
        push(pair_stats, pair.p_t_obs, pair.p_s_target);
        const auto path = simulate_path(kJumpy, jumps, grid, child_seed(22, i));
        push(path_stats, path.returns[1], path.returns[2]);
    }
    for (std::size_t k = 0; k < pair_stats.size(); ++k) {
        const double joint = std::hypot(pair_stats[k].std_error(), path_stats[k].std_error());
        EXPECT_LE(std::abs(z_score(pair_stats[k].mean(), path_stats[k].mean(), joint)), kZ) << k;
    }
}

TEST(BatchPairs, DeterministicAndWorkerIndependent) {
    const auto jumps = JumpSpec::for_model(JumpKind::Gaussian, kJumpy);
    const Horizon h(6.0, 9.0);
    const auto a = batch_pairs(kJumpy, jumps, h, 10'000, 42, 1);
    const auto b = batch_pairs(kJumpy, jumps, h, 10'000, 42, 4);
    const auto c = batch_pairs(kJumpy, jumps, h, 10'000, 43, 1);
    ASSERT_EQ(a.size(), 10'000u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].index, i);
        EXPECT_EQ(a[i].seed, child_seed(42, i));
        EXPECT_EQ(a[i].p_t_obs, b[i].p_t_obs);
        EXPECT_EQ(a[i].p_s_target, b[i].p_s_target);
    }
    EXPECT_NE(a[0].p_t_obs, c[0].p_t_obs);
    EXPECT_THROW((void)batch_pairs(kJumpy, jumps, h, 0, 42), InsufficientSampleError);
}

TEST(BatchPairs, ChildSeedsAreDistinct) {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 100'000; ++i) seeds.insert(child_seed(7, i));
    EXPECT_EQ(seeds.size(), 100'000u);
    EXPECT_NE(child_seed(7, 0), child_seed(8, 0));
}

TEST(BatchPairs, TerminalVarianceMatchesTotalVolatility) {
    const auto jumps = JumpSpec::for_model(JumpKind::Gaussian, kJumpy);
    const auto d = derive(kJumpy);
    const Horizon h(6.0, 9.0);
    const auto pairs = batch_pairs(kJumpy, jumps, h, kPaths, 1234, 0);
    RunningStats centred_sq;
    for (const auto& p : pairs) {
        const double c = p.p_t_obs - d.beta * 6.0;
        centred_sq.push(c * c);
    }
    expect_within_band(centred_sq, d.mu * d.mu * 6.0, "Var p_T");
}
