#pragma once

// Jump-augmented Black-Scholes return model
//
//     p_t = alpha t + sigma W_t + J_t,   J_t = X_1 + ... + X_{N_t}
//
// with N_t a Poisson process of rate lambda and iid jump sizes of mean nu and
// variance tau2.  Only the adjusted trend beta and the total volatility mu
// enter the first two moments, and with them every forecast formula.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

#include "jumpcast/error.hpp"
#include "jumpcast/numeric.hpp"

namespace jumpcast {

struct ModelParams {
    double alpha = 0.0;  ///< trend per unit time
    double sigma = 0.0;  ///< diffusive volatility per sqrt(time)
    double lambda = 0.0; ///< jump intensity per unit time
    double nu = 0.0;     ///< mean jump size (log-return units)
    double tau2 = 0.0;   ///< jump size variance
    double p0 = 1.0;     ///< initial price

    /// Throws ValidationError naming the first offending field.
    void validate() const {
        auto require = [](bool ok, std::string_view field, std::string_view msg) {
            if (!ok) throw ValidationError(std::string(field), std::string(msg));
        };
        require(std::isfinite(alpha), "alpha", "must be finite");
        require(std::isfinite(sigma) && sigma > 0.0, "sigma", "must be finite and > 0");
        require(std::isfinite(lambda) && lambda >= 0.0, "lambda", "must be finite and >= 0");
        require(std::isfinite(nu), "nu", "must be finite");
        require(std::isfinite(tau2) && tau2 >= 0.0, "tau2", "must be finite and >= 0");
        require(std::isfinite(p0) && p0 > 0.0, "p0", "must be finite and > 0");
    }

    /// False when lambda = 0; nu and tau2 are then irrelevant.
    [[nodiscard]] bool has_jumps() const noexcept { return lambda > 0.0; }
};

struct DerivedParams {
    double beta = 0.0;            ///< adjusted trend alpha + lambda nu
    double mu = 0.0;              ///< total volatility
    std::optional<double> gamma;  ///< relative volatility mu / beta, signed; absent iff beta == 0

    [[nodiscard]] bool beta_is_zero() const noexcept { return !gamma.has_value(); }

    /// gamma^2; throws UndefinedGammaError when beta == 0.
    [[nodiscard]] double gamma2() const {
        if (!gamma) throw UndefinedGammaError();
        return *gamma * *gamma;
    }
};

/// Observation window [0, T] and planning endpoint S.
class Horizon {
public:
    Horizon(double t_obs, double s_target) : t_obs_(t_obs), s_target_(s_target) {
        if (!std::isfinite(t_obs) || t_obs <= 0.0)
            throw ValidationError("horizon.T", "must be finite and > 0");
        if (!std::isfinite(s_target) || s_target <= t_obs)
            throw ValidationError("horizon.S", "must be finite and > T");
    }

    [[nodiscard]] double t_obs() const noexcept { return t_obs_; }
    [[nodiscard]] double s_target() const noexcept { return s_target_; }
    [[nodiscard]] double lead() const noexcept { return s_target_ - t_obs_; }

private:
    double t_obs_;
    double s_target_;
};

inline DerivedParams derive(const ModelParams& params) {
    params.validate();
    DerivedParams d;
    // lambda = 0 removes the jump component whatever nu and tau2 are.
    const double jump_mean = params.has_jumps() ? params.lambda * params.nu : 0.0;
    const double jump_var =
        params.has_jumps() ? params.lambda * (params.nu * params.nu + params.tau2) : 0.0;
    d.beta = params.alpha + jump_mean;
    d.mu = std::sqrt(params.sigma * params.sigma + jump_var);
    if (d.beta != 0.0) d.gamma = d.mu / d.beta;
    return d;
}

/// E(p_t) = beta t.
inline double mean_return(double t, const DerivedParams& d) {
    if (!(t >= 0.0)) throw DomainError("mean_return: time must be >= 0");
    return d.beta * t;
}

/// E(p_s p_t) = beta^2 s t + mu^2 min(s, t).
inline double second_moment(double s, double t, const DerivedParams& d) {
    if (!(s >= 0.0) || !(t >= 0.0)) throw DomainError("second_moment: times must be >= 0");
    return d.beta * d.beta * s * t + d.mu * d.mu * std::min(s, t);
}

/// Cov(p_s, p_t) = mu^2 min(s, t).
inline double covariance(double s, double t, const DerivedParams& d) {
    if (!(s >= 0.0) || !(t >= 0.0)) throw DomainError("covariance: times must be >= 0");
    return d.mu * d.mu * std::min(s, t);
}

/// True when beta is nonzero but so small relative to mu that gamma^2 dwarfs any
/// practical T and the forecast formulas mostly amplify rounding.
inline bool near_zero_beta(const DerivedParams& d, const Horizon& h) noexcept {
    return std::abs(d.beta) * std::sqrt(h.t_obs()) < 1e-12 * d.mu;
}

enum class CriticalRelation { BlueBetter, Tie, TrivialBetter };

inline constexpr std::string_view to_string(CriticalRelation r) noexcept {
    switch (r) {
    case CriticalRelation::BlueBetter: return "BlueBetter";
    case CriticalRelation::Tie: return "Tie";
    case CriticalRelation::TrivialBetter: return "TrivialBetter";
    }
    return "?";
}

struct CriticalVerdict {
    CriticalRelation relation = CriticalRelation::Tie;
    double critical_time = 0.0;        ///< gamma^2
    double critical_volatility = 0.0;  ///< sqrt(T)
    bool near_zero_beta = false;
};

/// The Blue forecast loses to the trivial one exactly when T < gamma^2.  T within
/// kCrossoverUlps of gamma^2 counts as a tie, so that gamma = sqrt(T) (whose square
/// is rarely T exactly) lands on the boundary.
inline CriticalVerdict classify_critical(const Horizon& h, const DerivedParams& d) {
    const double g2 = d.gamma2();
    CriticalVerdict v;
    v.critical_time = g2;
    v.critical_volatility = std::sqrt(h.t_obs());
    v.near_zero_beta = near_zero_beta(d, h);
    if (within_ulps(h.t_obs(), g2, kCrossoverUlps))
        v.relation = CriticalRelation::Tie;
    else if (h.t_obs() < g2)
        v.relation = CriticalRelation::TrivialBetter;
    else
        v.relation = CriticalRelation::BlueBetter;
    return v;
}

} // namespace jumpcast
