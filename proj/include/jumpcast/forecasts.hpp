#pragma once

// The four forecasts of p_S from the path observed on [0, T], their mean-square
// errors and relative performances when the forecast target is p_S itself.
//
//   kind            forecast                    MSE
//   BestMeasurable  p_T + beta (S - T)          mu^2 (S-T)
//   BestLinear      p_T (S + g2) / (T + g2)     mu^2 (S-T) (S + g2) / (T + g2)
//   Blue            p_T S / T                   mu^2 (S-T) S / T
//   Trivial         p_T                         mu^2 (S-T) (1 + (S-T) / g2)
//
// where g2 = gamma^2 = mu^2 / beta^2.  Every relative performance is
// MSE(BestMeasurable) / MSE(kind) and depends on gamma only through g2.

#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include "jumpcast/error.hpp"
#include "jumpcast/model.hpp"

namespace jumpcast {

enum class ForecastKind { BestMeasurable, BestLinear, Blue, Trivial };

inline constexpr std::array<ForecastKind, 4> kAllForecastKinds = {
    ForecastKind::BestMeasurable, ForecastKind::BestLinear, ForecastKind::Blue,
    ForecastKind::Trivial};

inline constexpr std::string_view to_string(ForecastKind k) noexcept {
    switch (k) {
    case ForecastKind::BestMeasurable: return "best_measurable";
    case ForecastKind::BestLinear: return "best_linear";
    case ForecastKind::Blue: return "blue";
    case ForecastKind::Trivial: return "trivial";
    }
    return "?";
}

inline std::optional<ForecastKind> parse_forecast_kind(std::string_view name) noexcept {
    for (auto k : kAllForecastKinds)
        if (to_string(k) == name) return k;
    return std::nullopt;
}

inline constexpr std::size_t index_of(ForecastKind k) noexcept {
    return static_cast<std::size_t>(k);
}

/// Forecast of p_S given p_T on a window with 0 < T <= S.  S == T is accepted so that
/// the formulas can be checked to collapse onto p_T.
inline double forecast_value(ForecastKind kind, double p_t, double t_obs, double s_target,
                             const DerivedParams& d) {
    if (!(t_obs > 0.0) || !(s_target >= t_obs))
        throw DomainError("forecast_value: need 0 < T <= S");
    switch (kind) {
    case ForecastKind::BestMeasurable:
        if (d.beta_is_zero()) throw UndefinedGammaError();
        return p_t + d.beta * (s_target - t_obs);
    case ForecastKind::BestLinear: {
        const double g2 = d.gamma2();
        return p_t * ((s_target + g2) / (t_obs + g2));
    }
    case ForecastKind::Blue:
        return p_t * (s_target / t_obs);
    case ForecastKind::Trivial:
        return p_t;
    }
    throw DomainError("forecast_value: unknown kind");
}

inline double forecast_value(ForecastKind kind, double p_t, const Horizon& h,
                             const DerivedParams& d) {
    return forecast_value(kind, p_t, h.t_obs(), h.s_target(), d);
}

/// With beta = 0 all forecasts reduce to the last observation.
inline constexpr double coincident_forecast_beta_zero(double p_t) noexcept { return p_t; }

/// forecast_value for beta != 0, the coincident forecast otherwise.
inline double predict(ForecastKind kind, double p_t, const Horizon& h, const DerivedParams& d) {
    if (d.beta_is_zero()) return coincident_forecast_beta_zero(p_t);
    return forecast_value(kind, p_t, h, d);
}

/// Closed-form mean-square error E((p_S - Z)^2).  For beta = 0 every kind is the
/// coincident forecast p_T, whose error is mu^2 (S - T).
inline double theoretical_mse(ForecastKind kind, const Horizon& h, const DerivedParams& d) {
    const double lead = h.lead();
    const double base = d.mu * d.mu * lead;
    if (d.beta_is_zero()) return base;
    const double g2 = d.gamma2();
    const double t = h.t_obs();
    const double s = h.s_target();
    switch (kind) {
    case ForecastKind::BestMeasurable: return base;
    case ForecastKind::BestLinear: return base * ((s + g2) / (t + g2));
    case ForecastKind::Blue: return base * (s / t);
    case ForecastKind::Trivial: return base * (1.0 + lead / g2);
    }
    throw DomainError("theoretical_mse: unknown kind");
}

/// delta = MSE(BestMeasurable) / MSE(kind), as a function of gamma^2.  The trivial
/// forecast's value at gamma2 = 0 is its limit 0.
inline double relative_performance(ForecastKind kind, const Horizon& h, double gamma2) {
    if (!(gamma2 >= 0.0)) throw DomainError("relative_performance: gamma2 must be >= 0");
    const double t = h.t_obs();
    const double s = h.s_target();
    switch (kind) {
    case ForecastKind::BestMeasurable: return 1.0;
    case ForecastKind::BestLinear: return (t + gamma2) / (s + gamma2);
    case ForecastKind::Blue: return t / s;
    case ForecastKind::Trivial:
        if (gamma2 == 0.0) return 0.0;
        return gamma2 / (gamma2 + h.lead());
    }
    throw DomainError("relative_performance: unknown kind");
}

struct MseBreakdown {
    ForecastKind kind = ForecastKind::BestMeasurable;
    double mse = 0.0;
    double relative_performance = 1.0;
};

/// One row per kind, in kAllForecastKinds order.
inline std::array<MseBreakdown, 4> mse_table(const Horizon& h, const DerivedParams& d) {
    std::array<MseBreakdown, 4> rows{};
    for (auto k : kAllForecastKinds) {
        auto& row = rows[index_of(k)];
        row.kind = k;
        row.mse = theoretical_mse(k, h, d);
        row.relative_performance = d.beta_is_zero() ? 1.0 : relative_performance(k, h, d.gamma2());
    }
    return rows;
}

} // namespace jumpcast
