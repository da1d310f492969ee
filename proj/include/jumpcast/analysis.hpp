#pragma once

// Relative performance as a function of relative volatility for a fixed
// horizon: sweep tables, the Blue/trivial crossing point, and CSV/SVG output.

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "jumpcast/error.hpp"
#include "jumpcast/format.hpp"
#include "jumpcast/forecasts.hpp"
#include "jumpcast/model.hpp"

namespace jumpcast {

struct SweepRow {
    double gamma = 0.0;
    double best_measurable = 1.0;
    double best_linear = 0.0;
    double blue = 0.0;
    double trivial = 0.0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepTable {
    double t_obs = 0.0;
    double s_target = 0.0;
    std::vector<SweepRow> rows;
};

inline constexpr std::size_t kMaxSweepRows = 10'000'000;

inline SweepRow sweep_row(const Horizon& h, double gamma) {
    const double g2 = gamma * gamma;
    return {gamma,
            relative_performance(ForecastKind::BestMeasurable, h, g2),
            relative_performance(ForecastKind::BestLinear, h, g2),
            relative_performance(ForecastKind::Blue, h, g2),
            relative_performance(ForecastKind::Trivial, h, g2)};
}

/// Rows at gamma_min + k step for every k with gamma <= gamma_max.  A grid point
/// that misses gamma_max only by rounding is snapped onto it.
inline SweepTable gamma_sweep(const Horizon& h, double gamma_min, double gamma_max,
                              double step) {
    if (!std::isfinite(gamma_min) || gamma_min <= 0.0)
        throw DomainError("gamma_sweep: gamma_min must be finite and > 0");
    if (!std::isfinite(gamma_max) || gamma_max <= gamma_min)
        throw DomainError("gamma_sweep: gamma_max must be finite and > gamma_min");
    if (!std::isfinite(step) || step <= 0.0)
        throw DomainError("gamma_sweep: step must be finite and > 0");

    const double span = (gamma_max - gamma_min) / step;
    const double slack = 1e-9;
    if (span + 1.0 > static_cast<double>(kMaxSweepRows))
        throw DomainError("gamma_sweep: grid too large");
    const auto count = static_cast<std::size_t>(std::floor(span + slack)) + 1;

    SweepTable table{h.t_obs(), h.s_target(), {}};
    table.rows.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        double gamma = gamma_min + static_cast<double>(k) * step;
        if (std::abs(gamma - gamma_max) <= slack * step) gamma = gamma_max;
        table.rows.push_back(sweep_row(h, gamma));
    }
    return table;
}

/// Grid of the small-to-moderate volatility figure: (0, 5] in steps of 0.05.
inline SweepTable figure1_sweep(const Horizon& h) { return gamma_sweep(h, 0.05, 5.0, 0.05); }

/// Grid of the large volatility figure: (5, 20] in steps of 0.15.
inline SweepTable figure2_sweep(const Horizon& h) { return gamma_sweep(h, 5.15, 20.0, 0.15); }

/// Relative volatility sqrt(T) at which the Blue and trivial curves intersect.
inline double crossing_point(const Horizon& h) { return std::sqrt(h.t_obs()); }

enum class FigureFormat { Csv, Svg };

inline constexpr std::string_view kSweepCsvHeader = "gamma,best_measurable,best_linear,blue,trivial";

inline std::string sweep_to_csv(const SweepTable& table) {
    if (table.rows.empty()) throw DomainError("emit_figure: empty table");
    std::string out(kSweepCsvHeader);
    out += '\n';
    for (const auto& r : table.rows) {
        out += format_double(r.gamma);
        for (double v : {r.best_measurable, r.best_linear, r.blue, r.trivial}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

/// Inverse of sweep_to_csv; the horizon is not part of the CSV and is supplied.
inline SweepTable parse_sweep_csv(std::string_view csv, const Horizon& h) {
    SweepTable table{h.t_obs(), h.s_target(), {}};
    std::size_t line_no = 0;
    while (!csv.empty()) {
        const auto eol = csv.find('\n');
        std::string_view line = csv.substr(0, eol);
        csv = eol == std::string_view::npos ? std::string_view{} : csv.substr(eol + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (line_no == 1) {
            if (line != kSweepCsvHeader) throw DomainError("parse_sweep_csv: unexpected header");
            continue;
        }
        if (line.empty()) continue;
        std::array<double, 5> v{};
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto comma = line.find(',');
            if ((comma == std::string_view::npos) != (i + 1 == v.size()))
                throw DomainError("parse_sweep_csv: line " + std::to_string(line_no) +
                                  ": expected 5 fields");
            const auto value = parse_double(line.substr(0, comma));
            if (!value)
                throw DomainError("parse_sweep_csv: line " + std::to_string(line_no) +
                                  ": bad number");
            v[i] = *value;
            if (comma != std::string_view::npos) line.remove_prefix(comma + 1);
        }
        table.rows.push_back({v[0], v[1], v[2], v[3], v[4]});
    }
    if (table.rows.empty()) throw DomainError("parse_sweep_csv: no rows");
    return table;
}

namespace detail {

inline std::string fixed2(double x) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 2);
    if (ec != std::errc{}) return "0";
    return {buf, end};
}

inline std::string tick_label(double x) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
    if (ec != std::errc{}) return "?";
    return {buf, end};
}

/// Round step from {1, 2, 5} x 10^k giving roughly `target` intervals over `span`.
inline double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

} // namespace detail

/// Four-series line chart of the table; self-contained, no external assets.
inline std::string sweep_to_svg(const SweepTable& table) {
    if (table.rows.empty()) throw DomainError("emit_figure: empty table");

    constexpr double width = 720, height = 480;
    constexpr double left = 70, right = 170, top = 40, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = table.rows.front().gamma;
    double x_max = table.rows.back().gamma;
    if (x_max <= x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    // Snap the left edge to zero when the sweep starts near it.
    if (x_min > 0.0 && x_min <= 0.05 * (x_max - x_min)) x_min = 0.0;
    const auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto py = [&](double y) { return top + (1.0 - y) * plot_h; };
    using detail::fixed2;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n"
        << "<text x=\"" << fixed2(left + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">Relative performance against relative "
        << "volatility (T=" << format_double(table.t_obs) << ", S="
        << format_double(table.s_target) << ")</text>\n";

    // Grid and ticks.
    const double y_step = 0.2;
    for (int i = 0; i <= 5; ++i) {
        const double y = i * y_step;
        svg << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(py(y)) << "\" x2=\""
            << fixed2(left + plot_w) << "\" y2=\"" << fixed2(py(y))
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << fixed2(left - 8) << "\" y=\"" << fixed2(py(y) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << detail::tick_label(y) << "</text>\n";
    }
    const double x_step = detail::nice_step(x_max - x_min, 8);
    for (double x = std::ceil(x_min / x_step) * x_step; x <= x_max + 1e-9 * x_step; x += x_step) {
        svg << "<line x1=\"" << fixed2(px(x)) << "\" y1=\"" << fixed2(top) << "\" x2=\""
            << fixed2(px(x)) << "\" y2=\"" << fixed2(top + plot_h)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << fixed2(px(x)) << "\" y=\"" << fixed2(top + plot_h + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << detail::tick_label(std::abs(x) < 1e-12 ? 0.0 : x) << "</text>\n";
    }

    // Axes and labels.
    svg << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(top + plot_h) << "\" x2=\""
        << fixed2(left + plot_w) << "\" y2=\"" << fixed2(top + plot_h)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
        << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(top) << "\" x2=\""
        << fixed2(left) << "\" y2=\"" << fixed2(top + plot_h)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << fixed2(left + plot_w / 2) << "\" y=\"" << fixed2(height - 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << "Relative volatility</text>\n"
        << "<text x=\"18\" y=\"" << fixed2(top + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << fixed2(top + plot_h / 2)
        << ")\">Relative performance</text>\n";

    struct Series {
        const char* name;
        const char* colour;
        double SweepRow::*field;
    };
    constexpr std::array<Series, 4> series{{
        {"best measurable", "#1b9e77", &SweepRow::best_measurable},
        {"best linear", "#d95f02", &SweepRow::best_linear},
        {"best linear unbiased", "#7570b3", &SweepRow::blue},
        {"trivial", "#e7298a", &SweepRow::trivial},
    }};
    for (std::size_t s = 0; s < series.size(); ++s) {
        svg << "<polyline fill=\"none\" stroke=\"" << series[s].colour
            << "\" stroke-width=\"2\" data-series=\"" << series[s].name << "\" points=\"";
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            const auto& row = table.rows[i];
            if (i != 0) svg << ' ';
            svg << fixed2(px(row.gamma)) << ',' << fixed2(py(row.*series[s].field));
        }
        svg << "\"/>\n";
        const double ly = top + 10 + 22.0 * static_cast<double>(s);
        svg << "<line x1=\"" << fixed2(left + plot_w + 12) << "\" y1=\"" << fixed2(ly)
            << "\" x2=\"" << fixed2(left + plot_w + 36) << "\" y2=\"" << fixed2(ly)
            << "\" stroke=\"" << series[s].colour << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << fixed2(left + plot_w + 42) << "\" y=\"" << fixed2(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].name
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

inline std::string emit_figure(const SweepTable& table, FigureFormat format) {
    return format == FigureFormat::Csv ? sweep_to_csv(table) : sweep_to_svg(table);
}

/// `sweep_T<T>_S<S>.<ext>` with shortest round-trip numbers.
inline std::string sweep_file_name(const SweepTable& table, FigureFormat format) {
    return "sweep_T" + format_double(table.t_obs) + "_S" + format_double(table.s_target) +
           (format == FigureFormat::Csv ? ".csv" : ".svg");
}

} // namespace jumpcast
