#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <regex>
#include <string>

#include "jumpcast/analysis.hpp"

using namespace jumpcast;

namespace {

const Horizon kExample(6.0, 9.0);

/// Points of the polyline tagged with `series`, in SVG user units.
std::vector<std::pair<double, double>> polyline_points(const std::string& svg, const std::string& series) {
    const std::regex re("data-series=\"" + series + "\" points=\"([^\"]*)\"");
    std::smatch m;
    if (!std::regex_search(svg, m, re)) return {};
    std::vector<std::pair<double, double>> pts;
    std::istringstream in(m[1].str());
    std::string tok;
    while (in >> tok) {
        const auto comma = tok.find(',');
        pts.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    }
    return pts;
}

} // namespace

TEST(GammaSweep, RowCountsAndEndpoints) {
    const auto t = gamma_sweep(kExample, 0.1, 5.0, 0.1);
    ASSERT_EQ(t.rows.size(), 50u);
    EXPECT_DOUBLE_EQ(t.rows.front().gamma, 0.1);
    EXPECT_EQ(t.rows.back().gamma, 5.0);
    EXPECT_EQ(t.t_obs, 6.0);
    EXPECT_EQ(t.s_target, 9.0);

    const auto f1 = figure1_sweep(kExample);
    const auto f2 = figure2_sweep(kExample);
    EXPECT_EQ(f1.rows.size(), 100u);
    EXPECT_EQ(f2.rows.size(), 100u);
    EXPECT_EQ(f1.rows.back().gamma, 5.0);
    EXPECT_GT(f2.rows.front().gamma, 5.0);
    EXPECT_EQ(f2.rows.back().gamma, 20.0);
}

TEST(GammaSweep, RangeValidation) {
    EXPECT_THROW((void)gamma_sweep(kExample, 0.0, 5.0, 0.1), DomainError);
    EXPECT_THROW((void)gamma_sweep(kExample, 1.0, 1.0, 0.1), DomainError);
    EXPECT_THROW((void)gamma_sweep(kExample, 2.0, 1.0, 0.1), DomainError);
    EXPECT_THROW((void)gamma_sweep(kExample, 0.1, 5.0, 0.0), DomainError);
    EXPECT_THROW((void)gamma_sweep(kExample, 0.1, 5.0, -0.1), DomainError);
    EXPECT_THROW((void)gamma_sweep(kExample, 0.1, 5.0, std::nan("")), DomainError);
    EXPECT_THROW((void)gamma_sweep(kExample, 1e-300, 1e10, 1e-300), DomainError);
}

TEST(GammaSweep, ExampleRows) {
    const auto crossing = sweep_row(kExample, std::sqrt(6.0));
    EXPECT_NEAR(crossing.blue, 2.0 / 3.0, 1e-16);
    EXPECT_TRUE(within_ulps(crossing.trivial, crossing.blue, 4));

    const auto far = sweep_row(kExample, 20.0);
    EXPECT_NEAR(far.trivial, 400.0 / 403.0, 1e-15);
    EXPECT_NEAR(far.best_linear, 406.0 / 409.0, 1e-15);
    EXPECT_EQ(far.best_measurable, 1.0);
}

TEST(GammaSweep, TableInvariants) {
    for (const auto& table : {figure1_sweep(kExample), figure2_sweep(kExample),
                              gamma_sweep(Horizon(1.0, 4.0), 0.01, 30.0, 0.07)}) {
        const double ts = table.t_obs / table.s_target;
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            const auto& r = table.rows[i];
            EXPECT_EQ(r.best_measurable, 1.0);
            EXPECT_EQ(r.blue, ts);
            EXPECT_GE(r.best_linear, ts);
            EXPECT_LE(r.best_linear, 1.0);
            EXPECT_GE(r.trivial, 0.0);
            EXPECT_LT(r.trivial, 1.0);
            const double g2 = r.gamma * r.gamma;
            if (g2 < table.t_obs) {
                EXPECT_LT(r.trivial, r.blue);
            }
            if (g2 > table.t_obs) {
                EXPECT_GT(r.trivial, r.blue);
            }
            if (i > 0) {
                const auto& prev = table.rows[i - 1];
                EXPECT_GT(r.gamma, prev.gamma);
                EXPECT_GT(r.best_linear, prev.best_linear);
                EXPECT_GT(r.trivial, prev.trivial);
            }
        }
    }
}

TEST(CrossingPoint, SquareRootOfObservationTime) {
    EXPECT_EQ(crossing_point(kExample), std::sqrt(6.0));
    EXPECT_NEAR(crossing_point(kExample), 2.449, 5e-4);
    EXPECT_EQ(crossing_point(Horizon(1.0, 2.0)), 1.0);
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.01, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = u(gen);
        const Horizon h(t, t * 1.7);
        const double g = crossing_point(h);
        EXPECT_TRUE(within_ulps(relative_performance(ForecastKind::Blue, h, g * g),
                                relative_performance(ForecastKind::Trivial, h, g * g), 4))
            << "T=" << t;
    }
}

TEST(EmitFigure, CsvLayout) {
    SweepTable one{6.0, 9.0, {sweep_row(kExample, 1.5)}};
    const auto csv = emit_figure(one, FigureFormat::Csv);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "gamma,best_measurable,best_linear,blue,trivial");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
    EXPECT_THROW((void)emit_figure(SweepTable{6.0, 9.0, {}}, FigureFormat::Csv), DomainError);
    EXPECT_THROW((void)emit_figure(SweepTable{6.0, 9.0, {}}, FigureFormat::Svg), DomainError);
}

TEST(EmitFigure, CsvBracketsTheCrossing) {
    const auto table = gamma_sweep(kExample, 0.1, 5.0, 0.1);
    const auto parsed = parse_sweep_csv(emit_figure(table, FigureFormat::Csv), kExample);
    ASSERT_EQ(parsed.rows.size(), 50u);
    const auto& r24 = parsed.rows[23];
    const auto& r25 = parsed.rows[24];
    EXPECT_NEAR(r24.gamma, 2.4, 1e-12);
    EXPECT_NEAR(r25.gamma, 2.5, 1e-12);
    EXPECT_LT(r24.trivial - 2.0 / 3.0, 0.0);
    EXPECT_GT(r25.trivial - 2.0 / 3.0, 0.0);
}

TEST(EmitFigure, CsvRoundTrip) {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.01, 3.0);
    for (int i = 0; i < 20; ++i) {
        const double lo = u(gen);
        const auto table = gamma_sweep(kExample, lo, lo + 10 * u(gen), 0.01 + u(gen) / 10);
        const auto back = parse_sweep_csv(sweep_to_csv(table), kExample);
        ASSERT_EQ(back.rows.size(), table.rows.size());
        for (std::size_t k = 0; k < table.rows.size(); ++k) EXPECT_EQ(back.rows[k], table.rows[k]);
    }
    EXPECT_THROW((void)parse_sweep_csv("gamma,x\n1,2\n", kExample), DomainError);
    EXPECT_THROW((void)parse_sweep_csv(std::string(kSweepCsvHeader) + "\n1,2,3\n", kExample), DomainError);
    EXPECT_THROW((void)parse_sweep_csv(std::string(kSweepCsvHeader) + "\n1,2,3,4,x\n", kExample), DomainError);
    EXPECT_THROW((void)parse_sweep_csv(std::string(kSweepCsvHeader) + "\n", kExample), DomainError);
}

TEST(EmitFigure, SvgLargeVolatilityFigure) {
    const auto table = figure2_sweep(kExample);
    const auto svg = emit_figure(table, FigureFormat::Svg);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_NE(svg.find("Relative volatility"), std::string::npos);
    EXPECT_NE(svg.find("Relative performance"), std::string::npos);
    EXPECT_EQ(svg.find("href"), std::string::npos);  // self-contained

    // Plot area: top 40, height 380, y = 1 at 40.
    const auto y_of = [](double py) { return 1.0 - (py - 40.0) / 380.0; };
    const auto trivial = polyline_points(svg, "trivial");
    const auto linear = polyline_points(svg, "best linear");
    const auto blue = polyline_points(svg, "best linear unbiased");
    ASSERT_EQ(trivial.size(), table.rows.size());
    ASSERT_EQ(blue.size(), table.rows.size());
    EXPECT_NEAR(y_of(trivial.back().second), 1.0, 0.01);
    EXPECT_NEAR(y_of(linear.back().second), 1.0, 0.01);
    for (const auto& p : blue) EXPECT_NEAR(y_of(p.second), 2.0 / 3.0, 0.005);
    EXPECT_NEAR(table.rows.back().trivial, 1.0, 0.01);
    EXPECT_EQ(table.rows.back().blue, 2.0 / 3.0);
}

TEST(EmitFigure, FileNaming) {
    const auto table = figure1_sweep(kExample);
    EXPECT_EQ(sweep_file_name(table, FigureFormat::Csv), "sweep_T6_S9.csv");
    EXPECT_EQ(sweep_file_name(table, FigureFormat::Svg), "sweep_T6_S9.svg");
    EXPECT_EQ(sweep_file_name(gamma_sweep(Horizon(0.5, 1.25), 1, 2, 1), FigureFormat::Csv),
              "sweep_T0.5_S1.25.csv");
}
