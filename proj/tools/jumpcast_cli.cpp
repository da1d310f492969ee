// jumpcast: derive model quantities, simulate returns, evaluate forecasts,
// verify closed-form MSEs by Monte Carlo and write relative-performance sweeps.
//
// Exit codes: 0 success, 1 verification failure, 2 validation error,
// 3 insufficient sample.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "jumpcast/jumpcast.hpp"

namespace fs = std::filesystem;
using namespace jumpcast;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInsufficient = 3;

/// Flag values in the order they should be applied on top of the config file.
struct Overrides {
    std::optional<std::string> config_path;
    std::vector<std::pair<std::string, std::string>> values;
};

void add_override(CLI::App& app, Overrides& ov, const std::string& flag, const std::string& key,
                  const std::string& help) {
    app.add_option_function<std::string>(
           flag, [&ov, key](const std::string& v) { ov.values.emplace_back(key, v); }, help)
        ->type_name("VALUE");
}

RunConfig load_config(const Overrides& ov) {
    RunConfig config;
    if (ov.config_path) {
        std::ifstream in(*ov.config_path);
        if (!in) throw ValidationError("--config", "cannot read '" + *ov.config_path + "'");
        std::stringstream text;
        text << in.rdbuf();
        apply_config_text(config, text.str());
    }
    for (const auto& [key, value] : ov.values) config.set(key, value);
    config.validate();
    return config;
}

void write_file(const RunConfig& config, const std::string& name, const std::string& content) {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    const fs::path path = fs::path(config.output_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("run.output_dir", "cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw ValidationError("run.output_dir", "write failed for '" + path.string() + "'");
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto v = parse_double(rest.substr(0, comma));
        if (!v) throw ValidationError(flag, "bad number list '" + text + "'");
        out.push_back(*v);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (out.empty()) throw ValidationError(flag, "empty list");
    return out;
}

json model_json(const RunConfig& c) {
    json j;
    j["alpha"] = c.model.alpha;
    j["sigma"] = c.model.sigma;
    j["lambda"] = c.model.lambda;
    j["nu"] = c.model.nu;
    j["tau2"] = c.model.tau2;
    j["p0"] = c.model.p0;
    return j;
}

json horizon_json(const RunConfig& c) {
    json j;
    j["T"] = c.t_obs;
    j["S"] = c.s_target;
    return j;
}

constexpr const char* kCoincidenceNote =
    "beta = 0: relative volatility is undefined and all forecasts coincide with p_T";

// ---------------------------------------------------------------------------

int cmd_derive(const RunConfig& config) {
    const auto d = derive(config.model);
    const auto h = config.horizon();
    json out;
    out["model"] = model_json(config);
    out["horizon"] = horizon_json(config);
    out["derived"] = to_json(d);
    if (d.beta_is_zero()) {
        out["critical"] = nullptr;
        out["message"] = kCoincidenceNote;
    } else {
        out["critical"] = to_json(classify_critical(h, d));
    }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmd_mse(const RunConfig& config, const std::string& format) {
    const auto rows = mse_table(config.horizon(), derive(config.model));
    if (format == "csv") {
        std::cout << mse_to_csv(rows);
        return kExitOk;
    }
    json out = json::array();
    for (const auto& r : rows) out.push_back(to_json(r));
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmd_forecast(const RunConfig& config, double p_t, const std::string& format) {
    const auto d = derive(config.model);
    const auto h = config.horizon();
    const auto rows = mse_table(h, d);
    if (format == "csv") {
        std::cout << "kind,forecast,mse,delta\n";
        for (const auto& r : rows)
            std::cout << to_string(r.kind) << ',' << format_double(predict(r.kind, p_t, h, d))
                      << ',' << format_double(r.mse) << ',' << format_double(r.relative_performance)
                      << '\n';
        return kExitOk;
    }
    json out;
    out["p_T"] = p_t;
    out["horizon"] = horizon_json(config);
    out["derived"] = to_json(d);
    if (d.beta_is_zero()) out["message"] = kCoincidenceNote;
    json forecasts = json::array();
    for (const auto& r : rows) {
        json j = to_json(r);
        j["forecast"] = predict(r.kind, p_t, h, d);
        forecasts.push_back(std::move(j));
    }
    out["forecasts"] = std::move(forecasts);
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmd_simulate(const RunConfig& config, std::size_t paths, std::size_t steps,
                 const std::optional<std::string>& grid_text, bool pairs) {
    const auto jumps = config.jumps();
    std::vector<double> grid;
    if (grid_text) {
        grid = parse_list(*grid_text, "--grid");
    } else {
        if (steps == 0) throw ValidationError("--steps", "must be >= 1");
        const double end = config.s_target;
        for (std::size_t i = 0; i <= steps; ++i)
            grid.push_back(end * static_cast<double>(i) / static_cast<double>(steps));
    }
    if (paths == 0) throw ValidationError("--paths", "must be >= 1");

    json files = json::array();
    for (std::size_t i = 0; i < paths; ++i) {
        const auto path =
            simulate_path(config.model, jumps, grid, child_seed(config.master_seed, i));
        const std::string name = paths == 1 ? "path.csv" : "path_" + std::to_string(i) + ".csv";
        write_file(config, name, path_to_csv(path));
        files.push_back(name);
    }
    if (pairs) {
        const auto batch = batch_pairs(config.model, jumps, config.horizon(), config.n,
                                       config.master_seed, config.workers);
        write_file(config, "pairs.csv", pairs_to_csv(batch));
        files.push_back("pairs.csv");
    }
    json out;
    out["output_dir"] = config.output_dir;
    out["files"] = std::move(files);
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmd_verify(const RunConfig& config, bool corrupt_theory) {
    const auto h = config.horizon();
    auto reports = verify_all(config.model, config.jumps(), h, config.n, config.master_seed,
                              config.z_threshold, config.workers);
    if (corrupt_theory) {
        // Harness self-test: a theory inflated by 10% must be rejected.
        for (auto& r : reports) r = make_report(r.theoretical * 1.1, r.empirical, config.z_threshold);
    }
    json out;
    out["model"] = model_json(config);
    out["horizon"] = horizon_json(config);
    out["jumps"] = std::string(to_string(config.jump_kind));
    out["n"] = config.n;
    out["master_seed"] = config.master_seed;
    out["z_threshold"] = config.z_threshold;
    json list = json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    out["reports"] = std::move(list);
    out["pass"] = all_pass(reports);
    const std::string text = out.dump(2) + '\n';
    write_file(config, "verify.json", text);
    write_file(config, "verify.csv", reports_to_csv(reports));
    std::cout << text;
    return all_pass(reports) ? kExitOk : kExitVerifyFailed;
}

int cmd_moments(const RunConfig& config, const std::optional<std::string>& times_text) {
    std::vector<double> times;
    if (times_text)
        times = parse_list(*times_text, "--times");
    else
        times = {config.t_obs / 2, config.t_obs, config.s_target};
    const auto report = moment_check(config.model, config.jumps(), times, config.n,
                                     config.master_seed, config.z_threshold, config.workers);
    json out = to_json(report);
    out["jumps"] = std::string(to_string(config.jump_kind));
    std::cout << out.dump(2) << '\n';
    return report.pass() ? kExitOk : kExitVerifyFailed;
}

int cmd_sweep(const RunConfig& config, int figure, std::optional<double> gamma_min,
              std::optional<double> gamma_max, std::optional<double> step,
              const std::string& format) {
    const auto h = config.horizon();
    double lo = 0.05, hi = 5.0, dg = 0.05;
    if (figure == 2) {
        lo = 5.15;
        hi = 20.0;
        dg = 0.15;
    } else if (figure != 1) {
        throw ValidationError("--figure", "must be 1 or 2");
    }
    if (gamma_min) lo = *gamma_min;
    if (gamma_max) hi = *gamma_max;
    if (step) dg = *step;
    if (!(dg > 0.0)) throw ValidationError("--step", "must be > 0");
    if (!(lo > 0.0)) throw ValidationError("--gamma-min", "must be > 0");
    if (!(hi > lo)) throw ValidationError("--gamma-max", "must exceed --gamma-min");

    const auto table = gamma_sweep(h, lo, hi, dg);
    if (format != "csv" && format != "svg") throw ValidationError("--format", "sweep writes csv or svg");
    const auto fmt = format == "svg" ? FigureFormat::Svg : FigureFormat::Csv;
    const auto name = sweep_file_name(table, fmt);
    write_file(config, name, emit_figure(table, fmt));

    json out;
    out["file"] = (fs::path(config.output_dir) / name).string();
    out["rows"] = table.rows.size();
    out["gamma_min"] = table.rows.front().gamma;
    out["gamma_max"] = table.rows.back().gamma;
    out["crossing_point"] = crossing_point(h);
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Forecasts of returns under a jump-augmented Black-Scholes model"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    Overrides ov;
    std::string format = "json";
    app.add_option_function<std::string>(
           "--config", [&ov](const std::string& p) { ov.config_path = p; },
           "key=value configuration file")
        ->type_name("PATH");
    add_override(app, ov, "--workers", "run.workers", "Monte Carlo worker threads (0 = all cores)");
    add_override(app, ov, "--seed", "run.seed", "master seed (u64)");
    add_override(app, ov, "--n", "run.n", "Monte Carlo sample count");
    add_override(app, ov, "--out", "run.output_dir", "output directory");
    add_override(app, ov, "--z-threshold", "run.z_threshold", "pass band for |z|");
    for (const auto& key : RunConfig::keys()) {
        if (key.rfind("run.", 0) == 0) continue;
        add_override(app, ov, "--" + std::string(key), std::string(key),
                     "override " + std::string(key));
    }
    app.add_option("--format", format, "csv | json | svg")->check(CLI::IsMember({"csv", "json", "svg"}));

    auto* derive_cmd = app.add_subcommand("derive", "derived parameters and critical relation as JSON");
    auto* mse_cmd = app.add_subcommand("mse", "closed-form MSE and relative performance table");

    auto* forecast_cmd = app.add_subcommand("forecast", "all four forecasts for an observed p_T");
    double p_t = 0.0;
    forecast_cmd->add_option("--p-T", p_t, "observed return at T")->required();

    auto* simulate_cmd = app.add_subcommand("simulate", "simulate return paths to CSV");
    std::size_t paths = 1;
    std::size_t steps = 100;
    std::optional<std::string> grid_text;
    bool pairs = false;
    simulate_cmd->add_option("--paths", paths, "number of paths");
    simulate_cmd->add_option("--steps", steps, "uniform grid intervals on [0, S]");
    simulate_cmd->add_option("--grid", grid_text, "explicit comma-separated grid starting at 0");
    simulate_cmd->add_flag("--pairs", pairs, "also write n terminal pairs to pairs.csv");

    auto* verify_cmd = app.add_subcommand("verify", "Monte Carlo check of every closed-form MSE");
    bool corrupt = false;
    verify_cmd->add_flag("--corrupt-theory", corrupt, "self-test: inflate theory by 10%");

    auto* moments_cmd = app.add_subcommand("moments", "Monte Carlo check of first and second moments");
    std::optional<std::string> times_text;
    moments_cmd->add_option("--times", times_text, "comma-separated positive times");

    auto* sweep_cmd = app.add_subcommand("sweep", "relative performance against relative volatility");
    int figure = 1;
    std::optional<double> gamma_min, gamma_max, step;
    sweep_cmd->add_option("--figure", figure, "preset grid: 1 = (0,5] step 0.05, 2 = (5,20] step 0.15");
    sweep_cmd->add_option("--gamma-min", gamma_min, "first gamma");
    sweep_cmd->add_option("--gamma-max", gamma_max, "last gamma");
    sweep_cmd->add_option("--step", step, "gamma step");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        const RunConfig config = load_config(ov);
        if (derive_cmd->parsed()) return cmd_derive(config);
        if (mse_cmd->parsed()) return cmd_mse(config, format);
        if (forecast_cmd->parsed()) return cmd_forecast(config, p_t, format);
        if (simulate_cmd->parsed()) return cmd_simulate(config, paths, steps, grid_text, pairs);
        if (verify_cmd->parsed()) return cmd_verify(config, corrupt);
        if (moments_cmd->parsed()) return cmd_moments(config, times_text);
        if (sweep_cmd->parsed())
            return cmd_sweep(config, figure, gamma_min, gamma_max, step,
                             format == "json" ? "csv" : format);
    } catch (const InsufficientSampleError& e) {
        std::cerr << "insufficient sample: " << e.what() << '\n';
        return kExitInsufficient;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}
