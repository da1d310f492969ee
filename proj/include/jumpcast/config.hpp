#pragma once

// Run configuration as flat `key = value` text with dotted keys:
//
//     # comment
//     model.alpha = 0.05
//     horizon.T = 6
//
// Later assignments override earlier ones, which is how command-line flags
// take precedence over a config file.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jumpcast/error.hpp"
#include "jumpcast/format.hpp"
#include "jumpcast/model.hpp"
#include "jumpcast/montecarlo.hpp"
#include "jumpcast/simulation.hpp"

namespace jumpcast {

struct RunConfig {
    ModelParams model{0.05, 0.2, 1.0, 0.01, 0.04, 100.0};
    JumpKind jump_kind = JumpKind::Gaussian;
    double t_obs = 6.0;
    double s_target = 9.0;
    std::size_t n = 100'000;
    std::uint64_t master_seed = 20260101;
    std::string output_dir = ".";
    double z_threshold = kDefaultZThreshold;
    unsigned workers = 0;  ///< 0 = hardware concurrency

    [[nodiscard]] Horizon horizon() const { return {t_obs, s_target}; }
    [[nodiscard]] JumpSpec jumps() const { return JumpSpec::for_model(jump_kind, model); }

    void validate() const {
        model.validate();
        (void)horizon();
        (void)jumps();
        if (!std::isfinite(z_threshold) || z_threshold <= 0.0)
            throw ValidationError("run.z_threshold", "must be finite and > 0");
        if (output_dir.empty()) throw ValidationError("run.output_dir", "must not be empty");
    }

    /// Keys accepted by set().
    static const std::vector<std::string_view>& keys() {
        static const std::vector<std::string_view> k{
            "model.alpha", "model.sigma",  "model.lambda",    "model.nu",
            "model.tau2",  "model.p0",     "jumps.kind",      "horizon.T",
            "horizon.S",   "run.n",        "run.seed",        "run.output_dir",
            "run.z_threshold", "run.workers"};
        return k;
    }

    void set(std::string_view key, std::string_view value) {
        const std::string k(key);
        auto real = [&] {
            const auto v = parse_double(value);
            if (!v) throw ValidationError(k, "not a number: '" + std::string(value) + "'");
            return *v;
        };
        auto uint = [&]() -> std::uint64_t {
            std::uint64_t v = 0;
            const auto* first = value.data();
            const auto* last = value.data() + value.size();
            const auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last || value.empty())
                throw ValidationError(k, "not an unsigned integer: '" + std::string(value) + "'");
            return v;
        };

        if (key == "model.alpha") model.alpha = real();
        else if (key == "model.sigma") model.sigma = real();
        else if (key == "model.lambda") model.lambda = real();
        else if (key == "model.nu") model.nu = real();
        else if (key == "model.tau2") model.tau2 = real();
        else if (key == "model.p0") model.p0 = real();
        else if (key == "jumps.kind") {
            const auto kind = parse_jump_kind(value);
            if (!kind) throw ValidationError(k, "expected gaussian, constant or two_point");
            jump_kind = *kind;
        }
        else if (key == "horizon.T") t_obs = real();
        else if (key == "horizon.S") s_target = real();
        else if (key == "run.n") n = static_cast<std::size_t>(uint());
        else if (key == "run.seed") master_seed = uint();
        else if (key == "run.output_dir") output_dir = std::string(value);
        else if (key == "run.z_threshold") z_threshold = real();
        else if (key == "run.workers") workers = static_cast<unsigned>(uint());
        else throw ValidationError(k, "unknown configuration key");
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
    constexpr std::string_view ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

} // namespace detail

/// Applies every `key = value` line of `text` to `config`.
inline void apply_config_text(RunConfig& config, std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError("config", "line " + std::to_string(line_no) + ": expected key=value");
        config.set(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
}

inline RunConfig parse_config_text(std::string_view text) {
    RunConfig config;
    apply_config_text(config, text);
    return config;
}

} // namespace jumpcast
