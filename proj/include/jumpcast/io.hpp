#pragma once

// CSV and JSON encodings of library results.  Reals are written in their
// shortest round-trip decimal form so reruns are byte-identical.

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "jumpcast/format.hpp"
#include "jumpcast/forecasts.hpp"
#include "jumpcast/model.hpp"
#include "jumpcast/montecarlo.hpp"
#include "jumpcast/simulation.hpp"

namespace jumpcast {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// CSV

inline std::string path_to_csv(const PathGrid& path) {
    std::string out = "time,return\n";
    for (std::size_t i = 0; i < path.times.size(); ++i)
        out += format_double(path.times[i]) + ',' + format_double(path.returns[i]) + '\n';
    return out;
}

inline std::string pairs_to_csv(std::span<const TerminalPair> pairs) {
    std::string out = "seed_index,p_T,p_S\n";
    for (const auto& p : pairs)
        out += std::to_string(p.index) + ',' + format_double(p.p_t_obs) + ',' +
               format_double(p.p_s_target) + '\n';
    return out;
}

inline std::string mse_to_csv(std::span<const MseBreakdown> rows) {
    std::string out = "kind,mse,delta\n";
    for (const auto& r : rows)
        out += std::string(to_string(r.kind)) + ',' + format_double(r.mse) + ',' +
               format_double(r.relative_performance) + '\n';
    return out;
}

inline std::string reports_to_csv(std::span<const VerificationReport> reports) {
    std::string out = "kind,theory,empirical,stderr,z,pass\n";
    for (const auto& r : reports)
        out += std::string(to_string(r.kind)) + ',' + format_double(r.theoretical) + ',' +
               format_double(r.empirical.mean_sq_err) + ',' +
               format_double(r.empirical.std_error) + ',' + format_double(r.z_score) + ',' +
               (r.pass ? "true" : "false") + '\n';
    return out;
}

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const DerivedParams& d) {
    json j;
    j["beta"] = d.beta;
    j["mu"] = d.mu;
    j["gamma"] = d.gamma ? json(*d.gamma) : json(nullptr);
    return j;
}

inline json to_json(const CriticalVerdict& v) {
    json j;
    j["relation"] = std::string(to_string(v.relation));
    j["critical_time"] = v.critical_time;
    j["critical_volatility"] = v.critical_volatility;
    j["near_zero_beta"] = v.near_zero_beta;
    return j;
}

inline json to_json(const MseBreakdown& b) {
    json j;
    j["kind"] = std::string(to_string(b.kind));
    j["mse"] = b.mse;
    j["delta"] = b.relative_performance;
    return j;
}

inline json to_json(const MseEstimate& e) {
    json j;
    j["kind"] = std::string(to_string(e.kind));
    j["mean_sq_err"] = e.mean_sq_err;
    j["std_error"] = e.std_error;
    j["n"] = e.n;
    j["master_seed"] = e.master_seed;
    return j;
}

inline json to_json(const VerificationReport& r) {
    json j;
    j["kind"] = std::string(to_string(r.kind));
    j["theoretical"] = r.theoretical;
    j["empirical"] = to_json(r.empirical);
    j["z_score"] = r.z_score;
    j["pass"] = r.pass;
    return j;
}

inline json to_json(const MomentReport& report) {
    json cells = json::array();
    for (const auto& c : report.cells) {
        json j;
        j["moment"] = c.kind == MomentKind::Mean ? "mean" : "second_moment";
        j["s"] = c.s;
        j["t"] = c.t;
        j["theoretical"] = c.theoretical;
        j["sample"] = c.sample;
        j["std_error"] = c.std_error;
        j["z_score"] = c.z_score;
        j["pass"] = c.pass;
        cells.push_back(std::move(j));
    }
    json j;
    j["n"] = report.n;
    j["master_seed"] = report.master_seed;
    j["pass"] = report.pass();
    j["cells"] = std::move(cells);
    return j;
}

} // namespace jumpcast
