#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unmix/evaluation.hpp"
#include "unmix/scene.hpp"

namespace unmix {

nlohmann::json match_report_to_json(const MatchReport& report);
MatchReport match_report_from_json(const nlohmann::json& j, bool strict = true);

nlohmann::json scene_config_to_json(const SceneConfig& config);
SceneConfig scene_config_from_json(const nlohmann::json& j, bool strict = true);

struct TraceSummary {
    double first = 0.0;
    double last = 0.0;
    int length = 0;
};

/// Machine-readable record of one unmixing run. Serializes losslessly: for a
/// report r, from_json(to_json(r)) reproduces every field bit-for-bit.
struct RunReport {
    std::string algorithm;
    nlohmann::json algorithm_config = nlohmann::json::object();
    nlohmann::json scene;          // scene config echo, or null when unknown
    std::uint64_t seed = 0;
    int n_endmembers = 0;
    double wall_time_ms = 0.0;
    std::optional<MatchReport> match; // present when ground truth was supplied
    TraceSummary trace;
    bool stalled = false;
    nlohmann::json diagnostics = nlohmann::json::object();

    nlohmann::json to_json() const;
    /// strict = true rejects unknown keys and missing required keys.
    static RunReport from_json(const nlohmann::json& j, bool strict = true);
};

} // namespace unmix
