#include "unmix/report.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "unmix/errors.hpp"

namespace unmix {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::set<std::string>& required,
                  const std::set<std::string>& optional, const char* what) {
    if (!j.is_object()) throw IoError(std::string(what) + ": expected a JSON object");
    for (const auto& key : required)
        if (!j.contains(key)) throw IoError(std::string(what) + ": missing key '" + key + "'");
    for (const auto& item : j.items()) {
        if (!required.contains(item.key()) && !optional.contains(item.key()))
            throw IoError(std::string(what) + ": unknown key '" + item.key() + "'");
    }
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Vector vector_from_json(const json& j) {
    Vector v(static_cast<Index>(j.size()));
    Index i = 0;
    for (const auto& x : j) v(i++) = x.get<double>();
    return v;
}

} // namespace

json match_report_to_json(const MatchReport& report) {
    json j;
    j["permutation"] = report.permutation;
    j["per_endmember_sam"] = vector_to_json(report.per_endmember_sam);
    j["mean_sam"] = report.mean_sam;
    j["normalized_mse"] = report.normalized_mse;
    return j;
}

MatchReport match_report_from_json(const json& j, bool strict) {
    if (strict)
        require_keys(j, {"permutation", "per_endmember_sam", "mean_sam", "normalized_mse"}, {},
                     "MatchReport");
    MatchReport report;
    report.permutation = j.at("permutation").get<std::vector<int>>();
    report.per_endmember_sam = vector_from_json(j.at("per_endmember_sam"));
    report.mean_sam = j.at("mean_sam").get<double>();
    report.normalized_mse = j.at("normalized_mse").get<double>();
    return report;
}

json scene_config_to_json(const SceneConfig& config) {
    json j;
    j["n_endmembers"] = config.n_endmembers;
    j["n_bands"] = config.n_bands;
    j["n_pixels"] = config.n_pixels;
    if (std::isinf(config.snr_db))
        j["snr_db"] = "inf";
    else
        j["snr_db"] = config.snr_db;
    j["dirichlet_alpha"] = vector_to_json(config.effective_alpha());
    j["max_purity"] = config.max_purity;
    j["include_pure_pixels"] = config.include_pure_pixels;
    j["seed"] = config.seed;
    j["endmember_source"] =
        config.endmember_source == EndmemberSource::Provided ? "provided" : "random-uniform";
    j["purity_attempt_cap"] = config.purity_attempt_cap;
    return j;
}

SceneConfig scene_config_from_json(const json& j, bool strict) {
    if (strict)
        require_keys(j,
                     {"n_endmembers", "n_bands", "n_pixels", "snr_db", "dirichlet_alpha",
                      "max_purity", "include_pure_pixels", "seed", "endmember_source",
                      "purity_attempt_cap"},
                     {}, "SceneConfig");
    SceneConfig config;
    config.n_endmembers = j.at("n_endmembers").get<int>();
    config.n_bands = j.at("n_bands").get<int>();
    config.n_pixels = j.at("n_pixels").get<int>();
    if (j.at("snr_db").is_string())
        config.snr_db = std::numeric_limits<double>::infinity();
    else
        config.snr_db = j.at("snr_db").get<double>();
    config.dirichlet_alpha = vector_from_json(j.at("dirichlet_alpha"));
    config.max_purity = j.at("max_purity").get<double>();
    config.include_pure_pixels = j.at("include_pure_pixels").get<bool>();
    config.seed = j.at("seed").get<std::uint64_t>();
    config.endmember_source = j.at("endmember_source").get<std::string>() == "provided"
                                  ? EndmemberSource::Provided
                                  : EndmemberSource::RandomUniform;
    config.purity_attempt_cap = j.at("purity_attempt_cap").get<int>();
    return config;
}

json RunReport::to_json() const {
    json j;
    j["algorithm"] = algorithm;
    j["algorithm_config"] = algorithm_config;
    j["scene"] = scene.is_null() ? json(nullptr) : scene;
    j["seed"] = seed;
    j["n_endmembers"] = n_endmembers;
    j["wall_time_ms"] = wall_time_ms;
    j["match"] = match ? match_report_to_json(*match) : json(nullptr);
    j["trace"] = {{"first", trace.first}, {"last", trace.last}, {"length", trace.length}};
    j["stalled"] = stalled;
    j["diagnostics"] = diagnostics;
    return j;
}

RunReport RunReport::from_json(const json& j, bool strict) {
    if (strict) {
        require_keys(j,
                     {"algorithm", "algorithm_config", "scene", "seed", "n_endmembers",
                      "wall_time_ms", "match", "trace", "stalled", "diagnostics"},
                     {}, "RunReport");
        require_keys(j.at("trace"), {"first", "last", "length"}, {}, "RunReport.trace");
    }
    RunReport report;
    report.algorithm = j.at("algorithm").get<std::string>();
    report.algorithm_config = j.at("algorithm_config");
    report.scene = j.at("scene");
    report.seed = j.at("seed").get<std::uint64_t>();
    report.n_endmembers = j.at("n_endmembers").get<int>();
    report.wall_time_ms = j.at("wall_time_ms").get<double>();
    if (!j.at("match").is_null()) report.match = match_report_from_json(j.at("match"), strict);
    report.trace.first = j.at("trace").at("first").get<double>();
    report.trace.last = j.at("trace").at("last").get<double>();
    report.trace.length = j.at("trace").at("length").get<int>();
    report.stalled = j.at("stalled").get<bool>();
    report.diagnostics = j.at("diagnostics");
    return report;
}

} // namespace unmix
