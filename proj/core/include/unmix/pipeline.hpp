#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unmix/deca.hpp"
#include "unmix/geometry.hpp"
#include "unmix/scene.hpp"
#include "unmix/sisal.hpp"

namespace unmix {

enum class Algorithm { Vca, Sisal, Deca };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name); // throws std::invalid_argument

struct UnmixOptions {
    Algorithm algorithm = Algorithm::Vca;
    int n_endmembers = 3;
    std::uint64_t seed = 0;
    SisalConfig sisal;
    DecaConfig deca;
    int deca_components = 1;
};

struct UnmixOutcome {
    EndmemberSet endmembers;         // lifted back to band space
    std::vector<double> trace;       // objective (sisal) or log-likelihood (deca)
    bool stalled = false;
    nlohmann::json diagnostics;      // algorithm-specific extras
    nlohmann::json config_echo;      // the knobs that actually applied
};

/// load -> reduce -> algorithm -> lift. Deterministic given the seed.
UnmixOutcome run_unmix(const SpectralImage& image, const UnmixOptions& options);

} // namespace unmix
