#pragma once

#include <cstdint>
#include <limits>

#include "unmix/rng.hpp"
#include "unmix/types.hpp"

namespace unmix {

/// Observed hyperspectral image: one column of reflectances per pixel.
struct SpectralImage {
    Matrix data; // bands x pixels

    Index bands() const { return data.rows(); }
    Index pixels() const { return data.cols(); }

    /// Throws std::invalid_argument on empty or non-finite data.
    void validate() const;
};

/// What the generator knows and the estimators are scored against.
struct GroundTruth {
    Matrix mixing;     // bands x endmembers (A0)
    Matrix abundances; // endmembers x pixels (S0), columns on the unit simplex
    double noise_sigma = 0.0;

    void validate() const;
};

enum class EndmemberSource {
    RandomUniform, // i.i.d. uniform on [0,1]^bands, redrawn if ill-conditioned
    Provided,      // use SceneConfig::endmembers as-is
};

struct SceneConfig {
    int n_endmembers = 3;
    int n_bands = 50;
    int n_pixels = 1000;
    double snr_db = std::numeric_limits<double>::infinity();
    Vector dirichlet_alpha; // empty -> all ones
    double max_purity = 1.0;
    bool include_pure_pixels = false;
    std::uint64_t seed = 0;
    EndmemberSource endmember_source = EndmemberSource::RandomUniform;
    Matrix endmembers; // consulted only when endmember_source == Provided
    int purity_attempt_cap = 1000;

    void validate() const;
    /// dirichlet_alpha, defaulted to ones when left empty.
    Vector effective_alpha() const;
};

struct Scene {
    SpectralImage image;
    GroundTruth truth;
};

/// One draw from Dirichlet(alpha) via the gamma-ratio construction.
Vector sample_dirichlet(const Vector& alpha, Rng& rng);

/// Noise scale for a target SNR: sigma^2 = ||signal||_F^2 / (M*T*10^(snr/10)).
/// +inf dB maps to sigma = 0.
double sigma_from_snr(const Matrix& signal, double snr_db);

/// Synthesizes image = A0*S0 + noise under the config. Bit-identical output
/// for identical configs (the seed drives a private stream).
Scene generate_scene(const SceneConfig& config);

} // namespace unmix
