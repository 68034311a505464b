#include "unmix/scene.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "unmix/errors.hpp"

#include <Eigen/SVD>

namespace unmix {

void SpectralImage::validate() const {
    if (data.rows() < 1 || data.cols() < 1)
        throw std::invalid_argument("SpectralImage: empty matrix");
    if (!data.allFinite())
        throw std::invalid_argument("SpectralImage: non-finite entries");
}

void GroundTruth::validate() const {
    const Index n = mixing.cols();
    if (abundances.rows() != n)
        throw std::invalid_argument("GroundTruth: mixing/abundance shape mismatch");
    if (!(noise_sigma >= 0.0))
        throw std::invalid_argument("GroundTruth: negative noise sigma");
    for (Index t = 0; t < abundances.cols(); ++t) {
        if (abundances.col(t).minCoeff() < 0.0)
            throw std::invalid_argument("GroundTruth: negative abundance at pixel " + std::to_string(t));
        if (std::abs(abundances.col(t).sum() - 1.0) > 1e-12)
            throw std::invalid_argument("GroundTruth: abundance column " + std::to_string(t) + " does not sum to 1");
    }
    {
        Eigen::JacobiSVD<Matrix> svd(mixing);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-10 * sv(0))
            throw RankError("GroundTruth: mixing matrix is rank deficient");
    }
    {
        Eigen::BDCSVD<Matrix> svd(abundances);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-10 * sv(0))
            throw RankError("GroundTruth: abundance matrix is not full row rank");
    }
}

void SceneConfig::validate() const {
    if (n_endmembers < 2) throw std::invalid_argument("SceneConfig: need at least 2 endmembers");
    if (n_bands < n_endmembers) throw std::invalid_argument("SceneConfig: n_bands must be >= n_endmembers");
    if (n_pixels < n_endmembers) throw std::invalid_argument("SceneConfig: n_pixels must be >= n_endmembers");
    if (std::isnan(snr_db)) throw std::invalid_argument("SceneConfig: snr_db is NaN");
    const Vector alpha = effective_alpha();
    if (alpha.size() != n_endmembers)
        throw std::invalid_argument("SceneConfig: dirichlet_alpha length mismatch");
    if (alpha.minCoeff() <= 0.0)
        throw std::invalid_argument("SceneConfig: dirichlet_alpha must be positive");
    const double purity_floor = 1.0 / n_endmembers;
    if (!(max_purity > purity_floor) || !(max_purity <= 1.0))
        throw std::invalid_argument("SceneConfig: max_purity must lie in (1/N, 1]");
    if (purity_attempt_cap < 1)
        throw std::invalid_argument("SceneConfig: purity_attempt_cap must be positive");
    if (endmember_source == EndmemberSource::Provided) {
        if (endmembers.rows() != n_bands || endmembers.cols() != n_endmembers)
            throw std::invalid_argument("SceneConfig: provided endmember matrix has wrong shape");
        if (!endmembers.allFinite())
            throw std::invalid_argument("SceneConfig: provided endmember matrix is not finite");
    }
}

Vector SceneConfig::effective_alpha() const {
    if (dirichlet_alpha.size() == 0) return Vector::Ones(n_endmembers);
    return dirichlet_alpha;
}

Vector sample_dirichlet(const Vector& alpha, Rng& rng) {
    if (alpha.size() < 1 || alpha.minCoeff() <= 0.0)
        throw std::invalid_argument("sample_dirichlet: alpha must be positive");
    Vector draw(alpha.size());
    for (Index i = 0; i < alpha.size(); ++i) draw(i) = rng.gamma(alpha(i));
    const double total = draw.sum();
    if (total <= 0.0) {
        // All gammas underflowed (tiny alphas); fall back to the argmax corner.
        Index best = 0;
        alpha.maxCoeff(&best);
        draw.setZero();
        draw(best) = 1.0;
        return draw;
    }
    return draw / total;
}

double sigma_from_snr(const Matrix& signal, double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0.0) return 0.0;
    if (!std::isfinite(snr_db)) throw std::invalid_argument("sigma_from_snr: snr_db must be finite or +inf");
    const double energy = signal.squaredNorm();
    if (energy <= 0.0) throw std::invalid_argument("sigma_from_snr: zero signal with finite SNR");
    const double per_entry = energy / static_cast<double>(signal.rows() * signal.cols());
    return std::sqrt(per_entry / std::pow(10.0, snr_db / 10.0));
}

namespace {

Matrix draw_endmembers(const SceneConfig& config, Rng& rng) {
    if (config.endmember_source == EndmemberSource::Provided) {
        Eigen::JacobiSVD<Matrix> svd(config.endmembers);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-10 * sv(0))
            throw RankError("generate_scene: provided endmembers are rank deficient");
        return config.endmembers;
    }
    Matrix a(config.n_bands, config.n_endmembers);
    for (int attempt = 0; attempt < 100; ++attempt) {
        for (Index j = 0; j < a.cols(); ++j)
            for (Index i = 0; i < a.rows(); ++i) a(i, j) = rng.uniform();
        Eigen::JacobiSVD<Matrix> svd(a);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) > 1e-6 * sv(0)) return a;
    }
    throw RankError("generate_scene: could not draw a well-conditioned endmember matrix");
}

Vector draw_abundance_capped(const Vector& alpha, double max_purity, int cap, Rng& rng) {
    for (int attempt = 0; attempt < cap; ++attempt) {
        Vector s = sample_dirichlet(alpha, rng);
        if (s.maxCoeff() <= max_purity) return s;
    }
    throw PurityInfeasibleError("generate_scene: purity cap not met after " + std::to_string(cap) +
                                " attempts; max_purity is too tight for this alpha");
}

} // namespace

Scene generate_scene(const SceneConfig& config) {
    config.validate();
    Rng rng(derive_seed(config.seed, {hash_string("scene")}));

    const int n = config.n_endmembers;
    const int t = config.n_pixels;
    const Vector alpha = config.effective_alpha();

    Matrix mixing = draw_endmembers(config, rng);

    Matrix abundances(n, t);
    if (config.include_pure_pixels) {
        abundances.leftCols(n) = Matrix::Identity(n, n);
        for (Index j = n; j < t; ++j)
            abundances.col(j) = sample_dirichlet(alpha, rng);
        // Hide the pure pixels: Fisher-Yates over all columns.
        for (Index j = t - 1; j > 0; --j) {
            const Index k = static_cast<Index>(rng.below(static_cast<std::uint64_t>(j + 1)));
            if (k != j) abundances.col(j).swap(abundances.col(k));
        }
    } else {
        for (Index j = 0; j < t; ++j)
            abundances.col(j) = draw_abundance_capped(alpha, config.max_purity, config.purity_attempt_cap, rng);
    }

    const Matrix signal = mixing * abundances;
    const double sigma = sigma_from_snr(signal, config.snr_db);

    Scene scene;
    scene.truth.mixing = std::move(mixing);
    scene.truth.abundances = std::move(abundances);
    scene.truth.noise_sigma = sigma;
    if (sigma > 0.0) {
        Matrix noise(signal.rows(), signal.cols());
        for (Index j = 0; j < noise.cols(); ++j)
            for (Index i = 0; i < noise.rows(); ++i) noise(i, j) = sigma * rng.normal();
        scene.image.data = signal + noise;
    } else {
        scene.image.data = signal;
    }

    scene.image.validate();
    scene.truth.validate();
    return scene;
}

} // namespace unmix
