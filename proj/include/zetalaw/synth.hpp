#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "zetalaw/rng.hpp"
#include "zetalaw/zeta_core.hpp"

namespace zetalaw {

/// Gaussian two-class model with a prescribed covariance spectrum and contrast.
///
/// Eigenvalues are k^-gamma; the contrast has coordinates alpha_k in the basis
/// with alpha_k^2 / lambda_k = c_d k^-beta, so the population Mahalanobis
/// signal is c_d H_p^(beta).
struct GroundTruthModel {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd basis;  ///< columns are eigenvectors
    Eigen::VectorXd alphas;
    Eigen::VectorXd contrast;  ///< basis * alphas
    ZetaLawParams params;

    Eigen::Index dimension() const { return eigenvalues.size(); }
    Eigen::MatrixXd covariance() const;
    double population_delta_sq() const;
};

/// Rows with integer class labels (0 = control, 1 = case).
struct LabeledDataset {
    Eigen::MatrixXd features;
    std::vector<int> labels;

    Eigen::Index size() const { return features.rows(); }
    Eigen::Index count(int label) const;
    Eigen::MatrixXd rows_with(int label) const;
    Eigen::MatrixXd rows(std::span<const std::size_t> index) const;
};

struct ModalitySpec {
    int dimension = 1;
    double noise_scale = 1.0;
    double loading_scale = 1.0;
};

/// Paired modalities driven by a shared Gaussian latent of rank r.
struct MultimodalDataset {
    std::vector<Eigen::MatrixXd> modalities;
    std::vector<Eigen::MatrixXd> loadings;  ///< p_m x r, orthonormal columns
    std::vector<ModalitySpec> specs;
    int shared_rank = 0;

    /// Population canonical correlation of modalities a and b along each
    /// shared direction: l_a l_b / sqrt((l_a^2 + s_a^2)(l_b^2 + s_b^2)).
    double population_correlation(std::size_t a, std::size_t b) const;
};

/// Haar-distributed orthogonal matrix from the QR factorization of a Gaussian matrix.
Eigen::MatrixXd haar_rotation(Eigen::Index p, Rng& rng);

/// p x r matrix with orthonormal columns (the first r columns of a Haar rotation).
Eigen::MatrixXd random_orthonormal_columns(Eigen::Index p, Eigen::Index r, Rng& rng);

GroundTruthModel build_ground_truth(int p, const ZetaLawParams& params, bool rotate, std::uint64_t seed);

/// n0 controls ~ N(0, Sigma) followed by n1 cases ~ N(d, Sigma).
///
/// Rows are generated in fixed-size blocks, each with its own derived
/// sub-seed, so the output depends only on (model, n0, n1, seed).
LabeledDataset sample_two_class(const GroundTruthModel& model, int n0, int n1, std::uint64_t seed);

/// Modality m = z W_m^T loading_m + noise_m * eps, z ~ N(0, I_r).
MultimodalDataset sample_multimodal(int shared_rank, std::span<const ModalitySpec> specs, int n, std::uint64_t seed);

}  // namespace zetalaw
