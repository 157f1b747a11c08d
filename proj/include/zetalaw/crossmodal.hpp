#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zetalaw/spectral.hpp"

namespace zetalaw {

/// Singular spectrum of a raw or whitened cross-covariance operator.
struct CrossModalSpectrum {
    Eigen::VectorXd singular_values;   ///< descending, length min(p, q)
    Eigen::MatrixXd left_directions;   ///< p x min(p, q), orthonormal columns
    Eigen::MatrixXd right_directions;  ///< q x min(p, q), orthonormal columns
    bool whitened = false;
    double reg_x = 0.0;  ///< ridge added to Sigma_xx before whitening
    double reg_y = 0.0;
    /// Power-law decay of the singular values over the numerically nonzero
    /// ones; empty when fewer than three are available.
    std::optional<PowerLawFit> decay;
};

/// (1 / (n - 1)) X_c^T Y_c with column-centered X_c and Y_c.
Eigen::MatrixXd cross_covariance(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// SVD of the raw cross-covariance.
CrossModalSpectrum cross_spectrum(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// SVD of M = (S_xx + r I)^-1/2 S_xy (S_yy + r I)^-1/2.
///
/// Without `reg` each modality gets r = 1e-6 lambda_1 of its own covariance.
/// An explicit reg of zero requires both covariances to be numerically full
/// rank and otherwise throws ConditioningError.
CrossModalSpectrum whitened_operator(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                     std::optional<double> reg = std::nullopt);

struct CcaResult {
    Eigen::VectorXd correlations;
    Eigen::MatrixXd x_directions;  ///< p x k, columns a_k with a_k^T S_xx a_k ~ 1
    Eigen::MatrixXd y_directions;  ///< q x k
};

/// Top-k canonical correlations with directions mapped back through the whitening.
CcaResult cca(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, int k, std::optional<double> reg = std::nullopt);

struct KernelSpec {
    enum class Kind { Linear, Rbf };
    Kind kind = Kind::Linear;
    /// RBF bandwidth sigma in exp(-|a - b|^2 / (2 sigma^2)); median heuristic when empty.
    std::optional<double> bandwidth;

    static KernelSpec linear() { return {}; }
    static KernelSpec rbf(std::optional<double> bandwidth = std::nullopt) { return {Kind::Rbf, bandwidth}; }
    /// "linear", "rbf" or "rbf:<bandwidth>".
    static KernelSpec parse(const std::string& text);
    std::string name() const;
};

/// Median pairwise Euclidean distance over at most 1000 evenly strided rows.
///
/// Falls back to the median of the nonzero distances when more than half are
/// zero; throws DataError when every distance is zero.
double median_pairwise_distance(const Eigen::MatrixXd& x);

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& x, const KernelSpec& kernel);

/// Biased HSIC estimate trace(K H L H) / (n - 1)^2; needs n >= 3.
double hsic(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const KernelSpec& kernel_x,
            const KernelSpec& kernel_y);

/// Permutation p-value (1 + #{hsic_perm >= hsic_obs}) / (1 + n_perm).
///
/// Permutation i uses the sub-seed derive_seed(seed, {i}), so the result does
/// not depend on `threads`.
double hsic_permutation_test(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const KernelSpec& kernel_x,
                             const KernelSpec& kernel_y, int n_perm, std::uint64_t seed, int threads = 1);

/// Disease contrasts as columns of a p x D matrix.
struct DiseaseOperator {
    Eigen::MatrixXd contrasts;
    /// Nonzero-capable eigenvalues of D D^T, descending, length min(p, D);
    /// the remaining p - min(p, D) eigenvalues are exactly zero.
    Eigen::VectorXd gram_eigenvalues;

    static DiseaseOperator from_contrasts(const Eigen::MatrixXd& contrasts);
    /// Standardized effect sizes (mean_case - mean_control) / sd_control per feature.
    static DiseaseOperator from_groups(const Eigen::MatrixXd& controls, std::span<const Eigen::MatrixXd> cases);
};

/// Number of gram eigenvalues above rel_tol times the largest.
int disease_operator_rank(const DiseaseOperator& op, double rel_tol = 1e-6);

/// r / D: the fraction of single-disease sample size needed when D diseases share r directions.
double joint_sample_ratio(int r, int d_count);

struct HardestDisease {
    std::vector<double> per_disease;  ///< scale / E_d
    double required = 0.0;            ///< maximum over diseases
    std::size_t hardest = 0;          ///< index of the maximum
};

HardestDisease hardest_disease_sample_size(std::span<const double> energies, double scale);

}  // namespace zetalaw
