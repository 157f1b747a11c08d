#pragma once

#include <Eigen/Dense>
#include <span>

#include "zetalaw/spectral.hpp"

namespace zetalaw {

/// Two-class linear discriminant with optional ridge shift lambda_k -> lambda_k + ridge.
struct LdaModel {
    Eigen::VectorXd mean0;  ///< control mean
    Eigen::VectorXd mean1;  ///< case mean
    Eigen::MatrixXd sigma;  ///< pooled within-class covariance
    double ridge = 0.0;
    Eigen::VectorXd direction;  ///< solves (sigma + ridge I) w = mean1 - mean0
    EigenSpectrum spectrum;     ///< eigendecomposition of sigma

    double score(const Eigen::VectorXd& x) const { return direction.dot(x); }
    Eigen::VectorXd scores(const Eigen::MatrixXd& rows) const { return rows * direction; }
};

/// Per-mode view of a contrast d in an eigenbasis.
struct ContrastDecomposition {
    Eigen::VectorXd alphas;      ///< u_k^T d
    Eigen::VectorXd energies;    ///< alpha_k^2 / (lambda_k + ridge)
    Eigen::VectorXd cumulative;  ///< running sums of energies
    /// Trailing modes dropped because their eigenvalue was numerically zero.
    Eigen::Index truncated_modes = 0;

    double total() const { return cumulative.size() ? cumulative(cumulative.size() - 1) : 0.0; }
};

/// Homoscedastic pooled covariance ((n0-1) S0 + (n1-1) S1) / (n0 + n1 - 2).
Eigen::MatrixXd pooled_covariance(const Eigen::MatrixXd& controls, const Eigen::MatrixXd& cases);

/// d^T (Sigma + ridge I)^-1 d, evaluated mode by mode.
///
/// Throws ConditioningError when lambda_min + ridge <= 1e-12 (lambda_1 + ridge).
double mahalanobis_distance_sq(const Eigen::VectorXd& d, const EigenSpectrum& spectrum, double ridge = 0.0);
double mahalanobis_distance_sq(const Eigen::VectorXd& d, const Eigen::MatrixXd& sigma, double ridge = 0.0);

/// (Sigma + ridge I)^-1 d through the eigenbasis, with the same conditioning check.
Eigen::VectorXd whitened_solve(const Eigen::VectorXd& d, const EigenSpectrum& spectrum, double ridge = 0.0);

LdaModel fit_lda(const Eigen::MatrixXd& cases, const Eigen::MatrixXd& controls, double ridge = 0.0);

/// Projections and energies of d on each eigenmode.
///
/// A mode with lambda_k + ridge <= 1e-12 (lambda_1 + ridge) is rank-deficient:
/// it contributes zero energy if d has no projection on it and otherwise
/// throws ConditioningError. With `truncate` the decomposition instead stops
/// before the first such mode and records how many were dropped.
ContrastDecomposition contrast_decomposition(const Eigen::VectorXd& d, const EigenSpectrum& spectrum,
                                             double ridge = 0.0, bool truncate = false);

/// (x - mean0)^T (Sigma + ridge I)^-1 (x - mean0).
double abnormality_score(const Eigen::VectorXd& x, const Eigen::VectorXd& mean0, const Eigen::MatrixXd& sigma,
                         double ridge = 0.0);

/// Mann-Whitney AUC with midranks for ties, in O(n log n).
double empirical_auc(std::span<const double> control_scores, std::span<const double> case_scores);

}  // namespace zetalaw
