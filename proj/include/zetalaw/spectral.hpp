#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>

namespace zetalaw {

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
///
/// Eigenvectors are signed so that their largest-magnitude component is
/// positive. Eigenvalues within -1e-10 * max(1, lambda_1) of zero are clamped
/// to zero; an indefinite input keeps its genuinely negative eigenvalues.
struct EigenSpectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;

    Eigen::Index dimension() const { return values.size(); }

    /// Spectral gaps lambda_k - lambda_{k+1}, length p - 1.
    Eigen::VectorXd gaps() const;

    /// Spectrum of a diagonal operator in the standard basis; values must be descending.
    static EigenSpectrum diagonal(const Eigen::VectorXd& values);
};

/// Unbiased sample covariance (n - 1 denominator) of the rows of `data`.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& data);

/// Symmetric eigendecomposition; input is symmetrized as (A + A^T) / 2.
EigenSpectrum eigendecompose(const Eigen::MatrixXd& sigma);

/// tr(Sigma) / ||Sigma||_op, in [1, p].
double effective_rank(const EigenSpectrum& spectrum);

/// Sub-Gaussian covariance concentration bound
/// c ||Sigma|| [sqrt((r_eff + log(1/delta)) / n) + (r_eff + log(1/delta)) / n].
double operator_error_bound(const EigenSpectrum& spectrum, std::int64_t n, double delta, double c = 1.0);

/// Number of leading modes whose two-sided spectral gap exceeds error / safety.
///
/// Counting stops at the first mode that fails, so a tied block ends the count.
int identifiable_mode_count(const EigenSpectrum& spectrum, double error, double safety = 0.5);

struct PowerLawFit {
    double slope = 0.0;  ///< decay exponent: series_k ~ exp(log_intercept) k^-slope
    double log_intercept = 0.0;
    double r_squared = 0.0;
    int k_min = 1;
    int k_max = 1;
};

/// Least-squares fit of log(series_k) on -log(k) over k in [k_min, k_max] (1-based).
///
/// With `weights` (indexed like `series`) the fit is weighted least squares
/// and r_squared is the weighted coefficient of determination.
PowerLawFit fit_power_law(std::span<const double> series, int k_min, int k_max,
                          std::span<const double> weights = {});

/// Largest singular value of a symmetric matrix.
double operator_norm(const Eigen::MatrixXd& symmetric);

/// sin of the angle between two unit vectors, ignoring sign.
double sin_theta(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

}  // namespace zetalaw
