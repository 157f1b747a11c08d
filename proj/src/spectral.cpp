#include "zetalaw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetalaw/errors.hpp"

namespace zetalaw {

namespace {

void orient(Eigen::MatrixXd& vectors) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        Eigen::Index arg = 0;
        vectors.col(j).cwiseAbs().maxCoeff(&arg);
        if (vectors(arg, j) < 0.0) vectors.col(j) *= -1.0;
    }
}

}  // namespace

Eigen::VectorXd EigenSpectrum::gaps() const {
    const Eigen::Index p = values.size();
    if (p < 2) return Eigen::VectorXd(0);
    return values.head(p - 1) - values.tail(p - 1);
}

EigenSpectrum EigenSpectrum::diagonal(const Eigen::VectorXd& values) {
    for (Eigen::Index i = 1; i < values.size(); ++i)
        if (values(i) > values(i - 1)) throw DomainError("EigenSpectrum::diagonal: values must be descending");
    return {values, Eigen::MatrixXd::Identity(values.size(), values.size())};
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& data) {
    if (data.rows() < 2) throw DomainError("sample_covariance: need at least two rows");
    if (!data.allFinite()) throw DataError("sample_covariance: non-finite entries");
    const Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(data.rows() - 1);
    return 0.5 * (cov + cov.transpose());
}

EigenSpectrum eigendecompose(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != sigma.cols()) throw DomainError("eigendecompose: matrix is not square");
    if (!sigma.allFinite()) throw DataError("eigendecompose: non-finite entries");
    const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw DomainError("eigendecompose: matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (sigma + sigma.transpose()));
    if (solver.info() != Eigen::Success) throw ConditioningError("eigendecompose: solver did not converge", 0.0);

    EigenSpectrum out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    const double floor = -1e-10 * std::max(1.0, out.values.size() ? std::abs(out.values(0)) : 0.0);
    for (auto& v : out.values)
        if (v < 0.0 && v >= floor) v = 0.0;
    orient(out.vectors);
    return out;
}

double effective_rank(const EigenSpectrum& spectrum) {
    if (spectrum.dimension() == 0 || !(spectrum.values(0) > 0.0))
        throw DomainError("effective_rank: spectrum has no positive eigenvalue");
    return spectrum.values.sum() / spectrum.values(0);
}

double operator_error_bound(const EigenSpectrum& spectrum, std::int64_t n, double delta, double c) {
    if (n < 1) throw DomainError("operator_error_bound: n must be at least 1");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("operator_error_bound: delta must lie in (0, 1)");
    if (!(c > 0.0)) throw DomainError("operator_error_bound: c must be positive");
    const double r = effective_rank(spectrum) + std::log(1.0 / delta);
    const double ratio = r / static_cast<double>(n);
    return c * spectrum.values(0) * (std::sqrt(ratio) + ratio);
}

int identifiable_mode_count(const EigenSpectrum& spectrum, double error, double safety) {
    if (!(error >= 0.0)) throw DomainError("identifiable_mode_count: error must be non-negative");
    if (!(safety > 0.0 && safety <= 1.0)) throw DomainError("identifiable_mode_count: safety must lie in (0, 1]");
    const auto& lambda = spectrum.values;
    const Eigen::Index p = lambda.size();
    if (p < 2) return 0;
    const double threshold = error / safety;
    int count = 0;
    for (Eigen::Index k = 0; k < p; ++k) {
        double gap = std::numeric_limits<double>::infinity();
        if (k + 1 < p) gap = std::min(gap, lambda(k) - lambda(k + 1));
        if (k > 0) gap = std::min(gap, lambda(k - 1) - lambda(k));
        if (!(gap > threshold)) break;
        ++count;
    }
    return count;
}

PowerLawFit fit_power_law(std::span<const double> series, int k_min, int k_max, std::span<const double> weights) {
    if (k_min < 1 || k_max > static_cast<int>(series.size()) || k_max - k_min + 1 < 3)
        throw DomainError("fit_power_law: range must hold at least three points inside the series");
    if (!weights.empty() && weights.size() != series.size())
        throw ShapeError("fit_power_law: weights must match the series length");

    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        const double v = series[k - 1];
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("fit_power_law: non-positive value at k = " + std::to_string(k));
        const double w = weights.empty() ? 1.0 : weights[k - 1];
        if (!(w > 0.0)) throw DomainError("fit_power_law: weights must be positive");
        sw += w;
        sx += w * -std::log(static_cast<double>(k));
        sy += w * std::log(v);
    }
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        const double w = weights.empty() ? 1.0 : weights[k - 1];
        const double dx = -std::log(static_cast<double>(k)) - mx;
        const double dy = std::log(series[k - 1]) - my;
        sxx += w * dx * dx;
        sxy += w * dx * dy;
        syy += w * dy * dy;
    }
    PowerLawFit fit;
    fit.slope = sxy / sxx;
    fit.log_intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    fit.k_min = k_min;
    fit.k_max = k_max;
    return fit;
}

double operator_norm(const Eigen::MatrixXd& symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (symmetric + symmetric.transpose()),
                                                          Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double sin_theta(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    const Eigen::VectorXd a = u.normalized();
    const Eigen::VectorXd b = v.normalized();
    return std::min(1.0, (b - b.dot(a) * a).norm());
}

}  // namespace zetalaw
