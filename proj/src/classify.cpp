#include "zetalaw/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "zetalaw/errors.hpp"

namespace zetalaw {

namespace {

constexpr double kRelativeFloor = 1e-12;

void require_invertible(const EigenSpectrum& spectrum, double ridge) {
    if (spectrum.dimension() == 0) throw DomainError("empty covariance");
    const double top = spectrum.values(0) + ridge;
    const double bottom = spectrum.values(spectrum.dimension() - 1) + ridge;
    if (!(bottom > kRelativeFloor * top)) {
        std::ostringstream msg;
        msg << "covariance is singular or ill-conditioned: smallest eigenvalue " << spectrum.values(spectrum.dimension() - 1)
            << " (+ ridge " << ridge << ") against largest " << spectrum.values(0);
        throw ConditioningError(msg.str(), spectrum.values(spectrum.dimension() - 1));
    }
}

}  // namespace

Eigen::MatrixXd pooled_covariance(const Eigen::MatrixXd& controls, const Eigen::MatrixXd& cases) {
    if (controls.cols() != cases.cols()) throw ShapeError("pooled_covariance: class feature counts differ");
    const auto n0 = controls.rows(), n1 = cases.rows();
    if (n0 < 2 || n1 < 2) throw DomainError("pooled_covariance: each class needs at least two rows");
    return (static_cast<double>(n0 - 1) * sample_covariance(controls) +
            static_cast<double>(n1 - 1) * sample_covariance(cases)) /
           static_cast<double>(n0 + n1 - 2);
}

double mahalanobis_distance_sq(const Eigen::VectorXd& d, const EigenSpectrum& spectrum, double ridge) {
    if (d.size() != spectrum.dimension()) throw ShapeError("mahalanobis_distance_sq: dimension mismatch");
    if (!(ridge >= 0.0)) throw DomainError("ridge must be non-negative");
    require_invertible(spectrum, ridge);
    const Eigen::VectorXd alpha = spectrum.vectors.transpose() * d;
    return (alpha.array().square() / (spectrum.values.array() + ridge)).sum();
}

double mahalanobis_distance_sq(const Eigen::VectorXd& d, const Eigen::MatrixXd& sigma, double ridge) {
    return mahalanobis_distance_sq(d, eigendecompose(sigma), ridge);
}

Eigen::VectorXd whitened_solve(const Eigen::VectorXd& d, const EigenSpectrum& spectrum, double ridge) {
    if (d.size() != spectrum.dimension()) throw ShapeError("whitened_solve: dimension mismatch");
    if (!(ridge >= 0.0)) throw DomainError("ridge must be non-negative");
    require_invertible(spectrum, ridge);
    const Eigen::VectorXd alpha = spectrum.vectors.transpose() * d;
    return spectrum.vectors * (alpha.array() / (spectrum.values.array() + ridge)).matrix();
}

LdaModel fit_lda(const Eigen::MatrixXd& cases, const Eigen::MatrixXd& controls, double ridge) {
    if (!(ridge >= 0.0)) throw DomainError("fit_lda: ridge must be non-negative");
    LdaModel model;
    model.sigma = pooled_covariance(controls, cases);
    model.mean0 = controls.colwise().mean();
    model.mean1 = cases.colwise().mean();
    model.ridge = ridge;
    model.spectrum = eigendecompose(model.sigma);
    model.direction = whitened_solve(model.mean1 - model.mean0, model.spectrum, ridge);
    return model;
}

ContrastDecomposition contrast_decomposition(const Eigen::VectorXd& d, const EigenSpectrum& spectrum, double ridge,
                                             bool truncate) {
    if (d.size() != spectrum.dimension()) throw ShapeError("contrast_decomposition: dimension mismatch");
    if (!(ridge >= 0.0)) throw DomainError("ridge must be non-negative");
    const Eigen::Index p = spectrum.dimension();
    const Eigen::VectorXd alpha = spectrum.vectors.transpose() * d;
    const double top = p ? spectrum.values(0) + ridge : 0.0;

    const double negligible = 1e-10 * d.norm();
    Eigen::Index kept = p;
    Eigen::VectorXd energies = Eigen::VectorXd::Zero(p);
    for (Eigen::Index k = 0; k < p; ++k) {
        const double lambda = spectrum.values(k) + ridge;
        if (lambda > kRelativeFloor * top) {
            energies(k) = alpha(k) * alpha(k) / lambda;
            continue;
        }
        if (truncate) {
            kept = k;
            break;
        }
        if (std::abs(alpha(k)) > negligible) {
            std::ostringstream msg;
            msg << "contrast_decomposition: contrast has projection " << alpha(k) << " on mode " << k + 1
                << " whose eigenvalue is " << spectrum.values(k);
            throw ConditioningError(msg.str(), spectrum.values(k));
        }
    }

    ContrastDecomposition out;
    out.alphas = alpha.head(kept);
    out.energies = energies.head(kept);
    out.cumulative.resize(kept);
    double running = 0.0;
    for (Eigen::Index k = 0; k < kept; ++k) {
        running += out.energies(k);
        out.cumulative(k) = running;
    }
    out.truncated_modes = p - kept;
    return out;
}

double abnormality_score(const Eigen::VectorXd& x, const Eigen::VectorXd& mean0, const Eigen::MatrixXd& sigma,
                         double ridge) {
    if (x.size() != mean0.size()) throw ShapeError("abnormality_score: dimension mismatch");
    return mahalanobis_distance_sq(x - mean0, sigma, ridge);
}

double empirical_auc(std::span<const double> control_scores, std::span<const double> case_scores) {
    if (control_scores.empty() || case_scores.empty()) throw DomainError("empirical_auc: empty score list");
    struct Item {
        double score;
        bool is_case;
    };
    std::vector<Item> items;
    items.reserve(control_scores.size() + case_scores.size());
    for (double s : control_scores) items.push_back({s, false});
    for (double s : case_scores) items.push_back({s, true});
    for (const auto& it : items)
        if (std::isnan(it.score)) throw DataError("empirical_auc: NaN score");
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.score < b.score; });

    // Twice the case rank sum, so midranks stay integral.
    long long twice_rank_sum = 0;
    std::size_t i = 0;
    while (i < items.size()) {
        std::size_t j = i;
        while (j < items.size() && items[j].score == items[i].score) ++j;
        // Ranks i+1..j share the midrank (i + 1 + j) / 2.
        const long long twice_mid = static_cast<long long>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k)
            if (items[k].is_case) twice_rank_sum += twice_mid;
        i = j;
    }
    const auto n1 = static_cast<long long>(case_scores.size());
    const auto n0 = static_cast<long long>(control_scores.size());
    // 2U = 2 R1 - n1 (n1 + 1) counts each win twice and each tie once.
    const long long twice_u = twice_rank_sum - n1 * (n1 + 1);
    return 0.5 * static_cast<double>(twice_u) / (static_cast<double>(n1) * static_cast<double>(n0));
}

}  // namespace zetalaw
