#include "zetalaw/zeta_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zetalaw/errors.hpp"
#include "zetalaw/normal.hpp"

namespace zetalaw {

namespace {

// Largest N handed out by required_sample_size.
constexpr double kMaxSampleSize = 9.0e18;
// Upper bound on the incremental mode search.
constexpr std::int64_t kMaxModeSearch = 100'000'000;

}  // namespace

void ZetaLawParams::validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be non-negative");
    if (!(c_d >= 0.0) || !std::isfinite(c_d)) throw DomainError("c_d must be non-negative");
    if (!(k_scale > 0.0) || !std::isfinite(k_scale)) throw DomainError("k_scale must be positive");
}

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::Concentrated: return "concentrated";
        case Regime::Distributed: return "distributed";
        case Regime::Diffuse: return "diffuse";
    }
    return "unknown";
}

std::string_view to_string(Unreachable::Reason reason) {
    switch (reason) {
        case Unreachable::Reason::AboveAsymptote: return "above_asymptote";
        case Unreachable::Reason::ZeroSignal: return "zero_signal";
        case Unreachable::Reason::BeyondHorizon: return "beyond_horizon";
    }
    return "unknown";
}

double harmonic_partial_sum(double beta, std::int64_t k) {
    if (!(beta > 0.0)) throw DomainError("harmonic_partial_sum: beta must be positive");
    if (k < 1) throw DomainError("harmonic_partial_sum: k must be at least 1");
    double sum = 0.0;
    for (std::int64_t j = 1; j <= k; ++j) sum += std::pow(static_cast<double>(j), -beta);
    return sum;
}

double riemann_zeta(double beta, double tol) {
    if (!(beta > 1.0)) {
        throw DivergenceError("riemann_zeta: the series diverges for beta <= 1 (got " +
                              std::to_string(beta) + ")");
    }
    if (!(tol > 0.0)) throw DomainError("riemann_zeta: tol must be positive");
    const double wanted = std::ceil(std::pow(tol, -1.0 / (beta - 1.0)));
    const double m_real = std::clamp(std::isfinite(wanted) ? wanted : 1e6, 20.0, 1e6);
    const auto m = static_cast<std::int64_t>(m_real);

    // Smallest terms first.
    long double sum = 0.0L;
    for (std::int64_t k = m - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -beta);
    const long double ml = static_cast<long double>(m);
    sum += std::pow(ml, 1.0L - beta) / (beta - 1.0L) + 0.5L * std::pow(ml, -static_cast<long double>(beta));
    return static_cast<double>(sum);
}

double mode_growth_exponent(double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("gamma must be non-negative");
    return 1.0 / (2.0 * (gamma + 1.0));
}

std::int64_t identifiable_modes_with_exponent(std::int64_t n, double exponent, double k_scale) {
    if (n < 1) throw DomainError("identifiable_modes: sample size must be at least 1");
    if (!(k_scale > 0.0)) throw DomainError("identifiable_modes: k_scale must be positive");
    if (!(exponent >= 0.0)) throw DomainError("identifiable_modes: exponent must be non-negative");
    const double k = k_scale * std::pow(static_cast<double>(n), exponent);
    return std::max<std::int64_t>(1, std::llround(k));
}

std::int64_t identifiable_modes(std::int64_t n, double gamma, double k_scale) {
    return identifiable_modes_with_exponent(n, mode_growth_exponent(gamma), k_scale);
}

double mahalanobis_signal(const ZetaLawParams& params, std::int64_t n) {
    params.validate();
    const std::int64_t k = identifiable_modes(n, params.gamma, params.k_scale);
    if (params.c_d == 0.0) return 0.0;
    return params.c_d * harmonic_partial_sum(params.beta, k);
}

double predict_auc(double delta_sq) {
    if (!(delta_sq >= 0.0)) throw DomainError("predict_auc: delta_sq must be non-negative");
    return normal_cdf(std::sqrt(delta_sq / 2.0));
}

AucLimit auc_asymptote(const ZetaLawParams& params) {
    params.validate();
    if (params.c_d == 0.0) return 0.5;
    if (params.beta <= 1.0) return DivergentToOne{};
    return predict_auc(params.c_d * riemann_zeta(params.beta));
}

SampleSizeResult required_sample_size(double target_auc, const ZetaLawParams& params) {
    params.validate();
    if (!(target_auc > 0.5 && target_auc < 1.0)) {
        throw DomainError("required_sample_size: target AUC must lie in (0.5, 1)");
    }
    if (params.c_d == 0.0) return Unreachable{Unreachable::Reason::ZeroSignal, 0.5};

    if (params.beta > 1.0) {
        const double z = normal_quantile(target_auc);
        const double limit = params.c_d * riemann_zeta(params.beta);
        if (2.0 * z * z > limit) return Unreachable{Unreachable::Reason::AboveAsymptote, predict_auc(limit)};
    }

    const double exponent = mode_growth_exponent(params.gamma);
    // Modes beyond this count need N > kMaxSampleSize.
    const double horizon_modes = params.k_scale * std::pow(kMaxSampleSize, exponent) - 0.5;
    const std::int64_t mode_cap =
        std::min<std::int64_t>(kMaxModeSearch, static_cast<std::int64_t>(std::floor(horizon_modes)));

    // Smallest K whose forward AUC reaches the target.
    std::int64_t k = 0;
    double partial = 0.0;
    bool found = false;
    while (k < mode_cap) {
        ++k;
        partial += std::pow(static_cast<double>(k), -params.beta);
        if (predict_auc(params.c_d * partial) >= target_auc) {
            found = true;
            break;
        }
    }
    if (!found) return Unreachable{Unreachable::Reason::BeyondHorizon, 1.0};

    // Smallest N with round(k_scale N^e) >= K, i.e. N >= ((K - 1/2) / k_scale)^(1/e).
    const double estimate = std::ceil(std::pow((static_cast<double>(k) - 0.5) / params.k_scale, 1.0 / exponent));
    std::int64_t n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::min(estimate, kMaxSampleSize)));
    while (n > 1 && identifiable_modes(n - 1, params.gamma, params.k_scale) >= k) --n;
    while (identifiable_modes(n, params.gamma, params.k_scale) < k) ++n;
    return n;
}

Regime classify_regime(double beta, double margin) {
    if (!(beta > 0.0)) throw DomainError("classify_regime: beta must be positive");
    if (!(margin >= 0.0)) throw DomainError("classify_regime: margin must be non-negative");
    if (beta > 1.0 + margin) return Regime::Concentrated;
    if (beta < 1.0 - margin) return Regime::Diffuse;
    return Regime::Distributed;
}

}  // namespace zetalaw
