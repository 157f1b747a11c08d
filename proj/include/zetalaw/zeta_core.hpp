#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

namespace zetalaw {

/// Parameters of a predicted learning curve.
///
/// Per-mode signal energy decays as c_d * k^-beta, covariance eigenvalues
/// decay as k^-gamma, and the number of modes that can be estimated at
/// sample size N grows as k_scale * N^(1 / (2 (gamma + 1))).
struct ZetaLawParams {
    double beta = 1.0;
    double gamma = 1.0;
    double c_d = 1.0;
    double k_scale = 1.0;

    /// Throws DomainError unless beta > 0, gamma >= 0, c_d >= 0, k_scale > 0.
    void validate() const;
};

enum class Regime { Concentrated, Distributed, Diffuse };

std::string_view to_string(Regime regime);

/// Generalized harmonic number: sum of j^-beta for j = 1..k, by direct summation.
double harmonic_partial_sum(double beta, std::int64_t k);

/// Riemann zeta for beta > 1.
///
/// Sums M - 1 terms and adds the first-order Euler-Maclaurin tail
/// M^(1-beta)/(beta-1) + M^-beta/2, with M = max(20, ceil(tol^(-1/(beta-1))))
/// capped at 1e6. The remainder after that correction is below
/// beta * M^(-beta-1) / 12. Throws DivergenceError for beta <= 1.
double riemann_zeta(double beta, double tol = 1e-10);

/// Growth exponent 1 / (2 (gamma + 1)) of the identifiable-mode law.
double mode_growth_exponent(double gamma);

/// round(k_scale * n^exponent), clamped below at 1.
///
/// Lets callers express K(N) laws with other exponents (e.g. N^(1/beta)).
std::int64_t identifiable_modes_with_exponent(std::int64_t n, double exponent, double k_scale);

/// K(N) = round(k_scale * n^(1 / (2 (gamma + 1)))), at least 1.
std::int64_t identifiable_modes(std::int64_t n, double gamma, double k_scale = 1.0);

/// Predicted Mahalanobis signal c_d * H_{K(n)}^(beta).
double mahalanobis_signal(const ZetaLawParams& params, std::int64_t n);

/// Gaussian AUC of the optimal linear classifier: Phi(sqrt(delta_sq / 2)).
double predict_auc(double delta_sq);

/// Marker for an AUC that tends to 1 because the partial sums diverge.
struct DivergentToOne {};

using AucLimit = std::variant<double, DivergentToOne>;

/// Large-sample AUC limit: Phi(sqrt(c_d zeta(beta) / 2)) for beta > 1.
AucLimit auc_asymptote(const ZetaLawParams& params);

/// Why a target accuracy cannot be reached.
struct Unreachable {
    enum class Reason {
        AboveAsymptote,  ///< beta > 1 and the target exceeds the AUC limit.
        ZeroSignal,      ///< c_d == 0.
        BeyondHorizon,   ///< reachable in principle, but N would overflow 64 bits.
    };
    Reason reason;
    /// AUC limit when it is finite (AboveAsymptote, ZeroSignal); otherwise 1.
    double limit_auc = 1.0;
};

std::string_view to_string(Unreachable::Reason reason);

using SampleSizeResult = std::variant<std::int64_t, Unreachable>;

/// Smallest N whose predicted AUC reaches target_auc in (0.5, 1).
SampleSizeResult required_sample_size(double target_auc, const ZetaLawParams& params);

/// Concentrated if beta > 1 + margin, Diffuse if beta < 1 - margin, else Distributed.
Regime classify_regime(double beta, double margin = 0.1);

}  // namespace zetalaw
