#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zetalaw/synth.hpp"
#include "zetalaw/zeta_core.hpp"

namespace zetalaw {

struct ModelSpec {
    enum class Kind { FullLda, DiagonalLda, RidgeLda };
    Kind kind = Kind::FullLda;
    double ridge = 0.0;  ///< used by RidgeLda only

    /// "full_lda", "diagonal_lda", "ridge_lda" (ridge 1e-3) or "ridge_lda:<ridge>".
    static ModelSpec parse(const std::string& text);
    std::string name() const;
};

/// Discriminant direction w for `spec`; scores are w^T x.
///
/// DiagonalLda keeps only the diagonal of the pooled covariance.
Eigen::VectorXd fit_direction(const ModelSpec& spec, const Eigen::MatrixXd& cases, const Eigen::MatrixXd& controls);

struct CurvePoint {
    int n = 0;
    double mean_metric = 0.0;
    double sd_metric = 0.0;
    int repeats = 0;
};

struct CurveProtocol {
    std::string model;
    double holdout_fraction = 0.25;
    int holdout_size = 0;
    int repeats = 0;
    std::uint64_t seed = 0;
};

struct LearningCurve {
    std::vector<CurvePoint> points;  ///< ascending n
    std::string metric_name = "auc";
    CurveProtocol protocol;

    std::vector<int> grid() const;
};

/// Empirical AUC learning curve by stratified subsampling.
///
/// A class-stratified holdout of holdout_fraction of each class is drawn once
/// under derive_seed(seed, {0}) and shared by every point. The training subset
/// for grid index g and repeat r is drawn from the remaining pool under
/// derive_seed(seed, {1, g, r}); repeats run on up to `threads` workers.
LearningCurve learning_curve(const LabeledDataset& data, const ModelSpec& spec, std::span<const int> n_grid,
                             int repeats, double holdout_fraction, std::uint64_t seed, int threads = 1);

/// Parameters held fixed during a fit; the rest are free. k_scale is always 1.
struct FixedParams {
    std::optional<double> beta;
    std::optional<double> gamma;
    std::optional<double> c_d;

    int free_count() const { return !beta + !gamma + !c_d; }
};

struct ZetaFit {
    ZetaLawParams params;
    double residual = 0.0;            ///< weighted sum of squared errors at the optimum
    std::vector<double> predictions;  ///< predicted AUC per curve point
};

/// Weighted least-squares fit of the zeta law to a learning curve.
///
/// Weights are repeats / max(sd, 1e-3)^2. A log-spaced grid over
/// beta in [0.05, 5], gamma in [0.01, 5], c_d in [1e-3, 1e3] (40 points per free
/// axis, 24 when all three are free); the eight best cells each seed a
/// coordinate search refined to a relative step of 1e-6. A free gamma is then
/// profiled over a fine grid within a factor exp(0.3) of the best value. Needs at least free_count() + 1 points above 0.5.
ZetaFit fit_zeta_law(const LearningCurve& curve, const FixedParams& fixed = {});

struct Extrapolation {
    std::vector<std::int64_t> n;
    std::vector<std::int64_t> modes;
    std::vector<double> delta_sq;
    std::vector<double> auc;
    AucLimit asymptote;
};

Extrapolation extrapolate(const ZetaLawParams& params, std::span<const std::int64_t> n_targets);

struct Crossover {
    enum class Direction { AOvertakesB, BOvertakesA };
    double n_star = 0.0;
    Direction direction = Direction::AOvertakesB;
    std::size_t interval = 0;  ///< flip lies between grid points interval and interval + 1
};

/// "b->a" when a takes the lead from b, "a->b" otherwise.
std::string to_string(Crossover::Direction direction);

struct CrossoverResult {
    std::optional<Crossover> crossover;
    std::string note;
};

/// Finds the last sign change of mean_a - mean_b along the shared grid.
///
/// A tie at the largest n means no crossover. n_star interpolates the zero crossing linearly in log n. Throws
/// ProtocolError when the grids differ.
CrossoverResult detect_crossover(const LearningCurve& a, const LearningCurve& b);

}  // namespace zetalaw
