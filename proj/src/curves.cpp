#include "zetalaw/curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "zetalaw/classify.hpp"
#include "zetalaw/errors.hpp"
#include "zetalaw/parallel.hpp"
#include "zetalaw/rng.hpp"

namespace zetalaw {

ModelSpec ModelSpec::parse(const std::string& text) {
    if (text == "full_lda") return {Kind::FullLda, 0.0};
    if (text == "diagonal_lda") return {Kind::DiagonalLda, 0.0};
    if (text == "ridge_lda") return {Kind::RidgeLda, 1e-3};
    if (text.rfind("ridge_lda:", 0) == 0) {
        const std::string value = text.substr(10);
        std::size_t used = 0;
        double ridge = -1.0;
        try {
            ridge = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size() || !(ridge >= 0.0) || !std::isfinite(ridge))
            throw DomainError("model: ridge must be a non-negative number: " + text);
        return {Kind::RidgeLda, ridge};
    }
    throw DomainError("model: expected full_lda, diagonal_lda, ridge_lda or ridge_lda:<ridge>, got " + text);
}

std::string ModelSpec::name() const {
    switch (kind) {
        case Kind::FullLda: return "full_lda";
        case Kind::DiagonalLda: return "diagonal_lda";
        case Kind::RidgeLda: {
            std::ostringstream out;
            out << "ridge_lda:" << ridge;
            return out.str();
        }
    }
    return "unknown";
}

Eigen::VectorXd fit_direction(const ModelSpec& spec, const Eigen::MatrixXd& cases, const Eigen::MatrixXd& controls) {
    if (spec.kind != ModelSpec::Kind::DiagonalLda)
        return fit_lda(cases, controls, spec.kind == ModelSpec::Kind::RidgeLda ? spec.ridge : 0.0).direction;

    if (cases.cols() != controls.cols()) throw ShapeError("fit_direction: class feature counts differ");
    if (cases.rows() < 2 || controls.rows() < 2) throw DomainError("fit_direction: each class needs two rows");
    const Eigen::RowVectorXd m0 = controls.colwise().mean();
    const Eigen::RowVectorXd m1 = cases.colwise().mean();
    const Eigen::RowVectorXd var = ((controls.rowwise() - m0).colwise().squaredNorm() +
                                    (cases.rowwise() - m1).colwise().squaredNorm()) /
                                   static_cast<double>(controls.rows() + cases.rows() - 2);
    const double top = var.maxCoeff();
    Eigen::VectorXd w(var.size());
    for (Eigen::Index j = 0; j < var.size(); ++j) {
        const double d = m1(j) - m0(j);
        if (var(j) > 1e-12 * top) {
            w(j) = d / var(j);
        } else if (d == 0.0) {
            w(j) = 0.0;
        } else {
            std::ostringstream msg;
            msg << "diagonal_lda: feature " << j << " has zero within-class variance but separates the classes";
            throw ConditioningError(msg.str(), var(j));
        }
    }
    return w;
}

std::vector<int> LearningCurve::grid() const {
    std::vector<int> out;
    for (const auto& p : points) out.push_back(p.n);
    return out;
}

LearningCurve learning_curve(const LabeledDataset& data, const ModelSpec& spec, std::span<const int> n_grid,
                             int repeats, double holdout_fraction, std::uint64_t seed, int threads) {
    if (repeats < 2) throw DomainError("learning_curve: repeats must be at least 2");
    if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0))
        throw DomainError("learning_curve: holdout fraction must lie in (0, 1)");
    if (n_grid.empty()) throw DomainError("learning_curve: empty grid");
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        if (n_grid[g] < 4) throw DomainError("learning_curve: grid sizes must be at least 4");
        if (g > 0 && n_grid[g] <= n_grid[g - 1]) throw DomainError("learning_curve: grid must be strictly ascending");
    }
    if (static_cast<std::size_t>(data.size()) != data.labels.size())
        throw ShapeError("learning_curve: label count differs from row count");

    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
        const int label = data.labels[i];
        if (label != 0 && label != 1) throw DataError("learning_curve: labels must be 0 or 1");
        by_class[static_cast<std::size_t>(label)].push_back(i);
    }
    if (by_class[0].size() < 3 || by_class[1].size() < 3)
        throw SizingError("learning_curve: each class needs at least three rows", 0);

    // Stratified holdout, drawn once.
    Rng split(derive_seed(seed, {0}));
    std::array<std::vector<std::size_t>, 2> pool;
    std::array<std::vector<std::size_t>, 2> held;
    for (std::size_t c = 0; c < 2; ++c) {
        const std::size_t size = by_class[c].size();
        const auto h = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::llround(holdout_fraction * static_cast<double>(size))), 1, size - 2);
        auto order = split.permutation(size);
        for (std::size_t i = 0; i < size; ++i) (i < h ? held[c] : pool[c]).push_back(by_class[c][order[i]]);
        std::sort(pool[c].begin(), pool[c].end());
    }
    const auto pool_total = static_cast<long long>(pool[0].size() + pool[1].size());

    struct Split {
        std::size_t n0, n1;
    };
    std::vector<Split> counts;
    for (int n : n_grid) {
        if (n > pool_total) {
            std::ostringstream msg;
            msg << "learning_curve: n = " << n << " exceeds the " << pool_total
                << " rows left after the holdout; the largest feasible n is " << pool_total;
            throw SizingError(msg.str(), pool_total);
        }
        const auto n1 = static_cast<std::size_t>(std::clamp<long long>(
            std::llround(static_cast<double>(n) * static_cast<double>(pool[1].size()) / static_cast<double>(pool_total)),
            2, n - 2));
        const std::size_t n0 = static_cast<std::size_t>(n) - n1;
        if (n0 > pool[0].size() || n1 > pool[1].size())
            throw SizingError("learning_curve: stratified subsample does not fit the pool", pool_total);
        counts.push_back({n0, n1});
    }

    const Eigen::MatrixXd hold0 = data.rows(held[0]);
    const Eigen::MatrixXd hold1 = data.rows(held[1]);

    const std::size_t tasks = n_grid.size() * static_cast<std::size_t>(repeats);
    std::vector<double> auc(tasks);
    parallel_for(tasks, threads, [&](std::size_t t) {
        const std::size_t g = t / static_cast<std::size_t>(repeats);
        const std::size_t r = t % static_cast<std::size_t>(repeats);
        Rng rng(derive_seed(seed, {1, g, r}));
        const auto idx0 = rng.sample(pool[0], counts[g].n0);
        const auto idx1 = rng.sample(pool[1], counts[g].n1);
        const Eigen::VectorXd w = fit_direction(spec, data.rows(idx1), data.rows(idx0));
        const Eigen::VectorXd s0 = hold0 * w;
        const Eigen::VectorXd s1 = hold1 * w;
        auc[t] = empirical_auc({s0.data(), static_cast<std::size_t>(s0.size())},
                               {s1.data(), static_cast<std::size_t>(s1.size())});
    });

    LearningCurve curve;
    curve.protocol = {spec.name(), holdout_fraction, static_cast<int>(held[0].size() + held[1].size()), repeats, seed};
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        double mean = 0.0;
        for (int r = 0; r < repeats; ++r) mean += auc[g * static_cast<std::size_t>(repeats) + static_cast<std::size_t>(r)];
        mean /= repeats;
        double ss = 0.0;
        for (int r = 0; r < repeats; ++r) {
            const double e = auc[g * static_cast<std::size_t>(repeats) + static_cast<std::size_t>(r)] - mean;
            ss += e * e;
        }
        curve.points.push_back({n_grid[g], mean, std::sqrt(ss / (repeats - 1)), repeats});
    }
    return curve;
}

namespace {

struct Axis {
    double lo, hi;
};
constexpr std::array<Axis, 3> kAxes{{{0.05, 5.0}, {0.01, 5.0}, {1e-3, 1e3}}};
constexpr std::size_t kStarts = 8;
constexpr int kProfileSteps = 120;
constexpr double kProfileSpan = 0.3;  // log units either side

}  // namespace

ZetaFit fit_zeta_law(const LearningCurve& curve, const FixedParams& fixed) {
    if (curve.points.empty()) throw DomainError("fit_zeta_law: empty curve");
    if (fixed.beta && !(*fixed.beta > 0.0)) throw DomainError("fit_zeta_law: fixed beta must be positive");
    if (fixed.gamma && !(*fixed.gamma >= 0.0)) throw DomainError("fit_zeta_law: fixed gamma must be non-negative");
    if (fixed.c_d && !(*fixed.c_d >= 0.0)) throw DomainError("fit_zeta_law: fixed c_d must be non-negative");

    const auto above = std::count_if(curve.points.begin(), curve.points.end(),
                                     [](const CurvePoint& p) { return p.mean_metric > 0.5; });
    if (above == 0)
        throw DegenerateFitError("fit_zeta_law: the curve never rises above chance; the data are consistent with C_d = 0");
    const int free = fixed.free_count();
    if (above < free + 1) {
        std::ostringstream msg;
        msg << "fit_zeta_law: " << free << " free parameter(s) need at least " << free + 1
            << " points above 0.5, the curve has " << above;
        throw DomainError(msg.str());
    }

    std::vector<double> weight;
    for (const auto& p : curve.points) {
        if (p.n < 1) throw DomainError("fit_zeta_law: curve sizes must be positive");
        const double sd = std::max(p.sd_metric, 1e-3);
        weight.push_back(std::max(p.repeats, 1) / (sd * sd));
    }

    const std::array<std::optional<double>, 3> pinned{fixed.beta, fixed.gamma, fixed.c_d};
    std::vector<std::size_t> axes;
    for (std::size_t a = 0; a < 3; ++a)
        if (!pinned[a]) axes.push_back(a);

    auto params_at = [&](const std::array<double, 3>& logv) {
        std::array<double, 3> v{};
        for (std::size_t a = 0; a < 3; ++a) v[a] = pinned[a] ? *pinned[a] : std::exp(logv[a]);
        return ZetaLawParams{v[0], v[1], v[2], 1.0};
    };
    auto objective = [&](const std::array<double, 3>& logv) {
        const ZetaLawParams params = params_at(logv);
        double sum = 0.0;
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            const double e = predict_auc(mahalanobis_signal(params, curve.points[i].n)) - curve.points[i].mean_metric;
            sum += weight[i] * e * e;
        }
        return sum;
    };

    const int per_axis = axes.size() == 3 ? 24 : 40;
    std::size_t total = 1;
    for (std::size_t i = 0; i < axes.size(); ++i) total *= static_cast<std::size_t>(per_axis);
    std::vector<std::pair<double, std::array<double, 3>>> cells;
    cells.reserve(total);
    for (std::size_t cell = 0; cell < total; ++cell) {
        std::array<double, 3> logv{};
        std::size_t rest = cell;
        for (std::size_t a : axes) {
            const auto i = static_cast<double>(rest % static_cast<std::size_t>(per_axis));
            rest /= static_cast<std::size_t>(per_axis);
            const double llo = std::log(kAxes[a].lo);
            logv[a] = llo + (std::log(kAxes[a].hi) - llo) * i / (per_axis - 1);
        }
        cells.emplace_back(objective(logv), logv);
    }
    const std::size_t starts = std::min<std::size_t>(kStarts, cells.size());
    std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(starts), cells.end(),
                      [](const auto& l, const auto& r) { return l.first < r.first; });

    // Pattern search in log space over `over`, clamped to the grid box.
    auto refine = [&](std::array<double, 3>& here, double& value_here, const std::vector<std::size_t>& over,
                      double initial_step) {
        std::array<double, 3> step{};
        for (std::size_t a : over)
            step[a] = initial_step > 0.0 ? initial_step
                                         : (std::log(kAxes[a].hi) - std::log(kAxes[a].lo)) / (per_axis - 1);
        for (int iter = 0; iter < 10000 && !over.empty(); ++iter) {
            bool moved = false;
            for (std::size_t a : over) {
                for (double sign : {1.0, -1.0}) {
                    std::array<double, 3> trial = here;
                    trial[a] = std::clamp(here[a] + sign * step[a], std::log(kAxes[a].lo), std::log(kAxes[a].hi));
                    if (trial[a] == here[a]) continue;
                    const double value = objective(trial);
                    if (value < value_here) {
                        value_here = value;
                        here = trial;
                        moved = true;
                        break;
                    }
                }
            }
            if (moved) continue;
            double largest = 0.0;
            for (std::size_t a : over) largest = std::max(largest, step[a] *= 0.5);
            if (largest < 1e-6) break;
        }
    };

    std::array<double, 3> best = cells[0].second;
    double best_value = cells[0].first;
    for (std::size_t start = 0; start < starts; ++start) {
        std::array<double, 3> here = cells[start].second;
        double value_here = cells[start].first;
        refine(here, value_here, axes, 0.0);
        if (value_here < best_value) {
            best_value = value_here;
            best = here;
        }
    }

    // gamma acts only through the rounded mode counts, so the objective is a
    // staircase in gamma. Profile it on a fine local grid, re-optimizing the
    // other free parameters at each step.
    if (!pinned[1] && axes.size() > 1) {
        std::vector<std::size_t> others;
        for (std::size_t a : axes)
            if (a != 1) others.push_back(a);
        const std::array<double, 3> centre = best;
        std::array<double, 3> warm = best;
        for (int j = -kProfileSteps; j <= kProfileSteps; ++j) {
            std::array<double, 3> here = warm;
            here[1] = std::clamp(centre[1] + kProfileSpan * j / kProfileSteps, std::log(kAxes[1].lo),
                                 std::log(kAxes[1].hi));
            double value_here = objective(here);
            refine(here, value_here, others, 0.05);
            warm = here;
            if (value_here < best_value) {
                best_value = value_here;
                best = here;
            }
        }
        refine(best, best_value, axes, 1e-3);
    }

    ZetaFit fit;
    fit.params = params_at(best);
    fit.residual = best_value;
    for (const auto& p : curve.points) fit.predictions.push_back(predict_auc(mahalanobis_signal(fit.params, p.n)));
    return fit;
}

Extrapolation extrapolate(const ZetaLawParams& params, std::span<const std::int64_t> n_targets) {
    params.validate();
    Extrapolation out{{}, {}, {}, {}, auc_asymptote(params)};
    for (std::int64_t n : n_targets) {
        if (n < 1) throw DomainError("extrapolate: sizes must be positive");
        const double delta_sq = mahalanobis_signal(params, n);
        out.n.push_back(n);
        out.modes.push_back(identifiable_modes(n, params.gamma, params.k_scale));
        out.delta_sq.push_back(delta_sq);
        out.auc.push_back(predict_auc(delta_sq));
    }
    return out;
}

std::string to_string(Crossover::Direction direction) {
    return direction == Crossover::Direction::AOvertakesB ? "b->a" : "a->b";
}

CrossoverResult detect_crossover(const LearningCurve& a, const LearningCurve& b) {
    if (a.grid() != b.grid()) throw ProtocolError("detect_crossover: curves use different sample-size grids");
    const std::size_t m = a.points.size();
    if (m == 0) throw DomainError("detect_crossover: empty curves");

    std::vector<int> sign(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double d = a.points[i].mean_metric - b.points[i].mean_metric;
        sign[i] = (d > 0.0) - (d < 0.0);
    }
    if (std::all_of(sign.begin(), sign.end(), [](int s) { return s == 0; })) return {std::nullopt, "curves are identical"};
    if (std::all_of(sign.begin(), sign.end(), [](int s) { return s >= 0; }))
        return {std::nullopt, "a dominates b at every grid point"};
    if (std::all_of(sign.begin(), sign.end(), [](int s) { return s <= 0; }))
        return {std::nullopt, "b dominates a at every grid point"};

    const int final_sign = sign[m - 1];
    if (final_sign == 0) return {std::nullopt, "curves tie at the largest n"};
    std::size_t j = m - 1;
    while (j > 0 && sign[j - 1] == final_sign) --j;
    // sign[j - 1] differs from the final sign and j > 0 because both signs occur.
    const std::size_t i = j - 1;
    const double di = a.points[i].mean_metric - b.points[i].mean_metric;
    const double dj = a.points[j].mean_metric - b.points[j].mean_metric;
    const double li = std::log(static_cast<double>(a.points[i].n));
    const double lj = std::log(static_cast<double>(a.points[j].n));
    Crossover c;
    c.n_star = std::exp(li + (lj - li) * di / (di - dj));
    c.direction = final_sign > 0 ? Crossover::Direction::AOvertakesB : Crossover::Direction::BOvertakesA;
    c.interval = i;
    std::ostringstream note;
    note << (final_sign > 0 ? "a" : "b") << " leads from n = " << a.points[j].n << " onward";
    return {c, note.str()};
}

}  // namespace zetalaw
