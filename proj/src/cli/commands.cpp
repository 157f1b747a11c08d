#include "zetalaw/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zetalaw/classify.hpp"
#include "zetalaw/cli/csv.hpp"
#include "zetalaw/cli/svg.hpp"
#include "zetalaw/crossmodal.hpp"
#include "zetalaw/curves.hpp"
#include "zetalaw/errors.hpp"
#include "zetalaw/rng.hpp"
#include "zetalaw/spectral.hpp"
#include "zetalaw/synth.hpp"
#include "zetalaw/univariate.hpp"

namespace zetalaw::cli {

using json = nlohmann::ordered_json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vec(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
    return out;
}

json params_json(const ZetaLawParams& p) {
    return {{"beta", p.beta}, {"gamma", p.gamma}, {"c_d", p.c_d}, {"k_scale", p.k_scale}};
}

json asymptote_json(const AucLimit& limit) {
    if (const double* v = std::get_if<double>(&limit)) return {{"kind", "finite"}, {"auc", *v}};
    return {{"kind", "divergent_to_one"}, {"auc", 1.0}};
}

json fit_json(const PowerLawFit& fit) {
    return {{"slope", fit.slope},
            {"log_intercept", fit.log_intercept},
            {"r_squared", fit.r_squared},
            {"k_min", fit.k_min},
            {"k_max", fit.k_max}};
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void prepare_dir(const std::string& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw DataError("cannot create directory " + dir + ": " + ec.message());
}

std::vector<double> indices(std::size_t n) {
    std::vector<double> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = static_cast<double>(i + 1);
    return k;
}

void reject_constant_columns(const Eigen::MatrixXd& x, const std::vector<std::string>& names) {
    std::vector<std::string> flat;
    for (Eigen::Index j = 0; j < x.cols(); ++j)
        if (x.col(j).maxCoeff() == x.col(j).minCoeff()) flat.push_back(names[static_cast<std::size_t>(j)]);
    if (flat.empty()) return;
    std::ostringstream msg;
    msg << "constant feature column(s):";
    for (std::size_t i = 0; i < flat.size() && i < 20; ++i) msg << ' ' << flat[i];
    if (flat.size() > 20) msg << " ... (" << flat.size() << " in total)";
    throw DataError(msg.str());
}

struct SpectralSummary {
    EigenSpectrum spectrum;
    double effective_rank = 0.0;
    double bound = 0.0;
    int modes = 0;
    std::optional<PowerLawFit> gamma_fit;
};

SpectralSummary spectral_summary(const Eigen::MatrixXd& sigma, std::int64_t n, double delta, double c,
                                 double safety) {
    SpectralSummary s;
    s.spectrum = eigendecompose(sigma);
    s.effective_rank = effective_rank(s.spectrum);
    s.bound = operator_error_bound(s.spectrum, n, delta, c);
    s.modes = identifiable_mode_count(s.spectrum, s.bound, safety);
    if (s.modes >= 3 && s.spectrum.values(s.modes - 1) > 0.0) {
        const std::vector<double> values(s.spectrum.values.data(), s.spectrum.values.data() + s.modes);
        s.gamma_fit = fit_power_law(values, 1, s.modes);
    }
    return s;
}

}  // namespace

Report cmd_predict(const PredictOptions& o) {
    o.params.validate();
    Report r;
    r.command = "predict";
    r.params = params_json(o.params);
    r.params["n"] = o.n;
    r.params["target_auc"] = o.target_auc ? json(*o.target_auc) : json(nullptr);
    r.params["margin"] = o.margin;

    r.results["regime"] = std::string(to_string(classify_regime(o.params.beta, o.margin)));
    r.results["asymptote"] = asymptote_json(auc_asymptote(o.params));
    json rows = json::array();
    for (std::int64_t n : o.n) {
        if (n < 1) throw DomainError("predict: sample sizes must be positive");
        const double delta_sq = mahalanobis_signal(o.params, n);
        rows.push_back({{"n", n},
                        {"modes", identifiable_modes(n, o.params.gamma, o.params.k_scale)},
                        {"delta_sq", delta_sq},
                        {"auc", predict_auc(delta_sq)}});
    }
    r.results["rows"] = rows;
    if (o.target_auc) {
        const auto answer = required_sample_size(*o.target_auc, o.params);
        if (const auto* n = std::get_if<std::int64_t>(&answer)) {
            r.results["required_sample_size"] = {{"reachable", true}, {"n", *n}};
        } else {
            const auto& u = std::get<Unreachable>(answer);
            r.results["required_sample_size"] = {
                {"reachable", false}, {"reason", std::string(to_string(u.reason))}, {"limit_auc", u.limit_auc}};
            r.warnings.push_back("target AUC is unreachable (" + std::string(to_string(u.reason)) + ")");
        }
    }
    return r;
}

Report cmd_analyze(const AnalyzeOptions& o) {
    if (!(o.ridge >= 0.0)) throw DomainError("analyze: ridge must be non-negative");
    const LabeledTable table = read_labeled_csv(o.data, o.label_column);
    const auto& data = table.data;
    reject_constant_columns(data.features, table.feature_names);
    const Eigen::MatrixXd controls = data.rows_with(0);
    const Eigen::MatrixXd cases = data.rows_with(1);
    if (controls.rows() < 2 || cases.rows() < 2) throw DataError("analyze: each class needs at least two rows");

    Report r;
    r.command = "analyze";
    r.inputs_digest = digest_files({o.data});
    r.params = {{"data", o.data},           {"label_column", o.label_column}, {"ridge", o.ridge},
                {"delta", o.delta},         {"safety", o.safety},             {"bound_constant", o.bound_constant},
                {"margin", o.margin},       {"out_dir", o.out_dir},           {"svg", o.svg}};

    const std::int64_t n = data.size();
    const SpectralSummary s = spectral_summary(pooled_covariance(controls, cases), n, o.delta, o.bound_constant,
                                               o.safety);
    const Eigen::VectorXd d = cases.colwise().mean() - controls.colwise().mean();
    const ContrastDecomposition dec = contrast_decomposition(d, s.spectrum, o.ridge, true);
    if (dec.truncated_modes > 0)
        r.warnings.push_back(std::to_string(dec.truncated_modes) +
                             " trailing mode(s) have zero variance and were left out of the contrast");

    r.results["n"] = n;
    r.results["p"] = data.features.cols();
    r.results["n_controls"] = controls.rows();
    r.results["n_cases"] = cases.rows();
    r.results["label_values"] = {{"control", table.label_values[0]}, {"case", table.label_values[1]}};
    r.results["eigenvalues"] = vec(s.spectrum.values);
    r.results["effective_rank"] = s.effective_rank;
    r.results["operator_error_bound"] = s.bound;
    r.results["identifiable_modes"] = s.modes;
    r.results["contrast"] = {{"alphas", vec(dec.alphas)},
                             {"energies", vec(dec.energies)},
                             {"cumulative", vec(dec.cumulative)},
                             {"delta_sq", dec.total()},
                             {"plugin_auc", predict_auc(dec.total())},
                             {"truncated_modes", dec.truncated_modes}};

    json gamma_hat = nullptr;
    json beta_hat = nullptr;
    json regime = nullptr;
    if (s.gamma_fit) {
        gamma_hat = fit_json(*s.gamma_fit);
        const int k = std::min<int>(s.modes, static_cast<int>(dec.energies.size()));
        const std::vector<double> energies(dec.energies.data(), dec.energies.data() + k);
        std::vector<double> weights;
        for (int i = 1; i <= k; ++i) weights.push_back(1.0 / i);
        try {
            const PowerLawFit fit = fit_power_law(energies, 1, k, weights);
            beta_hat = fit_json(fit);
            regime = std::string(to_string(classify_regime(fit.slope, o.margin)));
        } catch (const DomainError& e) {
            r.warnings.push_back(std::string("signal decay fit skipped: ") + e.what());
        }
    } else {
        r.warnings.push_back("only " + std::to_string(s.modes) +
                             " identifiable mode(s); power-law fits need at least 3 and were skipped");
    }
    r.results["gamma_hat"] = gamma_hat;
    r.results["beta_hat"] = beta_hat;
    r.results["regime"] = regime;

    if (!o.out_dir.empty()) {
        prepare_dir(o.out_dir);
        std::vector<std::vector<double>> spectrum_rows;
        for (Eigen::Index k = 0; k < s.spectrum.dimension(); ++k)
            spectrum_rows.push_back({static_cast<double>(k + 1), s.spectrum.values(k)});
        write_csv(join(o.out_dir, "spectrum.csv"), {"k", "eigenvalue"}, spectrum_rows);
        std::vector<std::vector<double>> energy_rows;
        for (Eigen::Index k = 0; k < dec.energies.size(); ++k)
            energy_rows.push_back({static_cast<double>(k + 1), dec.alphas(k), dec.energies(k), dec.cumulative(k)});
        write_csv(join(o.out_dir, "energy.csv"), {"k", "alpha", "energy", "cumulative"}, energy_rows);
        r.files = {"spectrum.csv", "energy.csv"};
        if (o.svg) {
            const auto ks = indices(static_cast<std::size_t>(s.spectrum.dimension()));
            const std::vector<double> ev(s.spectrum.values.data(), s.spectrum.values.data() + s.spectrum.dimension());
            write_text(join(o.out_dir, "spectrum.svg"),
                       line_chart({{"eigenvalue", ks, ev}}, {"Covariance spectrum", "mode k", "eigenvalue", true, true}));
            const std::vector<double> en(dec.energies.data(), dec.energies.data() + dec.energies.size());
            write_text(join(o.out_dir, "energy.svg"),
                       line_chart({{"energy", indices(en.size()), en}},
                                  {"Contrast energy per mode", "mode k", "energy", true, true}));
            r.files.push_back("spectrum.svg");
            r.files.push_back("energy.svg");
        }
    }
    return r;
}

Report cmd_curve(const CurveOptions& o) {
    if (o.grid.empty()) throw DomainError("curve: the sample-size grid is empty");
    if (o.models.empty()) throw DomainError("curve: no models given");
    std::vector<ModelSpec> specs;
    for (const auto& m : o.models) specs.push_back(ModelSpec::parse(m));
    const LabeledTable table = read_labeled_csv(o.data, o.label_column);
    const auto& data = table.data;
    reject_constant_columns(data.features, table.feature_names);

    Report r;
    r.command = "curve";
    r.inputs_digest = digest_files({o.data});
    json model_names = json::array();
    for (const auto& s : specs) model_names.push_back(s.name());
    r.params = {{"data", o.data},
                {"label_column", o.label_column},
                {"models", model_names},
                {"grid", o.grid},
                {"repeats", o.repeats},
                {"holdout", o.holdout},
                {"seed", o.seed},
                {"threads", o.threads},
                {"horizons", o.horizons},
                {"gamma", o.gamma ? json(*o.gamma) : json(nullptr)},
                {"spectral_gamma", o.spectral_gamma},
                {"out_dir", o.out_dir},
                {"svg", o.svg}};

    FixedParams fixed;
    fixed.gamma = o.gamma;
    if (!o.gamma && o.spectral_gamma) {
        const Eigen::MatrixXd controls = data.rows_with(0);
        const Eigen::MatrixXd cases = data.rows_with(1);
        const SpectralSummary s = spectral_summary(pooled_covariance(controls, cases), data.size(), 0.05, 1.0, 1.0);
        if (s.gamma_fit && s.gamma_fit->slope >= 0.0) {
            fixed.gamma = s.gamma_fit->slope;
            r.results["gamma_estimate"] = {{"identifiable_modes", s.modes}, {"fit", fit_json(*s.gamma_fit)}};
        } else {
            r.results["gamma_estimate"] = nullptr;
            r.warnings.push_back("gamma could not be estimated from the spectrum (" + std::to_string(s.modes) +
                                 " identifiable modes); it is fitted from the curves instead");
        }
    }

    std::vector<std::int64_t> horizons = o.horizons;
    if (horizons.empty()) {
        const std::int64_t top = *std::max_element(o.grid.begin(), o.grid.end());
        horizons = {2 * top, 10 * top, 100 * top};
    }

    std::vector<LearningCurve> curves;
    json models = json::array();
    for (const auto& spec : specs) {
        LearningCurve curve = learning_curve(data, spec, o.grid, o.repeats, o.holdout, o.seed, o.threads);
        json points = json::array();
        for (const auto& p : curve.points)
            points.push_back({{"n", p.n}, {"mean_auc", p.mean_metric}, {"sd_auc", p.sd_metric}, {"repeats", p.repeats}});
        json entry = {{"model", spec.name()},
                      {"metric", curve.metric_name},
                      {"holdout_size", curve.protocol.holdout_size},
                      {"points", points}};
        try {
            const ZetaFit fit = fit_zeta_law(curve, fixed);
            const Extrapolation ext = extrapolate(fit.params, horizons);
            json projected = json::array();
            for (std::size_t i = 0; i < ext.n.size(); ++i)
                projected.push_back({{"n", ext.n[i]}, {"modes", ext.modes[i]}, {"auc", ext.auc[i]}});
            entry["fit"] = {{"params", params_json(fit.params)},
                            {"fixed_gamma", fixed.gamma.has_value()},
                            {"residual", fit.residual},
                            {"predictions", fit.predictions},
                            {"regime", std::string(to_string(classify_regime(fit.params.beta)))},
                            {"asymptote", asymptote_json(ext.asymptote)},
                            {"extrapolation", projected}};
        } catch (const Error& e) {
            entry["fit"] = nullptr;
            r.warnings.push_back(spec.name() + ": zeta-law fit skipped: " + e.what());
        }
        models.push_back(entry);
        curves.push_back(std::move(curve));
    }
    r.results["models"] = models;

    if (curves.size() > 1) {
        json crossings = json::array();
        for (std::size_t a = 0; a < curves.size(); ++a)
            for (std::size_t b = a + 1; b < curves.size(); ++b) {
                const CrossoverResult c = detect_crossover(curves[a], curves[b]);
                json item = {{"a", specs[a].name()}, {"b", specs[b].name()}, {"note", c.note}};
                if (c.crossover) {
                    item["n_star"] = c.crossover->n_star;
                    item["direction"] = to_string(c.crossover->direction);
                } else {
                    item["n_star"] = nullptr;
                    item["direction"] = nullptr;
                }
                crossings.push_back(item);
            }
        r.results["crossovers"] = crossings;
    }

    if (!o.out_dir.empty()) {
        prepare_dir(o.out_dir);
        std::vector<std::string> headers{"n"};
        for (const auto& s : specs) {
            headers.push_back("mean_" + s.name());
            headers.push_back("sd_" + s.name());
        }
        std::vector<std::vector<double>> rows;
        for (std::size_t g = 0; g < o.grid.size(); ++g) {
            std::vector<double> row{static_cast<double>(o.grid[g])};
            for (const auto& c : curves) {
                row.push_back(c.points[g].mean_metric);
                row.push_back(c.points[g].sd_metric);
            }
            rows.push_back(row);
        }
        write_csv(join(o.out_dir, "curve.csv"), headers, rows);
        r.files = {"curve.csv"};
        if (o.svg) {
            std::vector<Series> series;
            for (std::size_t m = 0; m < curves.size(); ++m) {
                Series s{specs[m].name(), {}, {}};
                for (const auto& p : curves[m].points) {
                    s.x.push_back(p.n);
                    s.y.push_back(p.mean_metric);
                }
                series.push_back(s);
            }
            write_text(join(o.out_dir, "curve.svg"),
                       line_chart(series, {"Learning curves", "training size n", "holdout AUC", true, false}));
            r.files.push_back("curve.svg");
        }
    }
    return r;
}

Report cmd_crossmodal(const CrossmodalOptions& o) {
    const KernelSpec kernel = KernelSpec::parse(o.kernel);
    if (o.top_k < 1) throw DomainError("crossmodal: top-k must be at least 1");
    const Eigen::MatrixXd x = read_matrix_csv(o.x);
    const Eigen::MatrixXd y = read_matrix_csv(o.y);
    if (x.rows() > 5000) throw DomainError("crossmodal: kernel statistics are limited to 5000 rows");

    Report r;
    r.command = "crossmodal";
    r.inputs_digest = digest_files({o.x, o.y});
    r.params = {{"x", o.x},           {"y", o.y},         {"reg", o.reg ? json(*o.reg) : json(nullptr)},
                {"kernel", o.kernel}, {"n_perm", o.n_perm}, {"top_k", o.top_k},
                {"seed", o.seed},     {"threads", o.threads}, {"out_dir", o.out_dir},
                {"svg", o.svg}};

    const CrossModalSpectrum raw = cross_spectrum(x, y);
    const CrossModalSpectrum m = whitened_operator(x, y, o.reg);
    const int k = std::min<int>(o.top_k, static_cast<int>(std::min(x.cols(), y.cols())));
    const CcaResult c = cca(x, y, k, o.reg);
    const double h = hsic(x, y, kernel, kernel);
    const double pval = hsic_permutation_test(x, y, kernel, kernel, o.n_perm, derive_seed(o.seed, {4}), o.threads);

    r.results["n"] = x.rows();
    r.results["p_x"] = x.cols();
    r.results["p_y"] = y.cols();
    r.results["raw_singular_values"] = vec(raw.singular_values);
    r.results["singular_values"] = vec(m.singular_values);
    r.results["regularizer"] = {{"x", m.reg_x}, {"y", m.reg_y}};
    r.results["beta_cross"] = m.decay ? fit_json(*m.decay) : json(nullptr);
    if (!m.decay) r.warnings.push_back("fewer than 3 nonzero singular values; no decay slope fitted");
    r.results["canonical_correlations"] = vec(c.correlations);
    r.results["hsic"] = {{"kernel", kernel.name()}, {"value", h}, {"p_value", pval}, {"n_perm", o.n_perm}};

    if (!o.out_dir.empty()) {
        prepare_dir(o.out_dir);
        std::vector<std::vector<double>> rows;
        for (Eigen::Index i = 0; i < m.singular_values.size(); ++i)
            rows.push_back({static_cast<double>(i + 1), m.singular_values(i), raw.singular_values(i)});
        write_csv(join(o.out_dir, "singulars.csv"), {"k", "sigma_whitened", "sigma_raw"}, rows);
        r.files = {"singulars.csv"};
        if (o.svg) {
            const std::vector<double> sv(m.singular_values.data(), m.singular_values.data() + m.singular_values.size());
            write_text(join(o.out_dir, "singulars.svg"),
                       line_chart({{"whitened", indices(sv.size()), sv}},
                                  {"Cross-modal singular values", "k", "sigma", true, true}));
            r.files.push_back("singulars.svg");
        }
    }
    return r;
}

Report cmd_simulate(const SimulateOptions& o) {
    if (o.n < 1) throw DomainError("simulate: n must be positive");
    prepare_dir(o.out_dir);
    Report r;
    r.command = "simulate";
    r.params = {{"kind", o.kind}, {"seed", o.seed}, {"n", o.n}, {"out_dir", o.out_dir}};
    json truth;
    if (o.kind == "two_class") {
        o.params.validate();
        r.params.update(params_json(o.params));
        r.params["p"] = o.p;
        r.params["rotate"] = o.rotate;
        const GroundTruthModel model = build_ground_truth(o.p, o.params, o.rotate, derive_seed(o.seed, {1}));
        const LabeledDataset data = sample_two_class(model, o.n, o.n, derive_seed(o.seed, {2}));
        std::vector<std::string> headers;
        for (int j = 1; j <= o.p; ++j) headers.push_back("x" + std::to_string(j));
        write_matrix_csv(join(o.out_dir, "data.csv"), headers, data.features, &data.labels);
        truth = {{"kind", "two_class"},
                 {"params", params_json(o.params)},
                 {"p", o.p},
                 {"n_per_class", o.n},
                 {"rotate", o.rotate},
                 {"delta_sq_pop", model.population_delta_sq()},
                 {"population_auc", predict_auc(model.population_delta_sq())},
                 {"eigenvalues", vec(model.eigenvalues)},
                 {"alphas", vec(model.alphas)}};
        r.files = {"data.csv", "truth.json"};
    } else if (o.kind == "multimodal") {
        r.params.update(json{{"rank", o.rank},
                             {"p_x", o.p_x},
                             {"p_y", o.p_y},
                             {"noise_x", o.noise_x},
                             {"noise_y", o.noise_y}});
        const std::vector<ModalitySpec> specs{{o.p_x, o.noise_x, 1.0}, {o.p_y, o.noise_y, 1.0}};
        const MultimodalDataset data = sample_multimodal(o.rank, specs, o.n, derive_seed(o.seed, {3}));
        std::vector<std::string> hx;
        std::vector<std::string> hy;
        for (int j = 1; j <= o.p_x; ++j) hx.push_back("x" + std::to_string(j));
        for (int j = 1; j <= o.p_y; ++j) hy.push_back("y" + std::to_string(j));
        write_matrix_csv(join(o.out_dir, "x.csv"), hx, data.modalities[0]);
        write_matrix_csv(join(o.out_dir, "y.csv"), hy, data.modalities[1]);
        const double rho = data.population_correlation(0, 1);
        json correlations = json::array();
        for (int k = 0; k < std::min(o.p_x, o.p_y); ++k) correlations.push_back(k < o.rank ? rho : 0.0);
        truth = {{"kind", "multimodal"},
                 {"shared_rank", o.rank},
                 {"n", o.n},
                 {"p_x", o.p_x},
                 {"p_y", o.p_y},
                 {"noise_x", o.noise_x},
                 {"noise_y", o.noise_y},
                 {"population_canonical_correlations", correlations}};
        r.files = {"x.csv", "y.csv", "truth.json"};
    } else {
        throw DomainError("simulate: kind must be two_class or multimodal, got " + o.kind);
    }
    std::ofstream sidecar(join(o.out_dir, "truth.json"));
    if (!sidecar) throw DataError("simulate: cannot write truth.json");
    sidecar << truth.dump(2) << '\n';
    r.results = truth;
    return r;
}

Report cmd_dkw(const DkwOptions& o) {
    Report r;
    r.command = "dkw";
    r.params = {{"n", o.n ? json(*o.n) : json(nullptr)},
                {"epsilon", o.epsilon ? json(*o.epsilon) : json(nullptr)},
                {"delta", o.delta},
                {"data", o.data ? json(*o.data) : json(nullptr)},
                {"column", o.column},
                {"quantile", o.quantile ? json(*o.quantile) : json(nullptr)}};
    if (!o.n && !o.epsilon && !o.data) throw DomainError("dkw: give --n, --epsilon or --data");
    if (o.n && o.data) throw DomainError("dkw: --n and --data are mutually exclusive");
    if (o.quantile && !o.data) throw DomainError("dkw: --quantile needs --data");

    if (o.n) r.results["epsilon"] = dkw_epsilon(*o.n, o.delta);
    if (o.epsilon) r.results["required_n"] = dkw_sample_size(*o.epsilon, o.delta);
    if (o.data) {
        r.inputs_digest = digest_files({*o.data});
        const CsvTable table = read_csv(*o.data);
        std::size_t column = 0;
        if (!o.column.empty())
            column = table.column(o.column);
        else if (table.headers.size() != 1)
            throw DomainError("dkw: --column is required when the data file has several columns");
        const Eigen::MatrixXd values = numeric_columns(table, {column});
        const EmpiricalCdf cdf(std::vector<double>(values.data(), values.data() + values.size()));
        const auto n = static_cast<std::int64_t>(cdf.size());
        r.results["n"] = n;
        r.results["epsilon"] = dkw_epsilon(n, o.delta);
        if (o.quantile) {
            const CentileBand band = centile_band(cdf, *o.quantile, o.delta);
            r.results["band"] = {{"quantile", *o.quantile},
                                 {"lo", band.lo},
                                 {"estimate", band.estimate},
                                 {"hi", number(band.hi)},
                                 {"hi_unbounded", !std::isfinite(band.hi)},
                                 {"epsilon", band.epsilon}};
            if (!std::isfinite(band.hi))
                r.warnings.push_back("upper band edge is unbounded: quantile + epsilon reaches 1");
        }
    }
    return r;
}

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const DomainError*>(&error) || dynamic_cast<const SizingError*>(&error) ||
        dynamic_cast<const ProtocolError*>(&error))
        return 2;
    if (dynamic_cast<const DataError*>(&error) || dynamic_cast<const ShapeError*>(&error)) return 3;
    if (dynamic_cast<const ConditioningError*>(&error) || dynamic_cast<const DivergenceError*>(&error) ||
        dynamic_cast<const DegenerateFitError*>(&error))
        return 4;
    return 1;
}

}  // namespace zetalaw::cli
