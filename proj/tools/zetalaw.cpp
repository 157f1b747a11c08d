// Command-line front end for the zetalaw toolkit.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "zetalaw/cli/commands.hpp"
#include "zetalaw/errors.hpp"

namespace {

using namespace zetalaw;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    for (const auto& item : split_list(text)) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size() || v != std::floor(v) || v < 1 || v > 9e18)
            throw DomainError(std::string(what) + ": expected positive integers, got '" + item + "'");
        out.push_back(static_cast<T>(v));
    }
    return out;
}

// Flat "key = value" lines become "--key=value" arguments placed right after
// the subcommand, so flags given on the command line (which come later) win.
std::vector<std::string> config_arguments(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("config: cannot open " + path);
    std::vector<std::string> args;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("config: " + path + " line " + std::to_string(line_no) + " is not key = value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t\r") + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t\r") + 1);
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        std::replace(key.begin(), key.end(), '_', '-');
        if (key.empty()) throw DataError("config: " + path + " line " + std::to_string(line_no) + " has no key");
        args.push_back("--" + key + "=" + value);
    }
    return args;
}

int default_threads() {
    if (const char* env = std::getenv("ZETALAW_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> names{"predict", "analyze", "curve", "crossmodal", "simulate", "dkw"};

    // Locate --config and the subcommand before CLI11 sees the arguments.
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (!config_path.empty()) {
        try {
            const auto extra = config_arguments(config_path);
            const auto sub = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
                return std::find(names.begin(), names.end(), a) != names.end();
            });
            if (sub != args.end()) args.insert(sub + 1, extra.begin(), extra.end());
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 3;
        }
    }

    CLI::App app{"zetalaw: spectral sample-size analysis for two-class discovery problems"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cli::kToolVersion));

    std::string out_path = "-";
    int threads = default_threads();
    app.add_option("--config", config_path, "flat key = value file; command-line flags take precedence");
    app.add_option("--out", out_path, "report path, - for stdout");
    app.add_option("--threads", threads, "worker threads (env ZETALAW_THREADS)")->check(CLI::PositiveNumber);

    std::uint64_t seed = 0;
    if (const char* env = std::getenv("ZETALAW_SEED")) seed = std::strtoull(env, nullptr, 10);

    // predict
    cli::PredictOptions predict;
    std::string predict_n;
    double target = 0.0;
    auto* p = app.add_subcommand("predict", "zeta-law prediction of signal and AUC versus sample size");
    p->fallthrough();
    p->add_option("--beta", predict.params.beta, "signal decay exponent")->capture_default_str();
    p->add_option("--gamma", predict.params.gamma, "eigenvalue decay exponent")->capture_default_str();
    p->add_option("--cd", predict.params.c_d, "signal scale")->capture_default_str();
    p->add_option("--k-scale", predict.params.k_scale, "mode-count constant")->capture_default_str();
    p->add_option("--n", predict_n, "comma-separated sample sizes");
    auto* target_opt = p->add_option("--target-auc", target, "AUC to reach");
    p->add_option("--margin", predict.margin, "regime margin around beta = 1")->capture_default_str();

    // analyze
    cli::AnalyzeOptions analyze;
    analyze.out_dir = ".";
    auto* a = app.add_subcommand("analyze", "spectral diagnostics of a labeled data set");
    a->fallthrough();
    a->add_option("--data", analyze.data, "CSV with a header row")->required();
    a->add_option("--label", analyze.label_column, "label column")->capture_default_str();
    a->add_option("--ridge", analyze.ridge, "ridge added to every eigenvalue")->capture_default_str();
    a->add_option("--delta", analyze.delta, "failure probability of the error bound")->capture_default_str();
    a->add_option("--safety", analyze.safety, "gap must exceed bound / safety")->capture_default_str();
    a->add_option("--bound-constant", analyze.bound_constant, "constant of the error bound")->capture_default_str();
    a->add_option("--margin", analyze.margin, "regime margin")->capture_default_str();
    a->add_option("--out-dir", analyze.out_dir, "directory for plot data")->capture_default_str();
    a->add_flag("--svg", analyze.svg, "also write SVG charts");

    // curve
    cli::CurveOptions curve;
    curve.out_dir = ".";
    std::string curve_models = "diagonal_lda,ridge_lda";
    std::string curve_grid;
    std::string curve_horizons;
    double curve_gamma = 1.0;
    bool no_spectral_gamma = false;
    auto* c = app.add_subcommand("curve", "empirical learning curves, zeta-law fits and crossovers");
    c->fallthrough();
    c->add_option("--data", curve.data, "CSV with a header row")->required();
    c->add_option("--label", curve.label_column, "label column")->capture_default_str();
    c->add_option("--models", curve_models, "full_lda, diagonal_lda, ridge_lda[:ridge]")->capture_default_str();
    c->add_option("--grid", curve_grid, "comma-separated training sizes")->required();
    c->add_option("--repeats", curve.repeats, "subsamples per size")->capture_default_str();
    c->add_option("--holdout", curve.holdout, "holdout fraction")->capture_default_str();
    auto* curve_seed = c->add_option("--seed", curve.seed, "master seed (env ZETALAW_SEED)");
    c->add_option("--horizons", curve_horizons, "comma-separated sizes to extrapolate to");
    auto* gamma_opt = c->add_option("--gamma", curve_gamma, "fix gamma instead of estimating it");
    c->add_flag("--no-spectral-gamma", no_spectral_gamma, "fit gamma from the curves");
    c->add_option("--out-dir", curve.out_dir, "directory for plot data")->capture_default_str();
    c->add_flag("--svg", curve.svg, "also write an SVG chart");

    // crossmodal
    cli::CrossmodalOptions cross;
    cross.out_dir = ".";
    double cross_reg = 0.0;
    auto* x = app.add_subcommand("crossmodal", "cross-covariance spectra, CCA and HSIC for two modalities");
    x->fallthrough();
    x->add_option("--x", cross.x, "first modality CSV")->required();
    x->add_option("--y", cross.y, "second modality CSV")->required();
    auto* reg_opt = x->add_option("--reg", cross_reg, "whitening ridge (default 1e-6 of the top eigenvalue)");
    x->add_option("--kernel", cross.kernel, "linear, rbf or rbf:<bandwidth>")->capture_default_str();
    x->add_option("--n-perm", cross.n_perm, "permutations")->capture_default_str();
    x->add_option("--top-k", cross.top_k, "canonical pairs to report")->capture_default_str();
    auto* cross_seed = x->add_option("--seed", cross.seed, "master seed (env ZETALAW_SEED)");
    x->add_option("--out-dir", cross.out_dir, "directory for plot data")->capture_default_str();
    x->add_flag("--svg", cross.svg, "also write an SVG chart");

    // simulate
    cli::SimulateOptions sim;
    bool no_rotate = false;
    auto* s = app.add_subcommand("simulate", "synthetic data with known spectral ground truth");
    s->fallthrough();
    s->add_option("--kind", sim.kind, "two_class or multimodal")->capture_default_str();
    s->add_option("--beta", sim.params.beta, "signal decay exponent")->capture_default_str();
    s->add_option("--gamma", sim.params.gamma, "eigenvalue decay exponent")->capture_default_str();
    s->add_option("--cd", sim.params.c_d, "signal scale")->capture_default_str();
    s->add_option("--p", sim.p, "features (two_class)")->capture_default_str();
    s->add_option("--n", sim.n, "rows per class (two_class) or rows (multimodal)")->capture_default_str();
    s->add_flag("--no-rotate", no_rotate, "keep the eigenbasis axis-aligned");
    s->add_option("--rank", sim.rank, "shared latent rank (multimodal)")->capture_default_str();
    s->add_option("--p-x", sim.p_x, "first modality width")->capture_default_str();
    s->add_option("--p-y", sim.p_y, "second modality width")->capture_default_str();
    s->add_option("--noise-x", sim.noise_x, "first modality noise scale")->capture_default_str();
    s->add_option("--noise-y", sim.noise_y, "second modality noise scale")->capture_default_str();
    auto* sim_seed = s->add_option("--seed", sim.seed, "master seed (env ZETALAW_SEED)");
    s->add_option("--out-dir", sim.out_dir, "output directory")->capture_default_str();

    // dkw
    cli::DkwOptions dkw;
    std::int64_t dkw_n = 0;
    double dkw_eps = 0.0;
    std::string dkw_data;
    double dkw_q = 0.5;
    auto* d = app.add_subcommand("dkw", "DKW band width, sample size and centile bands");
    d->fallthrough();
    auto* dkw_n_opt = d->add_option("--n", dkw_n, "sample size");
    auto* dkw_eps_opt = d->add_option("--epsilon", dkw_eps, "band half-width");
    d->add_option("--delta", dkw.delta, "failure probability")->capture_default_str();
    auto* dkw_data_opt = d->add_option("--data", dkw_data, "CSV of samples");
    d->add_option("--column", dkw.column, "column of --data");
    auto* dkw_q_opt = d->add_option("--quantile", dkw_q, "centile for the band");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cli::Report report;
        if (p->parsed()) {
            predict.n = parse_list<std::int64_t>(predict_n, "--n");
            if (target_opt->count()) predict.target_auc = target;
            report = cli::cmd_predict(predict);
        } else if (a->parsed()) {
            report = cli::cmd_analyze(analyze);
        } else if (c->parsed()) {
            curve.models = split_list(curve_models);
            curve.grid = parse_list<int>(curve_grid, "--grid");
            curve.horizons = parse_list<std::int64_t>(curve_horizons, "--horizons");
            if (!curve_seed->count()) curve.seed = seed;
            if (gamma_opt->count()) curve.gamma = curve_gamma;
            curve.spectral_gamma = !no_spectral_gamma;
            curve.threads = threads;
            report = cli::cmd_curve(curve);
        } else if (x->parsed()) {
            if (reg_opt->count()) cross.reg = cross_reg;
            if (!cross_seed->count()) cross.seed = seed;
            cross.threads = threads;
            report = cli::cmd_crossmodal(cross);
        } else if (s->parsed()) {
            sim.rotate = !no_rotate;
            if (!sim_seed->count()) sim.seed = seed;
            report = cli::cmd_simulate(sim);
        } else if (d->parsed()) {
            if (dkw_n_opt->count()) dkw.n = dkw_n;
            if (dkw_eps_opt->count()) dkw.epsilon = dkw_eps;
            if (dkw_data_opt->count()) dkw.data = dkw_data;
            if (dkw_q_opt->count()) dkw.quantile = dkw_q;
            report = cli::cmd_dkw(dkw);
        }
        report.params["config"] = config_path;
        if (out_path == "-") {
            std::cout << report.to_json().dump(2) << '\n';
        } else {
            cli::write_report(report, out_path);
        }
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_code_for(e);
    }
}
