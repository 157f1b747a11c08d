#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zetalaw/cli/report.hpp"
#include "zetalaw/zeta_core.hpp"

namespace zetalaw::cli {

struct PredictOptions {
    ZetaLawParams params;
    std::vector<std::int64_t> n;
    std::optional<double> target_auc;
    double margin = 0.1;
};

struct AnalyzeOptions {
    std::string data;
    std::string label_column = "label";
    double ridge = 0.0;
    double delta = 0.05;
    double safety = 1.0;
    double bound_constant = 1.0;
    double margin = 0.1;
    std::string out_dir;  ///< plot files are skipped when empty
    bool svg = false;
};

struct CurveOptions {
    std::string data;
    std::string label_column = "label";
    std::vector<std::string> models{"diagonal_lda", "ridge_lda"};
    std::vector<int> grid;
    int repeats = 5;
    double holdout = 0.25;
    std::uint64_t seed = 0;
    int threads = 1;
    std::vector<std::int64_t> horizons;
    /// Fixed gamma for the fit; when empty and spectral_gamma is set, gamma is
    /// estimated from the eigenvalues of the full data before fitting.
    std::optional<double> gamma;
    bool spectral_gamma = true;
    std::string out_dir;
    bool svg = false;
};

struct CrossmodalOptions {
    std::string x;
    std::string y;
    std::optional<double> reg;
    std::string kernel = "linear";
    int n_perm = 999;
    int top_k = 3;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out_dir;
    bool svg = false;
};

struct SimulateOptions {
    std::string kind = "two_class";  ///< or "multimodal"
    ZetaLawParams params;
    int p = 100;
    int n = 5000;  ///< rows per class (two_class) or in total (multimodal)
    bool rotate = true;
    int rank = 3;
    int p_x = 10;
    int p_y = 10;
    double noise_x = 1.0;
    double noise_y = 1.0;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

struct DkwOptions {
    std::optional<std::int64_t> n;
    std::optional<double> epsilon;
    double delta = 0.05;
    std::optional<std::string> data;
    std::string column;
    std::optional<double> quantile;
};

Report cmd_predict(const PredictOptions& options);
Report cmd_analyze(const AnalyzeOptions& options);
Report cmd_curve(const CurveOptions& options);
Report cmd_crossmodal(const CrossmodalOptions& options);
Report cmd_simulate(const SimulateOptions& options);
Report cmd_dkw(const DkwOptions& options);

/// Process exit code for an exception escaping a command:
/// 2 usage, 3 data or format, 4 numerical or conditioning, 1 anything else.
int exit_code_for(const std::exception& error);

}  // namespace zetalaw::cli
