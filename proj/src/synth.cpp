#include "zetalaw/synth.hpp"

#include <cmath>

#include "zetalaw/errors.hpp"

namespace zetalaw {

namespace {

constexpr Eigen::Index kBlockRows = 256;

// Stream identifiers for derive_seed.
enum Stream : std::uint64_t { kRotation = 1, kRows = 2, kLoadings = 3, kLatent = 4, kNoise = 5 };

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
    return m;
}

}  // namespace

Eigen::MatrixXd GroundTruthModel::covariance() const {
    return basis * eigenvalues.asDiagonal() * basis.transpose();
}

double GroundTruthModel::population_delta_sq() const {
    return (alphas.array().square() / eigenvalues.array()).sum();
}

Eigen::Index LabeledDataset::count(int label) const {
    return static_cast<Eigen::Index>(std::count(labels.begin(), labels.end(), label));
}

Eigen::MatrixXd LabeledDataset::rows_with(int label) const {
    Eigen::MatrixXd out(count(label), features.cols());
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < features.rows(); ++i)
        if (labels[static_cast<std::size_t>(i)] == label) out.row(r++) = features.row(i);
    return out;
}

Eigen::MatrixXd LabeledDataset::rows(std::span<const std::size_t> index) const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(index.size()), features.cols());
    for (std::size_t r = 0; r < index.size(); ++r)
        out.row(static_cast<Eigen::Index>(r)) = features.row(static_cast<Eigen::Index>(index[r]));
    return out;
}

double MultimodalDataset::population_correlation(std::size_t a, std::size_t b) const {
    const auto& sa = specs.at(a);
    const auto& sb = specs.at(b);
    const double la = sa.loading_scale * sa.loading_scale;
    const double lb = sb.loading_scale * sb.loading_scale;
    const double na = sa.noise_scale * sa.noise_scale;
    const double nb = sb.noise_scale * sb.noise_scale;
    if (a == b) return 1.0;
    return sa.loading_scale * sb.loading_scale / std::sqrt((la + na) * (lb + nb));
}

Eigen::MatrixXd haar_rotation(Eigen::Index p, Rng& rng) {
    const Eigen::MatrixXd g = gaussian_matrix(p, p, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(p, p);
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fixing sign(diag R) > 0 makes Q exactly Haar.
    for (Eigen::Index j = 0; j < p; ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    return q;
}

Eigen::MatrixXd random_orthonormal_columns(Eigen::Index p, Eigen::Index r, Rng& rng) {
    if (r > p) throw ShapeError("random_orthonormal_columns: more columns than rows");
    return haar_rotation(p, rng).leftCols(r);
}

GroundTruthModel build_ground_truth(int p, const ZetaLawParams& params, bool rotate, std::uint64_t seed) {
    if (p < 2) throw DomainError("build_ground_truth: dimension must be at least 2");
    params.validate();
    GroundTruthModel model;
    model.params = params;
    model.eigenvalues.resize(p);
    model.alphas.resize(p);
    for (int k = 1; k <= p; ++k) {
        const double lambda = std::pow(static_cast<double>(k), -params.gamma);
        model.eigenvalues(k - 1) = lambda;
        model.alphas(k - 1) = std::sqrt(params.c_d * std::pow(static_cast<double>(k), -params.beta) * lambda);
    }
    if (rotate) {
        Rng rng(derive_seed(seed, {kRotation}));
        model.basis = haar_rotation(p, rng);
    } else {
        model.basis = Eigen::MatrixXd::Identity(p, p);
    }
    model.contrast = model.basis * model.alphas;
    return model;
}

LabeledDataset sample_two_class(const GroundTruthModel& model, int n0, int n1, std::uint64_t seed) {
    if (n0 < 1 || n1 < 1) throw DomainError("sample_two_class: each class needs at least one row");
    const Eigen::Index p = model.dimension();
    const Eigen::Index n = static_cast<Eigen::Index>(n0) + n1;
    const Eigen::VectorXd scale = model.eigenvalues.cwiseSqrt();
    // Rows are z_i * diag(sqrt(lambda)) * U^T (+ d^T for cases).
    const Eigen::MatrixXd transform = scale.asDiagonal() * model.basis.transpose();

    LabeledDataset out;
    out.features.resize(n, p);
    out.labels.assign(static_cast<std::size_t>(n), 0);
    std::fill(out.labels.begin() + n0, out.labels.end(), 1);

    for (Eigen::Index start = 0; start < n; start += kBlockRows) {
        const Eigen::Index rows = std::min(kBlockRows, n - start);
        Rng rng(derive_seed(seed, {kRows, static_cast<std::uint64_t>(start / kBlockRows)}));
        out.features.middleRows(start, rows) = gaussian_matrix(rows, p, rng) * transform;
    }
    out.features.bottomRows(n1).rowwise() += model.contrast.transpose();
    return out;
}

MultimodalDataset sample_multimodal(int shared_rank, std::span<const ModalitySpec> specs, int n, std::uint64_t seed) {
    if (shared_rank < 1) throw DomainError("sample_multimodal: shared rank must be at least 1");
    if (n < 1) throw DomainError("sample_multimodal: n must be at least 1");
    if (specs.empty()) throw DomainError("sample_multimodal: no modalities");
    for (const auto& s : specs) {
        if (s.dimension < shared_rank) throw ShapeError("sample_multimodal: modality dimension below shared rank");
        if (!(s.noise_scale >= 0.0) || !(s.loading_scale >= 0.0))
            throw DomainError("sample_multimodal: scales must be non-negative");
    }

    MultimodalDataset out;
    out.shared_rank = shared_rank;
    out.specs.assign(specs.begin(), specs.end());

    Eigen::MatrixXd latent(n, shared_rank);
    for (Eigen::Index start = 0; start < n; start += kBlockRows) {
        const Eigen::Index rows = std::min<Eigen::Index>(kBlockRows, n - start);
        Rng rng(derive_seed(seed, {kLatent, static_cast<std::uint64_t>(start / kBlockRows)}));
        latent.middleRows(start, rows) = gaussian_matrix(rows, shared_rank, rng);
    }

    for (std::size_t m = 0; m < specs.size(); ++m) {
        const auto& spec = specs[m];
        Rng loading_rng(derive_seed(seed, {kLoadings, m}));
        Eigen::MatrixXd w = random_orthonormal_columns(spec.dimension, shared_rank, loading_rng);
        Eigen::MatrixXd x = spec.loading_scale * latent * w.transpose();
        for (Eigen::Index start = 0; start < n; start += kBlockRows) {
            const Eigen::Index rows = std::min<Eigen::Index>(kBlockRows, n - start);
            Rng rng(derive_seed(seed, {kNoise, m, static_cast<std::uint64_t>(start / kBlockRows)}));
            x.middleRows(start, rows) += spec.noise_scale * gaussian_matrix(rows, spec.dimension, rng);
        }
        out.modalities.push_back(std::move(x));
        out.loadings.push_back(std::move(w));
    }
    return out;
}

}  // namespace zetalaw
