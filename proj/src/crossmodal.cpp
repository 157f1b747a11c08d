#include "zetalaw/crossmodal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "zetalaw/errors.hpp"
#include "zetalaw/parallel.hpp"
#include "zetalaw/rng.hpp"

namespace zetalaw {

namespace {

void check_pair(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Eigen::Index min_rows, const char* who) {
    if (x.rows() != y.rows()) {
        std::ostringstream msg;
        msg << who << ": row counts differ (" << x.rows() << " vs " << y.rows() << ")";
        throw ShapeError(msg.str());
    }
    if (x.rows() < min_rows) {
        std::ostringstream msg;
        msg << who << ": need at least " << min_rows << " rows";
        throw DomainError(msg.str());
    }
    if (x.cols() < 1 || y.cols() < 1) throw ShapeError(std::string(who) + ": empty modality");
    if (!x.allFinite() || !y.allFinite()) throw DataError(std::string(who) + ": non-finite entries");
}

Eigen::MatrixXd centered(const Eigen::MatrixXd& m) { return m.rowwise() - m.colwise().mean(); }

// (S + r I)^-1/2, with r chosen relative to lambda_1 when not given.
Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& s, std::optional<double> reg, double& used, const char* side) {
    const EigenSpectrum spec = eigendecompose(s);
    const double top = spec.values(0);
    if (!(top > 0.0)) throw DataError(std::string("whitened_operator: modality ") + side + " has zero variance");
    used = reg ? *reg : 1e-6 * top;
    const double smallest = spec.values(spec.dimension() - 1) + used;
    if (!(smallest > 1e-12 * (top + used))) {
        std::ostringstream msg;
        msg << "whitened_operator: covariance of " << side << " is rank-deficient (smallest eigenvalue "
            << spec.values(spec.dimension() - 1) << "); use a positive regularizer";
        throw ConditioningError(msg.str(), spec.values(spec.dimension() - 1));
    }
    const Eigen::VectorXd scale = (spec.values.array() + used).rsqrt();
    return spec.vectors * scale.asDiagonal() * spec.vectors.transpose();
}

std::optional<PowerLawFit> singular_decay(const Eigen::VectorXd& sigma) {
    if (sigma.size() == 0 || !(sigma(0) > 0.0)) return std::nullopt;
    int usable = 0;
    while (usable < sigma.size() && sigma(usable) > 1e-12 * sigma(0)) ++usable;
    if (usable < 3) return std::nullopt;
    const std::vector<double> values(sigma.data(), sigma.data() + usable);
    return fit_power_law(values, 1, usable);
}

CrossModalSpectrum from_svd(const Eigen::MatrixXd& op, bool whitened) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeThinU | Eigen::ComputeThinV);
    CrossModalSpectrum out;
    out.singular_values = svd.singularValues();
    out.left_directions = svd.matrixU();
    out.right_directions = svd.matrixV();
    out.whitened = whitened;
    out.decay = singular_decay(out.singular_values);
    return out;
}

}  // namespace

Eigen::MatrixXd cross_covariance(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    check_pair(x, y, 2, "cross_covariance");
    return centered(x).transpose() * centered(y) / static_cast<double>(x.rows() - 1);
}

CrossModalSpectrum cross_spectrum(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    return from_svd(cross_covariance(x, y), false);
}

CrossModalSpectrum whitened_operator(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, std::optional<double> reg) {
    check_pair(x, y, 3, "whitened_operator");
    if (reg && !(*reg >= 0.0)) throw DomainError("whitened_operator: reg must be non-negative");
    double rx = 0.0;
    double ry = 0.0;
    const Eigen::MatrixXd wx = inverse_sqrt(sample_covariance(x), reg, rx, "x");
    const Eigen::MatrixXd wy = inverse_sqrt(sample_covariance(y), reg, ry, "y");
    CrossModalSpectrum out = from_svd(wx * cross_covariance(x, y) * wy, true);
    out.reg_x = rx;
    out.reg_y = ry;
    return out;
}

CcaResult cca(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, int k, std::optional<double> reg) {
    check_pair(x, y, 3, "cca");
    if (k < 1 || k > std::min(x.cols(), y.cols())) throw DomainError("cca: k must lie in [1, min(p, q)]");
    if (reg && !(*reg >= 0.0)) throw DomainError("cca: reg must be non-negative");
    double rx = 0.0;
    double ry = 0.0;
    const Eigen::MatrixXd wx = inverse_sqrt(sample_covariance(x), reg, rx, "x");
    const Eigen::MatrixXd wy = inverse_sqrt(sample_covariance(y), reg, ry, "y");
    const CrossModalSpectrum m = from_svd(wx * cross_covariance(x, y) * wy, true);
    return {m.singular_values.head(k), wx * m.left_directions.leftCols(k), wy * m.right_directions.leftCols(k)};
}

KernelSpec KernelSpec::parse(const std::string& text) {
    if (text == "linear") return linear();
    if (text == "rbf") return rbf();
    if (text.rfind("rbf:", 0) == 0) {
        std::size_t used = 0;
        double bw = 0.0;
        try {
            bw = std::stod(text.substr(4), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size() - 4 || !(bw > 0.0) || !std::isfinite(bw))
            throw DomainError("kernel: bandwidth must be a positive number: " + text);
        return rbf(bw);
    }
    throw DomainError("kernel: expected linear, rbf or rbf:<bandwidth>, got " + text);
}

std::string KernelSpec::name() const {
    if (kind == Kind::Linear) return "linear";
    if (!bandwidth) return "rbf";
    std::ostringstream out;
    out << "rbf:" << *bandwidth;
    return out.str();
}

double median_pairwise_distance(const Eigen::MatrixXd& x) {
    const Eigen::Index n = x.rows();
    if (n < 2) throw DomainError("median_pairwise_distance: need at least two rows");
    const Eigen::Index m = std::min<Eigen::Index>(n, 1000);
    Eigen::MatrixXd pts(m, x.cols());
    for (Eigen::Index i = 0; i < m; ++i) pts.row(i) = x.row(i * n / m);

    std::vector<double> dist;
    dist.reserve(static_cast<std::size_t>(m * (m - 1) / 2));
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i + 1; j < m; ++j) dist.push_back((pts.row(i) - pts.row(j)).norm());
    auto median = [](std::vector<double>& v) {
        auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
        std::nth_element(v.begin(), mid, v.end());
        return *mid;
    };
    const double med = median(dist);
    if (med > 0.0) return med;
    std::erase_if(dist, [](double d) { return d == 0.0; });
    if (dist.empty()) throw DataError("rbf kernel: all points are identical, bandwidth is degenerate");
    return median(dist);
}

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& x, const KernelSpec& kernel) {
    if (!x.allFinite()) throw DataError("gram_matrix: non-finite entries");
    if (kernel.kind == KernelSpec::Kind::Linear) return x * x.transpose();
    const double bw = kernel.bandwidth ? *kernel.bandwidth : median_pairwise_distance(x);
    if (!(bw > 0.0)) throw DomainError("gram_matrix: bandwidth must be positive");
    const Eigen::VectorXd sq = x.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = (-2.0 * x * x.transpose()).colwise() + sq;
    d2.rowwise() += sq.transpose();
    return (d2.array().max(0.0) * (-0.5 / (bw * bw))).exp().matrix();
}

namespace {

Eigen::MatrixXd double_center(const Eigen::MatrixXd& k) {
    const Eigen::VectorXd row_mean = k.rowwise().mean();
    const Eigen::RowVectorXd col_mean = k.colwise().mean();
    Eigen::MatrixXd out = k.colwise() - row_mean;
    out.rowwise() -= col_mean;
    out.array() += k.mean();
    return out;
}

}  // namespace

double hsic(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const KernelSpec& kernel_x,
            const KernelSpec& kernel_y) {
    check_pair(x, y, 3, "hsic");
    const Eigen::MatrixXd kc = double_center(gram_matrix(x, kernel_x));
    const Eigen::MatrixXd l = gram_matrix(y, kernel_y);
    const double denom = static_cast<double>(x.rows() - 1);
    return std::max(0.0, kc.cwiseProduct(l).sum() / (denom * denom));
}

double hsic_permutation_test(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const KernelSpec& kernel_x,
                             const KernelSpec& kernel_y, int n_perm, std::uint64_t seed, int threads) {
    check_pair(x, y, 3, "hsic_permutation_test");
    if (n_perm < 99) throw DomainError("hsic_permutation_test: n_perm must be at least 99");
    const Eigen::MatrixXd kc = double_center(gram_matrix(x, kernel_x));
    const Eigen::MatrixXd l = gram_matrix(y, kernel_y);
    const Eigen::Index n = x.rows();
    const double observed = kc.cwiseProduct(l).sum();

    std::vector<char> exceeds(static_cast<std::size_t>(n_perm), 0);
    parallel_for(exceeds.size(), threads, [&](std::size_t i) {
        Rng rng(derive_seed(seed, {i}));
        const auto perm = rng.permutation(static_cast<std::size_t>(n));
        double stat = 0.0;
        for (Eigen::Index c = 0; c < n; ++c) {
            const auto pc = static_cast<Eigen::Index>(perm[static_cast<std::size_t>(c)]);
            for (Eigen::Index r = 0; r < n; ++r) stat += kc(r, c) * l(static_cast<Eigen::Index>(perm[r]), pc);
        }
        // Tolerance absorbs summation-order noise so exact ties count as ties.
        exceeds[i] = stat >= observed - 1e-12 * std::abs(observed);
    });
    const auto count = std::count(exceeds.begin(), exceeds.end(), 1);
    return static_cast<double>(1 + count) / static_cast<double>(1 + n_perm);
}

DiseaseOperator DiseaseOperator::from_contrasts(const Eigen::MatrixXd& contrasts) {
    if (contrasts.rows() < 1 || contrasts.cols() < 1) throw ShapeError("disease operator: empty contrast matrix");
    if (!contrasts.allFinite()) throw DataError("disease operator: non-finite contrasts");
    const Eigen::MatrixXd gram = contrasts.rows() <= contrasts.cols()
                                     ? Eigen::MatrixXd(contrasts * contrasts.transpose())
                                     : Eigen::MatrixXd(contrasts.transpose() * contrasts);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    Eigen::VectorXd values = solver.eigenvalues().reverse().cwiseMax(0.0);
    return {contrasts, values};
}

DiseaseOperator DiseaseOperator::from_groups(const Eigen::MatrixXd& controls, std::span<const Eigen::MatrixXd> cases) {
    if (cases.empty()) throw DomainError("disease operator: no disease groups");
    if (controls.rows() < 2) throw DomainError("disease operator: need at least two controls");
    const Eigen::RowVectorXd mean0 = controls.colwise().mean();
    const Eigen::RowVectorXd sd =
        ((controls.rowwise() - mean0).colwise().squaredNorm() / static_cast<double>(controls.rows() - 1))
            .cwiseSqrt();
    std::vector<Eigen::Index> flat;
    for (Eigen::Index j = 0; j < sd.size(); ++j)
        if (!(sd(j) > 0.0)) flat.push_back(j);
    if (!flat.empty()) {
        std::ostringstream msg;
        msg << "disease operator: control feature(s) with zero variance:";
        for (auto j : flat) msg << ' ' << j;
        throw DataError(msg.str());
    }
    Eigen::MatrixXd contrasts(controls.cols(), static_cast<Eigen::Index>(cases.size()));
    for (std::size_t d = 0; d < cases.size(); ++d) {
        if (cases[d].cols() != controls.cols()) throw ShapeError("disease operator: feature counts differ");
        if (cases[d].rows() < 1) throw DomainError("disease operator: empty disease group");
        contrasts.col(static_cast<Eigen::Index>(d)) =
            ((cases[d].colwise().mean() - mean0).array() / sd.array()).transpose();
    }
    return from_contrasts(contrasts);
}

int disease_operator_rank(const DiseaseOperator& op, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("disease_operator_rank: rel_tol must lie in (0, 1)");
    if (op.gram_eigenvalues.size() == 0 || !(op.gram_eigenvalues(0) > 0.0))
        throw DomainError("disease_operator_rank: all contrasts are zero");
    const double cut = rel_tol * op.gram_eigenvalues(0);
    return static_cast<int>((op.gram_eigenvalues.array() > cut).count());
}

double joint_sample_ratio(int r, int d_count) {
    if (d_count < 1 || r < 1 || r > d_count) throw DomainError("joint_sample_ratio: need 1 <= r <= D");
    return static_cast<double>(r) / static_cast<double>(d_count);
}

HardestDisease hardest_disease_sample_size(std::span<const double> energies, double scale) {
    if (energies.empty()) throw DomainError("hardest_disease_sample_size: no diseases");
    if (!(scale > 0.0)) throw DomainError("hardest_disease_sample_size: scale must be positive");
    HardestDisease out;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (!(energies[i] > 0.0) || !std::isfinite(energies[i]))
            throw DomainError("hardest_disease_sample_size: energies must be positive");
        out.per_disease.push_back(scale / energies[i]);
        if (out.per_disease[i] > out.required) {
            out.required = out.per_disease[i];
            out.hardest = i;
        }
    }
    return out;
}

}  // namespace zetalaw
