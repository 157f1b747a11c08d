#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "zetalaw/errors.hpp"
#include "zetalaw/rng.hpp"
#include "zetalaw/spectral.hpp"

using namespace zetalaw;

namespace {

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
    return m;
}

Eigen::MatrixXd random_symmetric(Eigen::Index p, Rng& rng) {
    const Eigen::MatrixXd g = gaussian_matrix(p, p, rng);
    return 0.5 * (g + g.transpose());
}

Eigen::MatrixXd random_orthogonal(Eigen::Index p, Rng& rng) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian_matrix(p, p, rng));
    return qr.householderQ() * Eigen::MatrixXd::Identity(p, p);
}

}  // namespace

TEST_CASE("sample covariance") {
    Eigen::MatrixXd two(2, 2);
    two << 0, 0, 2, 0;
    Eigen::MatrixXd expected(2, 2);
    expected << 2, 0, 0, 0;
    CHECK(sample_covariance(two).isApprox(expected));

    const Eigen::MatrixXd constant = Eigen::MatrixXd::Constant(10, 3, 4.2);
    CHECK(sample_covariance(constant).cwiseAbs().maxCoeff() < 1e-14);

    Rng rng(5);
    Eigen::MatrixXd x = gaussian_matrix(40, 3, rng);
    Eigen::MatrixXd dup(40, 4);
    dup << x, x.col(1);
    const Eigen::MatrixXd c = sample_covariance(dup);
    CHECK((c - c.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(c.row(3).isApprox(c.row(1)));
    CHECK(c.col(3).isApprox(c.col(1)));
    CHECK(eigendecompose(c).values(3) < 1e-12);

    CHECK_THROWS_AS(sample_covariance(Eigen::MatrixXd::Zero(1, 3)), DomainError);
    Eigen::MatrixXd bad = x;
    bad(3, 1) = std::nan("");
    CHECK_THROWS_AS(sample_covariance(bad), DataError);
}

TEST_CASE("eigendecomposition") {
    const auto id = eigendecompose(Eigen::MatrixXd::Identity(3, 3));
    CHECK(id.values.isApprox(Eigen::Vector3d(1, 1, 1)));

    Eigen::MatrixXd diag = Eigen::Vector2d(1, 4).asDiagonal();
    const auto d = eigendecompose(diag);
    CHECK(d.values.isApprox(Eigen::Vector2d(4, 1)));
    CHECK(d.vectors.col(0).isApprox(Eigen::Vector2d(0, 1)));
    CHECK(d.vectors.col(1).isApprox(Eigen::Vector2d(1, 0)));

    Eigen::MatrixXd m(2, 2);
    m << 2, 1, 1, 2;
    CHECK(eigendecompose(m).values.isApprox(Eigen::Vector2d(3, 1)));

    CHECK_THROWS_AS(eigendecompose(Eigen::MatrixXd::Zero(2, 3)), DomainError);
    Eigen::MatrixXd asym(2, 2);
    asym << 1, 2, 0, 1;
    CHECK_THROWS_AS(eigendecompose(asym), DomainError);

    SUBCASE("residuals, reconstruction and orientation on random PSD matrices") {
        Rng rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::Index p = 2 + static_cast<Eigen::Index>(rng.below(40));
            const Eigen::MatrixXd g = gaussian_matrix(p + 3, p, rng);
            const Eigen::MatrixXd sigma = g.transpose() * g / static_cast<double>(p);
            const auto s = eigendecompose(sigma);
            const double scale = std::max(1.0, s.values(0));
            for (Eigen::Index k = 0; k < p; ++k) {
                CHECK((sigma * s.vectors.col(k) - s.values(k) * s.vectors.col(k)).norm() <= 1e-8 * scale);
                if (k > 0) CHECK(s.values(k) <= s.values(k - 1));
                CHECK(s.values(k) >= 0.0);
                Eigen::Index arg = 0;
                s.vectors.col(k).cwiseAbs().maxCoeff(&arg);
                CHECK(s.vectors(arg, k) > 0.0);
            }
            const Eigen::MatrixXd rebuilt = s.vectors * s.values.asDiagonal() * s.vectors.transpose();
            CHECK(oracle::op_norm(rebuilt - sigma) <= 1e-8 * scale);
            const Eigen::MatrixXd gram = s.vectors.transpose() * s.vectors;
            CHECK((gram - Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff() <= 1e-8);
        }
    }
}

TEST_CASE("effective rank") {
    CHECK(effective_rank(eigendecompose(Eigen::MatrixXd::Identity(10, 10))) == doctest::Approx(10.0));
    Eigen::VectorXd v(5);
    v << 4, 1, 1, 1, 1;
    CHECK(effective_rank(EigenSpectrum::diagonal(v)) == doctest::Approx(2.0));
    Eigen::VectorXd spike = Eigen::VectorXd::Zero(6);
    spike(0) = 3.0;
    CHECK(effective_rank(EigenSpectrum::diagonal(spike)) == 1.0);
    CHECK_THROWS_AS(effective_rank(EigenSpectrum::diagonal(Eigen::VectorXd::Zero(3))), DomainError);

    Rng rng(2);
    const Eigen::MatrixXd g = gaussian_matrix(12, 8, rng);
    const Eigen::MatrixXd sigma = g.transpose() * g;
    for (double a : {1e-3, 0.5, 7.0, 1e4})
        CHECK(effective_rank(eigendecompose(a * sigma)) == doctest::Approx(effective_rank(eigendecompose(sigma))));
}

TEST_CASE("operator error bound") {
    for (int p : {3, 10, 50}) {
        const auto s = eigendecompose(Eigen::MatrixXd::Identity(p, p));
        // r_eff + log(1/delta) = 2p at n = p.
        CHECK(operator_error_bound(s, p, std::exp(-p), 1.0) == doctest::Approx(std::sqrt(2.0) + 2.0));
        CHECK(operator_error_bound(s, p, 0.05, 2.0) == doctest::Approx(2.0 * operator_error_bound(s, p, 0.05, 1.0)));
        double previous = operator_error_bound(s, 1, 0.05);
        for (std::int64_t n = 2; n < 10'000'000; n *= 3) {
            const double b = operator_error_bound(s, n, 0.05);
            CHECK(b < previous);
            previous = b;
        }
        CHECK(previous < 0.01);
    }
    const auto s = eigendecompose(Eigen::MatrixXd::Identity(3, 3));
    CHECK_THROWS_AS(operator_error_bound(s, 10, 1.0), DomainError);
    CHECK_THROWS_AS(operator_error_bound(s, 10, 0.0), DomainError);
}

TEST_CASE("identifiable mode count") {
    Eigen::VectorXd v(4);
    v << 10, 5, 4.9, 1;
    const auto s = EigenSpectrum::diagonal(v);
    CHECK(identifiable_mode_count(s, 0.5, 0.5) == 1);
    CHECK(identifiable_mode_count(s, 0.0) == 4);
    CHECK(identifiable_mode_count(s, 0.04, 0.5) == 4);

    Eigen::VectorXd tied(5);
    tied << 5, 3, 3, 2, 1;
    CHECK(identifiable_mode_count(EigenSpectrum::diagonal(tied), 0.0) == 1);
    CHECK(identifiable_mode_count(EigenSpectrum::diagonal(Eigen::VectorXd::Constant(6, 2.0)), 1e-9) == 0);
    CHECK(identifiable_mode_count(EigenSpectrum::diagonal(Eigen::VectorXd::Constant(6, 2.0)), 0.0) == 0);
    CHECK_THROWS_AS(identifiable_mode_count(s, -1.0), DomainError);
    CHECK_THROWS_AS(identifiable_mode_count(s, 1.0, 0.0), DomainError);
}

TEST_CASE("power-law fitting") {
    std::vector<double> exact(50), scaled(50);
    for (int k = 1; k <= 50; ++k) {
        exact[k - 1] = std::pow(k, -2.0);
        scaled[k - 1] = 3.0 / k;
    }
    const auto f = fit_power_law(exact, 1, 50);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0));
    const auto g = fit_power_law(scaled, 1, 50);
    CHECK(g.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.log_intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    std::vector<double> w(50);
    for (int k = 1; k <= 50; ++k) w[k - 1] = 1.0 / k;
    CHECK(fit_power_law(scaled, 2, 20, w).slope == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("noisy series averages to the true slope") {
        double mean = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng(seed);
            std::vector<double> s(50);
            for (int k = 1; k <= 50; ++k) s[k - 1] = std::pow(k, -1.5) * std::exp(0.05 * rng.normal());
            const auto fit = fit_power_law(s, 1, 50);
            CHECK(fit.r_squared >= 0.0);
            CHECK(fit.r_squared <= 1.0);
            mean += fit.slope / 20.0;
        }
        CHECK(std::abs(mean - 1.5) <= 0.05);
    }

    std::vector<double> with_zero = exact;
    with_zero[4] = 0.0;
    CHECK_THROWS_AS(fit_power_law(with_zero, 1, 10), DomainError);
    CHECK_NOTHROW(fit_power_law(with_zero, 6, 10));
    CHECK_THROWS_AS(fit_power_law(exact, 1, 2), DomainError);
    CHECK_THROWS_AS(fit_power_law(exact, 0, 10), DomainError);
    CHECK_THROWS_AS(fit_power_law(exact, 40, 51), DomainError);
}

TEST_CASE("Weyl inequality on random perturbations") {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index p = 2 + static_cast<Eigen::Index>(rng.below(30));
        const Eigen::MatrixXd sigma = random_symmetric(p, rng);
        const Eigen::MatrixXd e = random_symmetric(p, rng) * std::pow(10.0, -3.0 + 3.0 * rng.uniform());
        const auto a = eigendecompose(sigma);
        const auto b = eigendecompose(sigma + e);
        const double bound = operator_norm(e);
        for (Eigen::Index k = 0; k < p; ++k) CHECK(std::abs(b.values(k) - a.values(k)) <= bound + 1e-8);
    }
}

TEST_CASE("Davis-Kahan sin-theta bound on random perturbations") {
    Rng rng(202);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index p = 3 + static_cast<Eigen::Index>(rng.below(20));
        Eigen::VectorXd lambda(p);
        double level = 10.0;
        for (Eigen::Index k = 0; k < p; ++k) {
            lambda(k) = level;
            level -= 0.1 + rng.uniform();
        }
        const Eigen::MatrixXd q = random_orthogonal(p, rng);
        const Eigen::MatrixXd sigma = q * lambda.asDiagonal() * q.transpose();
        const double min_gap = (lambda.head(p - 1) - lambda.tail(p - 1)).minCoeff();
        Eigen::MatrixXd e = random_symmetric(p, rng);
        e *= (0.5 * min_gap * rng.uniform()) / operator_norm(e);
        const double e_norm = operator_norm(e);
        REQUIRE(e_norm < min_gap / 2);

        const auto truth = eigendecompose(sigma);
        const auto perturbed = eigendecompose(sigma + e);
        for (Eigen::Index k = 0; k < p; ++k) {
            double gap = std::numeric_limits<double>::infinity();
            if (k > 0) gap = std::min(gap, truth.values(k - 1) - truth.values(k));
            if (k + 1 < p) gap = std::min(gap, truth.values(k) - truth.values(k + 1));
            CHECK(sin_theta(truth.vectors.col(k), perturbed.vectors.col(k)) <= 2.0 * e_norm / gap + 1e-8);
        }
    }
}
