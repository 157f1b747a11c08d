#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zetalaw/classify.hpp"
#include "zetalaw/errors.hpp"
#include "zetalaw/spectral.hpp"
#include "zetalaw/synth.hpp"
#include "zetalaw/zeta_core.hpp"

using namespace zetalaw;

TEST_CASE("ground-truth construction") {
    const auto model = build_ground_truth(10, {1.0, 1.0, 1.0, 1.0}, false, 0);
    CHECK(model.population_delta_sq() == doctest::Approx(2.9290).epsilon(1e-4));
    CHECK(std::abs(model.population_delta_sq() - harmonic_partial_sum(1.0, 10)) < 1e-12);

    const auto zero = build_ground_truth(10, {1.0, 1.0, 0.0, 1.0}, true, 3);
    CHECK(zero.contrast.norm() == 0.0);
    CHECK(zero.population_delta_sq() == 0.0);

    for (double beta : {0.5, 1.0, 2.0})
        for (double cd : {0.3, 1.0, 4.0}) {
            const ZetaLawParams params{beta, 0.7, cd, 1.0};
            const auto plain = build_ground_truth(40, params, false, 11);
            const auto rotated = build_ground_truth(40, params, true, 11);
            const double expected = cd * harmonic_partial_sum(beta, 40);
            CHECK(std::abs(plain.population_delta_sq() - expected) <= 1e-12 * std::max(1.0, expected));
            const double via_rotation = mahalanobis_distance_sq(rotated.contrast, rotated.covariance());
            CHECK(via_rotation == doctest::Approx(expected).epsilon(1e-9));
        }

    SUBCASE("true contrast reproduces c_d k^-beta energies") {
        const ZetaLawParams params{1.3, 0.8, 2.0, 1.0};
        const auto m = build_ground_truth(30, params, false, 0);
        const auto dec = contrast_decomposition(m.contrast, EigenSpectrum::diagonal(m.eigenvalues));
        for (int k = 1; k <= 30; ++k)
            CHECK(std::abs(dec.energies(k - 1) - 2.0 * std::pow(k, -1.3)) <= 1e-14 * std::max(1.0, dec.energies(k - 1)));
    }
    SUBCASE("rotation is orthogonal and seeded") {
        const auto a = build_ground_truth(25, {}, true, 99);
        const auto b = build_ground_truth(25, {}, true, 99);
        const auto c = build_ground_truth(25, {}, true, 100);
        CHECK((a.basis.transpose() * a.basis - Eigen::MatrixXd::Identity(25, 25)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(a.basis == b.basis);
        CHECK(a.basis != c.basis);
    }
    CHECK_THROWS_AS(build_ground_truth(1, {}, false, 0), DomainError);
    CHECK_THROWS_AS(build_ground_truth(5, {0.0, 1.0, 1.0, 1.0}, false, 0), DomainError);
}

TEST_CASE("two-class sampling") {
    const auto model = build_ground_truth(6, {1.0, 1.0, 1.0, 1.0}, true, 2);
    const auto data = sample_two_class(model, 100000, 100000, 7);
    const Eigen::VectorXd m0 = data.rows_with(0).colwise().mean();
    const Eigen::VectorXd m1 = data.rows_with(1).colwise().mean();
    CHECK(m0.cwiseAbs().maxCoeff() < 0.02);
    CHECK((m1 - model.contrast).cwiseAbs().maxCoeff() < 0.02);
    const Eigen::MatrixXd cov = pooled_covariance(data.rows_with(0), data.rows_with(1));
    CHECK(oracle::op_norm(cov - model.covariance()) < 0.02);

    const auto tiny = sample_two_class(model, 1, 1, 1);
    CHECK(tiny.size() == 2);
    CHECK(tiny.labels == std::vector<int>{0, 1});

    const auto again = sample_two_class(model, 300, 200, 7);
    const auto same = sample_two_class(model, 300, 200, 7);
    CHECK(again.features == same.features);
    CHECK(again.labels == same.labels);
    CHECK(again.features != sample_two_class(model, 300, 200, 8).features);
    CHECK_THROWS_AS(sample_two_class(model, 0, 3, 1), DomainError);
}

TEST_CASE("sample covariance spectra recover the power law") {
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto model = build_ground_truth(50, {1.0, 1.0, 1.0, 1.0}, true, seed);
        const auto data = sample_two_class(model, 10000, 1, seed + 1000);
        const auto spectrum = eigendecompose(sample_covariance(data.rows_with(0)));
        const std::vector<double> values(spectrum.values.data(), spectrum.values.data() + 50);
        const auto fit = fit_power_law(values, 1, 15);
        if (std::abs(fit.slope - 1.0) <= 0.1) ++successes;
    }
    CHECK(successes >= 18);
}

TEST_CASE("sample covariance concentrates within the operator bound") {
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto model = build_ground_truth(20, {1.0, 1.0, 1.0, 1.0}, true, seed);
        const auto data = sample_two_class(model, 10000, 1, seed + 5000);
        const Eigen::MatrixXd error = sample_covariance(data.rows_with(0)) - model.covariance();
        const auto truth = EigenSpectrum::diagonal(model.eigenvalues);
        if (operator_norm(error) < operator_error_bound(truth, 10000, 0.01, 2.0)) ++inside;
    }
    CHECK(inside >= 99);
}

TEST_CASE("multimodal sampling") {
    const std::vector<ModalitySpec> specs{{5, 1.0, 1.0}, {4, 1.0, 1.0}};
    const auto data = sample_multimodal(1, specs, 100, 3);
    REQUIRE(data.modalities.size() == 2);
    CHECK(data.modalities[0].rows() == 100);
    CHECK(data.modalities[0].cols() == 5);
    CHECK(data.modalities[1].cols() == 4);
    CHECK(data.population_correlation(0, 1) == doctest::Approx(0.5));
    CHECK((data.loadings[0].transpose() * data.loadings[0] - Eigen::MatrixXd::Identity(1, 1)).norm() < 1e-12);

    const std::vector<ModalitySpec> noiseless{{6, 0.0, 2.0}, {3, 0.0, 0.5}};
    CHECK(sample_multimodal(2, noiseless, 50, 1).population_correlation(0, 1) == doctest::Approx(1.0));

    const auto again = sample_multimodal(1, specs, 100, 3);
    CHECK(again.modalities[0] == data.modalities[0]);
    CHECK(again.modalities[1] == data.modalities[1]);

    const std::vector<ModalitySpec> narrow{{2, 1.0, 1.0}, {4, 1.0, 1.0}};
    CHECK_THROWS_AS(sample_multimodal(3, narrow, 10, 0), ShapeError);
    CHECK_THROWS_AS(sample_multimodal(0, specs, 10, 0), DomainError);
}
