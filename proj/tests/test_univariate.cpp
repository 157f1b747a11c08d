#include <doctest.h>

#include <cmath>
#include <limits>

#include "zetalaw/errors.hpp"
#include "zetalaw/rng.hpp"
#include "zetalaw/univariate.hpp"

using namespace zetalaw;

TEST_CASE("DKW epsilon") {
    CHECK(dkw_epsilon(1000, 0.05) == doctest::Approx(std::sqrt(std::log(40.0) / 2000.0)));
    CHECK(std::abs(dkw_epsilon(1000, 0.05) - 0.04295) < 5e-6);
    CHECK(dkw_epsilon(4000, 0.05) == doctest::Approx(dkw_epsilon(1000, 0.05) / 2.0));
    CHECK(dkw_epsilon(10, 1.0) == doctest::Approx(std::sqrt(std::log(2.0) / 20.0)));
    CHECK(dkw_epsilon(10, 1.0) > 0.0);
    CHECK_THROWS_AS(dkw_epsilon(10, 2.0), DomainError);
    CHECK_THROWS_AS(dkw_epsilon(10, 0.0), DomainError);
    CHECK_THROWS_AS(dkw_epsilon(0, 0.5), DomainError);
}

TEST_CASE("DKW sample size") {
    CHECK(dkw_sample_size(0.01, 0.05) == 18445);
    const auto n = dkw_sample_size(0.04295, 0.05);
    CHECK(std::abs(n - 1000) <= 1);
    for (double eps : {0.3, 0.05, 0.0123, 0.001})
        for (double delta : {0.5, 0.05, 1e-4}) {
            const auto m = dkw_sample_size(eps, delta);
            CHECK(dkw_epsilon(m, delta) <= eps);
            if (m > 1) CHECK(dkw_epsilon(m - 1, delta) > eps);
        }
    CHECK_THROWS_AS(dkw_sample_size(0.0, 0.05), DomainError);
    CHECK_THROWS_AS(dkw_sample_size(0.1, 1.0), DomainError);
}

TEST_CASE("empirical CDF is a valid step function") {
    EmpiricalCdf cdf({3.0, 1.0, 2.0, 2.0, 5.0});
    CHECK(cdf(0.5) == 0.0);
    CHECK(cdf(1.0) == 0.2);
    CHECK(cdf(2.0) == 0.6);
    CHECK(cdf(4.9) == 0.8);
    CHECK(cdf(100.0) == 1.0);
    CHECK(cdf.quantile(0.2) == 1.0);
    CHECK(cdf.quantile(0.21) == 2.0);
    CHECK(cdf.quantile(1.0) == 5.0);

    Rng rng(7);
    std::vector<double> xs(200);
    for (auto& x : xs) x = rng.normal();
    EmpiricalCdf g(xs);
    double previous = 0.0;
    int jumps = 0;
    for (double x : g.sorted_samples()) {
        const double f = g(x);
        CHECK(f >= previous);
        if (f > previous) {
            CHECK(f - previous >= 1.0 / 200 - 1e-15);
            ++jumps;
        }
        previous = f;
    }
    CHECK(jumps == 200);

    CHECK_THROWS_AS(EmpiricalCdf(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(EmpiricalCdf({1.0, std::nan("")}), DataError);
}

TEST_CASE("centile band") {
    SUBCASE("contains the median") {
        std::vector<double> xs;
        for (int i = 1; i <= 100; ++i) xs.push_back(i);
        EmpiricalCdf cdf(xs);
        const auto band = centile_band(cdf, 0.5, 0.05);
        CHECK(band.epsilon < 0.5);
        CHECK(band.lo <= 50.0);
        CHECK(band.hi >= 50.0);
        CHECK(band.lo <= band.estimate);
        CHECK(band.estimate <= band.hi);
    }
    SUBCASE("five samples, q = 0.05") {
        EmpiricalCdf cdf({1, 2, 3, 4, 5});
        const auto band = centile_band(cdf, 0.05, 0.05);
        CHECK(band.epsilon == doctest::Approx(0.6074).epsilon(1e-3));
        CHECK(band.lo == 1.0);
        // q + eps = 0.657 lies between F(3) = 0.6 and F(4) = 0.8.
        CHECK(band.hi == 4.0);
    }
    SUBCASE("upper end open when q + eps reaches 1") {
        EmpiricalCdf cdf({1, 2, 3, 4, 5});
        const auto band = centile_band(cdf, 0.5, 0.05);
        CHECK(band.lo == 1.0);
        CHECK(band.estimate == 3.0);
        CHECK(band.hi == std::numeric_limits<double>::infinity());
    }
    SUBCASE("width shrinks with n") {
        Rng rng(3);
        double previous = std::numeric_limits<double>::infinity();
        for (int n : {100, 1000, 10000, 100000}) {
            std::vector<double> xs(n);
            for (auto& x : xs) x = rng.uniform();
            const auto band = centile_band(EmpiricalCdf(xs), 0.3, 0.05);
            CHECK(band.hi - band.lo < previous);
            previous = band.hi - band.lo;
        }
        CHECK(previous < 0.02);
    }
    CHECK_THROWS_AS(centile_band(EmpiricalCdf({1.0}), 1.0, 0.05), DomainError);
}

TEST_CASE("sup deviation matches a dense grid search") {
    Rng rng(11);
    std::vector<double> xs(50);
    for (auto& x : xs) x = rng.uniform();
    EmpiricalCdf cdf(xs);
    const double exact = sup_deviation(cdf, [](double x) { return x; });
    double grid = 0.0;
    for (int i = 0; i <= 200000; ++i) {
        const double x = i / 200000.0;
        grid = std::max(grid, std::abs(cdf(x) - x));
        // Left limits at jumps.
        grid = std::max(grid, std::abs(cdf(std::nextafter(x, -1.0)) - x));
    }
    CHECK(exact >= grid - 1e-12);
    CHECK(exact - grid < 1e-4);
}
