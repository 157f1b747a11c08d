#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace zetalaw {

/// Right-continuous empirical CDF F_n(x) = #{samples <= x} / n.
class EmpiricalCdf {
public:
    /// Throws DomainError on an empty sample and DataError on non-finite values.
    explicit EmpiricalCdf(std::vector<double> samples);

    double operator()(double x) const;

    /// Left-continuous inverse: smallest sample x with F_n(x) >= q, q in (0, 1].
    double quantile(double q) const;

    std::span<const double> sorted_samples() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

/// Half-width of the DKW band: sqrt(ln(2/delta) / (2n)).
double dkw_epsilon(std::int64_t n, double delta);

/// Smallest n with dkw_epsilon(n, delta) <= epsilon.
std::int64_t dkw_sample_size(double epsilon, double delta);

struct CentileBand {
    double lo;
    double estimate;
    double hi;  ///< +infinity when q + epsilon >= 1
    double epsilon;
};

/// Band of x-values whose empirical CDF lies within dkw_epsilon(n, delta) of q.
///
/// lo = inf{x : F_n(x) >= q - eps}, clamped to the smallest sample when
/// q - eps <= 0; hi = inf{x : F_n(x) >= q + eps}.
CentileBand centile_band(const EmpiricalCdf& cdf, double q, double delta);

/// sup_x |F_n(x) - F(x)| for a continuous F, evaluated at the jumps of F_n.
double sup_deviation(const EmpiricalCdf& cdf, const std::function<double(double)>& reference);

}  // namespace zetalaw
