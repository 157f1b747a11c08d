#include "zetalaw/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zetalaw/errors.hpp"

namespace zetalaw {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw DomainError("EmpiricalCdf: no samples");
    for (double x : sorted_)
        if (!std::isfinite(x)) throw DataError("EmpiricalCdf: non-finite sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
    return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double q) const {
    if (!(q > 0.0 && q <= 1.0)) throw DomainError("EmpiricalCdf::quantile: q must lie in (0, 1]");
    const auto n = sorted_.size();
    // Smallest i (1-based) with i / n >= q.
    auto i = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    i = std::clamp<std::size_t>(i, 1, n);
    while (i > 1 && static_cast<double>(i - 1) / static_cast<double>(n) >= q) --i;
    while (i < n && static_cast<double>(i) / static_cast<double>(n) < q) ++i;
    return sorted_[i - 1];
}

double dkw_epsilon(std::int64_t n, double delta) {
    if (n < 1) throw DomainError("dkw_epsilon: n must be at least 1");
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("dkw_epsilon: delta must lie in (0, 1]");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

std::int64_t dkw_sample_size(double epsilon, double delta) {
    if (!(epsilon > 0.0)) throw DomainError("dkw_sample_size: epsilon must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("dkw_sample_size: delta must lie in (0, 1)");
    auto n = static_cast<std::int64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
    n = std::max<std::int64_t>(n, 1);
    while (n > 1 && dkw_epsilon(n - 1, delta) <= epsilon) --n;
    while (dkw_epsilon(n, delta) > epsilon) ++n;
    return n;
}

CentileBand centile_band(const EmpiricalCdf& cdf, double q, double delta) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("centile_band: q must lie in (0, 1)");
    const double eps = dkw_epsilon(static_cast<std::int64_t>(cdf.size()), delta);
    CentileBand band{};
    band.epsilon = eps;
    band.estimate = cdf.quantile(q);
    band.lo = q - eps <= 0.0 ? cdf.sorted_samples().front() : cdf.quantile(q - eps);
    band.hi = q + eps >= 1.0 ? std::numeric_limits<double>::infinity() : cdf.quantile(q + eps);
    return band;
}

double sup_deviation(const EmpiricalCdf& cdf, const std::function<double(double)>& reference) {
    const auto xs = cdf.sorted_samples();
    const double n = static_cast<double>(xs.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = reference(xs[i]);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        sup = std::max({sup, above, below});
    }
    return sup;
}

}  // namespace zetalaw
