#pragma once

namespace zetalaw {

/// Standard normal CDF, from erfc so the lower tail keeps full relative precision.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Inverse standard normal CDF for p in (0, 1).
///
/// Rational approximation (relative error ~1e-9) polished by one Newton step
/// against normal_cdf, which brings the result to ~1e-15.
double normal_quantile(double p);

}  // namespace zetalaw
