#pragma once

// Double-precision special functions used by the closed-form bounds.

namespace sicnet::specfun {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Lower incomplete gamma  gamma(s, x) = int_0^x t^{s-1} e^{-t} dt.
double lower_inc_gamma(double s, double x);

/// Regularized lower incomplete gamma  gamma(s, x) / Gamma(s).
double reg_lower_gamma(double s, double x);

/// Regularized upper incomplete gamma  Gamma(s, x) / Gamma(s).
double reg_upper_gamma(double s, double x);

double erf(double x);
double erfc(double x);

/// sin(pi x) / (pi x), defined here on the open interval (0, 1) only.
double sinc(double x);

/// Two-parameter Mittag-Leffler function E_{a,b}(z) = sum_k z^k / Gamma(a k + b).
///
/// Evaluated by direct power series, which is accurate for a in (0, 1],
/// b > 0 and |z| <= 10. Throws std::runtime_error if the series has not
/// converged after 10000 terms, or if cancellation between terms of
/// alternating sign (large negative z) leaves fewer than ten digits.
double mittag_leffler(double a, double b, double z);

}  // namespace sicnet::specfun
