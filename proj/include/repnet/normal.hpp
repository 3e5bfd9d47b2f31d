#pragma once

#include <cmath>

namespace repnet {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kInvSqrt2Pi = 0.3989422804014327;
inline constexpr double kLogSqrt2Pi = 0.9189385332046727;

/// Standard normal density.
inline double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

/// Standard normal CDF via erfc; relative error is at machine level in both tails.
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

/// log Phi(x), stable deep in the left tail where norm_cdf underflows.
inline double log_norm_cdf(double x) {
  const double p = norm_cdf(x);
  if (p > 0.0) return std::log(p);
  // erfc underflowed (x < ~-37.6): asymptotic expansion of the Mills ratio
  const double x2 = x * x;
  double series = 1.0, term = 1.0;
  for (int k = 1; k <= 12; ++k) {
    term *= -(2.0 * k - 1.0) / x2;
    series += term;
  }
  return -0.5 * x2 - std::log(-x) - kLogSqrt2Pi + std::log(series);
}

/// Inverse of norm_cdf. Rational initial guess refined by Halley iterations
/// until limited only by the accuracy of erfc.
inline double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -HUGE_VAL;
    if (p == 1.0) return HUGE_VAL;
    return NAN;
  }
  const bool lower = p < 0.5;
  const double pm = lower ? p : 1.0 - p;
  const double t = std::sqrt(-2.0 * std::log(pm));
  double x = t - (2.515517 + t * (0.802853 + t * 0.010328)) /
                     (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308)));
  if (lower) x = -x;
  for (int it = 0; it < 4; ++it) {
    const double d = norm_pdf(x);
    if (d <= 0.0) break;
    const double u = (norm_cdf(x) - p) / d;
    x -= 2.0 * u / (2.0 + u * x);  // Halley step
  }
  return x;
}

}  // namespace repnet
