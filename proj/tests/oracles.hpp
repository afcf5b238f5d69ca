#pragma once

// Test-only reference computations. These follow the textbook forms of the
// access density and never call into the library's quadrature or tables.

#include <cmath>
#include <algorithm>
#include <functional>
#include <vector>

#include "topicsim/temporal.hpp"

namespace oracle {

// Density written exactly in the piecewise textbook form.
inline double density(double t, const topicsim::LifecycleParams& p) {
  const double a = p.breaking_degree, tm = p.peak_onset, al = p.plateau_rate;
  if (t < tm) return std::exp(a * (t - tm));
  if (t < tm + 1.0 / al) {
    const double x = t - tm - 1.0 / (2.0 * al);
    return -al * a * x * x + 1.0 + a / (4.0 * al);
  }
  return std::pow(t - tm - 1.0 / al + 1.0, -a);
}

// Composite Simpson with n (even) uniform panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, long n) {
  const double h = (hi - lo) / static_cast<double>(n);
  double s = f(lo) + f(hi);
  for (long i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(i));
  return s * h / 3.0;
}

// Closed-form antiderivative of the density, zero at t = 0.
inline double primitive(double t, const topicsim::LifecycleParams& p) {
  const double a = p.breaking_degree, tm = p.peak_onset, al = p.plateau_rate;
  const double pe = tm + 1.0 / al;
  const double rise_total = (1.0 - std::exp(-a * tm)) / a;
  if (t < tm) return (std::exp(a * (t - tm)) - std::exp(-a * tm)) / a;
  auto plateau = [&](double s) { return s + a * s * s / 2.0 - al * a * s * s * s / 3.0; };
  if (t < pe) return rise_total + plateau(t - tm);
  const double plateau_total = plateau(1.0 / al);
  const double y = t - pe + 1.0;
  const double tail = std::abs(a - 1.0) < 1e-12 ? std::log(y) : (std::pow(y, 1.0 - a) - 1.0) / (1.0 - a);
  return rise_total + plateau_total + tail;
}

inline double cdf(double t, const topicsim::LifecycleParams& p) {
  return primitive(t, p) / primitive(p.horizon, p);
}

// One-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

}  // namespace oracle
