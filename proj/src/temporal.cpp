#include "topicsim/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace topicsim {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

std::string describe(const LifecycleParams& p) {
  std::ostringstream os;
  os << "(A=" << p.breaking_degree << ", T_m=" << p.peak_onset << ", alpha=" << p.plateau_rate
     << ", horizon=" << p.horizon << ")";
  return os.str();
}

// Integral of f over [a, b] with the interval split at the branch junctions,
// so every piece is smooth.
template <typename PieceIntegrator>
double integrate_split(double a, double b, const LifecycleParams& p, PieceIntegrator&& piece) {
  const double cuts[] = {p.peak_onset, p.plateau_end()};
  double total = 0.0;
  double lo = a;
  for (double c : cuts) {
    if (c > lo && c < b) {
      total += piece(lo, c);
      lo = c;
    }
  }
  return total + piece(lo, b);
}

// Bisection driver around the fixed 15-point rule. Boost's own adaptive
// routine compares an unscaled error estimate with a scaled tolerance and
// recurses to full depth on short intervals, so the subdivision is done here.
template <typename F>
double adaptive_kronrod(const F& f, double a, double b, int depth, double& error) {
  double raw_error = 0.0;
  const double value = Kronrod::integrate(f, a, b, 0, 0.0, &raw_error);
  const double piece_error = raw_error * 0.5 * (b - a);
  if (depth == 0 || piece_error <= 1e-13 * std::abs(value) + 1e-300) {
    error += piece_error;
    return value;
  }
  const double mid = 0.5 * (a + b);
  return adaptive_kronrod(f, a, mid, depth - 1, error) + adaptive_kronrod(f, mid, b, depth - 1, error);
}

}  // namespace

void LifecycleParams::validate() const {
  auto fail = [&](const char* what) {
    throw std::invalid_argument(std::string("invalid lifecycle params ") + describe(*this) + ": " + what);
  };
  if (!std::isfinite(breaking_degree) || !std::isfinite(peak_onset) || !std::isfinite(plateau_rate) ||
      !std::isfinite(horizon))
    fail("non-finite value");
  if (breaking_degree <= 0.0) fail("breaking_degree must be positive");
  if (peak_onset <= 0.0) fail("peak_onset must be positive");
  if (plateau_rate <= 0.0) fail("plateau_rate must be positive");
  if (!(horizon > plateau_end())) fail("horizon must exceed peak_onset + 1/plateau_rate");
}

Branch branch_at(double t, const LifecycleParams& p) {
  if (t < p.peak_onset) return Branch::Rise;
  if (t < p.plateau_end()) return Branch::Plateau;
  return Branch::Decay;
}

// The plateau is written as 1 - A*alpha*(t - T_m)*(t - T_m - 1/alpha), which
// expands to -alpha*A*(t - T_m - 1/(2 alpha))^2 + 1 + A/(4 alpha) but is exactly
// 1 at both junctions in floating point.
double branch_value(Branch b, double t, const LifecycleParams& p) {
  const double a = p.breaking_degree;
  switch (b) {
    case Branch::Rise:
      return std::exp(a * (t - p.peak_onset));
    case Branch::Plateau: {
      const double s = t - p.peak_onset;
      const double u = t - p.plateau_end();
      return 1.0 - a * p.plateau_rate * s * u;
    }
    case Branch::Decay:
      return std::pow(t - p.plateau_end() + 1.0, -a);
  }
  return 0.0;
}

double branch_slope(Branch b, double t, const LifecycleParams& p) {
  const double a = p.breaking_degree;
  switch (b) {
    case Branch::Rise:
      return a * std::exp(a * (t - p.peak_onset));
    case Branch::Plateau: {
      const double s = t - p.peak_onset;
      const double u = t - p.plateau_end();
      return -a * p.plateau_rate * (s + u);
    }
    case Branch::Decay:
      return -a * std::pow(t - p.plateau_end() + 1.0, -a - 1.0);
  }
  return 0.0;
}

double density_unnormalized(double t, const LifecycleParams& p) {
  if (!(t >= 0.0) || t > p.horizon) {
    std::ostringstream os;
    os << "access density evaluated at t=" << t << " outside [0, " << p.horizon << "]";
    throw std::domain_error(os.str());
  }
  return branch_value(branch_at(t, p), t, p);
}

double integrate_density(double a, double b, const LifecycleParams& p) {
  if (!(a >= 0.0) || !(b <= p.horizon) || !(a <= b)) {
    std::ostringstream os;
    os << "density integral over [" << a << ", " << b << "] outside [0, " << p.horizon << "]";
    throw std::domain_error(os.str());
  }
  constexpr double kAbsTol = 1e-9;
  return integrate_split(a, b, p, [&](double lo, double hi) {
    if (hi <= lo) return 0.0;
    const Branch br = branch_at(0.5 * (lo + hi), p);
    double error = 0.0;
    const double value = adaptive_kronrod([&](double t) { return branch_value(br, t, p); }, lo, hi, 40, error);
    if (error > kAbsTol) {
      std::ostringstream os;
      os << "density quadrature did not converge on [" << lo << ", " << hi << "]: error " << error;
      throw std::runtime_error(os.str());
    }
    return value;
  });
}

double normalizer(const LifecycleParams& p) {
  p.validate();
  return integrate_density(0.0, p.horizon, p);
}

double SmoothnessReport::max_gap() const {
  return std::max({g0_gap_1, g0_gap_2, g1_gap_1, g1_gap_2});
}

BranchSet analytic_branches() {
  return BranchSet{&branch_value, &branch_slope};
}

SmoothnessReport verify_smoothness(const LifecycleParams& p, const BranchSet& branches) {
  p.validate();
  const double j1 = p.peak_onset;
  const double j2 = p.plateau_end();
  SmoothnessReport r;
  r.left_value_1 = branches.value(Branch::Rise, j1, p);
  r.right_value_1 = branches.value(Branch::Plateau, j1, p);
  r.left_value_2 = branches.value(Branch::Plateau, j2, p);
  r.right_value_2 = branches.value(Branch::Decay, j2, p);
  r.left_slope_1 = branches.slope(Branch::Rise, j1, p);
  r.right_slope_1 = branches.slope(Branch::Plateau, j1, p);
  r.left_slope_2 = branches.slope(Branch::Plateau, j2, p);
  r.right_slope_2 = branches.slope(Branch::Decay, j2, p);
  r.g0_gap_1 = std::abs(r.left_value_1 - r.right_value_1);
  r.g0_gap_2 = std::abs(r.left_value_2 - r.right_value_2);
  r.g1_gap_1 = std::abs(r.left_slope_1 - r.right_slope_1);
  r.g1_gap_2 = std::abs(r.left_slope_2 - r.right_slope_2);
  return r;
}

AccessSampler::AccessSampler(const LifecycleParams& params, std::size_t knots) : params_(params) {
  params_.validate();
  if (knots < 2) throw std::invalid_argument("AccessSampler needs at least two knots");
  step_ = params_.horizon / static_cast<double>(knots - 1);
  cdf_.assign(knots, 0.0);
  double running = 0.0;
  for (std::size_t i = 1; i < knots; ++i) {
    const double lo = step_ * static_cast<double>(i - 1);
    const double hi = i + 1 == knots ? params_.horizon : step_ * static_cast<double>(i);
    running += integrate_split(lo, hi, params_, [&](double a, double b) {
      const Branch br = branch_at(0.5 * (a + b), params_);
      return Kronrod::integrate([&](double t) { return branch_value(br, t, params_); }, a, b, 0);
    });
    cdf_[i] = running;
  }
  mass_ = running;
  for (double& c : cdf_) c /= mass_;
  cdf_.back() = 1.0;
}

double AccessSampler::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= params_.horizon) return 1.0;
  const double x = t / step_;
  const std::size_t i = std::min(static_cast<std::size_t>(x), cdf_.size() - 2);
  const double w = x - static_cast<double>(i);
  return cdf_[i] + w * (cdf_[i + 1] - cdf_[i]);
}

double AccessSampler::quantile(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return params_.horizon;
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const std::size_t i = static_cast<std::size_t>(std::distance(cdf_.begin(), it)) - 1;
  const double lo = cdf_[i];
  const double hi = cdf_[i + 1];
  const double t = step_ * (static_cast<double>(i) + (u - lo) / (hi - lo));
  return std::min(t, params_.horizon);
}

std::vector<double> AccessSampler::sample_first_access(std::size_t n, Rng& rng) const {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // 1 - uniform() lies in (0, 1], keeping draws off the t = 0 boundary.
    out.push_back(quantile(1.0 - rng.uniform()));
  }
  return out;
}

std::optional<double> AccessSampler::sample_next_access(double t_end, double revisit_coeff,
                                                        Rng& rng) const {
  if (t_end < 0.0) throw std::domain_error("next access requested for negative session end");
  if (!(revisit_coeff >= 0.0 && revisit_coeff <= 1.0))
    throw std::invalid_argument("revisit coefficient must lie in [0, 1]");
  if (revisit_coeff == 0.0 || t_end >= params_.horizon) return std::nullopt;
  const double base = cdf(t_end);
  const double p = revisit_coeff * (1.0 - base);
  if (rng.uniform() >= p) return std::nullopt;
  const double u = base + (1.0 - base) * (1.0 - rng.uniform());
  double t = quantile(u);
  if (t <= t_end) t = std::nextafter(t_end, std::numeric_limits<double>::infinity());
  return std::min(t, params_.horizon);
}

EventQueue::EventQueue(double horizon) : horizon_(horizon) {}

SimEvent EventQueue::push(double time, std::string actor_id, EventKind kind) {
  if (!(time >= 0.0) || time > horizon_) {
    std::ostringstream os;
    os << "event for " << actor_id << " at t=" << time << " outside [0, " << horizon_ << "]";
    throw std::domain_error(os.str());
  }
  SimEvent ev{time, next_seq_++, std::move(actor_id), kind};
  heap_.push(ev);
  return ev;
}

std::optional<SimEvent> EventQueue::pop() {
  if (heap_.empty()) return std::nullopt;
  SimEvent ev = heap_.top();
  heap_.pop();
  return ev;
}

}  // namespace topicsim
