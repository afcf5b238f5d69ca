#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "topicsim/rng.hpp"

namespace topicsim {

// Shape of the access-time density over a topic's lifetime. Times are in
// minutes since the topic was created.
struct LifecycleParams {
  double breaking_degree = 1.0;  // steepness of the rise and of the decay tail
  double peak_onset = 240.0;     // end of the exponential rise
  double plateau_rate = 0.01;    // inverse width of the quadratic plateau, 1/min
  double horizon = 960.0;        // simulation end

  double plateau_end() const { return peak_onset + 1.0 / plateau_rate; }

  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

enum class Branch { Rise, Plateau, Decay };

Branch branch_at(double t, const LifecycleParams& p);

// Value and first derivative of one branch of the unnormalized density,
// evaluated without regard to the branch's domain.
double branch_value(Branch b, double t, const LifecycleParams& p);
double branch_slope(Branch b, double t, const LifecycleParams& p);

// Unnormalized access density f(t). Throws std::domain_error outside
// [0, horizon].
double density_unnormalized(double t, const LifecycleParams& p);

// Integral of f over [a, b] within [0, horizon], adaptive Gauss-Kronrod per
// branch. Throws std::domain_error for an interval outside the lifetime.
double integrate_density(double a, double b, const LifecycleParams& p);

// S = integral of f over [0, horizon].
double normalizer(const LifecycleParams& p);

struct SmoothnessReport {
  double g0_gap_1 = 0.0;  // |f(T_m-) - f(T_m+)|
  double g0_gap_2 = 0.0;  // same at T_m + 1/alpha
  double g1_gap_1 = 0.0;  // |f'(T_m-) - f'(T_m+)|
  double g1_gap_2 = 0.0;

  double left_value_1 = 0.0, right_value_1 = 0.0;
  double left_value_2 = 0.0, right_value_2 = 0.0;
  double left_slope_1 = 0.0, right_slope_1 = 0.0;
  double left_slope_2 = 0.0, right_slope_2 = 0.0;

  double max_gap() const;
};

// Branch formulas used by verify_smoothness. Swappable so a deliberately
// broken density can be checked as a negative control.
struct BranchSet {
  std::function<double(Branch, double, const LifecycleParams&)> value;
  std::function<double(Branch, double, const LifecycleParams&)> slope;
};

BranchSet analytic_branches();

SmoothnessReport verify_smoothness(const LifecycleParams& p,
                                   const BranchSet& branches = analytic_branches());

// Inverse-CDF sampler over a precomputed cumulative table with uniform knots
// and linear interpolation.
class AccessSampler {
 public:
  static constexpr std::size_t kDefaultKnots = 8192;

  explicit AccessSampler(const LifecycleParams& params, std::size_t knots = kDefaultKnots);

  const LifecycleParams& params() const { return params_; }

  // Table total, i.e. the normalizer as seen by the sampler.
  double table_mass() const { return mass_; }

  double cdf(double t) const;
  double quantile(double u) const;

  std::vector<double> sample_first_access(std::size_t n, Rng& rng) const;

  // With probability revisit_coeff * (1 - CDF(t_end)) returns a draw from P
  // conditioned on (t_end, horizon]; otherwise nullopt.
  std::optional<double> sample_next_access(double t_end, double revisit_coeff, Rng& rng) const;

 private:
  LifecycleParams params_;
  double step_;
  double mass_;
  std::vector<double> cdf_;  // normalized, cdf_.front() == 0, cdf_.back() == 1
};

enum class EventKind { AccessSession };

struct SimEvent {
  double time = 0.0;
  std::uint64_t seq = 0;
  std::string actor_id;
  EventKind kind = EventKind::AccessSession;
};

// Min-heap on (time, seq). seq is assigned at push time, so equal-time events
// come out in insertion order.
class EventQueue {
 public:
  explicit EventQueue(double horizon);

  // Throws std::domain_error if time lies outside [0, horizon].
  SimEvent push(double time, std::string actor_id, EventKind kind = EventKind::AccessSession);

  // nullopt once the queue is exhausted.
  std::optional<SimEvent> pop();

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  double horizon_;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
};

}  // namespace topicsim
