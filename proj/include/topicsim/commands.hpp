#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "topicsim/temporal.hpp"

namespace topicsim {

struct SimulateOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> degree;
  std::optional<bool> censorship;
  std::optional<std::size_t> participants;
  std::optional<std::filesystem::path> output_dir;
};

struct VerifyDistOptions {
  LifecycleParams params;
  std::size_t draws = 100000;
  std::uint64_t seed = 1;
  double gap_tolerance = 1e-12;
  double mass_tolerance = 1e-6;
  double ks_tolerance = 0.01;
};

struct VerifyDistResult {
  SmoothnessReport smoothness;
  double mass_error = 0.0;  // |sampler table mass / S - 1|
  double ks = 0.0;          // draws against the quadrature CDF
  bool passed = false;
};

VerifyDistResult verify_dist(const VerifyDistOptions& options, const BranchSet& branches = analytic_branches());

// Each command prints progress to `out`, problems to `err`, and returns the
// process exit status.
int simulate_command(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int verify_dist_command(const VerifyDistOptions& options, std::ostream& out, std::ostream& err,
                        const BranchSet& branches = analytic_branches());
int evaluate_command(const std::vector<std::filesystem::path>& logs, const std::filesystem::path& judge_config,
                     const std::filesystem::path& output, std::ostream& out, std::ostream& err);
int report_command(const std::vector<std::filesystem::path>& runs, const std::filesystem::path& output_dir,
                   std::ostream& out, std::ostream& err);

}  // namespace topicsim
