#include "topicsim/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "topicsim/config.hpp"
#include "topicsim/engine.hpp"
#include "topicsim/evaluate.hpp"
#include "topicsim/report.hpp"

namespace topicsim {

VerifyDistResult verify_dist(const VerifyDistOptions& o, const BranchSet& branches) {
  o.params.validate();
  VerifyDistResult r;
  r.smoothness = verify_smoothness(o.params, branches);

  const double s = normalizer(o.params);
  const AccessSampler sampler(o.params);
  r.mass_error = std::abs(sampler.table_mass() / s - 1.0);

  Rng rng(o.seed, "verify-dist");
  auto draws = sampler.sample_first_access(o.draws, rng);
  std::sort(draws.begin(), draws.end());
  double mass = 0.0, prev = 0.0, ks = 0.0;
  const double n = static_cast<double>(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i) {
    mass += integrate_density(prev, draws[i], o.params);
    prev = draws[i];
    const double f = mass / s;
    ks = std::max({ks, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  r.ks = ks;
  r.passed = r.smoothness.max_gap() <= o.gap_tolerance && r.mass_error <= o.mass_tolerance && r.ks < o.ks_tolerance;
  return r;
}

int verify_dist_command(const VerifyDistOptions& o, std::ostream& out, std::ostream& err, const BranchSet& branches) {
  VerifyDistResult r;
  try {
    r = verify_dist(o, branches);
  } catch (const std::exception& e) {
    err << "verify-dist: " << e.what() << "\n";
    return 2;
  }
  const auto& g = r.smoothness;
  char line[200];
  std::snprintf(line, sizeof line, "A=%g T_m=%g alpha=%g horizon=%g\n", o.params.breaking_degree,
                o.params.peak_onset, o.params.plateau_rate, o.params.horizon);
  out << line;
  std::snprintf(line, sizeof line, "G0 gap at T_m          %.3e\nG0 gap at T_m+1/alpha  %.3e\n", g.g0_gap_1,
                g.g0_gap_2);
  out << line;
  std::snprintf(line, sizeof line, "G1 gap at T_m          %.3e\nG1 gap at T_m+1/alpha  %.3e\n", g.g1_gap_1,
                g.g1_gap_2);
  out << line;
  std::snprintf(line, sizeof line, "integral error         %.3e (limit %.1e)\n", r.mass_error, o.mass_tolerance);
  out << line;
  std::snprintf(line, sizeof line, "KS statistic           %.5f over %zu draws (limit %.3f)\n", r.ks, o.draws,
                o.ks_tolerance);
  out << line;
  out << (r.passed ? "PASS\n" : "FAIL\n");
  return r.passed ? 0 : 1;
}

int simulate_command(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = RunConfig::load(o.config);
    if (o.seed) config.seed = *o.seed;
    if (o.degree) config.attack_degree = parse_attack_degree(*o.degree);
    if (o.censorship) config.censorship.enabled = *o.censorship;
    if (o.participants) config.n_participants = *o.participants;
    if (o.output_dir) config.output_dir = *o.output_dir;
    config.validate();
  } catch (const std::exception& e) {
    err << "simulate: " << e.what() << "\n";
    return 2;
  }
  try {
    const RunResult result = run_simulation(config);
    for (const auto& t : result.topics)
      out << t.topic.id << ": " << t.sessions << " sessions, " << t.posted << " posts, " << t.flagged
          << " flagged, " << t.errors << " degraded steps\n";
    out << result.degree_label << " run written to " << config.output_dir.string() << "\n";
  } catch (const std::exception& e) {
    err << "simulate: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int evaluate_command(const std::vector<std::filesystem::path>& logs, const std::filesystem::path& judge_config,
                     const std::filesystem::path& output, std::ostream& out, std::ostream& err) {
  try {
    const EvaluateConfig config = EvaluateConfig::load(judge_config);
    std::vector<std::unique_ptr<ProviderStack>> stacks;
    std::vector<Provider*> judges;
    std::vector<std::string> names;
    for (const auto& j : config.judges) {
      stacks.push_back(std::make_unique<ProviderStack>(j.provider));
      judges.push_back(&stacks.back()->provider());
      names.push_back(j.name);
    }
    const auto rows = evaluate_logs(logs, config, judges);
    if (output.has_parent_path()) std::filesystem::create_directories(output.parent_path());
    write_judges_csv(output, names, rows);
    out << rows.size() << " judged items written to " << output.string() << "\n";
  } catch (const std::exception& e) {
    err << "evaluate: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int report_command(const std::vector<std::filesystem::path>& runs, const std::filesystem::path& output_dir,
                   std::ostream& out, std::ostream& err) {
  try {
    const Report report = build_report(runs);
    write_report(output_dir, report);
    print_report(out, report);
  } catch (const std::exception& e) {
    err << "report: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace topicsim
