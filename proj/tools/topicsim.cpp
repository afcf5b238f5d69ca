#include <iostream>

#include <CLI11.hpp>

#include "topicsim/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Trending-topic discussion simulator"};
  app.require_subcommand(1);

  topicsim::SimulateOptions sim;
  std::string degree;
  bool censor = false, no_censor = false;
  std::size_t participants = 0;
  std::string output_dir;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Run a simulation from a config file");
  simulate->add_option("-c,--config", sim.config, "Run config (JSON)")->required()->check(CLI::ExistingFile);
  auto* seed_opt = simulate->add_option("--seed", seed, "Override the master seed");
  auto* degree_opt = simulate->add_option("--degree", degree, "Override the attack degree (SE, PA-10, PA-30, PA-50)");
  auto* censor_flag = simulate->add_flag("--censor", censor, "Enable content censorship");
  simulate->add_flag("--no-censor", no_censor, "Disable content censorship")->excludes(censor_flag);
  auto* n_opt = simulate->add_option("-n,--participants", participants, "Override the participant count");
  auto* out_opt = simulate->add_option("-o,--output", output_dir, "Override the output directory");

  topicsim::VerifyDistOptions dist;
  auto* verify = app.add_subcommand("verify-dist", "Check smoothness, normalization and sampling of P(t)");
  verify->add_option("--breaking-degree", dist.params.breaking_degree, "A")->capture_default_str();
  verify->add_option("--peak-onset", dist.params.peak_onset, "T_m in minutes")->capture_default_str();
  verify->add_option("--plateau-rate", dist.params.plateau_rate, "alpha in 1/min")->capture_default_str();
  verify->add_option("--horizon", dist.params.horizon, "Lifetime in minutes")->capture_default_str();
  verify->add_option("--draws", dist.draws, "Samples for the KS check")->capture_default_str();
  verify->add_option("--seed", dist.seed, "Sampling seed")->capture_default_str();

  std::vector<std::filesystem::path> logs;
  std::filesystem::path judges, judges_out = "judges.csv";
  auto* evaluate = app.add_subcommand("evaluate", "Score logged transcripts with LLM judges");
  evaluate->add_option("-l,--log", logs, "Event log(s) to judge")->required()->check(CLI::ExistingFile);
  evaluate->add_option("-j,--judges", judges, "Judge config (JSON)")->required()->check(CLI::ExistingFile);
  evaluate->add_option("-o,--output", judges_out, "Output CSV")->capture_default_str();

  std::vector<std::filesystem::path> runs;
  std::filesystem::path report_out = "report";
  auto* report = app.add_subcommand("report", "Compare runs across attack degrees");
  report->add_option("runs", runs, "Run output directories")->required()->check(CLI::ExistingDirectory);
  report->add_option("-o,--output", report_out, "Directory for report tables")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    if (*seed_opt) sim.seed = seed;
    if (*degree_opt) sim.degree = degree;
    if (censor) sim.censorship = true;
    if (no_censor) sim.censorship = false;
    if (*n_opt) sim.participants = participants;
    if (*out_opt) sim.output_dir = output_dir;
    return topicsim::simulate_command(sim, std::cout, std::cerr);
  }
  if (verify->parsed()) return topicsim::verify_dist_command(dist, std::cout, std::cerr);
  if (evaluate->parsed()) return topicsim::evaluate_command(logs, judges, judges_out, std::cout, std::cerr);
  return topicsim::report_command(runs, report_out, std::cout, std::cerr);
}
