#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace topicsim {

struct ReportRow {
  std::string group;   // sentiment group or "all"
  std::string degree;  // SE, PA-10, ..., PA-50-CS
  double emotion_avg = 0.0, emotion_div = 0.0;
  double sc_avg = 0.0, sc_div = 0.0;
};

struct RelativePoint {
  std::string degree;
  double bin_end = 0.0;
  double emotion = 0.0;  // mean minus the SE mean for the same bin
  double social_confidence = 0.0;
};

struct Report {
  std::vector<ReportRow> rows;  // grouped by group, degrees in canonical order
  std::vector<RelativePoint> timeline;  // empty unless an SE run is given
};

// Canonical rank of a degree label; unknown labels sort last.
int degree_rank(const std::string& label);

// Reads run.json, stats.csv and timeline.csv from each run directory. Throws
// std::runtime_error when the runs cover different topic sets or repeat a
// degree.
Report build_report(const std::vector<std::filesystem::path>& run_dirs);

// report.csv and timeline_relative.csv.
void write_report(const std::filesystem::path& out_dir, const Report& report);
void print_report(std::ostream& out, const Report& report);

}  // namespace topicsim
