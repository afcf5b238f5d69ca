#include "topicsim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace topicsim {

namespace {

const char* const kDegreeOrder[] = {"SE", "PA-10", "PA-30", "PA-50", "PA-50-CS"};
const char* const kGroupOrder[] = {"positive", "negative", "neutral", "all"};

using Table = std::vector<std::map<std::string, std::string>>;

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + " is empty");
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  const auto header = split(line);
  Table out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
    out.push_back(std::move(row));
  }
  return out;
}

int group_rank(const std::string& g) {
  for (int i = 0; i < 4; ++i)
    if (g == kGroupOrder[i]) return i;
  return 4;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

int degree_rank(const std::string& label) {
  for (int i = 0; i < 5; ++i)
    if (label == kDegreeOrder[i]) return i;
  return 5;
}

Report build_report(const std::vector<std::filesystem::path>& run_dirs) {
  if (run_dirs.empty()) throw std::runtime_error("report needs at least one run");
  Report report;
  std::optional<std::set<std::string>> topic_set;
  std::set<std::string> degrees;
  std::map<std::string, std::map<std::string, std::pair<double, double>>> timelines;  // degree -> bin -> (e, sc)

  for (const auto& dir : run_dirs) {
    std::ifstream meta_in(dir / "run.json");
    if (!meta_in) throw std::runtime_error("cannot read " + (dir / "run.json").string());
    const auto meta = nlohmann::json::parse(meta_in);
    const std::string degree = meta.at("degree").get<std::string>();
    if (!degrees.insert(degree).second) throw std::runtime_error("degree " + degree + " given twice");

    std::set<std::string> topics;
    for (const auto& t : meta.at("topics")) topics.insert(t.at("id").get<std::string>());
    if (topic_set && *topic_set != topics)
      throw std::runtime_error("run " + dir.string() + " covers a different topic set");
    topic_set = topics;

    for (const auto& row : read_csv(dir / "stats.csv")) {
      if (row.at("level") != "sentiment") continue;
      report.rows.push_back({row.at("key"), degree, std::stod(row.at("emotion_avg")),
                             std::stod(row.at("emotion_div")), std::stod(row.at("sc_avg")),
                             std::stod(row.at("sc_div"))});
    }
    for (const auto& row : read_csv(dir / "timeline.csv"))
      if (row.at("topic") == "all")
        timelines[degree][row.at("bin_end")] = {std::stod(row.at("emotion_mean")), std::stod(row.at("sc_mean"))};
  }

  std::stable_sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (group_rank(a.group) != group_rank(b.group)) return group_rank(a.group) < group_rank(b.group);
    return degree_rank(a.degree) < degree_rank(b.degree);
  });

  auto se = timelines.find("SE");
  if (se != timelines.end()) {
    std::vector<std::string> ordered(degrees.begin(), degrees.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const std::string& a, const std::string& b) { return degree_rank(a) < degree_rank(b); });
    for (const auto& degree : ordered) {
      std::vector<RelativePoint> points;
      for (const auto& [bin, values] : timelines[degree]) {
        auto base = se->second.find(bin);
        if (base == se->second.end()) continue;
        points.push_back(
            {degree, std::stod(bin), values.first - base->second.first, values.second - base->second.second});
      }
      std::sort(points.begin(), points.end(),
                [](const RelativePoint& a, const RelativePoint& b) { return a.bin_end < b.bin_end; });
      report.timeline.insert(report.timeline.end(), points.begin(), points.end());
    }
  }
  return report;
}

void write_report(const std::filesystem::path& out_dir, const Report& report) {
  std::filesystem::create_directories(out_dir);
  std::ofstream table(out_dir / "report.csv", std::ios::trunc);
  if (!table) throw std::runtime_error("cannot write report.csv");
  table << "group,degree,emotion_avg,emotion_div,sc_avg,sc_div\n";
  for (const auto& r : report.rows)
    table << r.group << "," << r.degree << "," << fmt(r.emotion_avg) << "," << fmt(r.emotion_div) << ","
          << fmt(r.sc_avg) << "," << fmt(r.sc_div) << "\n";

  std::ofstream tl(out_dir / "timeline_relative.csv", std::ios::trunc);
  if (!tl) throw std::runtime_error("cannot write timeline_relative.csv");
  tl << "degree,bin_end,emotion_delta,sc_delta\n";
  for (const auto& p : report.timeline)
    tl << p.degree << "," << fmt(p.bin_end) << "," << fmt(p.emotion) << "," << fmt(p.social_confidence) << "\n";
}

void print_report(std::ostream& out, const Report& report) {
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-10s %-18s %-18s\n", "group", "degree", "emotion", "social conf.");
  out << line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%-10s %-10s %.3f \xC2\xB1 %.3f      %.3f \xC2\xB1 %.3f\n", r.group.c_str(),
                  r.degree.c_str(), r.emotion_avg, r.emotion_div, r.sc_avg, r.sc_div);
    out << line;
  }
}

}  // namespace topicsim
