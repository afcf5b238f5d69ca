#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "topicsim/config.hpp"
#include "topicsim/provider.hpp"

namespace testutil {

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "topicsim-test-XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    path = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

// Forwards to another provider and counts calls per tag.
class CountingProvider : public topicsim::Provider {
 public:
  explicit CountingProvider(topicsim::Provider& inner) : inner_(&inner) {}
  // Owns a mock built from `script`.
  explicit CountingProvider(const nlohmann::json& script)
      : owned_(std::make_unique<topicsim::MockProvider>(script)), inner_(owned_.get()) {}

  std::string complete(const topicsim::CompletionRequest& r) override {
    ++by_tag[r.tag];
    return inner_->complete(r);
  }
  std::size_t count(topicsim::RequestTag tag) const {
    auto it = by_tag.find(tag);
    return it == by_tag.end() ? 0 : it->second;
  }
  std::map<topicsim::RequestTag, std::size_t> by_tag;

 private:
  std::unique_ptr<topicsim::Provider> owned_;
  topicsim::Provider* inner_;
};

inline std::filesystem::path test_data(const std::string& name) {
  return std::filesystem::path(TOPICSIM_TEST_DATA) / name;
}

// Run config over the small test corpus; `patch` entries override the base.
inline nlohmann::json run_config_json(const std::filesystem::path& out_dir, const std::string& mock,
                                      const nlohmann::json& patch = nlohmann::json::object()) {
  nlohmann::json j{
      {"seed", 3},
      {"topics", test_data("topics.json").string()},
      {"profiles", test_data("profiles.jsonl").string()},
      {"prototypes_dir", (std::filesystem::path(TOPICSIM_REPO_DATA) / "prototypes").string()},
      {"n_participants", 20},
      {"attack_degree", "SE"},
      {"page_size", 5},
      {"max_actions", 6},
      {"revisit_coeff", 0.3},
      {"timeline_bin", 60},
      {"provider", {{"backend", "mock"}, {"script", mock}, {"max_retries", 1}, {"backoff_seconds", 0}}},
      {"output_dir", out_dir.string()},
  };
  j.merge_patch(patch);
  return j;
}

inline topicsim::RunConfig run_config(const std::filesystem::path& out_dir, const std::string& mock,
                                      const nlohmann::json& patch = nlohmann::json::object()) {
  auto c = topicsim::RunConfig::from_json(run_config_json(out_dir, mock, patch), out_dir);
  c.validate();
  return c;
}

inline std::string desk_mock() { return (std::filesystem::path(TOPICSIM_REPO_DATA) / "mock_script.json").string(); }
inline std::string acceptance_mock() { return test_data("acceptance_mock.json").string(); }

}  // namespace testutil
