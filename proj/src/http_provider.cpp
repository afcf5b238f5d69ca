#include <httplib.h>

#include "topicsim/provider.hpp"

namespace topicsim {

HttpProvider::HttpProvider(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {
  const std::string& url = endpoint_.url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw std::invalid_argument("endpoint URL needs a scheme: " + url);
  const auto path_begin = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_begin);
  path_ = path_begin == std::string::npos ? "/" : url.substr(path_begin);
}

std::string HttpProvider::complete(const CompletionRequest& request) {
  httplib::Client client(scheme_host_port_);
  const auto secs = static_cast<time_t>(endpoint_.timeout_seconds);
  const auto usecs = static_cast<time_t>((endpoint_.timeout_seconds - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  nlohmann::json messages = nlohmann::json::array();
  if (!request.system_text.empty()) messages.push_back({{"role", "system"}, {"content", request.system_text}});
  messages.push_back({{"role", "user"}, {"content", request.user_text}});
  const nlohmann::json body = {{"model", endpoint_.model},
                               {"messages", messages},
                               {"temperature", request.temperature},
                               {"seed", request.seed}};

  httplib::Headers headers = {{"Authorization", "Bearer " + endpoint_.api_key}};
  auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) throw ProviderError("HTTP request failed: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300)
    throw ProviderError("HTTP status " + std::to_string(res->status) + " from " + endpoint_.url);
  try {
    auto j = nlohmann::json::parse(res->body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("malformed completion response: ") + e.what());
  }
}

}  // namespace topicsim
