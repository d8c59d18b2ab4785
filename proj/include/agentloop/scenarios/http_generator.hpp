#pragma once

#include <chrono>
#include <stdexcept>
#include <string>

#include <httplib.h>

#include "agentloop/scenarios/excuse.hpp"

namespace agentloop::excuse {

/// Text-generation port backed by a single HTTP endpoint: POST the prompt as
/// plain text, the response body is the generated text.
inline TextGeneratorPort make_http_generator(const std::string& endpoint,
                                             const std::string& auth_token = "",
                                             std::chrono::milliseconds timeout =
                                                 std::chrono::milliseconds(10000)) {
  return TextGeneratorPort{
      [endpoint, auth_token, timeout](const std::string& prompt) -> std::string {
        auto scheme_end = endpoint.find("://");
        if (scheme_end == std::string::npos) {
          throw std::runtime_error("generator endpoint must be a full URL");
        }
        auto path_start = endpoint.find('/', scheme_end + 3);
        const std::string host = endpoint.substr(0, path_start);
        const std::string path =
            path_start == std::string::npos ? "/" : endpoint.substr(path_start);
        httplib::Client client(host);
        client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout));
        client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout));
        httplib::Headers headers;
        if (!auth_token.empty()) headers.emplace("Authorization", "Bearer " + auth_token);
        auto res = client.Post(path, headers, prompt, "text/plain");
        if (!res || res->status != 200) {
          throw std::runtime_error("text generation request failed");
        }
        return res->body;
      },
      timeout};
}

}  // namespace agentloop::excuse
