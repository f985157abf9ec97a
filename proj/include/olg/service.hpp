// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "olg/fetch.hpp"

namespace olg {

struct ServiceConfig {
    std::string bind_address = "0.0.0.0";
    int port = 8080;
    std::size_t max_body_bytes = 20u * 1024u * 1024u;
    /// Value for Access-Control-Allow-Origin; empty disables CORS headers.
    std::string cors_origin;
    /// Directory of frontend assets mounted at "/"; empty serves nothing.
    std::string static_dir;

    /// OLG_BIND, OLG_PORT, OLG_MAX_BODY_BYTES, OLG_CORS_ORIGIN, OLG_STATIC_DIR.
    static ServiceConfig from_env();
};

/// What the transport layer hands to an endpoint.
struct ApiRequest {
    std::string body;
    /// Content of a multipart `file` field, when the upload form was used.
    std::optional<std::string> uploaded_file;
    std::map<std::string, std::string> query;
};

struct ApiResponse {
    int status = 200;
    std::string body;
};

ApiResponse handle_generate(const ApiRequest& request, const UrlFetcher& fetch);
ApiResponse handle_analyze(const ApiRequest& request, const UrlFetcher& fetch);
ApiResponse handle_health();

/// HTTP front for the endpoints. Stateless: nothing about a request
/// outlives it.
class Service {
  public:
    explicit Service(ServiceConfig config, UrlFetcher fetch = {});
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds config.port (0 picks a free port) and returns the bound port,
    /// or -1 on failure.
    int bind();
    /// Blocks serving requests until stop().
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace olg
