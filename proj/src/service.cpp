// SPDX-License-Identifier: Apache-2.0
#include "olg/service.hpp"

#include <httplib.h>

#include <cstdlib>

#include "olg/analyzer.hpp"
#include "olg/errors.hpp"
#include "olg/json.hpp"
#include "olg/pipeline.hpp"
#include "olg/version.hpp"

namespace olg {

namespace {

class BadRequest : public Error {
  public:
    using Error::Error;
};

ApiResponse json_response(int status, const Json& body) { return {status, body.dump(2) + "\n"}; }

ApiResponse error_response(int status, const std::string& message) {
    return json_response(status, {{"error", message}});
}

struct Source {
    std::string text;
    std::string label;
};

Source read_source(const ApiRequest& request, const UrlFetcher& fetch) {
    if (request.uploaded_file) return {*request.uploaded_file, "upload"};
    Json body;
    try {
        body = Json::parse(request.body);
    } catch (const Json::parse_error& e) {
        throw BadRequest(std::string("request body is not JSON: ") + e.what());
    }
    if (!body.is_object()) throw BadRequest("request body must be a JSON object");
    const Json& source = body.contains("source") ? body["source"] : body;
    if (!source.is_object()) throw BadRequest("'source' must be an object");
    const bool has_text = source.contains("text");
    const bool has_url = source.contains("url");
    if (has_text == has_url) throw BadRequest("'source' needs exactly one of 'text' or 'url'");
    if (has_text) {
        if (!source["text"].is_string()) throw BadRequest("'source.text' must be a string");
        return {source["text"].get<std::string>(), "input"};
    }
    if (!source["url"].is_string()) throw BadRequest("'source.url' must be a string");
    const auto url = source["url"].get<std::string>();
    if (!is_url(url)) throw BadRequest("'source.url' must be an http or https URL");
    return {fetch(url), url};
}

bool flag(const std::map<std::string, std::string>& query, const std::string& key) {
    auto it = query.find(key);
    return it != query.end() && (it->second == "true" || it->second == "1" || it->second.empty());
}

// Maps the library's error types onto status codes.
template <typename Fn>
ApiResponse guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const BadRequest& e) {
        return json_response(400, {{"error", e.what()}, {"line", nullptr}, {"column", nullptr}});
    } catch (const SyntaxError& e) {
        return json_response(400, {{"error", e.what()}, {"line", e.line()}, {"column", e.column()}});
    } catch (const EmptyInput& e) {
        return json_response(400, {{"error", e.what()}, {"line", nullptr}, {"column", nullptr}});
    } catch (const FetchError& e) {
        return error_response(502, e.what());
    } catch (const UnsupportedVersion& e) {
        return error_response(422, e.what());
    } catch (const ConversionError& e) {
        return error_response(422, e.what());
    } catch (const InvalidDocument& e) {
        return error_response(422, e.what());
    } catch (const std::exception& e) {
        return error_response(500, e.what());
    }
}

}  // namespace

ServiceConfig ServiceConfig::from_env() {
    ServiceConfig config;
    auto env = [](const char* name) -> std::optional<std::string> {
        const char* value = std::getenv(name);
        if (value == nullptr) return std::nullopt;
        return std::string(value);
    };
    if (auto v = env("OLG_BIND")) config.bind_address = *v;
    if (auto v = env("OLG_PORT")) config.port = std::stoi(*v);
    if (auto v = env("OLG_MAX_BODY_BYTES")) config.max_body_bytes = std::stoull(*v);
    if (auto v = env("OLG_CORS_ORIGIN")) config.cors_origin = *v;
    if (auto v = env("OLG_STATIC_DIR")) config.static_dir = *v;
    return config;
}

ApiResponse handle_generate(const ApiRequest& request, const UrlFetcher& fetch) {
    return guarded([&] {
        std::optional<DocFormat> format;
        if (auto it = request.query.find("format"); it != request.query.end() && !it->second.empty()) {
            format = parse_format(it->second);
            if (!format) throw BadRequest("format must be 'json' or 'yaml'");
        }
        GenerationOptions options;
        options.require_mapping = !flag(request.query, "allow_unmapped");
        const auto source = read_source(request, fetch);
        auto run = run_generate(source.text, format, options, source.label);
        return json_response(200, {{"document", run.document_text},
                                   {"diff", run.diff},
                                   {"format", to_string(run.output_format)},
                                   {"stats", run.result.report.to_json()}});
    });
}

ApiResponse handle_analyze(const ApiRequest& request, const UrlFetcher& fetch) {
    return guarded([&] {
        const auto source = read_source(request, fetch);
        auto loaded = parse_document(source.text);
        return json_response(200, analyze_document(loaded.document).to_json());
    });
}

ApiResponse handle_health() { return json_response(200, {{"status", "ok"}, {"version", kVersion}}); }

struct Service::Impl {
    ServiceConfig config;
    UrlFetcher fetch;
    httplib::Server server;
    int port = -1;
};

Service::Service(ServiceConfig config, UrlFetcher fetch) : impl_(std::make_unique<Impl>()) {
    impl_->config = std::move(config);
    impl_->fetch = fetch ? std::move(fetch) : UrlFetcher([](const std::string& url) { return fetch_url(url); });
    auto& server = impl_->server;
    const auto& cfg = impl_->config;

    server.set_payload_max_length(cfg.max_body_bytes);
    if (!cfg.cors_origin.empty()) {
        server.set_default_headers({{"Access-Control-Allow-Origin", cfg.cors_origin},
                                    {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                    {"Access-Control-Allow-Headers", "Content-Type"}});
    }
    if (!cfg.static_dir.empty()) server.set_mount_point("/", cfg.static_dir);

    auto send = [](httplib::Response& res, const ApiResponse& api) {
        res.status = api.status;
        res.set_content(api.body, "application/json");
    };
    auto to_api = [](const httplib::Request& req) {
        ApiRequest api;
        if (req.is_multipart_form_data()) {
            if (req.has_file("file")) api.uploaded_file = req.get_file_value("file").content;
        } else {
            api.body = req.body;
        }
        for (const auto& [key, value] : req.params) api.query.emplace(key, value);
        return api;
    };
    auto fetcher = impl_->fetch;

    server.Post("/api/generate", [=](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_generate(to_api(req), fetcher));
    });
    server.Post("/api/analyze", [=](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_analyze(to_api(req), fetcher));
    });
    server.Get("/api/health", [=](const httplib::Request&, httplib::Response& res) { send(res, handle_health()); });

    auto not_allowed = [=](const std::string& allow) {
        return [=](const httplib::Request&, httplib::Response& res) {
            res.set_header("Allow", allow);
            send(res, error_response(405, "method not allowed"));
        };
    };
    for (const char* path : {"/api/generate", "/api/analyze"}) {
        server.Get(path, not_allowed("POST"));
        server.Put(path, not_allowed("POST"));
        server.Patch(path, not_allowed("POST"));
        server.Delete(path, not_allowed("POST"));
    }
    server.Post("/api/health", not_allowed("GET"));
    server.Put("/api/health", not_allowed("GET"));
    server.Patch("/api/health", not_allowed("GET"));
    server.Delete("/api/health", not_allowed("GET"));
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

Service::~Service() { stop(); }

int Service::bind() {
    auto& cfg = impl_->config;
    if (cfg.port == 0) {
        impl_->port = impl_->server.bind_to_any_port(cfg.bind_address);
    } else {
        impl_->port = impl_->server.bind_to_port(cfg.bind_address, cfg.port) ? cfg.port : -1;
    }
    return impl_->port;
}

bool Service::listen_after_bind() { return impl_->server.listen_after_bind(); }

void Service::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace olg
