// SPDX-License-Identifier: Apache-2.0
#include "olg/fetch.hpp"

#include <httplib.h>

namespace olg {

bool is_url(std::string_view text) noexcept {
    return text.rfind("http://", 0) == 0 || text.rfind("https://", 0) == 0;
}

std::string fetch_url(const std::string& url, const FetchOptions& options) {
    if (!is_url(url)) throw FetchError("not an http(s) URL: '" + url + "'");
    const auto scheme_end = url.find("://") + 3;
    const auto path_start = url.find('/', scheme_end);
    const auto origin = url.substr(0, path_start);
    const auto path = path_start == std::string::npos ? std::string("/") : url.substr(path_start);

    httplib::Client client(origin);
    if (!client.is_valid()) throw FetchError("cannot create a client for '" + url + "'");
    client.set_follow_location(true);
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);
    client.set_write_timeout(options.timeout);

    std::string body;
    bool too_large = false;
    auto result = client.Get(path, [&](const char* data, std::size_t length) {
        if (body.size() + length > options.max_bytes) {
            too_large = true;
            return false;
        }
        body.append(data, length);
        return true;
    });
    if (too_large) throw FetchError(url + ": response exceeds " + std::to_string(options.max_bytes) + " bytes");
    if (!result) throw FetchError(url + ": " + httplib::to_string(result.error()));
    if (result->status < 200 || result->status > 299) {
        throw FetchError(url + ": HTTP status " + std::to_string(result->status));
    }
    return body;
}

}  // namespace olg
