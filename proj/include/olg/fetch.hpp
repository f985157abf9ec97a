// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "olg/errors.hpp"

namespace olg {

class FetchError : public Error {
  public:
    using Error::Error;
};

struct FetchOptions {
    std::chrono::seconds timeout{30};
    std::size_t max_bytes = 20u * 1024u * 1024u;
};

/// http:// or https:// prefix.
bool is_url(std::string_view text) noexcept;

/// GET the URL and return the body, following at most 5 redirects.
/// Throws FetchError on connection failure, non-2xx status or oversize body.
std::string fetch_url(const std::string& url, const FetchOptions& options = {});

using UrlFetcher = std::function<std::string(const std::string&)>;

}  // namespace olg
