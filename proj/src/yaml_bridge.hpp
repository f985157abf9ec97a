// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "olg/json.hpp"

namespace olg::detail {

Json yaml_to_json(std::string_view text);
std::string json_to_yaml(const Json& tree);

/// The non-string value a plain YAML scalar denotes, or nullopt for strings.
std::optional<Json> resolve_plain_scalar(std::string_view text);

}  // namespace olg::detail
