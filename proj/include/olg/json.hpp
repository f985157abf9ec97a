// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

namespace olg {

/// Insertion-ordered JSON tree. Every document is held in this form so that
/// keys keep their source order through parse and serialize.
using Json = nlohmann::ordered_json;

}  // namespace olg
