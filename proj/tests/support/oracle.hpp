// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reference implementations used to cross-check the library. Nothing here
// calls into link_generator; the point is an independent second opinion.

#include <random>
#include <set>
#include <string>
#include <utility>

#include "olg/json.hpp"

namespace olg::testing {

using Edge = std::pair<std::string, std::string>;

/// A small OpenAPI 3 tree: at most `max_paths` paths built from a tiny
/// segment alphabet, random GET/POST operations, random parameters drawn
/// from a shared pool (some at path-item level, some with annotation noise),
/// random response codes and the occasional pre-existing link.
Json random_document(std::mt19937_64& rng, int max_paths = 6);

/// Brute force over all ordered path pairs: the (parent, child) edges a
/// correct generator must add with require_mapping on.
std::set<Edge> oracle_edges(const Json& tree);

/// Link edges present in `after` but not in `before`, found by reading the
/// link targets back out of the output tree.
std::set<Edge> added_edges(const Json& before, const Json& after);

}  // namespace olg::testing
