// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "olg/document.hpp"
#include "olg/json.hpp"

namespace olg {

inline constexpr const char* kGeneratedLinkDescription = "Automatically generated link.";

/// Two GET paths where `child` extends `parent` by one or more segments.
struct PathPair {
    std::string parent;
    std::string child;
    std::vector<std::string> suffix_segments;

    friend bool operator==(const PathPair&, const PathPair&) = default;
};

struct ParameterMatch {
    std::string name;
    ParamLocation parent_location = ParamLocation::path;
    ParamLocation child_location = ParamLocation::path;

    friend bool operator==(const ParameterMatch&, const ParameterMatch&) = default;
};

struct GenerationOptions {
    /// Skip pairs that share no parameter.
    bool require_mapping = true;
    std::string link_description = kGeneratedLinkDescription;
};

struct GeneratedLink {
    std::string parent;
    std::string child;
    std::string response;
    std::string link_name;
    std::size_t mapping_count = 0;
};

struct GenerationReport {
    std::size_t pairs_considered = 0;
    std::size_t links_added = 0;
    std::size_t links_skipped_duplicate = 0;
    std::size_t pairs_skipped_no_success_response = 0;
    std::size_t pairs_skipped_no_mapping = 0;
    std::size_t parameters_mapped = 0;
    std::size_t child_params_unmapped = 0;
    std::vector<GeneratedLink> per_link;
    std::vector<std::string> warnings;

    Json to_json() const;
};

struct GenerationResult {
    Document document;
    GenerationReport report;
};

/// Every (parent, child) of GET paths with child = parent + "/" + suffix,
/// sorted by parent then child. Templated segments compare literally.
std::vector<PathPair> find_hierarchical_pairs(const Document& doc);

/// Structural schema equality after dereferencing internal references and
/// ignoring description/title/example/deprecated. Identical reference strings
/// compare equal without expansion; recursive schemas are compared
/// coinductively. An external reference makes the result false and appends a
/// warning. Throws CircularReference for reference chains that never reach a
/// schema.
bool schema_equal(const Document& doc, const Json& a, const Json& b, std::vector<std::string>* warnings = nullptr);

/// One match per non-cookie child parameter with a same-named, schema-equal
/// non-cookie parent parameter (same location preferred), in child order.
std::vector<ParameterMatch> match_parameters(const Document& doc, const std::vector<ParameterDef>& parent_params,
                                             const std::vector<ParameterDef>& child_params,
                                             std::vector<std::string>* warnings = nullptr);

/// Smallest explicit 2xx key, else the 2XX wildcard, else nullopt.
std::optional<std::string> select_success_response(const Operation& op);

/// camelCase of the suffix segments, made unique against `existing` by a
/// numeric suffix starting at 2.
std::string make_link_name(const PathPair& pair, const std::set<std::string>& existing);

/// operationId of the child GET when present and unique in the document,
/// otherwise an operationRef pointer to it.
LinkTarget target_reference(const Document& doc, const PathPair& pair);

/// Adds links for every eligible pair. The input is left untouched.
GenerationResult generate_links(const Document& doc, const GenerationOptions& options = {});

}  // namespace olg
