// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olg/document.hpp"
#include "olg/json.hpp"
#include "olg/link_generator.hpp"

namespace olg {

/// Schema keywords with no GraphQL counterpart, in reporting order.
inline constexpr std::array<std::string_view, 16> kInexpressibleKeywords = {
    "multipleOf", "minimum",  "maximum",  "exclusiveMinimum", "exclusiveMaximum", "minLength",
    "maxLength",  "pattern",  "minItems", "maxItems",         "uniqueItems",      "minProperties",
    "maxProperties", "oneOf", "anyOf",    "not"};

std::optional<std::size_t> keyword_index(std::string_view keyword) noexcept;

/// Per-keyword counters indexed like kInexpressibleKeywords.
class KeywordCounts {
  public:
    std::size_t& operator[](std::string_view keyword);
    std::size_t operator[](std::string_view keyword) const;
    std::size_t at(std::size_t index) const { return counts_.at(index); }
    std::size_t& at(std::size_t index) { return counts_.at(index); }
    bool any() const noexcept;

    friend bool operator==(const KeywordCounts&, const KeywordCounts&) = default;

  private:
    std::array<std::size_t, kInexpressibleKeywords.size()> counts_{};
};

struct MultiSuccessOperation {
    std::string path;
    HttpMethod method = HttpMethod::get;
    /// Explicit codes ascending, then wildcards.
    std::vector<std::string> success_keys;

    friend bool operator==(const MultiSuccessOperation&, const MultiSuccessOperation&) = default;
};

struct TranslatabilityReport {
    KeywordCounts property_counts;
    std::vector<MultiSuccessOperation> multi_success_operations;
    std::size_t preexisting_link_count = 0;

    bool property_present(std::string_view keyword) const { return property_counts[keyword] > 0; }
    bool has_any_flagged_property() const { return property_counts.any(); }

    Json to_json() const;
    /// Property,Count,Present rows in keyword order.
    std::string to_csv() const;
};

/// Occurrences of each keyword at Schema Object positions only. Every schema
/// object in the tree is visited once; references are not followed.
KeywordCounts scan_schema_properties(const Document& doc);

/// Operations of any method with two or more success response keys.
std::vector<MultiSuccessOperation> count_multi_success(const Document& doc);

/// Link definitions already present: every entry of a response `links` map
/// plus component links no response refers to.
std::size_t count_existing_links(const Document& doc);

TranslatabilityReport analyze_document(const Document& doc);

struct CorpusInput {
    std::string name;
    std::string text;
};

struct CorpusOptions {
    bool run_generator = false;
    GenerationOptions generation;
    /// Worker threads; 0 means hardware concurrency.
    unsigned jobs = 0;
};

struct CorpusFailure {
    std::string name;
    std::string message;

    friend bool operator==(const CorpusFailure&, const CorpusFailure&) = default;
};

struct CorpusReport {
    std::size_t document_total = 0;
    std::size_t parse_failures = 0;
    KeywordCounts per_property_document_count;
    std::size_t documents_with_any_property = 0;
    std::size_t documents_with_multi_success = 0;
    std::size_t documents_with_links = 0;
    bool generator_ran = false;
    std::size_t documents_link_generator_affected = 0;
    std::size_t total_links_generated = 0;
    std::size_t documents_converted_from_v2 = 0;
    /// Sorted by name then message.
    std::vector<CorpusFailure> failures;

    /// count / (document_total - parse_failures); 0 for an empty corpus.
    double ratio(std::size_t count) const;
    double property_ratio(std::string_view keyword) const { return ratio(per_property_document_count[keyword]); }

    Json to_json() const;
    /// Property,Count,Ratio rows with the ratio as a one-decimal percentage.
    std::string to_csv() const;

    friend bool operator==(const CorpusReport&, const CorpusReport&) = default;
};

/// Loads input `i` of `count`; may throw, which records a failure.
using CorpusSource = std::function<CorpusInput(std::size_t)>;

CorpusReport analyze_corpus(std::size_t count, const CorpusSource& source, const CorpusOptions& options = {});
CorpusReport analyze_corpus(const std::vector<CorpusInput>& inputs, const CorpusOptions& options = {});

}  // namespace olg
