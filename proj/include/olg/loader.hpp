// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olg/document.hpp"
#include "olg/json.hpp"

namespace olg {

enum class DocFormat { json, yaml };

std::string_view to_string(DocFormat format) noexcept;
std::optional<DocFormat> parse_format(std::string_view name) noexcept;

enum class VersionKind { swagger2, openapi3, unknown };

struct VersionTag {
    VersionKind kind = VersionKind::unknown;
    std::string raw;

    friend bool operator==(const VersionTag&, const VersionTag&) = default;
};

/// json when the first non-whitespace byte is '{' or '['; yaml otherwise.
/// Throws EmptyInput on zero-length text.
DocFormat detect_format(std::string_view text);

/// Text to tree. YAML aliases and merge keys are expanded; plain scalars are
/// typed with the YAML 1.2 core schema. Throws SyntaxError.
Json parse_tree(std::string_view text, DocFormat format);
Json parse_tree(std::string_view text);

VersionTag detect_version(const Json& tree);

struct ConversionResult {
    Document document;
    /// Everything the structural mapping could not carry over.
    std::vector<std::string> warnings;
};

/// Swagger 2.0 tree to an OpenAPI 3.0.3 Document. Throws ConversionError.
ConversionResult convert_v2_to_v3(const Json& v2);

struct LoadedDocument {
    Document document;
    VersionTag version;
    DocFormat format = DocFormat::json;
    std::vector<std::string> warnings;
};

/// Parse, detect the version and convert Swagger 2.0 input. Throws
/// EmptyInput, SyntaxError, UnsupportedVersion, ConversionError or
/// InvalidDocument.
LoadedDocument parse_document(std::string_view text);

/// Deterministic text. Keys keep tree order; output ends with a newline.
std::string serialize(const Document& doc, DocFormat format);
std::string serialize_tree(const Json& tree, DocFormat format);

}  // namespace olg
