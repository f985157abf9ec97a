// SPDX-License-Identifier: Apache-2.0
#include "olg/loader.hpp"

#include "olg/errors.hpp"
#include "yaml_bridge.hpp"

namespace olg {

namespace {

std::string_view skip_bom(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    return text;
}

void line_column_at(std::string_view text, std::size_t byte, std::size_t& line, std::size_t& column) {
    line = 1;
    column = 1;
    const auto end = std::min(byte, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
}

// Version fields written without quotes in YAML arrive as numbers.
std::optional<std::string> version_text(const Json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_float()) return value.dump();
    if (value.is_number()) return value.dump() + ".0";
    return std::nullopt;
}

}  // namespace

std::string_view to_string(DocFormat format) noexcept { return format == DocFormat::json ? "json" : "yaml"; }

std::optional<DocFormat> parse_format(std::string_view name) noexcept {
    if (name == "json") return DocFormat::json;
    if (name == "yaml" || name == "yml") return DocFormat::yaml;
    return std::nullopt;
}

DocFormat detect_format(std::string_view text) {
    if (text.empty()) throw EmptyInput();
    for (char c : skip_bom(text)) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return (c == '{' || c == '[') ? DocFormat::json : DocFormat::yaml;
    }
    return DocFormat::yaml;
}

Json parse_tree(std::string_view text, DocFormat format) {
    if (format == DocFormat::yaml) return detail::yaml_to_json(skip_bom(text));
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        std::size_t line = 0;
        std::size_t column = 0;
        line_column_at(text, e.byte == 0 ? 0 : e.byte - 1, line, column);
        std::string message = e.what();
        if (auto pos = message.find("] "); pos != std::string::npos) message = message.substr(pos + 2);
        throw SyntaxError("invalid JSON: " + message, line, column);
    }
}

Json parse_tree(std::string_view text) { return parse_tree(text, detect_format(text)); }

VersionTag detect_version(const Json& tree) {
    if (!tree.is_object()) return {};
    if (auto it = tree.find("swagger"); it != tree.end()) {
        auto raw = version_text(*it).value_or("");
        return {raw == "2.0" ? VersionKind::swagger2 : VersionKind::unknown, raw};
    }
    if (auto it = tree.find("openapi"); it != tree.end()) {
        auto raw = version_text(*it).value_or("");
        return {raw.rfind("3.", 0) == 0 ? VersionKind::openapi3 : VersionKind::unknown, raw};
    }
    return {};
}

LoadedDocument parse_document(std::string_view text) {
    const auto format = detect_format(text);
    auto tree = parse_tree(text, format);
    auto version = detect_version(tree);
    switch (version.kind) {
        case VersionKind::swagger2: {
            auto converted = convert_v2_to_v3(tree);
            return {std::move(converted.document), std::move(version), format, std::move(converted.warnings)};
        }
        case VersionKind::openapi3:
            if (!tree["openapi"].is_string()) tree["openapi"] = version.raw;
            return {Document(std::move(tree)), std::move(version), format, {}};
        case VersionKind::unknown:
            break;
    }
    throw UnsupportedVersion(version.raw);
}

std::string serialize_tree(const Json& tree, DocFormat format) {
    if (format == DocFormat::yaml) return detail::json_to_yaml(tree);
    return tree.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

std::string serialize(const Document& doc, DocFormat format) { return serialize_tree(doc.tree(), format); }

}  // namespace olg
