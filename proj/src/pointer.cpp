// SPDX-License-Identifier: Apache-2.0
#include "olg/pointer.hpp"

#include <algorithm>
#include <charconv>

#include "olg/document.hpp"
#include "olg/errors.hpp"

namespace olg {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

// URI fragments may percent-encode characters such as '{' or ' '.
std::string percent_decode(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '%' && i + 2 < text.size()) {
            const int hi = hex_value(text[i + 1]);
            const int lo = hex_value(text[i + 2]);
            if (hi >= 0 && lo >= 0) {
                out.push_back(static_cast<char>(hi * 16 + lo));
                i += 2;
                continue;
            }
        }
        out.push_back(text[i]);
    }
    return out;
}

std::string unescape_token(std::string_view raw, std::string_view whole) {
    std::string token;
    token.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] != '~') {
            token.push_back(raw[i]);
            continue;
        }
        if (i + 1 >= raw.size() || (raw[i + 1] != '0' && raw[i + 1] != '1')) {
            throw MalformedPointer("invalid escape in JSON pointer '" + std::string(whole) + "'");
        }
        token.push_back(raw[i + 1] == '1' ? '/' : '~');
        ++i;
    }
    return token;
}

bool parse_index(const std::string& token, std::size_t& index) {
    if (token.empty() || (token.size() > 1 && token[0] == '0')) return false;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, index);
    return ec == std::errc() && ptr == end;
}

}  // namespace

JsonPointer JsonPointer::parse(std::string_view text) {
    if (text.empty()) return {};
    if (text.front() != '/') {
        throw MalformedPointer("JSON pointer '" + std::string(text) + "' must start with '/'");
    }
    std::vector<std::string> tokens;
    std::size_t start = 1;
    while (true) {
        const auto slash = text.find('/', start);
        const auto raw = text.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
        tokens.push_back(unescape_token(raw, text));
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    return JsonPointer(std::move(tokens));
}

JsonPointer JsonPointer::from_reference(std::string_view ref) {
    if (ref.empty() || ref.front() != '#') throw ExternalReference(std::string(ref));
    return parse(percent_decode(ref.substr(1)));
}

JsonPointer JsonPointer::child(std::string token) const {
    auto tokens = tokens_;
    tokens.push_back(std::move(token));
    return JsonPointer(std::move(tokens));
}

std::string escape_pointer_token(std::string_view token) {
    std::string out;
    out.reserve(token.size());
    for (char c : token) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string JsonPointer::to_string() const {
    std::string out;
    for (const auto& token : tokens_) {
        out.push_back('/');
        out += escape_pointer_token(token);
    }
    return out;
}

std::string JsonPointer::to_reference() const { return "#" + to_string(); }

const Json& resolve_pointer(const Json& root, const JsonPointer& ptr) {
    const Json* node = &root;
    const auto& tokens = ptr.tokens();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& token = tokens[i];
        if (node->is_object()) {
            auto it = node->find(token);
            if (it == node->end()) throw PointerTargetMissing(ptr.to_string(), i);
            node = &*it;
        } else if (node->is_array()) {
            std::size_t index = 0;
            if (!parse_index(token, index) || index >= node->size()) {
                throw PointerTargetMissing(ptr.to_string(), i);
            }
            node = &(*node)[index];
        } else {
            throw PointerTargetMissing(ptr.to_string(), i);
        }
    }
    return *node;
}

const Json& resolve_pointer(const Document& doc, const JsonPointer& ptr) { return resolve_pointer(doc.tree(), ptr); }

bool is_reference(const Json& node) {
    if (!node.is_object()) return false;
    auto it = node.find("$ref");
    return it != node.end() && it->is_string();
}

std::string reference_of(const Json& node) {
    return is_reference(node) ? node["$ref"].get<std::string>() : std::string();
}

const Json& deref(const Json& root, const Json& node) {
    std::vector<std::string> chain;
    const Json* current = &node;
    while (is_reference(*current)) {
        auto ref = reference_of(*current);
        if (std::find(chain.begin(), chain.end(), ref) != chain.end()) throw CircularReference(ref);
        const auto ptr = JsonPointer::from_reference(ref);
        chain.push_back(std::move(ref));
        current = &resolve_pointer(root, ptr);
    }
    return *current;
}

const Json& deref(const Document& doc, const Json& node) { return deref(doc.tree(), node); }

}  // namespace olg
