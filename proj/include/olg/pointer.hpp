// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "olg/json.hpp"

namespace olg {

class Document;

/// A JSON Pointer held as unescaped reference tokens. The empty pointer
/// addresses the whole document.
class JsonPointer {
  public:
    JsonPointer() = default;
    explicit JsonPointer(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}

    /// Parses "" or "/a/b~1c". Throws MalformedPointer.
    static JsonPointer parse(std::string_view text);

    /// Parses an internal reference "#/a/b" (the fragment is percent-decoded).
    /// Throws ExternalReference for anything not starting with '#'.
    static JsonPointer from_reference(std::string_view ref);

    const std::vector<std::string>& tokens() const noexcept { return tokens_; }
    bool empty() const noexcept { return tokens_.empty(); }

    JsonPointer child(std::string token) const;

    /// Escaped pointer text ("/paths/~1a~1b/get").
    std::string to_string() const;
    /// "#" followed by the escaped pointer.
    std::string to_reference() const;

    friend bool operator==(const JsonPointer&, const JsonPointer&) = default;
    friend auto operator<=>(const JsonPointer&, const JsonPointer&) = default;

  private:
    std::vector<std::string> tokens_;
};

std::string escape_pointer_token(std::string_view token);

/// Walks `root` token by token. Throws PointerTargetMissing naming the index of
/// the first token that cannot be followed.
const Json& resolve_pointer(const Json& root, const JsonPointer& ptr);
const Json& resolve_pointer(const Document& doc, const JsonPointer& ptr);

/// True when `node` is an object carrying a string "$ref".
bool is_reference(const Json& node);
/// The "$ref" string of a reference node; empty for anything else.
std::string reference_of(const Json& node);

/// Follows internal references until a non-reference node is reached.
/// Throws ExternalReference, CircularReference or PointerTargetMissing.
const Json& deref(const Json& root, const Json& node);
const Json& deref(const Document& doc, const Json& node);

}  // namespace olg
