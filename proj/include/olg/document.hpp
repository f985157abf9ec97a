// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "olg/json.hpp"

namespace olg {

enum class HttpMethod { get, put, post, delete_, options, head, patch, trace };

inline constexpr std::array<HttpMethod, 8> kAllMethods = {HttpMethod::get,    HttpMethod::put,     HttpMethod::post,
                                                          HttpMethod::delete_, HttpMethod::options, HttpMethod::head,
                                                          HttpMethod::patch,  HttpMethod::trace};

std::string_view to_string(HttpMethod method) noexcept;
/// Only the lowercase spellings used as Path Item keys are accepted.
std::optional<HttpMethod> parse_method(std::string_view key) noexcept;

enum class ParamLocation { path, query, header, cookie };

std::string_view to_string(ParamLocation location) noexcept;
std::optional<ParamLocation> parse_location(std::string_view in) noexcept;

/// A resolved parameter. `schema` is the Schema Object or a Reference to one,
/// null when the parameter declares neither `schema` nor `content`.
struct ParameterDef {
    std::string name;
    ParamLocation location = ParamLocation::query;
    bool required = false;
    Json schema;
    std::optional<std::string> description;

    static ParameterDef from_json(const Json& node);
};

/// `$request.<location>.<name>`; cookie sources are not representable.
class RuntimeExpression {
  public:
    RuntimeExpression(ParamLocation source_location, std::string source_name);

    /// Throws Error when `text` is not a request path/query/header expression.
    static RuntimeExpression parse(std::string_view text);

    ParamLocation source_location() const noexcept { return location_; }
    const std::string& source_name() const noexcept { return name_; }
    std::string to_string() const;

    friend bool operator==(const RuntimeExpression&, const RuntimeExpression&) = default;

  private:
    ParamLocation location_;
    std::string name_;
};

struct OperationIdTarget {
    std::string operation_id;
    friend bool operator==(const OperationIdTarget&, const OperationIdTarget&) = default;
};

struct OperationRefTarget {
    std::string operation_ref;
    friend bool operator==(const OperationRefTarget&, const OperationRefTarget&) = default;
};

using LinkTarget = std::variant<OperationIdTarget, OperationRefTarget>;

/// An OpenAPI 3 Link Object restricted to what the generator emits.
struct LinkDef {
    LinkTarget target;
    /// Target parameter name -> expression, in emission order.
    std::vector<std::pair<std::string, RuntimeExpression>> parameters;
    std::optional<std::string> description;

    Json to_json() const;
    /// Throws Error unless exactly one of operationId/operationRef is set and
    /// every parameter value is a request runtime expression.
    static LinkDef from_json(const Json& node);
};

/// True for "200", "2XX"/"2xx" style wildcards and "default".
bool is_status_key(std::string_view key) noexcept;
/// The numeric code of a three-digit key, nullopt for wildcards and default.
std::optional<int> explicit_status_code(std::string_view key) noexcept;
/// Explicit code in 200..299 or the 2XX wildcard. "default" is not a success key.
bool is_success_key(std::string_view key) noexcept;

class Operation {
  public:
    Operation(std::string path, HttpMethod method, const Json* node) : path_(std::move(path)), method_(method), node_(node) {}

    const std::string& path() const noexcept { return path_; }
    HttpMethod method() const noexcept { return method_; }
    const Json& node() const noexcept { return *node_; }

    std::optional<std::string> operation_id() const;
    std::optional<std::string> summary() const;
    std::optional<std::string> description() const;
    /// The raw `parameters` array (ParameterDef-or-Reference); empty array when absent.
    const Json& parameters() const;
    /// The raw `responses` object; empty object when absent.
    const Json& responses() const;
    std::vector<std::string> status_keys() const;

  private:
    std::string path_;
    HttpMethod method_;
    const Json* node_;
};

class PathItem {
  public:
    PathItem(std::string path, const Json* node) : path_(std::move(path)), node_(node) {}

    const std::string& path() const noexcept { return path_; }
    const Json& node() const noexcept { return *node_; }

    std::optional<Operation> operation(HttpMethod method) const;
    /// Operations in document order.
    std::vector<Operation> operations() const;
    const Json& shared_parameters() const;

  private:
    std::string path_;
    const Json* node_;
};

/// An OpenAPI 3 description. The tree is owned and never mutated; views
/// (PathItem, Operation) borrow from it and must not outlive the Document.
class Document {
  public:
    /// Throws InvalidDocument when the tree is not an object, the `openapi`
    /// field does not start with "3." or a path key does not start with "/".
    explicit Document(Json tree);

    const Json& tree() const noexcept { return tree_; }

    std::string openapi_version() const;
    const Json& info() const;
    std::vector<std::string> servers() const;
    const Json& components() const;

    /// Path templates in document order (vendor extension keys excluded).
    std::vector<std::string> path_templates() const;
    std::optional<PathItem> path_item(std::string_view path) const;
    std::optional<Operation> operation(std::string_view path, HttpMethod method) const;
    std::vector<Operation> operations() const;

    friend bool operator==(const Document& a, const Document& b) { return a.tree_ == b.tree_; }

  private:
    Json tree_;
};

struct EffectiveParameters {
    std::vector<ParameterDef> parameters;
    /// One message per reference that could not be resolved (entry skipped).
    std::vector<std::string> problems;
};

/// Path-item shared parameters merged with operation parameters; an operation
/// entry replaces a shared entry with the same (name, location). Shared
/// entries come first in their original order, overrides keep the shared slot.
EffectiveParameters collect_effective_parameters(const Document& doc, std::string_view path, HttpMethod method);

/// As collect_effective_parameters but throws UnresolvableReference on the
/// first unresolved entry, and InvalidDocument when the operation is missing.
std::vector<ParameterDef> effective_parameters(const Document& doc, std::string_view path, HttpMethod method);

}  // namespace olg
