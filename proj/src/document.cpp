// SPDX-License-Identifier: Apache-2.0
#include "olg/document.hpp"

#include <algorithm>
#include <cctype>

#include "olg/errors.hpp"
#include "olg/pointer.hpp"

namespace olg {

namespace {

const Json& empty_object() {
    static const Json kEmpty = Json::object();
    return kEmpty;
}

const Json& empty_array() {
    static const Json kEmpty = Json::array();
    return kEmpty;
}

const Json& null_json() {
    static const Json kNull;
    return kNull;
}

std::optional<std::string> string_field(const Json& node, const char* key) {
    if (!node.is_object()) return std::nullopt;
    auto it = node.find(key);
    if (it == node.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
}

}  // namespace

std::string_view to_string(HttpMethod method) noexcept {
    switch (method) {
        case HttpMethod::get: return "get";
        case HttpMethod::put: return "put";
        case HttpMethod::post: return "post";
        case HttpMethod::delete_: return "delete";
        case HttpMethod::options: return "options";
        case HttpMethod::head: return "head";
        case HttpMethod::patch: return "patch";
        case HttpMethod::trace: return "trace";
    }
    return "get";
}

std::optional<HttpMethod> parse_method(std::string_view key) noexcept {
    for (auto method : kAllMethods) {
        if (to_string(method) == key) return method;
    }
    return std::nullopt;
}

std::string_view to_string(ParamLocation location) noexcept {
    switch (location) {
        case ParamLocation::path: return "path";
        case ParamLocation::query: return "query";
        case ParamLocation::header: return "header";
        case ParamLocation::cookie: return "cookie";
    }
    return "query";
}

std::optional<ParamLocation> parse_location(std::string_view in) noexcept {
    if (in == "path") return ParamLocation::path;
    if (in == "query") return ParamLocation::query;
    if (in == "header") return ParamLocation::header;
    if (in == "cookie") return ParamLocation::cookie;
    return std::nullopt;
}

ParameterDef ParameterDef::from_json(const Json& node) {
    if (!node.is_object()) throw InvalidDocument("parameter is not an object");
    auto name = string_field(node, "name");
    auto in = string_field(node, "in");
    if (!name) throw InvalidDocument("parameter without a name");
    if (!in) throw InvalidDocument("parameter '" + *name + "' has no location");
    auto location = parse_location(*in);
    if (!location) throw InvalidDocument("parameter '" + *name + "' has unknown location '" + *in + "'");

    ParameterDef def;
    def.name = std::move(*name);
    def.location = *location;
    auto required = node.find("required");
    def.required = def.location == ParamLocation::path ||
                   (required != node.end() && required->is_boolean() && required->get<bool>());
    if (auto schema = node.find("schema"); schema != node.end()) {
        def.schema = *schema;
    } else if (auto content = node.find("content"); content != node.end() && content->is_object() && !content->empty()) {
        const auto& media = content->begin().value();
        if (media.is_object() && media.contains("schema")) def.schema = media["schema"];
    }
    def.description = string_field(node, "description");
    return def;
}

RuntimeExpression::RuntimeExpression(ParamLocation source_location, std::string source_name)
    : location_(source_location), name_(std::move(source_name)) {
    if (location_ == ParamLocation::cookie) throw Error("runtime expressions cannot read cookie parameters");
    if (name_.empty()) throw Error("runtime expression needs a parameter name");
}

RuntimeExpression RuntimeExpression::parse(std::string_view text) {
    constexpr std::string_view kPrefix = "$request.";
    if (text.substr(0, kPrefix.size()) != kPrefix) {
        throw Error("not a request runtime expression: '" + std::string(text) + "'");
    }
    auto rest = text.substr(kPrefix.size());
    auto dot = rest.find('.');
    if (dot == std::string_view::npos) throw Error("runtime expression without a name: '" + std::string(text) + "'");
    auto location = parse_location(rest.substr(0, dot));
    if (!location || *location == ParamLocation::cookie) {
        throw Error("runtime expression with unsupported source: '" + std::string(text) + "'");
    }
    return RuntimeExpression(*location, std::string(rest.substr(dot + 1)));
}

std::string RuntimeExpression::to_string() const {
    return "$request." + std::string(olg::to_string(location_)) + "." + name_;
}

Json LinkDef::to_json() const {
    Json link = Json::object();
    if (const auto* id = std::get_if<OperationIdTarget>(&target)) {
        link["operationId"] = id->operation_id;
    } else {
        link["operationRef"] = std::get<OperationRefTarget>(target).operation_ref;
    }
    if (!parameters.empty()) {
        Json params = Json::object();
        for (const auto& [name, expr] : parameters) params[name] = expr.to_string();
        link["parameters"] = std::move(params);
    }
    if (description) link["description"] = *description;
    return link;
}

LinkDef LinkDef::from_json(const Json& node) {
    if (!node.is_object()) throw Error("link is not an object");
    auto id = string_field(node, "operationId");
    auto ref = string_field(node, "operationRef");
    if (id.has_value() == ref.has_value()) throw Error("link must set exactly one of operationId and operationRef");
    LinkDef link{id ? LinkTarget(OperationIdTarget{*id}) : LinkTarget(OperationRefTarget{*ref}), {}, std::nullopt};
    if (auto params = node.find("parameters"); params != node.end()) {
        if (!params->is_object()) throw Error("link parameters must be a mapping");
        for (const auto& [name, value] : params->items()) {
            if (!value.is_string()) throw Error("link parameter '" + name + "' is not an expression string");
            link.parameters.emplace_back(name, RuntimeExpression::parse(value.get<std::string>()));
        }
    }
    link.description = string_field(node, "description");
    return link;
}

bool is_status_key(std::string_view key) noexcept {
    if (key == "default") return true;
    if (key.size() != 3 || key[0] < '1' || key[0] > '5') return false;
    const bool digits = std::isdigit(static_cast<unsigned char>(key[1])) && std::isdigit(static_cast<unsigned char>(key[2]));
    const bool wildcard = (key[1] == 'X' || key[1] == 'x') && (key[2] == 'X' || key[2] == 'x');
    return digits || wildcard;
}

std::optional<int> explicit_status_code(std::string_view key) noexcept {
    if (key.size() != 3) return std::nullopt;
    int code = 0;
    for (char c : key) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        code = code * 10 + (c - '0');
    }
    return code;
}

bool is_success_key(std::string_view key) noexcept {
    if (auto code = explicit_status_code(key)) return *code >= 200 && *code <= 299;
    return key.size() == 3 && key[0] == '2' && (key[1] == 'X' || key[1] == 'x') && (key[2] == 'X' || key[2] == 'x');
}

std::optional<std::string> Operation::operation_id() const { return string_field(*node_, "operationId"); }
std::optional<std::string> Operation::summary() const { return string_field(*node_, "summary"); }
std::optional<std::string> Operation::description() const { return string_field(*node_, "description"); }

const Json& Operation::parameters() const {
    auto it = node_->find("parameters");
    return it != node_->end() && it->is_array() ? *it : empty_array();
}

const Json& Operation::responses() const {
    auto it = node_->find("responses");
    return it != node_->end() && it->is_object() ? *it : empty_object();
}

std::vector<std::string> Operation::status_keys() const {
    std::vector<std::string> keys;
    for (const auto& [key, value] : responses().items()) {
        if (is_status_key(key)) keys.push_back(key);
    }
    return keys;
}

std::optional<Operation> PathItem::operation(HttpMethod method) const {
    auto it = node_->find(std::string(to_string(method)));
    if (it == node_->end() || !it->is_object()) return std::nullopt;
    return Operation(path_, method, &*it);
}

std::vector<Operation> PathItem::operations() const {
    std::vector<Operation> ops;
    for (auto it = node_->begin(); it != node_->end(); ++it) {
        auto method = parse_method(it.key());
        if (method && it->is_object()) ops.emplace_back(path_, *method, &*it);
    }
    return ops;
}

const Json& PathItem::shared_parameters() const {
    auto it = node_->find("parameters");
    return it != node_->end() && it->is_array() ? *it : empty_array();
}

Document::Document(Json tree) : tree_(std::move(tree)) {
    if (!tree_.is_object()) throw InvalidDocument("document root is not a mapping");
    auto version = string_field(tree_, "openapi");
    if (!version || version->rfind("3.", 0) != 0) {
        throw InvalidDocument("document is not OpenAPI 3 (openapi: '" + version.value_or("") + "')");
    }
    if (auto paths = tree_.find("paths"); paths != tree_.end()) {
        if (!paths->is_object()) throw InvalidDocument("'paths' is not a mapping");
        for (const auto& [key, value] : paths->items()) {
            if (key.rfind("x-", 0) == 0) continue;
            if (key.empty() || key.front() != '/') throw InvalidDocument("path '" + key + "' does not start with '/'");
            if (!value.is_object()) throw InvalidDocument("path item '" + key + "' is not a mapping");
        }
    }
}

std::string Document::openapi_version() const { return tree_["openapi"].get<std::string>(); }

const Json& Document::info() const {
    auto it = tree_.find("info");
    return it != tree_.end() ? *it : null_json();
}

std::vector<std::string> Document::servers() const {
    std::vector<std::string> urls;
    auto it = tree_.find("servers");
    if (it == tree_.end() || !it->is_array()) return urls;
    for (const auto& server : *it) {
        if (auto url = string_field(server, "url")) urls.push_back(*url);
    }
    return urls;
}

const Json& Document::components() const {
    auto it = tree_.find("components");
    return it != tree_.end() && it->is_object() ? *it : empty_object();
}

std::vector<std::string> Document::path_templates() const {
    std::vector<std::string> out;
    auto paths = tree_.find("paths");
    if (paths == tree_.end()) return out;
    for (const auto& [key, value] : paths->items()) {
        if (!key.empty() && key.front() == '/') out.push_back(key);
    }
    return out;
}

std::optional<PathItem> Document::path_item(std::string_view path) const {
    auto paths = tree_.find("paths");
    if (paths == tree_.end() || path.empty() || path.front() != '/') return std::nullopt;
    auto it = paths->find(std::string(path));
    if (it == paths->end()) return std::nullopt;
    const Json* node = &*it;
    if (is_reference(*node)) {
        try {
            node = &deref(tree_, *node);
        } catch (const Error&) {
            return PathItem(std::string(path), &empty_object());
        }
        if (!node->is_object()) return PathItem(std::string(path), &empty_object());
    }
    return PathItem(std::string(path), node);
}

std::optional<Operation> Document::operation(std::string_view path, HttpMethod method) const {
    auto item = path_item(path);
    if (!item) return std::nullopt;
    return item->operation(method);
}

std::vector<Operation> Document::operations() const {
    std::vector<Operation> ops;
    for (const auto& path : path_templates()) {
        auto item = path_item(path);
        for (auto& op : item->operations()) ops.push_back(std::move(op));
    }
    return ops;
}

namespace {

// Resolves one ParameterDef-or-Reference entry, appending a problem message
// instead of throwing when it cannot be used.
std::optional<ParameterDef> resolve_parameter(const Document& doc, const Json& entry, std::vector<std::string>& problems) {
    try {
        return ParameterDef::from_json(deref(doc, entry));
    } catch (const Error& e) {
        problems.push_back(e.what());
        return std::nullopt;
    }
}

}  // namespace

EffectiveParameters collect_effective_parameters(const Document& doc, std::string_view path, HttpMethod method) {
    auto item = doc.path_item(path);
    if (!item) throw InvalidDocument("no path '" + std::string(path) + "'");
    auto op = item->operation(method);
    if (!op) throw InvalidDocument("no " + std::string(to_string(method)) + " operation on '" + std::string(path) + "'");

    EffectiveParameters result;
    auto& params = result.parameters;
    auto same_key = [](const ParameterDef& a, const ParameterDef& b) {
        return a.name == b.name && a.location == b.location;
    };
    auto upsert = [&](ParameterDef def) {
        auto existing = std::find_if(params.begin(), params.end(), [&](const auto& p) { return same_key(p, def); });
        if (existing != params.end()) {
            *existing = std::move(def);
        } else {
            params.push_back(std::move(def));
        }
    };
    for (const auto& entry : item->shared_parameters()) {
        if (auto def = resolve_parameter(doc, entry, result.problems)) upsert(std::move(*def));
    }
    for (const auto& entry : op->parameters()) {
        if (auto def = resolve_parameter(doc, entry, result.problems)) upsert(std::move(*def));
    }
    return result;
}

std::vector<ParameterDef> effective_parameters(const Document& doc, std::string_view path, HttpMethod method) {
    auto item = doc.path_item(path);
    if (!item) throw InvalidDocument("no path '" + std::string(path) + "'");
    auto op = item->operation(method);
    if (!op) throw InvalidDocument("no " + std::string(to_string(method)) + " operation on '" + std::string(path) + "'");

    auto resolve_strict = [&](const Json& entry) {
        try {
            return ParameterDef::from_json(deref(doc, entry));
        } catch (const UnresolvableReference&) {
            throw;
        } catch (const Error& e) {
            if (is_reference(entry)) throw UnresolvableReference(reference_of(entry), e.what());
            throw;
        }
    };
    auto merged = collect_effective_parameters(doc, path, method);
    if (!merged.problems.empty()) {
        for (const auto& entry : item->shared_parameters()) resolve_strict(entry);
        for (const auto& entry : op->parameters()) resolve_strict(entry);
    }
    return std::move(merged.parameters);
}

}  // namespace olg
