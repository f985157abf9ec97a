// SPDX-License-Identifier: Apache-2.0
// Swagger 2.0 -> OpenAPI 3.0.3 structural mapping. Only what GET link
// generation and schema analysis need is mapped faithfully; every lossy step
// leaves a warning.
#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "olg/errors.hpp"
#include "olg/loader.hpp"

namespace olg {

namespace {

constexpr const char* kOutputVersion = "3.0.3";

// Keywords a Swagger 2.0 non-body parameter, header or items object carries
// inline and OpenAPI 3 moves under `schema`.
constexpr std::array<std::string_view, 16> kInlineSchemaKeywords = {
    "type",    "format",    "items",    "default",  "maximum",  "exclusiveMaximum", "minimum",     "exclusiveMinimum",
    "maxLength", "minLength", "pattern", "maxItems", "minItems", "uniqueItems",      "enum",        "multipleOf"};

bool is_inline_schema_keyword(std::string_view key) {
    return std::find(kInlineSchemaKeywords.begin(), kInlineSchemaKeywords.end(), key) != kInlineSchemaKeywords.end();
}

std::string rewrite_ref(const std::string& ref, const std::set<std::string>& body_params) {
    const auto hash = ref.find('#');
    if (hash == std::string::npos) return ref;
    const auto prefix = ref.substr(0, hash);
    const auto fragment = ref.substr(hash);
    auto replace = [&](std::string_view from, std::string_view to) -> std::optional<std::string> {
        if (fragment.rfind(from, 0) != 0) return std::nullopt;
        return prefix + std::string(to) + fragment.substr(from.size());
    };
    if (auto r = replace("#/definitions/", "#/components/schemas/")) return *r;
    if (fragment.rfind("#/parameters/", 0) == 0) {
        const auto name = fragment.substr(std::string_view("#/parameters/").size());
        if (prefix.empty() && body_params.count(name)) return "#/components/requestBodies/" + name;
        return prefix + "#/components/parameters/" + name;
    }
    if (auto r = replace("#/responses/", "#/components/responses/")) return *r;
    return ref;
}

void rewrite_refs(Json& node, const std::set<std::string>& body_params) {
    if (node.is_object()) {
        for (auto& [key, value] : node.items()) {
            if (key == "$ref" && value.is_string()) {
                value = rewrite_ref(value.get<std::string>(), body_params);
            } else {
                rewrite_refs(value, body_params);
            }
        }
    } else if (node.is_array()) {
        for (auto& item : node) rewrite_refs(item, body_params);
    }
}

class Converter {
  public:
    explicit Converter(const Json& v2) : v2_(v2) {
        global_produces_ = media_list(v2_, "produces");
        global_consumes_ = media_list(v2_, "consumes");
        if (auto params = v2_.find("parameters"); params != v2_.end() && params->is_object()) {
            for (const auto& [name, param] : params->items()) {
                const auto in = param.value("in", "");
                if (in == "body") body_params_.insert(name);
                if (in == "formData") form_params_.insert(name);
            }
        }
    }

    ConversionResult run() {
        if (!v2_.is_object()) throw ConversionError("Swagger document root is not a mapping");
        if (auto paths = v2_.find("paths"); paths != v2_.end() && !paths->is_object()) {
            throw ConversionError("Swagger 'paths' is not a mapping");
        }

        Json out = Json::object();
        out["openapi"] = kOutputVersion;
        if (auto info = v2_.find("info"); info != v2_.end()) out["info"] = *info;
        if (auto servers = convert_servers(); !servers.empty()) out["servers"] = std::move(servers);

        static const std::set<std::string> kConsumed = {
            "swagger",     "info",       "host",      "basePath",           "schemes", "consumes",
            "produces",    "definitions", "parameters", "responses",        "securityDefinitions"};
        for (const auto& [key, value] : v2_.items()) {
            if (kConsumed.count(key)) continue;
            if (key == "paths") {
                out["paths"] = convert_paths(value);
            } else {
                out[key] = value;
            }
        }
        if (!out.contains("paths")) out["paths"] = Json::object();

        auto components = convert_components();
        if (!components.empty()) out["components"] = std::move(components);

        rewrite_refs(out, body_params_);
        return {Document(std::move(out)), std::move(warnings_)};
    }

  private:
    static Json media_list(const Json& node, const char* key) {
        auto it = node.find(key);
        if (it == node.end() || !it->is_array()) return Json();
        Json list = Json::array();
        for (const auto& mt : *it) {
            if (mt.is_string()) list.push_back(mt);
        }
        return list;
    }

    Json convert_servers() const {
        Json servers = Json::array();
        auto host = v2_.find("host");
        auto base = v2_.find("basePath");
        const std::string base_path = base != v2_.end() && base->is_string() ? base->get<std::string>() : "";
        if (host != v2_.end() && host->is_string()) {
            auto schemes = media_list(v2_, "schemes");
            if (schemes.is_array() && !schemes.empty()) {
                for (const auto& scheme : schemes) {
                    servers.push_back({{"url", scheme.get<std::string>() + "://" + host->get<std::string>() + base_path}});
                }
            } else {
                servers.push_back({{"url", "//" + host->get<std::string>() + base_path}});
            }
        } else if (!base_path.empty()) {
            servers.push_back({{"url", base_path}});
        }
        return servers;
    }

    Json convert_schema(const Json& schema) const {
        if (!schema.is_object()) return schema;
        Json out = Json::object();
        for (const auto& [key, value] : schema.items()) {
            if (key == "type" && value == "file") {
                out["type"] = "string";
                if (!schema.contains("format")) out["format"] = "binary";
            } else if (key == "discriminator" && value.is_string()) {
                out["discriminator"] = {{"propertyName", value}};
            } else if ((key == "properties" || key == "patternProperties") && value.is_object()) {
                Json props = Json::object();
                for (const auto& [name, sub] : value.items()) props[name] = convert_schema(sub);
                out[key] = std::move(props);
            } else if ((key == "items" || key == "additionalProperties" || key == "not") && value.is_object()) {
                out[key] = convert_schema(value);
            } else if ((key == "allOf" || key == "anyOf" || key == "oneOf" || key == "items") && value.is_array()) {
                Json list = Json::array();
                for (const auto& sub : value) list.push_back(convert_schema(sub));
                out[key] = std::move(list);
            } else {
                out[key] = value;
            }
        }
        return out;
    }

    // Inline keywords of a non-body parameter, header or items object.
    Json inline_schema(const Json& node, const std::string& where) {
        Json schema = Json::object();
        for (const auto& [key, value] : node.items()) {
            if (!is_inline_schema_keyword(key)) continue;
            if (key == "items" && value.is_object()) {
                Json items = value;
                items.erase("collectionFormat");
                schema["items"] = inline_schema(items, where);
                for (const auto& [ik, iv] : items.items()) {
                    if (ik.rfind("x-", 0) == 0) schema["items"][ik] = iv;
                }
            } else if (key == "type" && value == "file") {
                schema["type"] = "string";
                if (!node.contains("format")) schema["format"] = "binary";
            } else {
                schema[key] = value;
            }
        }
        return schema;
    }

    // v2 arrays default to csv; v3 query arrays default to exploded form.
    void apply_collection_format(Json& param, const Json& source, const std::string& in, const std::string& where) {
        if (source.value("type", "") != "array") return;
        auto it = source.find("collectionFormat");
        const auto format = it != source.end() && it->is_string() ? it->get<std::string>() : std::string("csv");
        if (format == "csv") {
            if (in == "query" || in == "cookie") {
                param["style"] = "form";
                param["explode"] = false;
            }
        } else if (format == "ssv") {
            param["style"] = "spaceDelimited";
        } else if (format == "pipes") {
            param["style"] = "pipeDelimited";
        } else if (format == "tsv") {
            warnings_.push_back(where + ": collectionFormat 'tsv' has no OpenAPI 3 equivalent");
        }
    }

    Json convert_parameter(const Json& param, const std::string& where) {
        const auto in = param.value("in", "");
        Json out = Json::object();
        for (const auto& [key, value] : param.items()) {
            if (is_inline_schema_keyword(key) || key == "collectionFormat") continue;
            out[key] = value;
        }
        apply_collection_format(out, param, in, where);
        if (auto schema = param.find("schema"); schema != param.end()) {
            out["schema"] = convert_schema(*schema);
        } else {
            out["schema"] = inline_schema(param, where);
        }
        return out;
    }

    Json convert_header(const Json& header, const std::string& where) {
        if (!header.is_object() || header.contains("$ref")) return header;
        Json out = Json::object();
        for (const auto& [key, value] : header.items()) {
            if (is_inline_schema_keyword(key) || key == "collectionFormat") continue;
            out[key] = value;
        }
        out["schema"] = inline_schema(header, where);
        return out;
    }

    Json convert_response(const Json& response, const Json& produces, const std::string& where) {
        if (!response.is_object() || response.contains("$ref")) return response;
        Json media = produces.is_array() && !produces.empty() ? produces : Json::array({"application/json"});
        Json out = Json::object();
        for (const auto& [key, value] : response.items()) {
            if (key == "schema") {
                Json content = Json::object();
                for (const auto& mt : media) content[mt.get<std::string>()] = {{"schema", convert_schema(value)}};
                if (out.contains("content")) {
                    for (auto& [mt, entry] : out["content"].items()) {
                        if (!content.contains(mt)) content[mt] = Json::object();
                        content[mt].update(entry);
                    }
                }
                out["content"] = std::move(content);
            } else if (key == "examples" && value.is_object()) {
                if (!out.contains("content")) out["content"] = Json::object();
                for (const auto& [mt, example] : value.items()) out["content"][mt]["example"] = example;
            } else if (key == "headers" && value.is_object()) {
                Json headers = Json::object();
                for (const auto& [name, header] : value.items()) {
                    headers[name] = convert_header(header, where + " header '" + name + "'");
                }
                out["headers"] = std::move(headers);
            } else {
                out[key] = value;
            }
        }
        return out;
    }

    Json form_request_body(const std::vector<Json>& form_params, const Json& consumes) {
        Json schema = {{"type", "object"}, {"properties", Json::object()}};
        Json required = Json::array();
        for (const auto& p : form_params) {
            const auto name = p.value("name", "");
            Json prop = inline_schema(p, "formData '" + name + "'");
            if (auto d = p.find("description"); d != p.end()) prop["description"] = *d;
            schema["properties"][name] = std::move(prop);
            if (p.value("required", false)) required.push_back(name);
        }
        if (!required.empty()) schema["required"] = std::move(required);
        std::string mt = "application/x-www-form-urlencoded";
        if (consumes.is_array() && std::find(consumes.begin(), consumes.end(), Json("multipart/form-data")) != consumes.end()) {
            mt = "multipart/form-data";
        }
        return {{"content", {{mt, {{"schema", std::move(schema)}}}}}};
    }

    Json body_request_body(const Json& param, const Json& consumes) {
        Json media = consumes.is_array() && !consumes.empty() ? consumes : Json::array({"application/json"});
        Json body = Json::object();
        if (auto d = param.find("description"); d != param.end()) body["description"] = *d;
        Json content = Json::object();
        for (const auto& mt : media) content[mt.get<std::string>()] = {{"schema", convert_schema(param.value("schema", Json::object()))}};
        body["content"] = std::move(content);
        if (param.value("required", false)) body["required"] = true;
        for (const auto& [key, value] : param.items()) {
            if (key.rfind("x-", 0) == 0) body[key] = value;
        }
        return body;
    }

    // Returns the converted parameter list and, when the operation carries a
    // body or formData payload, the requestBody replacing it.
    std::pair<Json, Json> convert_parameter_list(const Json& params, const Json& consumes, const std::string& where) {
        Json list = Json::array();
        Json request_body;
        std::vector<Json> form_params;
        int bodies = 0;
        for (const auto& param : params) {
            if (param.is_object() && param.contains("$ref") && param["$ref"].is_string()) {
                const auto ref = param["$ref"].get<std::string>();
                const std::string prefix = "#/parameters/";
                const auto name = ref.rfind(prefix, 0) == 0 ? ref.substr(prefix.size()) : std::string();
                if (body_params_.count(name)) {
                    ++bodies;
                    request_body = {{"$ref", "#/components/requestBodies/" + name}};
                } else if (form_params_.count(name)) {
                    form_params.push_back(v2_["parameters"][name]);
                } else {
                    list.push_back(param);
                }
                continue;
            }
            const auto in = param.value("in", "");
            if (in == "body") {
                ++bodies;
                request_body = body_request_body(param, consumes);
                warnings_.push_back(where + ": body parameter '" + param.value("name", "") + "' moved to requestBody");
            } else if (in == "formData") {
                form_params.push_back(param);
            } else {
                list.push_back(convert_parameter(param, where + " parameter '" + param.value("name", "") + "'"));
            }
        }
        if (bodies > 1) throw ConversionError(where + ": more than one body parameter");
        if (bodies == 1 && !form_params.empty()) throw ConversionError(where + ": both body and formData parameters");
        if (!form_params.empty()) {
            request_body = form_request_body(form_params, consumes);
            warnings_.push_back(where + ": " + std::to_string(form_params.size()) + " formData parameter(s) moved to requestBody");
        }
        return {std::move(list), std::move(request_body)};
    }

    Json convert_operation(const Json& op, const std::string& where) {
        if (!op.is_object()) return op;
        auto produces = media_list(op, "produces");
        if (produces.is_null()) produces = global_produces_;
        auto consumes = media_list(op, "consumes");
        if (consumes.is_null()) consumes = global_consumes_;

        Json out = Json::object();
        Json request_body;
        for (const auto& [key, value] : op.items()) {
            if (key == "consumes" || key == "produces") continue;
            if (key == "schemes") {
                warnings_.push_back(where + ": operation-level schemes dropped");
                continue;
            }
            if (key == "parameters" && value.is_array()) {
                auto [list, body] = convert_parameter_list(value, consumes, where);
                if (!list.empty()) out["parameters"] = std::move(list);
                if (!body.is_null()) out["requestBody"] = std::move(body);
            } else if (key == "responses" && value.is_object()) {
                Json responses = Json::object();
                for (const auto& [code, response] : value.items()) {
                    responses[code] = convert_response(response, produces, where + " response " + code);
                }
                out["responses"] = std::move(responses);
            } else {
                out[key] = value;
            }
        }
        return out;
    }

    Json convert_paths(const Json& paths) {
        Json out = Json::object();
        for (const auto& [path, item] : paths.items()) {
            if (!item.is_object()) {
                out[path] = item;
                continue;
            }
            Json converted = Json::object();
            for (const auto& [key, value] : item.items()) {
                if (key == "parameters" && value.is_array()) {
                    auto [list, body] = convert_parameter_list(value, global_consumes_, path);
                    if (!body.is_null()) warnings_.push_back(path + ": path-level body/formData parameters dropped");
                    converted["parameters"] = std::move(list);
                } else if (parse_method(key)) {
                    converted[key] = convert_operation(value, key + " " + path);
                } else {
                    converted[key] = value;
                }
            }
            out[path] = std::move(converted);
        }
        return out;
    }

    Json convert_security_scheme(const Json& scheme) {
        if (!scheme.is_object()) return scheme;
        const auto type = scheme.value("type", "");
        Json out = Json::object();
        if (type == "basic") {
            out["type"] = "http";
            out["scheme"] = "basic";
        } else if (type == "oauth2") {
            out["type"] = "oauth2";
            const auto flow = scheme.value("flow", "");
            static const std::map<std::string, std::string> kFlows = {
                {"implicit", "implicit"}, {"password", "password"}, {"application", "clientCredentials"}, {"accessCode", "authorizationCode"}};
            Json body = Json::object();
            for (const char* key : {"authorizationUrl", "tokenUrl"}) {
                if (scheme.contains(key)) body[key] = scheme[key];
            }
            body["scopes"] = scheme.value("scopes", Json::object());
            auto name = kFlows.find(flow);
            if (name != kFlows.end()) {
                out["flows"] = {{name->second, std::move(body)}};
            } else {
                warnings_.push_back("oauth2 security scheme with unknown flow '" + flow + "'");
            }
        } else {
            out["type"] = type;
            for (const char* key : {"name", "in"}) {
                if (scheme.contains(key)) out[key] = scheme[key];
            }
        }
        for (const auto& [key, value] : scheme.items()) {
            if (key == "description" || key.rfind("x-", 0) == 0) out[key] = value;
        }
        return out;
    }

    Json convert_components() {
        Json components = Json::object();
        if (auto defs = v2_.find("definitions"); defs != v2_.end() && defs->is_object()) {
            Json schemas = Json::object();
            for (const auto& [name, schema] : defs->items()) schemas[name] = convert_schema(schema);
            components["schemas"] = std::move(schemas);
        }
        if (auto responses = v2_.find("responses"); responses != v2_.end() && responses->is_object()) {
            Json out = Json::object();
            for (const auto& [name, response] : responses->items()) {
                out[name] = convert_response(response, global_produces_, "response '" + name + "'");
            }
            components["responses"] = std::move(out);
        }
        if (auto params = v2_.find("parameters"); params != v2_.end() && params->is_object()) {
            Json parameters = Json::object();
            Json bodies = Json::object();
            for (const auto& [name, param] : params->items()) {
                if (body_params_.count(name)) {
                    bodies[name] = body_request_body(param, global_consumes_);
                } else if (form_params_.count(name)) {
                    continue;
                } else {
                    parameters[name] = convert_parameter(param, "parameter '" + name + "'");
                }
            }
            if (!form_params_.empty()) {
                warnings_.push_back(std::to_string(form_params_.size()) + " shared formData parameter(s) inlined into request bodies");
            }
            if (!parameters.empty()) components["parameters"] = std::move(parameters);
            if (!bodies.empty()) components["requestBodies"] = std::move(bodies);
        }
        if (auto sec = v2_.find("securityDefinitions"); sec != v2_.end() && sec->is_object()) {
            Json schemes = Json::object();
            for (const auto& [name, scheme] : sec->items()) schemes[name] = convert_security_scheme(scheme);
            components["securitySchemes"] = std::move(schemes);
        }
        return components;
    }

    const Json& v2_;
    Json global_produces_;
    Json global_consumes_;
    std::set<std::string> body_params_;
    std::set<std::string> form_params_;
    std::vector<std::string> warnings_;
};

}  // namespace

ConversionResult convert_v2_to_v3(const Json& v2) {
    if (detect_version(v2).kind != VersionKind::swagger2) throw ConversionError("input is not a Swagger 2.0 document");
    return Converter(v2).run();
}

}  // namespace olg
