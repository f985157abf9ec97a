// SPDX-License-Identifier: Apache-2.0
#include "oracle.hpp"

#include <cctype>
#include <iterator>
#include <map>
#include <optional>
#include <vector>

namespace olg::testing {

namespace {

const std::vector<std::string> kSegments = {"a", "b", "c", "{id}", "{x}"};
const std::vector<std::string> kNames = {"id", "lang", "page"};
const std::vector<std::string> kLocations = {"path", "path", "query", "query", "header", "cookie"};
const std::vector<std::string> kCodes = {"200", "201", "204", "2XX", "404", "default"};

Json random_schema(std::mt19937_64& rng) {
    switch (rng() % 8) {
        case 0: return Json{{"type", "integer"}};
        case 1: return Json{{"type", "string"}, {"pattern", "^[a-z]+$"}};
        case 2: return Json{{"description", "noise"}, {"type", "string"}};
        default: return Json{{"type", "string"}};
    }
}

Json random_parameter(std::mt19937_64& rng) {
    Json p;
    p["name"] = kNames[rng() % kNames.size()];
    p["in"] = kLocations[rng() % kLocations.size()];
    if (p["in"] == "path") p["required"] = true;
    p["schema"] = random_schema(rng);
    return p;
}

bool chance(std::mt19937_64& rng, int percent) { return static_cast<int>(rng() % 100) < percent; }

}  // namespace

Json random_document(std::mt19937_64& rng, int max_paths) {
    Json doc;
    doc["openapi"] = "3.0.3";
    doc["info"] = Json{{"title", "random"}, {"version", "1"}};
    Json paths = Json::object();
    const int count = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_paths));
    for (int attempt = 0; static_cast<int>(paths.size()) < count && attempt < 50; ++attempt) {
        // Mostly extend an existing path so hierarchies are common.
        std::string path;
        if (!paths.empty() && chance(rng, 70)) {
            auto it = paths.begin();
            std::advance(it, static_cast<std::ptrdiff_t>(rng() % paths.size()));
            path = it.key();
        }
        const int depth = 1 + static_cast<int>(rng() % 2);
        for (int d = 0; d < depth; ++d) path += "/" + kSegments[rng() % kSegments.size()];
        if (paths.contains(path)) continue;
        Json item = Json::object();
        if (chance(rng, 25)) {
            item["parameters"] = Json::array({random_parameter(rng)});
        }
        for (const char* method : {"get", "post"}) {
            if (std::string(method) == "get" ? !chance(rng, 85) : !chance(rng, 30)) continue;
            Json op = Json::object();
            if (chance(rng, 60)) op["operationId"] = std::string(method) + "_" + std::to_string(rng() % 8);
            Json params = Json::array();
            const int n = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < n; ++i) params.push_back(random_parameter(rng));
            if (!params.empty()) op["parameters"] = params;
            Json responses = Json::object();
            for (const auto& code : kCodes) {
                if (chance(rng, code == "200" ? 60 : 25)) responses[code] = Json{{"description", code}};
            }
            if (responses.empty()) responses["default"] = Json{{"description", "fallback"}};
            op["responses"] = responses;
            item[method] = op;
        }
        paths[path] = item;
    }
    doc["paths"] = paths;

    // Sprinkle pre-existing links from a path's GET to another path's GET.
    std::vector<std::string> keys;
    for (const auto& [key, value] : paths.items()) keys.push_back(key);
    if (!keys.empty() && chance(rng, 30)) {
        const auto& from = keys[rng() % keys.size()];
        const auto& to = keys[rng() % keys.size()];
        Json& item = doc["paths"][from];
        if (item.contains("get") && doc["paths"][to].contains("get")) {
            Json& responses = item["get"]["responses"];
            std::vector<std::string> codes;
            for (const auto& [code, r] : responses.items()) codes.push_back(code);
            const auto& code = codes[rng() % codes.size()];
            std::string ref = "#/paths/";
            for (char c : to) ref += c == '/' ? std::string("~1") : std::string(1, c);
            responses[code]["links"]["existing"] = Json{{"operationRef", ref + "/get"}};
        }
    }
    return doc;
}

namespace {

struct Param {
    std::string name;
    std::string in;
    Json schema;
};

Json strip_annotations(const Json& schema) {
    if (!schema.is_object()) return schema;
    Json out = Json::object();
    for (const auto& [key, value] : schema.items()) {
        if (key == "description" || key == "title" || key == "example" || key == "deprecated") continue;
        out[key] = strip_annotations(value);
    }
    return out;
}

// Path-item parameters overridden by operation parameters of the same (name, in).
std::vector<Param> effective(const Json& item, const Json& op) {
    std::vector<Param> out;
    auto add = [&](const Json& list, bool override) {
        if (!list.is_array()) return;
        for (const auto& p : list) {
            Param param{p["name"], p["in"], p.value("schema", Json())};
            bool replaced = false;
            if (override) {
                for (auto& existing : out) {
                    if (existing.name == param.name && existing.in == param.in) {
                        existing = param;
                        replaced = true;
                    }
                }
            }
            if (!replaced) out.push_back(param);
        }
    };
    add(item.value("parameters", Json::array()), false);
    add(op.value("parameters", Json::array()), true);
    return out;
}

std::optional<std::string> smallest_success(const Json& responses) {
    std::optional<int> best;
    for (const auto& [key, value] : responses.items()) {
        if (key.size() == 3 && key[0] == '2' && std::isdigit(static_cast<unsigned char>(key[1])) &&
            std::isdigit(static_cast<unsigned char>(key[2]))) {
            const int code = std::stoi(key);
            if (!best || code < *best) best = code;
        }
    }
    if (best) return std::to_string(*best);
    if (responses.contains("2XX")) return std::string("2XX");
    return std::nullopt;
}

std::string unescape(const std::string& token) {
    std::string out;
    for (std::size_t i = 0; i < token.size(); ++i) {
        if (token[i] == '~' && i + 1 < token.size()) {
            out += token[i + 1] == '1' ? '/' : '~';
            ++i;
        } else {
            out += token[i];
        }
    }
    return out;
}

// Path whose GET a link object targets, when it targets one.
std::optional<std::string> link_target_path(const Json& paths, const Json& link) {
    if (link.contains("operationRef")) {
        const std::string ref = link["operationRef"];
        const std::string prefix = "#/paths/";
        if (ref.rfind(prefix, 0) != 0 || ref.size() < prefix.size() + 4) return std::nullopt;
        if (ref.substr(ref.size() - 4) != "/get") return std::nullopt;
        return unescape(ref.substr(prefix.size(), ref.size() - prefix.size() - 4));
    }
    if (link.contains("operationId")) {
        std::optional<std::string> found;
        for (const auto& [path, item] : paths.items()) {
            for (const auto& [method, op] : item.items()) {
                if (op.is_object() && op.contains("operationId") && op["operationId"] == link["operationId"]) {
                    if (method != "get" || found) return std::nullopt;
                    found = path;
                }
            }
        }
        return found;
    }
    return std::nullopt;
}

}  // namespace

std::set<Edge> oracle_edges(const Json& tree) {
    std::set<Edge> out;
    const Json& paths = tree["paths"];
    for (const auto& [parent, pitem] : paths.items()) {
        for (const auto& [child, citem] : paths.items()) {
            if (parent == child || !pitem.contains("get") || !citem.contains("get")) continue;
            if (child.size() <= parent.size() + 1 || child.compare(0, parent.size(), parent) != 0 ||
                child[parent.size()] != '/')
                continue;
            const Json& presp = pitem["get"]["responses"];
            auto code = smallest_success(presp);
            if (!code) continue;
            // Already linked from that response: a duplicate, not a new edge.
            bool duplicate = false;
            const Json links = presp[*code].value("links", Json::object());
            for (const auto& [name, link] : links.items()) {
                if (link_target_path(paths, link) == child) duplicate = true;
            }
            if (duplicate) continue;
            bool mapped = false;
            for (const auto& c : effective(citem, citem["get"])) {
                if (c.in == "cookie") continue;
                for (const auto& p : effective(pitem, pitem["get"])) {
                    if (p.in != "cookie" && p.name == c.name && strip_annotations(p.schema) == strip_annotations(c.schema))
                        mapped = true;
                }
            }
            if (mapped) out.insert({parent, child});
        }
    }
    return out;
}

std::set<Edge> added_edges(const Json& before, const Json& after) {
    std::set<Edge> out;
    const Json& paths = after["paths"];
    for (const auto& [path, item] : paths.items()) {
        if (!item.contains("get")) continue;
        const Json responses = item["get"].value("responses", Json::object());
        for (const auto& [code, response] : responses.items()) {
            const Json links = response.value("links", Json::object());
            for (const auto& [name, link] : links.items()) {
                const Json ptr = Json::array({"paths", path, "get", "responses", code, "links", name});
                const Json* old = &before;
                for (const auto& token : ptr) {
                    if (old == nullptr || !old->is_object() || !old->contains(token.get<std::string>())) {
                        old = nullptr;
                        break;
                    }
                    old = &(*old)[token.get<std::string>()];
                }
                if (old != nullptr) continue;
                if (auto target = link_target_path(paths, link)) out.insert({path, *target});
                else out.insert({path, "<unresolvable link " + name + ">"});
            }
        }
    }
    return out;
}

}  // namespace olg::testing
