// SPDX-License-Identifier: Apache-2.0
#include "yaml_bridge.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cstdint>
#include <regex>
#include <set>

#include "olg/errors.hpp"

namespace olg::detail {

namespace {

// Alias expansion can blow up a small text; refuse anything beyond this.
constexpr std::size_t kMaxNodes = 20'000'000;

bool is_decimal_int(std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

std::optional<Json> parse_integer(std::string_view s, int base) {
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.remove_prefix(1);
    }
    std::uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), magnitude, base);
    if (ptr != s.data() + s.size()) return std::nullopt;
    if (ec == std::errc::result_out_of_range) {
        if (base != 10) return std::nullopt;
        return Json(std::stod((negative ? "-" : "") + std::string(s)));
    }
    if (ec != std::errc()) return std::nullopt;
    if (!negative) {
        if (magnitude <= static_cast<std::uint64_t>(INT64_MAX)) return Json(static_cast<std::int64_t>(magnitude));
        return Json(magnitude);
    }
    if (magnitude <= static_cast<std::uint64_t>(INT64_MAX)) return Json(-static_cast<std::int64_t>(magnitude));
    if (magnitude == static_cast<std::uint64_t>(INT64_MAX) + 1) return Json(INT64_MIN);
    return Json(-static_cast<double>(magnitude));
}

struct Converter {
    std::size_t nodes = 0;

    Json convert(const YAML::Node& node) {
        if (++nodes > kMaxNodes) throw SyntaxError("YAML document too large after alias expansion", 0, 0);
        switch (node.Type()) {
            case YAML::NodeType::Null:
            case YAML::NodeType::Undefined:
                return Json();
            case YAML::NodeType::Scalar:
                return scalar(node);
            case YAML::NodeType::Sequence: {
                Json arr = Json::array();
                for (const auto& item : node) arr.push_back(convert(item));
                return arr;
            }
            case YAML::NodeType::Map:
                return mapping(node);
        }
        return Json();
    }

    Json scalar(const YAML::Node& node) {
        const auto& text = node.Scalar();
        const auto& tag = node.Tag();
        if (tag == "!" || tag == "tag:yaml.org,2002:str") return Json(text);
        if (auto value = resolve_plain_scalar(text)) return *value;
        return Json(text);
    }

    static std::string key_text(const YAML::Node& key) {
        if (key.IsScalar()) return key.Scalar();
        if (key.IsNull()) return "null";
        throw SyntaxError("mapping keys must be scalars", key.Mark().line + 1, key.Mark().column + 1);
    }

    Json mapping(const YAML::Node& node) {
        std::set<std::string> explicit_keys;
        for (const auto& kv : node) {
            auto key = key_text(kv.first);
            if (key != "<<") explicit_keys.insert(key);
        }
        Json obj = Json::object();
        for (const auto& kv : node) {
            auto key = key_text(kv.first);
            if (key != "<<" || kv.first.Tag() == "!") {
                obj[key] = convert(kv.second);
                continue;
            }
            // Merge key: earlier sources win over later ones, explicit keys win over all.
            std::vector<Json> sources;
            if (kv.second.IsMap()) {
                sources.push_back(mapping(kv.second));
            } else if (kv.second.IsSequence()) {
                for (const auto& item : kv.second) {
                    if (!item.IsMap()) throw SyntaxError("merge key expects mappings", item.Mark().line + 1, item.Mark().column + 1);
                    sources.push_back(mapping(item));
                }
            } else {
                throw SyntaxError("merge key expects a mapping", kv.second.Mark().line + 1, kv.second.Mark().column + 1);
            }
            for (auto& source : sources) {
                for (auto& [k, v] : source.items()) {
                    if (explicit_keys.count(k) || obj.contains(k)) continue;
                    obj[k] = std::move(v);
                }
            }
        }
        return obj;
    }
};

bool is_valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t extra = 0;
        if (c < 0x80) {
            extra = 0;
        } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
            extra = 1;
        } else if ((c & 0xF0) == 0xE0) {
            extra = 2;
        } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
            extra = 3;
        } else {
            return false;
        }
        if (i + extra >= s.size()) return false;
        for (std::size_t k = 1; k <= extra; ++k) {
            if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
        }
        i += extra + 1;
    }
    return true;
}

bool needs_quotes(const std::string& s) {
    if (s.empty()) return true;
    if (s.front() == ' ' || s.back() == ' ' || s.back() == ':') return true;
    static constexpr std::string_view kIndicators = "-?:,[]{}#&*!|>'\"%@`";
    if (kIndicators.find(s.front()) != std::string_view::npos) return true;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (c < 0x20 || c == 0x7F) return true;
        if (c == ':' && i + 1 < s.size() && s[i + 1] == ' ') return true;
        if (c == '#' && i > 0 && s[i - 1] == ' ') return true;
    }
    if (s.find("\xC2\x85") != std::string::npos || s.find("\xE2\x80\xA8") != std::string::npos ||
        s.find("\xE2\x80\xA9") != std::string::npos || s.find("\xEF\xBB\xBF") != std::string::npos) {
        return true;
    }
    if (!is_valid_utf8(s)) return true;
    if (resolve_plain_scalar(s)) return true;
    // YAML 1.1 readers would turn these into booleans.
    static const std::set<std::string> kLegacy = {"y", "Y", "yes", "Yes", "YES", "n", "N", "no", "No", "NO",
                                                  "on", "On", "ON", "off", "Off", "OFF", "=", "<<"};
    return kLegacy.count(s) > 0;
}

std::string quote(const std::string& s) {
    return Json(s).dump(-1, ' ', false, Json::error_handler_t::replace);
}

std::string scalar_text(const Json& v) {
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        return needs_quotes(s) ? quote(s) : s;
    }
    if (v.is_object()) return "{}";
    if (v.is_array()) return "[]";
    return v.dump();
}

bool is_block(const Json& v) { return (v.is_object() || v.is_array()) && !v.empty(); }

void emit_block(std::string& out, const Json& node, std::size_t indent, bool inline_first) {
    bool first = true;
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            if (!(first && inline_first)) out.append(indent, ' ');
            first = false;
            out += scalar_text(Json(key));
            out += ':';
            if (is_block(value)) {
                out += '\n';
                emit_block(out, value, indent + 2, false);
            } else {
                out += ' ';
                out += scalar_text(value);
                out += '\n';
            }
        }
        return;
    }
    for (const auto& item : node) {
        if (!(first && inline_first)) out.append(indent, ' ');
        first = false;
        out += '-';
        if (is_block(item)) {
            out += ' ';
            emit_block(out, item, indent + 2, true);
        } else {
            out += ' ';
            out += scalar_text(item);
            out += '\n';
        }
    }
}

}  // namespace

std::optional<Json> resolve_plain_scalar(std::string_view s) {
    if (s.empty() || s == "~" || s == "null" || s == "Null" || s == "NULL") return Json();
    if (s == "true" || s == "True" || s == "TRUE") return Json(true);
    if (s == "false" || s == "False" || s == "FALSE") return Json(false);
    const char c = s.front();
    if (!(c == '-' || c == '+' || c == '.' || (c >= '0' && c <= '9'))) return std::nullopt;
    if (is_decimal_int(s)) return parse_integer(s, 10);
    if (s.size() > 2 && s[0] == '0' && s[1] == 'o') return parse_integer(s.substr(2), 8);
    if (s.size() > 2 && s[0] == '0' && s[1] == 'x') return parse_integer(s.substr(2), 16);
    static const std::regex kFloat(R"([-+]?(\.[0-9]+|[0-9]+(\.[0-9]*)?)([eE][-+]?[0-9]+)?)");
    if (std::regex_match(s.begin(), s.end(), kFloat)) {
        try {
            return Json(std::stod(std::string(s)));
        } catch (const std::out_of_range&) {
            return std::nullopt;
        }
    }
    // .inf / .nan have no JSON form; they stay strings but are still not plain-safe.
    static const std::regex kSpecial(R"([-+]?\.(inf|Inf|INF)|\.(nan|NaN|NAN))");
    if (std::regex_match(s.begin(), s.end(), kSpecial)) return Json(std::string(s));
    return std::nullopt;
}

Json yaml_to_json(std::string_view text) {
    try {
        auto root = YAML::Load(std::string(text));
        Converter converter;
        return converter.convert(root);
    } catch (const YAML::Exception& e) {
        const auto line = e.mark.is_null() ? 0 : static_cast<std::size_t>(e.mark.line + 1);
        const auto column = e.mark.is_null() ? 0 : static_cast<std::size_t>(e.mark.column + 1);
        throw SyntaxError("invalid YAML: " + e.msg, line, column);
    }
}

std::string json_to_yaml(const Json& tree) {
    std::string out;
    if (is_block(tree)) {
        emit_block(out, tree, 0, false);
    } else {
        out = scalar_text(tree) + "\n";
    }
    return out;
}

}  // namespace olg::detail
