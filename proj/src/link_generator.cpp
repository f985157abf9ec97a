// SPDX-License-Identifier: Apache-2.0
#include "olg/link_generator.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

#include "olg/errors.hpp"
#include "olg/pointer.hpp"

namespace olg {

namespace {

bool is_annotation(std::string_view key) {
    return key == "description" || key == "title" || key == "example" || key == "deprecated";
}

bool is_schema_map_keyword(std::string_view key) {
    return key == "properties" || key == "patternProperties" || key == "definitions" || key == "$defs" ||
           key == "dependentSchemas";
}

bool is_schema_keyword(std::string_view key) {
    return key == "items" || key == "additionalProperties" || key == "not" || key == "additionalItems" ||
           key == "contains" || key == "propertyNames" || key == "if" || key == "then" || key == "else";
}

bool is_schema_array_keyword(std::string_view key) {
    return key == "allOf" || key == "oneOf" || key == "anyOf" || key == "items" || key == "prefixItems";
}

// Deep equality ignoring object key order.
bool json_equal(const Json& a, const Json& b) {
    if (a.is_object() && b.is_object()) {
        if (a.size() != b.size()) return false;
        for (const auto& [key, value] : a.items()) {
            auto it = b.find(key);
            if (it == b.end() || !json_equal(value, *it)) return false;
        }
        return true;
    }
    if (a.is_array() && b.is_array()) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!json_equal(a[i], b[i])) return false;
        }
        return true;
    }
    if (a.is_number() && b.is_number()) return a.get<double>() == b.get<double>();
    return a == b;
}

class SchemaEquality {
  public:
    SchemaEquality(const Json& root, std::vector<std::string>* warnings) : root_(root), warnings_(warnings) {}

    bool equal(const Json& a, const Json& b) {
        if (is_reference(a) && is_reference(b) && reference_of(a) == reference_of(b)) return true;
        const Json* ra = resolve(a);
        const Json* rb = resolve(b);
        if (ra == nullptr || rb == nullptr) return false;
        if (ra == rb) return true;
        if (!assumed_.insert({ra, rb}).second) return true;
        if (!ra->is_object() || !rb->is_object()) return json_equal(*ra, *rb);

        std::size_t counted_a = 0;
        for (const auto& [key, value] : ra->items()) {
            if (is_annotation(key)) continue;
            ++counted_a;
            auto other = rb->find(key);
            if (other == rb->end() || !equal_keyword(key, value, *other)) return false;
        }
        std::size_t counted_b = 0;
        for (const auto& [key, value] : rb->items()) {
            if (!is_annotation(key)) ++counted_b;
        }
        return counted_a == counted_b;
    }

  private:
    const Json* resolve(const Json& node) {
        try {
            return &deref(root_, node);
        } catch (const ExternalReference& e) {
            if (warnings_) warnings_->push_back(std::string(e.what()) + "; schemas treated as different");
            return nullptr;
        } catch (const PointerTargetMissing& e) {
            if (warnings_) warnings_->push_back(std::string(e.what()) + "; schemas treated as different");
            return nullptr;
        } catch (const MalformedPointer& e) {
            if (warnings_) warnings_->push_back(std::string(e.what()) + "; schemas treated as different");
            return nullptr;
        }
    }

    bool equal_keyword(std::string_view key, const Json& a, const Json& b) {
        if (is_schema_map_keyword(key) && a.is_object() && b.is_object()) {
            if (a.size() != b.size()) return false;
            for (const auto& [name, sub] : a.items()) {
                auto other = b.find(name);
                if (other == b.end() || !equal(sub, *other)) return false;
            }
            return true;
        }
        if (is_schema_array_keyword(key) && a.is_array() && b.is_array()) {
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (!equal(a[i], b[i])) return false;
            }
            return true;
        }
        if (is_schema_keyword(key) && (a.is_object() || b.is_object())) return equal(a, b);
        return json_equal(a, b);
    }

    const Json& root_;
    std::vector<std::string>* warnings_;
    std::set<std::pair<const Json*, const Json*>> assumed_;
};

std::vector<std::string> split_segments(std::string_view text) {
    std::vector<std::string> segments;
    std::size_t start = 0;
    while (true) {
        auto slash = text.find('/', start);
        segments.emplace_back(text.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start));
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    return segments;
}

// Literal text of a segment when it has any, otherwise its template names.
std::string naming_text(const std::string& segment) {
    std::string literal;
    std::string names;
    int depth = 0;
    for (char c : segment) {
        if (c == '{') {
            ++depth;
            names.push_back(' ');
        } else if (c == '}') {
            depth = std::max(0, depth - 1);
            literal.push_back(' ');
        } else if (depth > 0) {
            names.push_back(c);
        } else {
            literal.push_back(c);
        }
    }
    const bool has_literal = std::any_of(literal.begin(), literal.end(), [](unsigned char c) { return std::isalnum(c); });
    return has_literal ? literal : names;
}

bool links_to_child(const Json& root, const Json& link_entry, const std::string& child, const std::optional<std::string>& child_id) {
    const Json* link = &link_entry;
    try {
        link = &deref(root, link_entry);
    } catch (const Error&) {
        return false;
    }
    if (!link->is_object()) return false;
    if (auto id = link->find("operationId"); id != link->end() && id->is_string()) {
        return child_id && id->get<std::string>() == *child_id;
    }
    if (auto ref = link->find("operationRef"); ref != link->end() && ref->is_string()) {
        try {
            const auto ptr = JsonPointer::from_reference(ref->get<std::string>());
            return ptr.tokens() == std::vector<std::string>{"paths", child, "get"};
        } catch (const Error&) {
            return false;
        }
    }
    return false;
}

}  // namespace

Json GenerationReport::to_json() const {
    Json links = Json::array();
    for (const auto& link : per_link) {
        links.push_back({{"parent", link.parent},
                         {"child", link.child},
                         {"response", link.response},
                         {"link_name", link.link_name},
                         {"mapping_count", link.mapping_count}});
    }
    return {{"pairs_considered", pairs_considered},
            {"links_added", links_added},
            {"links_skipped_duplicate", links_skipped_duplicate},
            {"pairs_skipped_no_success_response", pairs_skipped_no_success_response},
            {"pairs_skipped_no_mapping", pairs_skipped_no_mapping},
            {"parameters_mapped", parameters_mapped},
            {"child_params_unmapped", child_params_unmapped},
            {"per_link", std::move(links)},
            {"warnings", warnings}};
}

std::vector<PathPair> find_hierarchical_pairs(const Document& doc) {
    std::vector<std::string> with_get;
    for (const auto& path : doc.path_templates()) {
        if (doc.operation(path, HttpMethod::get)) with_get.push_back(path);
    }
    std::sort(with_get.begin(), with_get.end());

    std::vector<PathPair> pairs;
    for (const auto& parent : with_get) {
        const auto prefix = parent + "/";
        for (const auto& child : with_get) {
            if (child.size() <= prefix.size() || child.compare(0, prefix.size(), prefix) != 0) continue;
            auto suffix = split_segments(std::string_view(child).substr(prefix.size()));
            if (std::any_of(suffix.begin(), suffix.end(), [](const auto& s) { return s.empty(); })) continue;
            pairs.push_back({parent, child, std::move(suffix)});
        }
    }
    return pairs;
}

bool schema_equal(const Document& doc, const Json& a, const Json& b, std::vector<std::string>* warnings) {
    return SchemaEquality(doc.tree(), warnings).equal(a, b);
}

std::vector<ParameterMatch> match_parameters(const Document& doc, const std::vector<ParameterDef>& parent_params,
                                             const std::vector<ParameterDef>& child_params,
                                             std::vector<std::string>* warnings) {
    std::vector<ParameterMatch> matches;
    for (const auto& child : child_params) {
        if (child.location == ParamLocation::cookie) continue;
        std::vector<const ParameterDef*> candidates;
        for (const auto& parent : parent_params) {
            if (parent.location != ParamLocation::cookie && parent.name == child.name) candidates.push_back(&parent);
        }
        std::stable_partition(candidates.begin(), candidates.end(),
                              [&](const ParameterDef* p) { return p->location == child.location; });
        for (const auto* parent : candidates) {
            bool same = false;
            try {
                same = schema_equal(doc, parent->schema, child.schema, warnings);
            } catch (const CircularReference& e) {
                if (warnings) warnings->push_back("parameter '" + child.name + "': " + e.what());
            }
            if (same) {
                matches.push_back({child.name, parent->location, child.location});
                break;
            }
        }
    }
    return matches;
}

std::optional<std::string> select_success_response(const Operation& op) {
    std::optional<std::string> best;
    int best_code = 0;
    std::optional<std::string> wildcard;
    for (const auto& key : op.status_keys()) {
        if (!is_success_key(key)) continue;
        if (auto code = explicit_status_code(key)) {
            if (!best || *code < best_code) {
                best = key;
                best_code = *code;
            }
        } else if (!wildcard) {
            wildcard = key;
        }
    }
    return best ? best : wildcard;
}

std::string make_link_name(const PathPair& pair, const std::set<std::string>& existing) {
    std::string base;
    for (const auto& segment : pair.suffix_segments) {
        const auto text = naming_text(segment);
        bool word_start = true;
        for (unsigned char c : text) {
            if (!std::isalnum(c)) {
                word_start = true;
                continue;
            }
            if (word_start) {
                base.push_back(static_cast<char>(base.empty() ? std::tolower(c) : std::toupper(c)));
            } else {
                base.push_back(static_cast<char>(c));
            }
            word_start = false;
        }
    }
    if (base.empty()) base = "link";
    if (!existing.count(base)) return base;
    for (std::size_t n = 2;; ++n) {
        auto candidate = base + std::to_string(n);
        if (!existing.count(candidate)) return candidate;
    }
}

LinkTarget target_reference(const Document& doc, const PathPair& pair) {
    auto child = doc.operation(pair.child, HttpMethod::get);
    if (child) {
        if (auto id = child->operation_id()) {
            std::size_t uses = 0;
            for (const auto& op : doc.operations()) {
                if (op.operation_id() == id) ++uses;
            }
            if (uses == 1) return OperationIdTarget{*id};
        }
    }
    return OperationRefTarget{JsonPointer({"paths", pair.child, "get"}).to_reference()};
}

GenerationResult generate_links(const Document& doc, const GenerationOptions& options) {
    GenerationReport report;
    Json tree = doc.tree();
    const auto pairs = find_hierarchical_pairs(doc);
    report.pairs_considered = pairs.size();

    std::map<std::string, EffectiveParameters> params_cache;
    auto params_of = [&](const std::string& path) -> const EffectiveParameters& {
        auto it = params_cache.find(path);
        if (it != params_cache.end()) return it->second;
        auto collected = collect_effective_parameters(doc, path, HttpMethod::get);
        for (const auto& problem : collected.problems) report.warnings.push_back("GET " + path + ": " + problem);
        return params_cache.emplace(path, std::move(collected)).first->second;
    };

    for (const auto& pair : pairs) {
        const auto parent_op = doc.operation(pair.parent, HttpMethod::get);
        const auto child_op = doc.operation(pair.child, HttpMethod::get);
        const std::string label = pair.parent + " -> " + pair.child;

        const auto status = select_success_response(*parent_op);
        if (!status) {
            ++report.pairs_skipped_no_success_response;
            report.warnings.push_back(label + ": parent GET has no 2xx response");
            continue;
        }

        const auto& parent_params = params_of(pair.parent).parameters;
        const auto& child_params = params_of(pair.child).parameters;
        auto matches = match_parameters(doc, parent_params, child_params, &report.warnings);
        if (options.require_mapping && matches.empty()) {
            ++report.pairs_skipped_no_mapping;
            continue;
        }

        const Json& response = parent_op->responses()[*status];
        const Json* resolved = &response;
        try {
            resolved = &deref(doc, response);
        } catch (const Error& e) {
            report.warnings.push_back(label + ": response " + *status + ": " + e.what());
            continue;
        }
        const auto child_id = child_op->operation_id();
        bool duplicate = false;
        if (resolved->is_object()) {
            if (auto links = resolved->find("links"); links != resolved->end() && links->is_object()) {
                for (const auto& [name, entry] : links->items()) {
                    if (links_to_child(doc.tree(), entry, pair.child, child_id)) duplicate = true;
                }
            }
        }
        if (duplicate) {
            ++report.links_skipped_duplicate;
            continue;
        }
        if (is_reference(response) || is_reference(doc.tree()["paths"][pair.parent])) {
            report.warnings.push_back(label + ": response " + *status + " is a $ref; links are only written inline");
            continue;
        }
        if (!response.is_object()) {
            report.warnings.push_back(label + ": response " + *status + " is not an object");
            continue;
        }

        Json& out_response = tree["paths"][pair.parent]["get"]["responses"][*status];
        if (out_response.contains("links") && !out_response["links"].is_object()) {
            report.warnings.push_back(label + ": response " + *status + " has a malformed 'links' field");
            continue;
        }
        std::set<std::string> existing;
        if (auto links = out_response.find("links"); links != out_response.end()) {
            for (const auto& [name, entry] : links->items()) existing.insert(name);
        }

        LinkDef link{target_reference(doc, pair), {}, options.link_description};
        for (const auto& match : matches) {
            const auto same_name = std::count_if(child_params.begin(), child_params.end(),
                                                 [&](const ParameterDef& p) { return p.name == match.name; });
            auto key = same_name > 1 ? std::string(to_string(match.child_location)) + "." + match.name : match.name;
            link.parameters.emplace_back(std::move(key), RuntimeExpression(match.parent_location, match.name));
        }
        const auto name = make_link_name(pair, existing);
        out_response["links"][name] = link.to_json();

        const auto mappable = std::count_if(child_params.begin(), child_params.end(),
                                            [](const ParameterDef& p) { return p.location != ParamLocation::cookie; });
        ++report.links_added;
        report.parameters_mapped += matches.size();
        report.child_params_unmapped += static_cast<std::size_t>(mappable) - matches.size();
        report.per_link.push_back({pair.parent, pair.child, *status, name, matches.size()});
    }

    return {Document(std::move(tree)), std::move(report)};
}

}  // namespace olg
