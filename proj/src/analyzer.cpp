// SPDX-License-Identifier: Apache-2.0
#include "olg/analyzer.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

#include "olg/errors.hpp"
#include "olg/loader.hpp"
#include "olg/pointer.hpp"

namespace olg {

namespace {

const Json* member(const Json& node, const char* key) {
    if (!node.is_object()) return nullptr;
    auto it = node.find(key);
    return it == node.end() ? nullptr : &*it;
}

template <typename Fn>
void for_each_value(const Json* map, Fn&& fn) {
    if (map == nullptr || !map->is_object()) return;
    for (const auto& [key, value] : map->items()) fn(key, value);
}

class SchemaScanner {
  public:
    explicit SchemaScanner(KeywordCounts& counts) : counts_(counts) {}

    void schema(const Json& node) {
        if (!node.is_object() || is_reference(node)) return;
        for (std::size_t i = 0; i < kInexpressibleKeywords.size(); ++i) {
            if (node.contains(std::string(kInexpressibleKeywords[i]))) ++counts_.at(i);
        }
        for (const char* key : {"properties", "patternProperties"}) {
            for_each_value(member(node, key), [&](const std::string&, const Json& sub) { schema(sub); });
        }
        for (const char* key : {"items", "additionalProperties", "not", "additionalItems", "contains", "propertyNames"}) {
            if (const auto* sub = member(node, key); sub && sub->is_object()) schema(*sub);
        }
        for (const char* key : {"allOf", "oneOf", "anyOf", "items"}) {
            if (const auto* list = member(node, key); list && list->is_array()) {
                for (const auto& sub : *list) schema(sub);
            }
        }
    }

    void content(const Json* map) {
        for_each_value(map, [&](const std::string&, const Json& media) {
            if (const auto* s = member(media, "schema")) schema(*s);
        });
    }

    void parameter(const Json& node) {
        if (is_reference(node)) return;
        if (const auto* s = member(node, "schema")) schema(*s);
        content(member(node, "content"));
    }

    void header(const Json& node) { parameter(node); }

    void response(const Json& node) {
        if (is_reference(node)) return;
        content(member(node, "content"));
        for_each_value(member(node, "headers"), [&](const std::string&, const Json& h) { header(h); });
    }

    void request_body(const Json& node) {
        if (is_reference(node)) return;
        content(member(node, "content"));
    }

    void callbacks(const Json* map) {
        for_each_value(map, [&](const std::string&, const Json& callback) {
            if (is_reference(callback)) return;
            for_each_value(&callback, [&](const std::string&, const Json& item) { path_item(item); });
        });
    }

    void operation(const Json& op) {
        if (const auto* params = member(op, "parameters"); params && params->is_array()) {
            for (const auto& p : *params) parameter(p);
        }
        if (const auto* body = member(op, "requestBody")) request_body(*body);
        for_each_value(member(op, "responses"), [&](const std::string&, const Json& r) { response(r); });
        callbacks(member(op, "callbacks"));
    }

    void path_item(const Json& item) {
        if (!item.is_object() || is_reference(item)) return;
        if (const auto* params = member(item, "parameters"); params && params->is_array()) {
            for (const auto& p : *params) parameter(p);
        }
        for (const auto& [key, value] : item.items()) {
            if (parse_method(key) && value.is_object()) operation(value);
        }
    }

  private:
    KeywordCounts& counts_;
};

std::string percent(double ratio) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.1f%%", ratio * 100.0);
    return buffer;
}

struct DocumentOutcome {
    std::string name;
    std::optional<std::string> error;
    TranslatabilityReport report;
    bool converted = false;
    std::size_t links_generated = 0;
};

DocumentOutcome process(std::size_t index, const CorpusSource& source, const CorpusOptions& options) {
    DocumentOutcome outcome;
    outcome.name = "#" + std::to_string(index);
    try {
        auto input = source(index);
        outcome.name = std::move(input.name);
        auto loaded = parse_document(input.text);
        outcome.converted = loaded.version.kind == VersionKind::swagger2;
        outcome.report = analyze_document(loaded.document);
        if (options.run_generator) {
            outcome.links_generated = generate_links(loaded.document, options.generation).report.links_added;
        }
    } catch (const std::exception& e) {
        outcome.error = e.what();
    }
    return outcome;
}

}  // namespace

std::optional<std::size_t> keyword_index(std::string_view keyword) noexcept {
    for (std::size_t i = 0; i < kInexpressibleKeywords.size(); ++i) {
        if (kInexpressibleKeywords[i] == keyword) return i;
    }
    return std::nullopt;
}

std::size_t& KeywordCounts::operator[](std::string_view keyword) {
    auto index = keyword_index(keyword);
    if (!index) throw Error("unknown keyword '" + std::string(keyword) + "'");
    return counts_[*index];
}

std::size_t KeywordCounts::operator[](std::string_view keyword) const {
    auto index = keyword_index(keyword);
    if (!index) throw Error("unknown keyword '" + std::string(keyword) + "'");
    return counts_[*index];
}

bool KeywordCounts::any() const noexcept {
    return std::any_of(counts_.begin(), counts_.end(), [](std::size_t n) { return n > 0; });
}

KeywordCounts scan_schema_properties(const Document& doc) {
    KeywordCounts counts;
    SchemaScanner scan(counts);
    const auto& tree = doc.tree();
    for_each_value(member(tree, "paths"), [&](const std::string& key, const Json& item) {
        if (!key.empty() && key.front() == '/') scan.path_item(item);
    });
    const auto& components = doc.components();
    for_each_value(member(components, "schemas"), [&](const std::string&, const Json& s) { scan.schema(s); });
    for_each_value(member(components, "parameters"), [&](const std::string&, const Json& p) { scan.parameter(p); });
    for_each_value(member(components, "headers"), [&](const std::string&, const Json& h) { scan.header(h); });
    for_each_value(member(components, "responses"), [&](const std::string&, const Json& r) { scan.response(r); });
    for_each_value(member(components, "requestBodies"), [&](const std::string&, const Json& b) { scan.request_body(b); });
    scan.callbacks(member(components, "callbacks"));
    return counts;
}

std::vector<MultiSuccessOperation> count_multi_success(const Document& doc) {
    std::vector<MultiSuccessOperation> result;
    for (const auto& op : doc.operations()) {
        std::vector<std::pair<int, std::string>> keys;
        for (const auto& key : op.status_keys()) {
            if (!is_success_key(key)) continue;
            keys.emplace_back(explicit_status_code(key).value_or(1000), key);
        }
        if (keys.size() < 2) continue;
        std::sort(keys.begin(), keys.end());
        MultiSuccessOperation entry{op.path(), op.method(), {}};
        for (auto& [code, key] : keys) entry.success_keys.push_back(std::move(key));
        result.push_back(std::move(entry));
    }
    return result;
}

std::size_t count_existing_links(const Document& doc) {
    std::size_t attached = 0;
    std::set<std::string> referenced;
    auto count_response = [&](const Json& response) {
        const auto* links = member(response, "links");
        if (links == nullptr || !links->is_object()) return;
        for (const auto& [name, link] : links->items()) {
            ++attached;
            const auto ref = reference_of(link);
            const std::string prefix = "#/components/links/";
            if (ref.rfind(prefix, 0) == 0) referenced.insert(ref.substr(prefix.size()));
        }
    };
    for (const auto& op : doc.operations()) {
        for (const auto& [code, response] : op.responses().items()) count_response(response);
    }
    for_each_value(member(doc.components(), "responses"), [&](const std::string&, const Json& r) { count_response(r); });

    std::size_t unattached = 0;
    for_each_value(member(doc.components(), "links"), [&](const std::string& name, const Json&) {
        if (!referenced.count(name)) ++unattached;
    });
    return attached + unattached;
}

TranslatabilityReport analyze_document(const Document& doc) {
    return {scan_schema_properties(doc), count_multi_success(doc), count_existing_links(doc)};
}

Json TranslatabilityReport::to_json() const {
    Json counts = Json::object();
    Json present = Json::object();
    for (std::size_t i = 0; i < kInexpressibleKeywords.size(); ++i) {
        const std::string key(kInexpressibleKeywords[i]);
        counts[key] = property_counts.at(i);
        present[key] = property_counts.at(i) > 0;
    }
    Json multi = Json::array();
    for (const auto& op : multi_success_operations) {
        multi.push_back({{"path", op.path}, {"method", to_string(op.method)}, {"success_keys", op.success_keys}});
    }
    return {{"property_counts", std::move(counts)},
            {"property_present", std::move(present)},
            {"has_any_flagged_property", has_any_flagged_property()},
            {"multi_success_operations", std::move(multi)},
            {"preexisting_link_count", preexisting_link_count}};
}

std::string TranslatabilityReport::to_csv() const {
    std::ostringstream out;
    out << "Property,Count,Present\n";
    for (std::size_t i = 0; i < kInexpressibleKeywords.size(); ++i) {
        out << kInexpressibleKeywords[i] << ',' << property_counts.at(i) << ',' << (property_counts.at(i) > 0 ? "yes" : "no")
            << '\n';
    }
    return out.str();
}

double CorpusReport::ratio(std::size_t count) const {
    const auto analyzed = document_total - parse_failures;
    return analyzed == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(analyzed);
}

Json CorpusReport::to_json() const {
    Json counts = Json::object();
    Json ratios = Json::object();
    for (std::size_t i = 0; i < kInexpressibleKeywords.size(); ++i) {
        const std::string key(kInexpressibleKeywords[i]);
        counts[key] = per_property_document_count.at(i);
        ratios[key] = ratio(per_property_document_count.at(i));
    }
    Json failed = Json::array();
    for (const auto& f : failures) failed.push_back({{"name", f.name}, {"message", f.message}});
    Json out = {{"document_total", document_total},
                {"parse_failures", parse_failures},
                {"documents_converted_from_v2", documents_converted_from_v2},
                {"per_property_document_count", std::move(counts)},
                {"per_property_document_ratio", std::move(ratios)},
                {"documents_with_any_property", documents_with_any_property},
                {"documents_with_any_property_ratio", ratio(documents_with_any_property)},
                {"documents_with_multi_success", documents_with_multi_success},
                {"documents_with_multi_success_ratio", ratio(documents_with_multi_success)},
                {"documents_with_links", documents_with_links},
                {"generator_ran", generator_ran}};
    if (generator_ran) {
        out["documents_link_generator_affected"] = documents_link_generator_affected;
        out["documents_link_generator_affected_ratio"] = ratio(documents_link_generator_affected);
        out["total_links_generated"] = total_links_generated;
    }
    out["failures"] = std::move(failed);
    return out;
}

std::string CorpusReport::to_csv() const {
    std::ostringstream out;
    out << "Property,Count,Ratio\n";
    for (std::size_t i = 0; i < kInexpressibleKeywords.size(); ++i) {
        out << kInexpressibleKeywords[i] << ',' << per_property_document_count.at(i) << ','
            << percent(ratio(per_property_document_count.at(i))) << '\n';
    }
    return out.str();
}

CorpusReport analyze_corpus(std::size_t count, const CorpusSource& source, const CorpusOptions& options) {
    std::vector<DocumentOutcome> outcomes(count);
    unsigned jobs = options.jobs != 0 ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) outcomes[i] = process(i, source, options);
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    CorpusReport report;
    report.document_total = count;
    report.generator_ran = options.run_generator;
    for (const auto& outcome : outcomes) {
        if (outcome.error) {
            ++report.parse_failures;
            report.failures.push_back({outcome.name, *outcome.error});
            continue;
        }
        const auto& doc = outcome.report;
        for (std::size_t i = 0; i < kInexpressibleKeywords.size(); ++i) {
            if (doc.property_counts.at(i) > 0) ++report.per_property_document_count.at(i);
        }
        if (doc.has_any_flagged_property()) ++report.documents_with_any_property;
        if (!doc.multi_success_operations.empty()) ++report.documents_with_multi_success;
        if (doc.preexisting_link_count > 0) ++report.documents_with_links;
        if (outcome.converted) ++report.documents_converted_from_v2;
        if (outcome.links_generated > 0) ++report.documents_link_generator_affected;
        report.total_links_generated += outcome.links_generated;
    }
    std::sort(report.failures.begin(), report.failures.end(), [](const auto& a, const auto& b) {
        return std::tie(a.name, a.message) < std::tie(b.name, b.message);
    });
    return report;
}

CorpusReport analyze_corpus(const std::vector<CorpusInput>& inputs, const CorpusOptions& options) {
    return analyze_corpus(inputs.size(), [&](std::size_t i) { return inputs[i]; }, options);
}

}  // namespace olg
