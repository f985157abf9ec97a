// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "olg/analyzer.hpp"
#include "olg/errors.hpp"
#include "olg/loader.hpp"
#include "test_support.hpp"

using namespace olg;
using namespace olg::testing;

TEST(DetectFormat, Examples) {
    EXPECT_EQ(detect_format("{\"openapi\":\"3.0.0\"}"), DocFormat::json);
    EXPECT_EQ(detect_format("  \n[1]"), DocFormat::json);
    EXPECT_EQ(detect_format("openapi: 3.0.0\n"), DocFormat::yaml);
    EXPECT_EQ(detect_format("\xEF\xBB\xBF{}"), DocFormat::json);
    EXPECT_THROW(detect_format(""), EmptyInput);
}

TEST(DetectVersion, Variants) {
    EXPECT_EQ(detect_version(Json{{"swagger", "2.0"}}).kind, VersionKind::swagger2);
    EXPECT_EQ(detect_version(Json{{"openapi", "3.1.0"}}).kind, VersionKind::openapi3);
    EXPECT_EQ(detect_version(Json{{"openapi", "4.1.0"}}).kind, VersionKind::unknown);
    EXPECT_EQ(detect_version(Json::object()).kind, VersionKind::unknown);
}

TEST(ParseDocument, UnsupportedVersion) {
    EXPECT_THROW(parse_document("openapi: 4.1.0\ninfo: {title: t, version: '1'}\npaths: {}\n"), UnsupportedVersion);
    EXPECT_THROW(parse_document("just a string\n"), UnsupportedVersion);
    EXPECT_THROW(parse_document(""), EmptyInput);
}

TEST(ParseDocument, UnquotedVersionNumber) {
    auto loaded = parse_document("openapi: 3.0\ninfo: {title: t, version: 1}\npaths: {}\n");
    EXPECT_EQ(loaded.document.openapi_version(), "3.0");
    EXPECT_EQ(loaded.format, DocFormat::yaml);
}

TEST(ParseTree, SyntaxErrorLocation) {
    try {
        parse_tree("{\n  \"a\": 1,\n  \"b\": }\n", DocFormat::json);
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_GT(e.column(), 0u);
    }
    try {
        parse_tree(read_file(fixture("broken.yaml")), DocFormat::yaml);
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_GE(e.line(), 5u);
    }
}

TEST(ParseTree, YamlCoreSchemaScalars) {
    auto t = parse_tree("a: 1\nb: '1'\nc: true\nd: ~\ne: 1.5\nf: 0x1F\ng: .inf\nh: yes\ni: 2020-01-01\n", DocFormat::yaml);
    EXPECT_TRUE(t["a"].is_number_integer());
    EXPECT_TRUE(t["b"].is_string());
    EXPECT_EQ(t["c"], true);
    EXPECT_TRUE(t["d"].is_null());
    EXPECT_EQ(t["e"], 1.5);
    EXPECT_EQ(t["f"], 31);
    EXPECT_TRUE(t["g"].is_string());
    EXPECT_EQ(t["h"], "yes");
    EXPECT_EQ(t["i"], "2020-01-01");
}

TEST(ParseTree, AnchorsAndMergeKeys) {
    auto loaded = load_fixture("corpus/28_anchors_v3.yaml");
    const Json& paths = loaded.tree()["paths"];
    EXPECT_EQ(paths["/volumes/{volume}/snapshots"]["get"]["parameters"][0]["name"], "volume");
    EXPECT_EQ(paths["/volumes/{volume}/snapshots"]["get"]["responses"]["200"]["description"], "Snapshots");
    EXPECT_EQ(paths["/volumes/{volume}/snapshots"]["get"]["parameters"][1]["schema"]["maxLength"], 63);
}

TEST(Serialize, DeterministicAndNewlineTerminated) {
    for (const auto& file : corpus_files()) {
        auto doc = parse_document(read_file(file)).document;
        for (auto format : {DocFormat::json, DocFormat::yaml}) {
            auto a = serialize(doc, format);
            auto b = serialize(doc, format);
            EXPECT_EQ(a, b) << file;
            ASSERT_FALSE(a.empty());
            EXPECT_EQ(a.back(), '\n');
        }
    }
}

// Serializing and re-parsing yields the same tree, in both formats.
TEST(SerializeProperty, CorpusRoundTrip) {
    for (const auto& file : corpus_files()) {
        auto doc = parse_document(read_file(file)).document;
        for (auto format : {DocFormat::json, DocFormat::yaml}) {
            auto text = serialize(doc, format);
            auto back = parse_tree(text, format);
            EXPECT_EQ(back, doc.tree()) << file << " as " << to_string(format) << "\n" << text;
        }
    }
}

namespace {

std::string random_string(std::mt19937_64& rng) {
    static const std::vector<std::string> pieces = {
        "a", "Z", " ", ":", "#", "-", "?", "'", "\"", "\\", "\n", "\t", "true", "null", "1", "0x1", "1e3", "~",
        "{", "[", "&", "*", "!", "|", ">", "%", "@", "`", ",", "é", "\xE2\x80\xA8", "yes", "No", ".inf", "="};
    std::string s;
    const auto n = rng() % 5;
    for (std::size_t i = 0; i < n; ++i) s += pieces[rng() % pieces.size()];
    return s;
}

Json random_tree(std::mt19937_64& rng, int depth) {
    const auto pick = depth > 3 ? rng() % 5 : rng() % 7;
    switch (pick) {
        case 0: return nullptr;
        case 1: return rng() % 2 == 0;
        case 2: return static_cast<std::int64_t>(rng() % 2000) - 1000;
        case 3: return static_cast<double>(rng() % 1000) / 8.0 + 0.125;
        case 4: return random_string(rng);
        case 5: {
            Json arr = Json::array();
            const auto n = rng() % 4;
            for (std::size_t i = 0; i < n; ++i) arr.push_back(random_tree(rng, depth + 1));
            return arr;
        }
        default: {
            Json obj = Json::object();
            const auto n = rng() % 4;
            for (std::size_t i = 0; i < n; ++i) obj[random_string(rng)] = random_tree(rng, depth + 1);
            return obj;
        }
    }
}

}  // namespace

TEST(SerializeProperty, RandomTreesRoundTrip) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Json tree = Json::object();
        tree["k"] = random_tree(rng, 0);
        for (auto format : {DocFormat::json, DocFormat::yaml}) {
            auto text = serialize_tree(tree, format);
            ASSERT_EQ(parse_tree(text, format), tree) << to_string(format) << "\n" << text;
        }
    }
}

TEST(Serialize, KeywordCountsSurviveFormats) {
    auto doc = load_fixture("corpus/24_all_keywords_v3.yaml");
    auto counts = scan_schema_properties(doc);
    for (auto format : {DocFormat::json, DocFormat::yaml}) {
        auto again = parse_document(serialize(doc, format)).document;
        EXPECT_EQ(scan_schema_properties(again), counts);
    }
}
