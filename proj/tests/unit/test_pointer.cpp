// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "olg/errors.hpp"
#include "olg/pointer.hpp"
#include "test_support.hpp"

using namespace olg;

TEST(JsonPointer, ParsesEscapedPathKey) {
    auto ptr = JsonPointer::parse("/paths/~1repos~1{owner}~1{repo}/get");
    ASSERT_EQ(ptr.tokens().size(), 3u);
    EXPECT_EQ(ptr.tokens()[0], "paths");
    EXPECT_EQ(ptr.tokens()[1], "/repos/{owner}/{repo}");
    EXPECT_EQ(ptr.tokens()[2], "get");
    EXPECT_EQ(ptr.to_string(), "/paths/~1repos~1{owner}~1{repo}/get");
}

TEST(JsonPointer, EmptyPointerIsWholeDocument) {
    auto ptr = JsonPointer::parse("");
    EXPECT_TRUE(ptr.empty());
    Json root = {{"a", 1}};
    EXPECT_EQ(resolve_pointer(root, ptr), root);
}

TEST(JsonPointer, RejectsBadEscapesAndMissingSlash) {
    EXPECT_THROW(JsonPointer::parse("/a~2b"), MalformedPointer);
    EXPECT_THROW(JsonPointer::parse("/a~"), MalformedPointer);
    EXPECT_THROW(JsonPointer::parse("a/b"), MalformedPointer);
}

TEST(JsonPointer, TildeOneZeroOrder) {
    // "~01" is "~1" literally, not "/".
    EXPECT_EQ(JsonPointer::parse("/~01").tokens()[0], "~1");
    EXPECT_EQ(escape_pointer_token("a/b~c"), "a~1b~0c");
}

TEST(JsonPointer, ReferenceFormIsPercentDecoded) {
    auto ptr = JsonPointer::from_reference("#/components/schemas/A%20B");
    EXPECT_EQ(ptr.tokens().back(), "A B");
    EXPECT_EQ(ptr.to_reference(), "#/components/schemas/A B");
    EXPECT_THROW(JsonPointer::from_reference("other.yaml#/x"), ExternalReference);
}

TEST(JsonPointer, MissingTargetReportsTokenIndex) {
    Json root = {{"components", {{"schemas", Json::object()}}}};
    try {
        resolve_pointer(root, JsonPointer::parse("/components/schemas/Missing"));
        FAIL() << "expected PointerTargetMissing";
    } catch (const PointerTargetMissing& e) {
        EXPECT_EQ(e.token_index(), 2u);
    }
}

TEST(JsonPointer, ArrayIndices) {
    Json root = {{"list", {10, 20, 30}}};
    EXPECT_EQ(resolve_pointer(root, JsonPointer::parse("/list/2")), 30);
    EXPECT_THROW(resolve_pointer(root, JsonPointer::parse("/list/3")), PointerTargetMissing);
    EXPECT_THROW(resolve_pointer(root, JsonPointer::parse("/list/01")), PointerTargetMissing);
    EXPECT_THROW(resolve_pointer(root, JsonPointer::parse("/list/-")), PointerTargetMissing);
}

TEST(Deref, FollowsChains) {
    Json root = Json::parse(R"({"components":{"schemas":{
        "A":{"$ref":"#/components/schemas/B"},
        "B":{"type":"string"}}}})");
    Json node = {{"$ref", "#/components/schemas/A"}};
    EXPECT_EQ(deref(root, node), Json({{"type", "string"}}));
    // Idempotent on the result.
    EXPECT_EQ(&deref(root, deref(root, node)), &deref(root, node));
    // Non-references pass through unchanged.
    Json plain = {{"type", "integer"}};
    EXPECT_EQ(&deref(root, plain), &plain);
}

TEST(Deref, DetectsCycles) {
    Json root = Json::parse(R"({"components":{"schemas":{
        "Self":{"$ref":"#/components/schemas/Self"},
        "P":{"$ref":"#/components/schemas/Q"},
        "Q":{"$ref":"#/components/schemas/P"}}}})");
    EXPECT_THROW(deref(root, Json{{"$ref", "#/components/schemas/Self"}}), CircularReference);
    EXPECT_THROW(deref(root, Json{{"$ref", "#/components/schemas/P"}}), CircularReference);
}

TEST(Deref, ExternalAndMissing) {
    Json root = Json::object();
    EXPECT_THROW(deref(root, Json{{"$ref", "common.yaml#/Id"}}), ExternalReference);
    EXPECT_THROW(deref(root, Json{{"$ref", "#/nowhere"}}), PointerTargetMissing);
}

// Random tokens over an alphabet heavy in '/' and '~' survive to_string/parse,
// and resolve back to the node they were built from.
TEST(JsonPointerProperty, RoundTrip1000) {
    std::mt19937_64 rng(20240601);
    const std::string alphabet = "/~01ab{}.%-";
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::string> tokens(rng() % 5);
        for (auto& t : tokens) {
            const auto len = rng() % 7;
            for (std::size_t k = 0; k < len; ++k) t += alphabet[rng() % alphabet.size()];
        }
        JsonPointer ptr(tokens);
        auto text = ptr.to_string();
        auto back = JsonPointer::parse(text);
        ASSERT_EQ(back, ptr) << text;
        ASSERT_EQ(back.to_string(), text);

        Json root = Json::object();
        Json* node = &root;
        for (const auto& t : tokens) node = &(*node)[t];
        *node = i;
        ASSERT_EQ(resolve_pointer(root, back), i) << text;
    }
}
