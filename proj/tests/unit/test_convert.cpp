// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "olg/errors.hpp"
#include "olg/loader.hpp"
#include "test_support.hpp"

using namespace olg;
using namespace olg::testing;

namespace {

bool contains_text(const Json& node, const std::string& needle) {
    if (node.is_string()) return node.get<std::string>().find(needle) != std::string::npos;
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            if (key.find(needle) != std::string::npos || contains_text(value, needle)) return true;
        }
    }
    if (node.is_array()) {
        for (const auto& value : node) {
            if (contains_text(value, needle)) return true;
        }
    }
    return false;
}

Json v2_tree(const std::string& name) { return parse_tree(read_file(fixture(name))); }

}  // namespace

TEST(ConvertGolden, OrdersDocument) {
    auto converted = convert_v2_to_v3(v2_tree("convert/orders_v2.yaml"));
    auto expected = parse_tree(read_file(fixture("convert/orders_v3.json")));
    EXPECT_EQ(converted.document.tree(), expected) << converted.document.tree().dump(2);
}

TEST(ConvertGolden, NoHostMeansNoServers) {
    auto converted = convert_v2_to_v3(v2_tree("convert/nohost_v2.json"));
    auto expected = parse_tree(read_file(fixture("convert/nohost_v3.json")));
    EXPECT_EQ(converted.document.tree(), expected) << converted.document.tree().dump(2);
    EXPECT_TRUE(converted.document.servers().empty());
}

TEST(Convert, ServersFromSchemes) {
    auto doc = convert_v2_to_v3(v2_tree("corpus/02_petstore_v2.json")).document;
    EXPECT_EQ(doc.servers(), (std::vector<std::string>{"https://petstore.swagger.io/v2", "http://petstore.swagger.io/v2"}));
}

TEST(Convert, NoDefinitionsReferencesRemain) {
    for (const auto& file : corpus_files()) {
        auto loaded = parse_document(read_file(file));
        if (loaded.version.kind != VersionKind::swagger2) continue;
        EXPECT_FALSE(contains_text(loaded.document.tree(), "#/definitions/")) << file;
        EXPECT_FALSE(contains_text(loaded.document.tree(), "#/parameters/")) << file;
        EXPECT_FALSE(contains_text(loaded.document.tree(), "#/responses/")) << file;
        EXPECT_EQ(loaded.document.openapi_version(), "3.0.3");
        EXPECT_FALSE(loaded.document.tree().contains("swagger"));
        EXPECT_FALSE(loaded.document.tree().contains("definitions"));
    }
}

TEST(Convert, BodyBecomesRequestBody) {
    auto loaded = parse_document(read_file(fixture("corpus/02_petstore_v2.json")));
    const Json& post = loaded.document.tree()["paths"]["/pet"]["post"];
    EXPECT_FALSE(post.contains("parameters"));
    ASSERT_TRUE(post.contains("requestBody"));
    EXPECT_EQ(post["requestBody"]["required"], true);
    EXPECT_EQ(post["requestBody"]["content"]["application/xml"]["schema"]["$ref"], "#/components/schemas/Pet");
    EXPECT_FALSE(loaded.warnings.empty());
}

TEST(Convert, FormDataAndFiles) {
    auto doc = parse_document(read_file(fixture("corpus/18_formdata_v2.json"))).document;
    const Json& post = doc.tree()["paths"]["/files"]["post"];
    const Json& form = post["requestBody"]["content"]["multipart/form-data"]["schema"];
    EXPECT_EQ(form["properties"]["content"], Json({{"type", "string"}, {"format", "binary"}}));
    EXPECT_EQ(form["required"], Json::array({"content"}));
    EXPECT_EQ(post["parameters"].size(), 1u);
    const Json& download = doc.tree()["paths"]["/files/{fileId}"]["get"]["responses"]["200"];
    EXPECT_EQ(download["content"]["application/octet-stream"]["schema"], Json({{"type", "string"}, {"format", "binary"}}));
    EXPECT_EQ(doc.tree()["components"]["schemas"]["File"]["discriminator"], Json({{"propertyName", "kind"}}));
    EXPECT_EQ(doc.servers(), std::vector<std::string>{"/upload"});
}

TEST(Convert, SharedParametersAndResponses) {
    auto doc = parse_document(read_file(fixture("corpus/19_shared_refs_v2.yaml"))).document;
    const Json& t = doc.tree();
    EXPECT_EQ(t["paths"]["/customers"]["get"]["parameters"][0]["$ref"], "#/components/parameters/limit");
    EXPECT_EQ(t["paths"]["/customers"]["post"]["requestBody"]["$ref"], "#/components/requestBodies/customerBody");
    EXPECT_EQ(t["paths"]["/customers"]["get"]["responses"]["200"]["$ref"], "#/components/responses/CustomerList");
    EXPECT_TRUE(t["components"]["requestBodies"].contains("customerBody"));
    EXPECT_FALSE(t["components"]["parameters"].contains("customerBody"));
    EXPECT_EQ(t["components"]["parameters"]["limit"]["schema"]["maximum"], 100);
    EXPECT_EQ(t["paths"]["/customers/{customerId}"]["get"]["responses"]["200"]["headers"]["ETag"]["schema"]["type"], "string");
    EXPECT_EQ(doc.servers(), std::vector<std::string>{"//api.example.org"});
}

TEST(Convert, RejectsTwoBodies) {
    Json v2 = Json::parse(R"({"swagger":"2.0","info":{"title":"t","version":"1"},"paths":{"/a":{"post":{
        "parameters":[{"name":"a","in":"body","schema":{}},{"name":"b","in":"body","schema":{}}],
        "responses":{"200":{"description":"x"}}}}}})");
    EXPECT_THROW(convert_v2_to_v3(v2), ConversionError);
}
