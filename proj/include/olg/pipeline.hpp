// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "olg/link_generator.hpp"
#include "olg/loader.hpp"

namespace olg {

struct GenerateRun {
    LoadedDocument input;
    GenerationResult result;
    DocFormat output_format = DocFormat::json;
    std::string document_text;
    std::string diff;
};

/// parse -> (convert) -> generate_links -> serialize -> diff. The output
/// format defaults to the input's. Both the CLI and the HTTP service go
/// through here so their documents are byte-identical.
GenerateRun run_generate(std::string_view text, std::optional<DocFormat> format, const GenerationOptions& options,
                         std::string_view source_label = "input");

}  // namespace olg
