// SPDX-License-Identifier: Apache-2.0
#include "olg/pipeline.hpp"

#include "olg/diff.hpp"

namespace olg {

GenerateRun run_generate(std::string_view text, std::optional<DocFormat> format, const GenerationOptions& options,
                         std::string_view source_label) {
    auto input = parse_document(text);
    auto result = generate_links(input.document, options);
    for (auto it = input.warnings.rbegin(); it != input.warnings.rend(); ++it) {
        result.report.warnings.insert(result.report.warnings.begin(), "conversion: " + *it);
    }
    const auto out_format = format.value_or(input.format);
    auto before = serialize(input.document, out_format);
    auto after = serialize(result.document, out_format);
    const std::string label(source_label);
    auto diff = unified_diff(before, after, label, label + " (with links)");
    GenerateRun run{std::move(input), std::move(result), out_format, std::move(after), std::move(diff)};
    return run;
}

}  // namespace olg
