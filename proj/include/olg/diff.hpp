// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "olg/document.hpp"
#include "olg/link_generator.hpp"
#include "olg/loader.hpp"

namespace olg {

enum class EditKind { equal, remove, insert };

/// One line of a line-level edit script. `before`/`after` are 0-based line
/// indices; the one that does not apply to the kind is unused.
struct LineEdit {
    EditKind kind;
    std::size_t before;
    std::size_t after;
};

std::vector<std::string> split_lines(std::string_view text);

/// Shortest line edit script (Myers, linear space).
std::vector<LineEdit> diff_lines(const std::vector<std::string>& before, const std::vector<std::string>& after);

/// Unified diff with `context` lines around each change; "" when equal.
std::string unified_diff(std::string_view before, std::string_view after, std::string_view before_label = "before",
                         std::string_view after_label = "after", std::size_t context = 3);

/// Diff of the canonical serializations. Both sides use `format`; diffing
/// a JSON rendering against a YAML one is meaningless.
std::string render_diff(const Document& before, const Document& after, DocFormat format,
                        std::string_view before_label = "before", std::string_view after_label = "after");

enum class SummaryMode { text, json };

std::string summarize(const GenerationReport& report, SummaryMode mode);

}  // namespace olg
