// SPDX-License-Identifier: Apache-2.0
#include "olg/diff.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace olg {

namespace {

using Ids = std::vector<std::size_t>;

// Lines are interned so the algorithm compares integers.
class Differ {
  public:
    Differ(const Ids& a, const Ids& b) : a_(a), b_(b) {}

    std::vector<LineEdit> run() {
        diff(0, a_.size(), 0, b_.size());
        return std::move(edits_);
    }

  private:
    void equal(std::size_t ai, std::size_t bi) { edits_.push_back({EditKind::equal, ai, bi}); }

    void diff(std::size_t a_lo, std::size_t a_hi, std::size_t b_lo, std::size_t b_hi) {
        while (a_lo < a_hi && b_lo < b_hi && a_[a_lo] == b_[b_lo]) equal(a_lo++, b_lo++);
        std::size_t tail = 0;
        while (a_hi - tail > a_lo && b_hi - tail > b_lo && a_[a_hi - tail - 1] == b_[b_hi - tail - 1]) ++tail;
        a_hi -= tail;
        b_hi -= tail;

        if (a_lo == a_hi) {
            for (std::size_t j = b_lo; j < b_hi; ++j) edits_.push_back({EditKind::insert, a_lo, j});
        } else if (b_lo == b_hi) {
            for (std::size_t i = a_lo; i < a_hi; ++i) edits_.push_back({EditKind::remove, i, b_lo});
        } else {
            bisect(a_lo, a_hi, b_lo, b_hi);
        }
        for (std::size_t k = 0; k < tail; ++k) equal(a_hi + k, b_hi + k);
    }

    // Finds the middle snake and splits the problem in two.
    void bisect(std::size_t a_lo, std::size_t a_hi, std::size_t b_lo, std::size_t b_hi) {
        const auto n = static_cast<long>(a_hi - a_lo);
        const auto m = static_cast<long>(b_hi - b_lo);
        const long max_d = (n + m + 1) / 2;
        const long offset = max_d;
        const long length = 2 * max_d + 2;
        std::vector<long> v1(static_cast<std::size_t>(length), -1);
        std::vector<long> v2(static_cast<std::size_t>(length), -1);
        v1[static_cast<std::size_t>(offset + 1)] = 0;
        v2[static_cast<std::size_t>(offset + 1)] = 0;
        const long delta = n - m;
        const bool front = delta % 2 != 0;
        long k1start = 0, k1end = 0, k2start = 0, k2end = 0;
        auto A = [&](long i) { return a_[a_lo + static_cast<std::size_t>(i)]; };
        auto B = [&](long j) { return b_[b_lo + static_cast<std::size_t>(j)]; };
        auto at = [](std::vector<long>& v, long i) -> long& { return v[static_cast<std::size_t>(i)]; };

        for (long d = 0; d < max_d; ++d) {
            for (long k1 = -d + k1start; k1 <= d - k1end; k1 += 2) {
                const long k1_offset = offset + k1;
                long x1 = (k1 == -d || (k1 != d && at(v1, k1_offset - 1) < at(v1, k1_offset + 1)))
                              ? at(v1, k1_offset + 1)
                              : at(v1, k1_offset - 1) + 1;
                long y1 = x1 - k1;
                while (x1 < n && y1 < m && A(x1) == B(y1)) {
                    ++x1;
                    ++y1;
                }
                at(v1, k1_offset) = x1;
                if (x1 > n) {
                    k1end += 2;
                } else if (y1 > m) {
                    k1start += 2;
                } else if (front) {
                    const long k2_offset = offset + delta - k1;
                    if (k2_offset >= 0 && k2_offset < length && at(v2, k2_offset) != -1) {
                        const long x2 = n - at(v2, k2_offset);
                        if (x1 >= x2) return split(a_lo, a_hi, b_lo, b_hi, x1, y1);
                    }
                }
            }
            for (long k2 = -d + k2start; k2 <= d - k2end; k2 += 2) {
                const long k2_offset = offset + k2;
                long x2 = (k2 == -d || (k2 != d && at(v2, k2_offset - 1) < at(v2, k2_offset + 1)))
                              ? at(v2, k2_offset + 1)
                              : at(v2, k2_offset - 1) + 1;
                long y2 = x2 - k2;
                while (x2 < n && y2 < m && A(n - x2 - 1) == B(m - y2 - 1)) {
                    ++x2;
                    ++y2;
                }
                at(v2, k2_offset) = x2;
                if (x2 > n) {
                    k2end += 2;
                } else if (y2 > m) {
                    k2start += 2;
                } else if (!front) {
                    const long k1_offset = offset + delta - k2;
                    if (k1_offset >= 0 && k1_offset < length && at(v1, k1_offset) != -1) {
                        const long x1 = at(v1, k1_offset);
                        const long y1 = offset + x1 - k1_offset;
                        if (x1 >= n - x2) return split(a_lo, a_hi, b_lo, b_hi, x1, y1);
                    }
                }
            }
        }
        for (std::size_t i = a_lo; i < a_hi; ++i) edits_.push_back({EditKind::remove, i, b_lo});
        for (std::size_t j = b_lo; j < b_hi; ++j) edits_.push_back({EditKind::insert, a_hi, j});
    }

    void split(std::size_t a_lo, std::size_t a_hi, std::size_t b_lo, std::size_t b_hi, long x, long y) {
        const auto a_mid = a_lo + static_cast<std::size_t>(x);
        const auto b_mid = b_lo + static_cast<std::size_t>(y);
        diff(a_lo, a_mid, b_lo, b_mid);
        diff(a_mid, a_hi, b_mid, b_hi);
    }

    const Ids& a_;
    const Ids& b_;
    std::vector<LineEdit> edits_;
};

std::string range(std::size_t start, std::size_t count) {
    // GNU convention: an empty range names the line before it.
    const auto first = count == 0 ? start : start + 1;
    return count == 1 ? std::to_string(first) : std::to_string(first) + "," + std::to_string(count);
}

}  // namespace

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.emplace_back(text.substr(start));
            break;
        }
        lines.emplace_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

std::vector<LineEdit> diff_lines(const std::vector<std::string>& before, const std::vector<std::string>& after) {
    std::unordered_map<std::string_view, std::size_t> ids;
    auto intern = [&](const std::vector<std::string>& lines) {
        Ids out;
        out.reserve(lines.size());
        for (const auto& line : lines) out.push_back(ids.emplace(line, ids.size()).first->second);
        return out;
    };
    const auto a = intern(before);
    const auto b = intern(after);
    auto edits = Differ(a, b).run();
    // Within each change block list removals before insertions, as diff(1) does.
    for (auto it = edits.begin(); it != edits.end();) {
        if (it->kind == EditKind::equal) {
            ++it;
            continue;
        }
        auto end = std::find_if(it, edits.end(), [](const LineEdit& e) { return e.kind == EditKind::equal; });
        std::stable_partition(it, end, [](const LineEdit& e) { return e.kind == EditKind::remove; });
        it = end;
    }
    return edits;
}

std::string unified_diff(std::string_view before, std::string_view after, std::string_view before_label,
                         std::string_view after_label, std::size_t context) {
    if (before == after) return "";
    const auto a = split_lines(before);
    const auto b = split_lines(after);
    const auto edits = diff_lines(a, b);

    std::vector<std::size_t> changes;
    for (std::size_t i = 0; i < edits.size(); ++i) {
        if (edits[i].kind != EditKind::equal) changes.push_back(i);
    }
    if (changes.empty()) return "";

    std::ostringstream out;
    out << "--- " << before_label << "\n+++ " << after_label << "\n";
    std::size_t c = 0;
    while (c < changes.size()) {
        // Extend the hunk while the gap between changes fits in 2 * context.
        std::size_t last = c;
        while (last + 1 < changes.size() && changes[last + 1] - changes[last] - 1 <= 2 * context) ++last;
        const std::size_t begin = changes[c] >= context ? changes[c] - context : 0;
        const std::size_t end = std::min(edits.size(), changes[last] + context + 1);

        std::size_t a_start = 0, b_start = 0, a_count = 0, b_count = 0;
        bool a_set = false, b_set = false;
        for (std::size_t i = begin; i < end; ++i) {
            const auto& e = edits[i];
            if (e.kind != EditKind::insert) {
                if (!a_set) a_start = e.before, a_set = true;
                ++a_count;
            }
            if (e.kind != EditKind::remove) {
                if (!b_set) b_start = e.after, b_set = true;
                ++b_count;
            }
        }
        if (!a_set) a_start = edits[begin].before;
        if (!b_set) b_start = edits[begin].after;

        out << "@@ -" << range(a_start, a_count) << " +" << range(b_start, b_count) << " @@\n";
        for (std::size_t i = begin; i < end; ++i) {
            const auto& e = edits[i];
            switch (e.kind) {
                case EditKind::equal: out << ' ' << a[e.before] << '\n'; break;
                case EditKind::remove: out << '-' << a[e.before] << '\n'; break;
                case EditKind::insert: out << '+' << b[e.after] << '\n'; break;
            }
        }
        c = last + 1;
    }
    return out.str();
}

std::string render_diff(const Document& before, const Document& after, DocFormat format, std::string_view before_label,
                        std::string_view after_label) {
    return unified_diff(serialize(before, format), serialize(after, format), before_label, after_label);
}

namespace {

std::string count_of(std::size_t n, std::string_view singular, std::string_view plural) {
    return std::to_string(n) + " " + std::string(n == 1 ? singular : plural);
}

}  // namespace

std::string summarize(const GenerationReport& report, SummaryMode mode) {
    if (mode == SummaryMode::json) return report.to_json().dump(2) + "\n";
    std::ostringstream out;
    out << count_of(report.links_added, "link", "links") << " added ("
        << count_of(report.pairs_considered, "pair", "pairs") << " considered)\n";
    out << count_of(report.parameters_mapped, "parameter", "parameters") << " mapped, "
        << count_of(report.child_params_unmapped, "target parameter", "target parameters") << " left unmapped\n";
    out << "skipped: " << report.links_skipped_duplicate << " duplicate, " << report.pairs_skipped_no_mapping
        << " without shared parameters, " << report.pairs_skipped_no_success_response << " without a 2xx response\n";
    for (const auto& link : report.per_link) {
        out << "  " << link.parent << " [" << link.response << "] -> " << link.child << " as '" << link.link_name << "' ("
            << count_of(link.mapping_count, "mapping", "mappings") << ")\n";
    }
    out << count_of(report.warnings.size(), "warning", "warnings") << "\n";
    for (const auto& warning : report.warnings) out << "  warning: " << warning << "\n";
    return out.str();
}

}  // namespace olg
