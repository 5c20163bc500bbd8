#pragma once

#include <filesystem>
#include <unordered_set>
#include <vector>

#include "kgx/text.hpp"

namespace kgx {

// Two filter lists applied to queries and contexts before expansion: common
// English function words, and visual vocabulary (colors, positions, shapes)
// that text-only retrieval cannot act on.
struct StopwordSets {
    std::unordered_set<Term> general;
    std::unordered_set<Term> visual;

    static StopwordSets defaults();

    // One term per line, '#' comments allowed.
    static std::unordered_set<Term> load_file(const std::filesystem::path& path);

    std::vector<Term> filter(const std::vector<Term>& terms) const;
};

} // namespace kgx
