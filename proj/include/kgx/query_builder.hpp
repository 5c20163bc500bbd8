#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "kgx/text.hpp"
#include "kgx/weighted_query.hpp"

namespace kgx {

struct WeightVector {
    double alpha = 0.08;
    double beta = 0.05;
    double gamma = 0.87;

    bool operator==(const WeightVector&) const = default;
};

// The combined query: the user's phrase, its corpus-backed synonym phrases,
// and the graph-derived concept phrases, under one weight vector.
struct StructuredQuery {
    WeightVector weights;
    WeightedQuery original;
    WeightedQuery lexical;
    WeightedQuery topological;
    std::optional<WeightedQuery> context; // baseline construction only

    bool operator==(const StructuredQuery&) const = default;
};

// Single entry <1, q>.
WeightedQuery build_original_query(const Phrase& q);

// One entry per distinct term of the context, equally weighted.
WeightedQuery build_context_query(const Phrase& c);

// Wraps the three components under the weight vector. Throws PipelineError
// when no branch would render (zero-weighted or empty all around).
StructuredQuery combine(WeightedQuery original, WeightedQuery lexical,
                        WeightedQuery topological, WeightVector weights);

// Weighted-operator text form. Branches with zero weight or no entries are
// omitted and the remaining branch weights renormalized; weights print with
// six decimals; entries order by descending weight then phrase text. The
// original phrase renders as a term bag, synonym phrases as exact ordered
// matches, concept phrases as unordered windows of four times their length.
std::string render_text(const StructuredQuery& sq);

// Canonical JSON (sorted keys, lossless doubles); empty components are
// serialized as empty arrays. parse_json inverts it exactly.
std::string render_json(const StructuredQuery& sq);
StructuredQuery parse_json(std::string_view json_text);

} // namespace kgx
