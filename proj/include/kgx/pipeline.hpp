#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kgx/corpus_index.hpp"
#include "kgx/exec.hpp"
#include "kgx/knowledge_graph.hpp"
#include "kgx/lexical.hpp"
#include "kgx/query_builder.hpp"
#include "kgx/stopwords.hpp"
#include "kgx/topological.hpp"

namespace kgx {

struct PipelineConfig {
    WeightVector weights;
    int max_hops = kDefaultMaxHops;
    std::size_t synonym_cap = kDefaultSynonymCap;
    int wcc_iteration_cap = kDefaultIterationCap;
    std::size_t relevant_cap = kDefaultRelevantCap;
    ContainmentRule containment = ContainmentRule::title_within_query;
    StopwordSets stopwords = StopwordSets::defaults();
    Exec exec = Exec::parallel;
};

struct LexicalDiag {
    struct Candidate {
        Phrase phrase;
        bool in_corpus = false;
        bool kept = false;
    };
    std::vector<Phrase> synonyms;
    std::vector<Candidate> candidates;
    bool phrase_too_long = false; // longer than the indexed n-gram size
};

struct CommunityDiag {
    ConceptPath seed;
    std::vector<ArticleId> members;
    std::int64_t score = 0;
    double wcc = 0.0;
    GrowthTrace trace;
    bool duplicate_dropped = false;
    bool selected = false;
};

struct Diagnostics {
    std::string raw_query;
    std::string raw_context;
    bool context_defaulted = false;      // no context supplied, context := query
    bool context_filtered_empty = false; // context was all stopwords, context := query
    std::vector<Term> query_terms;
    std::vector<Term> context_terms;
    LexicalDiag lexical;
    std::size_t context_synonym_count = 0;
    bool context_synonym_overflow = false; // degraded to the bare context phrase
    RelevantSet relevant_query;
    RelevantSet relevant_context;
    std::vector<ConceptPath> scored_paths;
    std::vector<ConceptPath> kept_paths;
    std::vector<CommunityDiag> communities;
    std::vector<Hierarchy> hierarchies;
    WeightedQuery topological;
};

struct ExpansionResult {
    StructuredQuery query;
    Diagnostics diagnostics;
};

// Full expansion: stopword filtering, synonym lookup and corpus gating,
// relevant-set selection, path search, community growth, hierarchy scoring,
// and the final weighted combination. When no context is supplied the query
// text stands in for it.
ExpansionResult expand_query(const KnowledgeGraph& g, const CorpusIndex& idx,
                             const PipelineConfig& cfg, std::string_view query_text,
                             std::optional<std::string_view> context_text);

nlohmann::json diagnostics_json(const Diagnostics& d, const KnowledgeGraph& g);

} // namespace kgx
