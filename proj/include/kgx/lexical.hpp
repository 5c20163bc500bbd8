#pragma once

#include <cstddef>
#include <vector>

#include "kgx/corpus_index.hpp"
#include "kgx/knowledge_graph.hpp"
#include "kgx/text.hpp"
#include "kgx/weighted_query.hpp"

namespace kgx {

inline constexpr std::size_t kDefaultSynonymCap = 1024;

// Single-term alternative names of `t`, drawn from the article whose title
// (or redirect title) equals t: the target's own title plus its redirect
// titles, minus t itself. Empty when no such article exists.
std::vector<Term> term_synonyms(const KnowledgeGraph& g, const Term& t);

// Every combination of per-position alternatives (the original term plus its
// synonyms), order preserved; includes the original phrase. Throws
// CapacityError when the combination count exceeds `cap`.
std::vector<Phrase> phrase_synonyms(const KnowledgeGraph& g, const Phrase& q,
                                    std::size_t cap = kDefaultSynonymCap);

// Keeps the synonym phrases that occur in the corpus, excluding the original
// phrase itself, each weighted 1/|kept|. Empty when nothing survives.
WeightedQuery build_lexical_query(const std::vector<Phrase>& synonyms,
                                  const CorpusIndex& idx, const Phrase& original);

} // namespace kgx
