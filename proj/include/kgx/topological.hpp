#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kgx/exec.hpp"
#include "kgx/knowledge_graph.hpp"
#include "kgx/rational.hpp"
#include "kgx/text.hpp"
#include "kgx/wcc.hpp"
#include "kgx/weighted_query.hpp"

namespace kgx {

inline constexpr std::size_t kDefaultRelevantCap = 5000;
inline constexpr int kDefaultMaxHops = 4;
inline constexpr int kDefaultIterationCap = 200;

enum class SetOrigin { query, context };

struct RelevantSet {
    SetOrigin origin = SetOrigin::query;
    std::vector<ArticleId> members; // sorted concept ids
    bool truncated = false;
};

// Concepts matched by the phrase set: articles whose title (or a redirect
// title) contains a bigram of some phrase as a contiguous run, plus articles
// whose title contains a single term of some phrase. Redirect hits map to
// their targets. Results above `cap` are truncated (lowest ids kept) and
// flagged, never rejected.
RelevantSet select_relevant(const KnowledgeGraph& g, std::span<const Phrase> phrases,
                            SetOrigin origin, std::size_t cap = kDefaultRelevantCap);

// Overlap score of a path: for every article on it, shared terms of the
// title with the query plus shared terms with the context, divided by the
// path length. Exact rational, so ties and maxima are never float artifacts.
Rational score_path(const KnowledgeGraph& g, const ConceptPath& p,
                    const Phrase& query, const Phrase& context);

// Shortest paths from every member of `rq` to the nearest member(s) of `rc`,
// scored, in lexicographic article-id order. Only the rq -> rc direction is
// searched.
std::vector<ConceptPath> compute_paths(const KnowledgeGraph& g, const RelevantSet& rq,
                                       const RelevantSet& rc, int max_hops,
                                       const Phrase& query, const Phrase& context,
                                       Exec exec = Exec::parallel);

// Paths tied at the maximum score, input order preserved.
std::vector<ConceptPath> top_paths(std::vector<ConceptPath> paths);

struct GrowthEvent {
    enum class Kind { accepted, removed };
    Kind kind = Kind::accepted;
    ArticleId article = 0;
    int outer_iteration = 0;
    double wcc_after = 0.0;       // community score after the change
    double objective_after = 0.0; // |K| * wcc (growth events only)
};

struct GrowthTrace {
    std::vector<GrowthEvent> events;
    bool iteration_cap_hit = false;
    bool fallback_to_seed = false;
    double final_wcc = 0.0;
};

// Community search around a seed path. Alternates a growth loop (accept the
// neighbour that maximizes the size-weighted community score, while that
// objective strictly increases) with removal sweeps (drop members scoring
// below a quarter of the sweep-start community score), until the community
// score settles or the iteration cap is hit. A fully-emptied community falls
// back to the seed articles, flagged in the trace.
Community grow_community(const WccEngine& wcc, const ConceptPath& seed,
                         int iteration_cap = kDefaultIterationCap,
                         Exec exec = Exec::parallel, GrowthTrace* trace = nullptr);

// Sum of title overlaps with query and context over the members.
std::int64_t score_community(const KnowledgeGraph& g, const Community& k,
                             const Phrase& query, const Phrase& context);

// Communities tied at the maximum score, input order preserved.
std::vector<Community> top_communities(std::vector<Community> ks);

// Which side of the title/query containment test places an article on the
// second hierarchy level.
enum class ContainmentRule {
    title_within_query, // every title term appears in the query
    query_within_title, // every query term appears in the title
};

// Leveled structure rooted at the query terms. Level 1 holds the terms;
// level 2 holds the community articles passing the containment rule; each
// deeper level holds the not-yet-placed members linked from the level above.
class Hierarchy {
public:
    Hierarchy(std::vector<Term> root_terms,
              std::vector<std::vector<ArticleId>> article_levels);

    const std::vector<Term>& root_terms() const { return root_terms_; }
    const std::vector<std::vector<ArticleId>>& article_levels() const {
        return article_levels_;
    }

    // Total level count, the root term level included.
    std::size_t depth() const { return 1 + article_levels_.size(); }
    bool degenerate() const { return article_levels_.empty(); }

    // 2-based level of a placed article; 0 when absent.
    std::size_t level_of(ArticleId id) const;

private:
    std::vector<Term> root_terms_;
    std::vector<std::vector<ArticleId>> article_levels_;
};

Hierarchy build_hierarchy(const KnowledgeGraph& g, const Community& k, const Phrase& query,
                          ContainmentRule rule = ContainmentRule::title_within_query);

// Level weight of a placed article: linear decay from 1 just below the root
// to 0 at the deepest level; the sole article level of a two-level hierarchy
// weighs 1. An article whose title equals a root term absorbs the root
// weight on top, capped at 1.
double article_weight(const KnowledgeGraph& g, ArticleId id, const Hierarchy& h);

// Averages each article's weight across all hierarchies (absent = 0), drops
// zero-weight articles, and emits the article title plus every redirect
// title at the article's weight.
WeightedQuery build_topological_query(const KnowledgeGraph& g,
                                      std::span<const Hierarchy> hierarchies);

} // namespace kgx
