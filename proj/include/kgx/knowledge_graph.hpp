#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgx/rational.hpp"
#include "kgx/text.hpp"

namespace kgx {

// Dense article handle. Articles are stored sorted by their external id, so
// ordering internal handles orders external ids as well.
using ArticleId = std::uint32_t;

enum class Direction { out, in, both };

struct Article {
    std::int64_t external_id = 0;
    Phrase title;
    bool is_redirect = false;
    ArticleId redirect_target = 0; // valid iff is_redirect; always a concept
};

struct TriangleStats {
    std::uint64_t triangles = 0;        // triangles of x with both others in s
    std::uint64_t closing_vertices = 0; // members of s closing >= 1 triangle with x
};

// Directed path through concept articles; score is filled by the expansion
// stage (overlap score of the titles against query and context).
struct ConceptPath {
    std::vector<ArticleId> articles; // length >= 2, consecutive ids linked
    Rational score;
};

// Reusable buffers for repeated shortest-path searches over one graph.
class PathScratch {
public:
    void ensure(std::size_t n);

private:
    friend class KnowledgeGraph;
    std::vector<std::uint32_t> mark_;
    std::vector<std::int32_t> dist_;
    std::vector<ArticleId> frontier_;
    std::vector<ArticleId> next_;
    std::uint32_t epoch_ = 0;
};

// Immutable directed graph of articles with redirect metadata. Redirect
// chains are collapsed at load time; all edges connect non-redirect
// ("concept") articles. Safe for concurrent read-only use after load.
class KnowledgeGraph {
public:
    struct NodeRecord {
        std::int64_t external_id;
        std::string title;
        std::optional<std::int64_t> redirect_target; // external id
    };

    // Parses the TSV sources (id<TAB>title<TAB>redirect-or-dash and
    // src<TAB>dst), collapses redirect chains, remaps edges incident to
    // redirects onto their targets, and drops self loops and duplicates.
    static KnowledgeGraph load(std::istream& nodes, std::istream& edges,
                               std::string_view nodes_name = "nodes",
                               std::string_view edges_name = "edges");

    // Builds a graph from already-collapsed tables (deserialization path).
    // Performs the same structural validation as load.
    static KnowledgeGraph from_tables(std::vector<NodeRecord> nodes,
                                      std::vector<std::pair<std::int64_t, std::int64_t>> edges);

    std::size_t article_count() const { return articles_.size(); }
    std::size_t concept_count() const { return concept_count_; }
    std::size_t edge_count() const { return out_adj_.size(); }
    std::size_t redirect_count() const { return articles_.size() - concept_count_; }

    const Article& article(ArticleId id) const { return articles_[id]; }
    std::optional<ArticleId> find_external(std::int64_t external_id) const;

    // Title lookup on the normalized token sequence; a redirect title
    // resolves to its target concept.
    std::optional<ArticleId> resolve_title(const Phrase& title) const;

    // Ids of the redirect articles pointing at concept `id`.
    std::span<const ArticleId> redirect_ids(ArticleId id) const;
    // Their titles; never contains the concept's own title.
    std::vector<Phrase> redirects_of(ArticleId id) const;

    std::span<const ArticleId> out_neighbors(ArticleId id) const;
    std::span<const ArticleId> in_neighbors(ArticleId id) const;
    // Union view: an undirected edge exists when a link exists either way.
    std::span<const ArticleId> und_neighbors(ArticleId id) const;
    std::span<const ArticleId> neighbors(ArticleId id, Direction dir) const;

    // All minimum-length directed paths from `source` to the nearest
    // member(s) of `targets` (source itself excluded), capped at max_hops.
    // Paths are returned in lexicographic article-id order.
    std::vector<ConceptPath> shortest_paths(ArticleId source,
                                            std::span<const ArticleId> targets,
                                            int max_hops,
                                            PathScratch* scratch = nullptr) const;

    // Triangle counts of x against the member set `s` (sorted ids; x is
    // ignored if present). Uses the undirected view. closing_vertices counts
    // members of s that close at least one triangle with x through any third
    // vertex in the whole graph.
    TriangleStats triangle_stats(ArticleId x, std::span<const ArticleId> s) const;

    // Whole-graph totals: triangles containing x, and vertices anywhere
    // closing at least one triangle with x.
    TriangleStats triangle_totals(ArticleId x) const;

    // Articles (redirects included) whose title contains `term`.
    std::span<const ArticleId> articles_with_term(const Term& term) const;

    // Concept articles only, ascending id.
    const std::vector<ArticleId>& concepts() const { return concepts_; }

    // Edge list in canonical order, external ids (serialization support).
    std::vector<std::pair<std::int64_t, std::int64_t>> edge_list() const;

private:
    KnowledgeGraph() = default;
    void build(std::vector<Article> articles,
               std::vector<std::pair<ArticleId, ArticleId>> edges);
    void require_concept(ArticleId id, const char* op) const;

    std::vector<Article> articles_; // sorted by external_id
    std::size_t concept_count_ = 0;
    std::vector<ArticleId> concepts_;
    std::unordered_map<std::int64_t, ArticleId> external_index_;
    std::unordered_map<std::string, ArticleId> title_index_;
    std::unordered_map<std::string, std::vector<ArticleId>> term_postings_;

    // CSR adjacency over all article ids (redirect rows are empty).
    std::vector<std::size_t> out_off_, in_off_, und_off_, red_off_;
    std::vector<ArticleId> out_adj_, in_adj_, und_adj_, red_ids_;
};

} // namespace kgx
