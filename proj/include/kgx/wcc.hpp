#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kgx/knowledge_graph.hpp"

namespace kgx {

// Article set grown around a seed path. Members are sorted concept ids.
struct Community {
    std::vector<ArticleId> members;
    ConceptPath seed;
    std::optional<std::int64_t> score; // overlap score once computed
};

// Triangle-fit score of x inside the member set: the fraction of x's
// triangles that are internal, damped by how much of x's triangle
// neighbourhood the community covers. 0 when x closes no triangle at all.
// `members` must be sorted and contain x.
double wcc_vertex(const KnowledgeGraph& g, ArticleId x,
                  std::span<const ArticleId> members);

// Mean vertex score over the member set.
double wcc_community(const KnowledgeGraph& g, std::span<const ArticleId> members);

// Same scores backed by a per-vertex cache of whole-graph triangle totals.
// Cached and uncached evaluations agree exactly: the cache stores the very
// integer counts the formula consumes.
class WccEngine {
public:
    explicit WccEngine(const KnowledgeGraph& g);

    const KnowledgeGraph& graph() const { return g_; }

    double vertex(ArticleId x, std::span<const ArticleId> members) const;
    double community(std::span<const ArticleId> members) const;

    // Ensures totals exist for every listed vertex. Call before reading the
    // cache from parallel loops; each slot is written at most once.
    void prime(std::span<const ArticleId> vertices) const;

    TriangleStats totals(ArticleId x) const;

private:
    const KnowledgeGraph& g_;
    mutable std::vector<TriangleStats> totals_;
    mutable std::vector<std::uint8_t> have_;
};

} // namespace kgx
