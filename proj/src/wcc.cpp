#include "kgx/wcc.hpp"

#include <algorithm>

#include "kgx/errors.hpp"

namespace kgx {

namespace {

double vertex_score(const KnowledgeGraph& g, ArticleId x,
                    std::span<const ArticleId> members, const TriangleStats& all) {
    if (!std::binary_search(members.begin(), members.end(), x)) {
        throw ContractError("wcc_vertex: vertex is not a community member");
    }
    if (all.triangles == 0) return 0.0;
    const TriangleStats in = g.triangle_stats(x, members); // x skipped inside
    const std::uint64_t others = members.size() - 1;
    const std::uint64_t closing_outside = all.closing_vertices - in.closing_vertices;
    const double triangle_ratio = double(in.triangles) / double(all.triangles);
    const double coverage =
        double(all.closing_vertices) / double(others + closing_outside);
    return triangle_ratio * coverage;
}

} // namespace

double wcc_vertex(const KnowledgeGraph& g, ArticleId x,
                  std::span<const ArticleId> members) {
    return vertex_score(g, x, members, g.triangle_totals(x));
}

double wcc_community(const KnowledgeGraph& g, std::span<const ArticleId> members) {
    if (members.empty()) throw ContractError("wcc_community: empty community");
    double sum = 0.0;
    for (ArticleId x : members) sum += wcc_vertex(g, x, members);
    return sum / double(members.size());
}

WccEngine::WccEngine(const KnowledgeGraph& g)
    : g_(g), totals_(g.article_count()), have_(g.article_count(), 0) {}

TriangleStats WccEngine::totals(ArticleId x) const {
    if (!have_[x]) {
        totals_[x] = g_.triangle_totals(x);
        have_[x] = 1;
    }
    return totals_[x];
}

void WccEngine::prime(std::span<const ArticleId> vertices) const {
    for (ArticleId x : vertices) totals(x);
}

double WccEngine::vertex(ArticleId x, std::span<const ArticleId> members) const {
    return vertex_score(g_, x, members, totals(x));
}

double WccEngine::community(std::span<const ArticleId> members) const {
    if (members.empty()) throw ContractError("wcc_community: empty community");
    double sum = 0.0;
    for (ArticleId x : members) sum += vertex(x, members);
    return sum / double(members.size());
}

} // namespace kgx
