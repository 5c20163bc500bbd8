#include "kgx/topological.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kgx/errors.hpp"

namespace kgx {

namespace {

bool title_has_bigram(const Phrase& title, const Term& a, const Term& b) {
    const auto& t = title.terms();
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        if (t[i] == a && t[i + 1] == b) return true;
    }
    return false;
}

ArticleId concept_of(const KnowledgeGraph& g, ArticleId id) {
    const Article& a = g.article(id);
    return a.is_redirect ? a.redirect_target : id;
}

std::vector<ArticleId> sorted_insert(std::span<const ArticleId> sorted, ArticleId x) {
    std::vector<ArticleId> out;
    out.reserve(sorted.size() + 1);
    auto pos = std::lower_bound(sorted.begin(), sorted.end(), x);
    out.insert(out.end(), sorted.begin(), pos);
    out.push_back(x);
    out.insert(out.end(), pos, sorted.end());
    return out;
}

} // namespace

RelevantSet select_relevant(const KnowledgeGraph& g, std::span<const Phrase> phrases,
                            SetOrigin origin, std::size_t cap) {
    std::vector<ArticleId> hits;
    for (const Phrase& p : phrases) {
        const auto& terms = p.terms();
        // unigram: any title containing the term
        for (const Term& t : terms) {
            for (ArticleId id : g.articles_with_term(t)) {
                hits.push_back(concept_of(g, id));
            }
        }
        // bigram: any title containing two consecutive terms of the phrase
        for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
            auto first = g.articles_with_term(terms[i]);
            auto second = g.articles_with_term(terms[i + 1]);
            std::vector<ArticleId> both;
            std::set_intersection(first.begin(), first.end(), second.begin(),
                                  second.end(), std::back_inserter(both));
            for (ArticleId id : both) {
                if (title_has_bigram(g.article(id).title, terms[i], terms[i + 1])) {
                    hits.push_back(concept_of(g, id));
                }
            }
        }
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());

    RelevantSet set;
    set.origin = origin;
    if (hits.size() > cap) {
        hits.resize(cap);
        set.truncated = true;
    }
    set.members = std::move(hits);
    return set;
}

Rational score_path(const KnowledgeGraph& g, const ConceptPath& p,
                    const Phrase& query, const Phrase& context) {
    std::int64_t sum = 0;
    for (ArticleId id : p.articles) {
        const Phrase& title = g.article(id).title;
        sum += std::int64_t(term_overlap(title, query));
        sum += std::int64_t(term_overlap(title, context));
    }
    return Rational::of(sum, std::int64_t(p.articles.size()));
}

std::vector<ConceptPath> compute_paths(const KnowledgeGraph& g, const RelevantSet& rq,
                                       const RelevantSet& rc, int max_hops,
                                       const Phrase& query, const Phrase& context,
                                       Exec exec) {
    const auto& sources = rq.members;
    std::vector<std::vector<ConceptPath>> per_source(sources.size());

    auto search = [&](std::size_t i, PathScratch& scratch) {
        auto paths = g.shortest_paths(sources[i], rc.members, max_hops, &scratch);
        for (ConceptPath& p : paths) p.score = score_path(g, p, query, context);
        per_source[i] = std::move(paths);
    };

    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            PathScratch scratch;
#pragma omp for schedule(dynamic)
            for (std::size_t i = 0; i < sources.size(); ++i) search(i, scratch);
        }
    } else {
        PathScratch scratch;
        for (std::size_t i = 0; i < sources.size(); ++i) search(i, scratch);
    }

    std::vector<ConceptPath> all;
    for (auto& chunk : per_source) {
        for (ConceptPath& p : chunk) all.push_back(std::move(p));
    }
    return all;
}

std::vector<ConceptPath> top_paths(std::vector<ConceptPath> paths) {
    if (paths.empty()) return paths;
    Rational best = paths.front().score;
    for (const ConceptPath& p : paths) {
        if (p.score > best) best = p.score;
    }
    std::vector<ConceptPath> kept;
    for (ConceptPath& p : paths) {
        if (p.score == best) kept.push_back(std::move(p));
    }
    return kept;
}

Community grow_community(const WccEngine& wcc, const ConceptPath& seed,
                         int iteration_cap, Exec exec, GrowthTrace* trace) {
    const KnowledgeGraph& g = wcc.graph();

    std::vector<ArticleId> seed_members(seed.articles.begin(), seed.articles.end());
    std::sort(seed_members.begin(), seed_members.end());
    seed_members.erase(std::unique(seed_members.begin(), seed_members.end()),
                       seed_members.end());

    std::vector<ArticleId> members = seed_members;
    GrowthTrace local;
    GrowthTrace& tr = trace ? *trace : local;

    auto emit = [&](GrowthEvent::Kind kind, ArticleId id, int iter, double wcc_after,
                    double objective_after) {
        tr.events.push_back(GrowthEvent{kind, id, iter, wcc_after, objective_after});
    };

    bool converged = false;
    for (int iter = 0; iter < iteration_cap && !converged; ++iter) {
        const double wcc_at_start = wcc.community(members);

        // growth: accept the best neighbour while the size-weighted score
        // strictly improves
        while (true) {
            const double base = double(members.size()) * wcc.community(members);

            std::vector<ArticleId> candidates;
            {
                std::unordered_set<ArticleId> member_set(members.begin(), members.end());
                for (ArticleId m : members) {
                    for (ArticleId n : g.und_neighbors(m)) {
                        if (!member_set.count(n)) candidates.push_back(n);
                    }
                }
                std::sort(candidates.begin(), candidates.end());
                candidates.erase(std::unique(candidates.begin(), candidates.end()),
                                 candidates.end());
            }
            if (candidates.empty()) break;

            wcc.prime(members);
            wcc.prime(candidates);

            std::vector<double> objective(candidates.size());
            auto evaluate = [&](std::size_t i) {
                auto grown = sorted_insert(members, candidates[i]);
                objective[i] = double(grown.size()) * wcc.community(grown);
            };
            if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
                for (std::size_t i = 0; i < candidates.size(); ++i) evaluate(i);
            } else {
                for (std::size_t i = 0; i < candidates.size(); ++i) evaluate(i);
            }

            std::size_t best = candidates.size();
            double best_objective = base;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (objective[i] > best_objective) { // ties keep the lowest id
                    best_objective = objective[i];
                    best = i;
                }
            }
            if (best == candidates.size()) break;

            members = sorted_insert(members, candidates[best]);
            emit(GrowthEvent::Kind::accepted, candidates[best], iter,
                 best_objective / double(members.size()), best_objective);
        }

        // removal sweeps: batch-evaluate against the sweep-start snapshot
        while (true) {
            const std::vector<ArticleId> snapshot = members;
            const double threshold = wcc.community(snapshot) / 4.0;
            std::vector<ArticleId> keep;
            bool removed_any = false;
            for (ArticleId m : snapshot) {
                const double score = wcc.vertex(m, snapshot);
                if (score < threshold) {
                    removed_any = true;
                    emit(GrowthEvent::Kind::removed, m, iter, score, 0.0);
                } else {
                    keep.push_back(m);
                }
            }
            if (!removed_any) break;
            members = std::move(keep);
            if (members.empty()) {
                tr.fallback_to_seed = true;
                tr.final_wcc = wcc.community(seed_members);
                return Community{seed_members, seed, std::nullopt};
            }
        }

        converged = wcc.community(members) == wcc_at_start;
    }
    if (!converged) tr.iteration_cap_hit = true;
    tr.final_wcc = wcc.community(members);
    return Community{std::move(members), seed, std::nullopt};
}

std::int64_t score_community(const KnowledgeGraph& g, const Community& k,
                             const Phrase& query, const Phrase& context) {
    if (k.members.empty()) throw ContractError("score_community: empty community");
    std::int64_t sum = 0;
    for (ArticleId id : k.members) {
        const Phrase& title = g.article(id).title;
        sum += std::int64_t(term_overlap(title, query));
        sum += std::int64_t(term_overlap(title, context));
    }
    return sum;
}

std::vector<Community> top_communities(std::vector<Community> ks) {
    if (ks.empty()) return ks;
    for (const Community& k : ks) {
        if (!k.score) throw ContractError("top_communities: unscored community");
    }
    std::int64_t best = *ks.front().score;
    for (const Community& k : ks) {
        if (*k.score > best) best = *k.score;
    }
    std::vector<Community> kept;
    for (Community& k : ks) {
        if (*k.score == best) kept.push_back(std::move(k));
    }
    return kept;
}

Hierarchy::Hierarchy(std::vector<Term> root_terms,
                     std::vector<std::vector<ArticleId>> article_levels)
    : root_terms_(std::move(root_terms)), article_levels_(std::move(article_levels)) {}

std::size_t Hierarchy::level_of(ArticleId id) const {
    for (std::size_t i = 0; i < article_levels_.size(); ++i) {
        if (std::binary_search(article_levels_[i].begin(), article_levels_[i].end(), id)) {
            return i + 2;
        }
    }
    return 0;
}

Hierarchy build_hierarchy(const KnowledgeGraph& g, const Community& k, const Phrase& query,
                          ContainmentRule rule) {
    std::vector<Term> roots;
    for (const Term& t : query.terms()) {
        if (std::find(roots.begin(), roots.end(), t) == roots.end()) roots.push_back(t);
    }
    std::unordered_set<Term> root_set(roots.begin(), roots.end());

    auto passes = [&](const Phrase& title) {
        if (rule == ContainmentRule::title_within_query) {
            for (const Term& t : title.terms()) {
                if (!root_set.count(t)) return false;
            }
            return true;
        }
        std::unordered_set<Term> title_set(title.terms().begin(), title.terms().end());
        for (const Term& t : roots) {
            if (!title_set.count(t)) return false;
        }
        return true;
    };

    std::vector<std::vector<ArticleId>> levels;
    std::unordered_set<ArticleId> placed;

    std::vector<ArticleId> level2;
    for (ArticleId id : k.members) {
        if (passes(g.article(id).title)) level2.push_back(id);
    }
    if (!level2.empty()) {
        placed.insert(level2.begin(), level2.end());
        levels.push_back(std::move(level2));
        while (true) {
            const std::vector<ArticleId>& prev = levels.back();
            std::unordered_set<ArticleId> prev_set(prev.begin(), prev.end());
            std::vector<ArticleId> next;
            for (ArticleId id : k.members) {
                if (placed.count(id)) continue;
                for (ArticleId u : g.in_neighbors(id)) {
                    if (prev_set.count(u)) {
                        next.push_back(id);
                        break;
                    }
                }
            }
            if (next.empty()) break;
            placed.insert(next.begin(), next.end());
            levels.push_back(std::move(next));
        }
    }
    return Hierarchy(std::move(roots), std::move(levels));
}

double article_weight(const KnowledgeGraph& g, ArticleId id, const Hierarchy& h) {
    const std::size_t level = h.level_of(id);
    if (level == 0) throw ContractError("article_weight: article is not in the hierarchy");
    const std::size_t depth = h.depth();
    const double level2_weight =
        depth == 2 ? 1.0 : double(depth - 2) / double(depth - 1);

    const Phrase& title = g.article(id).title;
    const auto& roots = h.root_terms();
    if (title.size() == 1 &&
        std::find(roots.begin(), roots.end(), title.terms()[0]) != roots.end()) {
        return std::min(1.0, 1.0 + level2_weight);
    }
    if (depth == 2) return 1.0;
    return double(depth - level) / double(depth - 1);
}

WeightedQuery build_topological_query(const KnowledgeGraph& g,
                                      std::span<const Hierarchy> hierarchies) {
    if (hierarchies.empty()) {
        throw ContractError("build_topological_query: at least one hierarchy required");
    }
    std::map<ArticleId, double> weight_sum;
    for (const Hierarchy& h : hierarchies) {
        for (const auto& level : h.article_levels()) {
            for (ArticleId id : level) weight_sum[id] += article_weight(g, id, h);
        }
    }
    WeightedQuery q;
    const double denom = double(hierarchies.size());
    for (const auto& [id, sum] : weight_sum) {
        if (sum <= 0.0) continue;
        const double w = sum / denom;
        q.add(w, g.article(id).title);
        for (Phrase& r : g.redirects_of(id)) q.add(w, std::move(r));
    }
    return q;
}

} // namespace kgx
