#include "kgx/pipeline.hpp"

#include <algorithm>
#include <set>

#include "kgx/errors.hpp"

namespace kgx {

ExpansionResult expand_query(const KnowledgeGraph& g, const CorpusIndex& idx,
                             const PipelineConfig& cfg, std::string_view query_text,
                             std::optional<std::string_view> context_text) {
    if (cfg.max_hops < 1 || cfg.synonym_cap < 1 || cfg.wcc_iteration_cap < 1 ||
        cfg.relevant_cap < 1) {
        throw ContractError("pipeline caps must be at least 1");
    }

    ExpansionResult result;
    Diagnostics& diag = result.diagnostics;
    diag.raw_query = std::string(query_text);

    const std::vector<Term> q_terms = cfg.stopwords.filter(tokenize(query_text));
    if (q_terms.empty()) throw PipelineError("empty query");
    const Phrase query(q_terms);
    diag.query_terms = q_terms;

    diag.context_defaulted = !context_text.has_value();
    const std::string context_raw =
        context_text ? std::string(*context_text) : std::string(query_text);
    diag.raw_context = context_raw;
    std::vector<Term> c_terms = cfg.stopwords.filter(tokenize(context_raw));
    if (c_terms.empty()) {
        c_terms = q_terms;
        diag.context_filtered_empty = true;
    }
    const Phrase context(c_terms);
    diag.context_terms = c_terms;

    // Lexical stage: synonym combinations gated by corpus presence. A query
    // longer than the indexed n-gram size cannot be verified against the
    // corpus, so its lexical component stays empty.
    const std::vector<Phrase> query_synonyms = phrase_synonyms(g, query, cfg.synonym_cap);
    diag.lexical.synonyms = query_synonyms;
    WeightedQuery lexical;
    if (query.size() <= std::size_t(idx.max_ngram())) {
        for (const Phrase& p : query_synonyms) {
            const bool in_corpus = idx.phrase_exists(p);
            diag.lexical.candidates.push_back(
                LexicalDiag::Candidate{p, in_corpus, in_corpus && !(p == query)});
        }
        lexical = build_lexical_query(query_synonyms, idx, query);
    } else {
        diag.lexical.phrase_too_long = true;
    }

    // Context synonyms use the same machinery; an oversized combination set
    // degrades to the bare context phrase instead of failing the query.
    std::vector<Phrase> context_synonyms;
    try {
        context_synonyms = phrase_synonyms(g, context, cfg.synonym_cap);
    } catch (const CapacityError&) {
        context_synonyms = {context};
        diag.context_synonym_overflow = true;
    }
    diag.context_synonym_count = context_synonyms.size();

    diag.relevant_query =
        select_relevant(g, query_synonyms, SetOrigin::query, cfg.relevant_cap);
    diag.relevant_context =
        select_relevant(g, context_synonyms, SetOrigin::context, cfg.relevant_cap);

    diag.scored_paths = compute_paths(g, diag.relevant_query, diag.relevant_context,
                                      cfg.max_hops, query, context, cfg.exec);
    diag.kept_paths = top_paths(diag.scored_paths);

    // Grow one community per kept path, drop exact duplicates, keep the
    // top-scoring ones.
    WccEngine wcc(g);
    std::set<std::vector<ArticleId>> seen;
    std::vector<std::size_t> alive; // indices into diag.communities
    for (const ConceptPath& path : diag.kept_paths) {
        CommunityDiag cd;
        cd.seed = path;
        Community k = grow_community(wcc, path, cfg.wcc_iteration_cap, cfg.exec, &cd.trace);
        cd.members = k.members;
        cd.wcc = cd.trace.final_wcc;
        cd.duplicate_dropped = !seen.insert(k.members).second;
        if (!cd.duplicate_dropped) {
            cd.score = score_community(g, k, query, context);
            alive.push_back(diag.communities.size());
        }
        diag.communities.push_back(std::move(cd));
    }

    std::vector<Community> unique;
    for (std::size_t i : alive) {
        unique.push_back(Community{diag.communities[i].members,
                                   diag.communities[i].seed,
                                   diag.communities[i].score});
    }
    std::vector<Community> selected = top_communities(std::move(unique));
    for (const Community& k : selected) {
        for (std::size_t i : alive) {
            if (diag.communities[i].members == k.members) {
                diag.communities[i].selected = true;
                break;
            }
        }
        diag.hierarchies.push_back(build_hierarchy(g, k, query, cfg.containment));
    }

    WeightedQuery topological;
    if (!diag.hierarchies.empty()) {
        topological = build_topological_query(g, diag.hierarchies);
    }
    diag.topological = topological;

    result.query =
        combine(build_original_query(query), std::move(lexical), std::move(topological),
                cfg.weights);
    return result;
}

namespace {

nlohmann::json titles_json(const KnowledgeGraph& g, const std::vector<ArticleId>& ids) {
    nlohmann::json arr = nlohmann::json::array();
    for (ArticleId id : ids) arr.push_back(g.article(id).title.text());
    return arr;
}

nlohmann::json path_json(const KnowledgeGraph& g, const ConceptPath& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (ArticleId id : p.articles) arr.push_back(g.article(id).title.text());
    return {{"articles", arr}, {"score", p.score.str()}};
}

nlohmann::json entries_json(const WeightedQuery& q) {
    nlohmann::json arr = nlohmann::json::array();
    for (const WeightedEntry& e : q) {
        arr.push_back({{"phrase", e.phrase.text()}, {"weight", e.weight}});
    }
    return arr;
}

} // namespace

nlohmann::json diagnostics_json(const Diagnostics& d, const KnowledgeGraph& g) {
    nlohmann::json j;
    j["query"] = {{"raw", d.raw_query}, {"terms", d.query_terms}};
    j["context"] = {{"raw", d.raw_context},
                    {"terms", d.context_terms},
                    {"defaulted_from_query", d.context_defaulted},
                    {"stopword_filtered_to_query", d.context_filtered_empty}};

    nlohmann::json synonyms = nlohmann::json::array();
    for (const Phrase& p : d.lexical.synonyms) synonyms.push_back(p.text());
    nlohmann::json candidates = nlohmann::json::array();
    for (const auto& c : d.lexical.candidates) {
        candidates.push_back({{"phrase", c.phrase.text()},
                              {"in_corpus", c.in_corpus},
                              {"kept", c.kept}});
    }
    j["lexical"] = {{"synonyms", synonyms},
                    {"candidates", candidates},
                    {"phrase_too_long", d.lexical.phrase_too_long}};

    j["context_synonyms"] = {{"count", d.context_synonym_count},
                             {"overflowed_to_context_phrase", d.context_synonym_overflow}};

    j["relevant"] = {{"query_size", d.relevant_query.members.size()},
                     {"context_size", d.relevant_context.members.size()},
                     {"query_truncated", d.relevant_query.truncated},
                     {"context_truncated", d.relevant_context.truncated},
                     {"query_members", titles_json(g, d.relevant_query.members)},
                     {"context_members", titles_json(g, d.relevant_context.members)}};

    nlohmann::json scored = nlohmann::json::array();
    for (const ConceptPath& p : d.scored_paths) scored.push_back(path_json(g, p));
    nlohmann::json kept = nlohmann::json::array();
    for (const ConceptPath& p : d.kept_paths) kept.push_back(path_json(g, p));
    j["paths"] = {{"scored", scored}, {"kept", kept}};

    nlohmann::json communities = nlohmann::json::array();
    for (const CommunityDiag& c : d.communities) {
        nlohmann::json events = nlohmann::json::array();
        for (const GrowthEvent& e : c.trace.events) {
            events.push_back(
                {{"action", e.kind == GrowthEvent::Kind::accepted ? "accepted" : "removed"},
                 {"article", g.article(e.article).title.text()},
                 {"outer_iteration", e.outer_iteration},
                 {"wcc_after", e.wcc_after},
                 {"objective_after", e.objective_after}});
        }
        communities.push_back({{"seed", path_json(g, c.seed)},
                               {"members", titles_json(g, c.members)},
                               {"score", c.score},
                               {"wcc", c.wcc},
                               {"growth", events},
                               {"iteration_cap_hit", c.trace.iteration_cap_hit},
                               {"fallback_to_seed", c.trace.fallback_to_seed},
                               {"duplicate_dropped", c.duplicate_dropped},
                               {"selected", c.selected}});
    }
    j["communities"] = communities;

    nlohmann::json hierarchies = nlohmann::json::array();
    for (const Hierarchy& h : d.hierarchies) {
        nlohmann::json levels = nlohmann::json::array();
        levels.push_back(h.root_terms());
        for (const auto& level : h.article_levels()) {
            nlohmann::json lvl = nlohmann::json::array();
            for (ArticleId id : level) lvl.push_back(g.article(id).title.text());
            levels.push_back(lvl);
        }
        hierarchies.push_back({{"levels", levels}, {"depth", h.depth()}});
    }
    j["hierarchies"] = hierarchies;

    j["topological"] = entries_json(d.topological);
    return j;
}

} // namespace kgx
