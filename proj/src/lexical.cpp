#include "kgx/lexical.hpp"

#include <algorithm>

#include "kgx/errors.hpp"

namespace kgx {

void WeightedQuery::resort() {
    std::sort(entries_.begin(), entries_.end(),
              [](const WeightedEntry& a, const WeightedEntry& b) {
                  if (a.weight != b.weight) return a.weight > b.weight;
                  return a.phrase < b.phrase;
              });
}

WeightedQuery WeightedQuery::uniform(std::vector<Phrase> phrases) {
    WeightedQuery q;
    if (phrases.empty()) return q;
    const double w = 1.0 / double(phrases.size());
    for (Phrase& p : phrases) q.add(w, std::move(p));
    return q;
}

void WeightedQuery::add(double weight, Phrase phrase) {
    if (find(phrase) != nullptr) {
        throw ContractError("duplicate phrase in weighted query: '" + phrase.text() + "'");
    }
    entries_.push_back(WeightedEntry{weight, std::move(phrase)});
    resort();
}

const WeightedEntry* WeightedQuery::find(const Phrase& p) const {
    for (const WeightedEntry& e : entries_) {
        if (e.phrase == p) return &e;
    }
    return nullptr;
}

double WeightedQuery::total_weight() const {
    double sum = 0.0;
    for (const WeightedEntry& e : entries_) sum += e.weight;
    return sum;
}

std::vector<Term> term_synonyms(const KnowledgeGraph& g, const Term& t) {
    auto id = g.resolve_title(Phrase({t}));
    if (!id) return {};
    std::vector<Term> out;
    const Phrase& own = g.article(*id).title;
    if (own.size() == 1 && own.terms()[0] != t) out.push_back(own.terms()[0]);
    for (ArticleId r : g.redirect_ids(*id)) {
        const Phrase& title = g.article(r).title;
        if (title.size() == 1 && title.terms()[0] != t) out.push_back(title.terms()[0]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Phrase> phrase_synonyms(const KnowledgeGraph& g, const Phrase& q,
                                    std::size_t cap) {
    std::vector<std::vector<Term>> options;
    options.reserve(q.size());
    std::size_t combinations = 1;
    for (const Term& t : q.terms()) {
        std::vector<Term> opts{t};
        for (Term& s : term_synonyms(g, t)) opts.push_back(std::move(s));
        if (combinations <= cap) {
            // saturating multiply: a * c > cap iff a > cap / c in integers
            combinations = combinations > cap / opts.size() ? cap + 1
                                                            : combinations * opts.size();
        }
        options.push_back(std::move(opts));
    }
    if (combinations > cap) {
        throw CapacityError("synonym combinations for '" + q.text() +
                            "' exceed the cap of " + std::to_string(cap));
    }

    std::vector<Phrase> result;
    result.reserve(combinations);
    std::vector<std::size_t> odometer(q.size(), 0);
    while (true) {
        std::vector<Term> terms;
        terms.reserve(q.size());
        for (std::size_t i = 0; i < options.size(); ++i) {
            terms.push_back(options[i][odometer[i]]);
        }
        result.push_back(Phrase(std::move(terms)));
        std::size_t pos = options.size();
        while (pos > 0) {
            --pos;
            if (++odometer[pos] < options[pos].size()) break;
            odometer[pos] = 0;
            if (pos == 0) return result;
        }
    }
}

WeightedQuery build_lexical_query(const std::vector<Phrase>& synonyms,
                                  const CorpusIndex& idx, const Phrase& original) {
    std::vector<Phrase> kept;
    for (const Phrase& p : synonyms) {
        if (p == original) continue;
        if (idx.phrase_exists(p)) kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    return WeightedQuery::uniform(std::move(kept));
}

} // namespace kgx
