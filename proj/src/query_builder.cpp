#include "kgx/query_builder.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include <json.hpp>

#include "kgx/errors.hpp"

namespace kgx {

namespace {

std::string fmt_weight(double w) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", w);
    return buf;
}

void check_weights(const WeightVector& w) {
    if (w.alpha < 0 || w.beta < 0 || w.gamma < 0) {
        throw ContractError("branch weights must be non-negative");
    }
    if (w.alpha + w.beta + w.gamma <= 0) {
        throw ContractError("branch weights must not all be zero");
    }
}

nlohmann::json entries_json(const WeightedQuery& q) {
    nlohmann::json arr = nlohmann::json::array();
    for (const WeightedEntry& e : q) {
        arr.push_back({{"phrase", e.phrase.text()}, {"weight", e.weight}});
    }
    return arr;
}

WeightedQuery entries_from_json(const nlohmann::json& arr) {
    WeightedQuery q;
    for (const auto& e : arr) {
        auto phrase = Phrase::parse(e.at("phrase").get<std::string>());
        if (!phrase) throw ParseError("structured query entry with empty phrase");
        q.add(e.at("weight").get<double>(), std::move(*phrase));
    }
    return q;
}

} // namespace

WeightedQuery build_original_query(const Phrase& q) {
    WeightedQuery out;
    out.add(1.0, q);
    return out;
}

WeightedQuery build_context_query(const Phrase& c) {
    std::vector<Term> distinct;
    for (const Term& t : c.terms()) {
        if (std::find(distinct.begin(), distinct.end(), t) == distinct.end()) {
            distinct.push_back(t);
        }
    }
    std::vector<Phrase> phrases;
    phrases.reserve(distinct.size());
    for (Term& t : distinct) phrases.push_back(Phrase({std::move(t)}));
    return WeightedQuery::uniform(std::move(phrases));
}

StructuredQuery combine(WeightedQuery original, WeightedQuery lexical,
                        WeightedQuery topological, WeightVector weights) {
    check_weights(weights);
    if (original.empty()) throw PipelineError("empty query");
    const bool any_branch = weights.alpha > 0 ||
                            (weights.beta > 0 && !lexical.empty()) ||
                            (weights.gamma > 0 && !topological.empty());
    if (!any_branch) throw PipelineError("degenerate query: no branch to render");
    return StructuredQuery{weights, std::move(original), std::move(lexical),
                           std::move(topological), std::nullopt};
}

std::string render_text(const StructuredQuery& sq) {
    struct Branch {
        double weight;
        std::string body;
    };
    std::vector<Branch> branches;

    if (sq.weights.alpha > 0 && !sq.original.empty()) {
        std::string body = "#combine(";
        bool first = true;
        for (const WeightedEntry& e : sq.original) {
            for (const Term& t : e.phrase.terms()) {
                if (!first) body.push_back(' ');
                body += t;
                first = false;
            }
        }
        body.push_back(')');
        branches.push_back({sq.weights.alpha, std::move(body)});
    }
    if (sq.weights.beta > 0 && !sq.lexical.empty()) {
        std::string body = "#weight(";
        bool first = true;
        for (const WeightedEntry& e : sq.lexical) {
            if (!first) body.push_back(' ');
            first = false;
            body += fmt_weight(e.weight);
            body += " #od1(";
            body += e.phrase.text();
            body.push_back(')');
        }
        body.push_back(')');
        branches.push_back({sq.weights.beta, std::move(body)});
    }
    if (sq.weights.gamma > 0 && !sq.topological.empty()) {
        std::string body = "#weight(";
        bool first = true;
        for (const WeightedEntry& e : sq.topological) {
            if (!first) body.push_back(' ');
            first = false;
            body += fmt_weight(e.weight);
            body += " #uw";
            body += std::to_string(4 * e.phrase.size());
            body.push_back('(');
            body += e.phrase.text();
            body.push_back(')');
        }
        body.push_back(')');
        branches.push_back({sq.weights.gamma, std::move(body)});
    }
    if (branches.empty()) throw PipelineError("degenerate query: no branch to render");

    double total = 0.0;
    for (const Branch& b : branches) total += b.weight;

    std::string out = "#weight(";
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += fmt_weight(branches[i].weight / total);
        out.push_back(' ');
        out += branches[i].body;
    }
    out.push_back(')');
    return out;
}

std::string render_json(const StructuredQuery& sq) {
    nlohmann::json j;
    j["weights"] = {{"alpha", sq.weights.alpha},
                    {"beta", sq.weights.beta},
                    {"gamma", sq.weights.gamma}};
    j["original"] = entries_json(sq.original);
    j["lexical"] = entries_json(sq.lexical);
    j["topological"] = entries_json(sq.topological);
    j["context"] = sq.context ? entries_json(*sq.context) : nlohmann::json(nullptr);
    return j.dump();
}

StructuredQuery parse_json(std::string_view json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ParseError("structured query: invalid JSON");
    }
    StructuredQuery sq;
    const auto& w = j.at("weights");
    sq.weights = WeightVector{w.at("alpha").get<double>(), w.at("beta").get<double>(),
                              w.at("gamma").get<double>()};
    sq.original = entries_from_json(j.at("original"));
    sq.lexical = entries_from_json(j.at("lexical"));
    sq.topological = entries_from_json(j.at("topological"));
    if (!j.at("context").is_null()) sq.context = entries_from_json(j.at("context"));
    return sq;
}

} // namespace kgx
