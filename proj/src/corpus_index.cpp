#include "kgx/corpus_index.hpp"

#include <istream>
#include <unordered_set>

#include <json.hpp>

#include "kgx/errors.hpp"

namespace kgx {

CorpusIndex CorpusIndex::build(std::istream& docs, int max_ngram,
                               std::string_view source_name) {
    if (max_ngram < 2) throw ContractError("build_index: max_ngram must be >= 2");
    std::vector<Document> parsed;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(docs, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object() || !rec.contains("doc_id") ||
            !rec.contains("text") || !rec["doc_id"].is_string() ||
            !rec["text"].is_string()) {
            throw ParseError(std::string(source_name) + ":" + std::to_string(line_no) +
                             ": expected JSON object with string fields "
                             "'doc_id' and 'text'");
        }
        parsed.push_back(Document{rec["doc_id"].get<std::string>(),
                                  tokenize(rec["text"].get<std::string>())});
    }
    return from_documents(std::move(parsed), max_ngram);
}

CorpusIndex CorpusIndex::from_documents(std::vector<Document> docs, int max_ngram) {
    if (max_ngram < 2) throw ContractError("build_index: max_ngram must be >= 2");
    CorpusIndex idx;
    idx.max_ngram_ = max_ngram;
    idx.documents_ = std::move(docs);

    std::unordered_set<std::string> ids;
    std::unordered_set<std::string> seen; // per-document n-grams
    for (const Document& doc : idx.documents_) {
        if (!ids.insert(doc.doc_id).second) {
            throw IntegrityError("duplicate doc_id '" + doc.doc_id + "'");
        }
        seen.clear();
        const auto& toks = doc.tokens;
        for (std::size_t start = 0; start < toks.size(); ++start) {
            std::string key;
            for (std::size_t n = 1; n <= std::size_t(max_ngram) && start + n <= toks.size(); ++n) {
                if (n > 1) key.push_back(' ');
                key += toks[start + n - 1];
                if (seen.insert(key).second) ++idx.ngram_df_[key];
            }
        }
    }
    return idx;
}

bool CorpusIndex::phrase_exists(const Phrase& p) const {
    return phrase_frequency(p) > 0;
}

std::uint32_t CorpusIndex::phrase_frequency(const Phrase& p) const {
    if (p.size() > std::size_t(max_ngram_)) {
        throw CapacityError("phrase of " + std::to_string(p.size()) +
                            " terms exceeds indexed n-gram size " +
                            std::to_string(max_ngram_));
    }
    auto it = ngram_df_.find(p.text());
    return it == ngram_df_.end() ? 0 : it->second;
}

} // namespace kgx
