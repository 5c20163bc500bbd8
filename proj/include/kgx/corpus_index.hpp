#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgx/text.hpp"

namespace kgx {

struct Document {
    std::string doc_id;
    std::vector<Term> tokens;
};

// N-gram presence index over the target document collection. Answers whether
// a candidate phrase occurs verbatim (as a contiguous token run) in at least
// one document. Immutable after build.
class CorpusIndex {
public:
    // Reads JSON-lines records {"doc_id": ..., "text": ...}.
    static CorpusIndex build(std::istream& docs, int max_ngram,
                             std::string_view source_name = "corpus");

    static CorpusIndex from_documents(std::vector<Document> docs, int max_ngram);

    // True iff the phrase occurs in >= 1 document. Throws CapacityError when
    // the phrase is longer than the indexed n-gram size.
    bool phrase_exists(const Phrase& p) const;

    // Number of documents containing the phrase (0 when absent).
    std::uint32_t phrase_frequency(const Phrase& p) const;

    int max_ngram() const { return max_ngram_; }
    std::size_t document_count() const { return documents_.size(); }
    std::size_t distinct_ngram_count() const { return ngram_df_.size(); }
    const std::vector<Document>& documents() const { return documents_; }

private:
    CorpusIndex() = default;

    std::vector<Document> documents_;
    std::unordered_map<std::string, std::uint32_t> ngram_df_;
    int max_ngram_ = 0;
};

} // namespace kgx
