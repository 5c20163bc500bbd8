#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgx {

// Normalized token: lowercase, no whitespace, never empty.
using Term = std::string;

// Splits raw text into normalized terms. A term is a maximal run of
// alphanumeric characters; ASCII letters are lowercased. Bytes >= 0x80 are
// kept verbatim so multi-byte UTF-8 characters stay inside a single term.
// Input is expected to be composition-normalized already.
std::vector<Term> tokenize(std::string_view text);

// Ordered, non-empty list of terms. Titles, queries and corpus phrases all
// share this identity: two texts are equal when their token sequences are.
class Phrase {
public:
    explicit Phrase(std::vector<Term> terms);

    // Tokenizes `text`; empty token stream yields nullopt.
    static std::optional<Phrase> parse(std::string_view text);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    // Terms joined by single spaces; the canonical key for title lookups.
    const std::string& text() const { return text_; }

    bool operator==(const Phrase& other) const { return text_ == other.text_; }
    std::strong_ordering operator<=>(const Phrase& other) const {
        return text_ <=> other.text_;
    }

private:
    std::vector<Term> terms_;
    std::string text_;
};

// Number of distinct terms shared by the two phrases.
std::size_t term_overlap(const Phrase& a, const Phrase& b);

} // namespace kgx
