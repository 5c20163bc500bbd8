#include "kgx/text.hpp"

#include <algorithm>
#include <cctype>

#include "kgx/errors.hpp"

namespace kgx {

std::vector<Term> tokenize(std::string_view text) {
    std::vector<Term> out;
    Term current;
    for (unsigned char ch : text) {
        if (ch >= 0x80 || std::isalnum(ch)) {
            current.push_back(ch >= 0x80 ? char(ch)
                                         : char(std::tolower(ch)));
        } else if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

Phrase::Phrase(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw ContractError("phrase must contain at least one term");
    std::size_t total = terms_.size() - 1;
    for (const Term& t : terms_) total += t.size();
    text_.reserve(total);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0) text_.push_back(' ');
        text_ += terms_[i];
    }
}

std::optional<Phrase> Phrase::parse(std::string_view text) {
    auto terms = tokenize(text);
    if (terms.empty()) return std::nullopt;
    return Phrase(std::move(terms));
}

std::size_t term_overlap(const Phrase& a, const Phrase& b) {
    std::vector<Term> left = a.terms();
    std::vector<Term> right = b.terms();
    std::sort(left.begin(), left.end());
    left.erase(std::unique(left.begin(), left.end()), left.end());
    std::sort(right.begin(), right.end());
    right.erase(std::unique(right.begin(), right.end()), right.end());
    std::size_t count = 0;
    auto it = right.begin();
    for (const Term& t : left) {
        it = std::lower_bound(it, right.end(), t);
        if (it == right.end()) break;
        if (*it == t) ++count;
    }
    return count;
}

} // namespace kgx
