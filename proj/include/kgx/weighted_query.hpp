#pragma once

#include <cstddef>
#include <vector>

#include "kgx/text.hpp"

namespace kgx {

struct WeightedEntry {
    double weight = 0.0;
    Phrase phrase;

    bool operator==(const WeightedEntry& other) const {
        return weight == other.weight && phrase == other.phrase;
    }
};

// Set of <weight, phrase> pairs with unique phrases, kept in canonical order
// (descending weight, then ascending phrase text).
class WeightedQuery {
public:
    WeightedQuery() = default;

    // All phrases at weight 1/n.
    static WeightedQuery uniform(std::vector<Phrase> phrases);

    void add(double weight, Phrase phrase);

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<WeightedEntry>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    const WeightedEntry* find(const Phrase& p) const;
    double total_weight() const;

    bool operator==(const WeightedQuery& other) const {
        return entries_ == other.entries_;
    }

private:
    void resort();
    std::vector<WeightedEntry> entries_;
};

} // namespace kgx
