#include "kgx/stopwords.hpp"

#include <fstream>

#include "kgx/errors.hpp"

namespace kgx {

namespace {

constexpr const char* kGeneral[] = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am",
    "an", "and", "any", "are", "as", "at", "be", "because", "been", "before",
    "being", "below", "between", "both", "but", "by", "can", "cannot",
    "could", "did", "do", "does", "doing", "during", "each", "example",
    "few", "for", "from", "further", "had", "has", "have", "having", "he",
    "her", "here", "hers", "herself", "him", "himself", "his", "how", "i",
    "if", "in", "into", "is", "it", "its", "itself", "just", "like", "me",
    "more", "most", "my", "myself", "no", "nor", "not", "now", "of", "off",
    "on", "once", "only", "or", "other", "our", "ours", "ourselves", "out",
    "over", "own", "same", "she", "should", "so", "some", "such", "than",
    "that", "the", "their", "theirs", "them", "themselves", "then", "there",
    "these", "they", "this", "those", "through", "to", "too", "under",
    "until", "very", "was", "we", "were", "what", "when", "where", "which",
    "while", "who", "whom", "why", "will", "with", "would", "you", "your",
    "yours", "yourself", "yourselves",
};

constexpr const char* kVisual[] = {
    // colors
    "color", "colors", "colour", "colours", "colored", "coloured", "red",
    "blue", "green", "yellow", "orange", "purple", "violet", "pink", "brown",
    "black", "white", "gray", "grey", "golden", "silver", "dark", "light",
    "bright", "pale",
    // positions
    "left", "right", "top", "bottom", "front", "back", "behind", "side",
    "sides", "up", "down", "upper", "lower", "near", "close", "far",
    "middle", "center", "centre", "background", "foreground", "horizontal",
    "vertical",
    // shapes and extents
    "shape", "shapes", "shaped", "round", "circular", "circle", "square",
    "rectangular", "rectangle", "triangular", "oval", "curved", "straight",
    "big", "small", "large", "tiny", "huge", "wide", "narrow", "tall",
    "short", "long",
};

} // namespace

StopwordSets StopwordSets::defaults() {
    StopwordSets sets;
    for (const char* w : kGeneral) sets.general.insert(w);
    for (const char* w : kVisual) sets.visual.insert(w);
    return sets;
}

std::unordered_set<Term> StopwordSets::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read stopword file: " + path.string());
    std::unordered_set<Term> set;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        for (Term& t : tokenize(line)) set.insert(std::move(t));
    }
    return set;
}

std::vector<Term> StopwordSets::filter(const std::vector<Term>& terms) const {
    std::vector<Term> kept;
    kept.reserve(terms.size());
    for (const Term& t : terms) {
        if (!general.count(t) && !visual.count(t)) kept.push_back(t);
    }
    return kept;
}

} // namespace kgx
