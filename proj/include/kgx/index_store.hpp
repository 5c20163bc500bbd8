#pragma once

#include <cstdint>
#include <filesystem>

#include "kgx/corpus_index.hpp"
#include "kgx/knowledge_graph.hpp"

namespace kgx {

inline constexpr int kIndexFormatVersion = 1;

struct IndexManifest {
    int format_version = kIndexFormatVersion;
    std::uint64_t articles = 0;
    std::uint64_t redirects = 0;
    std::uint64_t edges = 0;
    std::uint64_t documents = 0;
    int max_ngram = 0;
};

struct LoadedIndex {
    KnowledgeGraph graph;
    CorpusIndex corpus;
    IndexManifest manifest;
};

// Writes graph.bin, corpus.bin and manifest.json into `dir` (created if
// missing). The binaries are internal versioned formats; compatibility is
// checked through the manifest and per-file headers, never guessed.
void write_index(const std::filesystem::path& dir, const KnowledgeGraph& g,
                 const CorpusIndex& idx);

LoadedIndex open_index(const std::filesystem::path& dir);

} // namespace kgx
