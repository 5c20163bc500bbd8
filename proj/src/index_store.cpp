#include "kgx/index_store.hpp"

#include <fstream>

#include <json.hpp>

#include "kgx/errors.hpp"

namespace kgx {

namespace {

constexpr std::uint32_t kGraphMagic = 0x4B475847;  // "KGXG"
constexpr std::uint32_t kCorpusMagic = 0x4B475843; // "KGXC"

template <typename T>
void write_pod(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(value));
}

template <typename T>
T read_pod(std::istream& in, const char* what) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(value));
    if (!in) throw IntegrityError(std::string("index file truncated reading ") + what);
    return value;
}

void write_string(std::ostream& out, const std::string& s) {
    write_pod<std::uint32_t>(out, std::uint32_t(s.size()));
    out.write(s.data(), std::streamsize(s.size()));
}

std::string read_string(std::istream& in, const char* what) {
    auto len = read_pod<std::uint32_t>(in, what);
    std::string s(len, '\0');
    in.read(s.data(), std::streamsize(len));
    if (!in) throw IntegrityError(std::string("index file truncated reading ") + what);
    return s;
}

void check_header(std::istream& in, std::uint32_t magic, const char* what) {
    if (read_pod<std::uint32_t>(in, what) != magic) {
        throw IntegrityError(std::string(what) + ": bad magic");
    }
    auto version = read_pod<std::uint32_t>(in, what);
    if (version != std::uint32_t(kIndexFormatVersion)) {
        throw IntegrityError(std::string(what) + ": unsupported format version " +
                             std::to_string(version));
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    return in;
}

} // namespace

void write_index(const std::filesystem::path& dir, const KnowledgeGraph& g,
                 const CorpusIndex& idx) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create index directory " + dir.string());

    {
        auto out = open_out(dir / "graph.bin");
        write_pod(out, kGraphMagic);
        write_pod(out, std::uint32_t(kIndexFormatVersion));
        write_pod(out, std::uint64_t(g.article_count()));
        for (ArticleId id = 0; id < g.article_count(); ++id) {
            const Article& a = g.article(id);
            write_pod(out, std::int64_t(a.external_id));
            write_string(out, a.title.text());
            write_pod(out, std::uint8_t(a.is_redirect));
            write_pod(out, std::int64_t(a.is_redirect
                                            ? g.article(a.redirect_target).external_id
                                            : 0));
        }
        auto edges = g.edge_list();
        write_pod(out, std::uint64_t(edges.size()));
        for (const auto& [src, dst] : edges) {
            write_pod(out, std::int64_t(src));
            write_pod(out, std::int64_t(dst));
        }
        if (!out) throw IoError("failed writing graph.bin");
    }

    {
        auto out = open_out(dir / "corpus.bin");
        write_pod(out, kCorpusMagic);
        write_pod(out, std::uint32_t(kIndexFormatVersion));
        write_pod(out, std::int32_t(idx.max_ngram()));
        write_pod(out, std::uint64_t(idx.document_count()));
        for (const Document& doc : idx.documents()) {
            write_string(out, doc.doc_id);
            write_pod(out, std::uint64_t(doc.tokens.size()));
            for (const Term& t : doc.tokens) write_string(out, t);
        }
        if (!out) throw IoError("failed writing corpus.bin");
    }

    {
        nlohmann::json manifest;
        manifest["format_version"] = kIndexFormatVersion;
        manifest["graph"] = {{"articles", g.article_count()},
                             {"concepts", g.concept_count()},
                             {"redirects", g.redirect_count()},
                             {"edges", g.edge_count()}};
        manifest["corpus"] = {{"documents", idx.document_count()},
                              {"max_ngram", idx.max_ngram()},
                              {"distinct_ngrams", idx.distinct_ngram_count()}};
        auto out = open_out(dir / "manifest.json");
        out << manifest.dump(2) << "\n";
        if (!out) throw IoError("failed writing manifest.json");
    }
}

LoadedIndex open_index(const std::filesystem::path& dir) {
    const auto manifest_path = dir / "manifest.json";
    auto manifest_in = open_in(manifest_path);
    nlohmann::json manifest = nlohmann::json::parse(manifest_in, nullptr, false);
    if (manifest.is_discarded() || !manifest.is_object()) {
        throw IntegrityError("manifest.json is not valid JSON");
    }
    IndexManifest m;
    m.format_version = manifest.value("format_version", -1);
    if (m.format_version != kIndexFormatVersion) {
        throw IntegrityError("index format version " +
                             std::to_string(m.format_version) +
                             " is not supported (expected " +
                             std::to_string(kIndexFormatVersion) + ")");
    }

    auto gin = open_in(dir / "graph.bin");
    check_header(gin, kGraphMagic, "graph.bin");
    auto article_count = read_pod<std::uint64_t>(gin, "article count");
    std::vector<KnowledgeGraph::NodeRecord> nodes;
    nodes.reserve(article_count);
    for (std::uint64_t i = 0; i < article_count; ++i) {
        KnowledgeGraph::NodeRecord rec;
        rec.external_id = read_pod<std::int64_t>(gin, "article id");
        rec.title = read_string(gin, "article title");
        auto is_redirect = read_pod<std::uint8_t>(gin, "redirect flag");
        auto target = read_pod<std::int64_t>(gin, "redirect target");
        if (is_redirect) rec.redirect_target = target;
        nodes.push_back(std::move(rec));
    }
    auto edge_count = read_pod<std::uint64_t>(gin, "edge count");
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    edges.reserve(edge_count);
    for (std::uint64_t i = 0; i < edge_count; ++i) {
        auto src = read_pod<std::int64_t>(gin, "edge source");
        auto dst = read_pod<std::int64_t>(gin, "edge target");
        edges.emplace_back(src, dst);
    }

    auto cin = open_in(dir / "corpus.bin");
    check_header(cin, kCorpusMagic, "corpus.bin");
    auto max_ngram = read_pod<std::int32_t>(cin, "max ngram");
    auto doc_count = read_pod<std::uint64_t>(cin, "document count");
    std::vector<Document> docs;
    docs.reserve(doc_count);
    for (std::uint64_t i = 0; i < doc_count; ++i) {
        Document doc;
        doc.doc_id = read_string(cin, "doc id");
        auto token_count = read_pod<std::uint64_t>(cin, "token count");
        doc.tokens.reserve(token_count);
        for (std::uint64_t t = 0; t < token_count; ++t) {
            doc.tokens.push_back(read_string(cin, "token"));
        }
        docs.push_back(std::move(doc));
    }

    LoadedIndex loaded{KnowledgeGraph::from_tables(std::move(nodes), std::move(edges)),
                       CorpusIndex::from_documents(std::move(docs), max_ngram),
                       IndexManifest{}};
    loaded.manifest = m;
    loaded.manifest.articles = loaded.graph.article_count();
    loaded.manifest.redirects = loaded.graph.redirect_count();
    loaded.manifest.edges = loaded.graph.edge_count();
    loaded.manifest.documents = loaded.corpus.document_count();
    loaded.manifest.max_ngram = loaded.corpus.max_ngram();
    return loaded;
}

} // namespace kgx
