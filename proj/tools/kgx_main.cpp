#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "kgx/errors.hpp"
#include "kgx/index_store.hpp"
#include "kgx/pipeline.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitPipeline = 1;
constexpr int kExitIo = 2;

std::ifstream open_readable(const std::string& path) {
    if (!fs::exists(path)) throw kgx::IoError("no such file: " + path);
    std::ifstream in(path);
    if (!in) throw kgx::IoError("cannot read: " + path);
    return in;
}

struct CommonOptions {
    std::string index_dir;
    double alpha = 0.08;
    double beta = 0.05;
    double gamma = 0.87;
    int max_hops = kgx::kDefaultMaxHops;
    std::size_t synonym_cap = kgx::kDefaultSynonymCap;
    int wcc_iteration_cap = kgx::kDefaultIterationCap;
    std::size_t relevant_cap = kgx::kDefaultRelevantCap;
    std::string containment = "formula";
    std::string stopword_file;
    std::string visual_stopword_file;
    bool serial = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--index", opt.index_dir, "Index directory written by ingest")
        ->required();
    cmd->add_option("--alpha", opt.alpha, "Weight of the original query branch");
    cmd->add_option("--beta", opt.beta, "Weight of the synonym phrase branch");
    cmd->add_option("--gamma", opt.gamma, "Weight of the related concept branch");
    cmd->add_option("--max-hops", opt.max_hops, "Path search horizon");
    cmd->add_option("--synonym-cap", opt.synonym_cap,
                    "Maximum synonym combinations per phrase");
    cmd->add_option("--wcc-iteration-cap", opt.wcc_iteration_cap,
                    "Outer iteration cap of the community search");
    cmd->add_option("--relevant-cap", opt.relevant_cap,
                    "Maximum relevant articles per side");
    cmd->add_option("--hierarchy-containment", opt.containment,
                    "Second-level test: formula (title terms within query) or "
                    "prose (query terms within title)")
        ->check(CLI::IsMember({"formula", "prose"}));
    cmd->add_option("--stopwords", opt.stopword_file,
                    "Replace the built-in general stopword list");
    cmd->add_option("--visual-stopwords", opt.visual_stopword_file,
                    "Replace the built-in visual stopword list");
    cmd->add_flag("--serial", opt.serial, "Run the serial reference kernels");
}

kgx::PipelineConfig make_config(const CommonOptions& opt) {
    kgx::PipelineConfig cfg;
    cfg.weights = kgx::WeightVector{opt.alpha, opt.beta, opt.gamma};
    cfg.max_hops = opt.max_hops;
    cfg.synonym_cap = opt.synonym_cap;
    cfg.wcc_iteration_cap = opt.wcc_iteration_cap;
    cfg.relevant_cap = opt.relevant_cap;
    cfg.containment = opt.containment == "prose"
                          ? kgx::ContainmentRule::query_within_title
                          : kgx::ContainmentRule::title_within_query;
    if (!opt.stopword_file.empty()) {
        cfg.stopwords.general = kgx::StopwordSets::load_file(opt.stopword_file);
    }
    if (!opt.visual_stopword_file.empty()) {
        cfg.stopwords.visual = kgx::StopwordSets::load_file(opt.visual_stopword_file);
    }
    cfg.exec = opt.serial ? kgx::Exec::serial : kgx::Exec::parallel;
    return cfg;
}

int cmd_ingest(const std::string& nodes_path, const std::string& edges_path,
               const std::string& corpus_path, const std::string& out_dir,
               int max_ngram) {
    auto nodes = open_readable(nodes_path);
    auto edges = open_readable(edges_path);
    auto corpus = open_readable(corpus_path);

    auto graph = kgx::KnowledgeGraph::load(nodes, edges, nodes_path, edges_path);
    auto index = kgx::CorpusIndex::build(corpus, max_ngram, corpus_path);
    kgx::write_index(out_dir, graph, index);

    std::cout << "ingested " << graph.article_count() << " articles ("
              << graph.redirect_count() << " redirects), " << graph.edge_count()
              << " edges, " << index.document_count() << " documents -> " << out_dir
              << "\n";
    return kExitOk;
}

int cmd_expand(const CommonOptions& opt, const std::string& query,
               const std::optional<std::string>& context, const std::string& format) {
    auto loaded = kgx::open_index(opt.index_dir);
    auto cfg = make_config(opt);
    auto result = kgx::expand_query(loaded.graph, loaded.corpus, cfg, query,
                                    context ? std::optional<std::string_view>(*context)
                                            : std::nullopt);
    if (format == "json") {
        std::cout << kgx::render_json(result.query) << "\n";
    } else {
        std::cout << kgx::render_text(result.query) << "\n";
    }
    return kExitOk;
}

int cmd_explain(const CommonOptions& opt, const std::string& query,
                const std::optional<std::string>& context) {
    auto loaded = kgx::open_index(opt.index_dir);
    auto cfg = make_config(opt);
    auto result = kgx::expand_query(loaded.graph, loaded.corpus, cfg, query,
                                    context ? std::optional<std::string_view>(*context)
                                            : std::nullopt);
    std::cout << kgx::diagnostics_json(result.diagnostics, loaded.graph).dump(2) << "\n";
    return kExitOk;
}

int cmd_batch(const CommonOptions& opt, const std::string& queries_path,
              const std::string& out_path, const std::string& format) {
    auto in = open_readable(queries_path);

    struct Record {
        nlohmann::json id;
        std::optional<std::string> query;
        std::optional<std::string> context;
        std::string error; // parse failure
    };
    std::vector<Record> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Record rec;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("query") ||
            !j["query"].is_string()) {
            rec.id = j.is_object() && j.contains("id") ? j["id"] : nlohmann::json(nullptr);
            rec.error = "line " + std::to_string(line_no) +
                        ": expected JSON object with a string 'query'";
        } else {
            rec.id = j.contains("id") ? j["id"] : nlohmann::json(nullptr);
            rec.query = j["query"].get<std::string>();
            if (j.contains("context") && j["context"].is_string()) {
                rec.context = j["context"].get<std::string>();
            }
        }
        records.push_back(std::move(rec));
    }

    auto loaded = kgx::open_index(opt.index_dir);
    auto cfg = make_config(opt);

    std::vector<std::string> lines(records.size());
    auto run_one = [&](std::size_t i) {
        const Record& rec = records[i];
        nlohmann::json out;
        out["id"] = rec.id;
        if (!rec.error.empty()) {
            out["error"] = rec.error;
        } else {
            try {
                auto result = kgx::expand_query(
                    loaded.graph, loaded.corpus, cfg, *rec.query,
                    rec.context ? std::optional<std::string_view>(*rec.context)
                                : std::nullopt);
                out["query"] = format == "json"
                                   ? nlohmann::json::parse(kgx::render_json(result.query))
                                   : nlohmann::json(kgx::render_text(result.query));
            } catch (const kgx::Error& e) {
                out["error"] = e.what();
            }
        }
        lines[i] = out.dump();
    };

    if (cfg.exec == kgx::Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < records.size(); ++i) run_one(i);
    } else {
        for (std::size_t i = 0; i < records.size(); ++i) run_one(i);
    }

    std::ofstream out(out_path);
    if (!out) throw kgx::IoError("cannot write: " + out_path);
    for (const std::string& l : lines) out << l << "\n";
    if (!out) throw kgx::IoError("failed writing: " + out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kgx - query expansion over a knowledge graph"};
    app.require_subcommand(1);

    // ingest
    std::string nodes_path, edges_path, corpus_path, out_dir;
    int max_ngram = 6;
    auto* ingest = app.add_subcommand(
        "ingest", "Build an index directory from node/edge/corpus files");
    ingest->add_option("--nodes", nodes_path, "Articles TSV (id, title, redirect)")
        ->required();
    ingest->add_option("--edges", edges_path, "Links TSV (src, dst)")->required();
    ingest->add_option("--corpus", corpus_path, "Documents JSON-lines file")->required();
    ingest->add_option("--out", out_dir, "Output index directory")->required();
    ingest->add_option("--max-ngram", max_ngram, "Longest indexed phrase length");

    // expand
    CommonOptions expand_opt;
    std::string query_text;
    std::string context_text;
    bool context_given = false;
    std::string format = "indri";
    auto* expand = app.add_subcommand("expand", "Expand a query and print it");
    add_common(expand, expand_opt);
    expand->add_option("--query", query_text, "Query phrase")->required();
    auto* ctx_opt = expand->add_option("--context", context_text,
                                       "Natural-language context (defaults to the query)");
    expand->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"indri", "json"}));

    // explain
    CommonOptions explain_opt;
    std::string explain_query, explain_context;
    auto* explain = app.add_subcommand("explain", "Print pipeline diagnostics as JSON");
    add_common(explain, explain_opt);
    explain->add_option("--query", explain_query, "Query phrase")->required();
    auto* explain_ctx = explain->add_option("--context", explain_context,
                                            "Natural-language context");

    // batch
    CommonOptions batch_opt;
    std::string queries_path, batch_out, batch_format = "indri";
    auto* batch = app.add_subcommand("batch", "Expand a JSON-lines query file");
    add_common(batch, batch_opt);
    batch->add_option("--queries", queries_path, "JSON-lines input {id, query, context?}")
        ->required();
    batch->add_option("--out", batch_out, "Output file, one JSON record per line")
        ->required();
    batch->add_option("--format", batch_format, "Rendered query format")
        ->check(CLI::IsMember({"indri", "json"}));

    CLI11_PARSE(app, argc, argv);
    context_given = ctx_opt->count() > 0;

    try {
        if (ingest->parsed()) {
            return cmd_ingest(nodes_path, edges_path, corpus_path, out_dir, max_ngram);
        }
        if (expand->parsed()) {
            return cmd_expand(expand_opt, query_text,
                              context_given ? std::optional<std::string>(context_text)
                                            : std::nullopt,
                              format);
        }
        if (explain->parsed()) {
            return cmd_explain(explain_opt, explain_query,
                               explain_ctx->count() > 0
                                   ? std::optional<std::string>(explain_context)
                                   : std::nullopt);
        }
        if (batch->parsed()) {
            return cmd_batch(batch_opt, queries_path, batch_out, batch_format);
        }
    } catch (const kgx::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const kgx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPipeline;
    }
    return kExitOk;
}
