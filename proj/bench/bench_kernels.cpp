// Micro-benchmark comparing the OpenMP kernels against their serial
// reference implementations on synthetic graphs, verifying along the way
// that both produce identical results.
//
//   kgx_bench [--scale N] [--seed S]

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "kgx/knowledge_graph.hpp"
#include "kgx/topological.hpp"
#include "kgx/wcc.hpp"

using namespace kgx;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

KnowledgeGraph build_graph(int nodes, double avg_degree, int dense_nodes,
                           double dense_p, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::string node_tsv;
    for (int i = 0; i < nodes; ++i) {
        node_tsv += std::to_string(i) + "\tn" + std::to_string(i) + "\t-\n";
    }
    std::string edge_tsv;
    std::uniform_int_distribution<int> pick(0, nodes - 1);
    const long random_edges = long(avg_degree * nodes);
    for (long e = 0; e < random_edges; ++e) {
        int u = pick(rng);
        int v = pick(rng);
        if (u == v) continue;
        edge_tsv += std::to_string(u) + "\t" + std::to_string(v) + "\n";
    }
    // planted dense region on the first dense_nodes ids
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int u = 0; u < dense_nodes; ++u) {
        for (int v = u + 1; v < dense_nodes; ++v) {
            if (unit(rng) < dense_p) {
                edge_tsv += std::to_string(u) + "\t" + std::to_string(v) + "\n";
            }
        }
    }
    std::istringstream n(node_tsv), e(edge_tsv);
    return KnowledgeGraph::load(n, e);
}

struct Timing {
    double serial_s = 0;
    double parallel_s = 0;
    bool equal = true;
};

void report(const char* kernel, const Timing& t) {
    std::printf("%-24s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n",
                kernel, t.serial_s, t.parallel_s,
                t.parallel_s > 0 ? t.serial_s / t.parallel_s : 0.0,
                t.equal ? "results equal" : "RESULTS DIFFER");
}

Timing bench_paths(const KnowledgeGraph& g, int sources, int targets,
                   std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<ArticleId> pick(0, ArticleId(g.article_count() - 1));
    RelevantSet rq{SetOrigin::query, {}, false};
    RelevantSet rc{SetOrigin::context, {}, false};
    for (int i = 0; i < sources; ++i) rq.members.push_back(pick(rng));
    for (int i = 0; i < targets; ++i) rc.members.push_back(pick(rng));
    auto dedupe = [](std::vector<ArticleId>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(rq.members);
    dedupe(rc.members);
    const Phrase q = Phrase::parse("n1 n2").value();

    Timing t;
    auto start = std::chrono::steady_clock::now();
    auto serial = compute_paths(g, rq, rc, 4, q, q, Exec::serial);
    t.serial_s = seconds_since(start);

    start = std::chrono::steady_clock::now();
    auto parallel = compute_paths(g, rq, rc, 4, q, q, Exec::parallel);
    t.parallel_s = seconds_since(start);

    t.equal = serial.size() == parallel.size();
    for (std::size_t i = 0; t.equal && i < serial.size(); ++i) {
        t.equal = serial[i].articles == parallel[i].articles &&
                  serial[i].score == parallel[i].score;
    }
    std::printf("  paths found: %zu\n", serial.size());
    return t;
}

Timing bench_growth(const KnowledgeGraph& g, int seeds, int dense_nodes,
                    std::uint32_t seed) {
    std::mt19937 rng(seed);
    // seed paths start inside the planted dense region so growth has work
    std::uniform_int_distribution<ArticleId> pick(0, ArticleId(dense_nodes - 1));
    std::vector<ConceptPath> paths;
    for (int i = 0; i < seeds; ++i) {
        ConceptPath p;
        ArticleId a = pick(rng);
        auto nb = g.und_neighbors(a);
        if (nb.empty()) continue;
        p.articles = {a, nb[rng() % nb.size()]};
        paths.push_back(std::move(p));
    }

    Timing t;
    std::vector<std::vector<ArticleId>> serial_members, parallel_members;
    {
        WccEngine wcc(g);
        auto start = std::chrono::steady_clock::now();
        for (const auto& p : paths) {
            serial_members.push_back(
                grow_community(wcc, p, kDefaultIterationCap, Exec::serial).members);
        }
        t.serial_s = seconds_since(start);
    }
    {
        WccEngine wcc(g);
        auto start = std::chrono::steady_clock::now();
        for (const auto& p : paths) {
            parallel_members.push_back(
                grow_community(wcc, p, kDefaultIterationCap, Exec::parallel).members);
        }
        t.parallel_s = seconds_since(start);
    }
    t.equal = serial_members == parallel_members;
    std::size_t largest = 0;
    for (const auto& m : serial_members) largest = std::max(largest, m.size());
    std::printf("  communities grown: %zu (largest %zu members)\n",
                serial_members.size(), largest);
    return t;
}

} // namespace

int main(int argc, char** argv) {
    int scale = 1;
    std::uint32_t seed = 12345;
    CLI::App app{"kgx kernel benchmark"};
    app.add_option("--scale", scale, "Problem size multiplier");
    app.add_option("--seed", seed, "Generator seed");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel falls back to serial\n");
#endif

    {
        std::printf("\n-- shortest paths over relevant sets --\n");
        auto g = build_graph(20000 * scale, 6.0, 0, 0.0, seed);
        std::printf("graph: %zu articles, %zu edges\n", g.article_count(),
                    g.edge_count());
        report("compute_paths", bench_paths(g, 300 * scale, 600 * scale, seed + 1));
    }

    {
        std::printf("\n-- community growth around seed paths --\n");
        const int dense = 40 * scale;
        auto g = build_graph(3000 * scale, 3.0, dense, 0.5, seed + 2);
        std::printf("graph: %zu articles, %zu edges\n", g.article_count(),
                    g.edge_count());
        report("grow_community", bench_growth(g, 6, dense, seed + 3));
    }
    return 0;
}
