#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "kgx/errors.hpp"
#include "kgx/knowledge_graph.hpp"
#include "test_util.hpp"

using namespace kgx;
using namespace kgx_test;

namespace {

std::vector<std::int64_t> external_ids(const KnowledgeGraph& g,
                                       std::span<const ArticleId> ids) {
    std::vector<std::int64_t> out;
    for (ArticleId id : ids) out.push_back(g.article(id).external_id);
    return out;
}

std::vector<std::vector<int>> path_ids(const KnowledgeGraph& g,
                                       const std::vector<ConceptPath>& paths) {
    std::vector<std::vector<int>> out;
    for (const ConceptPath& p : paths) {
        std::vector<int> seq;
        for (ArticleId id : p.articles) seq.push_back(int(g.article(id).external_id));
        out.push_back(std::move(seq));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("loading resolves redirects and indexes titles") {
    auto g = graph_from_tsv(
        "1\tvolkswagen beetle\t-\n"
        "2\tvw beetle\t1\n",
        "");
    CHECK(g.article_count() == 2);
    CHECK(g.concept_count() == 1);
    auto main_id = g.resolve_title(Phrase::parse("volkswagen beetle").value());
    REQUIRE(main_id.has_value());
    auto titles = g.redirects_of(*main_id);
    REQUIRE(titles.size() == 1);
    CHECK(titles[0].text() == "vw beetle");
}

TEST_CASE("redirect chains collapse to the terminal article") {
    auto g = graph_from_tsv(
        "1\ttarget\t-\n"
        "2\tmiddle\t1\n"
        "3\touter\t2\n",
        "");
    auto resolved = g.resolve_title(Phrase::parse("outer").value());
    REQUIRE(resolved.has_value());
    CHECK(g.article(*resolved).title.text() == "target");
    CHECK(g.redirects_of(*resolved).size() == 2);
}

TEST_CASE("redirect cycles are rejected with the cycle spelled out") {
    try {
        graph_from_tsv("1\ta\t-\n2\tb\t3\n3\tc\t2\n", "");
        FAIL("expected an integrity error");
    } catch (const IntegrityError& e) {
        std::string msg = e.what();
        CHECK(msg.find("redirect cycle") != std::string::npos);
        CHECK(msg.find("2") != std::string::npos);
        CHECK(msg.find("3") != std::string::npos);
    }
}

TEST_CASE("edges incident to redirects are remapped to their targets") {
    auto g = graph_from_tsv(
        "1\ta\t-\n"
        "2\tb\t1\n"
        "3\tc\t-\n",
        "3\t2\n");
    auto c = g.resolve_title(Phrase::parse("c").value()).value();
    auto out = g.out_neighbors(c);
    REQUIRE(out.size() == 1);
    CHECK(g.article(out[0]).external_id == 1);
}

TEST_CASE("malformed input reports the offending line") {
    CHECK_THROWS_WITH_AS(graph_from_tsv("1\ta\t-\nbad line\n", ""),
                         doctest::Contains("nodes:2"), ParseError);
    CHECK_THROWS_WITH_AS(graph_from_tsv("1\ta\t-\n", "1\n"),
                         doctest::Contains("edges:1"), ParseError);
    CHECK_THROWS_AS(graph_from_tsv("1\ta\t-\n", "1\t7\n"), IntegrityError);
    CHECK_THROWS_AS(graph_from_tsv("1\ta\t-\n1\tb\t-\n", ""), IntegrityError);
    CHECK_THROWS_AS(graph_from_tsv("1\tsame title\t-\n2\tsame, title\t-\n", ""),
                    IntegrityError);
    CHECK_THROWS_AS(graph_from_tsv("1\ta\t9\n", ""), IntegrityError);
}

TEST_CASE("comments and blank lines are ignored") {
    auto g = graph_from_tsv("# articles\n1\ta\t-\n\n2\tb\t-\n", "# links\n1\t2\n");
    CHECK(g.article_count() == 2);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("self loops and duplicate edges collapse") {
    auto g = graph_from_tsv("1\ta\t-\n2\tb\t-\n3\tc\t1\n",
                            "1\t1\n1\t2\n1\t2\n3\t2\n1\t3\n");
    // 1->1 dropped; 1->2 deduplicated; 3->2 remaps to 1->2 (dup); 1->3 becomes
    // a self loop after remapping and is dropped.
    CHECK(g.edge_count() == 1);
}

TEST_CASE("title resolution") {
    auto g = motor_graph();
    auto via_redirect = g.resolve_title(Phrase::parse("vw beetle").value());
    REQUIRE(via_redirect.has_value());
    CHECK(g.article(*via_redirect).title.text() == "volkswagen beetle");

    auto direct = g.resolve_title(Phrase::parse("volkswagen beetle").value());
    CHECK(direct == via_redirect);

    CHECK_FALSE(g.resolve_title(Phrase::parse("zzz unknown").value()).has_value());
}

TEST_CASE("redirect queries require a concept article") {
    auto g = motor_graph();
    auto vw = g.find_external(2).value(); // "VW", a redirect
    CHECK_THROWS_AS(g.redirects_of(vw), ContractError);

    auto beetle = g.resolve_title(Phrase::parse("beetle").value()).value();
    auto titles = g.redirects_of(beetle);
    REQUIRE(titles.size() == 1);
    CHECK(titles[0].text() == "beetles");

    auto isolated = g.resolve_title(Phrase::parse("wolfsburg").value()).value();
    CHECK(g.redirects_of(isolated).empty());
}

TEST_CASE("neighbors by direction") {
    auto g = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 0}});
    auto center = g.find_external(0).value();
    CHECK(external_ids(g, g.neighbors(center, Direction::out)) ==
          std::vector<std::int64_t>{1, 2, 3});
    CHECK(external_ids(g, g.neighbors(center, Direction::in)) ==
          std::vector<std::int64_t>{1});
    CHECK(external_ids(g, g.neighbors(center, Direction::both)) ==
          std::vector<std::int64_t>{1, 2, 3}); // 0<->1 collapses in the union

    auto isolated = graph_from_edges(2, {});
    CHECK(isolated.neighbors(0, Direction::both).empty());
}

TEST_CASE("shortest paths on a chain") {
    auto g = graph_from_edges(3, {{0, 1}, {1, 2}});
    std::vector<ArticleId> targets{g.find_external(2).value()};
    auto paths = g.shortest_paths(g.find_external(0).value(), targets, 2);
    CHECK(path_ids(g, paths) == std::vector<std::vector<int>>{{0, 1, 2}});

    CHECK(g.shortest_paths(g.find_external(0).value(), targets, 1).empty());
}

TEST_CASE("a source that is the only target yields nothing") {
    auto g = graph_from_edges(2, {{0, 1}});
    std::vector<ArticleId> targets{0};
    CHECK(g.shortest_paths(0, targets, 4).empty());
}

TEST_CASE("all tied shortest paths are returned") {
    // two length-2 routes to the same target plus a longer one
    auto g = graph_from_edges(6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {0, 4}, {4, 5}, {5, 3}});
    std::vector<ArticleId> targets{3};
    auto paths = g.shortest_paths(0, targets, 4);
    CHECK(path_ids(g, paths) ==
          std::vector<std::vector<int>>{{0, 1, 3}, {0, 2, 3}});
}

TEST_CASE("distance counts to the first target reached") {
    // target 1 at distance 1; target 3 at distance 2 is beyond the minimum
    auto g = graph_from_edges(4, {{0, 1}, {0, 2}, {2, 3}});
    std::vector<ArticleId> targets{1, 3};
    auto paths = g.shortest_paths(0, targets, 4);
    CHECK(path_ids(g, paths) == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("shortest paths match the exhaustive oracle on random graphs") {
    Rng rng(20240817);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = rng.between(2, 50);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                if (u != v && rng.chance(2.5 / n)) edges.emplace_back(u, v);
            }
        }
        auto g = graph_from_edges(n, edges);
        MatrixGraph m(n, edges);

        const int source = rng.below(n);
        std::set<int> targets;
        const int k = rng.between(1, std::max(1, n / 3));
        for (int i = 0; i < k; ++i) targets.insert(rng.below(n));
        const int max_hops = rng.between(1, 5);

        std::vector<ArticleId> target_ids(targets.begin(), targets.end());
        auto got = path_ids(g, g.shortest_paths(ArticleId(source), target_ids, max_hops));
        auto want = oracle_shortest_paths(m, source, targets, max_hops);
        REQUIRE(got == want);
    }
}

TEST_CASE("triangle stats on fixed shapes") {
    auto tri = graph_from_und_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    std::vector<ArticleId> s{1, 2};
    auto stats = tri.triangle_stats(0, s);
    CHECK(stats.triangles == 1);
    CHECK(stats.closing_vertices == 2);

    auto empty = graph_from_und_edges(3, {{0, 1}, {0, 2}});
    CHECK(empty.triangle_stats(0, s).triangles == 0);
    CHECK(empty.triangle_stats(0, s).closing_vertices == 0);

    // 4-clique, s = {1, 2}: one internal triangle; both members close
    auto clique =
        graph_from_und_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto cs = clique.triangle_stats(0, s);
    CHECK(cs.triangles == 1);
    CHECK(cs.closing_vertices == 2);
    auto totals = clique.triangle_totals(0);
    CHECK(totals.triangles == 3);
    CHECK(totals.closing_vertices == 3);
}

TEST_CASE("triangle stats match exhaustive triple enumeration") {
    Rng rng(991);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = rng.between(3, 12);
        auto edges = random_und_edges(rng, n, 0.4);
        auto g = graph_from_und_edges(n, edges);
        MatrixGraph m(n, edges);
        for (int x = 0; x < n; ++x) {
            std::set<int> s;
            for (int v = 0; v < n; ++v) {
                if (v != x && rng.chance(0.5)) s.insert(v);
            }
            std::vector<ArticleId> sv(s.begin(), s.end());
            auto got = g.triangle_stats(ArticleId(x), sv);
            auto want = oracle_triangle_stats(m, x, s);
            CHECK(got.triangles == want.first);
            CHECK(got.closing_vertices == want.second);
        }
    }
}

TEST_CASE("loading is deterministic") {
    std::string nodes = kMotorNodes;
    std::string edges = kMotorEdges;
    auto a = graph_from_tsv(nodes, edges);
    auto b = graph_from_tsv(nodes, edges);
    REQUIRE(a.article_count() == b.article_count());
    for (ArticleId id = 0; id < a.article_count(); ++id) {
        CHECK(a.article(id).external_id == b.article(id).external_id);
        CHECK(a.article(id).title.text() == b.article(id).title.text());
        if (!a.article(id).is_redirect) {
            CHECK(external_ids(a, a.out_neighbors(id)) ==
                  external_ids(b, b.out_neighbors(id)));
        }
    }
    CHECK(a.edge_list() == b.edge_list());
}

TEST_CASE("redirect titles and concept titles partition the title index") {
    auto g = motor_graph();
    for (ArticleId id = 0; id < g.article_count(); ++id) {
        const Article& a = g.article(id);
        auto resolved = g.resolve_title(a.title);
        REQUIRE(resolved.has_value());
        if (a.is_redirect) {
            CHECK(*resolved == a.redirect_target);
        } else {
            CHECK(*resolved == id);
            for (const Phrase& r : g.redirects_of(id)) {
                CHECK(r != a.title);
            }
        }
    }
}
