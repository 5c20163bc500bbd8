#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "kgx/errors.hpp"
#include "kgx/wcc.hpp"
#include "test_util.hpp"

using namespace kgx;
using namespace kgx_test;

namespace {

std::vector<ArticleId> ids(std::initializer_list<int> xs) {
    std::vector<ArticleId> out;
    for (int x : xs) out.push_back(ArticleId(x));
    return out;
}

const std::vector<std::pair<int, int>> kClique4{{0, 1}, {0, 2}, {0, 3},
                                                {1, 2}, {1, 3}, {2, 3}};

} // namespace

TEST_CASE("a triangle is its own perfect community") {
    auto g = graph_from_und_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    auto members = ids({0, 1, 2});
    CHECK(wcc_vertex(g, 0, members) == 1.0);
    CHECK(wcc_community(g, members) == 1.0);
}

TEST_CASE("vertices without triangles score zero") {
    auto g = graph_from_und_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    auto members = ids({0, 1, 2, 3});
    for (ArticleId x : members) CHECK(wcc_vertex(g, x, members) == 0.0);
    CHECK(wcc_community(g, members) == 0.0);
}

TEST_CASE("partial community inside a 4-clique") {
    auto g = graph_from_und_edges(4, kClique4);
    auto members = ids({0, 1, 2});
    // one internal triangle of three, full coverage of the triangle
    // neighbourhood: (1/3) * (3 / (2 + 1))
    CHECK(wcc_vertex(g, 0, members) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("community score is the member mean") {
    auto g = graph_from_und_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}});
    auto members = ids({0, 1, 2, 3});
    double mean = (wcc_vertex(g, 0, members) + wcc_vertex(g, 1, members) +
                   wcc_vertex(g, 2, members) + wcc_vertex(g, 3, members)) /
                  4.0;
    CHECK(wcc_community(g, members) == mean);
}

TEST_CASE("membership contracts are enforced") {
    auto g = graph_from_und_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    auto members = ids({0, 1});
    CHECK_THROWS_AS(wcc_vertex(g, 2, members), ContractError);
    CHECK_THROWS_AS(wcc_community(g, {}), ContractError);
}

TEST_CASE("scores stay within the unit interval on random graphs") {
    Rng rng(555);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = rng.between(3, 12);
        auto edges = random_und_edges(rng, n, 0.45);
        auto g = graph_from_und_edges(n, edges);
        for (int probe = 0; probe < 10; ++probe) {
            std::set<int> mset;
            mset.insert(rng.below(n));
            for (int v = 0; v < n; ++v) {
                if (rng.chance(0.4)) mset.insert(v);
            }
            std::vector<ArticleId> members(mset.begin(), mset.end());
            for (ArticleId x : members) {
                double w = wcc_vertex(g, x, members);
                CHECK(w >= 0.0);
                CHECK(w <= 1.0);
            }
            double c = wcc_community(g, members);
            CHECK(c >= 0.0);
            CHECK(c <= 1.0);
        }
    }
}

TEST_CASE("vertex and community scores equal the brute-force oracle") {
    Rng rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = rng.between(3, 10);
        auto edges = random_und_edges(rng, n, 0.5);
        auto g = graph_from_und_edges(n, edges);
        MatrixGraph m(n, edges);
        for (int probe = 0; probe < 20; ++probe) {
            std::set<int> mset;
            mset.insert(rng.below(n));
            while (int(mset.size()) < std::min(n, rng.between(1, 5))) {
                mset.insert(rng.below(n));
            }
            std::vector<ArticleId> members(mset.begin(), mset.end());
            for (int x : mset) {
                CHECK(wcc_vertex(g, ArticleId(x), members) ==
                      doctest::Approx(oracle_wcc_vertex(m, x, mset)).epsilon(1e-12));
            }
            CHECK(wcc_community(g, members) ==
                  doctest::Approx(oracle_wcc_community(m, mset)).epsilon(1e-12));
        }
    }
}

TEST_CASE("scores are invariant under article relabeling") {
    // same 5-vertex shape under two id assignments
    auto a = graph_from_und_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}});
    auto b = graph_from_und_edges(5, {{4, 3}, {4, 2}, {3, 2}, {2, 1}, {1, 0}});
    // relabeling: 0->4, 1->3, 2->2, 3->1, 4->0
    auto members_a = ids({0, 1, 2});
    auto members_b = ids({2, 3, 4});
    CHECK(wcc_vertex(a, 0, members_a) == wcc_vertex(b, 4, members_b));
    CHECK(wcc_vertex(a, 2, members_a) == wcc_vertex(b, 2, members_b));
    CHECK(wcc_community(a, members_a) == wcc_community(b, members_b));
}

TEST_CASE("cached and uncached evaluation agree exactly") {
    Rng rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.between(4, 12);
        auto edges = random_und_edges(rng, n, 0.45);
        auto g = graph_from_und_edges(n, edges);
        WccEngine engine(g);
        for (int probe = 0; probe < 10; ++probe) {
            std::set<int> mset;
            mset.insert(rng.below(n));
            for (int v = 0; v < n; ++v) {
                if (rng.chance(0.5)) mset.insert(v);
            }
            std::vector<ArticleId> members(mset.begin(), mset.end());
            for (ArticleId x : members) {
                CHECK(engine.vertex(x, members) == wcc_vertex(g, x, members));
            }
            CHECK(engine.community(members) == wcc_community(g, members));
        }
    }
}
