#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace oddprod {
namespace {

using testing::brute_adjacent;
using testing::brute_risk;
using testing::brute_support;

product_vertex pv(index_t i, index_t j, index_t k = 0) { return {i, j, k}; }

TEST(ProductAdjacent, Examples) {
    const auto host = path_host(3);
    const auto path = secondary_factor::path(4);
    EXPECT_TRUE(product_adjacent(host, path, pv(1, 1), pv(1, 2)));
    EXPECT_FALSE(product_adjacent(host, path, pv(1, 1), pv(1, 1)));
    EXPECT_TRUE(product_adjacent(host, path, pv(1, 1), pv(2, 2)));
    EXPECT_FALSE(product_adjacent(host, path, pv(1, 1), pv(2, 3)));
    EXPECT_FALSE(product_adjacent(host, path, pv(1, 1), pv(3, 1)));
    EXPECT_THROW(product_adjacent(host, path, pv(4, 1), pv(1, 1)), invalid_vertex);
    EXPECT_THROW(product_adjacent(host, path, pv(1, 5), pv(1, 1)), invalid_vertex);
    EXPECT_THROW(product_adjacent(host, path, pv(1, 1, 1), pv(1, 2)), invalid_vertex);

    const auto clique = secondary_factor::path_clique(2, 3);
    EXPECT_TRUE(product_adjacent(host, clique, pv(1, 1, 1), pv(1, 1, 3)));
    EXPECT_TRUE(product_adjacent(host, clique, pv(1, 1, 1), pv(2, 2, 2)));
    EXPECT_THROW(product_adjacent(host, clique, pv(1, 1), pv(1, 2, 1)), invalid_vertex);
}

TEST(ProductAdjacent, SymmetricIrreflexiveAndMatchesDefinition) {
    std::mt19937_64 rng(5);
    for (int run = 0; run < 60; ++run) {
        const auto kind = static_cast<factor_kind>(run % 3);
        auto ip = testing::random_params(rng, kind, 5, 4);
        const auto g = testing::make_instance(ip, run);
        const auto space = testing::all_product_vertices(g.host(), g.secondary());
        for (const auto &u : space) {
            for (const auto &v : space) {
                const bool a = product_adjacent(g.host(), g.secondary(), u, v);
                ASSERT_EQ(a, product_adjacent(g.host(), g.secondary(), v, u));
                ASSERT_EQ(a, brute_adjacent(g.host(), g.secondary(), u, v));
            }
        }
    }
}

TEST(SecondaryFactor, GeneralRejectsBadAdjacency) {
    EXPECT_THROW(secondary_factor::general({{2}, {}}), invalid_parameter);
    EXPECT_THROW(secondary_factor::general({{1}}), invalid_parameter);
    EXPECT_THROW(secondary_factor::general({{3}, {}}), invalid_parameter);
    EXPECT_THROW(secondary_factor::general({{2, 2}, {1}}), invalid_parameter);
    EXPECT_THROW(secondary_factor::path_clique(3, 0), invalid_parameter);
    EXPECT_EQ(secondary_factor::general(cycle_graph(5)).delta(), 2u);
    EXPECT_EQ(secondary_factor::general(adjacency_list(1)).delta(), 0u);
}

TEST(SecondaryFactor, BallRadiusTwo) {
    const auto path = secondary_factor::general(path_graph(6));
    const auto ball = path.ball2(3);
    EXPECT_EQ(std::vector<index_t>(ball.begin(), ball.end()), (std::vector<index_t>{1, 2, 3, 4, 5}));
    const auto ball_end = path.ball2(1);
    EXPECT_EQ(std::vector<index_t>(ball_end.begin(), ball_end.end()), (std::vector<index_t>{1, 2, 3}));
}

TEST(ValidateSubgraph, Examples) {
    const auto host = path_host(2);
    const auto path = secondary_factor::path(3);
    EXPECT_TRUE(validate_subgraph(product_subgraph(host, path, {}, {})).ok());

    const product_subgraph far(host, path, {pv(1, 1), pv(1, 3)}, {{0, 1}});
    EXPECT_TRUE(validate_subgraph(far).has_rule("subgraph.not_adjacent"));

    const product_subgraph dangling(host, path, {pv(1, 1), pv(1, 2)}, {{0, 5}});
    EXPECT_TRUE(validate_subgraph(dangling).has_rule("subgraph.endpoint"));

    const product_subgraph loop(host, path, {pv(1, 1)}, {{0, 0}});
    EXPECT_TRUE(validate_subgraph(loop).has_rule("subgraph.loop"));

    const product_subgraph twice(host, path, {pv(1, 1), pv(1, 2)}, {{0, 1}, {1, 0}});
    EXPECT_TRUE(validate_subgraph(twice).has_rule("subgraph.duplicate_edge"));

    const product_subgraph dup_vertex(host, path, {pv(1, 1), pv(1, 1)}, {});
    EXPECT_TRUE(validate_subgraph(dup_vertex).has_rule("subgraph.duplicate_vertex"));

    const product_subgraph outside(host, path, {pv(3, 1), pv(1, 4)}, {});
    EXPECT_TRUE(validate_subgraph(outside).has_rule("subgraph.vertex_range"));
}

TEST(ProductSubgraph, SortsVerticesAndRemapsEdges) {
    const auto host = path_host(2);
    const product_subgraph g(host, secondary_factor::path(3), {pv(2, 2), pv(1, 1), pv(1, 2)}, {{0, 1}, {2, 1}});
    EXPECT_EQ(g.vertices(), (std::vector<product_vertex>{pv(1, 1), pv(1, 2), pv(2, 2)}));
    EXPECT_EQ(g.edges(), (std::vector<edge_t>{{0, 1}, {0, 2}}));
    EXPECT_TRUE(validate_subgraph(g).ok());
    EXPECT_EQ(g.find(pv(2, 2)), 2u);
    EXPECT_EQ(g.find(pv(2, 1)), no_vertex);
    EXPECT_EQ(g.find(pv(1, 0)), no_vertex);
    EXPECT_EQ(g.find(pv(1, 4)), no_vertex);
}

TEST(ProductSubgraph, SparseIndexLookups) {
    // Product space far larger than |V(G)| forces the hashed index.
    const auto host = random_t_tree(1, 3000, 3);
    const auto sec = secondary_factor::path(3000);
    std::vector<product_vertex> vs{pv(1, 1), pv(2999, 2999), pv(3000, 3000), pv(1500, 7)};
    const product_subgraph g(host, sec, vs, {});
    for (const auto &v : vs) {
        ASSERT_NE(g.find(v), no_vertex);
        EXPECT_EQ(g.vertex(g.find(v)), v);
    }
    EXPECT_EQ(g.find(pv(2, 2)), no_vertex);
}

TEST(SampleSubgraph, FullProductMatchesDefinition) {
    const auto host = random_t_tree(2, 6, 1);
    for (const auto &sec : {secondary_factor::path(4), secondary_factor::path_clique(3, 2),
                            secondary_factor::general(cycle_graph(5))}) {
        const auto g = full_product(host, sec);
        const auto space = testing::all_product_vertices(host, sec);
        ASSERT_EQ(g.vertices(), space);
        std::size_t expected_edges = 0;
        for (std::size_t a = 0; a < space.size(); ++a) {
            for (std::size_t b = a + 1; b < space.size(); ++b) {
                expected_edges += brute_adjacent(host, sec, space[a], space[b]);
            }
        }
        EXPECT_EQ(g.m(), expected_edges);
        EXPECT_TRUE(validate_subgraph(g).ok());
    }
}

TEST(SampleSubgraph, EmptyAndDeterministic) {
    const auto host = random_t_tree(2, 8, 2);
    const auto sec = secondary_factor::path(5);
    EXPECT_EQ(sample_subgraph(host, sec, 0.0, 1.0, 9).n(), 0u);
    const auto a = sample_subgraph(host, sec, 0.6, 0.5, 77);
    const auto b = sample_subgraph(host, sec, 0.6, 0.5, 77);
    EXPECT_EQ(a.vertices(), b.vertices());
    EXPECT_EQ(a.edges(), b.edges());
    EXPECT_TRUE(validate_subgraph(a).ok());
    EXPECT_THROW(sample_subgraph(host, sec, 1.5, 0.5, 0), invalid_parameter);
    EXPECT_THROW(sample_subgraph(host, sec, 0.5, -0.1, 0), invalid_parameter);
}

TEST(SupportSet, Examples) {
    const auto host = path_host(2);
    const auto full = full_product(host, secondary_factor::path(3));
    const product_subgraph single(host, secondary_factor::path(3), {pv(1, 1)}, {});
    EXPECT_EQ(support_set(single, pv(1, 1)), (std::vector<product_vertex>{pv(1, 1)}));
    EXPECT_EQ(support_set(full, pv(2, 2)),
              (std::vector<product_vertex>{pv(1, 1), pv(1, 2), pv(1, 3), pv(2, 1), pv(2, 2)}));
    EXPECT_THROW(support_set(full, pv(3, 1)), invalid_vertex);
    EXPECT_THROW(support_set(full, pv(1, 0)), invalid_vertex);
}

TEST(SupportSet, CliqueOfOrderOneCollapsesToPath) {
    std::mt19937_64 rng(8);
    for (int run = 0; run < 50; ++run) {
        const auto host = random_t_tree(2, 7, run);
        const auto plain = sample_subgraph(host, secondary_factor::path(5), 0.7, 0.7, run);
        const auto lifted = sample_subgraph(host, secondary_factor::path_clique(5, 1), 0.7, 0.7, run);
        ASSERT_EQ(plain.n(), lifted.n());
        ASSERT_EQ(plain.edges(), lifted.edges());
        for (const auto &v : testing::all_product_vertices(host, secondary_factor::path(5))) {
            auto strip = [](std::vector<product_vertex> s) {
                for (auto &x : s) {
                    x.k = 0;
                }
                return s;
            };
            EXPECT_EQ(support_set(plain, v), strip(support_set(lifted, pv(v.i, v.j, 1))));
            EXPECT_EQ(risk_set(plain, v), strip(risk_set(lifted, pv(v.i, v.j, 1))));
        }
    }
}

TEST(RiskSet, Examples) {
    const auto host = path_host(2);
    const auto full = full_product(host, secondary_factor::path(5));
    EXPECT_TRUE(risk_set(full, pv(1, 1)).empty());
    const auto r = risk_set(full, pv(2, 3));
    EXPECT_EQ(r, (std::vector<product_vertex>{pv(1, 1), pv(1, 2), pv(1, 3), pv(1, 4), pv(1, 5), pv(2, 1), pv(2, 2)}));
    EXPECT_EQ(r.size(), 5u * 1 + 2);

    const auto general = full_product(path_host(3), secondary_factor::general(path_graph(7)));
    EXPECT_LE(risk_set(general, pv(2, 4)).size(), (1u + 1) * 5 - 1);
    EXPECT_EQ(risk_set(general, pv(2, 4)).size(), (1u + 1) * 5 - 1);
}

// Support and risk sets agree with the definitions, stay inside the product
// and obey the size bounds, and the structural properties the colouring
// argument rests on all hold.
TEST(SupportAndRisk, PropertiesAgainstBruteForce) {
    std::mt19937_64 rng(11);
    for (int run = 0; run < 300; ++run) {
        const auto kind = static_cast<factor_kind>(run % 3);
        const auto ip = testing::random_params(rng, kind);
        const auto g = testing::make_instance(ip, 1000 + run);
        const auto &host = g.host();
        const auto &sec = g.secondary();
        const index_t t = host.t();
        const index_t ell = sec.ell();
        const index_t delta = sec.delta();
        const auto space = testing::all_product_vertices(host, sec);

        for (const auto &v : space) {
            const auto s = support_set(g, v);
            const auto r = risk_set(g, v);
            ASSERT_EQ(s, brute_support(g, v));
            ASSERT_EQ(r, brute_risk(g, v));
            for (const auto &w : s) {
                ASSERT_TRUE(in_product(host, sec, w));
            }
            for (const auto &w : r) {
                ASSERT_TRUE(in_product(host, sec, w));
            }
            switch (kind) {
            case factor_kind::path:
                EXPECT_LE(s.size(), 3 * t + 2);
                EXPECT_LE(r.size(), 5 * t + 2);
                break;
            case factor_kind::path_clique:
                EXPECT_LE(s.size(), 3 * ell * t + 2 * ell);
                EXPECT_LE(r.size(), 5 * ell * t + 3 * ell - 1);
                break;
            case factor_kind::general:
                EXPECT_LE(s.size(), (t + 1) * (delta + 1));
                EXPECT_LE(r.size(), (t + 1) * (delta * delta + 1) - 1);
                break;
            }
        }

        // Edge coverage.
        for (const auto &[a, b] : g.edges()) {
            const auto &v = g.vertex(a);
            const auto &w = g.vertex(b);
            auto both_in = [&](const product_vertex &u) {
                const auto s = support_set(g, u);
                return std::binary_search(s.begin(), s.end(), v) && std::binary_search(s.begin(), s.end(), w);
            };
            EXPECT_TRUE(both_in(v) || both_in(w));
        }

        for (index_t x = 0; x < g.n(); ++x) {
            const auto &v = g.vertex(x);
            const auto s = support_set(g, v);
            // Back-neighbour confinement.
            std::size_t back_degree = 0;
            for (index_t y : g.neighbours(x)) {
                if (y < x) {
                    ++back_degree;
                    EXPECT_TRUE(std::binary_search(s.begin(), s.end(), g.vertex(y)));
                }
            }
            EXPECT_LE(back_degree, s.size() - 1);
            // Risk-set completeness: any support set containing v has its
            // lex-smaller members inside R(v).
            const auto r = risk_set(g, v);
            for (const auto &u : space) {
                if (!testing::brute_in_support(g, u, v)) {
                    continue;
                }
                for (const auto &w : brute_support(g, u)) {
                    if (w < v) {
                        ASSERT_TRUE(std::binary_search(r.begin(), r.end(), w))
                            << to_string(w) << " missing from R" << to_string(v) << " via C" << to_string(u);
                    }
                }
            }
        }
    }
}

TEST(VisitSupportOwners, FindsEveryOwner) {
    std::mt19937_64 rng(12);
    for (int run = 0; run < 90; ++run) {
        const auto kind = static_cast<factor_kind>(run % 3);
        const auto g = testing::make_instance(testing::random_params(rng, kind), run);
        for (index_t x = 0; x < g.n(); ++x) {
            const auto &w = g.vertex(x);
            std::vector<product_vertex> owners;
            visit_support_owners(g.host(), g.secondary(), w.i, w.j, [&](const product_vertex &u) {
                owners.push_back(u);
            });
            for (const auto &u : testing::all_product_vertices(g.host(), g.secondary())) {
                if (testing::brute_in_support(g, u, w)) {
                    const product_vertex rep{u.i, u.j, g.secondary().has_clique() ? 1u : 0u};
                    EXPECT_NE(std::find(owners.begin(), owners.end(), rep), owners.end());
                }
            }
        }
    }
}

TEST(InducedPrefix, KeepsOnlyPrefixEdges) {
    const auto g = full_product(random_t_tree(2, 5, 4), secondary_factor::path(3));
    const auto p = induced_prefix(g, 7);
    EXPECT_EQ(p.n(), 7u);
    for (const auto &[a, b] : p.edges()) {
        EXPECT_LT(b, 7u);
        EXPECT_NE(std::find(g.edges().begin(), g.edges().end(), edge_t{a, b}), g.edges().end());
    }
    std::size_t expected = 0;
    for (const auto &[a, b] : g.edges()) {
        expected += b < 7;
    }
    EXPECT_EQ(p.m(), expected);
}

} // namespace
} // namespace oddprod
