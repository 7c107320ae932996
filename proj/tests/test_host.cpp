#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oddprod/host.hpp"

namespace oddprod {
namespace {

elim_ordered_host triangle() { return {2, {{}, {1}, {1, 2}}}; }

TEST(ValidateHost, TriangleIsA2Tree) {
    EXPECT_TRUE(validate_host(triangle()).ok());
    EXPECT_TRUE(validate_host(triangle(), /*require_full_t_tree=*/true).ok());
}

TEST(ValidateHost, PathIsA1Tree) {
    const auto host = path_host(6);
    EXPECT_TRUE(validate_host(host, true).ok());
    EXPECT_EQ(host.edge_count(), 5u);
}

TEST(ValidateHost, ReportsMissingCliqueEdge) {
    // 1 is not in C_3, so {1,3} is not an edge and C_4 = {1,3} is no clique.
    const elim_ordered_host host(2, {{}, {}, {2}, {1, 3}});
    const auto report = validate_host(host);
    ASSERT_FALSE(report.ok());
    ASSERT_TRUE(report.has_rule("host.clique"));
    for (const auto &v : report.violations) {
        if (v.rule == "host.clique") {
            EXPECT_EQ(v.indices.front(), 4);
        }
    }
}

TEST(ValidateHost, StructuralErrorsAreViolations) {
    EXPECT_TRUE(validate_host(elim_ordered_host(1, {{}, {3}, {1}})).has_rule("host.index"));
    EXPECT_TRUE(validate_host(elim_ordered_host(1, {{}, {0}})).has_rule("host.index"));
    EXPECT_TRUE(validate_host(elim_ordered_host(1, {{}, {2}})).has_rule("host.index"));
    EXPECT_TRUE(validate_host(elim_ordered_host(2, {{}, {1, 1}})).has_rule("host.duplicate"));
}

TEST(ValidateHost, SizeRule) {
    EXPECT_TRUE(validate_host(elim_ordered_host(1, {{}, {1}, {1, 2}})).has_rule("host.size"));
    // Width-2 ordering that is not a full 2-tree: accepted unless fullness is required.
    const elim_ordered_host partial(2, {{}, {1}, {2}});
    EXPECT_TRUE(validate_host(partial).ok());
    EXPECT_TRUE(validate_host(partial, true).has_rule("host.size"));
}

TEST(StarProperty, ReportsExample) {
    const elim_ordered_host host(2, {{}, {}, {2}, {1, 3}});
    const auto report = check_star_property(host);
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0].rule, "host.star");
    EXPECT_EQ(report.violations[0].indices, (std::vector<std::int64_t>{3, 4, 1}));
}

TEST(StarProperty, SingleVertex) { EXPECT_TRUE(check_star_property(elim_ordered_host(0, {{}})).ok()); }

// Every host on up to 6 vertices: clique back-neighbourhoods imply the
// ancestor-closure property.
TEST(StarProperty, CliqueRuleImpliesStarExhaustively) {
    for (index_t r = 1; r <= 6; ++r) {
        std::size_t total_bits = 0;
        for (index_t i = 1; i <= r; ++i) {
            total_bits += i - 1;
        }
        std::size_t accepted = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total_bits); ++mask) {
            std::vector<std::vector<index_t>> back(r);
            std::size_t bit = 0;
            for (index_t i = 1; i <= r; ++i) {
                for (index_t a = 1; a < i; ++a, ++bit) {
                    if (mask >> bit & 1) {
                        back[i - 1].push_back(a);
                    }
                }
            }
            const elim_ordered_host host(r, back);
            const auto report = validate_host(host);
            if (!report.has_rule("host.clique") && !report.has_rule("host.size")) {
                ++accepted;
                EXPECT_TRUE(check_star_property(host).ok()) << "r=" << r << " mask=" << mask;
            }
        }
        EXPECT_GT(accepted, 0u);
    }
}

TEST(RandomTTree, SmallCases) {
    const auto tree = random_t_tree(1, 5, 11);
    EXPECT_TRUE(validate_host(tree, true).ok());
    EXPECT_EQ(tree.edge_count(), 4u);
    // Connected: every vertex after the first has exactly one earlier neighbour.
    for (index_t i = 2; i <= 5; ++i) {
        EXPECT_EQ(tree.back_clique(i).size(), 1u);
    }
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
        EXPECT_EQ(random_t_tree(2, 3, seed), triangle());
    }
}

TEST(RandomTTree, Deterministic) {
    EXPECT_EQ(random_t_tree(3, 50, 1234), random_t_tree(3, 50, 1234));
    EXPECT_NE(random_t_tree(3, 50, 1234), random_t_tree(3, 50, 1235));
}

TEST(RandomTTree, RejectsTooFewVertices) {
    EXPECT_THROW(random_t_tree(3, 3, 0), invalid_parameter);
    try {
        random_t_tree(2, 1, 0);
    } catch (const invalid_parameter &e) {
        EXPECT_EQ(e.rule(), "param.r");
    }
}

TEST(RandomTTree, WidthZeroIsEdgeless) {
    const auto host = random_t_tree(0, 4, 5);
    EXPECT_TRUE(validate_host(host, true).ok());
    EXPECT_EQ(host.edge_count(), 0u);
}

TEST(HostNeighbours, Examples) {
    EXPECT_EQ(host_neighbours(triangle(), 1), (std::vector<index_t>{2, 3}));
    EXPECT_EQ(host_neighbours(path_host(3), 2), (std::vector<index_t>{1, 3}));
    EXPECT_THROW(host_neighbours(path_host(3), 4), invalid_vertex);
    EXPECT_THROW(host_neighbours(path_host(3), 0), invalid_vertex);
}

TEST(RandomTTree, PropertiesOverManySeeds) {
    std::mt19937_64 rng(2024);
    for (int run = 0; run < 1000; ++run) {
        const index_t t = 1 + run % 4;
        const index_t r = std::uniform_int_distribution<index_t>(t + 1, 40)(rng);
        const auto host = random_t_tree(t, r, rng());
        ASSERT_TRUE(validate_host(host, true).ok()) << "t=" << t << " r=" << r;
        ASSERT_TRUE(check_star_property(host).ok());
        EXPECT_EQ(host.edge_count(), t * (t + 1) / 2 + std::size_t{t} * (r - t - 1));

        // Edge-list scan as the independent route to degrees and symmetry.
        std::vector<std::set<index_t>> scan(r + 1);
        for (index_t b = 1; b <= r; ++b) {
            for (index_t a : host.back_cliques()[b - 1]) {
                scan[a].insert(b);
                scan[b].insert(a);
            }
        }
        std::size_t forward_of_1 = 0;
        for (index_t m = 1; m <= r; ++m) {
            for (index_t a : host.back_clique(m)) {
                forward_of_1 += a == 1;
            }
        }
        EXPECT_EQ(host_neighbours(host, 1).size(), forward_of_1);
        for (index_t i = 1; i <= r; ++i) {
            const auto nbrs = host_neighbours(host, i);
            ASSERT_EQ(std::set<index_t>(nbrs.begin(), nbrs.end()), scan[i]);
            for (index_t m : nbrs) {
                const auto back = host_neighbours(host, m);
                EXPECT_TRUE(std::binary_search(back.begin(), back.end(), i));
            }
        }
    }
}

} // namespace
} // namespace oddprod
