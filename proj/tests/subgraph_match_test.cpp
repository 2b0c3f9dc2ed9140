// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#include "si_oracle.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace schemaguard;

using namespace sgtest;

TEST(SubgraphMatch, AgreesWithBruteForce)
{
    std::mt19937 rng(20260101);
    int matched = 0;
    constexpr int kInstances = 3000;
    for (int i = 0; i < kInstances; ++i) {
        Instance in = random_instance(rng);
        const bool expected = brute_force_exists(in.pattern, in.host);
        Embedding e = find_monomorphism(in.pattern, in.host);
        ASSERT_FALSE(e.budget_exceeded);
        ASSERT_EQ(e.matched, expected) << "instance " << i;
        if (e.matched) {
            ++matched;
            ASSERT_EQ(e.mapping.size(), in.pattern.n);
            std::set<std::size_t> distinct(e.mapping.begin(), e.mapping.end());
            EXPECT_EQ(distinct.size(), in.pattern.n);
            EXPECT_TRUE(edge_ok(in.pattern, in.host, e.mapping));
            EXPECT_TRUE(candidates_ok(in.pattern, e.mapping));
        }
    }
    // Both outcomes must be well represented for the comparison to mean anything.
    EXPECT_GT(matched, kInstances / 10);
    EXPECT_LT(matched, kInstances * 9 / 10);
}

TEST(SubgraphMatch, DirectedEdgesRespectOrientation)
{
    TypedGraph h(2);
    h.add_edge(0, 1, 1, true);
    Pattern forward{2, {{0, 1, 1}}, {}};
    Embedding e = find_monomorphism(forward, h);
    ASSERT_TRUE(e.matched);
    EXPECT_EQ(e.mapping, (std::vector<std::size_t>{0, 1}));
    Pattern pinned{2, {{0, 1, 1}}, {std::vector<std::size_t>{1}, std::nullopt}};
    EXPECT_FALSE(find_monomorphism(pinned, h).matched);
}

TEST(SubgraphMatch, SurplusHostStructureIsTolerated)
{
    TypedGraph h(4);
    h.add_edge(0, 1, 0);
    h.add_edge(0, 1, 2);
    h.add_edge(1, 2, 0);
    h.add_edge(2, 3, 1);
    Pattern p{2, {{0, 1, 0}}, {}};
    EXPECT_TRUE(find_monomorphism(p, h).matched);
}

TEST(SubgraphMatch, InjectivityIsEnforced)
{
    TypedGraph h(2);
    h.add_edge(0, 1, 0);
    Pattern triangle{3, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}}, {}};
    EXPECT_FALSE(find_monomorphism(triangle, h).matched);
}

TEST(SubgraphMatch, BudgetIsReported)
{
    // A 6-clique pattern against a 12-vertex host with no 6-clique forces search.
    TypedGraph h(12);
    for (std::size_t u = 0; u < 12; ++u)
        for (std::size_t v = u + 1; v < 12; ++v)
            if ((u + v) % 5 != 0)
                h.add_edge(u, v, 0);
    Pattern p;
    p.n = 7;
    for (std::size_t a = 0; a < 7; ++a)
        for (std::size_t b = a + 1; b < 7; ++b)
            p.edges.push_back({a, b, 0});
    Embedding e = find_monomorphism(p, h, 50);
    EXPECT_TRUE(e.budget_exceeded);
    EXPECT_FALSE(e.matched);
    EXPECT_GE(e.expansions, 50u);
}

TEST(SubgraphMatch, EmptyPatternMatchesTrivially)
{
    TypedGraph h(0);
    EXPECT_TRUE(find_monomorphism(Pattern{}, h).matched);
}

TEST(SubgraphMatch, RejectsMalformedPattern)
{
    TypedGraph h(3);
    EXPECT_THROW(find_monomorphism(Pattern{2, {{0, 5, 0}}, {}}, h), std::out_of_range);
    EXPECT_THROW(h.add_edge(0, 9, 0), std::out_of_range);
    EXPECT_THROW(h.add_edge(0, 1, 40), std::out_of_range);
}
