// Copyright 2026 The eprapprox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "epr/graph.hpp"

#include <gtest/gtest.h>

#include <set>

namespace epr {
namespace {

bool every_edge_crosses(const WeightedGraph &g, const std::vector<int> &part) {
    std::set<int> side(part.begin(), part.end());
    for (const Edge &e : g.edges()) {
        if (side.count(e.u) == side.count(e.v)) {
            return false;
        }
    }
    return true;
}

TEST(ParseGraph, SmallestInstance) {
    const WeightedGraph g = parse_graph("2 1\n0 1 1.0");
    EXPECT_EQ(g.num_vertices(), 2);
    ASSERT_EQ(g.num_edges(), 1);
    EXPECT_EQ(g.edges()[0], (Edge{0, 1, 1.0}));
}

TEST(ParseGraph, PathWithComments) {
    const WeightedGraph g = parse_graph("# path\n4 3\n0 1 1\n1 2 1\n2 3 1\n");
    EXPECT_EQ(g, generate(GraphKind::kPath, {.n = 4}));
}

TEST(ParseGraph, OneBasedIdsAreShifted) {
    const WeightedGraph g = parse_graph("3 2\n1 2 1\n2 3 2\n");
    EXPECT_EQ(g.edges()[0], (Edge{0, 1, 1.0}));
    EXPECT_EQ(g.edges()[1], (Edge{1, 2, 2.0}));
}

TEST(ParseGraph, RejectsNonPositiveWeight) {
    try {
        parse_graph("2 1\n0 1 -1.0");
        FAIL() << "expected GraphError";
    } catch (const GraphError &e) {
        EXPECT_EQ(e.kind(), GraphErrorKind::kNonPositiveWeight);
        EXPECT_EQ(e.line(), 2);
    }
}

TEST(ParseGraph, ReportsLineOfMalformedEdge) {
    try {
        parse_graph("# c\n4 3\n0 1 1\n1 two 1\n2 3 1\n");
        FAIL() << "expected GraphError";
    } catch (const GraphError &e) {
        EXPECT_EQ(e.kind(), GraphErrorKind::kMalformedLine);
        EXPECT_EQ(e.line(), 4);
        EXPECT_NE(std::string(e.what()).find("4"), std::string::npos);
    }
}

TEST(ParseGraph, RejectsStructuralErrors) {
    EXPECT_THROW(parse_graph(""), GraphError);
    EXPECT_THROW(parse_graph("3 2\n0 1 1\n"), GraphError);
    EXPECT_THROW(parse_graph("3 1\n1 1 1\n"), GraphError);
    EXPECT_THROW(parse_graph("3 1\n0 5 1\n"), GraphError);
}

TEST(WeightedGraph, DuplicatesMergeByWeight) {
    const WeightedGraph g(3, {{1, 0, 0.5}, {0, 1, 1.5}, {2, 1, 1.0}});
    ASSERT_EQ(g.num_edges(), 2);
    EXPECT_EQ(g.edges()[0], (Edge{0, 1, 2.0}));
    EXPECT_DOUBLE_EQ(g.total_weight(), 3.0);
    EXPECT_EQ(g.degree(1), 2);
    EXPECT_EQ(g.edge_index(2, 1), 1);
    EXPECT_FALSE(g.edge_index(0, 2).has_value());
}

TEST(WeightedGraph, IsolatedVerticesAllowed) {
    const WeightedGraph g(5, {{0, 1, 1.0}});
    EXPECT_EQ(g.degree(4), 0);
    EXPECT_FALSE(is_connected(g));
}

TEST(WeightedGraph, SerializeRoundTrip) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const WeightedGraph g = generate(GraphKind::kRandom, {.n = 7, .p = 0.4, .w_min = 0.25, .w_max = 3.0}, seed);
        EXPECT_EQ(parse_graph(g.serialize()), g);
    }
}

TEST(Bipartition, PathAndCycle) {
    const auto p4 = bipartition(generate(GraphKind::kPath, {.n = 4}));
    ASSERT_TRUE(p4.has_value());
    EXPECT_EQ(*p4, (std::vector<int>{0, 2}));
    const auto c4 = bipartition(generate(GraphKind::kCycle, {.n = 4}));
    ASSERT_TRUE(c4.has_value());
    EXPECT_EQ(*c4, (std::vector<int>{0, 2}));
    EXPECT_FALSE(bipartition(generate(GraphKind::kCycle, {.n = 3})).has_value());
}

TEST(Bipartition, EveryEdgeCrosses) {
    const std::vector<WeightedGraph> graphs = {
        generate(GraphKind::kStar, {.n = 5}),
        generate(GraphKind::kCompleteBipartite, {.left = 2, .right = 3}),
        generate(GraphKind::kCycle, {.n = 8}),
        WeightedGraph(6, {{0, 1, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}}),
    };
    for (const WeightedGraph &g : graphs) {
        const auto part = bipartition(g);
        ASSERT_TRUE(part.has_value()) << g.serialize();
        EXPECT_TRUE(every_edge_crosses(g, *part)) << g.serialize();
    }
}

TEST(TriangleFree, Examples) {
    EXPECT_TRUE(is_triangle_free(generate(GraphKind::kPath, {.n = 4})));
    EXPECT_FALSE(is_triangle_free(generate(GraphKind::kCycle, {.n = 3})));
    EXPECT_TRUE(is_triangle_free(generate(GraphKind::kCycle, {.n = 4})));
    EXPECT_FALSE(is_triangle_free(WeightedGraph(4, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 1}})));
}

TEST(Generate, Shapes) {
    const WeightedGraph c4 = generate(GraphKind::kCycle, {.n = 4});
    EXPECT_EQ(c4.num_edges(), 4);
    for (int v = 0; v < 4; ++v) {
        EXPECT_EQ(c4.degree(v), 2);
    }
    const WeightedGraph star = generate(GraphKind::kStar, {.n = 3});
    EXPECT_EQ(star.num_vertices(), 4);
    EXPECT_EQ(star.degree(0), 3);
    const WeightedGraph k23 = generate(GraphKind::kCompleteBipartite, {.left = 2, .right = 3});
    EXPECT_EQ(k23.num_edges(), 6);
}

TEST(Generate, RandomIsDeterministic) {
    const GeneratorParams p{.n = 6, .p = 0.5, .w_min = 0.5, .w_max = 2.0};
    EXPECT_EQ(generate(GraphKind::kRandom, p, 7), generate(GraphKind::kRandom, p, 7));
    const WeightedGraph g = generate(GraphKind::kRandom, p, 7);
    for (const Edge &e : g.edges()) {
        EXPECT_GE(e.w, 0.5);
        EXPECT_LE(e.w, 2.0);
        EXPECT_LT(e.u, e.v);
    }
}

TEST(ConnectedGraphs, CountsMatchKnownSequence) {
    // Connected unlabeled graphs on n vertices: 1, 1, 2, 6, 21, 112.
    const int expected[] = {0, 1, 1, 2, 6, 21, 112};
    for (int n = 1; n <= 6; ++n) {
        const auto graphs = connected_graphs(n);
        EXPECT_EQ(static_cast<int>(graphs.size()), expected[n]) << "n = " << n;
        for (const WeightedGraph &g : graphs) {
            EXPECT_TRUE(is_connected(g));
            EXPECT_EQ(g.num_vertices(), n);
        }
    }
}

}  // namespace
}  // namespace epr
