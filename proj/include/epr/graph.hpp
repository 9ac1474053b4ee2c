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

#ifndef EPR_GRAPH_HPP
#define EPR_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace epr {

struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;

    bool operator==(const Edge &) const = default;
};

/// Positive-weight undirected graph on vertices [0, n).
///
/// Edges are canonicalized on construction: endpoints ordered u < v, list
/// sorted lexicographically, duplicates merged by summing their weights.
/// Instances are immutable once built.
class WeightedGraph {
   public:
    WeightedGraph() = default;
    WeightedGraph(int num_vertices, std::vector<Edge> edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge> &edges() const { return edges_; }

    std::span<const int> neighbors(int v) const;
    /// Edge indices incident to v, parallel to neighbors(v).
    std::span<const int> incident_edges(int v) const;
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    /// Index into edges() of the edge {a, b}, if present.
    std::optional<int> edge_index(int a, int b) const;
    double total_weight() const;

    /// Canonical text form; parse_graph(serialize()) reproduces the graph.
    std::string serialize() const;

    bool operator==(const WeightedGraph &other) const { return n_ == other.n_ && edges_ == other.edges_; }

   private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::vector<int>> incidence_;
};

enum class GraphErrorKind {
    kMalformedLine,
    kMissingHeader,
    kEdgeCountMismatch,
    kNonPositiveWeight,
    kSelfLoop,
    kVertexOutOfRange,
};

const char *to_string(GraphErrorKind kind);

/// Raised for invalid graph text or invalid edge data. line() is 1-based, or
/// 0 when the error is not tied to an input line.
class GraphError : public std::invalid_argument {
   public:
    GraphError(GraphErrorKind kind, int line, const std::string &detail);
    GraphErrorKind kind() const { return kind_; }
    int line() const { return line_; }

   private:
    GraphErrorKind kind_;
    int line_;
};

/// Reads the edge-list format: optional '#' comment lines, a header "n m",
/// then m lines "i j w". Vertex ids may be 0-based or 1-based; a file is
/// taken as 1-based when no id is 0 and some id equals n.
WeightedGraph parse_graph(std::istream &in);
WeightedGraph parse_graph(std::string_view text);
WeightedGraph load_graph(const std::string &path);

/// A vertex subset crossed by every edge, or nullopt for non-bipartite graphs.
/// Each connected component is 2-colored starting from its smallest vertex
/// on the included side.
std::optional<std::vector<int>> bipartition(const WeightedGraph &g);
bool is_triangle_free(const WeightedGraph &g);
bool is_connected(const WeightedGraph &g);

enum class GraphKind { kPath, kCycle, kStar, kCompleteBipartite, kRandom };

struct GeneratorParams {
    int n = 0;           // path, cycle, random: vertex count; star: leaf count
    int left = 0;        // complete bipartite part sizes
    int right = 0;
    double p = 0.5;      // random edge probability
    double w_min = 1.0;  // random weights are uniform in [w_min, w_max]
    double w_max = 1.0;
};

WeightedGraph generate(GraphKind kind, const GeneratorParams &params, std::uint64_t seed = 0);

/// Connected unit-weight graphs on exactly n vertices, one per isomorphism
/// class, in a deterministic order. Supports n <= 6.
std::vector<WeightedGraph> connected_graphs(int n);

}  // namespace epr

#endif
