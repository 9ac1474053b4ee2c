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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace epr {

const char *to_string(GraphErrorKind kind) {
    switch (kind) {
        case GraphErrorKind::kMalformedLine:
            return "malformed line";
        case GraphErrorKind::kMissingHeader:
            return "missing header";
        case GraphErrorKind::kEdgeCountMismatch:
            return "edge count mismatch";
        case GraphErrorKind::kNonPositiveWeight:
            return "non-positive weight";
        case GraphErrorKind::kSelfLoop:
            return "self-loop";
        case GraphErrorKind::kVertexOutOfRange:
            return "vertex id out of range";
    }
    return "unknown";
}

namespace {

std::string error_message(GraphErrorKind kind, int line, const std::string &detail) {
    std::ostringstream out;
    if (line > 0) {
        out << "line " << line << ": ";
    }
    out << to_string(kind);
    if (!detail.empty()) {
        out << " (" << detail << ")";
    }
    return out.str();
}

}  // namespace

GraphError::GraphError(GraphErrorKind kind, int line, const std::string &detail)
    : std::invalid_argument(error_message(kind, line, detail)), kind_(kind), line_(line) {}

WeightedGraph::WeightedGraph(int num_vertices, std::vector<Edge> edges) : n_(num_vertices) {
    if (num_vertices < 0) {
        throw GraphError(GraphErrorKind::kVertexOutOfRange, 0, "negative vertex count");
    }
    std::map<std::pair<int, int>, double> merged;
    for (const Edge &e : edges) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
            throw GraphError(GraphErrorKind::kVertexOutOfRange, 0,
                             std::to_string(e.u) + "-" + std::to_string(e.v));
        }
        if (e.u == e.v) {
            throw GraphError(GraphErrorKind::kSelfLoop, 0, std::to_string(e.u));
        }
        if (!(e.w > 0.0) || !std::isfinite(e.w)) {
            throw GraphError(GraphErrorKind::kNonPositiveWeight, 0, std::to_string(e.w));
        }
        merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
    }
    edges_.reserve(merged.size());
    for (const auto &[key, w] : merged) {
        edges_.push_back({key.first, key.second, w});
    }
    adjacency_.assign(n_, {});
    incidence_.assign(n_, {});
    for (int k = 0; k < num_edges(); ++k) {
        const Edge &e = edges_[k];
        adjacency_[e.u].push_back(e.v);
        incidence_[e.u].push_back(k);
        adjacency_[e.v].push_back(e.u);
        incidence_[e.v].push_back(k);
    }
}

std::span<const int> WeightedGraph::neighbors(int v) const { return adjacency_.at(v); }

std::span<const int> WeightedGraph::incident_edges(int v) const { return incidence_.at(v); }

std::optional<int> WeightedGraph::edge_index(int a, int b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) {
        return std::nullopt;
    }
    const auto &adj = adjacency_[a];
    for (size_t k = 0; k < adj.size(); ++k) {
        if (adj[k] == b) {
            return incidence_[a][k];
        }
    }
    return std::nullopt;
}

double WeightedGraph::total_weight() const {
    double total = 0;
    for (const Edge &e : edges_) {
        total += e.w;
    }
    return total;
}

std::string WeightedGraph::serialize() const {
    std::ostringstream out;
    out << n_ << ' ' << edges_.size() << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const Edge &e : edges_) {
        out << e.u << ' ' << e.v << ' ' << e.w << '\n';
    }
    return out.str();
}

namespace {

struct RawEdge {
    long long u;
    long long v;
    double w;
    int line;
};

bool is_blank_or_comment(const std::string &line) {
    for (char c : line) {
        if (c == '#') {
            return true;
        }
        if (!std::isspace(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

}  // namespace

WeightedGraph parse_graph(std::istream &in) {
    std::string line;
    int line_no = 0;
    long long n = -1;
    long long m = -1;
    std::vector<RawEdge> raw;

    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        std::istringstream fields(line);
        if (n < 0) {
            std::string extra;
            if (!(fields >> n >> m) || (fields >> extra) || n < 0 || m < 0) {
                throw GraphError(GraphErrorKind::kMalformedLine, line_no, "expected header 'n m'");
            }
            continue;
        }
        RawEdge e{};
        e.line = line_no;
        std::string w_text;
        std::string extra;
        if (!(fields >> e.u >> e.v >> w_text) || (fields >> extra)) {
            throw GraphError(GraphErrorKind::kMalformedLine, line_no, "expected 'i j w'");
        }
        size_t consumed = 0;
        try {
            e.w = std::stod(w_text, &consumed);
        } catch (const std::exception &) {
            consumed = 0;
        }
        if (consumed != w_text.size() || !std::isfinite(e.w)) {
            throw GraphError(GraphErrorKind::kMalformedLine, line_no, "bad weight '" + w_text + "'");
        }
        raw.push_back(e);
    }
    if (n < 0) {
        throw GraphError(GraphErrorKind::kMissingHeader, line_no, "no 'n m' line");
    }
    if (static_cast<long long>(raw.size()) != m) {
        throw GraphError(GraphErrorKind::kEdgeCountMismatch, line_no,
                         "header says " + std::to_string(m) + ", found " + std::to_string(raw.size()));
    }

    bool saw_zero = false;
    bool saw_n = false;
    for (const RawEdge &e : raw) {
        saw_zero = saw_zero || e.u == 0 || e.v == 0;
        saw_n = saw_n || e.u == n || e.v == n;
    }
    const long long offset = (!saw_zero && saw_n) ? 1 : 0;

    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const RawEdge &e : raw) {
        const long long u = e.u - offset;
        const long long v = e.v - offset;
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw GraphError(GraphErrorKind::kVertexOutOfRange, e.line,
                             std::to_string(e.u) + " " + std::to_string(e.v));
        }
        if (u == v) {
            throw GraphError(GraphErrorKind::kSelfLoop, e.line, std::to_string(e.u));
        }
        if (!(e.w > 0.0)) {
            throw GraphError(GraphErrorKind::kNonPositiveWeight, e.line, std::to_string(e.w));
        }
        edges.push_back({static_cast<int>(u), static_cast<int>(v), e.w});
    }
    return WeightedGraph(static_cast<int>(n), std::move(edges));
}

WeightedGraph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_graph(in);
}

WeightedGraph load_graph(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph file '" + path + "'");
    }
    return parse_graph(in);
}

std::optional<std::vector<int>> bipartition(const WeightedGraph &g) {
    const int n = g.num_vertices();
    std::vector<int> color(n, -1);
    std::vector<int> stack;
    for (int root = 0; root < n; ++root) {
        if (color[root] >= 0) {
            continue;
        }
        color[root] = 0;
        stack.push_back(root);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (color[w] < 0) {
                    color[w] = 1 - color[v];
                    stack.push_back(w);
                } else if (color[w] == color[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    std::vector<int> side;
    for (int v = 0; v < n; ++v) {
        if (color[v] == 0) {
            side.push_back(v);
        }
    }
    return side;
}

bool is_triangle_free(const WeightedGraph &g) {
    for (const Edge &e : g.edges()) {
        for (int w : g.neighbors(e.u)) {
            if (w != e.v && g.edge_index(w, e.v)) {
                return false;
            }
        }
    }
    return true;
}

bool is_connected(const WeightedGraph &g) {
    const int n = g.num_vertices();
    if (n <= 1) {
        return true;
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

WeightedGraph generate(GraphKind kind, const GeneratorParams &params, std::uint64_t seed) {
    std::vector<Edge> edges;
    switch (kind) {
        case GraphKind::kPath: {
            if (params.n < 1) {
                throw std::invalid_argument("path needs n >= 1");
            }
            for (int v = 0; v + 1 < params.n; ++v) {
                edges.push_back({v, v + 1, 1.0});
            }
            return WeightedGraph(params.n, std::move(edges));
        }
        case GraphKind::kCycle: {
            if (params.n < 3) {
                throw std::invalid_argument("cycle needs n >= 3");
            }
            for (int v = 0; v < params.n; ++v) {
                edges.push_back({v, (v + 1) % params.n, 1.0});
            }
            return WeightedGraph(params.n, std::move(edges));
        }
        case GraphKind::kStar: {
            if (params.n < 1) {
                throw std::invalid_argument("star needs at least one leaf");
            }
            for (int leaf = 1; leaf <= params.n; ++leaf) {
                edges.push_back({0, leaf, 1.0});
            }
            return WeightedGraph(params.n + 1, std::move(edges));
        }
        case GraphKind::kCompleteBipartite: {
            if (params.left < 1 || params.right < 1) {
                throw std::invalid_argument("complete bipartite needs both sides non-empty");
            }
            for (int a = 0; a < params.left; ++a) {
                for (int b = 0; b < params.right; ++b) {
                    edges.push_back({a, params.left + b, 1.0});
                }
            }
            return WeightedGraph(params.left + params.right, std::move(edges));
        }
        case GraphKind::kRandom: {
            if (params.n < 1 || params.p < 0.0 || params.p > 1.0) {
                throw std::invalid_argument("random graph needs n >= 1 and p in [0, 1]");
            }
            if (!(params.w_min > 0.0) || params.w_max < params.w_min) {
                throw std::invalid_argument("random graph needs 0 < w_min <= w_max");
            }
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> coin(0.0, 1.0);
            std::uniform_real_distribution<double> weight(params.w_min, params.w_max);
            for (int a = 0; a < params.n; ++a) {
                for (int b = a + 1; b < params.n; ++b) {
                    if (coin(rng) < params.p) {
                        double w = params.w_min == params.w_max ? params.w_min : weight(rng);
                        edges.push_back({a, b, w});
                    }
                }
            }
            return WeightedGraph(params.n, std::move(edges));
        }
    }
    throw std::invalid_argument("unknown graph kind");
}

std::vector<WeightedGraph> connected_graphs(int n) {
    if (n < 1 || n > 6) {
        throw std::invalid_argument("connected_graphs supports 1 <= n <= 6");
    }
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            slots.emplace_back(a, b);
        }
    }
    std::vector<std::vector<int>> slot_of(n, std::vector<int>(n, -1));
    for (size_t s = 0; s < slots.size(); ++s) {
        slot_of[slots[s].first][slots[s].second] = static_cast<int>(s);
        slot_of[slots[s].second][slots[s].first] = static_cast<int>(s);
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::set<std::uint32_t> seen;
    std::vector<WeightedGraph> out;
    const std::uint32_t total = 1u << slots.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        std::uint32_t canon = mask;
        for (const auto &p : perms) {
            std::uint32_t image = 0;
            for (size_t s = 0; s < slots.size(); ++s) {
                if (mask >> s & 1u) {
                    image |= 1u << slot_of[p[slots[s].first]][p[slots[s].second]];
                }
            }
            canon = std::min(canon, image);
        }
        if (!seen.insert(canon).second) {
            continue;
        }
        std::vector<Edge> edges;
        for (size_t s = 0; s < slots.size(); ++s) {
            if (canon >> s & 1u) {
                edges.push_back({slots[s].first, slots[s].second, 1.0});
            }
        }
        WeightedGraph g(n, std::move(edges));
        if (is_connected(g)) {
            out.push_back(std::move(g));
        }
    }
    return out;
}

}  // namespace epr
