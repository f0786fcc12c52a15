#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gmle/errors.hpp"

namespace gmle {

// Unordered pair of vertex labels, stored with min first.
struct UPair {
    int a, b;
    UPair(int x, int y) : a(std::min(x, y)), b(std::max(x, y)) {}
    friend auto operator<=>(const UPair&, const UPair&) = default;
};

// Ordered pair: a directed edge a -> b.
struct DPair {
    int a, b;
    friend auto operator<=>(const DPair&, const DPair&) = default;
};

struct Partition {
    std::vector<int> u;  // vertices carrying the undirected block
    std::vector<int> w;  // vertices carrying the bidirected block
};

// A mixed graph with undirected, directed and bidirected edges over
// integer-labeled vertices. Construction enforces structural well-formedness
// (declared endpoints, distinct positive labels, no repeated edge of one
// type); the loopless/acyclic/double-edge rules are separate predicates so
// that offending graphs can still be represented and diagnosed.
class MixedGraph {
public:
    MixedGraph(std::vector<int> vertices, std::vector<UPair> undirected, std::vector<DPair> directed,
               std::vector<UPair> bidirected)
        : vertices_(std::move(vertices)) {
        std::set<int> seen;
        for (int v : vertices_) {
            if (v <= 0) throw graph_error("vertex labels must be positive, got " + std::to_string(v));
            if (!seen.insert(v).second)
                throw graph_error("duplicate vertex label " + std::to_string(v));
        }
        auto check_endpoint = [&](int v) {
            if (!seen.count(v))
                throw graph_error("edge references undeclared vertex " + std::to_string(v));
        };
        for (const auto& e : undirected) {
            check_endpoint(e.a);
            check_endpoint(e.b);
            if (!undirected_.insert(e).second)
                throw graph_error("repeated undirected edge {" + std::to_string(e.a) + "," +
                                  std::to_string(e.b) + "}");
        }
        for (const auto& e : directed) {
            check_endpoint(e.a);
            check_endpoint(e.b);
            if (!directed_.insert(e).second)
                throw graph_error("repeated directed edge " + std::to_string(e.a) + "->" +
                                  std::to_string(e.b));
        }
        for (const auto& e : bidirected) {
            check_endpoint(e.a);
            check_endpoint(e.b);
            if (!bidirected_.insert(e).second)
                throw graph_error("repeated bidirected edge {" + std::to_string(e.a) + "," +
                                  std::to_string(e.b) + "}");
        }
    }

    const std::vector<int>& vertices() const { return vertices_; }
    const std::set<UPair>& undirected() const { return undirected_; }
    const std::set<DPair>& directed() const { return directed_; }
    const std::set<UPair>& bidirected() const { return bidirected_; }
    std::size_t order() const { return vertices_.size(); }

    // position of a label in the declared vertex order
    std::size_t position(int label) const {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i] == label) return i;
        throw graph_error("unknown vertex " + std::to_string(label));
    }

private:
    std::vector<int> vertices_;
    std::set<UPair> undirected_;
    std::set<DPair> directed_;
    std::set<UPair> bidirected_;
};

inline bool is_loopless(const MixedGraph& g) {
    for (const auto& e : g.undirected())
        if (e.a == e.b) return false;
    for (const auto& e : g.directed())
        if (e.a == e.b) return false;
    for (const auto& e : g.bidirected())
        if (e.a == e.b) return false;
    return true;
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

// Components of the undirected+bidirected subgraph, as a map label -> component id.
inline std::map<int, int> contraction_components(const MixedGraph& g) {
    UnionFind uf(g.order());
    auto idx = [&](int label) { return static_cast<int>(g.position(label)); };
    for (const auto& e : g.undirected()) uf.unite(idx(e.a), idx(e.b));
    for (const auto& e : g.bidirected()) uf.unite(idx(e.a), idx(e.b));
    std::map<int, int> comp;
    for (int v : g.vertices()) comp[v] = uf.find(idx(v));
    return comp;
}

}  // namespace detail

// The quotient digraph: contract each connected component of the
// undirected+bidirected subgraph to a node, keep directed edges between
// distinct components (a directed edge inside one component contracts to a
// loop, which is not a directed cycle).
inline std::set<DPair> directed_quotient(const MixedGraph& g) {
    auto comp = detail::contraction_components(g);
    std::set<DPair> q;
    for (const auto& e : g.directed()) {
        int ca = comp.at(e.a), cb = comp.at(e.b);
        if (ca != cb) q.insert({ca, cb});
    }
    return q;
}

// A directed cycle here means a cycle of directed edges after identifying
// vertices joined by undirected or bidirected edges (2-cycles created by the
// contraction count).
inline bool is_directed_cyclic(const MixedGraph& g) {
    auto q = directed_quotient(g);
    std::map<int, std::vector<int>> adj;
    std::set<int> nodes;
    for (const auto& e : q) {
        adj[e.a].push_back(e.b);
        nodes.insert(e.a);
        nodes.insert(e.b);
    }
    std::map<int, int> state;  // 0 unseen, 1 on stack, 2 done
    std::vector<std::pair<int, std::size_t>> stack;
    for (int start : nodes) {
        if (state[start] != 0) continue;
        stack.push_back({start, 0});
        state[start] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            auto it = adj.find(v);
            if (it == adj.end() || i >= it->second.size()) {
                state[v] = 2;
                stack.pop_back();
                continue;
            }
            int next = it->second[i++];
            if (state[next] == 1) return true;
            if (state[next] == 0) {
                state[next] = 1;
                stack.push_back({next, 0});
            }
        }
    }
    return false;
}

// Declared vertex order respects every directed edge (i -> j implies i
// earlier than j).
inline bool topological_check(const MixedGraph& g) {
    for (const auto& e : g.directed())
        if (g.position(e.a) >= g.position(e.b)) return false;
    return true;
}

// Throws unless g is a valid loopless mixed graph: no loops, only
// directed-undirected and directed-bidirected double edges, and no directed
// cycles in the contracted sense.
inline void validate_lmg(const MixedGraph& g) {
    if (!is_loopless(g)) throw graph_error("graph has a loop");
    for (const auto& e : g.undirected()) {
        if (g.bidirected().count(e))
            throw graph_error("forbidden double edge (undirected+bidirected) on {" +
                              std::to_string(e.a) + "," + std::to_string(e.b) + "}");
    }
    if (is_directed_cyclic(g)) throw graph_error("graph has a directed cycle");
}

// Vertex partition V = U + W: endpoints of undirected edges are forced into
// U, endpoints of bidirected edges into W. A vertex touching neither kind
// joins W when it meets a directed edge (its noise variance then lives in
// the bidirected block) and U when fully isolated. Checks the ordering
// conventions: U comes before W in the declared order, and i -> j implies
// i earlier than j.
inline Partition partition_lmg(const MixedGraph& g) {
    validate_lmg(g);
    std::set<int> in_u, in_w;
    for (const auto& e : g.undirected()) {
        in_u.insert(e.a);
        in_u.insert(e.b);
    }
    for (const auto& e : g.bidirected()) {
        in_w.insert(e.a);
        in_w.insert(e.b);
    }
    for (int v : in_u)
        if (in_w.count(v))
            throw partition_error("vertex " + std::to_string(v) +
                                  " touches both undirected and bidirected edges");
    std::set<int> touched_directed;
    for (const auto& e : g.directed()) {
        touched_directed.insert(e.a);
        touched_directed.insert(e.b);
    }
    for (int v : g.vertices()) {
        if (in_u.count(v) || in_w.count(v)) continue;
        if (touched_directed.count(v))
            in_w.insert(v);
        else
            in_u.insert(v);
    }
    for (const auto& e : g.directed()) {
        if (in_w.count(e.a) && in_u.count(e.b))
            throw partition_error("directed edge " + std::to_string(e.a) + "->" +
                                  std::to_string(e.b) + " runs from W to U");
    }
    // ordering conventions on the declared vertex order
    for (const auto& e : g.directed()) {
        if (g.position(e.a) >= g.position(e.b))
            throw ordering_error("directed edge " + std::to_string(e.a) + "->" +
                                     std::to_string(e.b) +
                                     " violates the vertex ordering (tail must come first)",
                                 e.a, e.b);
    }
    bool seen_w = false;
    int last_w = 0;
    for (int v : g.vertices()) {
        if (in_w.count(v)) {
            seen_w = true;
            last_w = v;
        } else if (seen_w) {
            throw ordering_error("vertex " + std::to_string(v) + " of U is declared after vertex " +
                                     std::to_string(last_w) +
                                     " of W (all of U must come before W)",
                                 last_w, v);
        }
    }
    Partition p;
    for (int v : g.vertices()) {
        if (in_u.count(v))
            p.u.push_back(v);
        else
            p.w.push_back(v);
    }
    return p;
}

}  // namespace gmle
