#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dagrec {

class graph_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using NodeSet = std::set<int>;

// Ordered (tail, head) for directed edges; canonical (min, max) for
// undirected pairs.
using Edge = std::pair<int, int>;

inline Edge unordered(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

namespace detail {

inline void check_labels(const std::vector<std::string>& labels) {
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second)
            throw graph_error("duplicate node label: " + l);
    }
}

inline void check_node(int v, std::size_t n, const char* what) {
    if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw graph_error(std::string("unknown node in ") + what);
}

// Kahn's algorithm over the directed edge set only.
inline bool is_acyclic(std::size_t n, const std::set<Edge>& directed) {
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (const auto& [t, h] : directed) {
        ++indeg[h];
        out[t].push_back(h);
    }
    std::queue<int> q;
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] == 0) q.push(static_cast<int>(v));
    std::size_t seen = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        ++seen;
        for (int u : out[v])
            if (--indeg[u] == 0) q.push(u);
    }
    return seen == n;
}

} // namespace detail

// Fully directed acyclic graph. Nodes are dense indices 0..n-1; labels are
// presentation only.
struct Dag {
    std::vector<std::string> labels;
    std::set<Edge> edges; // (tail, head)

    Dag() = default;
    Dag(std::vector<std::string> labels_, std::set<Edge> edges_)
        : labels(std::move(labels_)), edges(std::move(edges_)) {
        validate();
    }

    std::size_t size() const { return labels.size(); }

    void validate() const {
        detail::check_labels(labels);
        std::set<Edge> pairs;
        for (const auto& [t, h] : edges) {
            detail::check_node(t, size(), "edge");
            detail::check_node(h, size(), "edge");
            if (t == h) throw graph_error("self-loop at " + labels[t]);
            if (!pairs.insert(unordered(t, h)).second)
                throw graph_error("two edges between " + labels[t] + " and " + labels[h]);
        }
        if (!detail::is_acyclic(size(), edges))
            throw graph_error("directed graph has a cycle");
    }

    int index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return static_cast<int>(i);
        throw graph_error("no node labelled " + label);
    }

    bool has_edge(int t, int h) const { return edges.count({t, h}) > 0; }
    bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }

    friend bool operator==(const Dag&, const Dag&) = default;
};

// Undirected graph, e.g. a recovered skeleton.
struct UGraph {
    std::vector<std::string> labels;
    std::set<Edge> edges; // canonical (min, max)

    UGraph() = default;
    UGraph(std::vector<std::string> labels_, std::set<Edge> raw)
        : labels(std::move(labels_)) {
        for (const auto& [a, b] : raw) edges.insert(unordered(a, b));
        validate();
    }

    std::size_t size() const { return labels.size(); }

    void validate() const {
        detail::check_labels(labels);
        for (const auto& [a, b] : edges) {
            detail::check_node(a, size(), "edge");
            detail::check_node(b, size(), "edge");
            if (a == b) throw graph_error("self-loop at " + labels[a]);
            if (a > b) throw graph_error("non-canonical undirected pair");
        }
    }

    int index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return static_cast<int>(i);
        throw graph_error("no node labelled " + label);
    }

    bool adjacent(int a, int b) const { return edges.count(unordered(a, b)) > 0; }

    friend bool operator==(const UGraph&, const UGraph&) = default;
};

// Mixed graph: disjoint directed and undirected edge sets. The directed
// part stays acyclic through every operation.
struct Pdag {
    std::vector<std::string> labels;
    std::set<Edge> directed;   // (tail, head)
    std::set<Edge> undirected; // canonical (min, max)

    Pdag() = default;
    Pdag(std::vector<std::string> labels_, std::set<Edge> directed_,
         std::set<Edge> undirected_raw)
        : labels(std::move(labels_)), directed(std::move(directed_)) {
        for (const auto& [a, b] : undirected_raw) undirected.insert(unordered(a, b));
        validate();
    }

    static Pdag from_dag(const Dag& d) { return Pdag(d.labels, d.edges, {}); }
    static Pdag from_ugraph(const UGraph& u) { return Pdag(u.labels, {}, u.edges); }

    std::size_t size() const { return labels.size(); }

    void validate() const {
        detail::check_labels(labels);
        std::set<Edge> pairs;
        for (const auto& [t, h] : directed) {
            detail::check_node(t, size(), "directed edge");
            detail::check_node(h, size(), "directed edge");
            if (t == h) throw graph_error("self-loop at " + labels[t]);
            if (!pairs.insert(unordered(t, h)).second)
                throw graph_error("two links between " + labels[t] + " and " + labels[h]);
        }
        for (const auto& [a, b] : undirected) {
            detail::check_node(a, size(), "undirected edge");
            detail::check_node(b, size(), "undirected edge");
            if (a == b) throw graph_error("self-loop at " + labels[a]);
            if (a > b) throw graph_error("non-canonical undirected pair");
            if (!pairs.insert({a, b}).second)
                throw graph_error("two links between " + labels[a] + " and " + labels[b]);
        }
        if (!detail::is_acyclic(size(), directed))
            throw graph_error("directed part has a cycle");
    }

    int index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return static_cast<int>(i);
        throw graph_error("no node labelled " + label);
    }

    bool has_directed(int t, int h) const { return directed.count({t, h}) > 0; }
    bool has_undirected(int a, int b) const {
        return undirected.count(unordered(a, b)) > 0;
    }
    bool adjacent(int a, int b) const {
        return has_directed(a, b) || has_directed(b, a) || has_undirected(a, b);
    }

    bool fully_directed() const { return undirected.empty(); }

    Dag as_dag() const {
        if (!fully_directed())
            throw graph_error("graph still has undirected edges");
        return Dag(labels, directed);
    }

    UGraph skeleton() const {
        std::set<Edge> sk = undirected;
        for (const auto& [t, h] : directed) sk.insert(unordered(t, h));
        UGraph u;
        u.labels = labels;
        u.edges = std::move(sk);
        return u;
    }

    // Moves {tail, head} from the undirected set to the directed set as
    // tail -> head. The only sanctioned path from undirected to directed.
    Pdag orient(int tail, int head) const {
        detail::check_node(tail, size(), "orient");
        detail::check_node(head, size(), "orient");
        if (!has_undirected(tail, head))
            throw graph_error("edge " + labels[tail] + " -- " + labels[head] +
                              " is not undirected");
        Pdag out = *this;
        out.undirected.erase(unordered(tail, head));
        out.directed.insert({tail, head});
        if (!detail::is_acyclic(size(), out.directed))
            throw graph_error("orienting " + labels[tail] + " -> " + labels[head] +
                              " closes a directed cycle");
        return out;
    }

    friend bool operator==(const Pdag&, const Pdag&) = default;
};

inline NodeSet adjacents(const Dag& g, int v) {
    detail::check_node(v, g.size(), "adjacents");
    NodeSet out;
    for (const auto& [t, h] : g.edges) {
        if (t == v) out.insert(h);
        if (h == v) out.insert(t);
    }
    return out;
}

inline NodeSet adjacents(const UGraph& g, int v) {
    detail::check_node(v, g.size(), "adjacents");
    NodeSet out;
    for (const auto& [a, b] : g.edges) {
        if (a == v) out.insert(b);
        if (b == v) out.insert(a);
    }
    return out;
}

inline NodeSet adjacents(const Pdag& g, int v) {
    detail::check_node(v, g.size(), "adjacents");
    NodeSet out;
    for (const auto& [t, h] : g.directed) {
        if (t == v) out.insert(h);
        if (h == v) out.insert(t);
    }
    for (const auto& [a, b] : g.undirected) {
        if (a == v) out.insert(b);
        if (b == v) out.insert(a);
    }
    return out;
}

// Nodes reachable from v by directed paths, excluding v itself.
inline NodeSet descendants(const Dag& g, int v) {
    detail::check_node(v, g.size(), "descendants");
    std::vector<std::vector<int>> out(g.size());
    for (const auto& [t, h] : g.edges) out[t].push_back(h);
    NodeSet seen;
    std::queue<int> q;
    q.push(v);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : out[u])
            if (seen.insert(w).second) q.push(w);
    }
    seen.erase(v);
    return seen;
}

// Unshielded colliders a -> c <- b with a, b nonadjacent, as (a, c, b)
// triples with a < b.
inline std::set<std::tuple<int, int, int>> unshielded_colliders(const Dag& g) {
    std::vector<std::vector<int>> parents(g.size());
    for (const auto& [t, h] : g.edges) parents[h].push_back(t);
    std::set<std::tuple<int, int, int>> out;
    for (std::size_t c = 0; c < g.size(); ++c) {
        const auto& ps = parents[c];
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                int a = std::min(ps[i], ps[j]), b = std::max(ps[i], ps[j]);
                if (!g.adjacent(a, b)) out.insert({a, static_cast<int>(c), b});
            }
    }
    return out;
}

} // namespace dagrec
