#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "dagrec/graph.hpp"

namespace dagrec {

// Orientations committed when a node is removed. Label-based so the record
// stays meaningful after the graph is re-indexed.
struct RemovalRecord {
    std::string removed;
    std::vector<std::pair<std::string, std::string>> enforced; // (tail, head)
};

namespace detail {

// Sink-candidate test restricted to nodes with active[v] == true.
inline bool removable_under_mask(const Pdag& g, int v,
                                 const std::vector<char>& active) {
    for (const auto& [t, h] : g.directed)
        if (t == v && active[h]) return false;
    NodeSet nbrs, unbrs;
    for (const auto& [t, h] : g.directed) {
        if (h == v && active[t]) nbrs.insert(t);
        if (t == v && active[h]) nbrs.insert(h);
    }
    for (const auto& [a, b] : g.undirected) {
        if (a == v && active[b]) { nbrs.insert(b); unbrs.insert(b); }
        if (b == v && active[a]) { nbrs.insert(a); unbrs.insert(a); }
    }
    for (int u : unbrs)
        for (int w : nbrs)
            if (w != u && !g.adjacent(u, w)) return false;
    return true;
}

} // namespace detail

// Nodes with no outgoing arrow whose undirected neighbors are adjacent to
// every other neighbor. Removing such a node as a sink preserves the
// separation statements of the remaining graph.
inline NodeSet removable_nodes(const Pdag& g) {
    std::vector<char> active(g.size(), 1);
    NodeSet out;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (detail::removable_under_mask(g, static_cast<int>(v), active))
            out.insert(static_cast<int>(v));
    return out;
}

// Removes v after turning it into a sink: every undirected edge u -- v is
// committed as u -> v and recorded. The returned graph is re-indexed over
// the surviving labels.
inline std::pair<Pdag, RemovalRecord> remove_node(const Pdag& g, int v) {
    detail::check_node(v, g.size(), "remove_node");
    std::vector<char> active(g.size(), 1);
    if (!detail::removable_under_mask(g, v, active)) {
        for (const auto& [t, h] : g.directed)
            if (t == v)
                throw graph_error("node " + g.labels[v] + " not removable: outgoing arrow to " +
                                  g.labels[h]);
        throw graph_error("node " + g.labels[v] +
                          " not removable: an undirected neighbor is nonadjacent to another neighbor");
    }

    RemovalRecord rec;
    rec.removed = g.labels[v];
    for (const auto& [a, b] : g.undirected) {
        if (a == v) rec.enforced.push_back({g.labels[b], g.labels[a]});
        if (b == v) rec.enforced.push_back({g.labels[a], g.labels[b]});
    }

    std::vector<int> remap(g.size(), -1);
    Pdag out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (static_cast<int>(i) == v) continue;
        remap[i] = static_cast<int>(out.labels.size());
        out.labels.push_back(g.labels[i]);
    }
    for (const auto& [t, h] : g.directed)
        if (t != v && h != v) out.directed.insert({remap[t], remap[h]});
    for (const auto& [a, b] : g.undirected)
        if (a != v && b != v) out.undirected.insert(unordered(remap[a], remap[b]));
    return {std::move(out), std::move(rec)};
}

// One consistent extension, built by repeated sink removal with a
// lowest-index tie-break. Output covers the original node set.
inline Dag derive_dag(const Pdag& g) {
    std::vector<char> active(g.size(), 1);
    std::set<Edge> edges = g.directed;
    std::size_t remaining = g.size();
    std::size_t undirected_left = g.undirected.size();
    while (remaining > 0) {
        int pick = -1;
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (active[v] && detail::removable_under_mask(g, static_cast<int>(v), active)) {
                pick = static_cast<int>(v);
                break;
            }
        }
        if (pick < 0) {
            if (undirected_left > 0)
                throw graph_error("inextensible: no removable node while undirected edges remain");
            break; // directed part alone cannot deadlock, but be safe
        }
        for (const auto& [a, b] : g.undirected) {
            if (a == pick && active[b]) { edges.insert({b, a}); --undirected_left; }
            if (b == pick && active[a]) { edges.insert({a, b}); --undirected_left; }
        }
        active[pick] = 0;
        --remaining;
    }
    return Dag(g.labels, edges);
}

// True iff dag d orients every undirected edge of g without creating an
// unshielded collider whose arrows were not already directed in g.
inline bool consistent_extension_of(const Pdag& g, const Dag& d) {
    for (const auto& e : g.directed)
        if (!d.edges.count(e)) return false;
    if (d.edges.size() != g.directed.size() + g.undirected.size()) return false;
    for (const auto& [a, b] : g.undirected)
        if (!d.adjacent(a, b)) return false;
    for (const auto& [a, c, b] : unshielded_colliders(d))
        if (!g.has_directed(a, c) || !g.has_directed(b, c)) return false;
    return true;
}

// All consistent extensions: acyclic orientations of the undirected edges
// introducing no new unshielded collider. Emitted in canonical (edge-set)
// order.
inline std::vector<Dag> enumerate_extensions(const Pdag& g, std::size_t cap = 4096,
                                             std::size_t max_undirected = 12) {
    const std::vector<Edge> free_edges(g.undirected.begin(), g.undirected.end());
    if (free_edges.size() > max_undirected)
        throw graph_error("too many undirected edges to enumerate (" +
                          std::to_string(free_edges.size()) + ")");
    std::vector<Dag> out;
    const std::uint64_t total = std::uint64_t{1} << free_edges.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::set<Edge> edges = g.directed;
        for (std::size_t i = 0; i < free_edges.size(); ++i) {
            auto [a, b] = free_edges[i];
            if (mask & (std::uint64_t{1} << i)) edges.insert({b, a});
            else edges.insert({a, b});
        }
        if (!detail::is_acyclic(g.size(), edges)) continue;
        Dag d;
        d.labels = g.labels;
        d.edges = std::move(edges);
        if (!consistent_extension_of(g, d)) continue;
        if (out.size() >= cap)
            throw graph_error("extension count exceeds cap " + std::to_string(cap));
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end(),
              [](const Dag& x, const Dag& y) { return x.edges < y.edges; });
    return out;
}

// Same skeleton and same unshielded colliders.
inline bool markov_equivalent(const Dag& a, const Dag& b) {
    if (a.labels != b.labels) throw graph_error("node sets differ");
    auto skel = [](const Dag& d) {
        std::set<Edge> s;
        for (const auto& [t, h] : d.edges) s.insert(unordered(t, h));
        return s;
    };
    return skel(a) == skel(b) && unshielded_colliders(a) == unshielded_colliders(b);
}

} // namespace dagrec
