#pragma once

#include <deque>

#include "dagrec/extension.hpp"
#include "dagrec/graph.hpp"

namespace dagrec {

// "Is x connected to y given the blocked set z?"
struct SeparationQuery {
    int x;
    int y;
    NodeSet z;

    void validate(std::size_t n) const {
        detail::check_node(x, n, "query");
        detail::check_node(y, n, "query");
        if (x == y) throw graph_error("query endpoints coincide");
        for (int v : z) {
            detail::check_node(v, n, "query conditioning set");
            if (v == x || v == y)
                throw graph_error("conditioning set contains a query endpoint");
        }
    }
};

namespace detail {

// z together with all ancestors of z; exactly the nodes that activate a
// collider they sit on.
inline std::vector<char> collider_activators(const Dag& g, const NodeSet& z) {
    std::vector<std::vector<int>> parents(g.size());
    for (const auto& [t, h] : g.edges) parents[h].push_back(t);
    std::vector<char> act(g.size(), 0);
    std::deque<int> q;
    for (int v : z) {
        act[v] = 1;
        q.push_back(v);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int p : parents[v])
            if (!act[p]) {
                act[p] = 1;
                q.push_back(p);
            }
    }
    return act;
}

} // namespace detail

// Reachability sweep over (node, arrival-direction) states. A trail is
// active when its non-colliders avoid z and each collider has itself or a
// descendant in z.
inline bool active_trail_exists(const Dag& g, const SeparationQuery& q) {
    q.validate(g.size());
    std::vector<std::vector<int>> children(g.size()), parents(g.size());
    for (const auto& [t, h] : g.edges) {
        children[t].push_back(h);
        parents[h].push_back(t);
    }
    std::vector<char> in_z(g.size(), 0);
    for (int v : q.z) in_z[v] = 1;
    const auto act = detail::collider_activators(g, q.z);

    // State: node plus how we arrived (via an arrow into it, or out of it).
    enum { VIA_HEAD = 0, VIA_TAIL = 1 };
    std::vector<std::array<char, 2>> seen(g.size(), {0, 0});
    std::deque<std::pair<int, int>> frontier;
    auto visit = [&](int v, int how) {
        if (v == q.y) return true;
        if (!seen[v][how]) {
            seen[v][how] = 1;
            frontier.push_back({v, how});
        }
        return false;
    };
    for (int c : children[q.x])
        if (visit(c, VIA_HEAD)) return true;
    for (int p : parents[q.x])
        if (visit(p, VIA_TAIL)) return true;
    while (!frontier.empty()) {
        auto [v, how] = frontier.front();
        frontier.pop_front();
        if (how == VIA_HEAD) {
            if (!in_z[v])
                for (int c : children[v])
                    if (visit(c, VIA_HEAD)) return true;
            if (act[v]) // collider activated by v or a descendant in z
                for (int p : parents[v])
                    if (visit(p, VIA_TAIL)) return true;
        } else {
            if (!in_z[v]) {
                for (int c : children[v])
                    if (visit(c, VIA_HEAD)) return true;
                for (int p : parents[v])
                    if (visit(p, VIA_TAIL)) return true;
            }
        }
    }
    return false;
}

inline bool d_separated(const Dag& g, const SeparationQuery& q) {
    return !active_trail_exists(g, q);
}

namespace detail {

// Nodes from which some z-node is reachable along directed-forward or
// undirected edges ("possible descendant in z").
inline std::vector<char> possible_collider_activators(const Pdag& g, const NodeSet& z) {
    std::vector<std::vector<int>> back(g.size());
    for (const auto& [t, h] : g.directed) back[h].push_back(t);
    for (const auto& [a, b] : g.undirected) {
        back[a].push_back(b);
        back[b].push_back(a);
    }
    std::vector<char> act(g.size(), 0);
    std::deque<int> q;
    for (int v : z) {
        act[v] = 1;
        q.push_back(v);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : back[v])
            if (!act[u]) {
                act[u] = 1;
                q.push_back(u);
            }
    }
    return act;
}

} // namespace detail

// Activeness of p-trails, where edges may still be undirected. Only a node
// entered and left through arrows pointing into it is treated as a
// collider; every other interior node is a (possible) non-collider and must
// avoid z.
//
// Unlike the dag case, (node, arrival-direction) reachability is unsound
// here: shortening a walk that revisits a node can turn a non-collider
// occurrence into a definite collider, so an active walk need not contain
// an active trail. The search therefore tracks the trail itself.
inline bool active_ptrail_exists(const Pdag& g, const SeparationQuery& q) {
    q.validate(g.size());
    std::vector<std::vector<int>> children(g.size()), parents(g.size()), links(g.size());
    for (const auto& [t, h] : g.directed) {
        children[t].push_back(h);
        parents[h].push_back(t);
    }
    for (const auto& [a, b] : g.undirected) {
        links[a].push_back(b);
        links[b].push_back(a);
    }
    std::vector<char> in_z(g.size(), 0);
    for (int v : q.z) in_z[v] = 1;
    const auto act = detail::possible_collider_activators(g, q.z);

    std::vector<char> on_trail(g.size(), 0);
    // Extend the trail past v, entered through an arrow into v iff via_head.
    auto extend = [&](auto&& self, int v, bool via_head) -> bool {
        if (v == q.y) return true;
        // stepping to u makes v interior; leave_into_v marks the leaving
        // edge as pointing at v (traversed against its arrow)
        auto step = [&](int u, bool leave_into_v, bool arrive_head) {
            if (on_trail[u]) return false;
            if (v != q.x) {
                const bool definite_collider = via_head && leave_into_v;
                if (definite_collider ? !act[v] : in_z[v] != 0) return false;
            }
            return self(self, u, arrive_head);
        };
        on_trail[v] = 1;
        bool found = false;
        for (int c : children[v])
            if ((found = step(c, false, true))) break;
        if (!found)
            for (int p : parents[v])
                if ((found = step(p, true, false))) break;
        if (!found)
            for (int u : links[v])
                if ((found = step(u, false, false))) break;
        on_trail[v] = 0;
        return found;
    };
    return extend(extend, q.x, false);
}

// Ground-truth quantifier for the p-trail theorem: connected in every
// derived dag, by exhaustive enumeration.
inline bool connected_in_every_extension(const Pdag& g, const SeparationQuery& q,
                                         std::size_t cap = 4096,
                                         std::size_t max_undirected = 12) {
    q.validate(g.size());
    const auto dags = enumerate_extensions(g, cap, max_undirected);
    if (dags.empty()) throw graph_error("graph admits no consistent extension");
    for (const auto& d : dags)
        if (!active_trail_exists(d, q)) return false;
    return true;
}

} // namespace dagrec
