#pragma once

// Brute-force trail enumeration used as independent ground truth for the
// reachability engines. Exponential, test-only.

#include "dagrec/graph.hpp"
#include "dagrec/separation.hpp"

namespace trail_oracle {

using dagrec::Dag;
using dagrec::NodeSet;
using dagrec::Pdag;
using dagrec::SeparationQuery;

// All simple trails between x and y, as node sequences.
template <typename AdjFn>
std::vector<std::vector<int>> simple_trails(std::size_t n, int x, int y, AdjFn adj) {
    std::vector<std::vector<int>> out;
    std::vector<int> path{x};
    std::vector<char> used(n, 0);
    used[x] = 1;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == y) {
            out.push_back(path);
            return;
        }
        for (int u : adj(v)) {
            if (used[u]) continue;
            used[u] = 1;
            path.push_back(u);
            self(self, u);
            path.pop_back();
            used[u] = 0;
        }
    };
    rec(rec, x);
    return out;
}

inline bool active_trail_brute(const Dag& g, const SeparationQuery& q) {
    q.validate(g.size());
    std::vector<NodeSet> desc(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
        desc[v] = dagrec::descendants(g, static_cast<int>(v));
    auto adj = [&](int v) { return dagrec::adjacents(g, v); };
    for (const auto& trail : simple_trails(g.size(), q.x, q.y, adj)) {
        bool active = true;
        for (std::size_t i = 1; i + 1 < trail.size() && active; ++i) {
            const int prev = trail[i - 1], v = trail[i], next = trail[i + 1];
            const bool collider = g.has_edge(prev, v) && g.has_edge(next, v);
            if (collider) {
                bool act = q.z.count(v) > 0;
                for (int d : desc[v]) act = act || q.z.count(d) > 0;
                active = act;
            } else {
                active = q.z.count(v) == 0;
            }
        }
        if (active) return true;
    }
    return false;
}

inline bool active_ptrail_brute(const Pdag& g, const SeparationQuery& q) {
    q.validate(g.size());
    const auto act = dagrec::detail::possible_collider_activators(g, q.z);
    auto adj = [&](int v) { return dagrec::adjacents(g, v); };
    for (const auto& trail : simple_trails(g.size(), q.x, q.y, adj)) {
        bool active = true;
        for (std::size_t i = 1; i + 1 < trail.size() && active; ++i) {
            const int prev = trail[i - 1], v = trail[i], next = trail[i + 1];
            const bool collider = g.has_directed(prev, v) && g.has_directed(next, v);
            if (collider) active = act[v] != 0;
            else active = q.z.count(v) == 0;
        }
        if (active) return true;
    }
    return false;
}

// Every query over a node set, conditioning sets up to max_z.
inline std::vector<SeparationQuery> all_queries(std::size_t n, std::size_t max_z) {
    std::vector<SeparationQuery> out;
    for (int x = 0; x < static_cast<int>(n); ++x)
        for (int y = x + 1; y < static_cast<int>(n); ++y) {
            std::vector<int> rest;
            for (int v = 0; v < static_cast<int>(n); ++v)
                if (v != x && v != y) rest.push_back(v);
            const std::uint64_t total = std::uint64_t{1} << rest.size();
            for (std::uint64_t mask = 0; mask < total; ++mask) {
                NodeSet z;
                for (std::size_t i = 0; i < rest.size(); ++i)
                    if (mask & (std::uint64_t{1} << i)) z.insert(rest[i]);
                if (z.size() > max_z) continue;
                out.push_back({x, y, std::move(z)});
            }
        }
    return out;
}

} // namespace trail_oracle
