#pragma once

#include <optional>

#include "dagrec/graph.hpp"
#include "dagrec/oracle.hpp"

namespace dagrec {

// Witness separating set per nonadjacent pair, keyed by canonical pair.
using SepsetTable = std::map<Edge, NodeSet>;

enum class Rule { II, IIc, IV, V };

inline const char* rule_name(Rule r) {
    switch (r) {
        case Rule::II: return "II";
        case Rule::IIc: return "IIc";
        case Rule::IV: return "IV";
        case Rule::V: return "V";
    }
    return "?";
}

struct TraceEntry {
    Rule rule;
    Edge edge; // (tail, head)
    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct RecoveryResult {
    Pdag pdag;
    SepsetTable sepsets;
    OracleStats stats;
    std::vector<TraceEntry> trace;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& pool,
                                                     std::size_t k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i + (k - cur.size()) <= pool.size(); ++i) {
            cur.push_back(pool[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace detail

// Edge deletion by conditional independence: {x,y} survives only if no
// conditioning set separates the pair. Conditioning sets are drawn by
// ascending size from the current adjacencies of x, then of y; the first
// witness is recorded.
inline std::pair<UGraph, SepsetTable>
find_skeleton(const IndependenceOracle& oracle, const std::vector<std::string>& vars,
              std::optional<std::size_t> max_cond = std::nullopt) {
    if (vars.empty()) throw graph_error("no variables");
    if (oracle.variable_count() != vars.size())
        throw graph_error("oracle variable count does not match");
    const int n = static_cast<int>(vars.size());
    if (!max_cond && n > 12)
        throw graph_error("max_cond must be set explicitly above 12 variables");

    std::vector<std::set<int>> adj(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    SepsetTable sepsets;
    const std::size_t bound = max_cond ? *max_cond : static_cast<std::size_t>(n);

    for (std::size_t level = 0; level <= bound; ++level) {
        bool any_large_enough = false;
        std::vector<Edge> pairs;
        for (int a = 0; a < n; ++a)
            for (int b : adj[a])
                if (a < b) pairs.push_back({a, b});
        for (const auto& [a, b] : pairs) {
            if (!adj[a].count(b)) continue; // removed earlier this level
            bool removed = false;
            // candidate pools from the current adjacencies of each side
            for (int side = 0; side < 2 && !removed; ++side) {
                const int u = side == 0 ? a : b;
                const int v = side == 0 ? b : a;
                std::vector<int> pool;
                for (int w : adj[u])
                    if (w != v) pool.push_back(w);
                if (pool.size() < level) continue;
                any_large_enough = true;
                for (const auto& zs : detail::subsets_of_size(pool, level)) {
                    NodeSet z(zs.begin(), zs.end());
                    if (oracle.is_independent(a, b, z)) {
                        sepsets[unordered(a, b)] = std::move(z);
                        removed = true;
                        break;
                    }
                }
            }
            if (removed) {
                adj[a].erase(b);
                adj[b].erase(a);
            }
        }
        if (!any_large_enough && level > 0) break;
    }

    UGraph skel;
    skel.labels = vars;
    for (int a = 0; a < n; ++a)
        for (int b : adj[a])
            if (a < b) skel.edges.insert({a, b});
    return {std::move(skel), std::move(sepsets)};
}

// For every unshielded triple x -- w -- y whose witness set omits w, orient
// x -> w <- y. With strict=true a double orientation of one edge is an
// error; otherwise the edge is left undirected and a warning recorded.
inline Pdag orient_colliders(const UGraph& skeleton, const SepsetTable& sepsets,
                             bool strict = true,
                             std::vector<TraceEntry>* trace = nullptr,
                             std::vector<std::string>* warnings = nullptr) {
    std::set<Edge> wanted; // (tail, head)
    std::set<Edge> conflicted;
    const int n = static_cast<int>(skeleton.size());
    for (int w = 0; w < n; ++w) {
        const NodeSet nbr_set = adjacents(skeleton, w);
        const std::vector<int> nbrs(nbr_set.begin(), nbr_set.end());
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                const int x = nbrs[i], y = nbrs[j];
                if (skeleton.adjacent(x, y)) continue;
                auto it = sepsets.find(unordered(x, y));
                if (it == sepsets.end())
                    throw graph_error("no separating set recorded for nonadjacent pair " +
                                      skeleton.labels[x] + ", " + skeleton.labels[y]);
                if (it->second.count(w)) continue;
                for (int tail : {x, y}) {
                    if (wanted.count({w, tail})) {
                        if (strict)
                            throw graph_error("collider conflict on edge " +
                                              skeleton.labels[tail] + " -- " + skeleton.labels[w] +
                                              " (triple " + skeleton.labels[x] + " -> " +
                                              skeleton.labels[w] + " <- " + skeleton.labels[y] + ")");
                        conflicted.insert(unordered(tail, w));
                        if (warnings)
                            warnings->push_back("collider conflict, leaving " +
                                                skeleton.labels[tail] + " -- " +
                                                skeleton.labels[w] + " undirected");
                    }
                    wanted.insert({tail, w});
                }
            }
    }
    Pdag g = Pdag::from_ugraph(skeleton);
    for (const auto& [t, h] : wanted) {
        if (conflicted.count(unordered(t, h))) continue;
        if (!g.has_undirected(t, h)) continue; // other side of a shared triple
        if (!strict) {
            // a data-driven orientation may close a cycle; skip it then
            try {
                g = g.orient(t, h);
            } catch (const graph_error&) {
                if (warnings)
                    warnings->push_back("skipping cyclic collider orientation " +
                                        skeleton.labels[t] + " -> " + skeleton.labels[h]);
                continue;
            }
        } else {
            g = g.orient(t, h);
        }
        if (trace) trace->push_back({Rule::II, {t, h}});
    }
    return g;
}

// a -> b -- c with a, c nonadjacent: orienting c -> b would create a fresh
// unshielded collider, so b -> c. Single pass over a snapshot.
inline std::set<Edge> rule_IIc(const Pdag& g) {
    std::set<Edge> out;
    for (const auto& [b, c] : g.undirected) {
        for (const auto& [a, bb] : g.directed) {
            if (bb == b && !g.adjacent(a, c)) out.insert({b, c});
            if (bb == c && !g.adjacent(a, b)) out.insert({c, b});
        }
    }
    return out;
}

// a -- b with a directed path a -> ... -> b: the reverse orientation closes
// a cycle, so a -> b. Single pass over a snapshot.
inline std::set<Edge> rule_IV(const Pdag& g) {
    const int n = static_cast<int>(g.size());
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    std::vector<std::vector<int>> children(n);
    for (const auto& [t, h] : g.directed) children[t].push_back(h);
    for (int s = 0; s < n; ++s) {
        std::deque<int> q{s};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int c : children[v])
                if (!reach[s][c]) {
                    reach[s][c] = 1;
                    q.push_back(c);
                }
        }
    }
    std::set<Edge> out;
    for (const auto& [a, b] : g.undirected) {
        if (reach[a][b]) out.insert({a, b});
        if (reach[b][a]) out.insert({b, a});
    }
    return out;
}

// l -- j with l -- i -> j and l -- k -> j for nonadjacent i, k: in every
// consistent orientation l points at j. Single pass over a snapshot.
inline std::set<Edge> rule_V(const Pdag& g) {
    const int n = static_cast<int>(g.size());
    std::set<Edge> out;
    for (const auto& [p, q] : g.undirected) {
        for (const auto [l, j] : {std::pair{p, q}, std::pair{q, p}}) {
            std::vector<int> flankers; // i with l -- i -> j
            for (const auto& [t, h] : g.directed)
                if (h == j && g.has_undirected(l, t)) flankers.push_back(t);
            bool fires = false;
            for (std::size_t x = 0; x < flankers.size() && !fires; ++x)
                for (std::size_t y = x + 1; y < flankers.size() && !fires; ++y)
                    if (!g.adjacent(flankers[x], flankers[y])) fires = true;
            if (fires) out.insert({l, j});
        }
    }
    return out;
}

namespace detail {

inline Pdag apply_pass(Pdag g, Rule rule, const std::set<Edge>& fired,
                       std::vector<TraceEntry>* trace,
                       std::vector<std::string>* warnings = nullptr,
                       bool lenient = false) {
    for (const auto& [t, h] : fired) {
        if (fired.count({h, t})) {
            if (!lenient)
                throw graph_error("contradictory orientations derived for " +
                                  g.labels[t] + " -- " + g.labels[h]);
            if (warnings && t < h)
                warnings->push_back(std::string("rule ") + rule_name(rule) +
                                    " fired both ways, leaving " + g.labels[t] +
                                    " -- " + g.labels[h] + " undirected");
            continue;
        }
        if (!g.has_undirected(t, h)) continue;
        if (lenient) {
            // noisy sepsets can make a firing close a cycle; skip it then
            try {
                g = g.orient(t, h);
            } catch (const graph_error&) {
                if (warnings)
                    warnings->push_back(std::string("skipping cyclic ") +
                                        rule_name(rule) + " orientation " +
                                        g.labels[t] + " -> " + g.labels[h]);
                continue;
            }
        } else {
            g = g.orient(t, h);
        }
        if (trace) trace->push_back({rule, {t, h}});
    }
    return g;
}

} // namespace detail

// Sweeps II^c, IV, V until a full round adds nothing. The fixpoint is
// order-independent; the default order matches the figure progression.
inline Pdag close_orientations(Pdag g, std::vector<TraceEntry>* trace = nullptr,
                               const std::vector<Rule>& order = {Rule::IIc, Rule::IV,
                                                                 Rule::V},
                               std::vector<std::string>* warnings = nullptr,
                               bool lenient = false) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (Rule r : order) {
            std::set<Edge> fired;
            switch (r) {
                case Rule::IIc: fired = rule_IIc(g); break;
                case Rule::IV: fired = rule_IV(g); break;
                case Rule::V: fired = rule_V(g); break;
                case Rule::II: throw graph_error("rule II is not a closure rule");
            }
            std::size_t before = g.directed.size();
            g = detail::apply_pass(std::move(g), r, fired, trace, warnings, lenient);
            if (g.directed.size() != before) changed = true;
        }
    }
    return g;
}

struct RecoverOptions {
    std::optional<std::size_t> max_cond;
    bool strict_colliders = true;
};

// Full pipeline: skeleton, colliders, closure.
inline RecoveryResult recover(std::shared_ptr<const IndependenceOracle> oracle,
                              const std::vector<std::string>& vars,
                              const RecoverOptions& opts = {}) {
    auto counting = std::make_shared<CountingOracle>(std::move(oracle));
    RecoveryResult res;
    auto [skel, sepsets] = find_skeleton(*counting, vars, opts.max_cond);
    res.sepsets = std::move(sepsets);
    Pdag g = orient_colliders(skel, res.sepsets, opts.strict_colliders, &res.trace,
                              &res.warnings);
    res.pdag = close_orientations(std::move(g), &res.trace, {Rule::IIc, Rule::IV, Rule::V},
                                  &res.warnings, !opts.strict_colliders);
    res.stats = counting->stats();
    return res;
}

} // namespace dagrec
