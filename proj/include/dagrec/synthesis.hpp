#pragma once

#include <cstdint>
#include <random>

#include "dagrec/graph.hpp"
#include "dagrec/oracle.hpp"

namespace dagrec {

// All randomness flows through mt19937_64 with explicit draws below, so a
// seed pins byte-identical output across standard libraries.
namespace rng {

inline double uniform01(std::mt19937_64& eng) {
    return double(eng() >> 11) * 0x1.0p-53;
}

// Fisher-Yates with a plain modulo draw; the bias is irrelevant here and
// the sequence is fully pinned by the seed.
inline std::vector<int> permutation(std::size_t n, std::mt19937_64& eng) {
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = eng() % i;
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

// Box-Muller, one value per call (the sine twin is discarded).
inline double gaussian(std::mt19937_64& eng) {
    double u = 0.0;
    while (u <= 0.0) u = uniform01(eng);
    double v = uniform01(eng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

} // namespace rng

// Topological order drawn uniformly from the seed; each forward pair kept
// with probability p.
inline Dag random_dag(std::size_t n, double p, std::uint64_t seed) {
    if (n < 1) throw graph_error("need at least one node");
    if (p < 0.0 || p > 1.0) throw graph_error("edge probability outside [0,1]");
    std::mt19937_64 eng(seed);
    const auto order = rng::permutation(n, eng);
    Dag g;
    for (std::size_t i = 0; i < n; ++i) g.labels.push_back("X" + std::to_string(i + 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng::uniform01(eng) < p) g.edges.insert({order[i], order[j]});
    g.validate();
    return g;
}

struct LinearModel {
    Dag dag;
    std::map<Edge, double> weights;
    std::vector<double> noise_sd;

    void validate() const {
        dag.validate();
        if (noise_sd.size() != dag.size()) throw graph_error("noise_sd size mismatch");
        for (double s : noise_sd)
            if (!(s > 0.0)) throw graph_error("noise_sd must be positive");
        if (weights.size() != dag.edges.size())
            throw graph_error("weight count does not match edge count");
        for (const auto& [e, w] : weights) {
            (void)w;
            if (!dag.edges.count(e)) throw graph_error("weight on a non-edge");
        }
    }
};

inline LinearModel unit_model(Dag dag) {
    LinearModel m;
    m.noise_sd.assign(dag.size(), 1.0);
    for (const auto& e : dag.edges) m.weights[e] = 1.0;
    m.dag = std::move(dag);
    return m;
}

// Weights uniform on ±[0.5, 1.5], keeping edges well away from
// undetectable near-zero strength.
inline LinearModel random_model(Dag dag, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    LinearModel m;
    m.noise_sd.assign(dag.size(), 1.0);
    for (const auto& e : dag.edges) {
        double mag = 0.5 + rng::uniform01(eng);
        m.weights[e] = rng::uniform01(eng) < 0.5 ? -mag : mag;
    }
    m.dag = std::move(dag);
    return m;
}

namespace detail {

inline std::vector<int> topological_order(const Dag& g) {
    std::vector<int> indeg(g.size(), 0);
    std::vector<std::vector<int>> out(g.size());
    for (const auto& [t, h] : g.edges) {
        ++indeg[h];
        out[t].push_back(h);
    }
    std::vector<int> order;
    std::priority_queue<int, std::vector<int>, std::greater<int>> q;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (indeg[v] == 0) q.push(static_cast<int>(v));
    while (!q.empty()) {
        int v = q.top();
        q.pop();
        order.push_back(v);
        for (int u : out[v])
            if (--indeg[u] == 0) q.push(u);
    }
    if (order.size() != g.size()) throw graph_error("cycle in dag");
    return order;
}

} // namespace detail

// node = sum(weight * parent) + noise, generated in topological order.
inline Dataset sample(const LinearModel& model, std::size_t n_rows, std::uint64_t seed) {
    model.validate();
    if (n_rows < 1) throw graph_error("need at least one row");
    std::mt19937_64 eng(seed);
    const auto order = detail::topological_order(model.dag);
    std::vector<std::vector<std::pair<int, double>>> parents(model.dag.size());
    for (const auto& [e, w] : model.weights) parents[e.second].push_back({e.first, w});

    Dataset data;
    data.columns = model.dag.labels;
    data.rows.resize(static_cast<Eigen::Index>(n_rows),
                     static_cast<Eigen::Index>(model.dag.size()));
    for (std::size_t r = 0; r < n_rows; ++r)
        for (int v : order) {
            double val = model.noise_sd[v] * rng::gaussian(eng);
            for (const auto& [p, w] : parents[v])
                val += w * data.rows(static_cast<Eigen::Index>(r), p);
            data.rows(static_cast<Eigen::Index>(r), v) = val;
        }
    data.validate();
    return data;
}

} // namespace dagrec
