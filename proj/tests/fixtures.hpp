#pragma once

// Shared ground-truth fixtures for the ten- and seven-node example graphs
// used throughout the suite.

#include "dagrec/graph.hpp"
#include "dagrec/recovery.hpp"

namespace fixtures {

using dagrec::Dag;
using dagrec::Edge;
using dagrec::Pdag;
using dagrec::UGraph;

inline std::vector<std::string> ten_labels() {
    return {"X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8", "X9", "X10"};
}

// The canonical 10-node ground truth (14 arrows).
inline Dag fig1_dag() {
    Dag g;
    g.labels = ten_labels();
    auto e = [&](const char* a, const char* b) {
        g.edges.insert({g.index_of(a), g.index_of(b)});
    };
    e("X1", "X2");
    e("X2", "X6");
    e("X7", "X6");
    e("X7", "X8");
    e("X7", "X5");
    e("X5", "X6");
    e("X5", "X8");
    e("X5", "X9");
    e("X5", "X10");
    e("X6", "X8");
    e("X4", "X3");
    e("X4", "X9");
    e("X10", "X4");
    e("X10", "X9");
    g.validate();
    return g;
}

inline UGraph fig2_skeleton() {
    const Dag d = fig1_dag();
    return Pdag::from_dag(d).skeleton();
}

// Partially oriented stages. Each is the prior stage plus the arrows the
// corresponding rule adds.
inline Pdag fig3_pdag() {
    Pdag g = Pdag::from_ugraph(fig2_skeleton());
    auto o = [&](const char* a, const char* b) { g = g.orient(g.index_of(a), g.index_of(b)); };
    o("X2", "X6");
    o("X7", "X6");
    o("X5", "X6");
    o("X4", "X9");
    o("X5", "X9");
    return g;
}

inline Pdag fig4_pdag() {
    Pdag g = fig3_pdag();
    return g.orient(g.index_of("X6"), g.index_of("X8"));
}

inline Pdag fig5_pdag() {
    Pdag g = fig4_pdag();
    g = g.orient(g.index_of("X7"), g.index_of("X8"));
    return g.orient(g.index_of("X5"), g.index_of("X8"));
}

inline Pdag fig6_pdag() {
    Pdag g = fig5_pdag();
    return g.orient(g.index_of("X10"), g.index_of("X9"));
}

// The 7-node graph after removing X3, X8, X9 from the fig6 stage.
inline Pdag fig7_pdag() {
    Pdag g;
    g.labels = {"X1", "X2", "X4", "X5", "X6", "X7", "X10"};
    auto d = [&](const char* a, const char* b) {
        g.directed.insert({g.index_of(a), g.index_of(b)});
    };
    auto u = [&](const char* a, const char* b) {
        g.undirected.insert(dagrec::unordered(g.index_of(a), g.index_of(b)));
    };
    d("X2", "X6");
    d("X7", "X6");
    d("X5", "X6");
    u("X1", "X2");
    u("X4", "X10");
    u("X5", "X10");
    u("X5", "X7");
    g.validate();
    return g;
}

// The 7-node trail-semantics example (X11..X17).
inline Pdag fig8_pdag() {
    Pdag g;
    g.labels = {"X11", "X12", "X13", "X14", "X15", "X16", "X17"};
    auto d = [&](const char* a, const char* b) {
        g.directed.insert({g.index_of(a), g.index_of(b)});
    };
    auto u = [&](const char* a, const char* b) {
        g.undirected.insert(dagrec::unordered(g.index_of(a), g.index_of(b)));
    };
    d("X11", "X13");
    d("X11", "X14");
    d("X11", "X15");
    d("X12", "X13");
    d("X12", "X14");
    d("X12", "X15");
    d("X13", "X17");
    d("X15", "X16");
    u("X13", "X14");
    u("X14", "X15");
    g.validate();
    return g;
}

} // namespace fixtures
