#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dagrec/graph.hpp"
#include "dagrec/oracle.hpp"
#include "dagrec/recovery.hpp"
#include "dagrec/separation.hpp"

namespace dagrec {

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Content was readable but malformed.
class parse_error : public io_error {
public:
    using io_error::io_error;
};

// Graph JSON: {"nodes": [...], "directed": [[t,h],...], "undirected": [[a,b],...]}.
// A Dag is a Pdag with empty "undirected"; a UGraph has empty "directed".
inline nlohmann::json to_json(const Pdag& g) {
    nlohmann::json j;
    j["nodes"] = g.labels;
    j["directed"] = nlohmann::json::array();
    for (const auto& [t, h] : g.directed)
        j["directed"].push_back({g.labels[t], g.labels[h]});
    j["undirected"] = nlohmann::json::array();
    for (const auto& [a, b] : g.undirected)
        j["undirected"].push_back({g.labels[a], g.labels[b]});
    return j;
}

inline nlohmann::json to_json(const Dag& g) { return to_json(Pdag::from_dag(g)); }
inline nlohmann::json to_json(const UGraph& g) { return to_json(Pdag::from_ugraph(g)); }

inline Pdag pdag_from_json(const nlohmann::json& j) {
    try {
        Pdag g;
        g.labels = j.at("nodes").get<std::vector<std::string>>();
        auto idx = [&](const std::string& l) { return g.index_of(l); };
        if (j.contains("directed"))
            for (const auto& e : j.at("directed"))
                g.directed.insert({idx(e.at(0)), idx(e.at(1))});
        if (j.contains("undirected"))
            for (const auto& e : j.at("undirected"))
                g.undirected.insert(unordered(idx(e.at(0)), idx(e.at(1))));
        g.validate();
        return g;
    } catch (const nlohmann::json::exception& ex) {
        throw parse_error(std::string("bad graph json: ") + ex.what());
    }
}

inline Pdag load_pdag(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw parse_error(path + ": " + ex.what());
    }
    return pdag_from_json(j);
}

inline Dag load_dag(const std::string& path) {
    Pdag g = load_pdag(path);
    if (!g.fully_directed()) throw parse_error(path + ": expected a fully directed graph");
    return g.as_dag();
}

// DOT: directed edges plain, undirected with dir=none, both inside a
// digraph; edges sorted so output is byte-stable.
inline std::string to_dot(const Pdag& g) {
    std::ostringstream out;
    out << "digraph G {\n";
    for (const auto& l : g.labels) out << "  \"" << l << "\";\n";
    for (const auto& [t, h] : g.directed)
        out << "  \"" << g.labels[t] << "\" -> \"" << g.labels[h] << "\";\n";
    for (const auto& [a, b] : g.undirected)
        out << "  \"" << g.labels[a] << "\" -> \"" << g.labels[b] << "\" [dir=none];\n";
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const Dag& g) { return to_dot(Pdag::from_dag(g)); }

inline nlohmann::json to_json(const SepsetTable& t, const std::vector<std::string>& labels) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [pair, z] : t) {
        nlohmann::json names = nlohmann::json::array();
        for (int v : z) names.push_back(labels[v]);
        arr.push_back({{"x", labels[pair.first]}, {"y", labels[pair.second]}, {"z", names}});
    }
    return arr;
}

inline nlohmann::json to_json(const OracleStats& s) {
    nlohmann::json by_size = nlohmann::json::object();
    for (const auto& [k, v] : s.queries_by_conditioning_size)
        by_size[std::to_string(k)] = v;
    return {{"queries_total", s.queries_total}, {"queries_by_conditioning_size", by_size}};
}

inline std::string trace_line(const TraceEntry& e, const std::vector<std::string>& labels) {
    return std::string("RULE ") + rule_name(e.rule) + ": " + labels[e.edge.first] +
           " -> " + labels[e.edge.second];
}

// CSV: first row labels, then real-valued samples.
inline Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw parse_error(path + ": empty file");
    Dataset data;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) data.columns.push_back(cell);
    }
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw parse_error(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (row.size() != data.columns.size())
            throw parse_error(path + ":" + std::to_string(lineno) + ": wrong row length");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error(path + ": no data rows");
    data.rows.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(data.columns.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < data.columns.size(); ++c)
            data.rows(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    data.validate();
    return data;
}

inline void write_csv(const Dataset& data, std::ostream& out) {
    for (std::size_t c = 0; c < data.columns.size(); ++c)
        out << (c ? "," : "") << data.columns[c];
    out << "\n";
    out.precision(17);
    for (Eigen::Index r = 0; r < data.rows.rows(); ++r) {
        for (Eigen::Index c = 0; c < data.rows.cols(); ++c)
            out << (c ? "," : "") << data.rows(r, c);
        out << "\n";
    }
}

namespace detail {

inline std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

} // namespace detail

// Query syntax: "x _||_ y | z1,z2" (or the UTF-8 independence symbol). An
// empty right side means the marginal query.
inline SeparationQuery parse_query(const std::string& text, const Pdag& g) {
    static const std::string kAscii = "_||_";
    static const std::string kUtf8 = "⟂"; // ⟂
    std::size_t pos = text.find(kAscii);
    std::size_t seplen = kAscii.size();
    if (pos == std::string::npos) {
        pos = text.find(kUtf8);
        seplen = kUtf8.size();
    }
    if (pos == std::string::npos)
        throw parse_error("query lacks an independence symbol: " + text);
    const std::string xs = detail::strip(text.substr(0, pos));
    std::string rest = text.substr(pos + seplen);
    std::string ys, zs;
    const auto bar = rest.find('|');
    if (bar == std::string::npos) {
        ys = detail::strip(rest);
    } else {
        ys = detail::strip(rest.substr(0, bar));
        zs = rest.substr(bar + 1);
    }
    if (xs.empty() || ys.empty()) throw parse_error("query lacks an endpoint: " + text);
    SeparationQuery q;
    q.x = g.index_of(xs);
    q.y = g.index_of(ys);
    std::stringstream ss(zs);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell = detail::strip(cell);
        if (!cell.empty()) q.z.insert(g.index_of(cell));
    }
    q.validate(g.size());
    return q;
}

} // namespace dagrec
