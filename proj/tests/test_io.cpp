#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dagrec/io.hpp"
#include "dagrec/synthesis.hpp"
#include "fixtures.hpp"

using namespace dagrec;

namespace {

TEST(GraphJson, RoundTripRandomPdags) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dag d = random_dag(5 + seed % 4, 0.4, seed);
        std::mt19937_64 eng(seed);
        Pdag g;
        g.labels = d.labels;
        for (const auto& [t, h] : d.edges) {
            if (rng::uniform01(eng) < 0.5) g.directed.insert({t, h});
            else g.undirected.insert(unordered(t, h));
        }
        g.validate();
        EXPECT_EQ(pdag_from_json(to_json(g)), g);
    }
}

TEST(GraphJson, DagIsPdagWithEmptyUndirected) {
    const auto j = to_json(fixtures::fig1_dag());
    EXPECT_TRUE(j.at("undirected").empty());
    EXPECT_EQ(j.at("directed").size(), 14u);
    EXPECT_EQ(pdag_from_json(j), Pdag::from_dag(fixtures::fig1_dag()));
}

TEST(GraphJson, MalformedInputsThrow) {
    EXPECT_THROW(pdag_from_json(nlohmann::json{{"directed", 3}}), io_error);
    const auto bad = nlohmann::json::parse(R"({"nodes":["a"],"directed":[["a","zzz"]]})");
    EXPECT_THROW(pdag_from_json(bad), graph_error);
}

TEST(Dot, StableSortedOutput) {
    const Pdag g = fixtures::fig6_pdag();
    const std::string a = to_dot(g), b = to_dot(g);
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("\"X10\" -> \"X9\";"), std::string::npos);
    EXPECT_NE(a.find("\"X1\" -> \"X2\" [dir=none];"), std::string::npos);
    EXPECT_EQ(a.find("X11"), std::string::npos);
}

TEST(Csv, RoundTrip) {
    const Dataset d = sample(unit_model(fixtures::fig1_dag()), 50, 4);
    const auto path = std::filesystem::temp_directory_path() / "dagrec_io_test.csv";
    {
        std::ofstream out(path);
        write_csv(d, out);
    }
    const Dataset back = load_csv(path.string());
    EXPECT_EQ(back.columns, d.columns);
    EXPECT_TRUE(back.rows.isApprox(d.rows, 1e-12));
    std::filesystem::remove(path);
}

TEST(Csv, BadFilesThrow) {
    EXPECT_THROW(load_csv("/nonexistent/x.csv"), io_error);
    const auto path = std::filesystem::temp_directory_path() / "dagrec_bad.csv";
    std::ofstream(path) << "a,b\n1.0,notanumber\n";
    EXPECT_THROW(load_csv(path.string()), io_error);
    std::ofstream(path) << "a,b\n1.0\n";
    EXPECT_THROW(load_csv(path.string()), io_error);
    std::filesystem::remove(path);
}

TEST(Query, AsciiAndUnicodeForms) {
    const Pdag g = Pdag::from_dag(fixtures::fig1_dag());
    const auto q1 = parse_query("X1 _||_ X7 | X6,X5", g);
    EXPECT_EQ(q1.x, g.index_of("X1"));
    EXPECT_EQ(q1.y, g.index_of("X7"));
    NodeSet z{g.index_of("X6"), g.index_of("X5")};
    EXPECT_EQ(q1.z, z);
    const auto q2 = parse_query("X1 ⟂ X7 | X6, X5", g);
    EXPECT_EQ(q2.z, q1.z);
    const auto marginal = parse_query("X1 _||_ X7 | ", g);
    EXPECT_TRUE(marginal.z.empty());
    EXPECT_TRUE(parse_query("X1 _||_ X7", g).z.empty());
}

TEST(Query, BadSyntaxThrows) {
    const Pdag g = Pdag::from_dag(fixtures::fig1_dag());
    EXPECT_THROW(parse_query("X1 and X7", g), io_error);
    EXPECT_THROW(parse_query("X1 _||_ ", g), io_error);
    EXPECT_THROW(parse_query("X1 _||_ Xnope", g), graph_error);
    EXPECT_THROW(parse_query("X1 _||_ X1", g), graph_error);
}

TEST(TraceLine, Format) {
    const Pdag g = fixtures::fig6_pdag();
    TraceEntry e{Rule::IIc, {g.index_of("X6"), g.index_of("X8")}};
    EXPECT_EQ(trace_line(e, g.labels), "RULE IIc: X6 -> X8");
}

} // namespace
