// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace schemaguard;

namespace {

ParseError parse_failure(std::string_view text)
{
    try {
        parse_circuit(text);
    } catch (const ParseError &e) {
        return e;
    }
    ADD_FAILURE() << "expected a parse error";
    return ParseError("", "");
}

const char *kSmall = R"({
  "components": [
    {"ref": "R1", "part_type": "R", "value": "10k", "pins": [{"number": 2, "name": "2"}, {"number": 1, "name": "1"}]},
    {"ref": "C1", "part_type": "C", "pins": [{"number": 1, "name": "1"}, {"number": 2, "name": "2"}]}
  ],
  "nets": [
    {"name": "VOUT", "endpoints": [["R1", 2], ["C1", 1]]},
    {"name": "GND", "endpoints": [["C1", 2]]}
  ],
  "metadata": {"author": "bench"}
})";

} // namespace

TEST(Circuit, ParsesAndCanonicalizesOrder)
{
    Circuit c = parse_circuit(kSmall);
    ASSERT_EQ(c.components().size(), 2u);
    EXPECT_EQ(c.components()[0].ref, "C1");
    EXPECT_EQ(c.components()[1].ref, "R1");
    EXPECT_EQ(c.components()[1].pins[0].number, 1);
    EXPECT_EQ(c.nets()[0].name, "GND");
    EXPECT_EQ(c.nets()[1].endpoints[0], (PinRef{"C1", 1}));
    EXPECT_EQ(c.components()[1].value, "10k");
    EXPECT_FALSE(c.components()[0].value.has_value());
    EXPECT_EQ(c.metadata().at("author"), "bench");
}

TEST(Circuit, NetLookup)
{
    Circuit c = parse_circuit(kSmall);
    EXPECT_EQ(net_of(c, "R1", 2), "VOUT");
    EXPECT_FALSE(net_of(c, "R1", 1).has_value());
    EXPECT_THROW(c.component("U9"), LookupError);
    EXPECT_EQ(c.find_net("GND")->endpoints.size(), 1u);
    EXPECT_EQ(c.find_net("NOPE"), nullptr);
}

TEST(Circuit, SerializationIsByteStable)
{
    Circuit c = parse_circuit(kSmall);
    const std::string once = serialize_circuit(c);
    EXPECT_EQ(serialize_circuit(parse_circuit(once)), once);
    EXPECT_EQ(parse_circuit(once), c);
}

TEST(Circuit, ShippedNetlistsAreStoredCanonically)
{
    for (const auto &entry : std::filesystem::recursive_directory_iterator(sgtest::tasks_dir())) {
        if (!entry.is_regular_file() || !entry.path().string().ends_with(".circuit.json"))
            continue;
        const std::string bytes = detail::read_file(entry.path().string());
        EXPECT_EQ(serialize_circuit(parse_circuit(bytes)), bytes) << entry.path();
    }
}

TEST(Circuit, RejectsMalformedJsonWithLineAndColumn)
{
    auto e = parse_failure("{\n  \"components\": [\n    {\"ref\": \"U1\"");
    EXPECT_NE(e.locus().find("line 3"), std::string::npos) << e.locus();
    EXPECT_NE(e.detail().find("malformed"), std::string::npos);
}

TEST(Circuit, RejectsStructuralErrors)
{
    EXPECT_EQ(parse_failure(R"({"components": [{"ref": "r1", "part_type": "R", "pins": [{"number": 1, "name": "1"}]}], "nets": []})")
                  .locus(),
              "components[0].ref");
    EXPECT_EQ(parse_failure(R"({"components": [{"ref": "R1", "part_type": "R", "pins": [{"number": 1, "name": "1"}]},
                                                {"ref": "R1", "part_type": "R", "pins": [{"number": 1, "name": "1"}]}], "nets": []})")
                  .detail(),
              "duplicate ref 'R1'");
    auto e = parse_failure(R"({"components": [{"ref": "R1", "part_type": "R", "pins": [{"number": 1, "name": "1"}]}],
                              "nets": [{"name": "A", "endpoints": [["R1", 1]]}, {"name": "B", "endpoints": [["R1", 1]]}]})");
    EXPECT_EQ(e.locus(), "nets[1].endpoints[0]");
    EXPECT_NE(e.detail().find("multiple nets"), std::string::npos);
    EXPECT_NE(parse_failure(R"({"components": [], "nets": [{"name": "A", "endpoints": [["X1", 1]]}]})").detail().find("unknown component"),
              std::string::npos);
    EXPECT_NE(parse_failure(R"({"components": [{"ref": "R1", "part_type": "R", "pins": [{"number": 1, "name": "1"}]}],
                                "nets": [{"name": "A", "endpoints": [["R1", 7]]}]})")
                  .detail()
                  .find("unknown pin"),
              std::string::npos);
    EXPECT_NE(parse_failure(R"({"components": [{"ref": "R1", "part_type": "R", "pins": []}], "nets": []})").detail().find("no pins"),
              std::string::npos);
    EXPECT_NE(parse_failure("[1, 2]").detail().find("object"), std::string::npos);
}

TEST(Circuit, LoadPrefixesPath)
{
    try {
        load_circuit("/nonexistent/file.json");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent/file.json"), std::string::npos);
    }
}

TEST(Circuit, DesignatorShape)
{
    EXPECT_TRUE(is_designator("U12"));
    EXPECT_TRUE(is_designator("TP3"));
    EXPECT_FALSE(is_designator("U"));
    EXPECT_FALSE(is_designator("12"));
    EXPECT_FALSE(is_designator("U1A"));
    EXPECT_FALSE(is_designator("u1"));
}

// Properties over random circuits.

TEST(CircuitProperty, RoundTripIsFixpoint)
{
    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        Circuit c = sgtest::random_circuit(rng, 1 + i % 9, 1 + i % 7);
        const std::string s = serialize_circuit(c);
        Circuit back = parse_circuit(s);
        EXPECT_EQ(back, c);
        EXPECT_EQ(serialize_circuit(back), s);
    }
}

TEST(CircuitProperty, InputOrderDoesNotMatter)
{
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        Circuit c = sgtest::random_circuit(rng, 2 + i % 8, 2 + i % 5);
        auto comps = c.components();
        auto nets = c.nets();
        std::shuffle(comps.begin(), comps.end(), rng);
        for (auto &comp : comps)
            std::shuffle(comp.pins.begin(), comp.pins.end(), rng);
        std::shuffle(nets.begin(), nets.end(), rng);
        for (auto &n : nets)
            std::shuffle(n.endpoints.begin(), n.endpoints.end(), rng);
        Circuit shuffled = Circuit::build(comps, nets, c.metadata());
        EXPECT_EQ(serialize_circuit(shuffled), serialize_circuit(c));
    }
}

TEST(CircuitProperty, EveryPinHasAtMostOnePotential)
{
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        Circuit c = sgtest::random_circuit(rng, 1 + i % 10, 1 + i % 6);
        std::map<PinRef, int> seen;
        for (const auto &n : c.nets())
            for (const auto &ep : n.endpoints)
                ++seen[ep];
        for (const auto &[ep, count] : seen) {
            EXPECT_EQ(count, 1);
            EXPECT_TRUE(net_of(c, ep.ref, ep.pin).has_value());
        }
    }
}

TEST(CircuitProperty, BipartiteGraphIsFaithful)
{
    std::mt19937 rng(17);
    for (int i = 0; i < 200; ++i) {
        Circuit c = sgtest::random_circuit(rng, 1 + i % 10, 1 + i % 6);
        BipartiteGraph g = build_bipartite_graph(c);
        EXPECT_EQ(g.component_vertices.size(), c.components().size());
        EXPECT_EQ(g.net_vertices.size(), c.nets().size());
        std::size_t bound = 0;
        for (const auto &comp : c.components())
            for (const auto &p : comp.pins)
                if (auto net = net_of(c, comp.ref, p.number)) {
                    ++bound;
                    EXPECT_TRUE(std::binary_search(g.edges.begin(), g.edges.end(),
                                                   BipartiteGraph::Edge{comp.ref, p.number, *net}));
                }
        EXPECT_EQ(g.edges.size(), bound);
    }
}
