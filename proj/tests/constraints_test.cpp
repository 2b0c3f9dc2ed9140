// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace schemaguard;
using sgtest::codes_of;
using sgtest::make_circuit;
using sgtest::messages;
using Strings = std::vector<std::string>;

namespace {

Circuit ldo(bool with_output_cap = true)
{
    std::map<std::string, std::vector<sgtest::Conn>> nets{
        {"VIN", {{"U1", "INPUT"}, {"C1", "1"}}},
        {"GND", {{"U1", "GND"}, {"C1", "2"}, {"C2", "2"}}},
        {"VOUT", {{"U1", "OUTPUT"}, {"C2", "1"}}}};
    std::map<std::string, std::string> parts{{"U1", "TLV1117-33"}, {"C1", "C"}, {"C2", "C"}};
    if (!with_output_cap) {
        parts.erase("C2");
        nets["GND"].pop_back();
        nets["VOUT"].pop_back();
    }
    return make_circuit(parts, nets);
}

} // namespace

TEST(Erc, CleanCircuitHasNoFindings)
{
    EXPECT_TRUE(check_erc(ldo(), sgtest::shipped_kg()).empty());
    EXPECT_TRUE(run_phase12(ldo(), sgtest::shipped_kg()).empty());
}

TEST(Erc, SingleEndpointNetAndExemption)
{
    Circuit c = ldo(false);
    auto v = check_erc(c, sgtest::shipped_kg());
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].code, "single_endpoint_net");
    EXPECT_EQ(v[0].message, "U1: single-endpoint net VOUT (pin OUTPUT)");
    EXPECT_EQ(v[0].phase, Phase::Phase1_SyntaxERC);
    EXPECT_TRUE(check_erc(c, sgtest::shipped_kg(), {"VOUT"}).empty());
}

TEST(Erc, UnknownPartAndPin)
{
    Circuit c = Circuit::build({Component{"U1", "NOT_A_PART", std::nullopt, {{1, "A"}}},
                                Component{"R1", "R", std::nullopt, {{1, "1"}, {2, "2"}, {3, "3"}}}},
                               {Net{"A", {{"U1", 1}, {"R1", 1}}}, Net{"B", {{"R1", 2}, {"R1", 3}}}});
    auto v = check_erc(c, sgtest::shipped_kg());
    EXPECT_EQ(messages(v), (Strings{"R1: pin 3 is not defined for this part type", "U1: part type not in knowledge graph"}));
}

TEST(Erc, FloatingSupplyPin)
{
    auto c = make_circuit({{"U1", "TLV1117-33"}, {"C1", "C"}},
                          {{"GND", {{"U1", "GND"}, {"C1", "2"}}}, {"VOUT", {{"U1", "OUTPUT"}, {"C1", "1"}}}});
    auto v = check_erc(c, sgtest::shipped_kg());
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].message, "U1: supply pin INPUT is floating");
}

TEST(Erc, TwoRegulatorsOnOneRail)
{
    auto c = make_circuit({{"U1", "TLV1117-33"}, {"U2", "TLV1117-33"}, {"C1", "C"}},
                          {{"VIN", {{"U1", "INPUT"}, {"U2", "INPUT"}}},
                           {"GND", {{"U1", "GND"}, {"U2", "GND"}, {"C1", "2"}}},
                           {"VOUT", {{"U1", "OUTPUT"}, {"U2", "OUTPUT"}, {"C1", "1"}}}});
    auto v = check_erc(c, sgtest::shipped_kg());
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].code, "multiple_drivers");
    EXPECT_EQ(v[0].message, "U1: multiple drivers on net VOUT (U1.OUTPUT, U2.OUTPUT)");
}

TEST(Erc, OneComponentWithTwoOutputPinsIsNotAConflict)
{
    auto c = make_circuit({{"U1", "TLV1117-33"}, {"C1", "C"}, {"C2", "C"}},
                          {{"VIN", {{"U1", "INPUT"}, {"C1", "1"}}},
                           {"GND", {{"U1", "GND"}, {"C1", "2"}, {"C2", "2"}}},
                           {"VOUT", {{"U1", "OUTPUT"}, {"U1", "TAB"}, {"C2", "1"}}}});
    EXPECT_TRUE(check_erc(c, sgtest::shipped_kg()).empty());
}

TEST(Intra, SupplyPairShorted)
{
    Circuit c = sgtest::mutation(7, "short_vin");
    auto v = check_intra(c, sgtest::shipped_kg());
    EXPECT_EQ(messages(v), (Strings{"U1: supply pair shorted (+VIN and -VIN on VIN)"}));
}

TEST(Intra, MustBeConnected)
{
    Circuit c = sgtest::mutation(6, "floating_feedback");
    auto v = check_intra(c, sgtest::shipped_kg());
    EXPECT_EQ(messages(v), (Strings{"U1: pin FB is unconnected"}));
}

TEST(Intra, DrivingPairOnSingleEndpointNet)
{
    Circuit c = sgtest::mutation(8, "gate_resistor_bypassed");
    auto v = check_intra(c, sgtest::shipped_kg());
    EXPECT_EQ(messages(v), (Strings{"Q1: gate net appears floating (G on GATE_H)"}));
}

TEST(Intra, DrivingPairUnconnectedGate)
{
    const auto &kg = sgtest::shipped_kg();
    const auto &entry = kg.entry("IMW65R015M2H");
    auto c = make_circuit({{"Q1", "IMW65R015M2H"}, {"R1", "R"}},
                          {{"D", {{"Q1", "D"}, {"R1", "1"}}}, {"S", {{"Q1", "S"}, {"R1", "2"}}}});
    auto v = eval_constraint(entry.constraints[0], c.component("Q1"), c, entry);
    EXPECT_EQ(messages(v), (Strings{"Q1: gate net appears floating (G unconnected)"}));
}

TEST(Intra, DifferentialPinsOnSameNet)
{
    Circuit c = sgtest::mutation(3, "merged_inputs");
    auto v = check_intra(c, sgtest::shipped_kg());
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].code, "differential_same_net");
    EXPECT_EQ(v[0].pins, (Strings{"+IN", "-IN"}));
}

TEST(Intra, IsolationBridge)
{
    Circuit c = sgtest::mutation(7, "bridge_isolation");
    auto v = check_intra(c, sgtest::shipped_kg());
    EXPECT_EQ(messages(v), (Strings{"U1: isolation barrier bridged (+VIN and +VOUT on VIN)"}));
}

TEST(Intra, MustBeConnectedReportsEveryFloatingPin)
{
    const auto &kg = sgtest::shipped_kg();
    auto c = make_circuit({{"U1", "OPA328"}, {"C1", "C"}}, {{"VCC", {{"U1", "V+"}, {"C1", "1"}}},
                                                          {"GND", {{"U1", "V-"}, {"C1", "2"}}}});
    auto v = check_intra(c, kg);
    EXPECT_EQ(messages(v), (Strings{"U1: pin +IN is unconnected", "U1: pin -IN is unconnected",
                                    "U1: pin OUT is unconnected"}));
}

TEST(Phase12, OrderIsDeterministic)
{
    Circuit c = sgtest::mutation(5, "floating_input");
    auto a = run_phase12(c, sgtest::shipped_kg());
    auto b = run_phase12(c, sgtest::shipped_kg());
    EXPECT_EQ(a, b);
    EXPECT_EQ(codes_of(a), (Strings{"single_endpoint_net", "floating_supply_pin", "pin_unconnected"}));
}

TEST(Phase12, ViolationJsonRoundTrip)
{
    for (const auto &v : run_phase12(sgtest::mutation(5, "floating_input"), sgtest::shipped_kg()))
        EXPECT_EQ(violation_from_json(violation_to_json(v)), v);
}
