// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace schemaguard;

namespace {

ParseError kg_failure(std::string_view text)
{
    try {
        parse_kg(text);
    } catch (const ParseError &e) {
        return e;
    }
    ADD_FAILURE() << "expected a parse error";
    return ParseError("", "");
}

std::string one_part(std::string_view pins, std::string_view constraints = "[]")
{
    return std::string(R"({"parts": {"X": {"pins": )") + std::string(pins) + R"(, "constraints": )" +
           std::string(constraints) + R"(, "attributes": {}}}})";
}

} // namespace

TEST(KnowledgeGraph, RoleVocabulary)
{
    EXPECT_EQ(kPinRoleNames.size(), 32u);
    std::set<std::string_view> names(kPinRoleNames.begin(), kPinRoleNames.end());
    EXPECT_EQ(names.size(), 32u);
    for (auto r : kReservedRoleNames)
        EXPECT_FALSE(pin_role_from_string(r).has_value());
    EXPECT_EQ(pin_role_from_string("mosfet_gate"), PinRole::mosfet_gate);
    EXPECT_TRUE(is_supply_role(PinRole::secondary_gnd));
    EXPECT_FALSE(is_supply_role(PinRole::buck_vin));
    EXPECT_TRUE(is_vdd_role(PinRole::buck_vin));
    EXPECT_TRUE(is_gnd_role(PinRole::buck_gnd));
    EXPECT_TRUE(is_isolated_supply_role(PinRole::primary_vdd));
    EXPECT_FALSE(is_isolated_supply_role(PinRole::supply_vdd));
}

TEST(KnowledgeGraph, ShippedCoverage)
{
    const auto &kg = sgtest::shipped_kg();
    for (const char *part : {"R", "C", "L", "D", "C_film", "Inductor_power", "TLV1117-33", "TPS54302", "OPA328",
                             "AMC1350", "ACS37010", "UCC27211", "UCC27511", "UCC21710", "UCC5390E", "MGJ2D121505SC",
                             "IMZA65R015M2H", "BSC052N08NS5", "transformer_PQ5050"})
        EXPECT_NE(kg.find(part), nullptr) << part;
}

TEST(KnowledgeGraph, ShippedIsLintClean)
{
    auto diags = lint_kg(sgtest::shipped_kg());
    for (const auto &d : diags)
        ADD_FAILURE() << d.message;
}

TEST(KnowledgeGraph, ShippedMeanFootprintInBand)
{
    const auto &kg = sgtest::shipped_kg();
    double total = 0;
    for (const auto &[name, e] : kg.entries())
        total += static_cast<double>(token_footprint(e));
    const double mean = total / static_cast<double>(kg.entries().size());
    RecordProperty("mean_footprint", std::to_string(mean));
    EXPECT_GE(mean, 100.0);
    EXPECT_LE(mean, 600.0);
}

TEST(KnowledgeGraph, LookupAndRoles)
{
    const auto &kg = sgtest::shipped_kg();
    const auto &mgj = kg.entry("MGJ2D121505SC");
    EXPECT_EQ(mgj.find_pin("+VOUT")->number, 7);
    EXPECT_EQ(mgj.find_pin(2)->role, PinRole::primary_gnd);
    EXPECT_EQ(mgj.isolation_group_of(6), "secondary");
    EXPECT_EQ(role_of(kg, "UCC27211", 2), PinRole::halfbridge_hb);
    EXPECT_THROW(kg.entry("NOPE"), LookupError);
    EXPECT_THROW(role_of(kg, "R", 9), LookupError);
    EXPECT_EQ(kg.entry("D").attribute("passive_kind"), "diode");
}

TEST(KnowledgeGraph, RoundTrip)
{
    const auto &kg = sgtest::shipped_kg();
    const std::string s = serialize_kg(kg);
    EXPECT_EQ(serialize_kg(parse_kg(s)), s);
}

TEST(KnowledgeGraph, RejectsBadEntries)
{
    EXPECT_NE(kg_failure(one_part(R"([{"number": 1, "name": "A", "role": "wizard"}])")).detail().find("unknown pin role"),
              std::string::npos);
    EXPECT_NE(kg_failure(one_part(R"([{"number": 1, "name": "A", "role": "role_reserved_1"}])")).detail().find("reserved"),
              std::string::npos);
    EXPECT_NE(kg_failure(one_part(R"([{"number": 1, "name": "A", "role": "out"}, {"number": 1, "name": "B", "role": "out"}])"))
                  .detail()
                  .find("duplicate pin number"),
              std::string::npos);
    EXPECT_NE(kg_failure(one_part(R"([{"number": 1, "name": "A", "role": "supply_vdd"}])",
                                  R"([{"kind": "supply_pair", "pins": ["A"]}])"))
                  .detail()
                  .find("arity"),
              std::string::npos);
    EXPECT_NE(kg_failure(one_part(R"([{"number": 1, "name": "A", "role": "out"}])",
                                  R"([{"kind": "must_be_connected", "pins": ["Z"]}])"))
                  .locus()
                  .find("constraints[0].pins[0]"),
              std::string::npos);
    EXPECT_NE(kg_failure(one_part(R"([{"number": 1, "name": "A", "role": "out"}])", R"([{"kind": "teleport", "pins": ["A"]}])"))
                  .detail()
                  .find("unknown constraint kind"),
              std::string::npos);
}

TEST(KnowledgeGraph, LintFindsEachProblem)
{
    auto kg = parse_kg(R"({"parts": {
      "A": {"pins": [{"number": 1, "name": "V", "role": "supply_vdd"}, {"number": 2, "name": "G", "role": "mosfet_gate"}],
            "constraints": [], "attributes": {}},
      "B": {"pins": [{"number": 1, "name": "P", "role": "primary_vdd"}, {"number": 2, "name": "Q", "role": "primary_gnd"}],
            "constraints": [{"kind": "supply_pair", "pins": ["P", "Q"]}], "attributes": {}}}})");
    auto d = lint_kg(kg);
    ASSERT_EQ(d.size(), 3u);
    EXPECT_EQ(d[0].code, "supply_pin_unpaired");
    EXPECT_EQ(d[1].code, "gate_without_driving_pair");
    EXPECT_EQ(d[2].code, "isolation_groups_missing");
    EXPECT_EQ(d[2].part_type, "B");
}

TEST(KnowledgeGraph, TokenCounting)
{
    EXPECT_EQ(count_tokens(""), 0u);
    EXPECT_EQ(count_tokens("  a b\tc\n"), 3u);
    EXPECT_EQ(count_tokens(R"({"pins":[{"number":1,"name":"VDD"}]})"), 5u);
    EXPECT_EQ(count_tokens("x-y z_w"), 2u);
}

TEST(KnowledgeGraph, FootprintTracksSerializedEntry)
{
    const auto &e = sgtest::shipped_kg().entry("R");
    EXPECT_EQ(token_footprint(e), count_tokens(serialize_part_entry(e)));
    PartEntry bigger = e;
    bigger.attributes["note"] = "one two three";
    EXPECT_EQ(token_footprint(bigger), token_footprint(e) + 4);
}
