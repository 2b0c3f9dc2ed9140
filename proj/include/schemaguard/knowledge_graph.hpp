// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

// Datasheet knowledge graph: pin-role ontology, per-part constraint
// declarations, opaque attributes and isolation domains.

#include "schemaguard/error.hpp"
#include "schemaguard/json_support.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace schemaguard {

enum class PinRole {
    // power supply
    supply_vdd,
    supply_gnd,
    primary_vdd,
    primary_gnd,
    secondary_vdd,
    secondary_gnd,
    // signal I/O
    sense_plus,
    sense_minus,
    out,
    out_plus,
    out_minus,
    // logic
    logic_in,
    logic_out,
    // passive
    passive_terminal,
    diode_anode,
    diode_cathode,
    // buck regulator
    buck_vin,
    buck_gnd,
    buck_sw,
    buck_fb,
    buck_en,
    buck_boot,
    // half-bridge driver
    halfbridge_hb,
    halfbridge_hs,
    gate_ho,
    gate_lo,
    // MOSFET
    mosfet_gate,
    mosfet_drain,
    mosfet_source,
    mosfet_kelvin_source,
    // transformer
    xfmr_primary,
    xfmr_secondary,
};

inline constexpr std::array<std::string_view, 32> kPinRoleNames = {
    "supply_vdd",    "supply_gnd",     "primary_vdd",    "primary_gnd",      "secondary_vdd", "secondary_gnd",
    "sense_plus",    "sense_minus",    "out",            "out_plus",         "out_minus",     "logic_in",
    "logic_out",     "passive_terminal", "diode_anode",  "diode_cathode",    "buck_vin",      "buck_gnd",
    "buck_sw",       "buck_fb",        "buck_en",        "buck_boot",        "halfbridge_hb", "halfbridge_hs",
    "gate_ho",       "gate_lo",        "mosfet_gate",    "mosfet_drain",     "mosfet_source", "mosfet_kelvin_source",
    "xfmr_primary",  "xfmr_secondary",
};

/// Identifiers held back for the two ontology slots that have no definition.
/// They are recognised only so that loading them fails with a precise message.
inline constexpr std::array<std::string_view, 2> kReservedRoleNames = {"role_reserved_1", "role_reserved_2"};

inline std::string_view to_string(PinRole r)
{
    return kPinRoleNames[static_cast<std::size_t>(r)];
}

inline std::optional<PinRole> pin_role_from_string(std::string_view s)
{
    for (std::size_t i = 0; i < kPinRoleNames.size(); ++i)
        if (kPinRoleNames[i] == s)
            return static_cast<PinRole>(i);
    return std::nullopt;
}

inline bool is_supply_role(PinRole r)
{
    return r == PinRole::supply_vdd || r == PinRole::supply_gnd || r == PinRole::primary_vdd
        || r == PinRole::primary_gnd || r == PinRole::secondary_vdd || r == PinRole::secondary_gnd;
}

inline bool is_vdd_role(PinRole r)
{
    return r == PinRole::supply_vdd || r == PinRole::primary_vdd || r == PinRole::secondary_vdd
        || r == PinRole::buck_vin;
}

inline bool is_gnd_role(PinRole r)
{
    return r == PinRole::supply_gnd || r == PinRole::primary_gnd || r == PinRole::secondary_gnd
        || r == PinRole::buck_gnd;
}

inline bool is_isolated_supply_role(PinRole r)
{
    return r == PinRole::primary_vdd || r == PinRole::primary_gnd || r == PinRole::secondary_vdd
        || r == PinRole::secondary_gnd;
}

enum class ConstraintKind { supply_pair, must_be_connected, driving_pair, differential_pair_must_be_distinct };

inline std::string_view to_string(ConstraintKind k)
{
    switch (k) {
    case ConstraintKind::supply_pair: return "supply_pair";
    case ConstraintKind::must_be_connected: return "must_be_connected";
    case ConstraintKind::driving_pair: return "driving_pair";
    case ConstraintKind::differential_pair_must_be_distinct: return "differential_pair_must_be_distinct";
    }
    return "?";
}

inline std::optional<ConstraintKind> constraint_kind_from_string(std::string_view s)
{
    for (auto k : {ConstraintKind::supply_pair, ConstraintKind::must_be_connected, ConstraintKind::driving_pair,
                   ConstraintKind::differential_pair_must_be_distinct})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

/// Pins are referenced by datasheet name; numbers are resolved via the entry.
struct ConstraintDecl
{
    ConstraintKind kind{};
    std::vector<std::string> pins;

    friend bool operator==(const ConstraintDecl &, const ConstraintDecl &) = default;
};

struct KgPin
{
    int number = 0;
    std::string name;
    PinRole role{};

    friend bool operator==(const KgPin &, const KgPin &) = default;
};

struct PartEntry
{
    std::string part_type;
    std::vector<KgPin> pins; // sorted by number
    std::vector<ConstraintDecl> constraints;
    std::map<std::string, std::string> attributes;
    std::optional<std::map<std::string, std::vector<int>>> isolation_groups;

    const KgPin *find_pin(int number) const
    {
        auto it = std::find_if(pins.begin(), pins.end(), [&](const KgPin &p) { return p.number == number; });
        return it == pins.end() ? nullptr : &*it;
    }

    const KgPin *find_pin(std::string_view name) const
    {
        auto it = std::find_if(pins.begin(), pins.end(), [&](const KgPin &p) { return p.name == name; });
        return it == pins.end() ? nullptr : &*it;
    }

    /// Name of the isolation group holding `pin`, if any.
    std::optional<std::string> isolation_group_of(int pin) const
    {
        if (!isolation_groups)
            return std::nullopt;
        for (const auto &[group, members] : *isolation_groups)
            if (std::find(members.begin(), members.end(), pin) != members.end())
                return group;
        return std::nullopt;
    }

    std::optional<std::string> attribute(std::string_view key) const
    {
        auto it = attributes.find(std::string(key));
        if (it == attributes.end())
            return std::nullopt;
        return it->second;
    }

    friend bool operator==(const PartEntry &, const PartEntry &) = default;
};

class KnowledgeGraph
{
public:
    KnowledgeGraph() = default;
    explicit KnowledgeGraph(std::map<std::string, PartEntry> entries)
        : entries_(std::move(entries))
    {}

    const std::map<std::string, PartEntry> &entries() const noexcept { return entries_; }

    const PartEntry *find(std::string_view part_type) const
    {
        auto it = entries_.find(std::string(part_type));
        return it == entries_.end() ? nullptr : &it->second;
    }

    const PartEntry &entry(std::string_view part_type) const
    {
        if (const PartEntry *e = find(part_type))
            return *e;
        throw LookupError("unknown part type '" + std::string(part_type) + "'");
    }

    bool empty() const noexcept { return entries_.empty(); }

    friend bool operator==(const KnowledgeGraph &, const KnowledgeGraph &) = default;

private:
    std::map<std::string, PartEntry> entries_;
};

inline PinRole role_of(const KnowledgeGraph &kg, std::string_view part_type, int pin)
{
    const PartEntry &e = kg.entry(part_type);
    if (const KgPin *p = e.find_pin(pin))
        return p->role;
    throw LookupError("unknown pin " + std::to_string(pin) + " of part type '" + std::string(part_type) + "'");
}

// ---------------------------------------------------------------------------
// Loading

namespace detail {

inline void check_arity(const ConstraintDecl &d, const std::string &at)
{
    const std::size_t n = d.pins.size();
    bool ok = true;
    switch (d.kind) {
    case ConstraintKind::supply_pair:
    case ConstraintKind::differential_pair_must_be_distinct: ok = n == 2; break;
    case ConstraintKind::must_be_connected: ok = n >= 1; break;
    case ConstraintKind::driving_pair: ok = n == 1; break;
    }
    if (!ok)
        throw ParseError(at + ".pins", "constraint arity violation: " + std::string(to_string(d.kind)) + " with "
                                           + std::to_string(n) + " pin(s)");
}

inline PartEntry part_entry_from_json(const std::string &part_type, const json &je, const std::string &at)
{
    if (!je.is_object())
        throw ParseError(at, "expected an object");
    PartEntry e;
    e.part_type = part_type;

    const auto &jpins = require_array(je, "pins", at);
    if (jpins.empty())
        throw ParseError(at + ".pins", "part has no pins");
    std::set<int> numbers;
    std::set<std::string> names;
    for (std::size_t i = 0; i < jpins.size(); ++i) {
        const std::string pat = index_path(at + ".pins", i);
        KgPin pin;
        pin.number = static_cast<int>(require_integer(require(jpins[i], "number", pat), pat + ".number"));
        pin.name = require_string(jpins[i], "name", pat);
        const std::string role = require_string(jpins[i], "role", pat);
        if (pin.number < 1)
            throw ParseError(pat + ".number", "pin number must be >= 1");
        if (pin.name.empty())
            throw ParseError(pat + ".name", "empty pin name");
        if (std::find(kReservedRoleNames.begin(), kReservedRoleNames.end(), role) != kReservedRoleNames.end())
            throw ParseError(pat + ".role", "unknown pin role '" + role + "' (reserved, not defined)");
        auto r = pin_role_from_string(role);
        if (!r)
            throw ParseError(pat + ".role", "unknown pin role '" + role + "'");
        pin.role = *r;
        if (!numbers.insert(pin.number).second)
            throw ParseError(pat + ".number", "duplicate pin number " + std::to_string(pin.number));
        if (!names.insert(pin.name).second)
            throw ParseError(pat + ".name", "duplicate pin name '" + pin.name + "'");
        e.pins.push_back(std::move(pin));
    }
    std::sort(e.pins.begin(), e.pins.end(), [](const KgPin &a, const KgPin &b) { return a.number < b.number; });

    if (auto it = je.find("constraints"); it != je.end()) {
        if (!it->is_array())
            throw ParseError(at + ".constraints", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string cat = index_path(at + ".constraints", i);
            const auto &jc = (*it)[i];
            const std::string kind = require_string(jc, "kind", cat);
            auto k = constraint_kind_from_string(kind);
            if (!k)
                throw ParseError(cat + ".kind", "unknown constraint kind '" + kind + "'");
            ConstraintDecl d;
            d.kind = *k;
            const auto &jp = require_array(jc, "pins", cat);
            for (std::size_t p = 0; p < jp.size(); ++p) {
                if (!jp[p].is_string())
                    throw ParseError(index_path(cat + ".pins", p), "expected a pin name");
                d.pins.push_back(jp[p].get<std::string>());
            }
            check_arity(d, cat);
            for (std::size_t p = 0; p < d.pins.size(); ++p)
                if (!e.find_pin(d.pins[p]))
                    throw ParseError(index_path(cat + ".pins", p),
                                     "constraint names nonexistent pin '" + d.pins[p] + "'");
            e.constraints.push_back(std::move(d));
        }
    }

    if (auto it = je.find("attributes"); it != je.end()) {
        if (!it->is_object())
            throw ParseError(at + ".attributes", "expected an object");
        for (const auto &[k, v] : it->items()) {
            if (!v.is_string())
                throw ParseError(at + ".attributes." + k, "expected a string");
            e.attributes.emplace(k, v.get<std::string>());
        }
    }

    if (auto it = je.find("isolation_groups"); it != je.end() && !it->is_null()) {
        if (!it->is_object())
            throw ParseError(at + ".isolation_groups", "expected an object");
        std::map<std::string, std::vector<int>> groups;
        std::set<int> used;
        for (const auto &[name, members] : it->items()) {
            const std::string gat = at + ".isolation_groups." + name;
            if (!members.is_array() || members.empty())
                throw ParseError(gat, "isolation group must be a non-empty array of pin numbers");
            std::vector<int> pins;
            for (std::size_t m = 0; m < members.size(); ++m) {
                const int pin = static_cast<int>(require_integer(members[m], index_path(gat, m)));
                if (!e.find_pin(pin))
                    throw ParseError(index_path(gat, m), "isolation group names nonexistent pin " + std::to_string(pin));
                if (!used.insert(pin).second)
                    throw ParseError(index_path(gat, m), "isolation groups overlap on pin " + std::to_string(pin));
                pins.push_back(pin);
            }
            std::sort(pins.begin(), pins.end());
            groups.emplace(name, std::move(pins));
        }
        if (groups.size() < 2)
            throw ParseError(at + ".isolation_groups", "need at least two isolation groups");
        e.isolation_groups = std::move(groups);
    }
    return e;
}

inline json part_entry_to_json(const PartEntry &e)
{
    json je = json::object();
    je["pins"] = json::array();
    for (const auto &p : e.pins)
        je["pins"].push_back(json{{"number", p.number}, {"name", p.name}, {"role", to_string(p.role)}});
    je["constraints"] = json::array();
    for (const auto &c : e.constraints)
        je["constraints"].push_back(json{{"kind", to_string(c.kind)}, {"pins", c.pins}});
    je["attributes"] = json::object();
    for (const auto &[k, v] : e.attributes)
        je["attributes"][k] = v;
    if (e.isolation_groups) {
        je["isolation_groups"] = json::object();
        for (const auto &[g, pins] : *e.isolation_groups)
            je["isolation_groups"][g] = pins;
    }
    return je;
}

} // namespace detail

inline KnowledgeGraph kg_from_json(const detail::json &doc)
{
    if (!doc.is_object())
        throw ParseError("", "malformed document: top level must be an object");
    const auto &parts = detail::require(doc, "parts", "");
    if (!parts.is_object())
        throw ParseError("parts", "expected an object");
    std::map<std::string, PartEntry> entries;
    for (const auto &[part_type, je] : parts.items()) {
        if (part_type.empty())
            throw ParseError("parts", "empty part type key");
        entries.emplace(part_type, detail::part_entry_from_json(part_type, je, "parts." + part_type));
    }
    return KnowledgeGraph(std::move(entries));
}

inline KnowledgeGraph parse_kg(std::string_view bytes)
{
    return kg_from_json(detail::parse_json_text(bytes));
}

inline std::string serialize_kg(const KnowledgeGraph &kg)
{
    detail::json doc = detail::json::object();
    doc["parts"] = detail::json::object();
    for (const auto &[k, e] : kg.entries())
        doc["parts"][k] = detail::part_entry_to_json(e);
    return detail::dump_canonical(doc);
}

inline KnowledgeGraph load_kg(const std::string &path)
{
    const std::string text = detail::read_file(path);
    try {
        return parse_kg(text);
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.locus(), e.detail());
    }
}

// ---------------------------------------------------------------------------
// Lint

struct KgDiagnostic
{
    std::string part_type;
    std::optional<int> pin;
    std::string code;
    std::string message;

    friend bool operator==(const KgDiagnostic &, const KgDiagnostic &) = default;
};

/// Authoring checks: supply pins outside any supply_pair, isolated parts
/// without isolation groups, MOSFET gates without a driving_pair.
inline std::vector<KgDiagnostic> lint_kg(const KnowledgeGraph &kg)
{
    std::vector<KgDiagnostic> out;
    for (const auto &[part_type, e] : kg.entries()) {
        auto named_by = [&](ConstraintKind kind, const std::string &pin) {
            return std::any_of(e.constraints.begin(), e.constraints.end(), [&](const ConstraintDecl &d) {
                return d.kind == kind && std::find(d.pins.begin(), d.pins.end(), pin) != d.pins.end();
            });
        };
        bool isolated = false;
        for (const auto &p : e.pins) {
            if (is_isolated_supply_role(p.role))
                isolated = true;
            if (is_supply_role(p.role) && !named_by(ConstraintKind::supply_pair, p.name))
                out.push_back({part_type, p.number, "supply_pin_unpaired",
                               part_type + ": supply pin " + p.name + " lacks a supply_pair constraint"});
            if (p.role == PinRole::mosfet_gate && !named_by(ConstraintKind::driving_pair, p.name))
                out.push_back({part_type, p.number, "gate_without_driving_pair",
                               part_type + ": gate pin " + p.name + " lacks a driving_pair constraint"});
        }
        if (isolated && !e.isolation_groups)
            out.push_back({part_type, std::nullopt, "isolation_groups_missing",
                           part_type + ": isolated part lacks isolation groups"});
    }
    std::stable_sort(out.begin(), out.end(), [](const KgDiagnostic &a, const KgDiagnostic &b) {
        return std::tie(a.part_type, a.pin, a.code) < std::tie(b.part_type, b.pin, b.code);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Token footprint

/// Tokens of `text` split on whitespace and the JSON structural characters.
inline std::size_t count_tokens(std::string_view text)
{
    auto is_sep = [](char ch) {
        return std::isspace(static_cast<unsigned char>(ch)) || ch == '{' || ch == '}' || ch == '[' || ch == ']'
            || ch == ':' || ch == ',' || ch == '"';
    };
    std::size_t count = 0;
    bool in_token = false;
    for (char ch : text) {
        if (is_sep(ch)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++count;
        }
    }
    return count;
}

/// Canonical serialization of a single entry, keyed by its part type.
inline std::string serialize_part_entry(const PartEntry &e)
{
    detail::json doc = detail::json::object();
    doc[e.part_type] = detail::part_entry_to_json(e);
    return detail::dump_canonical(doc);
}

inline std::size_t token_footprint(const PartEntry &e)
{
    return count_tokens(serialize_part_entry(e));
}

} // namespace schemaguard
