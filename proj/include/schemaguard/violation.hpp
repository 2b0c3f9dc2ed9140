// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

#include "schemaguard/json_support.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace schemaguard {

enum class Phase { Phase1_SyntaxERC, Phase2_KGConstraint, Phase3_Topology, Phase4_SystemTopology };

inline constexpr std::array<Phase, 4> kAllPhases = {Phase::Phase1_SyntaxERC, Phase::Phase2_KGConstraint,
                                                    Phase::Phase3_Topology, Phase::Phase4_SystemTopology};

inline std::string_view to_string(Phase p)
{
    switch (p) {
    case Phase::Phase1_SyntaxERC: return "Phase1_SyntaxERC";
    case Phase::Phase2_KGConstraint: return "Phase2_KGConstraint";
    case Phase::Phase3_Topology: return "Phase3_Topology";
    case Phase::Phase4_SystemTopology: return "Phase4_SystemTopology";
    }
    return "?";
}

inline std::optional<Phase> phase_from_string(std::string_view s)
{
    for (Phase p : kAllPhases)
        if (to_string(p) == s)
            return p;
    return std::nullopt;
}

/// Stable violation codes.
namespace codes {
// Phase 1
inline constexpr std::string_view circuit_parse_error = "circuit_parse_error";
inline constexpr std::string_view generator_failure = "generator_failure";
inline constexpr std::string_view unknown_part = "unknown_part";
inline constexpr std::string_view unknown_pin = "unknown_pin";
inline constexpr std::string_view single_endpoint_net = "single_endpoint_net";
inline constexpr std::string_view floating_supply_pin = "floating_supply_pin";
inline constexpr std::string_view multiple_drivers = "multiple_drivers";
// Phase 2
inline constexpr std::string_view supply_pair_shorted = "supply_pair_shorted";
inline constexpr std::string_view pin_unconnected = "pin_unconnected";
inline constexpr std::string_view gate_floating = "gate_floating";
inline constexpr std::string_view differential_same_net = "differential_same_net";
inline constexpr std::string_view isolation_bridged = "isolation_bridged";
// Phase 3
inline constexpr std::string_view endpoint_unresolved = "endpoint_unresolved";
inline constexpr std::string_view c_direct_missing = "c_direct_missing";
inline constexpr std::string_view r_series_missing = "r_series_missing";
inline constexpr std::string_view l_series_missing = "l_series_missing";
inline constexpr std::string_view not_connected = "not_connected";
inline constexpr std::string_view not_distinct = "not_distinct";
inline constexpr std::string_view diode_forward_missing = "diode_forward_missing";
// Phase 4
inline constexpr std::string_view port_unresolved = "port_unresolved";
inline constexpr std::string_view skeleton_mismatch = "skeleton_mismatch";
inline constexpr std::string_view search_budget_exceeded = "search_budget_exceeded";
inline constexpr std::string_view port_path_missing = "port_path_missing";
inline constexpr std::string_view primitive_missing = "primitive_missing";
inline constexpr std::string_view isolation_not_distinct = "isolation_not_distinct";
} // namespace codes

struct Violation
{
    Phase phase{};
    std::string code;
    std::string subject; // component ref; empty for template-level findings
    std::vector<std::string> pins;
    std::vector<std::string> nets;
    std::string message;

    friend bool operator==(const Violation &, const Violation &) = default;
};

namespace detail {

inline std::string join(const std::vector<std::string> &items, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += sep;
        out += items[i];
    }
    return out;
}

inline const std::string &at_or_empty(const std::vector<std::string> &v, std::size_t i)
{
    static const std::string empty;
    return i < v.size() ? v[i] : empty;
}

} // namespace detail

/// Renders the full-detail message for Phase 1/2 codes from the structured
/// fields alone. Returns nullopt for codes whose text is produced elsewhere.
inline std::optional<std::string> describe(std::string_view code,
                                           const std::string &subject,
                                           const std::vector<std::string> &pins,
                                           const std::vector<std::string> &nets)
{
    using detail::at_or_empty;
    const std::string &p0 = at_or_empty(pins, 0);
    const std::string &p1 = at_or_empty(pins, 1);
    const std::string &n0 = at_or_empty(nets, 0);
    if (code == codes::unknown_part)
        return subject + ": part type not in knowledge graph";
    if (code == codes::unknown_pin)
        return subject + ": pin " + p0 + " is not defined for this part type";
    if (code == codes::single_endpoint_net)
        return subject + ": single-endpoint net " + n0 + " (pin " + p0 + ")";
    if (code == codes::floating_supply_pin)
        return subject + ": supply pin " + p0 + " is floating";
    if (code == codes::multiple_drivers)
        return subject + ": multiple drivers on net " + n0 + " (" + detail::join(pins, ", ") + ")";
    if (code == codes::supply_pair_shorted)
        return subject + ": supply pair shorted (" + p0 + " and " + p1 + " on " + n0 + ")";
    if (code == codes::pin_unconnected)
        return subject + ": pin " + p0 + " is unconnected";
    if (code == codes::gate_floating)
        return nets.empty() ? subject + ": gate net appears floating (" + p0 + " unconnected)"
                            : subject + ": gate net appears floating (" + p0 + " on " + n0 + ")";
    if (code == codes::differential_same_net)
        return subject + ": differential pins on same net (" + p0 + "=" + n0 + ")";
    if (code == codes::isolation_bridged)
        return subject + ": isolation barrier bridged (" + p0 + " and " + p1 + " on " + n0 + ")";
    return std::nullopt;
}

inline Violation make_violation(Phase phase,
                                std::string_view code,
                                std::string subject,
                                std::vector<std::string> pins,
                                std::vector<std::string> nets)
{
    Violation v{phase, std::string(code), std::move(subject), std::move(pins), std::move(nets), {}};
    v.message = describe(v.code, v.subject, v.pins, v.nets).value_or(v.code);
    return v;
}

inline detail::json violation_to_json(const Violation &v)
{
    return detail::json{{"phase", to_string(v.phase)}, {"code", v.code},   {"subject", v.subject},
                        {"pins", v.pins},               {"nets", v.nets}, {"message", v.message}};
}

inline Violation violation_from_json(const detail::json &j, const std::string &at = "violation")
{
    Violation v;
    const std::string phase = detail::require_string(j, "phase", at);
    auto p = phase_from_string(phase);
    if (!p)
        throw ParseError(at + ".phase", "unknown phase '" + phase + "'");
    v.phase = *p;
    v.code = detail::require_string(j, "code", at);
    v.subject = detail::require_string(j, "subject", at);
    v.pins = detail::require_array(j, "pins", at).get<std::vector<std::string>>();
    v.nets = detail::require_array(j, "nets", at).get<std::vector<std::string>>();
    v.message = detail::require_string(j, "message", at);
    return v;
}

} // namespace schemaguard
