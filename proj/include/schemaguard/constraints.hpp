// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

// Verification phases 1 and 2: structural ERC and per-part knowledge-graph
// constraints (including isolation-barrier checks).

#include "schemaguard/circuit.hpp"
#include "schemaguard/knowledge_graph.hpp"
#include "schemaguard/violation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace schemaguard {

namespace detail {

/// Net bound to the pin named `name` of `comp`, resolving the number via the
/// KG entry. Pins absent from the circuit component count as floating.
inline std::optional<std::string>
net_of_named_pin(const Circuit &c, const Component &comp, const PartEntry &entry, const std::string &name)
{
    const KgPin *kp = entry.find_pin(name);
    if (!kp || !comp.find_pin(kp->number))
        return std::nullopt;
    return c.net_of(comp.ref, kp->number);
}

inline std::string circuit_pin_name(const Circuit &c, const PinRef &ep)
{
    if (const Component *comp = c.find_component(ep.ref))
        if (const PinId *p = comp->find_pin(ep.pin))
            return p->name;
    return std::to_string(ep.pin);
}

inline void sort_violations(std::vector<Violation> &vs)
{
    std::stable_sort(vs.begin(), vs.end(), [](const Violation &a, const Violation &b) {
        const std::string &pa = a.pins.empty() ? std::string() : a.pins.front();
        const std::string &pb = b.pins.empty() ? std::string() : b.pins.front();
        return std::tie(a.phase, a.subject, pa, a.code, a.nets) < std::tie(b.phase, b.subject, pb, b.code, b.nets);
    });
}

} // namespace detail

/// Phase 1. Nets listed in `exempt_nets` are off-board I/O and may carry a
/// single on-board endpoint.
inline std::vector<Violation>
check_erc(const Circuit &c, const KnowledgeGraph &kg, const std::set<std::string> &exempt_nets = {})
{
    std::vector<Violation> out;
    constexpr Phase P1 = Phase::Phase1_SyntaxERC;

    for (const auto &comp : c.components()) {
        const PartEntry *entry = kg.find(comp.part_type);
        if (!entry) {
            out.push_back(make_violation(P1, codes::unknown_part, comp.ref, {}, {}));
            continue;
        }
        for (const auto &pin : comp.pins)
            if (!entry->find_pin(pin.number))
                out.push_back(make_violation(P1, codes::unknown_pin, comp.ref, {pin.name}, {}));

        std::set<std::string> reported;
        for (const auto &decl : entry->constraints) {
            if (decl.kind != ConstraintKind::must_be_connected)
                continue;
            for (const auto &name : decl.pins) {
                const KgPin *kp = entry->find_pin(name);
                if (!kp || !is_supply_role(kp->role) || reported.count(name))
                    continue;
                if (!detail::net_of_named_pin(c, comp, *entry, name)) {
                    reported.insert(name);
                    out.push_back(make_violation(P1, codes::floating_supply_pin, comp.ref, {name}, {}));
                }
            }
        }
    }

    for (const auto &net : c.nets()) {
        if (net.endpoints.size() == 1 && !exempt_nets.count(net.name)) {
            const PinRef &ep = net.endpoints.front();
            out.push_back(make_violation(P1, codes::single_endpoint_net, ep.ref,
                                         {detail::circuit_pin_name(c, ep)}, {net.name}));
        }

        // Power pin conflict: `out` pins of two or more distinct components.
        std::vector<std::string> drivers;
        std::set<std::string> driver_refs;
        for (const auto &ep : net.endpoints) {
            const Component &comp = c.component(ep.ref);
            const PartEntry *entry = kg.find(comp.part_type);
            if (!entry)
                continue;
            const KgPin *kp = entry->find_pin(ep.pin);
            if (kp && kp->role == PinRole::out) {
                drivers.push_back(ep.ref + "." + kp->name);
                driver_refs.insert(ep.ref);
            }
        }
        if (driver_refs.size() >= 2)
            out.push_back(make_violation(P1, codes::multiple_drivers, *driver_refs.begin(), drivers, {net.name}));
    }

    detail::sort_violations(out);
    return out;
}

/// Evaluates one declared constraint for one component instance.
/// must_be_connected yields one violation per floating pin; the other kinds
/// yield at most one.
inline std::vector<Violation>
eval_constraint(const ConstraintDecl &decl, const Component &comp, const Circuit &c, const PartEntry &entry)
{
    constexpr Phase P2 = Phase::Phase2_KGConstraint;
    std::vector<Violation> out;
    auto net = [&](const std::string &name) { return detail::net_of_named_pin(c, comp, entry, name); };

    switch (decl.kind) {
    case ConstraintKind::supply_pair:
    case ConstraintKind::differential_pair_must_be_distinct: {
        auto a = net(decl.pins[0]);
        auto b = net(decl.pins[1]);
        if (a && b && *a == *b) {
            if (decl.kind == ConstraintKind::supply_pair)
                out.push_back(make_violation(P2, codes::supply_pair_shorted, comp.ref, decl.pins, {*a}));
            else
                out.push_back(make_violation(P2, codes::differential_same_net, comp.ref, decl.pins, {*a}));
        }
        break;
    }
    case ConstraintKind::must_be_connected:
        for (const auto &name : decl.pins)
            if (!net(name))
                out.push_back(make_violation(P2, codes::pin_unconnected, comp.ref, {name}, {}));
        break;
    case ConstraintKind::driving_pair: {
        const std::string &gate = decl.pins[0];
        auto n = net(gate);
        if (!n) {
            out.push_back(make_violation(P2, codes::gate_floating, comp.ref, {gate}, {}));
        } else if (const Net *gn = c.find_net(*n); gn && gn->endpoints.size() < 2) {
            out.push_back(make_violation(P2, codes::gate_floating, comp.ref, {gate}, {*n}));
        }
        break;
    }
    }
    return out;
}

inline std::vector<Violation> eval_constraint(const ConstraintDecl &decl, const Component &comp, const Circuit &c,
                                              const KnowledgeGraph &kg)
{
    return eval_constraint(decl, comp, c, kg.entry(comp.part_type));
}

/// Phase 2: isolation-barrier bridges and every declared per-part constraint.
inline std::vector<Violation> check_intra(const Circuit &c, const KnowledgeGraph &kg)
{
    std::vector<Violation> out;
    for (const auto &comp : c.components()) {
        const PartEntry *entry = kg.find(comp.part_type);
        if (!entry)
            continue;

        if (entry->isolation_groups) {
            // net -> (group -> first pin name in that group)
            std::map<std::string, std::map<std::string, std::string>> seen;
            for (const auto &pin : comp.pins) {
                auto group = entry->isolation_group_of(pin.number);
                auto net = c.net_of(comp.ref, pin.number);
                if (!group || !net)
                    continue;
                const KgPin *kp = entry->find_pin(pin.number);
                seen[*net].emplace(*group, kp ? kp->name : pin.name);
            }
            for (const auto &[net, groups] : seen) {
                if (groups.size() < 2)
                    continue;
                auto it = groups.begin();
                const std::string first = it->second;
                const std::string second = std::next(it)->second;
                out.push_back(
                    make_violation(Phase::Phase2_KGConstraint, codes::isolation_bridged, comp.ref, {first, second}, {net}));
            }
        }

        for (const auto &decl : entry->constraints) {
            auto vs = eval_constraint(decl, comp, c, *entry);
            out.insert(out.end(), vs.begin(), vs.end());
        }
    }
    detail::sort_violations(out);
    return out;
}

/// Phase 1 then Phase 2, each block in (ref, pin name, code) order.
inline std::vector<Violation>
run_phase12(const Circuit &c, const KnowledgeGraph &kg, const std::set<std::string> &exempt_nets = {})
{
    std::vector<Violation> out = check_erc(c, kg, exempt_nets);
    std::vector<Violation> intra = check_intra(c, kg);
    out.insert(out.end(), intra.begin(), intra.end());
    return out;
}

} // namespace schemaguard
