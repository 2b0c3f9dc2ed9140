// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

// Verification phases 3 and 4: pairwise rules over resolved endpoints, the
// reduced net-role graph, primitive inference, skeleton matching and
// semantic predicates. `verify` runs the whole pipeline.

#include "schemaguard/circuit.hpp"
#include "schemaguard/constraints.hpp"
#include "schemaguard/knowledge_graph.hpp"
#include "schemaguard/subgraph_match.hpp"
#include "schemaguard/violation.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

namespace schemaguard {

// ---------------------------------------------------------------- endpoints

struct PinEndpoint
{
    std::string ref;
    std::string pin; // datasheet pin name
    friend bool operator==(const PinEndpoint &, const PinEndpoint &) = default;
};
struct RoleEndpoint
{
    PinRole role;
    friend bool operator==(const RoleEndpoint &, const RoleEndpoint &) = default;
};
struct NetEndpoint
{
    std::string net;
    friend bool operator==(const NetEndpoint &, const NetEndpoint &) = default;
};

using Endpoint = std::variant<PinEndpoint, RoleEndpoint, NetEndpoint>;

/// "role:<role>", "net:<name>" or "REF.PIN".
inline Endpoint parse_endpoint(std::string_view text)
{
    if (text.starts_with("role:")) {
        auto r = pin_role_from_string(text.substr(5));
        if (!r)
            throw ResolutionError("unknown pin role '" + std::string(text.substr(5)) + "' in endpoint");
        return RoleEndpoint{*r};
    }
    if (text.starts_with("net:")) {
        if (text.size() == 4)
            throw ResolutionError("empty net name in endpoint");
        return NetEndpoint{std::string(text.substr(4))};
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == text.size())
        throw ResolutionError("malformed endpoint '" + std::string(text) + "'");
    std::string ref(text.substr(0, dot));
    if (!is_designator(ref))
        throw ResolutionError("malformed endpoint '" + std::string(text) + "'");
    return PinEndpoint{std::move(ref), std::string(text.substr(dot + 1))};
}

inline std::string to_string(const Endpoint &ep)
{
    if (auto *p = std::get_if<PinEndpoint>(&ep))
        return p->ref + "." + p->pin;
    if (auto *r = std::get_if<RoleEndpoint>(&ep))
        return "role:" + std::string(to_string(r->role));
    return "net:" + std::get<NetEndpoint>(ep).net;
}

/// Short form used in messages: the bare role or net name, or REF.PIN.
inline std::string display_name(const Endpoint &ep)
{
    if (auto *r = std::get_if<RoleEndpoint>(&ep))
        return std::string(to_string(r->role));
    if (auto *n = std::get_if<NetEndpoint>(&ep))
        return n->net;
    const auto &p = std::get<PinEndpoint>(ep);
    return p.ref + "." + p.pin;
}

/// Nets an endpoint denotes in `c`. Empty for a floating pin, an absent role
/// or an absent net. Unknown refs or pin names throw ResolutionError.
inline std::set<std::string> resolve_endpoints(const Endpoint &ep, const Circuit &c, const KnowledgeGraph &kg)
{
    std::set<std::string> out;
    if (auto *p = std::get_if<PinEndpoint>(&ep)) {
        const Component *comp = c.find_component(p->ref);
        if (!comp)
            throw ResolutionError("unknown component '" + p->ref + "'");
        int number = 0;
        if (const PinId *pin = comp->find_pin(p->pin)) {
            number = pin->number;
        } else if (const PartEntry *e = kg.find(comp->part_type); e && e->find_pin(p->pin)) {
            number = e->find_pin(p->pin)->number;
        } else {
            throw ResolutionError("unknown pin '" + p->pin + "' on " + p->ref);
        }
        if (comp->find_pin(number))
            if (auto n = c.net_of(p->ref, number))
                out.insert(*n);
        return out;
    }
    if (auto *r = std::get_if<RoleEndpoint>(&ep)) {
        for (const auto &net : c.nets()) {
            for (const auto &e : net.endpoints) {
                const PartEntry *entry = kg.find(c.component(e.ref).part_type);
                const KgPin *kp = entry ? entry->find_pin(e.pin) : nullptr;
                if (kp && kp->role == r->role) {
                    out.insert(net.name);
                    break;
                }
            }
        }
        return out;
    }
    const auto &n = std::get<NetEndpoint>(ep);
    if (c.find_net(n.net))
        out.insert(n.net);
    return out;
}

// ---------------------------------------------------------------- role graph

enum class EdgeType : unsigned { capacitor, resistor, inductor, diode, switch_, winding, coupled, direct };

inline constexpr std::array<EdgeType, 8> kAllEdgeTypes = {EdgeType::capacitor, EdgeType::resistor, EdgeType::inductor,
                                                          EdgeType::diode,     EdgeType::switch_,  EdgeType::winding,
                                                          EdgeType::coupled,   EdgeType::direct};

inline std::string_view to_string(EdgeType t)
{
    switch (t) {
    case EdgeType::capacitor: return "capacitor";
    case EdgeType::resistor: return "resistor";
    case EdgeType::inductor: return "inductor";
    case EdgeType::diode: return "diode";
    case EdgeType::switch_: return "switch";
    case EdgeType::winding: return "winding";
    case EdgeType::coupled: return "coupled";
    case EdgeType::direct: return "direct";
    }
    return "?";
}

inline std::optional<EdgeType> edge_type_from_string(std::string_view s)
{
    for (EdgeType t : kAllEdgeTypes)
        if (to_string(t) == s)
            return t;
    return std::nullopt;
}

/// Diode edges run anode -> cathode; every other type is symmetric.
inline bool is_directed(EdgeType t) { return t == EdgeType::diode; }

struct NetVertex
{
    std::string name;
    std::map<PinRole, int> roles; // multiset of endpoint roles
};

struct RoleEdge
{
    std::string a;
    std::string b;
    EdgeType type;
    std::string via; // component ref
    friend bool operator==(const RoleEdge &, const RoleEdge &) = default;
};

struct SelfLoop
{
    std::string ref;
    std::string net;
    friend bool operator==(const SelfLoop &, const SelfLoop &) = default;
};

struct RoleGraph
{
    std::vector<NetVertex> vertices; // sorted by name
    std::vector<RoleEdge> edges;     // sorted by (a, b, type, via)
    std::vector<SelfLoop> self_loops;

    const NetVertex *find(std::string_view net) const
    {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), net,
                                   [](const NetVertex &v, std::string_view n) { return v.name < n; });
        return it != vertices.end() && it->name == net ? &*it : nullptr;
    }

    std::size_t index_of(std::string_view net) const
    {
        const NetVertex *v = find(net);
        return v ? static_cast<std::size_t>(v - vertices.data()) : vertices.size();
    }

    bool has_role(std::string_view net, PinRole r) const
    {
        const NetVertex *v = find(net);
        return v && v->roles.count(r);
    }

    /// Distinct via components of `type` joining a to b (orientation respected
    /// for directed types).
    std::set<std::string> vias(std::string_view a, std::string_view b, EdgeType type) const
    {
        std::set<std::string> out;
        for (const auto &e : edges) {
            if (e.type != type)
                continue;
            if ((e.a == a && e.b == b) || (!is_directed(type) && e.a == b && e.b == a))
                out.insert(e.via);
        }
        return out;
    }
};

inline const std::set<std::string> &default_passive_set()
{
    static const std::set<std::string> s{"C", "C_film", "D", "L", "R"};
    return s;
}

namespace detail {

inline std::optional<EdgeType> passive_kind(const PartEntry &e)
{
    if (auto k = e.attribute("passive_kind")) {
        if (*k == "capacitor")
            return EdgeType::capacitor;
        if (*k == "resistor")
            return EdgeType::resistor;
        if (*k == "inductor")
            return EdgeType::inductor;
        if (*k == "diode")
            return EdgeType::diode;
    }
    for (const auto &p : e.pins)
        if (p.role == PinRole::diode_anode || p.role == PinRole::diode_cathode)
            return EdgeType::diode;
    return std::nullopt;
}

/// Distinct nets of `comp`'s pins whose role satisfies `pred`, in pin order.
template <class Pred>
std::vector<std::string> nets_with_role(const Circuit &c, const Component &comp, const PartEntry *entry, Pred pred)
{
    std::vector<std::string> out;
    if (!entry)
        return out;
    for (const auto &pin : comp.pins) {
        const KgPin *kp = entry->find_pin(pin.number);
        if (!kp || !pred(kp->role))
            continue;
        if (auto n = c.net_of(comp.ref, pin.number); n && std::find(out.begin(), out.end(), *n) == out.end())
            out.push_back(*n);
    }
    return out;
}

inline std::vector<std::string> nets_with_role(const Circuit &c, const Component &comp, const PartEntry *entry,
                                               PinRole role)
{
    return nets_with_role(c, comp, entry, [role](PinRole r) { return r == role; });
}

} // namespace detail

/// Reduced net-role graph. Passive vias come from `passives`; MOSFETs add
/// drain-source switch edges; transformers add winding and coupling edges;
/// every component adds direct edges between all nets it touches.
inline RoleGraph build_topology_graph(const Circuit &c, const KnowledgeGraph &kg,
                                      const std::set<std::string> &passives = default_passive_set())
{
    RoleGraph g;
    for (const auto &net : c.nets()) {
        NetVertex v{net.name, {}};
        for (const auto &ep : net.endpoints) {
            const PartEntry *entry = kg.find(c.component(ep.ref).part_type);
            if (const KgPin *kp = entry ? entry->find_pin(ep.pin) : nullptr)
                ++v.roles[kp->role];
        }
        g.vertices.push_back(std::move(v));
    }
    std::sort(g.vertices.begin(), g.vertices.end(), [](const auto &a, const auto &b) { return a.name < b.name; });

    auto add = [&](const std::string &a, const std::string &b, EdgeType t, const std::string &via) {
        if (a == b)
            return;
        if (!is_directed(t) && b < a)
            g.edges.push_back({b, a, t, via});
        else
            g.edges.push_back({a, b, t, via});
    };

    for (const auto &comp : c.components()) {
        const PartEntry *entry = kg.find(comp.part_type);
        std::vector<std::string> all = detail::nets_with_role(c, comp, entry, [](PinRole) { return true; });
        if (!entry)
            for (const auto &pin : comp.pins)
                if (auto n = c.net_of(comp.ref, pin.number); n && std::find(all.begin(), all.end(), *n) == all.end())
                    all.push_back(*n);

        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                add(all[i], all[j], EdgeType::direct, comp.ref);

        if (!entry)
            continue;

        if (passives.count(comp.part_type)) {
            auto kind = detail::passive_kind(*entry);
            if (all.size() == 1 && comp.pins.size() >= 2) {
                std::size_t bound = 0;
                for (const auto &pin : comp.pins)
                    bound += c.net_of(comp.ref, pin.number).has_value();
                if (bound >= 2)
                    g.self_loops.push_back({comp.ref, all.front()});
            } else if (all.size() == 2 && kind) {
                if (*kind == EdgeType::diode) {
                    auto an = detail::nets_with_role(c, comp, entry, PinRole::diode_anode);
                    auto ca = detail::nets_with_role(c, comp, entry, PinRole::diode_cathode);
                    if (an.size() == 1 && ca.size() == 1)
                        add(an.front(), ca.front(), EdgeType::diode, comp.ref);
                } else {
                    add(all[0], all[1], *kind, comp.ref);
                }
            }
        }

        auto drains = detail::nets_with_role(c, comp, entry, PinRole::mosfet_drain);
        auto sources = detail::nets_with_role(c, comp, entry, PinRole::mosfet_source);
        for (const auto &d : drains)
            for (const auto &s : sources)
                add(d, s, EdgeType::switch_, comp.ref);

        auto pri = detail::nets_with_role(c, comp, entry, PinRole::xfmr_primary);
        auto sec = detail::nets_with_role(c, comp, entry, PinRole::xfmr_secondary);
        for (const auto *side : {&pri, &sec})
            for (std::size_t i = 0; i < side->size(); ++i)
                for (std::size_t j = i + 1; j < side->size(); ++j)
                    add((*side)[i], (*side)[j], EdgeType::winding, comp.ref);
        for (const auto &p : pri)
            for (const auto &s : sec)
                add(p, s, EdgeType::coupled, comp.ref);
    }

    std::sort(g.edges.begin(), g.edges.end(), [](const RoleEdge &x, const RoleEdge &y) {
        return std::tie(x.a, x.b, x.type, x.via) < std::tie(y.a, y.b, y.type, y.via);
    });
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    std::sort(g.self_loops.begin(), g.self_loops.end(),
              [](const SelfLoop &x, const SelfLoop &y) { return std::tie(x.ref, x.net) < std::tie(y.ref, y.net); });
    return g;
}

// ---------------------------------------------------------------- template

enum class RuleKind { C_DIRECT, R_SERIES, L_SERIES, CONNECTED, DISTINCT, DIODE_FORWARD };

inline std::string_view to_string(RuleKind k)
{
    switch (k) {
    case RuleKind::C_DIRECT: return "C_DIRECT";
    case RuleKind::R_SERIES: return "R_SERIES";
    case RuleKind::L_SERIES: return "L_SERIES";
    case RuleKind::CONNECTED: return "CONNECTED";
    case RuleKind::DISTINCT: return "DISTINCT";
    case RuleKind::DIODE_FORWARD: return "DIODE_FORWARD";
    }
    return "?";
}

inline std::optional<RuleKind> rule_kind_from_string(std::string_view s)
{
    for (RuleKind k : {RuleKind::C_DIRECT, RuleKind::R_SERIES, RuleKind::L_SERIES, RuleKind::CONNECTED,
                       RuleKind::DISTINCT, RuleKind::DIODE_FORWARD})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

struct PairRule
{
    RuleKind tau{};
    Endpoint a;
    Endpoint b;
    int min_count = 1;
};

enum class SkeletonVertexKind { port, switch_node, role_class, net };

struct SkeletonVertex
{
    std::string id;
    SkeletonVertexKind kind{};
    std::string bind; // port name, role name or net name; empty for switch_node
};

struct SkeletonEdge
{
    std::string a;
    std::string b;
    EdgeType type{};
};

struct Skeleton
{
    std::vector<SkeletonVertex> vertices;
    std::vector<SkeletonEdge> edges;

    std::size_t index_of(std::string_view id) const
    {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i].id == id)
                return i;
        return vertices.size();
    }
};

enum class PrimitiveKind { half_bridge, lc_filter, decoupling_cap, bootstrap_cell, xfmr_link, gate_drive_cell };

inline constexpr std::array<PrimitiveKind, 6> kAllPrimitiveKinds = {
    PrimitiveKind::half_bridge,    PrimitiveKind::lc_filter, PrimitiveKind::decoupling_cap,
    PrimitiveKind::bootstrap_cell, PrimitiveKind::xfmr_link, PrimitiveKind::gate_drive_cell};

inline std::string_view to_string(PrimitiveKind k)
{
    switch (k) {
    case PrimitiveKind::half_bridge: return "half_bridge";
    case PrimitiveKind::lc_filter: return "lc_filter";
    case PrimitiveKind::decoupling_cap: return "decoupling_cap";
    case PrimitiveKind::bootstrap_cell: return "bootstrap_cell";
    case PrimitiveKind::xfmr_link: return "xfmr_link";
    case PrimitiveKind::gate_drive_cell: return "gate_drive_cell";
    }
    return "?";
}

inline std::optional<PrimitiveKind> primitive_kind_from_string(std::string_view s)
{
    for (PrimitiveKind k : kAllPrimitiveKinds)
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

struct PortsReachVia
{
    std::string a;
    std::string b;
    std::vector<EdgeType> via;
};
struct PrimitiveCountAtLeast
{
    PrimitiveKind kind{};
    int n = 1;
};
struct NetsInDistinctIsolation
{
    std::string a;
    std::string b;
};

using SemanticConstraint = std::variant<PortsReachVia, PrimitiveCountAtLeast, NetsInDistinctIsolation>;

struct SystemTemplate
{
    std::string name;
    std::vector<PairRule> rules;
    std::vector<std::pair<std::string, Endpoint>> ports; // sorted by port name
    Skeleton skeleton;
    std::vector<SemanticConstraint> semantic_constraints;
    std::set<std::string> passive_set = default_passive_set();
    std::uint64_t budget = kDefaultSearchBudget;

    const Endpoint *port(std::string_view name) const
    {
        for (const auto &[n, ep] : ports)
            if (n == name)
                return &ep;
        return nullptr;
    }
};

namespace detail {

inline Endpoint endpoint_field(const json &obj, std::string_view key, const std::string &at)
{
    const std::string text = require_string(obj, key, at);
    try {
        return parse_endpoint(text);
    } catch (const ResolutionError &e) {
        throw ParseError(field_path(at, key), e.what());
    }
}

inline EdgeType edge_type_field(const json &obj, std::string_view key, const std::string &at)
{
    const std::string s = require_string(obj, key, at);
    auto t = edge_type_from_string(s);
    if (!t)
        throw ParseError(field_path(at, key), "unknown edge type '" + s + "'");
    return *t;
}

inline std::string port_field(const json &obj, std::string_view key, const std::string &at,
                              const SystemTemplate &t)
{
    const std::string s = require_string(obj, key, at);
    if (!t.port(s))
        throw ParseError(field_path(at, key), "unknown port '" + s + "'");
    return s;
}

inline bool skeleton_connected(const Skeleton &s)
{
    if (s.vertices.empty())
        return true;
    std::vector<std::size_t> parent(s.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto &e : s.edges)
        parent[find(s.index_of(e.a))] = find(s.index_of(e.b));
    for (std::size_t i = 1; i < parent.size(); ++i)
        if (find(i) != find(0))
            return false;
    return true;
}

} // namespace detail

inline SystemTemplate template_from_json(const detail::json &doc)
{
    using namespace detail;
    SystemTemplate t;
    if (!doc.is_object())
        throw ParseError("template", "expected an object");
    t.name = require_string(doc, "name", "");

    if (auto it = doc.find("ports"); it != doc.end()) {
        if (!it->is_object())
            throw ParseError("ports", "expected an object");
        for (const auto &[name, v] : it->items()) {
            if (!v.is_string())
                throw ParseError(field_path("ports", name), "expected a string");
            try {
                t.ports.emplace_back(name, parse_endpoint(v.get<std::string>()));
            } catch (const ResolutionError &e) {
                throw ParseError(field_path("ports", name), e.what());
            }
        }
        std::sort(t.ports.begin(), t.ports.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    }

    if (auto it = doc.find("rules"); it != doc.end()) {
        if (!it->is_array())
            throw ParseError("rules", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json &jr = (*it)[i];
            const std::string at = index_path("rules", i);
            PairRule r;
            const std::string tau = require_string(jr, "tau", at);
            auto k = rule_kind_from_string(tau);
            if (!k)
                throw ParseError(field_path(at, "tau"), "unknown rule type '" + tau + "'");
            r.tau = *k;
            r.a = endpoint_field(jr, "a", at);
            r.b = endpoint_field(jr, "b", at);
            if (auto mc = jr.find("min_count"); mc != jr.end()) {
                long long n = require_integer(*mc, field_path(at, "min_count"));
                if (n < 1)
                    throw ParseError(field_path(at, "min_count"), "must be positive");
                r.min_count = static_cast<int>(n);
            }
            if (r.tau == RuleKind::DISTINCT && r.a == r.b)
                throw ParseError(at, "DISTINCT endpoints must differ");
            t.rules.push_back(std::move(r));
        }
    }

    if (auto it = doc.find("skeleton"); it != doc.end()) {
        const json &js = *it;
        const json &jv = require_array(js, "vertices", "skeleton");
        for (std::size_t i = 0; i < jv.size(); ++i) {
            const std::string at = index_path("skeleton.vertices", i);
            SkeletonVertex v;
            v.id = require_string(jv[i], "id", at);
            const std::string kind = require_string(jv[i], "kind", at);
            if (kind == "port")
                v.kind = SkeletonVertexKind::port;
            else if (kind == "switch_node")
                v.kind = SkeletonVertexKind::switch_node;
            else if (kind == "role_class")
                v.kind = SkeletonVertexKind::role_class;
            else if (kind == "net")
                v.kind = SkeletonVertexKind::net;
            else
                throw ParseError(field_path(at, "kind"), "unknown vertex kind '" + kind + "'");
            if (v.kind != SkeletonVertexKind::switch_node)
                v.bind = require_string(jv[i], "bind", at);
            if (v.kind == SkeletonVertexKind::port && !t.port(v.bind))
                throw ParseError(field_path(at, "bind"), "unknown port '" + v.bind + "'");
            if (v.kind == SkeletonVertexKind::role_class && !pin_role_from_string(v.bind))
                throw ParseError(field_path(at, "bind"), "unknown pin role '" + v.bind + "'");
            if (t.skeleton.index_of(v.id) != t.skeleton.vertices.size())
                throw ParseError(field_path(at, "id"), "duplicate skeleton vertex '" + v.id + "'");
            t.skeleton.vertices.push_back(std::move(v));
        }
        const json &je = require_array(js, "edges", "skeleton");
        for (std::size_t i = 0; i < je.size(); ++i) {
            const std::string at = index_path("skeleton.edges", i);
            SkeletonEdge e;
            e.a = require_string(je[i], "a", at);
            e.b = require_string(je[i], "b", at);
            for (const auto *id : {&e.a, &e.b})
                if (t.skeleton.index_of(*id) == t.skeleton.vertices.size())
                    throw ParseError(at, "unknown skeleton vertex '" + *id + "'");
            e.type = edge_type_field(je[i], "type", at);
            t.skeleton.edges.push_back(std::move(e));
        }
        if (!skeleton_connected(t.skeleton))
            throw ParseError("skeleton", "skeleton is not connected");
    }

    if (auto it = doc.find("semantic_constraints"); it != doc.end()) {
        if (!it->is_array())
            throw ParseError("semantic_constraints", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json &jc = (*it)[i];
            const std::string at = index_path("semantic_constraints", i);
            const std::string kind = require_string(jc, "kind", at);
            if (kind == "port_reaches_port_via") {
                PortsReachVia c;
                c.a = port_field(jc, "a", at, t);
                c.b = port_field(jc, "b", at, t);
                const json &jv = require_array(jc, "via", at);
                if (jv.empty())
                    throw ParseError(field_path(at, "via"), "expected at least one edge type");
                for (std::size_t k = 0; k < jv.size(); ++k) {
                    if (!jv[k].is_string())
                        throw ParseError(index_path(field_path(at, "via"), k), "expected a string");
                    auto et = edge_type_from_string(jv[k].get<std::string>());
                    if (!et)
                        throw ParseError(index_path(field_path(at, "via"), k),
                                         "unknown edge type '" + jv[k].get<std::string>() + "'");
                    c.via.push_back(*et);
                }
                t.semantic_constraints.emplace_back(std::move(c));
            } else if (kind == "primitive_count_at_least") {
                PrimitiveCountAtLeast c;
                const std::string pk = require_string(jc, "primitive", at);
                auto k = primitive_kind_from_string(pk);
                if (!k)
                    throw ParseError(field_path(at, "primitive"), "unknown primitive '" + pk + "'");
                c.kind = *k;
                c.n = static_cast<int>(require_integer(require(jc, "n", at), field_path(at, "n")));
                if (c.n < 1)
                    throw ParseError(field_path(at, "n"), "must be positive");
                t.semantic_constraints.emplace_back(c);
            } else if (kind == "nets_in_distinct_isolation") {
                NetsInDistinctIsolation c;
                c.a = port_field(jc, "a", at, t);
                c.b = port_field(jc, "b", at, t);
                t.semantic_constraints.emplace_back(std::move(c));
            } else {
                throw ParseError(field_path(at, "kind"), "unknown semantic constraint '" + kind + "'");
            }
        }
    }

    if (auto it = doc.find("passive_set"); it != doc.end()) {
        if (!it->is_array())
            throw ParseError("passive_set", "expected an array");
        t.passive_set.clear();
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_string())
                throw ParseError(index_path("passive_set", i), "expected a string");
            t.passive_set.insert((*it)[i].get<std::string>());
        }
    }

    if (auto it = doc.find("tolerance"); it != doc.end()) {
        if (!it->is_object())
            throw ParseError("tolerance", "expected an object");
        if (auto b = it->find("budget"); b != it->end()) {
            long long n = require_integer(*b, "tolerance.budget");
            if (n < 1)
                throw ParseError("tolerance.budget", "must be positive");
            t.budget = static_cast<std::uint64_t>(n);
        }
    }
    return t;
}

inline SystemTemplate parse_template(std::string_view bytes)
{
    return template_from_json(detail::parse_json_text(bytes));
}

inline SystemTemplate load_template(const std::string &path)
{
    std::string text = detail::read_file(path);
    try {
        return parse_template(text);
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.locus(), e.detail());
    }
}

// ---------------------------------------------------------------- phase 3

namespace detail {

/// Python-style list rendering: ['A', 'B'].
inline std::string py_list(const std::set<std::string> &items)
{
    std::string out = "[";
    bool first = true;
    for (const auto &s : items) {
        if (!first)
            out += ", ";
        first = false;
        out += "'" + s + "'";
    }
    return out + "]";
}

inline std::vector<std::string> as_vector(const std::set<std::string> &s) { return {s.begin(), s.end()}; }

inline std::vector<std::string> concat(const std::set<std::string> &a, const std::set<std::string> &b)
{
    std::vector<std::string> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

} // namespace detail

/// Evaluates one rule over already-resolved net sets.
inline std::optional<Violation> eval_rule(const PairRule &r, const std::set<std::string> &na,
                                          const std::set<std::string> &nb, const RoleGraph &g)
{
    constexpr Phase P3 = Phase::Phase3_Topology;
    const std::string tau(to_string(r.tau));
    const std::string da = display_name(r.a);
    const std::string db = display_name(r.b);

    if (na.empty() || nb.empty()) {
        std::string which = na.empty() ? to_string(r.a) : to_string(r.b);
        return Violation{P3, std::string(codes::endpoint_unresolved), "", {}, detail::concat(na, nb),
                         tau + " endpoint " + which + " resolves to no net"};
    }
    const std::string nets_text = " (nets " + detail::py_list(na) + " vs " + detail::py_list(nb) + ")";

    auto count_vias = [&](EdgeType t) {
        std::set<std::string> vs;
        for (const auto &a : na)
            for (const auto &b : nb) {
                auto s = g.vias(a, b, t);
                vs.insert(s.begin(), s.end());
            }
        return vs.size();
    };

    auto series = [&](EdgeType t, std::string_view code) -> std::optional<Violation> {
        std::size_t found = count_vias(t);
        if (found >= static_cast<std::size_t>(r.min_count))
            return std::nullopt;
        std::string msg = tau + " missing between " + da + " and " + db + nets_text;
        if (r.min_count > 1)
            msg += ": found " + std::to_string(found) + " of " + std::to_string(r.min_count);
        return Violation{P3, std::string(code), "", {}, detail::concat(na, nb), std::move(msg)};
    };

    std::set<std::string> shared;
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::inserter(shared, shared.end()));

    switch (r.tau) {
    case RuleKind::C_DIRECT: return series(EdgeType::capacitor, codes::c_direct_missing);
    case RuleKind::R_SERIES: return series(EdgeType::resistor, codes::r_series_missing);
    case RuleKind::L_SERIES: return series(EdgeType::inductor, codes::l_series_missing);
    case RuleKind::DIODE_FORWARD: return series(EdgeType::diode, codes::diode_forward_missing);
    case RuleKind::CONNECTED:
        if (shared.empty())
            return Violation{P3, std::string(codes::not_connected), "", {}, detail::concat(na, nb),
                             tau + " violated between " + da + " and " + db + nets_text};
        return std::nullopt;
    case RuleKind::DISTINCT:
        if (!shared.empty())
            return Violation{P3, std::string(codes::not_distinct), "", {}, detail::as_vector(shared),
                             tau + " violated between " + da + " and " + db + " (shared nets " +
                                 detail::py_list(shared) + ")"};
        return std::nullopt;
    }
    return std::nullopt;
}

/// Resolves both endpoints then evaluates. Resolution failures become
/// endpoint_unresolved violations.
inline std::optional<Violation> eval_rule(const PairRule &r, const RoleGraph &g, const Circuit &c,
                                          const KnowledgeGraph &kg)
{
    std::set<std::string> na, nb;
    try {
        na = resolve_endpoints(r.a, c, kg);
        nb = resolve_endpoints(r.b, c, kg);
    } catch (const ResolutionError &e) {
        return Violation{Phase::Phase3_Topology, std::string(codes::endpoint_unresolved), "", {}, {},
                         std::string(to_string(r.tau)) + ": " + e.what()};
    }
    return eval_rule(r, na, nb, g);
}

// ---------------------------------------------------------------- primitives

struct Primitive
{
    PrimitiveKind kind{};
    std::vector<std::string> members;
    std::vector<std::string> anchor_nets;
    friend bool operator==(const Primitive &, const Primitive &) = default;
};

/// Role-pattern primitive detection. half_bridge anchors are (switch node,
/// high rail, low rail); lc_filter anchors are (switch node, filtered net).
inline std::vector<Primitive> infer_primitives(const RoleGraph &g, const Circuit &c, const KnowledgeGraph &kg)
{
    std::vector<Primitive> out;
    auto add = [&](PrimitiveKind k, std::vector<std::string> m, std::vector<std::string> a) {
        out.push_back({k, std::move(m), std::move(a)});
    };

    struct Fet
    {
        std::string ref;
        std::vector<std::string> drains, sources, gates;
    };
    std::vector<Fet> fets;
    for (const auto &comp : c.components()) {
        const PartEntry *e = kg.find(comp.part_type);
        Fet f{comp.ref, detail::nets_with_role(c, comp, e, PinRole::mosfet_drain),
              detail::nets_with_role(c, comp, e, PinRole::mosfet_source),
              detail::nets_with_role(c, comp, e, PinRole::mosfet_gate)};
        if (!f.drains.empty() && !f.sources.empty())
            fets.push_back(std::move(f));
    }

    std::set<std::string> switch_nodes;
    std::set<std::string> low_rails;
    for (const auto &hi : fets)
        for (const auto &lo : fets) {
            if (hi.ref == lo.ref)
                continue;
            for (const auto &sw : hi.sources) {
                if (std::find(lo.drains.begin(), lo.drains.end(), sw) == lo.drains.end())
                    continue;
                for (const auto &rail_hi : hi.drains)
                    for (const auto &rail_lo : lo.sources) {
                        if (rail_hi == sw || rail_lo == sw || rail_hi == rail_lo)
                            continue;
                        add(PrimitiveKind::half_bridge, {hi.ref, lo.ref}, {sw, rail_hi, rail_lo});
                        switch_nodes.insert(sw);
                        low_rails.insert(rail_lo);
                    }
            }
        }
    for (const auto &v : g.vertices)
        if (v.roles.count(PinRole::buck_sw))
            switch_nodes.insert(v.name);

    auto has_role_if = [&](const std::string &net, auto pred) {
        const NetVertex *v = g.find(net);
        if (!v)
            return false;
        for (const auto &[r, n] : v->roles)
            if (pred(r))
                return true;
        return false;
    };
    auto gnd_like = [&](const std::string &net) { return low_rails.count(net) || has_role_if(net, is_gnd_role); };

    for (const auto &e : g.edges) {
        if (e.type == EdgeType::capacitor) {
            for (const auto &[x, y] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}})
                if (has_role_if(x, is_vdd_role) && has_role_if(y, is_gnd_role)) {
                    add(PrimitiveKind::decoupling_cap, {e.via}, {x, y});
                    break;
                }
            for (const auto &[x, y] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}})
                if (g.has_role(x, PinRole::halfbridge_hb) && g.has_role(y, PinRole::halfbridge_hs)) {
                    add(PrimitiveKind::bootstrap_cell, {e.via}, {x, y});
                    break;
                }
        }
        if (e.type == EdgeType::inductor) {
            for (const auto &[sw, x] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
                if (!switch_nodes.count(sw) || switch_nodes.count(x))
                    continue;
                for (const auto &ce : g.edges) {
                    if (ce.type != EdgeType::capacitor)
                        continue;
                    std::string other;
                    if (ce.a == x)
                        other = ce.b;
                    else if (ce.b == x)
                        other = ce.a;
                    else
                        continue;
                    if (gnd_like(other)) {
                        add(PrimitiveKind::lc_filter, {e.via, ce.via}, {sw, x});
                        break;
                    }
                }
            }
        }
        if (e.type == EdgeType::resistor) {
            auto is_drive = [](PinRole r) { return r == PinRole::gate_ho || r == PinRole::gate_lo; };
            for (const auto &[x, y] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}})
                if (has_role_if(x, is_drive) && g.has_role(y, PinRole::mosfet_gate)) {
                    add(PrimitiveKind::gate_drive_cell, {e.via}, {x, y});
                    break;
                }
        }
    }

    for (const auto &comp : c.components()) {
        const PartEntry *e = kg.find(comp.part_type);
        auto pri = detail::nets_with_role(c, comp, e, PinRole::xfmr_primary);
        auto sec = detail::nets_with_role(c, comp, e, PinRole::xfmr_secondary);
        if (!pri.empty() && !sec.empty()) {
            std::vector<std::string> anchors = pri;
            anchors.insert(anchors.end(), sec.begin(), sec.end());
            add(PrimitiveKind::xfmr_link, {comp.ref}, anchors);
        }
    }

    std::sort(out.begin(), out.end(), [](const Primitive &x, const Primitive &y) {
        return std::tie(x.kind, x.members, x.anchor_nets) < std::tie(y.kind, y.members, y.anchor_nets);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::set<std::string> switch_node_nets(const RoleGraph &g, const std::vector<Primitive> &prims)
{
    std::set<std::string> out;
    for (const auto &p : prims)
        if (p.kind == PrimitiveKind::half_bridge)
            out.insert(p.anchor_nets.front());
    for (const auto &v : g.vertices)
        if (v.roles.count(PinRole::buck_sw))
            out.insert(v.name);
    return out;
}

// ---------------------------------------------------------------- skeleton

struct MissingElement
{
    bool is_edge = false;
    std::size_t index = 0; // into skeleton vertices or edges
    std::string text;      // e.g. "inductor edge VSW -> VOUT"
    friend bool operator==(const MissingElement &, const MissingElement &) = default;
};

struct MatchResult
{
    bool matched = false;
    bool budget_exceeded = false;
    std::map<std::string, std::string> mapping; // skeleton vertex id -> net name
    std::vector<MissingElement> missing;
};

namespace detail {

inline std::string missing_text(const Skeleton &s, bool is_edge, std::size_t i)
{
    if (is_edge) {
        const auto &e = s.edges[i];
        return std::string(to_string(e.type)) + " edge " + e.a + " -> " + e.b;
    }
    const auto &v = s.vertices[i];
    std::string kind = v.kind == SkeletonVertexKind::port          ? "port"
                       : v.kind == SkeletonVertexKind::switch_node ? "switch_node"
                       : v.kind == SkeletonVertexKind::role_class  ? "role_class"
                                                                   : "net";
    return kind + " vertex " + v.id;
}

/// Next k-combination of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<std::size_t> &idx, std::size_t n)
{
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace detail

/// Skeleton vertex -> candidate host nets, by kind. Ports use `port_nets`
/// (already resolved to exactly one net each).
inline std::vector<std::set<std::string>> skeleton_candidates(const Skeleton &s, const RoleGraph &g,
                                                              const std::vector<Primitive> &prims,
                                                              const std::map<std::string, std::string> &port_nets)
{
    std::vector<std::set<std::string>> out;
    const auto sw = switch_node_nets(g, prims);
    for (const auto &v : s.vertices) {
        std::set<std::string> cand;
        switch (v.kind) {
        case SkeletonVertexKind::port:
            if (auto it = port_nets.find(v.bind); it != port_nets.end() && g.find(it->second))
                cand.insert(it->second);
            break;
        case SkeletonVertexKind::switch_node:
            cand = sw;
            break;
        case SkeletonVertexKind::role_class:
            if (auto r = pin_role_from_string(v.bind))
                for (const auto &nv : g.vertices)
                    if (nv.roles.count(*r))
                        cand.insert(nv.name);
            break;
        case SkeletonVertexKind::net:
            if (g.find(v.bind))
                cand.insert(v.bind);
            break;
        }
        out.push_back(std::move(cand));
    }
    return out;
}

/// Embeds the skeleton into the role graph. On failure, `missing` holds the
/// vertices with no admissible net plus the first smallest set of edges (up to
/// three, lexicographic in declaration order) whose removal permits a match;
/// beyond three, edges are dropped greedily in declaration order.
inline MatchResult subgraph_match(const Skeleton &s, const RoleGraph &g, const std::vector<Primitive> &prims,
                                  const std::map<std::string, std::string> &port_nets,
                                  std::uint64_t budget = kDefaultSearchBudget)
{
    MatchResult res;
    TypedGraph host(g.vertices.size());
    for (const auto &e : g.edges)
        host.add_edge(g.index_of(e.a), g.index_of(e.b), static_cast<unsigned>(e.type), is_directed(e.type));

    const auto cands = skeleton_candidates(s, g, prims, port_nets);

    // Vertices with no candidates can never map; drop them with their edges.
    std::vector<bool> dead(s.vertices.size(), false);
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        if (cands[i].empty()) {
            dead[i] = true;
            res.missing.push_back({false, i, detail::missing_text(s, false, i)});
        }

    std::vector<std::size_t> live_index(s.vertices.size(), 0);
    Pattern base;
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        if (dead[i])
            continue;
        live_index[i] = base.n++;
        std::vector<std::size_t> c;
        for (const auto &n : cands[i])
            c.push_back(g.index_of(n));
        base.candidates.emplace_back(std::move(c));
    }
    std::vector<std::size_t> live_edges;
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
        std::size_t a = s.index_of(s.edges[i].a), b = s.index_of(s.edges[i].b);
        if (!dead[a] && !dead[b])
            live_edges.push_back(i);
    }

    auto attempt = [&](const std::vector<std::size_t> &skip) {
        Pattern p = base;
        for (std::size_t k = 0; k < live_edges.size(); ++k) {
            if (std::find(skip.begin(), skip.end(), k) != skip.end())
                continue;
            const auto &e = s.edges[live_edges[k]];
            p.edges.push_back({live_index[s.index_of(e.a)], live_index[s.index_of(e.b)],
                               static_cast<unsigned>(e.type)});
        }
        return find_monomorphism(p, host, budget);
    };

    Embedding full = attempt({});
    if (full.budget_exceeded) {
        res.budget_exceeded = true;
        return res;
    }
    if (full.matched && res.missing.empty()) {
        res.matched = true;
        for (std::size_t i = 0; i < s.vertices.size(); ++i)
            res.mapping[s.vertices[i].id] = g.vertices[full.mapping[live_index[i]]].name;
        return res;
    }
    if (full.matched)
        return res;

    const std::size_t m = live_edges.size();
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, m); ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        do {
            Embedding e = attempt(idx);
            if (e.budget_exceeded) {
                res.budget_exceeded = true;
                return res;
            }
            if (e.matched) {
                for (std::size_t j : idx)
                    res.missing.push_back({true, live_edges[j], detail::missing_text(s, true, live_edges[j])});
                return res;
            }
        } while (detail::next_combination(idx, m));
    }

    std::vector<std::size_t> skip;
    for (std::size_t j = 0; j < m; ++j) {
        skip.push_back(j);
        Embedding e = attempt(skip);
        if (e.budget_exceeded) {
            res.budget_exceeded = true;
            return res;
        }
        if (e.matched)
            break;
    }
    for (std::size_t j : skip)
        res.missing.push_back({true, live_edges[j], detail::missing_text(s, true, live_edges[j])});
    return res;
}

// ---------------------------------------------------------------- semantics

/// True iff a walk from `from` to `to` follows edges of the given types in
/// order (directed types only in their stored direction).
inline bool reaches_via(const RoleGraph &g, const std::string &from, const std::string &to,
                        const std::vector<EdgeType> &via)
{
    std::set<std::string> frontier{from};
    for (EdgeType t : via) {
        std::set<std::string> next;
        for (const auto &e : g.edges) {
            if (e.type != t)
                continue;
            if (frontier.count(e.a))
                next.insert(e.b);
            if (!is_directed(t) && frontier.count(e.b))
                next.insert(e.a);
        }
        frontier = std::move(next);
    }
    return frontier.count(to) > 0;
}

/// Galvanic domains: each component joins its nets, except that a component
/// with isolation groups joins only nets within the same group.
inline std::map<std::string, std::string> isolation_domains(const Circuit &c, const KnowledgeGraph &kg)
{
    std::map<std::string, std::string> parent;
    for (const auto &n : c.nets())
        parent[n.name] = n.name;
    auto find = [&](std::string x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](const std::string &a, const std::string &b) {
        auto ra = find(a), rb = find(b);
        if (ra != rb)
            parent[std::max(ra, rb)] = std::min(ra, rb);
    };
    for (const auto &comp : c.components()) {
        const PartEntry *e = kg.find(comp.part_type);
        std::map<std::string, std::string> first; // group -> first net seen
        for (const auto &pin : comp.pins) {
            auto net = c.net_of(comp.ref, pin.number);
            if (!net)
                continue;
            std::string group = "*";
            if (e && e->isolation_groups) {
                auto gname = e->isolation_group_of(pin.number);
                if (!gname)
                    continue;
                group = *gname;
            }
            auto [it, inserted] = first.emplace(group, *net);
            if (!inserted)
                unite(it->second, *net);
        }
    }
    std::map<std::string, std::string> out;
    for (const auto &[n, _] : parent)
        out[n] = find(n);
    return out;
}

namespace detail {

inline std::string via_text(const std::vector<EdgeType> &via)
{
    std::string out;
    for (std::size_t i = 0; i < via.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(via[i]);
    }
    return out;
}

} // namespace detail

inline std::optional<Violation> check_semantic(const SemanticConstraint &sc, const RoleGraph &g, const Circuit &c,
                                               const KnowledgeGraph &kg,
                                               const std::map<std::string, std::string> &port_nets,
                                               const std::vector<Primitive> &prims)
{
    constexpr Phase P4 = Phase::Phase4_SystemTopology;
    if (auto *p = std::get_if<PortsReachVia>(&sc)) {
        auto a = port_nets.find(p->a), b = port_nets.find(p->b);
        if (a == port_nets.end() || b == port_nets.end())
            return std::nullopt; // reported as port_unresolved
        if (reaches_via(g, a->second, b->second, p->via))
            return std::nullopt;
        return Violation{P4, std::string(codes::port_path_missing), "", {}, {a->second, b->second},
                         "no path from port " + p->a + " to port " + p->b + " via " + detail::via_text(p->via)};
    }
    if (auto *p = std::get_if<PrimitiveCountAtLeast>(&sc)) {
        auto n = std::count_if(prims.begin(), prims.end(), [&](const Primitive &x) { return x.kind == p->kind; });
        if (n >= p->n)
            return std::nullopt;
        return Violation{P4, std::string(codes::primitive_missing), "", {}, {},
                         "expected at least " + std::to_string(p->n) + " " + std::string(to_string(p->kind)) +
                             " primitive(s), found " + std::to_string(n)};
    }
    const auto &p = std::get<NetsInDistinctIsolation>(sc);
    auto a = port_nets.find(p.a), b = port_nets.find(p.b);
    if (a == port_nets.end() || b == port_nets.end())
        return std::nullopt;
    auto dom = isolation_domains(c, kg);
    if (dom.at(a->second) != dom.at(b->second))
        return std::nullopt;
    return Violation{P4, std::string(codes::isolation_not_distinct), "", {}, {a->second, b->second},
                     "ports " + p.a + " and " + p.b + " share an isolation domain (nets " + a->second + " and " +
                         b->second + ")"};
}

// ---------------------------------------------------------------- verify

struct VerifyResult
{
    bool ok = false;
    std::vector<Violation> violations;
};

/// Port name -> net for ports resolving to exactly one net.
inline std::map<std::string, std::string> resolve_ports(const SystemTemplate &t, const Circuit &c,
                                                        const KnowledgeGraph &kg,
                                                        std::vector<Violation> *problems = nullptr)
{
    std::map<std::string, std::string> out;
    for (const auto &[name, ep] : t.ports) {
        std::string why;
        std::set<std::string> nets;
        try {
            nets = resolve_endpoints(ep, c, kg);
            if (nets.size() == 1) {
                out[name] = *nets.begin();
                continue;
            }
            why = "resolves to " + std::to_string(nets.size()) + " nets";
            if (!nets.empty())
                why += " " + detail::py_list(nets);
        } catch (const ResolutionError &e) {
            why = e.what();
        }
        if (problems)
            problems->push_back(Violation{Phase::Phase4_SystemTopology, std::string(codes::port_unresolved), "",
                                          {}, detail::as_vector(nets),
                                          "port " + name + " (" + to_string(ep) + ") unresolved: " + why});
    }
    return out;
}

/// The full pipeline. Phases 1-2 fail fast; otherwise every pair rule and
/// every phase-4 check runs and all findings are reported.
inline VerifyResult verify(const Circuit &c, const KnowledgeGraph &kg, const SystemTemplate &t)
{
    VerifyResult out;
    std::vector<Violation> port_problems;
    auto ports = resolve_ports(t, c, kg, &port_problems);

    std::set<std::string> exempt;
    for (const auto &[name, net] : ports)
        exempt.insert(net);

    out.violations = run_phase12(c, kg, exempt);
    if (!out.violations.empty())
        return out;

    RoleGraph g = build_topology_graph(c, kg, t.passive_set);
    for (const auto &r : t.rules)
        if (auto v = eval_rule(r, g, c, kg))
            out.violations.push_back(std::move(*v));

    auto prims = infer_primitives(g, c, kg);
    out.violations.insert(out.violations.end(), port_problems.begin(), port_problems.end());
    if (port_problems.empty() && !t.skeleton.vertices.empty()) {
        MatchResult m = subgraph_match(t.skeleton, g, prims, ports, t.budget);
        if (m.budget_exceeded) {
            out.violations.push_back(Violation{Phase::Phase4_SystemTopology,
                                               std::string(codes::search_budget_exceeded), "", {}, {},
                                               "skeleton search exceeded budget of " + std::to_string(t.budget) +
                                                   " expansions"});
        } else {
            for (const auto &miss : m.missing)
                out.violations.push_back(Violation{Phase::Phase4_SystemTopology,
                                                   std::string(codes::skeleton_mismatch), "", {}, {},
                                                   "skeleton mismatch: missing " + miss.text});
        }
    }
    for (const auto &sc : t.semantic_constraints)
        if (auto v = check_semantic(sc, g, c, kg, ports, prims))
            out.violations.push_back(std::move(*v));

    out.ok = out.violations.empty();
    return out;
}

} // namespace schemaguard
