// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

// Canonical circuit model: components, nets and the pin-labeled bipartite
// component/net graph derived from them.

#include "schemaguard/error.hpp"
#include "schemaguard/json_support.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace schemaguard {

struct PinId
{
    int number = 0;
    std::string name;

    friend bool operator==(const PinId &, const PinId &) = default;
};

struct Component
{
    std::string ref;
    std::string part_type;
    std::optional<std::string> value;
    std::vector<PinId> pins;

    const PinId *find_pin(int number) const
    {
        auto it = std::find_if(pins.begin(), pins.end(), [&](const PinId &p) { return p.number == number; });
        return it == pins.end() ? nullptr : &*it;
    }

    const PinId *find_pin(std::string_view name) const
    {
        auto it = std::find_if(pins.begin(), pins.end(), [&](const PinId &p) { return p.name == name; });
        return it == pins.end() ? nullptr : &*it;
    }

    friend bool operator==(const Component &, const Component &) = default;
};

/// A (component ref, pin number) pair as it appears in a net.
struct PinRef
{
    std::string ref;
    int pin = 0;

    friend auto operator<=>(const PinRef &, const PinRef &) = default;
    friend bool operator==(const PinRef &, const PinRef &) = default;
};

struct Net
{
    std::string name;
    std::vector<PinRef> endpoints;

    friend bool operator==(const Net &, const Net &) = default;
};

inline bool is_designator(std::string_view ref)
{
    std::size_t i = 0;
    while (i < ref.size() && ref[i] >= 'A' && ref[i] <= 'Z')
        ++i;
    if (i == 0 || i == ref.size())
        return false;
    for (std::size_t j = i; j < ref.size(); ++j)
        if (ref[j] < '0' || ref[j] > '9')
            return false;
    return true;
}

/// Validated, canonically ordered circuit. Components are sorted by ref,
/// nets by name, endpoints by (ref, pin) and pins by number.
class Circuit
{
public:
    Circuit() = default;

    /// Validates every invariant and canonicalizes order. Error loci index
    /// into the vectors as given, so they line up with document order.
    static Circuit build(std::vector<Component> components,
                         std::vector<Net> nets,
                         std::map<std::string, std::string> metadata = {})
    {
        Circuit c;
        std::map<std::string, std::size_t> ref_index;
        for (std::size_t i = 0; i < components.size(); ++i) {
            const Component &comp = components[i];
            const std::string at = detail::index_path("components", i);
            if (!is_designator(comp.ref))
                throw ParseError(at + ".ref", "designator '" + comp.ref + "' does not match [A-Z]+[0-9]+");
            if (comp.part_type.empty())
                throw ParseError(at + ".part_type", "empty part type");
            if (comp.pins.empty())
                throw ParseError(at + ".pins", "component has no pins");
            if (!ref_index.emplace(comp.ref, i).second)
                throw ParseError(at + ".ref", "duplicate ref '" + comp.ref + "'");
            std::set<int> numbers;
            for (std::size_t p = 0; p < comp.pins.size(); ++p) {
                const std::string pat = detail::index_path(at + ".pins", p);
                if (comp.pins[p].number < 1)
                    throw ParseError(pat + ".number", "pin number must be >= 1");
                if (comp.pins[p].name.empty())
                    throw ParseError(pat + ".name", "empty pin name");
                if (!numbers.insert(comp.pins[p].number).second)
                    throw ParseError(pat + ".number", "duplicate pin number " + std::to_string(comp.pins[p].number));
            }
        }

        std::set<std::string> net_names;
        for (std::size_t n = 0; n < nets.size(); ++n) {
            const Net &net = nets[n];
            const std::string at = detail::index_path("nets", n);
            if (net.name.empty())
                throw ParseError(at + ".name", "empty net name");
            if (!net_names.insert(net.name).second)
                throw ParseError(at + ".name", "duplicate net name '" + net.name + "'");
            if (net.endpoints.empty())
                throw ParseError(at + ".endpoints", "net has no endpoints");
            std::set<PinRef> seen;
            for (std::size_t e = 0; e < net.endpoints.size(); ++e) {
                const PinRef &ep = net.endpoints[e];
                const std::string eat = detail::index_path(at + ".endpoints", e);
                auto it = ref_index.find(ep.ref);
                if (it == ref_index.end())
                    throw ParseError(eat, "endpoint references unknown component '" + ep.ref + "'");
                if (!components[it->second].find_pin(ep.pin))
                    throw ParseError(eat, "endpoint references unknown pin " + ep.ref + "." + std::to_string(ep.pin));
                if (!seen.insert(ep).second)
                    throw ParseError(eat, "duplicate endpoint " + ep.ref + "." + std::to_string(ep.pin));
                auto [bound, fresh] = c.binding_.emplace(ep, net.name);
                if (!fresh)
                    throw ParseError(eat, "pin bound to multiple nets (" + ep.ref + "." + std::to_string(ep.pin)
                                              + " on " + bound->second + " and " + net.name + ")");
            }
        }

        for (auto &comp : components)
            std::sort(comp.pins.begin(), comp.pins.end(),
                      [](const PinId &a, const PinId &b) { return a.number < b.number; });
        std::sort(components.begin(), components.end(),
                  [](const Component &a, const Component &b) { return a.ref < b.ref; });
        for (auto &net : nets)
            std::sort(net.endpoints.begin(), net.endpoints.end());
        std::sort(nets.begin(), nets.end(), [](const Net &a, const Net &b) { return a.name < b.name; });

        c.components_ = std::move(components);
        c.nets_ = std::move(nets);
        c.metadata_ = std::move(metadata);
        return c;
    }

    const std::vector<Component> &components() const noexcept { return components_; }
    const std::vector<Net> &nets() const noexcept { return nets_; }
    const std::map<std::string, std::string> &metadata() const noexcept { return metadata_; }

    const Component *find_component(std::string_view ref) const
    {
        auto it = std::lower_bound(components_.begin(), components_.end(), ref,
                                   [](const Component &c, std::string_view r) { return c.ref < r; });
        return (it != components_.end() && it->ref == ref) ? &*it : nullptr;
    }

    const Component &component(std::string_view ref) const
    {
        if (const Component *c = find_component(ref))
            return *c;
        throw LookupError("unknown component '" + std::string(ref) + "'");
    }

    const Net *find_net(std::string_view name) const
    {
        auto it = std::lower_bound(nets_.begin(), nets_.end(), name,
                                   [](const Net &n, std::string_view r) { return n.name < r; });
        return (it != nets_.end() && it->name == name) ? &*it : nullptr;
    }

    /// Binding net of (ref, pin), empty when the pin floats.
    std::optional<std::string> net_of(std::string_view ref, int pin) const
    {
        const Component &comp = component(ref);
        if (!comp.find_pin(pin))
            throw LookupError("unknown pin " + std::string(ref) + "." + std::to_string(pin));
        auto it = binding_.find(PinRef{std::string(ref), pin});
        if (it == binding_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t pin_count() const
    {
        std::size_t n = 0;
        for (const auto &c : components_)
            n += c.pins.size();
        return n;
    }

    friend bool operator==(const Circuit &a, const Circuit &b)
    {
        return a.components_ == b.components_ && a.nets_ == b.nets_ && a.metadata_ == b.metadata_;
    }

private:
    std::vector<Component> components_;
    std::vector<Net> nets_;
    std::map<std::string, std::string> metadata_;
    std::map<PinRef, std::string> binding_;
};

inline std::optional<std::string> net_of(const Circuit &c, std::string_view ref, int pin)
{
    return c.net_of(ref, pin);
}

// ---------------------------------------------------------------------------
// Interchange format

inline Circuit circuit_from_json(const detail::json &doc)
{
    using detail::index_path;
    if (!doc.is_object())
        throw ParseError("", "malformed document: top level must be an object");

    std::vector<Component> components;
    const auto &jcomps = detail::require_array(doc, "components", "");
    for (std::size_t i = 0; i < jcomps.size(); ++i) {
        const auto &jc = jcomps[i];
        const std::string at = index_path("components", i);
        Component comp;
        comp.ref = detail::require_string(jc, "ref", at);
        comp.part_type = detail::require_string(jc, "part_type", at);
        if (auto it = jc.find("value"); it != jc.end() && !it->is_null()) {
            if (!it->is_string())
                throw ParseError(at + ".value", "expected a string");
            comp.value = it->get<std::string>();
        }
        const auto &jpins = detail::require_array(jc, "pins", at);
        for (std::size_t p = 0; p < jpins.size(); ++p) {
            const std::string pat = index_path(at + ".pins", p);
            PinId pin;
            pin.number = static_cast<int>(detail::require_integer(detail::require(jpins[p], "number", pat), pat + ".number"));
            pin.name = detail::require_string(jpins[p], "name", pat);
            comp.pins.push_back(std::move(pin));
        }
        components.push_back(std::move(comp));
    }

    std::vector<Net> nets;
    const auto &jnets = detail::require_array(doc, "nets", "");
    for (std::size_t n = 0; n < jnets.size(); ++n) {
        const auto &jn = jnets[n];
        const std::string at = index_path("nets", n);
        Net net;
        net.name = detail::require_string(jn, "name", at);
        const auto &jeps = detail::require_array(jn, "endpoints", at);
        for (std::size_t e = 0; e < jeps.size(); ++e) {
            const std::string eat = index_path(at + ".endpoints", e);
            const auto &je = jeps[e];
            if (!je.is_array() || je.size() != 2 || !je[0].is_string())
                throw ParseError(eat, "endpoint must be [ref, pin number]");
            net.endpoints.push_back(PinRef{je[0].get<std::string>(), static_cast<int>(detail::require_integer(je[1], eat + "[1]"))});
        }
        nets.push_back(std::move(net));
    }

    std::map<std::string, std::string> metadata;
    if (auto it = doc.find("metadata"); it != doc.end()) {
        if (!it->is_object())
            throw ParseError("metadata", "expected an object");
        for (const auto &[k, v] : it->items()) {
            if (!v.is_string())
                throw ParseError("metadata." + k, "expected a string");
            metadata.emplace(k, v.get<std::string>());
        }
    }
    return Circuit::build(std::move(components), std::move(nets), std::move(metadata));
}

inline detail::json circuit_to_json(const Circuit &c)
{
    detail::json doc = detail::json::object();
    doc["components"] = detail::json::array();
    for (const auto &comp : c.components()) {
        detail::json jc = detail::json::object();
        jc["ref"] = comp.ref;
        jc["part_type"] = comp.part_type;
        if (comp.value)
            jc["value"] = *comp.value;
        jc["pins"] = detail::json::array();
        for (const auto &p : comp.pins)
            jc["pins"].push_back(detail::json{{"number", p.number}, {"name", p.name}});
        doc["components"].push_back(std::move(jc));
    }
    doc["nets"] = detail::json::array();
    for (const auto &net : c.nets()) {
        detail::json jn = detail::json::object();
        jn["name"] = net.name;
        jn["endpoints"] = detail::json::array();
        for (const auto &ep : net.endpoints)
            jn["endpoints"].push_back(detail::json::array({ep.ref, ep.pin}));
        doc["nets"].push_back(std::move(jn));
    }
    doc["metadata"] = detail::json::object();
    for (const auto &[k, v] : c.metadata())
        doc["metadata"][k] = v;
    return doc;
}

inline Circuit parse_circuit(std::string_view bytes)
{
    return circuit_from_json(detail::parse_json_text(bytes));
}

inline std::string serialize_circuit(const Circuit &c)
{
    return detail::dump_canonical(circuit_to_json(c));
}

inline Circuit load_circuit(const std::string &path)
{
    const std::string text = detail::read_file(path);
    try {
        return parse_circuit(text);
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.locus(), e.detail());
    }
}

// ---------------------------------------------------------------------------
// Bipartite graph

struct BipartiteGraph
{
    struct Edge
    {
        std::string ref;
        int pin = 0;
        std::string net;

        friend auto operator<=>(const Edge &, const Edge &) = default;
        friend bool operator==(const Edge &, const Edge &) = default;
    };

    std::set<std::string> component_vertices;
    std::set<std::string> net_vertices;
    std::vector<Edge> edges; // one per bound pin, sorted

    friend bool operator==(const BipartiteGraph &, const BipartiteGraph &) = default;
};

inline BipartiteGraph build_bipartite_graph(const Circuit &c)
{
    BipartiteGraph g;
    for (const auto &comp : c.components())
        g.component_vertices.insert(comp.ref);
    for (const auto &net : c.nets()) {
        g.net_vertices.insert(net.name);
        for (const auto &ep : net.endpoints)
            g.edges.push_back({ep.ref, ep.pin, net.name});
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

} // namespace schemaguard
