// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

// Benchmark task bundles: task metadata, template, golden netlist and
// declared single-edit mutations.

#include "schemaguard/circuit.hpp"
#include "schemaguard/feedback.hpp"
#include "schemaguard/knowledge_graph.hpp"
#include "schemaguard/topology.hpp"
#include "schemaguard/violation.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace schemaguard {

enum class Difficulty { Easy, Medium, Hard };

inline std::string_view to_string(Difficulty d)
{
    switch (d) {
    case Difficulty::Easy: return "Easy";
    case Difficulty::Medium: return "Medium";
    case Difficulty::Hard: return "Hard";
    }
    return "?";
}

inline std::optional<Difficulty> difficulty_from_string(std::string_view s)
{
    for (Difficulty d : {Difficulty::Easy, Difficulty::Medium, Difficulty::Hard})
        if (to_string(d) == s)
            return d;
    return std::nullopt;
}

/// Tier implied by the task id: 1-6 Easy, 7-16 Medium, 17-23 Hard.
inline Difficulty difficulty_for_id(int id)
{
    if (id <= 6)
        return Difficulty::Easy;
    if (id <= 16)
        return Difficulty::Medium;
    return Difficulty::Hard;
}

struct TaskSpec
{
    int id = 0;
    std::string name;
    Difficulty difficulty{};
    std::string prompt_payload;
    std::string kg_path;       // absolute after loading
    std::string template_path; // absolute after loading
    FeedbackLevel feedback_level = FeedbackLevel::Full;
    std::map<std::string, std::string> attributes;
    bool known_unsatisfied = false;
    std::string dir;
};

struct MutationSpec
{
    std::string name;
    std::string description;
    detail::json edits;
    std::string expected_code;
    Phase expected_phase{};
};

struct TaskBundle
{
    TaskSpec spec;
    KnowledgeGraph kg;
    SystemTemplate tmpl;
    std::optional<Circuit> golden;
    std::vector<MutationSpec> mutations;

    /// Entries of the KG used by the golden netlist.
    std::vector<std::string> kg_fragment() const
    {
        std::vector<std::string> out;
        if (golden)
            for (const auto &c : golden->components())
                if (std::find(out.begin(), out.end(), c.part_type) == out.end())
                    out.push_back(c.part_type);
        std::sort(out.begin(), out.end());
        return out;
    }
};

// ---------------------------------------------------------------- edits

namespace detail {

inline int edit_pin_number(const Circuit &c, const std::string &ref, const json &pin, const std::string &at)
{
    const Component *comp = c.find_component(ref);
    if (!comp)
        throw DataError(at + ": unknown component '" + ref + "'");
    if (pin.is_number_integer()) {
        int n = pin.get<int>();
        if (!comp->find_pin(n))
            throw DataError(at + ": unknown pin " + std::to_string(n) + " on " + ref);
        return n;
    }
    if (pin.is_string()) {
        const PinId *p = comp->find_pin(pin.get<std::string>());
        if (!p)
            throw DataError(at + ": unknown pin '" + pin.get<std::string>() + "' on " + ref);
        return p->number;
    }
    throw DataError(at + ": pin must be a number or a name");
}

inline std::string edit_string(const json &e, const char *key, const std::string &at)
{
    auto it = e.find(key);
    if (it == e.end() || !it->is_string())
        throw DataError(at + ": missing string field '" + key + "'");
    return it->get<std::string>();
}

} // namespace detail

/// Applies one edit. Ops: move_pin {ref, pin, to|null}, remove_component
/// {ref}, merge_nets {from, into}, rename_net {from, to}, add_component
/// {ref, part_type, value?, pins, nets}. Nets left empty are dropped.
inline Circuit apply_edit(const Circuit &c, const detail::json &edit, const std::string &at = "edit")
{
    using detail::edit_string;
    std::vector<Component> comps = c.components();
    std::vector<Net> nets = c.nets();
    const std::string op = edit_string(edit, "op", at);

    auto find_net = [&](const std::string &name) {
        return std::find_if(nets.begin(), nets.end(), [&](const Net &n) { return n.name == name; });
    };

    if (op == "move_pin") {
        const std::string ref = edit_string(edit, "ref", at);
        auto pin_it = edit.find("pin");
        if (pin_it == edit.end())
            throw DataError(at + ": missing field 'pin'");
        const int pin = detail::edit_pin_number(c, ref, *pin_it, at);
        for (auto &n : nets)
            std::erase(n.endpoints, PinRef{ref, pin});
        auto to = edit.find("to");
        if (to == edit.end())
            throw DataError(at + ": missing field 'to'");
        if (to->is_string()) {
            auto it = find_net(to->get<std::string>());
            if (it == nets.end())
                nets.push_back(Net{to->get<std::string>(), {PinRef{ref, pin}}});
            else
                it->endpoints.push_back(PinRef{ref, pin});
        } else if (!to->is_null()) {
            throw DataError(at + ": 'to' must be a net name or null");
        }
    } else if (op == "remove_component") {
        const std::string ref = edit_string(edit, "ref", at);
        auto it = std::find_if(comps.begin(), comps.end(), [&](const Component &x) { return x.ref == ref; });
        if (it == comps.end())
            throw DataError(at + ": unknown component '" + ref + "'");
        comps.erase(it);
        for (auto &n : nets)
            std::erase_if(n.endpoints, [&](const PinRef &p) { return p.ref == ref; });
    } else if (op == "merge_nets") {
        const std::string from = edit_string(edit, "from", at);
        const std::string into = edit_string(edit, "into", at);
        auto f = find_net(from);
        if (f == nets.end() || find_net(into) == nets.end() || from == into)
            throw DataError(at + ": merge_nets needs two distinct existing nets");
        auto eps = f->endpoints;
        nets.erase(f);
        auto t = find_net(into);
        t->endpoints.insert(t->endpoints.end(), eps.begin(), eps.end());
    } else if (op == "rename_net") {
        const std::string from = edit_string(edit, "from", at);
        const std::string to = edit_string(edit, "to", at);
        auto f = find_net(from);
        if (f == nets.end() || find_net(to) != nets.end())
            throw DataError(at + ": rename_net needs an existing source and a free target name");
        f->name = to;
    } else if (op == "add_component") {
        Component comp;
        comp.ref = edit_string(edit, "ref", at);
        comp.part_type = edit_string(edit, "part_type", at);
        if (auto v = edit.find("value"); v != edit.end() && v->is_string())
            comp.value = v->get<std::string>();
        auto pins = edit.find("pins");
        if (pins == edit.end() || !pins->is_array())
            throw DataError(at + ": missing array field 'pins'");
        for (const auto &p : *pins) {
            if (!p.is_object() || !p.contains("number") || !p.contains("name") || !p["number"].is_number_integer() ||
                !p["name"].is_string())
                throw DataError(at + ": pins entries need number and name");
            comp.pins.push_back(PinId{p["number"].get<int>(), p["name"].get<std::string>()});
        }
        if (auto conn = edit.find("nets"); conn != edit.end()) {
            if (!conn->is_object())
                throw DataError(at + ": 'nets' must map pin numbers to net names");
            for (const auto &[pin, net] : conn->items()) {
                if (!net.is_string())
                    throw DataError(at + ": net names must be strings");
                int number = 0;
                try {
                    number = std::stoi(pin);
                } catch (const std::exception &) {
                    throw DataError(at + ": bad pin number '" + pin + "'");
                }
                auto it = find_net(net.get<std::string>());
                if (it == nets.end())
                    nets.push_back(Net{net.get<std::string>(), {PinRef{comp.ref, number}}});
                else
                    it->endpoints.push_back(PinRef{comp.ref, number});
            }
        }
        comps.push_back(std::move(comp));
    } else {
        throw DataError(at + ": unknown edit op '" + op + "'");
    }

    std::erase_if(nets, [](const Net &n) { return n.endpoints.empty(); });
    try {
        return Circuit::build(std::move(comps), std::move(nets), c.metadata());
    } catch (const ParseError &e) {
        throw DataError(at + ": edit yields an invalid circuit (" + e.locus() + ": " + e.detail() + ")");
    }
}

inline Circuit apply_mutation(const Circuit &golden, const MutationSpec &m)
{
    Circuit out = golden;
    for (std::size_t i = 0; i < m.edits.size(); ++i)
        out = apply_edit(out, m.edits[i], m.name + ".edits[" + std::to_string(i) + "]");
    return out;
}

/// One mutated circuit per declared mutation, in declaration order.
inline std::vector<Circuit> mutation_corpus(const TaskBundle &b)
{
    if (!b.golden)
        throw DataError("task " + std::to_string(b.spec.id) + " has no golden netlist");
    std::vector<Circuit> out;
    for (const auto &m : b.mutations)
        out.push_back(apply_mutation(*b.golden, m));
    return out;
}

/// A mutation behaves as declared when verification fails, the expected code
/// appears at the expected phase, and nothing fires in an earlier phase.
inline bool mutation_behaves(const VerifyResult &r, const MutationSpec &m)
{
    if (r.ok)
        return false;
    bool found = false;
    for (const auto &v : r.violations) {
        if (v.phase < m.expected_phase)
            return false;
        if (v.phase == m.expected_phase && v.code == m.expected_code)
            found = true;
    }
    return found;
}

// ---------------------------------------------------------------- loading

inline TaskSpec task_spec_from_json(const detail::json &j, const std::filesystem::path &dir)
{
    using namespace detail;
    TaskSpec t;
    t.dir = dir.string();
    t.id = static_cast<int>(require_integer(require(j, "id", ""), "id"));
    if (t.id < 1 || t.id > 23)
        throw ParseError("id", "task id must be in 1..23");
    t.name = require_string(j, "name", "");
    const std::string diff = require_string(j, "difficulty", "");
    auto d = difficulty_from_string(diff);
    if (!d)
        throw ParseError("difficulty", "unknown difficulty '" + diff + "'");
    if (*d != difficulty_for_id(t.id))
        throw ParseError("difficulty", "difficulty does not match the tier for task " + std::to_string(t.id));
    t.difficulty = *d;
    t.prompt_payload = require_string(j, "prompt_payload", "");
    t.kg_path = (dir / require_string(j, "kg_path", "")).lexically_normal().string();
    t.template_path = (dir / require_string(j, "template_path", "")).lexically_normal().string();
    if (auto it = j.find("feedback_level"); it != j.end()) {
        auto l = it->is_string() ? feedback_level_from_string(it->get<std::string>()) : std::nullopt;
        if (!l)
            throw ParseError("feedback_level", "expected full, weak or none");
        t.feedback_level = *l;
    }
    if (auto it = j.find("attributes"); it != j.end()) {
        if (!it->is_object())
            throw ParseError("attributes", "expected an object");
        for (const auto &[k, v] : it->items()) {
            if (!v.is_string())
                throw ParseError(field_path("attributes", k), "expected a string");
            t.attributes[k] = v.get<std::string>();
        }
    }
    if (auto it = j.find("known_unsatisfied"); it != j.end())
        t.known_unsatisfied = it->is_boolean() && it->get<bool>();
    return t;
}

inline std::filesystem::path task_dir(const std::filesystem::path &tasks_root, int id)
{
    return tasks_root / std::to_string(id);
}

inline TaskSpec load_task_spec(const std::filesystem::path &dir)
{
    const auto path = (dir / "task.json").string();
    try {
        return task_spec_from_json(detail::parse_json_text(detail::read_file(path)), dir);
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.locus(), e.detail());
    }
}

/// All task specs under `tasks_root`, sorted by id.
inline std::vector<TaskSpec> load_task_specs(const std::filesystem::path &tasks_root)
{
    std::vector<TaskSpec> out;
    if (!std::filesystem::is_directory(tasks_root))
        throw DataError("tasks directory not found: " + tasks_root.string());
    for (const auto &entry : std::filesystem::directory_iterator(tasks_root))
        if (entry.is_directory() && std::filesystem::exists(entry.path() / "task.json"))
            out.push_back(load_task_spec(entry.path()));
    std::sort(out.begin(), out.end(), [](const TaskSpec &a, const TaskSpec &b) { return a.id < b.id; });
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].id == out[i - 1].id)
            throw DataError("duplicate task id " + std::to_string(out[i].id));
    return out;
}

/// Loads and integrity-checks a bundle: the golden must verify clean and every
/// mutation must fail as declared. Violations of either raise DataError.
inline TaskBundle load_bundle(const std::filesystem::path &tasks_root, int id, bool check_integrity = true)
{
    const auto dir = task_dir(tasks_root, id);
    if (!std::filesystem::exists(dir / "task.json"))
        throw DataError("unknown task id " + std::to_string(id));
    TaskBundle b;
    b.spec = load_task_spec(dir);
    if (b.spec.id != id)
        throw DataError("task directory " + dir.string() + " declares id " + std::to_string(b.spec.id));
    b.kg = load_kg(b.spec.kg_path);
    b.tmpl = load_template(b.spec.template_path);

    const auto json_path = (dir / "task.json").string();
    const auto doc = detail::parse_json_text(detail::read_file(json_path));
    if (auto it = doc.find("golden"); it != doc.end() && it->is_string())
        b.golden = load_circuit((dir / it->get<std::string>()).string());

    if (auto it = doc.find("mutations"); it != doc.end()) {
        if (!it->is_array())
            throw ParseError(json_path + ": mutations", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto &jm = (*it)[i];
            const std::string at = json_path + ": " + detail::index_path("mutations", i);
            MutationSpec m;
            m.name = detail::require_string(jm, "name", at);
            m.description = detail::require_string(jm, "description", at);
            m.edits = detail::require_array(jm, "edits", at);
            m.expected_code = detail::require_string(jm, "expected_code", at);
            const std::string ph = detail::require_string(jm, "expected_phase", at);
            auto p = phase_from_string(ph);
            if (!p)
                throw ParseError(at + ".expected_phase", "unknown phase '" + ph + "'");
            m.expected_phase = *p;
            b.mutations.push_back(std::move(m));
        }
    }
    if (!b.mutations.empty() && !b.golden)
        throw DataError("task " + std::to_string(id) + " declares mutations without a golden");

    if (check_integrity && b.golden) {
        auto r = verify(*b.golden, b.kg, b.tmpl);
        if (!r.ok)
            throw DataError("task " + std::to_string(id) + ": golden does not verify: " +
                            r.violations.front().message);
        for (const auto &m : b.mutations) {
            auto mr = verify(apply_mutation(*b.golden, m), b.kg, b.tmpl);
            if (!mutation_behaves(mr, m))
                throw DataError("task " + std::to_string(id) + ": mutation '" + m.name + "' does not fail with " +
                                m.expected_code + " at " + std::string(to_string(m.expected_phase)));
        }
    }
    return b;
}

} // namespace schemaguard
