// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

// Scripted generator for exercising the loop harness. Reads one request on
// stdin and answers from the shipped task corpus.
//
//   golden   always the task's golden netlist
//   repair   a mutated netlist until the last feedback contains --keyword
//   flaky    golden when seed < --threshold, else an unparsable circuit
//   invalid  always an unparsable circuit
//   crash    exit status 1 with no output
//   garbage  non-JSON stdout

#include "schemaguard/bundle.hpp"
#include "schemaguard/knowledge_graph.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <iterator>

namespace {

using schemaguard::detail::json;

std::string empty_circuit() { return "{\"components\":[],\"nets\":[],\"metadata\":{}}"; }

std::string read_or(const std::filesystem::path &p, std::string fallback)
{
    std::error_code ec;
    if (!std::filesystem::exists(p, ec))
        return fallback;
    return schemaguard::detail::read_file(p.string());
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Scripted generator"};
    std::string mode = "golden", tasks, mutation, keyword = "C_DIRECT";
    long long threshold = 0;
    app.add_option("--mode", mode)->check(CLI::IsMember({"golden", "repair", "flaky", "invalid", "crash", "garbage"}));
    app.add_option("--tasks", tasks, "Tasks directory")->required();
    app.add_option("--mutation", mutation, "Mutation used by repair mode (default: first declared)");
    app.add_option("--keyword", keyword, "Feedback keyword that triggers repair");
    app.add_option("--threshold", threshold, "Flaky mode succeeds for seeds below this");
    CLI11_PARSE(app, argc, argv);

    std::string input((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    json req = json::parse(input, nullptr, false);
    if (req.is_discarded() || !req.contains("task_id"))
        return 2;

    if (mode == "crash")
        return 1;
    if (mode == "garbage") {
        std::cout << "this is not json\n";
        return 0;
    }

    const auto dir = std::filesystem::path(tasks) / std::to_string(req["task_id"].get<int>());
    const std::string golden = read_or(dir / "golden.circuit.json", empty_circuit());
    const std::string invalid = "{\"components\": [ {\"ref\": \"U1\"";

    std::string circuit;
    if (mode == "golden") {
        circuit = golden;
    } else if (mode == "invalid") {
        circuit = invalid;
    } else if (mode == "flaky") {
        circuit = req.value("seed", 0LL) < threshold ? golden : invalid;
    } else {
        std::string name = mutation;
        if (name.empty()) {
            json task = json::parse(read_or(dir / "task.json", "{}"), nullptr, false);
            if (task.is_object() && task.contains("mutations") && !task["mutations"].empty())
                name = task["mutations"][0].value("name", "");
        }
        const std::string mutated = read_or(dir / "mutations" / (name + ".circuit.json"), invalid);
        bool repaired = false;
        if (req.contains("history") && req["history"].is_array() && !req["history"].empty()) {
            const auto &last = req["history"].back();
            repaired = last.value("feedback", "").find(keyword) != std::string::npos;
        }
        circuit = repaired ? golden : mutated;
    }

    json resp{{"circuit", circuit},
              {"tokens_in", schemaguard::count_tokens(input)},
              {"tokens_out", schemaguard::count_tokens(circuit)}};
    std::cout << resp.dump() << "\n";
    return 0;
}
