// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#include "schemaguard/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

std::vector<int> parse_int_list(const std::string &text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stoi(item));
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    using namespace schemaguard;
    CLI::App app{"Netlist verification and generator benchmarking"};
    app.require_subcommand(1);

    const std::map<std::string, FeedbackLevel> levels{
        {"full", FeedbackLevel::Full}, {"weak", FeedbackLevel::Weak}, {"none", FeedbackLevel::None}};

    CheckOptions check;
    std::string report, check_level = "full";
    auto *c = app.add_subcommand("check", "Verify a netlist against a knowledge graph and template");
    c->add_option("netlist", check.netlist, "Circuit document")->required();
    c->add_option("--kg", check.kg, "Knowledge graph")->required();
    c->add_option("--template", check.tmpl, "System template")->required();
    c->add_option("--feedback", check_level, "full, weak or none")->check(CLI::IsMember({"full", "weak", "none"}));
    c->add_option("--report", report, "Write a JSON report here");

    BenchOptions bench;
    std::string ks = "1,5", ids, level;
    auto *b = app.add_subcommand("bench", "Run a generator over benchmark tasks");
    b->add_option("--tasks", bench.tasks_dir, "Tasks directory")->required();
    b->add_option("--generator", bench.generator, "Generator command line")->required();
    b->add_option("--n", bench.n, "Trials per task")->check(CLI::PositiveNumber);
    b->add_option("--k", ks, "Comma-separated k values");
    b->add_option("--retries", bench.retries, "Attempts per trial")->check(CLI::PositiveNumber);
    b->add_option("--jobs", bench.jobs, "Worker threads (0: one per logical processor)");
    b->add_option("--out", bench.out_dir, "Output directory")->required();
    b->add_option("--ids", ids, "Comma-separated task ids");
    b->add_option("--z", bench.z, "Interval z value")->check(CLI::PositiveNumber);
    b->add_option("--timeout", bench.timeout_s, "Per-attempt timeout in seconds")->check(CLI::PositiveNumber);
    b->add_option("--seed", bench.seed, "Seed of the first trial");
    b->add_option("--feedback", level, "Override every task's feedback level")
        ->check(CLI::IsMember({"full", "weak", "none"}));

    std::string kg_path;
    auto *l = app.add_subcommand("kg-lint", "Lint a knowledge graph and report token footprints");
    l->add_option("kg", kg_path, "Knowledge graph")->required();

    std::string mutate_tasks;
    int mutate_id = 0;
    bool mutate_check = false;
    auto *m = app.add_subcommand("mutate", "Materialize a task's mutation netlists");
    m->add_option("--tasks", mutate_tasks, "Tasks directory")->required();
    m->add_option("--id", mutate_id, "Task id")->required();
    m->add_flag("--check", mutate_check, "Report stale files instead of writing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_status::input_error;
    }

    try {
        if (*c) {
            if (!report.empty())
                check.report = report;
            check.level = levels.at(check_level);
            return cmd_check(check, std::cout, std::cerr);
        }
        if (*b) {
            bench.ks = parse_int_list(ks);
            bench.ids = parse_int_list(ids);
            if (!level.empty())
                bench.level = levels.at(level);
            return cmd_bench(bench, std::cout, std::cerr);
        }
        if (*l)
            return cmd_kg_lint(kg_path, std::cout, std::cerr);
        if (*m)
            return cmd_mutate(mutate_tasks, mutate_id, mutate_check, std::cout, std::cerr);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return exit_status::input_error;
}
