// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

// Command implementations behind the schemaguard executable. Each returns an
// exit status and writes only to the streams it is given.

#include "schemaguard/bundle.hpp"
#include "schemaguard/feedback.hpp"
#include "schemaguard/harness.hpp"
#include "schemaguard/knowledge_graph.hpp"
#include "schemaguard/topology.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace schemaguard {

namespace exit_status {
inline constexpr int pass = 0;
inline constexpr int verification_failed = 1;
inline constexpr int input_error = 2;
inline constexpr int harness_error = 3;
} // namespace exit_status

namespace detail {

inline void write_text_file(const std::filesystem::path &path, const std::string &text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot write " + path.string());
    f << text;
    if (!f)
        throw DataError("cannot write " + path.string());
}

inline void print_parse_error(std::ostream &err, const ParseError &e)
{
    err << "error: " << e.locus() << ": " << e.detail() << "\n";
}

} // namespace detail

struct CheckOptions
{
    std::string netlist;
    std::string kg;
    std::string tmpl;
    FeedbackLevel level = FeedbackLevel::Full;
    std::optional<std::string> report;
};

inline int cmd_check(const CheckOptions &o, std::ostream &out, std::ostream &err)
{
    try {
        Circuit c = load_circuit(o.netlist);
        KnowledgeGraph kg = load_kg(o.kg);
        SystemTemplate t = load_template(o.tmpl);
        VerifyResult r = verify(c, kg, t);
        FeedbackMessage fb = render(r.violations, o.level);
        out << fb.text << "\n";
        if (o.report)
            detail::write_text_file(*o.report, detail::dump_canonical(report_to_json(r.ok, r.violations, fb)));
        return r.ok ? exit_status::pass : exit_status::verification_failed;
    } catch (const ParseError &e) {
        detail::print_parse_error(err, e);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
    }
    return exit_status::input_error;
}

struct BenchOptions
{
    std::string tasks_dir;
    std::string generator;
    int n = kDefaultTrials;
    std::vector<int> ks{1, 5};
    int retries = kDefaultRetries;
    unsigned jobs = 0;
    std::string out_dir;
    std::vector<int> ids; // empty: every task
    double z = kDefaultZ;
    double timeout_s = static_cast<double>(kDefaultTrialTimeout.count()) / 1000.0;
    long long seed = 0;
    std::optional<FeedbackLevel> level;
};

inline int cmd_bench(const BenchOptions &o, std::ostream &out, std::ostream &err)
{
    try {
        std::vector<TaskSpec> tasks = load_task_specs(o.tasks_dir);
        if (!o.ids.empty()) {
            std::vector<TaskSpec> picked;
            for (int id : o.ids) {
                auto it = std::find_if(tasks.begin(), tasks.end(), [&](const TaskSpec &t) { return t.id == id; });
                if (it == tasks.end())
                    throw DataError("unknown task id " + std::to_string(id));
                picked.push_back(*it);
            }
            tasks = std::move(picked);
        }
        if (!(o.timeout_s > 0))
            throw DomainError("timeout must be positive");
        auto gen = GeneratorAdapter::from_command(
            o.generator, std::chrono::milliseconds(static_cast<long long>(o.timeout_s * 1000.0)));
        std::vector<TrialResult> raw;
        BenchReport rep = run_benchmark(tasks, gen, o.n, o.ks, o.retries, o.jobs, o.z, o.seed, &raw, o.level);

        const std::filesystem::path dir(o.out_dir);
        detail::write_text_file(dir / "report.json", detail::dump_canonical(report_to_json(rep)));
        const std::string table = report_table(rep);
        detail::write_text_file(dir / "report.txt", table);
        detail::write_text_file(dir / "trials.jsonl", trials_to_jsonl(raw));
        out << table;
        return exit_status::pass;
    } catch (const HarnessError &e) {
        err << "harness error: " << e.what() << "\n";
        return exit_status::harness_error;
    } catch (const ParseError &e) {
        detail::print_parse_error(err, e);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
    }
    return exit_status::input_error;
}

inline int cmd_kg_lint(const std::string &kg_path, std::ostream &out, std::ostream &err)
{
    try {
        KnowledgeGraph kg = load_kg(kg_path);
        auto diags = lint_kg(kg);
        for (const auto &d : diags)
            out << "diagnostic [" << d.code << "] " << d.message << "\n";
        std::size_t sum = 0;
        for (const auto &[name, entry] : kg.entries()) {
            std::size_t f = token_footprint(entry);
            sum += f;
            out << "footprint " << name << " " << f << "\n";
        }
        const double mean = kg.empty() ? 0.0 : static_cast<double>(sum) / static_cast<double>(kg.entries().size());
        out << "entries " << kg.entries().size() << "\n";
        out << "mean footprint " << format_1dp(mean) << "\n";
        return diags.empty() ? exit_status::pass : exit_status::verification_failed;
    } catch (const ParseError &e) {
        detail::print_parse_error(err, e);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
    }
    return exit_status::input_error;
}

/// Writes mutations/<name>.circuit.json for one task from its golden and
/// declared edits. With `check_only`, compares instead of writing and fails
/// (status 1) on any drift.
inline int cmd_mutate(const std::string &tasks_dir, int id, bool check_only, std::ostream &out, std::ostream &err)
{
    try {
        TaskBundle b = load_bundle(tasks_dir, id, true);
        auto corpus = mutation_corpus(b);
        bool drift = false;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const auto path = std::filesystem::path(b.spec.dir) / "mutations" / (b.mutations[i].name + ".circuit.json");
            const std::string text = serialize_circuit(corpus[i]);
            if (check_only) {
                std::string on_disk;
                try {
                    on_disk = detail::read_file(path.string());
                } catch (const ParseError &) {
                }
                if (on_disk != text) {
                    drift = true;
                    out << "stale " << path.string() << "\n";
                }
            } else {
                detail::write_text_file(path, text);
                out << "wrote " << path.string() << "\n";
            }
        }
        return drift ? exit_status::verification_failed : exit_status::pass;
    } catch (const ParseError &e) {
        detail::print_parse_error(err, e);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
    }
    return exit_status::input_error;
}

} // namespace schemaguard
