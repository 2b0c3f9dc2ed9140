// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

// Generate -> verify -> feedback loop over an external generator process, and
// the benchmark runner with its report.

#include "schemaguard/bundle.hpp"
#include "schemaguard/circuit.hpp"
#include "schemaguard/feedback.hpp"
#include "schemaguard/stats.hpp"
#include "schemaguard/subprocess.hpp"
#include "schemaguard/topology.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace schemaguard {

inline constexpr int kDefaultRetries = 3;
inline constexpr int kDefaultTrials = 15;
inline constexpr double kDefaultZ = 1.645;
inline constexpr std::chrono::milliseconds kDefaultTrialTimeout{120'000};

struct AttemptRecord
{
    int round = 1;
    std::optional<Circuit> circuit;
    std::vector<Violation> violations;
    long long tokens_in = 0;
    long long tokens_out = 0;
};

struct TrialResult
{
    int task_id = 0;
    std::string task_name;
    Difficulty difficulty{};
    long long seed = 0;
    bool success = false;
    std::vector<AttemptRecord> attempts;
    std::optional<Phase> first_fail_phase; // earliest phase of the final attempt, failed trials only
    long long total_tokens = 0;
};

/// External generator speaking the stdin/stdout JSON protocol.
struct GeneratorAdapter
{
    std::vector<std::string> argv;
    std::chrono::milliseconds timeout = kDefaultTrialTimeout;

    static GeneratorAdapter from_command(const std::string &cmd,
                                         std::chrono::milliseconds timeout = kDefaultTrialTimeout)
    {
        GeneratorAdapter g{split_command(cmd), timeout};
        if (g.argv.empty())
            throw HarnessError("empty generator command");
        return g;
    }
};

/// Everything one trial needs besides the generator.
struct TrialContext
{
    TaskSpec task;
    KnowledgeGraph kg;
    SystemTemplate tmpl;
};

inline TrialContext load_trial_context(const TaskSpec &task)
{
    return TrialContext{task, load_kg(task.kg_path), load_template(task.template_path)};
}

namespace detail {

inline Violation synthetic_violation(std::string_view code, std::string message)
{
    return Violation{Phase::Phase1_SyntaxERC, std::string(code), "", {}, {}, std::move(message)};
}

inline long long token_field(const json &j, const char *key)
{
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer() || it->get<long long>() < 0)
        throw HarnessError(std::string("generator protocol violation: '") + key +
                           "' must be a non-negative integer");
    return it->get<long long>();
}

} // namespace detail

/// One trial: up to `max_retries` rounds, stopping at the first clean
/// verification. Protocol violations throw HarnessError; crashes, timeouts
/// and unparsable circuits are failed attempts.
inline TrialResult run_trial(const TrialContext &ctx, const GeneratorAdapter &gen, int max_retries, long long seed,
                             std::optional<FeedbackLevel> level_override = std::nullopt)
{
    using detail::json;
    if (max_retries < 1)
        throw DomainError("max_retries must be at least 1");
    const FeedbackLevel level = level_override.value_or(ctx.task.feedback_level);

    TrialResult tr;
    tr.task_id = ctx.task.id;
    tr.task_name = ctx.task.name;
    tr.difficulty = ctx.task.difficulty;
    tr.seed = seed;
    json history = json::array();

    for (int round = 1; round <= max_retries; ++round) {
        json req{{"task_id", ctx.task.id},
                 {"seed", seed},
                 {"round", round},
                 {"task_prompt", ctx.task.prompt_payload},
                 {"history", history}};
        ProcessResult pr = run_process(gen.argv, req.dump() + "\n", gen.timeout);

        AttemptRecord a;
        a.round = round;
        if (!pr.succeeded()) {
            std::string why = pr.timed_out  ? "timed out"
                              : pr.signaled ? "crashed"
                                            : "exited with status " + std::to_string(pr.exit_code);
            a.violations.push_back(detail::synthetic_violation(codes::generator_failure, "generator " + why));
        } else {
            json resp;
            try {
                resp = json::parse(pr.out);
            } catch (const json::parse_error &) {
                throw HarnessError("generator protocol violation: stdout is not a JSON document");
            }
            if (!resp.is_object() || !resp.contains("circuit"))
                throw HarnessError("generator protocol violation: response lacks 'circuit'");
            a.tokens_in = detail::token_field(resp, "tokens_in");
            a.tokens_out = detail::token_field(resp, "tokens_out");
            try {
                const json &jc = resp["circuit"];
                a.circuit = jc.is_string() ? parse_circuit(jc.get<std::string>()) : circuit_from_json(jc);
            } catch (const ParseError &e) {
                a.violations.push_back(detail::synthetic_violation(
                    codes::circuit_parse_error, "circuit parse error at " + e.locus() + ": " + e.detail()));
            }
            if (a.circuit)
                a.violations = verify(*a.circuit, ctx.kg, ctx.tmpl).violations;
        }

        tr.total_tokens += a.tokens_in + a.tokens_out;
        const bool ok = a.violations.empty();
        const FeedbackMessage fb = render(a.violations, level);
        json h{{"feedback", fb.text}};
        if (a.circuit)
            h = json{{"circuit", circuit_to_json(*a.circuit)}, {"feedback", fb.text}};
        history.push_back(std::move(h));
        tr.attempts.push_back(std::move(a));
        if (ok) {
            tr.success = true;
            break;
        }
    }
    if (!tr.success)
        tr.first_fail_phase = earliest_phase(tr.attempts.back().violations);
    return tr;
}

// ---------------------------------------------------------------- report

struct TaskRow
{
    int id = 0;
    std::string name;
    Difficulty difficulty{};
    int n = 0;
    int c = 0;
    std::map<int, double> pass_at_k; // k -> percentage, one decimal
    Interval pass1_ci;               // Wilson interval on c/n
};

struct RoundPoint
{
    int round = 0;
    long long cumulative_successes = 0;
    long long cumulative_tokens = 0;
};

struct BenchReport
{
    int n = 0;
    std::vector<int> ks;
    double z = kDefaultZ;
    std::vector<TaskRow> tasks;
    double overall_pass1 = 0; // mean of per-task Pass@1, one decimal
    int solved = 0;
    std::map<Difficulty, PhaseHistogram> phase_histograms;
    std::vector<RoundPoint> curve;
};

/// Recomputes every statistic from raw trials. Tasks are rows in ascending
/// id order; only tasks with trials appear.
inline BenchReport assemble_report(const std::vector<TrialResult> &trials, int n, std::vector<int> ks, double z,
                                   int max_rounds)
{
    BenchReport r;
    r.n = n;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    r.ks = ks;
    r.z = z;
    for (Difficulty d : {Difficulty::Easy, Difficulty::Medium, Difficulty::Hard})
        r.phase_histograms[d] = classify_phases({});

    std::map<int, TaskRow> rows;
    for (const auto &t : trials) {
        auto &row = rows[t.task_id];
        row.id = t.task_id;
        row.name = t.task_name;
        row.difficulty = t.difficulty;
        ++row.n;
        row.c += t.success ? 1 : 0;
        if (!t.success && t.first_fail_phase)
            ++r.phase_histograms[t.difficulty][*t.first_fail_phase];
    }
    Rational pass1_sum = 0;
    for (auto &[id, row] : rows) {
        for (int k : ks)
            if (k <= row.n)
                row.pass_at_k[k] = pass_at_k(row.n, row.c, k);
        row.pass1_ci = wilson_interval(static_cast<double>(row.c) / row.n, row.n, z);
        pass1_sum += Rational(row.c, row.n);
        r.solved += row.c >= 1 ? 1 : 0;
        r.tasks.push_back(row);
    }
    if (!rows.empty())
        r.overall_pass1 = round_percent_1dp(pass1_sum / static_cast<long long>(rows.size()));

    for (int round = 1; round <= max_rounds; ++round) {
        RoundPoint p{round, 0, 0};
        for (const auto &t : trials) {
            if (t.success && static_cast<int>(t.attempts.size()) <= round)
                ++p.cumulative_successes;
            for (const auto &a : t.attempts)
                if (a.round <= round)
                    p.cumulative_tokens += a.tokens_in + a.tokens_out;
        }
        r.curve.push_back(p);
    }
    return r;
}

/// n trials per task on a bounded worker pool. Trial i of every task gets
/// seed base_seed + i. The first harness error aborts the run and is rethrown.
inline BenchReport run_benchmark(const std::vector<TaskSpec> &tasks, const GeneratorAdapter &gen, int n,
                                 std::vector<int> ks, int max_retries = kDefaultRetries, unsigned jobs = 0,
                                 double z = kDefaultZ, long long base_seed = 0,
                                 std::vector<TrialResult> *raw = nullptr,
                                 std::optional<FeedbackLevel> level_override = std::nullopt)
{
    if (n < 1)
        throw DomainError("n must be at least 1");
    for (int k : ks)
        if (k < 1 || k > n)
            throw DomainError("every k must satisfy 1 <= k <= n");
    if (jobs == 0)
        jobs = std::max(1u, std::thread::hardware_concurrency());

    std::vector<TrialContext> ctxs;
    for (const auto &t : tasks)
        ctxs.push_back(load_trial_context(t));

    const std::size_t total = ctxs.size() * static_cast<std::size_t>(n);
    std::vector<TrialResult> results(total);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::exception_ptr error;
    std::mutex error_mu;

    auto worker = [&] {
        while (!abort.load()) {
            std::size_t i = next.fetch_add(1);
            if (i >= total)
                return;
            try {
                results[i] = run_trial(ctxs[i / n], gen, max_retries, base_seed + static_cast<long long>(i % n),
                                       level_override);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error)
                    error = std::current_exception();
                abort = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < std::min<std::size_t>(jobs, std::max<std::size_t>(total, 1)); ++j)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);

    if (raw)
        *raw = results;
    return assemble_report(results, n, std::move(ks), z, max_retries);
}

// ---------------------------------------------------------------- serialization

inline detail::json trial_to_json(const TrialResult &t)
{
    using detail::json;
    json attempts = json::array();
    for (const auto &a : t.attempts) {
        json vs = json::array();
        for (const auto &v : a.violations)
            vs.push_back(violation_to_json(v));
        attempts.push_back(json{{"round", a.round},
                                {"circuit", a.circuit ? circuit_to_json(*a.circuit) : json(nullptr)},
                                {"violations", std::move(vs)},
                                {"tokens_in", a.tokens_in},
                                {"tokens_out", a.tokens_out}});
    }
    return json{{"task_id", t.task_id},
                {"task_name", t.task_name},
                {"difficulty", to_string(t.difficulty)},
                {"seed", t.seed},
                {"success", t.success},
                {"first_fail_phase", t.first_fail_phase ? json(to_string(*t.first_fail_phase)) : json(nullptr)},
                {"total_tokens", t.total_tokens},
                {"attempts", std::move(attempts)}};
}

inline TrialResult trial_from_json(const detail::json &j)
{
    using namespace detail;
    TrialResult t;
    t.task_id = static_cast<int>(require_integer(require(j, "task_id", ""), "task_id"));
    t.task_name = require_string(j, "task_name", "");
    auto d = difficulty_from_string(require_string(j, "difficulty", ""));
    if (!d)
        throw ParseError("difficulty", "unknown difficulty");
    t.difficulty = *d;
    t.seed = require_integer(require(j, "seed", ""), "seed");
    const json &s = require(j, "success", "");
    if (!s.is_boolean())
        throw ParseError("success", "expected a boolean");
    t.success = s.get<bool>();
    const json &ff = require(j, "first_fail_phase", "");
    if (ff.is_string()) {
        auto p = phase_from_string(ff.get<std::string>());
        if (!p)
            throw ParseError("first_fail_phase", "unknown phase");
        t.first_fail_phase = *p;
    }
    t.total_tokens = require_integer(require(j, "total_tokens", ""), "total_tokens");
    const json &ja = require_array(j, "attempts", "");
    for (std::size_t i = 0; i < ja.size(); ++i) {
        const std::string at = index_path("attempts", i);
        AttemptRecord a;
        a.round = static_cast<int>(require_integer(require(ja[i], "round", at), at + ".round"));
        const json &jc = require(ja[i], "circuit", at);
        if (!jc.is_null())
            a.circuit = circuit_from_json(jc);
        const json &jv = require_array(ja[i], "violations", at);
        for (std::size_t k = 0; k < jv.size(); ++k)
            a.violations.push_back(violation_from_json(jv[k], index_path(at + ".violations", k)));
        a.tokens_in = require_integer(require(ja[i], "tokens_in", at), at + ".tokens_in");
        a.tokens_out = require_integer(require(ja[i], "tokens_out", at), at + ".tokens_out");
        t.attempts.push_back(std::move(a));
    }
    return t;
}

inline std::string trials_to_jsonl(const std::vector<TrialResult> &trials)
{
    std::string out;
    for (const auto &t : trials)
        out += trial_to_json(t).dump() + "\n";
    return out;
}

inline std::vector<TrialResult> trials_from_jsonl(std::string_view text)
{
    std::vector<TrialResult> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++line_no;
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos)
            continue;
        try {
            out.push_back(trial_from_json(detail::parse_json_text(line)));
        } catch (const ParseError &e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.locus(), e.detail());
        }
    }
    return out;
}

inline detail::json report_to_json(const BenchReport &r)
{
    using detail::json;
    json tasks = json::array();
    for (const auto &row : r.tasks) {
        json pk = json::object();
        for (const auto &[k, v] : row.pass_at_k)
            pk[std::to_string(k)] = v;
        tasks.push_back(json{{"id", row.id},
                             {"name", row.name},
                             {"difficulty", to_string(row.difficulty)},
                             {"n", row.n},
                             {"c", row.c},
                             {"pass_at_k", std::move(pk)},
                             {"pass1_interval", {{"low", row.pass1_ci.low}, {"high", row.pass1_ci.high}}}});
    }
    json hist = json::object();
    for (const auto &[d, h] : r.phase_histograms) {
        json jh = json::object();
        for (const auto &[p, count] : h)
            jh[std::string(to_string(p))] = count;
        hist[std::string(to_string(d))] = std::move(jh);
    }
    json curve = json::array();
    for (const auto &p : r.curve)
        curve.push_back(json{{"round", p.round},
                             {"cumulative_successes", p.cumulative_successes},
                             {"cumulative_tokens", p.cumulative_tokens}});
    return json{{"n", r.n},
                {"ks", r.ks},
                {"z", r.z},
                {"tasks", std::move(tasks)},
                {"overall_pass1", r.overall_pass1},
                {"solved", r.solved},
                {"phase_histograms", std::move(hist)},
                {"rounds", std::move(curve)}};
}

/// Fixed-width table: one row per task, one column per k, then the summary.
inline std::string report_table(const BenchReport &r)
{
    std::ostringstream os;
    auto pad = [](std::string s, std::size_t w, bool right) {
        if (s.size() >= w)
            return s;
        return right ? std::string(w - s.size(), ' ') + s : s + std::string(w - s.size(), ' ');
    };
    os << pad("Task", 6, false) << pad("Difficulty", 12, false);
    for (int k : r.ks)
        os << pad("Pass@" + std::to_string(k), 10, true);
    os << "  " << "Name\n";
    for (const auto &row : r.tasks) {
        os << pad(std::to_string(row.id), 6, false) << pad(std::string(to_string(row.difficulty)), 12, false);
        for (int k : r.ks) {
            auto it = row.pass_at_k.find(k);
            os << pad(it == row.pass_at_k.end() ? "-" : format_1dp(it->second), 10, true);
        }
        os << "  " << row.name << "\n";
    }
    os << "# Solved: " << r.solved << "/" << r.tasks.size() << "\n";
    os << "Overall Pass@1 (%): " << format_1dp(r.overall_pass1) << "\n";
    return os.str();
}

} // namespace schemaguard
