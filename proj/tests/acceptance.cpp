// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "si_oracle.hpp"
#include "test_support.hpp"

#include "schemaguard/cli.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace schemaguard;
using namespace std::chrono_literals;

namespace {

struct Outcome
{
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int number, const std::string &title, std::chrono::milliseconds limit,
               const std::function<void(Outcome &)> &body)
{
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception &e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    if (limit.count() > 0 && ms > limit)
        o.require(false, "took " + std::to_string(ms.count()) + " ms, limit " + std::to_string(limit.count()) + " ms");
    failures += o.ok ? 0 : 1;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  [" << number << "] " << title << " (" << ms.count() << " ms)";
    if (!o.detail.empty())
        std::cout << ": " << o.detail;
    std::cout << std::endl;
}

/// Pass@k in tenths of a percent, half-up, from integer binomials only.
long long pass_tenths_oracle(int n, int c, int k)
{
    using boost::multiprecision::cpp_int;
    auto choose = [](int a, int b) {
        if (b < 0 || b > a)
            return cpp_int(0);
        cpp_int r = 1;
        for (int i = 1; i <= b; ++i)
            r = r * (a - b + i) / i;
        return r;
    };
    const cpp_int all = choose(n, k), miss = choose(n - c, k);
    const cpp_int num = 2000 * (all - miss) + all;
    return static_cast<long long>(num / (2 * all));
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

int main()
{
    criterion(1, "pass@k closed form matches integer oracle at n=15", 1s, [](Outcome &o) {
        o.require(format_1dp(pass_at_k(15, 8, 1)) == "53.3", "c=8,k=1");
        o.require(format_1dp(pass_at_k(15, 1, 5)) == "33.3", "c=1,k=5");
        for (int k : {1, 5}) {
            o.require(format_1dp(pass_at_k(15, 15, k)) == "100.0", "c=15");
            o.require(format_1dp(pass_at_k(15, 0, k)) == "0.0", "c=0");
        }
        for (int c = 0; c <= 15; ++c)
            for (int k : {1, 5}) {
                const long long tenths = std::llround(pass_at_k(15, c, k) * 10.0);
                o.require(tenths == pass_tenths_oracle(15, c, k),
                          "c=" + std::to_string(c) + ",k=" + std::to_string(k));
            }
    });

    criterion(2, "agreement statistics on the four confusion matrices", 1s, [](Outcome &o) {
        struct Row { long long tp, fp, fn, tn; double kappa; };
        const Row rows[] = {{59, 1, 2, 58, 0.950}, {95, 5, 6, 94, 0.890}, {67, 3, 3, 67, 0.914}, {221, 9, 11, 219, 0.913}};
        std::string got;
        for (const auto &r : rows) {
            Agreement a = agreement_stats(r.tp, r.fp, r.fn, r.tn);
            got += " " + fmt(a.kappa.value_or(-1));
            o.require(a.kappa && std::abs(*a.kappa - r.kappa) <= 0.001, "kappa" + got);
        }
        Agreement all = agreement_stats(221, 9, 11, 219);
        o.require(std::abs(*all.precision * 100 - 96.1) <= 0.1, "precision " + fmt(*all.precision * 100));
        o.require(std::abs(*all.recall * 100 - 95.3) <= 0.1, "recall " + fmt(*all.recall * 100));
        o.require(std::abs(*all.f1 * 100 - 95.7) <= 0.1, "f1 " + fmt(*all.f1 * 100));
        if (o.ok)
            o.detail = "kappa" + got + "; P/R/F1 " + format_1dp(*all.precision * 100) + "/" +
                       format_1dp(*all.recall * 100) + "/" + format_1dp(*all.f1 * 100);
    });

    criterion(3, "byte-exact feedback for the task 7 decoupling-cap removal", 1s, [](Outcome &o) {
        const std::pair<FeedbackLevel, std::string> cases[] = {
            {FeedbackLevel::Full,
             "C_DIRECT missing between secondary_vdd and secondary_gnd (nets ['VISO+'] vs ['ISO_0V'])\n"
             "Please fix these topology issues and provide the corrected code."},
            {FeedbackLevel::Weak, "Topology verification failed.\nPlease fix these issues and provide the corrected code."},
            {FeedbackLevel::None, "Attempt failed. Please try again."}};
        for (const auto &[level, text] : cases) {
            CheckOptions opt;
            opt.netlist = sgtest::task_file(7, "mutations/remove_output_cap.circuit.json").string();
            opt.kg = sgtest::kg_path().string();
            opt.tmpl = sgtest::task_file(7, "template.json").string();
            opt.level = level;
            std::ostringstream out, err;
            const int rc = cmd_check(opt, out, err);
            o.require(rc == 1, "exit status " + std::to_string(rc));
            o.require(out.str() == text + "\n", std::string(to_string(level)) + " text: " + out.str());
        }
    });

    criterion(4, "constraint violation messages", 0ms, [](Outcome &o) {
        const struct { int task; const char *mutation; const char *message; } cases[] = {
            {7, "short_vin", "U1: supply pair shorted (+VIN and -VIN on VIN)"},
            {6, "floating_feedback", "U1: pin FB is unconnected"},
            {8, "gate_resistor_bypassed", "Q1: gate net appears floating (G on GATE_H)"}};
        for (const auto &c : cases) {
            auto vs = check_intra(sgtest::mutation(c.task, c.mutation), sgtest::shipped_kg());
            auto msgs = sgtest::messages(vs);
            o.require(std::find(msgs.begin(), msgs.end(), c.message) != msgs.end(), std::string("missing: ") + c.message);
        }
    });

    criterion(5, "subgraph matching agrees with brute force on random instances", 60s, [](Outcome &o) {
        std::mt19937 rng(424242);
        int agree = 0, embeddable = 0;
        constexpr int kInstances = 2000;
        for (int i = 0; i < kInstances; ++i) {
            auto in = sgtest::random_instance(rng);
            const bool expected = sgtest::brute_force_exists(in.pattern, in.host);
            Embedding e = find_monomorphism(in.pattern, in.host);
            embeddable += expected ? 1 : 0;
            if (!e.budget_exceeded && e.matched == expected)
                ++agree;
        }
        o.require(agree == kInstances, std::to_string(kInstances - agree) + " disagreements");
        o.detail = std::to_string(agree) + "/" + std::to_string(kInstances) + " agree, " + std::to_string(embeddable) +
                   " embeddable";
    });

    criterion(6, "duplicating a passive never breaks a golden", 0ms, [](Outcome &o) {
        int checked = 0;
        for (int id : sgtest::full_bundle_ids()) {
            TaskBundle b = load_bundle(sgtest::tasks_dir(), id, false);
            for (const auto &comp : b.golden->components()) {
                const PartEntry *e = b.kg.find(comp.part_type);
                if (!e || !e->attribute("passive_kind"))
                    continue;
                auto r = verify(sgtest::duplicate_component(*b.golden, comp.ref), b.kg, b.tmpl);
                ++checked;
                o.require(r.ok, "task " + std::to_string(id) + " " + comp.ref + ": " +
                                    (r.violations.empty() ? "" : r.violations[0].message));
            }
        }
        o.require(checked > 0, "no passives found");
        if (o.ok)
            o.detail = std::to_string(checked) + " duplications";
    });

    criterion(7, "corpus integrity gate", 10s, [](Outcome &o) {
        int mutations = 0;
        for (int id : sgtest::full_bundle_ids()) {
            TaskBundle b = load_bundle(sgtest::tasks_dir(), id, true);
            auto r = verify(*b.golden, b.kg, b.tmpl);
            o.require(r.ok && r.violations.empty(), "golden " + std::to_string(id));
            mutations += static_cast<int>(b.mutations.size());
        }
        auto r17 = verify(sgtest::mutation(17, "inductor_from_vin"), sgtest::shipped_kg(), sgtest::task_template(17));
        o.require(!r17.ok && earliest_phase(r17.violations) == Phase::Phase4_SystemTopology, "task 17 not Phase4");
        auto r7 = verify(sgtest::mutation(7, "short_vin"), sgtest::shipped_kg(), sgtest::task_template(7));
        o.require(!r7.ok && earliest_phase(r7.violations) == Phase::Phase2_KGConstraint, "task 7 short not Phase2");
        if (o.ok)
            o.detail = std::to_string(sgtest::full_bundle_ids().size()) + " goldens, " + std::to_string(mutations) +
                       " mutations";
    });

    criterion(8, "repair loop: full feedback repairs in 2, none exhausts retries", 0ms, [](Outcome &o) {
        auto ctx = load_trial_context(load_bundle(sgtest::tasks_dir(), 7, false).spec);
        auto gen = GeneratorAdapter::from_command(sgtest::stub_path() + " --mode repair --tasks " +
                                                      sgtest::tasks_dir().string() +
                                                      " --mutation remove_output_cap --keyword C_DIRECT",
                                                  30s);
        constexpr int kRetries = 3;
        auto full = run_trial(ctx, gen, kRetries, 0, FeedbackLevel::Full);
        o.require(full.success && full.attempts.size() == 2, "full: " + std::to_string(full.attempts.size()) + " attempts");
        auto none = run_trial(ctx, gen, kRetries, 0, FeedbackLevel::None);
        o.require(!none.success && none.attempts.size() == kRetries,
                  "none: " + std::to_string(none.attempts.size()) + " attempts");
    });

    criterion(9, "Wilson half-width at p=0.5, n=15, z=1.645", 0ms, [](Outcome &o) {
        using Dec = boost::multiprecision::cpp_dec_float_50;
        const Dec z("1.645"), n(15), p("0.5");
        const Dec z2 = z * z, denom = 1 + z2 / n;
        const Dec ref = z / denom * boost::multiprecision::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
        const double hw = wilson_interval(0.5, 15, 1.645).half_width;
        o.require(std::abs(hw - ref.convert_to<double>()) < 1e-12, "differs from reference");
        o.require(std::abs(hw - 0.1955) <= 0.0005, "half-width " + fmt(hw));
        o.detail = "half-width " + fmt(hw);
    });

    criterion(10, "mean knowledge-graph token footprint", 0ms, [](Outcome &o) {
        const auto &kg = sgtest::shipped_kg();
        std::size_t sum = 0;
        for (const auto &[name, e] : kg.entries())
            sum += token_footprint(e);
        const double mean = static_cast<double>(sum) / static_cast<double>(kg.entries().size());
        o.require(mean >= 100 && mean <= 600, "mean " + format_1dp(mean));
        o.detail = "mean " + format_1dp(mean) + " over " + std::to_string(kg.entries().size()) + " entries";
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
