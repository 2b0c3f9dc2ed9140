// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

#include "schemaguard/json_support.hpp"
#include "schemaguard/violation.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace schemaguard {

enum class FeedbackLevel { Full, Weak, None };

inline std::string_view to_string(FeedbackLevel l)
{
    switch (l) {
    case FeedbackLevel::Full: return "full";
    case FeedbackLevel::Weak: return "weak";
    case FeedbackLevel::None: return "none";
    }
    return "?";
}

inline std::optional<FeedbackLevel> feedback_level_from_string(std::string_view s)
{
    for (FeedbackLevel l : {FeedbackLevel::Full, FeedbackLevel::Weak, FeedbackLevel::None})
        if (to_string(l) == s)
            return l;
    return std::nullopt;
}

using PhaseHistogram = std::map<Phase, std::size_t>;

struct FeedbackMessage
{
    FeedbackLevel level{};
    std::string text;
    PhaseHistogram phase_histogram;
};

inline constexpr std::string_view kPassText = "PASS";
inline constexpr std::string_view kFullTrailer = "Please fix these topology issues and provide the corrected code.";
inline constexpr std::string_view kWeakTrailer = "Please fix these issues and provide the corrected code.";
inline constexpr std::string_view kNoneText = "Attempt failed. Please try again.";

inline std::string_view category_text(Phase p)
{
    switch (p) {
    case Phase::Phase1_SyntaxERC: return "Syntax/ERC check failed.";
    case Phase::Phase2_KGConstraint: return "Constraint verification failed.";
    case Phase::Phase3_Topology: return "Topology verification failed.";
    case Phase::Phase4_SystemTopology: return "System topology verification failed.";
    }
    return "?";
}

/// Violation counts per phase; every phase is present, possibly with zero.
inline PhaseHistogram classify_phases(const std::vector<Violation> &violations)
{
    PhaseHistogram h;
    for (Phase p : kAllPhases)
        h[p] = 0;
    for (const auto &v : violations)
        ++h[v.phase];
    return h;
}

/// Earliest phase with a violation; the phase a failed attempt is charged to.
inline std::optional<Phase> earliest_phase(const std::vector<Violation> &violations)
{
    std::optional<Phase> out;
    for (const auto &v : violations)
        if (!out || v.phase < *out)
            out = v.phase;
    return out;
}

inline FeedbackMessage render(const std::vector<Violation> &violations, FeedbackLevel level)
{
    FeedbackMessage m{level, {}, classify_phases(violations)};
    if (violations.empty()) {
        m.text = kPassText;
        return m;
    }
    switch (level) {
    case FeedbackLevel::Full:
        for (const auto &v : violations)
            m.text += v.message + "\n";
        m.text += kFullTrailer;
        break;
    case FeedbackLevel::Weak: {
        // one line per failing phase, in first-appearance order
        std::set<Phase> seen;
        for (const auto &v : violations)
            if (seen.insert(v.phase).second)
                m.text += std::string(category_text(v.phase)) + "\n";
        m.text += kWeakTrailer;
        break;
    }
    case FeedbackLevel::None:
        m.text = kNoneText;
        break;
    }
    return m;
}

inline detail::json report_to_json(bool ok, const std::vector<Violation> &violations, const FeedbackMessage &fb)
{
    detail::json vs = detail::json::array();
    for (const auto &v : violations)
        vs.push_back(violation_to_json(v));
    return detail::json{{"ok", ok},
                        {"violations", std::move(vs)},
                        {"feedback", {{"level", to_string(fb.level)}, {"text", fb.text}}}};
}

} // namespace schemaguard
