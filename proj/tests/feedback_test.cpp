// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace schemaguard;

namespace {

std::vector<Violation> missing_output_cap()
{
    return verify(sgtest::mutation(7, "remove_output_cap"), sgtest::shipped_kg(), sgtest::task_template(7)).violations;
}

Violation v(Phase p, std::string msg) { return Violation{p, "x", "", {}, {}, std::move(msg)}; }

} // namespace

TEST(Feedback, ThreeLevelsForMissingCapacitor)
{
    auto vs = missing_output_cap();
    EXPECT_EQ(render(vs, FeedbackLevel::Full).text,
              "C_DIRECT missing between secondary_vdd and secondary_gnd (nets ['VISO+'] vs ['ISO_0V'])\n"
              "Please fix these topology issues and provide the corrected code.");
    EXPECT_EQ(render(vs, FeedbackLevel::Weak).text,
              "Topology verification failed.\nPlease fix these issues and provide the corrected code.");
    EXPECT_EQ(render(vs, FeedbackLevel::None).text, "Attempt failed. Please try again.");
}

TEST(Feedback, PassText)
{
    for (auto l : {FeedbackLevel::Full, FeedbackLevel::Weak, FeedbackLevel::None})
        EXPECT_EQ(render({}, l).text, "PASS");
}

TEST(Feedback, WeakListsOneCategoryPerPhaseInOrderOfAppearance)
{
    std::vector<Violation> vs{v(Phase::Phase3_Topology, "a"), v(Phase::Phase1_SyntaxERC, "b"),
                              v(Phase::Phase3_Topology, "c")};
    const std::string weak = render(vs, FeedbackLevel::Weak).text;
    const std::string expected = std::string(category_text(Phase::Phase3_Topology)) + "\n" +
                                 std::string(category_text(Phase::Phase1_SyntaxERC)) + "\n" + std::string(kWeakTrailer);
    EXPECT_EQ(weak, expected);
}

TEST(Feedback, FullListsEveryMessage)
{
    std::vector<Violation> vs{v(Phase::Phase2_KGConstraint, "one"), v(Phase::Phase4_SystemTopology, "two")};
    EXPECT_EQ(render(vs, FeedbackLevel::Full).text, "one\ntwo\n" + std::string(kFullTrailer));
}

TEST(Feedback, HistogramCoversEveryPhase)
{
    std::vector<Violation> vs{v(Phase::Phase3_Topology, "a"), v(Phase::Phase3_Topology, "b"),
                              v(Phase::Phase1_SyntaxERC, "c")};
    auto h = classify_phases(vs);
    EXPECT_EQ(h.size(), 4u);
    EXPECT_EQ(h[Phase::Phase1_SyntaxERC], 1u);
    EXPECT_EQ(h[Phase::Phase2_KGConstraint], 0u);
    EXPECT_EQ(h[Phase::Phase3_Topology], 2u);
    EXPECT_EQ(earliest_phase(vs), Phase::Phase1_SyntaxERC);
    EXPECT_FALSE(earliest_phase({}).has_value());
    EXPECT_EQ(render(vs, FeedbackLevel::None).phase_histogram, h);
}

TEST(Feedback, LevelNames)
{
    EXPECT_EQ(to_string(FeedbackLevel::Weak), "weak");
    EXPECT_EQ(feedback_level_from_string("none"), FeedbackLevel::None);
    EXPECT_FALSE(feedback_level_from_string("loud").has_value());
}

TEST(Feedback, ReportJson)
{
    auto vs = missing_output_cap();
    auto j = report_to_json(false, vs, render(vs, FeedbackLevel::Weak));
    EXPECT_FALSE(j["ok"].get<bool>());
    EXPECT_EQ(j["violations"].size(), 1u);
    EXPECT_EQ(j["violations"][0]["code"], "c_direct_missing");
    EXPECT_EQ(j["feedback"]["level"], "weak");
}
