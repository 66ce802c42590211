#include <gtest/gtest.h>

#include "apa/core.hpp"
#include "support/fixtures.hpp"

namespace {

using apa::ArgSet;
using apa::ErrorKind;
using fixtures::set;

TEST(Validate, ElmaDescriptionIsValid) {
    auto fw = fixtures::elma();
    EXPECT_EQ(fw.size(), 4u);
    EXPECT_EQ(fw.initial(), set(fw, {"a2", "a3", "a4"}));
    ASSERT_EQ(fw.attacks().size(), 1u);
    ASSERT_EQ(fw.acts().size(), 1u);
    EXPECT_EQ(fw.acts()[0].kind(), apa::ActKind::Convert);
    EXPECT_EQ(fw.format(fw.acts()[0]), "(a3,a4,a5)");
}

TEST(Validate, UndeclaredAttackerIsReported) {
    try {
        apa::make_framework({{"a2", "a3"}, {"a2"}, {{"a9", "a2"}}, {}});
        FAIL() << "expected an error";
    } catch (const apa::Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UndeclaredArgument);
        EXPECT_EQ(e.diagnostics().front().token, "a9");
    }
}

TEST(Validate, StaticFrameworkWithoutAttacksOrActs) {
    auto fw = apa::make_framework({{"x"}, {"x"}, {}, {}});
    EXPECT_TRUE(fw.attacks().empty());
    EXPECT_TRUE(fw.acts().empty());
}

TEST(Validate, CollectsEveryViolation) {
    apa::FrameworkDescription d;
    d.arguments = {{"a", {1, 12}}, {"a", {1, 14}}, {"b", {1, 16}}};
    d.initial = {{"zz", {2, 10}}};
    d.attacks = {{{"a", {3, 9}}, {"q", {3, 14}}}};
    try {
        apa::validate(d);
        FAIL() << "expected an error";
    } catch (const apa::Error& e) {
        ASSERT_EQ(e.diagnostics().size(), 3u);
        EXPECT_EQ(e.diagnostics()[0].kind, ErrorKind::DuplicateArgument);
        EXPECT_EQ(e.diagnostics()[0].location, (apa::SourceLocation{1, 14}));
        EXPECT_EQ(e.diagnostics()[1].kind, ErrorKind::BadInitial);
        EXPECT_EQ(e.diagnostics()[1].token, "zz");
        EXPECT_EQ(e.diagnostics()[2].kind, ErrorKind::UndeclaredArgument);
        EXPECT_EQ(e.diagnostics()[2].token, "q");
    }
}

TEST(Validate, EmptyTriggerNameIsReserved) {
    EXPECT_THROW(
        {
            try {
                apa::make_framework({{"a", "eps"}, {}, {}, {}});
            } catch (const apa::Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::ReservedName);
                throw;
            }
        },
        apa::Error);
}

TEST(Validate, NeedsAtLeastOneArgument) { EXPECT_THROW(apa::make_framework({{}, {}, {}, {}}), apa::Error); }

TEST(Validate, DuplicateActsCollapse) {
    auto fw = apa::make_framework({{"a", "b"}, {"a"}, {}, {{"a", "", "b"}, {"a", "", "b"}, {"a", "a", "a"}}});
    EXPECT_EQ(fw.acts().size(), 2u);
    // induce sorts before convert
    EXPECT_EQ(fw.acts()[0].kind(), apa::ActKind::Induce);
}

TEST(InducedState, ElmaInitialKeepsItsAttack) {
    auto fw = fixtures::elma();
    auto s = fw.induced_state(set(fw, {"a2", "a3", "a4"}));
    auto attacks = fw.induced_attacks(s);
    ASSERT_EQ(attacks.size(), 1u);
    EXPECT_EQ(fw.name(attacks[0].first), "a2");
    EXPECT_EQ(fw.name(attacks[0].second), "a3");
}

TEST(InducedState, AliceInitialHasNoAttacks) {
    auto fw = fixtures::alice_core();
    EXPECT_TRUE(fw.induced_attacks(fw.initial_state()).empty());
}

TEST(InducedState, EmptyVisibleSet) {
    auto fw = fixtures::elma();
    auto s = fw.induced_state(ArgSet{});
    EXPECT_TRUE(s.visible.empty());
    EXPECT_TRUE(fw.induced_attacks(s).empty());
}

TEST(AttackersOf, Elma) {
    auto fw = fixtures::elma();
    auto s0 = fw.initial_state();
    EXPECT_EQ(fw.attackers_of(s0, *fw.find("a3")), set(fw, {"a2"}));
    EXPECT_TRUE(fw.attackers_of(s0, *fw.find("a2")).empty());
    auto s = fw.induced_state(set(fw, {"a3", "a4"}));
    EXPECT_TRUE(fw.attackers_of(s, *fw.find("a3")).empty());
}

TEST(InducedState, IdempotentAndAttackersStayVisible) {
    auto fw = apa::make_framework(
        {{"p", "q", "r", "s"}, {"p"}, {{"p", "q"}, {"q", "r"}, {"r", "p"}, {"s", "s"}, {"q", "s"}}, {}});
    fw.all().for_each_subset([&](ArgSet v) {
        auto s = fw.induced_state(v);
        EXPECT_EQ(fw.induced_state(s.visible), s);
        for (apa::ArgIndex a = 0; a < fw.size(); ++a) EXPECT_TRUE(fw.attackers_of(s, a).subset_of(s.visible));
    });
}

TEST(ArgSet, SubsetEnumerationVisitsEverySubsetOnce) {
    ArgSet s = ArgSet::of({1, 3, 4});
    std::vector<ArgSet> seen;
    s.for_each_subset([&](ArgSet x) { seen.push_back(x); });
    EXPECT_EQ(seen.size(), 8u);
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto x : seen) EXPECT_TRUE(x.subset_of(s));
}

TEST(ArgSet, CanonicalOrderIsBySizeThenMembers) {
    std::vector<ArgSet> v{ArgSet::of({0, 1}), ArgSet::of({2}), ArgSet{}, ArgSet::of({0, 2}), ArgSet::of({1})};
    apa::canonical_sort(v);
    EXPECT_EQ(v, (std::vector<ArgSet>{ArgSet{}, ArgSet::of({1}), ArgSet::of({2}), ArgSet::of({0, 1}),
                                      ArgSet::of({0, 2})}));
}

}  // namespace
