#include <gtest/gtest.h>

#include "apa/semantics.hpp"
#include "support/fixtures.hpp"

namespace {

using apa::ArgSet;
using apa::Semantics;
using apa::State;
using fixtures::set;

TEST(ConflictFree, Elma) {
    auto fw = fixtures::elma();
    auto s0 = fw.initial_state();
    EXPECT_TRUE(apa::is_conflict_free(fw, set(fw, {"a2", "a4"}), s0));
    EXPECT_FALSE(apa::is_conflict_free(fw, set(fw, {"a2", "a3"}), s0));
    EXPECT_TRUE(apa::is_conflict_free(fw, ArgSet{}, s0));
    // both ends must be visible
    EXPECT_TRUE(apa::is_conflict_free(fw, set(fw, {"a2", "a3"}), State{set(fw, {"a2"})}));
}

TEST(Defends, NoEliminationNeedsA2) {
    auto fw = fixtures::elma();
    auto s0 = fw.initial_state();
    auto a4 = *fw.find("a4");
    EXPECT_FALSE(apa::defends(fw, set(fw, {"a4"}), a4, s0));
    EXPECT_TRUE(apa::defends(fw, set(fw, {"a2", "a4"}), a4, s0));
}

TEST(Defends, InvisibleArgumentIsAlwaysDefended) {
    auto fw = fixtures::elma();
    auto a5 = *fw.find("a5");
    fw.all().for_each_subset([&](ArgSet cand) { EXPECT_TRUE(apa::defends(fw, cand, a5, fw.initial_state())); });
}

TEST(Defends, CounterAttackRequired) {
    auto fw = fixtures::elma();
    // nothing attacks a2, so a3 is never defended at F(A0)
    fw.all().for_each_subset(
        [&](ArgSet cand) { EXPECT_FALSE(apa::defends(fw, cand, *fw.find("a3"), fw.initial_state())); });
}

TEST(Holds, ElmaAdmissible) {
    auto fw = fixtures::elma();
    auto s0 = fw.initial_state();
    EXPECT_TRUE(apa::holds(fw, Semantics::Admissible, set(fw, {"a2", "a4"}), s0));
    EXPECT_TRUE(apa::holds(fw, Semantics::Admissible, ArgSet{}, s0));
    EXPECT_FALSE(apa::holds(fw, Semantics::Admissible, set(fw, {"a4"}), s0));
    EXPECT_FALSE(apa::holds(fw, Semantics::Admissible, set(fw, {"a2", "a5"}), s0));  // improper
}

TEST(Holds, EmptySetAdmissibleEverywhere) {
    auto fw = fixtures::oscillation();
    fw.all().for_each_subset([&](ArgSet v) { EXPECT_TRUE(apa::holds(fw, Semantics::Admissible, ArgSet{}, State{v})); });
}

TEST(Holds, DungAttackChain) {
    auto fw = fixtures::dung_ab();
    auto s0 = fw.initial_state();
    auto a = set(fw, {"a"});
    EXPECT_EQ(apa::extensions(fw, Semantics::Complete, s0), std::vector<ArgSet>{a});
    for (auto w : {Semantics::Grounded, Semantics::Preferred, Semantics::Stable, Semantics::Complete})
        EXPECT_TRUE(apa::holds(fw, w, a, s0)) << apa::to_string(w);
    EXPECT_FALSE(apa::holds(fw, Semantics::Complete, ArgSet{}, s0));
    EXPECT_FALSE(apa::holds(fw, Semantics::Grounded, ArgSet{}, s0));
}

// Expected families from the subset-enumeration oracle.
TEST(Extensions, ElmaInitialState) {
    auto fw = fixtures::elma();
    auto s0 = fw.initial_state();
    auto a2a4 = set(fw, {"a2", "a4"});
    EXPECT_EQ(apa::extensions(fw, Semantics::Admissible, s0), (std::vector<ArgSet>{ArgSet{}, set(fw, {"a2"}), a2a4}));
    for (auto w : {Semantics::Complete, Semantics::Preferred, Semantics::Stable, Semantics::Grounded})
        EXPECT_EQ(apa::extensions(fw, w, s0), std::vector<ArgSet>{a2a4}) << apa::to_string(w);
    EXPECT_EQ(apa::grounded_set(fw, s0), a2a4);
}

TEST(Extensions, GroundedIsUnique) {
    auto fw = fixtures::oscillation();
    fw.all().for_each_subset([&](ArgSet v) { EXPECT_EQ(apa::extensions(fw, Semantics::Grounded, State{v}).size(), 1u); });
}

TEST(Extensions, NoVisibleArguments) {
    auto fw = fixtures::elma();
    EXPECT_TRUE(apa::grounded_set(fw, State{}).empty());
    EXPECT_EQ(apa::extensions(fw, Semantics::Complete, State{}), std::vector<ArgSet>{ArgSet{}});
}

TEST(Extensions, NotAdmissibleAfterTransition) {
    auto fw = fixtures::elma();
    auto after = State{set(fw, {"a2", "a3", "a5"})};
    EXPECT_FALSE(apa::holds(fw, Semantics::Admissible, set(fw, {"a2", "a4"}), after));
    EXPECT_EQ(apa::extensions(fw, Semantics::Complete, after), std::vector<ArgSet>{set(fw, {"a2", "a5"})});
}

TEST(Extensions, BoundGuard) {
    apa::FrameworkSpec spec;
    for (int i = 0; i < 22; ++i) {
        spec.arguments.push_back("x" + std::to_string(i));
        spec.initial.push_back("x" + std::to_string(i));
    }
    auto fw = apa::make_framework(spec);
    try {
        apa::extensions(fw, Semantics::Admissible, fw.initial_state());
        FAIL();
    } catch (const apa::Error& e) {
        EXPECT_EQ(e.kind(), apa::ErrorKind::TooLarge);
    }
    // point predicates never enumerate, so they are not bounded
    EXPECT_TRUE(apa::is_admissible(fw, fw.all(), fw.initial_state()));
    EXPECT_TRUE(apa::is_complete(fw, fw.all(), fw.initial_state()));
}

TEST(Extensions, StableMayNotExist) {
    auto fw = apa::make_framework({{"a", "b", "c"}, {"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}, {}});
    EXPECT_TRUE(apa::extensions(fw, Semantics::Stable, fw.initial_state()).empty());
    EXPECT_TRUE(apa::grounded_set(fw, fw.initial_state()).empty());
}

TEST(StateSemantics, PointPredicatesAgreeWithEnumeration) {
    auto fw = fixtures::oscillation();
    fw.all().for_each_subset([&](ArgSet v) {
        State s{v};
        apa::StateSemantics sem(fw, s);
        fw.all().for_each_subset([&](ArgSet c) {
            EXPECT_EQ(sem.holds(Semantics::Admissible, c), apa::is_admissible(fw, c, s));
            EXPECT_EQ(sem.holds(Semantics::Complete, c), apa::is_complete(fw, c, s));
        });
    });
}

}  // namespace
