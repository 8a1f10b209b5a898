#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "pact/instance.hpp"

using namespace pact;

TEST_CASE("expected rewards and welfare of the shifted-support instance", "[instance]") {
    Instance inst = fixtures::shifted_support();
    REQUIRE(inst.num_actions() == 4);
    REQUIRE(inst.num_outcomes() == 6);
    CHECK(inst.expected_reward(0) == Rational(161, 80));
    CHECK(inst.expected_reward(1) == Rational(7, 2));
    CHECK(inst.expected_reward(2) == Rational(399, 80));
    CHECK(inst.expected_reward(3) == Rational(407, 80));
    CHECK(inst.welfare(2) == Rational(239, 80));
    // Third action is the unique welfare maximizer.
    for (size_t a : {0u, 1u, 3u}) CHECK(inst.welfare(a) < inst.welfare(2));

    CHECK(inst.flags.no_dominated_actions);
    CHECK(inst.flags.unique_welfare_maximizer);
    CHECK(inst.flags.has_zero_cost_action);
    CHECK_FALSE(inst.flags.first_outcome_zero);
}

TEST_CASE("flags of the all-or-nothing instance", "[instance]") {
    Instance inst = fixtures::all_or_nothing();
    CHECK(inst.expected_reward(0) == 1);
    CHECK(inst.expected_reward(1) == 3);
    CHECK(inst.welfare(1) == Rational(5, 3));
    CHECK(inst.flags.no_dominated_actions);
    CHECK(inst.flags.unique_welfare_maximizer);
    CHECK(inst.flags.has_zero_cost_action);
    CHECK_FALSE(inst.flags.first_outcome_zero);
}

TEST_CASE("build_instance sorts outcomes and carries probabilities along", "[instance]") {
    Instance shuffled = build_instance(
        {3, 1}, {{{0, 1}, 0}, {{1, 0}, Rational(4, 3)}});
    Instance sorted = fixtures::all_or_nothing();
    CHECK(shuffled.outcomes == sorted.outcomes);
    for (size_t a = 0; a < 2; ++a) {
        CHECK(shuffled.actions[a].probs == sorted.actions[a].probs);
        CHECK(shuffled.actions[a].cost == sorted.actions[a].cost);
    }
}

TEST_CASE("build_instance rejects malformed data", "[instance]") {
    CHECK_THROWS_AS(build_instance({}, {{{}, 0}}), MalformedInstance);
    CHECK_THROWS_AS(build_instance({1}, {}), MalformedInstance);
    // probabilities must sum to one
    CHECK_THROWS_AS(build_instance({0, 1}, {{{Rational(1, 2), Rational(1, 4)}, 0}}),
                    MalformedInstance);
    // no negative probabilities
    CHECK_THROWS_AS(build_instance({0, 1}, {{{Rational(3, 2), Rational(-1, 2)}, 0}}),
                    MalformedInstance);
    // no negative costs
    CHECK_THROWS_AS(build_instance({0, 1}, {{{0, 1}, -1}}), MalformedInstance);
    // no negative outcomes
    CHECK_THROWS_AS(build_instance({-1, 1}, {{{0, 1}, 0}}), MalformedInstance);
    // probability vector length must match the outcome count
    CHECK_THROWS_AS(build_instance({0, 1}, {{{1}, 0}}), MalformedInstance);
}

TEST_CASE("duplicate actions build fine but clear the domination flag", "[instance]") {
    Instance inst = build_instance({0, 1}, {{{0, 1}, 1}, {{0, 1}, 1}});
    CHECK_FALSE(inst.flags.no_dominated_actions);
    CHECK_FALSE(inst.flags.unique_welfare_maximizer);
    CHECK_FALSE(inst.flags.has_zero_cost_action);
    CHECK(inst.flags.first_outcome_zero);
}

TEST_CASE("equal rewards with distinct costs also clear the domination flag", "[instance]") {
    Instance inst = build_instance(
        {0, 2}, {{{Rational(1, 2), Rational(1, 2)}, 0}, {{Rational(1, 2), Rational(1, 2)}, 1}});
    CHECK_FALSE(inst.flags.no_dominated_actions);
}

TEST_CASE("outcomes nobody can reach are tolerated", "[instance]") {
    Instance inst = build_instance({0, 1, 2}, {{{Rational(1, 2), 0, Rational(1, 2)}, 0}});
    CHECK(inst.expected_reward(0) == 1);
}

TEST_CASE("duplicate outcome values are allowed", "[instance]") {
    Instance inst = build_instance({1, 1}, {{{Rational(1, 2), Rational(1, 2)}, 0}});
    CHECK(inst.expected_reward(0) == 1);
}
