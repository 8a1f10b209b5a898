#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pact/robust.hpp"

using namespace pact;

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

/// Two actions over outcomes (0, 1, 2): a free one with expected reward 1
/// and a costly one with expected reward 3/2.
AmbiguousInstance running_example() {
    return check_ambiguous({q(0), q(1), q(2)},
                           {AmbiguousAction{q(1), q(0)}, AmbiguousAction{q(3, 2), q(1, 4)}});
}

Contract pay(std::vector<Rational> t) { return Contract{std::move(t)}; }

} // namespace

TEST_CASE("ambiguous validation accepts and rejects as specified") {
    REQUIRE_NOTHROW(running_example());
    // Single zero-cost action is fine.
    REQUIRE_NOTHROW(check_ambiguous({q(0), q(1), q(2)}, {AmbiguousAction{q(3, 2), q(0)}}));

    // Too few outcomes for ambiguity to matter.
    REQUIRE_THROWS_AS(check_ambiguous({q(0), q(1)}, {AmbiguousAction{q(1), q(0)}}),
                      NotAmbiguous);
    // Grid must start at zero.
    REQUIRE_THROWS_AS(check_ambiguous({q(1), q(2), q(3)}, {AmbiguousAction{q(1), q(0)}}),
                      NotAmbiguous);
    // Strictly increasing outcomes.
    REQUIRE_THROWS_AS(check_ambiguous({q(0), q(2), q(2)}, {AmbiguousAction{q(1), q(0)}}),
                      NotAmbiguous);
    // Rewards must admit a compatible distribution.
    REQUIRE_THROWS_AS(check_ambiguous({q(0), q(1), q(2)}, {AmbiguousAction{q(3), q(0)}}),
                      NotAmbiguous);
    REQUIRE_THROWS_AS(check_ambiguous({q(0), q(1), q(2)}, {AmbiguousAction{q(-1), q(0)}}),
                      NotAmbiguous);
    // Costs are nonnegative and someone works for free.
    REQUIRE_THROWS_AS(check_ambiguous({q(0), q(1), q(2)}, {AmbiguousAction{q(1), q(-1)}}),
                      NotAmbiguous);
    REQUIRE_THROWS_AS(check_ambiguous({q(0), q(1), q(2)}, {AmbiguousAction{q(1), q(1, 2)}}),
                      NotAmbiguous);
    REQUIRE_THROWS_AS(check_ambiguous({q(0), q(1), q(2)}, {}), NotAmbiguous);
}

TEST_CASE("best linear contract from rewards and costs alone") {
    AmbiguousInstance inst = running_example();
    LinearWorstCase lwc = linear_worst_case(inst);
    // At the indifference point 1/2 the costly action pays (1-1/2)*(3/2) = 3/4,
    // worse than handing the free action its full reward.
    REQUIRE(lwc.alpha == 0);
    REQUIRE(lwc.action == 0);
    REQUIRE(lwc.payoff == 1);

    AmbiguousInstance solo =
        check_ambiguous({q(0), q(1), q(2)}, {AmbiguousAction{q(3, 2), q(0)}});
    LinearWorstCase solo_lwc = linear_worst_case(solo);
    REQUIRE(solo_lwc.alpha == 0);
    REQUIRE(solo_lwc.payoff == q(3, 2));

    // Geometric reward ladder where every switch point yields payoff exactly 1.
    AmbiguousInstance ladder = check_ambiguous(
        {q(0), q(1), q(2)}, {AmbiguousAction{q(1), q(0)}, AmbiguousAction{q(2), q(1, 2)}});
    LinearWorstCase ladder_lwc = linear_worst_case(ladder);
    REQUIRE(ladder_lwc.payoff == 1);
    REQUIRE(ladder_lwc.alpha == 0); // ties resolve to the smallest coefficient
}

TEST_CASE("two-point adversary on frozen contracts") {
    AmbiguousInstance inst = running_example();

    SECTION("linear contracts are distribution-proof") {
        AdversaryOutcome adv = two_point_adversary(inst, pay({q(0), q(1, 2), q(1)}));
        // Expected payment is alpha * R under every compatible distribution;
        // the agent ties at utility 1/2 and the costly action pays more.
        REQUIRE(adv.payoff == q(3, 4));
        REQUIRE(adv.induced_choice == 1);
    }

    SECTION("the zero contract hands over the free action's reward") {
        AdversaryOutcome adv = two_point_adversary(inst, pay({q(0), q(0), q(0)}));
        REQUIRE(adv.payoff == 1);
        REQUIRE(adv.induced_choice == 0);
    }

    SECTION("a middle-loaded contract is driven below zero") {
        AdversaryOutcome adv = two_point_adversary(inst, pay({q(0), q(2), q(0)}));
        REQUIRE(adv.payoff == q(-1));
        REQUIRE(adv.induced_choice == 0);
        // Witness: the free action concentrates on the middle outcome, the
        // costly one avoids it entirely.
        REQUIRE(adv.distributions[0].high == 1);
        REQUIRE(adv.distributions[0].high_weight == 1);
        REQUIRE(adv.distributions[1].low == 0);
        REQUIRE(adv.distributions[1].high == 2);
        REQUIRE(adv.distributions[1].low_weight == q(1, 4));
        REQUIRE(adv.distributions[1].high_weight == q(3, 4));
    }

    SECTION("a top-loaded contract stays nonnegative here") {
        AdversaryOutcome adv = two_point_adversary(inst, pay({q(0), q(0), q(2)}));
        REQUIRE(adv.payoff == 0);
    }

    SECTION("input validation and the combination cap") {
        REQUIRE_THROWS_AS(two_point_adversary(inst, pay({q(0), q(0)})), DimensionMismatch);
        REQUIRE_THROWS_AS(two_point_adversary(inst, pay({q(0), q(-1), q(0)})),
                          MalformedContract);
        REQUIRE_THROWS_AS(two_point_adversary(inst, pay({q(0), q(0), q(0)}), 1),
                          SizeLimitExceeded);
    }
}

TEST_CASE("affine reduction case analysis on frozen contracts") {
    AmbiguousInstance inst = running_example();

    SECTION("affine input maps to itself") {
        RobustConstruction red = affine_reduction(inst, pay({q(1, 4), q(3, 4), q(5, 4)}));
        REQUIRE(red.kind == ReductionCase::affine_input);
        REQUIRE_FALSE(red.pivot.has_value());
        REQUIRE(red.affine.base == q(1, 4));
        REQUIRE(red.affine.slope == q(1, 2));
        REQUIRE(red.steered_action == 1);
        REQUIRE(red.affine_payoff == q(1, 2));
        REQUIRE(red.contract_payoff == q(1, 2));
    }

    SECTION("decreasing payments lose to paying nothing") {
        RobustConstruction red = affine_reduction(inst, pay({q(3), q(2), q(1)}));
        REQUIRE(red.kind == ReductionCase::downward_slope);
        REQUIRE_FALSE(red.pivot.has_value());
        REQUIRE(red.affine.base == 0);
        REQUIRE(red.affine.slope == 0);
        REQUIRE(red.steered_action == 0);
        REQUIRE(red.affine_payoff == 1);
        REQUIRE(red.contract_payoff == q(-1));
    }

    SECTION("middle payment above the extreme chord") {
        RobustConstruction red = affine_reduction(inst, pay({q(0), q(2), q(0)}));
        REQUIRE(red.kind == ReductionCase::pivot_above);
        REQUIRE(red.pivot == 1);
        REQUIRE(red.affine.base == 0);
        REQUIRE(red.affine.slope == 0);
        REQUIRE(red.steered_action == 0);
        // Steered action moves off the chord: point mass on the middle outcome.
        REQUIRE(red.distributions[0].high == 1);
        REQUIRE(red.distributions[0].high_weight == 1);
        REQUIRE(red.distributions[1].low_weight == q(1, 4));
        REQUIRE(red.distributions[1].high_weight == q(3, 4));
        REQUIRE(red.contract_payoff == q(-1));
        REQUIRE(red.affine_payoff == 1);
    }

    SECTION("pivot above with a sloped chord") {
        RobustConstruction red = affine_reduction(inst, pay({q(0), q(2), q(1)}));
        REQUIRE(red.kind == ReductionCase::pivot_above);
        REQUIRE(red.pivot == 1);
        REQUIRE(red.l1.intercept == 0);
        REQUIRE(red.l1.slope == q(1, 2));
        REQUIRE(red.l2.intercept == 0);
        REQUIRE(red.l2.slope == 2);
        REQUIRE(red.l3.intercept == 3);
        REQUIRE(red.l3.slope == q(-1));
        REQUIRE(red.affine.base == 0);
        REQUIRE(red.affine.slope == q(1, 2));
        REQUIRE(red.steered_action == 1);
        REQUIRE(red.contract_payoff == 0);
        REQUIRE(red.affine_payoff == q(3, 4));
    }

    SECTION("middle payment below the extreme chord") {
        RobustConstruction red = affine_reduction(inst, pay({q(0), q(0), q(2)}));
        REQUIRE(red.kind == ReductionCase::pivot_below);
        REQUIRE(red.pivot == 1);
        REQUIRE(red.affine.base == 0);
        REQUIRE(red.affine.slope == 1);
        REQUIRE(red.steered_action == 1);
        // Off-steered actions move off the chord in this case.
        REQUIRE(red.distributions[0].high == 1);
        REQUIRE(red.distributions[0].high_weight == 1);
        REQUIRE(red.distributions[1].low == 0);
        REQUIRE(red.distributions[1].high == 2);
        // Payoffs coincide exactly in the below case.
        REQUIRE(red.contract_payoff == 0);
        REQUIRE(red.affine_payoff == 0);
    }
}

TEST_CASE("contract sampling is deterministic and well formed") {
    AmbiguousInstance inst = running_example();

    std::vector<Contract> a = sample_contracts(inst, 70, 9);
    std::vector<Contract> b = sample_contracts(inst, 70, 9);
    REQUIRE(a.size() == 70);
    for (size_t i = 0; i < a.size(); ++i) REQUIRE(a[i].payments == b[i].payments);

    // Grid prefix in lexicographic order over {0, xm/4, xm/2, xm}.
    REQUIRE(a[0].payments == std::vector<Rational>{q(0), q(0), q(0)});
    REQUIRE(a[1].payments == std::vector<Rational>{q(0), q(0), q(1, 2)});
    REQUIRE(a[4].payments == std::vector<Rational>{q(0), q(1, 2), q(0)});
    REQUIRE(a[63].payments == std::vector<Rational>{q(2), q(2), q(2)});

    // Random tail stays within limited liability and twice the top outcome.
    for (size_t i = 64; i < 70; ++i)
        for (const auto& p : a[i].payments) {
            REQUIRE(p >= 0);
            REQUIRE(p <= 4);
        }

    std::vector<Contract> other_seed = sample_contracts(inst, 70, 10);
    bool tail_differs = false;
    for (size_t i = 64; i < 70; ++i)
        if (other_seed[i].payments != a[i].payments) tail_differs = true;
    REQUIRE(tail_differs);
}

TEST_CASE("robust guarantee holds on the running example") {
    AmbiguousInstance inst = running_example();
    RobustReport report = verify_robust_guarantee(inst, sample_contracts(inst, 80, 5));
    REQUIRE(report.rows.size() == 80);
    REQUIRE(report.failures == 0);
    REQUIRE(report.best_alpha == 0);
    REQUIRE(report.best_payoff == 1);
    for (const auto& row : report.rows) {
        REQUIRE(row.ok);
        REQUIRE(row.adversary_payoff <= report.best_payoff);
        REQUIRE(row.construction_payoff <= row.affine_payoff);
    }
}

TEST_CASE("robust guarantee holds on a single-action instance") {
    AmbiguousInstance solo =
        check_ambiguous({q(0), q(1), q(2)}, {AmbiguousAction{q(3, 2), q(0)}});
    RobustReport report = verify_robust_guarantee(solo, sample_contracts(solo, 30, 3));
    REQUIRE(report.failures == 0);
    REQUIRE(report.best_payoff == q(3, 2));
}

TEST_CASE("robust guarantee holds on random instances and contracts") {
    std::mt19937_64 gen(47);
    auto draw = [&](unsigned long k) { return static_cast<long>(gen() % k); };

    for (int trial = 0; trial < 30; ++trial) {
        size_t m = 3 + static_cast<size_t>(draw(2));
        std::vector<Rational> outcomes{q(0)};
        for (size_t j = 1; j < m; ++j)
            outcomes.push_back(outcomes.back() + q(1 + draw(4), 2));
        Rational xm = outcomes.back();

        size_t n = 1 + static_cast<size_t>(draw(3));
        std::vector<AmbiguousAction> actions;
        for (size_t i = 0; i < n; ++i) {
            Rational reward = xm * q(draw(9), 8);
            Rational cost = i == 0 ? q(0) : q(draw(7), 4);
            actions.push_back(AmbiguousAction{reward, cost});
        }
        AmbiguousInstance inst = check_ambiguous(outcomes, actions);

        std::vector<Contract> contracts = sample_contracts(inst, 10, 100 + trial);
        for (int extra = 0; extra < 6; ++extra) {
            Contract t;
            for (size_t j = 0; j < m; ++j) t.payments.push_back(xm * q(draw(11), 5));
            contracts.push_back(std::move(t));
        }

        RobustReport report = verify_robust_guarantee(inst, contracts);
        REQUIRE(report.failures == 0);
        REQUIRE(report.best_payoff >= 0);
    }
}
