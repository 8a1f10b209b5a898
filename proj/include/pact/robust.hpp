#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "contract.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace pact {

/** An action known only through its expected outcome and its cost; the
 * distribution behind the expectation is adversarially chosen from all
 * distributions over the outcome grid with that expectation.
 */
struct AmbiguousAction {
    Rational reward;
    Rational cost;
};

struct AmbiguousInstance {
    std::vector<Rational> outcomes;
    std::vector<AmbiguousAction> actions;

    size_t num_outcomes() const { return outcomes.size(); }
    size_t num_actions() const { return actions.size(); }
    Rational max_outcome() const { return outcomes.back(); }
};

/** Validate raw ambiguous data. Requirements: at least three outcomes
 * starting at zero and strictly increasing; every expected reward inside
 * [0, max outcome] so that compatible distributions exist; nonnegative
 * costs with at least one free action, so the agent never walks away from
 * a limited-liability contract and worst cases stay well defined.
 */
inline AmbiguousInstance check_ambiguous(std::vector<Rational> outcomes,
                                         std::vector<AmbiguousAction> actions) {
    if (outcomes.size() < 3)
        throw NotAmbiguous("ambiguity needs at least 3 outcomes, got " +
                           std::to_string(outcomes.size()));
    if (outcomes.front() != 0)
        throw NotAmbiguous("first outcome must be 0, got " + to_string(outcomes.front()));
    for (size_t j = 0; j + 1 < outcomes.size(); ++j)
        if (outcomes[j] >= outcomes[j + 1])
            throw NotAmbiguous("outcomes must be strictly increasing");
    if (actions.empty()) throw NotAmbiguous("at least one action required");
    bool has_free = false;
    for (const auto& a : actions) {
        if (a.reward < 0 || a.reward > outcomes.back())
            throw NotAmbiguous("expected reward " + to_string(a.reward) +
                               " outside [0, " + to_string(outcomes.back()) +
                               "]: no compatible distribution exists");
        if (a.cost < 0) throw NotAmbiguous("negative cost " + to_string(a.cost));
        if (a.cost == 0) has_free = true;
    }
    if (!has_free) throw NotAmbiguous("at least one zero-cost action required");
    return AmbiguousInstance{std::move(outcomes), std::move(actions)};
}

/** Agent response when every action's expected payment is already pinned
 * down by the data: utility u_i = payment_i - c_i, opting out when all
 * utilities are negative, ties broken for the principal then by index.
 */
struct AmbiguousResponse {
    std::optional<size_t> choice;
    Rational expected_payment;
    Rational payoff;
};

namespace detail {

/// Best response given one fixed expected payment per action.
inline AmbiguousResponse ambiguous_response(const AmbiguousInstance& inst,
                                            const std::vector<Rational>& payments) {
    AmbiguousResponse best;
    best.payoff = 0;
    for (size_t i = 0; i < inst.num_actions(); ++i) {
        Rational utility = payments[i] - inst.actions[i].cost;
        if (utility < 0) continue;
        Rational payoff = inst.actions[i].reward - payments[i];
        if (!best.choice) {
            best = {i, payments[i], payoff};
            continue;
        }
        Rational best_utility = best.expected_payment - inst.actions[*best.choice].cost;
        if (utility > best_utility ||
            (utility == best_utility && payoff > best.payoff))
            best = {i, payments[i], payoff};
    }
    return best;
}

/// Response to an affine scheme base + slope * outcome; the expected payment
/// for action i is base + slope * R_i under every compatible distribution.
inline AmbiguousResponse ambiguous_affine_response(const AmbiguousInstance& inst,
                                                   const Rational& base,
                                                   const Rational& slope) {
    std::vector<Rational> payments;
    payments.reserve(inst.num_actions());
    for (const auto& a : inst.actions) payments.push_back(base + slope * a.reward);
    return ambiguous_response(inst, payments);
}

} // namespace detail

struct LinearWorstCase {
    Rational alpha;
    size_t action;
    Rational payoff;
};

/** Best linear contract computed from rewards and costs alone. A linear
 * contract pays alpha * outcome, so its expected payment for action i is
 * alpha * R_i under every compatible distribution: its worst-case payoff
 * equals its fixed payoff (1 - alpha) * R. The payoff is piecewise linear
 * and decreasing between agent switch points, so it suffices to score the
 * pairwise-indifference and participation crossings plus the endpoints.
 */
inline LinearWorstCase linear_worst_case(const AmbiguousInstance& inst) {
    std::vector<Rational> candidates{Rational(0), Rational(1)};
    const auto& acts = inst.actions;
    for (size_t i = 0; i < acts.size(); ++i) {
        if (acts[i].reward > 0) candidates.push_back(acts[i].cost / acts[i].reward);
        for (size_t k = i + 1; k < acts.size(); ++k)
            if (acts[i].reward != acts[k].reward)
                candidates.push_back((acts[i].cost - acts[k].cost) /
                                     (acts[i].reward - acts[k].reward));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::optional<LinearWorstCase> best;
    for (const auto& alpha : candidates) {
        if (alpha < 0 || alpha > 1) continue;
        AmbiguousResponse r = detail::ambiguous_affine_response(inst, Rational(0), alpha);
        if (!r.choice)
            throw InternalError("agent walked away despite a zero-cost action");
        if (!best || r.payoff > best->payoff) best = {alpha, *r.choice, r.payoff};
    }
    return *best;
}

/** A distribution supported on at most two outcome grid points. */
struct TwoPointDistribution {
    size_t low = 0;
    size_t high = 0;
    Rational low_weight;
    Rational high_weight;

    Rational expectation(const std::vector<Rational>& outcomes) const {
        return low_weight * outcomes[low] + high_weight * outcomes[high];
    }
    Rational expected_payment(const Contract& t) const {
        return low_weight * t.payments[low] + high_weight * t.payments[high];
    }
};

namespace detail {

inline void check_ambiguous_contract(const AmbiguousInstance& inst, const Contract& t) {
    if (t.payments.size() != inst.num_outcomes())
        throw DimensionMismatch("contract has " + std::to_string(t.payments.size()) +
                                " payments, instance has " +
                                std::to_string(inst.num_outcomes()) + " outcomes");
    for (const auto& p : t.payments)
        if (p < 0) throw MalformedContract("negative payment " + to_string(p));
}

/// The two-point distribution on outcome indices (low, high) with the
/// given expectation; requires x_low <= target <= x_high, x_low < x_high.
inline TwoPointDistribution bracket(const std::vector<Rational>& outcomes, size_t low,
                                    size_t high, const Rational& target) {
    TwoPointDistribution d;
    d.low = low;
    d.high = high;
    d.high_weight = (target - outcomes[low]) / (outcomes[high] - outcomes[low]);
    d.low_weight = 1 - d.high_weight;
    return d;
}

/// Distribution on the extreme outcomes {x_1, x_m} with expectation R_i.
inline TwoPointDistribution extreme_distribution(const AmbiguousInstance& inst, size_t i) {
    return bracket(inst.outcomes, 0, inst.num_outcomes() - 1, inst.actions[i].reward);
}

/// Agent response to contract t when action i induces distributions[i].
inline AmbiguousResponse respond_under(const AmbiguousInstance& inst, const Contract& t,
                                       const std::vector<TwoPointDistribution>& dists) {
    std::vector<Rational> payments;
    payments.reserve(inst.num_actions());
    for (const auto& d : dists) payments.push_back(d.expected_payment(t));
    return ambiguous_response(inst, payments);
}

} // namespace detail

/** The adversary's pick: one compatible two-point distribution per action,
 * minimizing the principal's payoff after the agent best-responds.
 */
struct AdversaryOutcome {
    Rational payoff;
    std::vector<TwoPointDistribution> distributions;
    size_t induced_choice;
};

/** Exhaustive worst case over per-action two-point distributions whose
 * support brackets the action's expected reward. This family contains the
 * distributions used by affine_reduction, so its minimum is a faithful
 * (upper-bound) stand-in for the true infimum worst case and suffices to
 * exercise the robust-optimality guarantee. The combination count is capped;
 * the default accommodates five actions over six outcomes.
 */
inline AdversaryOutcome two_point_adversary(const AmbiguousInstance& inst, const Contract& t,
                                            uint64_t combination_cap = 1000000) {
    detail::check_ambiguous_contract(inst, t);
    const size_t n = inst.num_actions();
    const size_t m = inst.num_outcomes();

    // Candidate menu per action, with the payment and payoff each entry induces.
    struct Entry {
        TwoPointDistribution dist;
        Rational payment;
        Rational utility;
        Rational payoff;
    };
    std::vector<std::vector<Entry>> menus(n);
    uint64_t combinations = 1;
    for (size_t i = 0; i < n; ++i) {
        const Rational& reward = inst.actions[i].reward;
        for (size_t lo = 0; lo < m; ++lo)
            for (size_t hi = lo + 1; hi < m; ++hi) {
                if (inst.outcomes[lo] > reward || inst.outcomes[hi] < reward) continue;
                Entry e;
                e.dist = detail::bracket(inst.outcomes, lo, hi, reward);
                e.payment = e.dist.expected_payment(t);
                e.utility = e.payment - inst.actions[i].cost;
                e.payoff = reward - e.payment;
                menus[i].push_back(std::move(e));
            }
        if (menus[i].empty())
            throw InternalError("no bracketing outcome pair for reward " + to_string(reward));
        if (combinations > combination_cap / menus[i].size())
            throw SizeLimitExceeded("two-point assignment count exceeds cap " +
                                    std::to_string(combination_cap));
        combinations *= menus[i].size();
    }

    std::optional<AdversaryOutcome> worst;
    std::vector<size_t> pick(n, 0);
    while (true) {
        // Agent best response for this assignment.
        std::optional<size_t> choice;
        for (size_t i = 0; i < n; ++i) {
            const Entry& e = menus[i][pick[i]];
            if (e.utility < 0) continue;
            if (!choice) {
                choice = i;
                continue;
            }
            const Entry& b = menus[*choice][pick[*choice]];
            if (e.utility > b.utility || (e.utility == b.utility && e.payoff > b.payoff))
                choice = i;
        }
        Rational payoff = choice ? menus[*choice][pick[*choice]].payoff : Rational(0);
        if (!choice)
            throw InternalError("agent walked away despite a zero-cost action");
        if (!worst || payoff < worst->payoff) {
            worst = AdversaryOutcome{payoff, {}, *choice};
            worst->distributions.reserve(n);
            for (size_t i = 0; i < n; ++i) worst->distributions.push_back(menus[i][pick[i]].dist);
        }
        // Advance the odometer (last action fastest).
        bool rolled_over = true;
        for (size_t pos = n; pos-- > 0;) {
            if (++pick[pos] < menus[pos].size()) {
                rolled_over = false;
                break;
            }
            pick[pos] = 0;
        }
        if (rolled_over) break;
    }

    // Replay the witness: expectations must match the rewards exactly and the
    // payments must equal the chord values at the rewards.
    for (size_t i = 0; i < n; ++i) {
        const TwoPointDistribution& d = worst->distributions[i];
        if (d.low_weight < 0 || d.high_weight < 0 || d.low_weight + d.high_weight != 1)
            throw InternalError("adversary emitted an invalid distribution");
        if (d.expectation(inst.outcomes) != inst.actions[i].reward)
            throw InternalError("adversary distribution misses its expectation");
    }
    return *worst;
}

enum class ReductionCase { downward_slope, affine_input, pivot_above, pivot_below };

struct LineCoeffs {
    Rational intercept;
    Rational slope;

    Rational at(const Rational& x) const { return intercept + slope * x; }
};

/** Constructive reduction of an arbitrary contract to an affine one it
 * cannot beat: compatible distributions under which the affine contract's
 * payoff weakly dominates the input contract's.
 */
struct RobustConstruction {
    ReductionCase kind;
    std::optional<size_t> pivot; ///< outcome index, set for the pivot cases
    LineCoeffs l1;               ///< chord through the extreme payments
    LineCoeffs l2;               ///< chord from the first payment to the pivot
    LineCoeffs l3;               ///< chord from the pivot to the last payment
    AffineContract affine;
    std::vector<TwoPointDistribution> distributions;
    size_t steered_action;   ///< action the affine contract incentivizes
    Rational contract_payoff; ///< input contract's payoff under `distributions`
    Rational affine_payoff;   ///< affine contract's payoff (distribution-free)
};

/** Build the dominating affine contract for `t`.
 *
 * Case analysis on the payments: decreasing end-to-end hands the agent a
 * schedule worth less for higher rewards, and the zero contract already
 * beats it; affine input maps to itself; otherwise some interior outcome
 * sits off the extreme chord l1, and mixing chord-supported two-point
 * distributions steers the agent under t to the action the l1-affine
 * contract incentivizes, at a payment at least as high. The dominance
 * inequality is replayed exactly before returning.
 */
inline RobustConstruction affine_reduction(const AmbiguousInstance& inst, const Contract& t) {
    detail::check_ambiguous_contract(inst, t);
    const size_t n = inst.num_actions();
    const size_t m = inst.num_outcomes();
    const Rational& t1 = t.payments.front();
    const Rational& tm = t.payments.back();

    RobustConstruction out;
    out.l1 = LineCoeffs{t1, (tm - t1) / inst.outcomes.back()};

    auto finish = [&](ReductionCase kind) {
        out.kind = kind;
        AmbiguousResponse affine_r =
            detail::ambiguous_affine_response(inst, out.affine.base, out.affine.slope);
        if (!affine_r.choice)
            throw InternalError("agent walked away despite a zero-cost action");
        out.steered_action = *affine_r.choice;
        out.affine_payoff = affine_r.payoff;
    };

    if (t1 > tm) {
        // Payments fall with the outcome, so on extreme-supported
        // distributions higher reward means lower pay; paying nothing
        // steers the agent to the best free action instead.
        out.affine = AffineContract{Rational(0), Rational(0)};
        out.l2 = out.l3 = out.l1;
        out.distributions.reserve(n);
        for (size_t i = 0; i < n; ++i)
            out.distributions.push_back(detail::extreme_distribution(inst, i));
        finish(ReductionCase::downward_slope);
    } else {
        // Locate the interior payment farthest off the extreme chord.
        std::optional<size_t> pivot;
        Rational best_gap;
        for (size_t j = 1; j + 1 < m; ++j) {
            Rational gap = t.payments[j] - out.l1.at(inst.outcomes[j]);
            Rational size = gap < 0 ? Rational(-gap) : gap;
            if (size > 0 && (!pivot || size > best_gap)) {
                pivot = j;
                best_gap = size;
            }
        }

        if (!pivot) {
            // Every payment sits on the chord: t is already affine, with
            // nonnegative coefficients since t1 >= 0 and tm >= t1.
            out.affine = AffineContract{out.l1.intercept, out.l1.slope};
            out.l2 = out.l3 = out.l1;
            out.distributions.reserve(n);
            for (size_t i = 0; i < n; ++i)
                out.distributions.push_back(detail::extreme_distribution(inst, i));
            finish(ReductionCase::affine_input);
        } else {
            const size_t j = *pivot;
            const Rational& xj = inst.outcomes[j];
            const Rational& tj = t.payments[j];
            out.pivot = j;
            out.affine = AffineContract{out.l1.intercept, out.l1.slope};
            out.l2 = LineCoeffs{t1, (tj - t1) / xj};
            Rational slope3 = (tm - tj) / (inst.outcomes.back() - xj);
            out.l3 = LineCoeffs{tj - slope3 * xj, slope3};
            bool above = tj > out.l1.at(xj);

            // Off-chord distribution: supported on {x_1, x_j} when the
            // reward fits below the pivot, on {x_j, x_m} otherwise.
            auto off_chord = [&](size_t i) {
                const Rational& reward = inst.actions[i].reward;
                return reward <= xj ? detail::bracket(inst.outcomes, 0, j, reward)
                                    : detail::bracket(inst.outcomes, j, m - 1, reward);
            };

            finish(above ? ReductionCase::pivot_above : ReductionCase::pivot_below);
            out.distributions.reserve(n);
            for (size_t i = 0; i < n; ++i) {
                bool use_off_chord = above == (i == out.steered_action);
                out.distributions.push_back(use_off_chord
                                                ? off_chord(i)
                                                : detail::extreme_distribution(inst, i));
            }
        }
    }

    for (size_t i = 0; i < n; ++i)
        if (out.distributions[i].expectation(inst.outcomes) != inst.actions[i].reward)
            throw InternalError("constructed distribution misses its expectation");

    AmbiguousResponse contract_r = detail::respond_under(inst, t, out.distributions);
    out.contract_payoff = contract_r.payoff;
    if (out.affine_payoff < out.contract_payoff)
        throw InternalError("affine reduction failed to dominate the input contract");
    return out;
}

/** One audited contract: the adversary's payoff, the constructed dominating
 * route, and the linear payoff that caps the route from above.
 */
struct RobustCheckRow {
    Contract contract;
    Rational adversary_payoff;
    Rational construction_payoff;
    Rational affine_payoff;
    Rational linear_payoff;
    bool ok = false;
};

struct RobustReport {
    Rational best_alpha;
    Rational best_payoff;
    size_t best_action = 0;
    std::vector<RobustCheckRow> rows;
    size_t failures = 0;
};

/** Check the robust-optimality guarantee on a batch of contracts: the best
 * linear contract's worst-case payoff must weakly dominate both the
 * two-point adversary's payoff and the affine-construction route for every
 * sampled contract. Internal identities (affine-versus-linear shift by the
 * base payment, coincident steered action, adversary below the constructed
 * distributions) are replayed exactly and fail hard.
 */
inline RobustReport verify_robust_guarantee(const AmbiguousInstance& inst,
                                            const std::vector<Contract>& contracts,
                                            uint64_t combination_cap = 1000000) {
    LinearWorstCase lwc = linear_worst_case(inst);
    RobustReport report;
    report.best_alpha = lwc.alpha;
    report.best_payoff = lwc.payoff;
    report.best_action = lwc.action;
    report.rows.reserve(contracts.size());

    for (const Contract& t : contracts) {
        AdversaryOutcome adv = two_point_adversary(inst, t, combination_cap);
        RobustConstruction red = affine_reduction(inst, t);

        // A raised linear contract implements the same action as the affine
        // contract and earns exactly the base payment less.
        AmbiguousResponse lin =
            detail::ambiguous_affine_response(inst, Rational(0), red.affine.slope);
        if (!lin.choice || *lin.choice != red.steered_action ||
            lin.payoff != red.affine_payoff + red.affine.base)
            throw InternalError("linear contract fails to track the affine construction");
        // The construction's distributions are available to the adversary.
        if (adv.payoff > red.contract_payoff)
            throw InternalError("adversary exceeded the constructed distributions' payoff");

        RobustCheckRow row;
        row.contract = t;
        row.adversary_payoff = adv.payoff;
        row.construction_payoff = red.contract_payoff;
        row.affine_payoff = red.affine_payoff;
        row.linear_payoff = lin.payoff;
        row.ok = lwc.payoff >= adv.payoff && lwc.payoff >= red.affine_payoff;
        if (!row.ok) ++report.failures;
        report.rows.push_back(std::move(row));
    }
    return report;
}

/** Deterministic contract sample: the lexicographic grid over payments in
 * {0, xm/4, xm/2, xm} first, then seeded random payments k*xm/d for
 * denominators d <= 12 and values up to 2*xm.
 */
inline std::vector<Contract> sample_contracts(const AmbiguousInstance& inst, size_t count,
                                              uint64_t seed) {
    const size_t m = inst.num_outcomes();
    const Rational& xm = inst.outcomes.back();
    const std::vector<Rational> levels{Rational(0), xm / 4, xm / 2, xm};

    std::vector<Contract> out;
    out.reserve(count);
    std::vector<size_t> digit(m, 0);
    while (out.size() < count) {
        Contract t;
        t.payments.reserve(m);
        for (size_t j = 0; j < m; ++j) t.payments.push_back(levels[digit[j]]);
        out.push_back(std::move(t));
        bool rolled_over = true;
        for (size_t pos = m; pos-- > 0;) {
            if (++digit[pos] < levels.size()) {
                rolled_over = false;
                break;
            }
            digit[pos] = 0;
        }
        if (rolled_over) break; // grid exhausted
    }

    std::mt19937_64 gen(seed);
    while (out.size() < count) {
        Contract t;
        t.payments.reserve(m);
        for (size_t j = 0; j < m; ++j) {
            uint64_t den = 1 + gen() % 12;
            uint64_t num = gen() % (2 * den + 1);
            t.payments.push_back(Rational(static_cast<long>(num), static_cast<long>(den)) * xm);
        }
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace pact
