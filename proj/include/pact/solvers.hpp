#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "best_response.hpp"
#include "contract.hpp"
#include "envelope.hpp"
#include "error.hpp"
#include "implementability.hpp"
#include "instance.hpp"
#include "rational.hpp"
#include "regularity.hpp"

// Whole-instance solvers.  The unrestricted and monotone optima run one
// least-payment program per action and keep the payoff argmax; the simpler
// families (linear, debt-like, single-payment) search small exact candidate
// sets and score every candidate by replaying the agent.  Every winner is
// replayed before it is returned; a replay that disagrees with the claimed
// payoff is a bug and throws InternalError.

namespace pact {

struct SolveResult {
    size_t action = 0;         ///< the agent's replayed pick
    Contract contract;
    Rational expected_payment; ///< outlay under that pick
    Rational payoff;           ///< reward minus outlay
};

/// Best contract of the form "pay a fixed share of everything above a cut":
/// zero below outcome cut_index, alpha times the outcome from it upward.
struct DebtResult {
    size_t cut_index = 0; ///< first paying outcome (0 = fully linear)
    Rational alpha;       ///< share applied at and above the cut
    Contract contract;
    BestResponse response; ///< replayed agent (choice may be empty: opt-out)
};

/// Best contract paying on the top outcome only.
struct SinglePaymentSearch {
    Rational top_payment;
    Contract contract;
    BestResponse response;
};

/// Cheapest single payment implementing the costliest action (closed form).
struct TopActionSinglePayment {
    size_t action = 0; ///< the costliest action, the one being implemented
    Rational top_payment;
    Contract contract;
    Rational expected_payment;
};

namespace detail {

inline SolveResult best_by_lp(const Instance& inst, bool monotone) {
    std::optional<size_t> winner;
    Rational best_payoff;
    MinPaymentResult winner_lp;
    for (size_t a = 0; a < inst.num_actions(); ++a) {
        MinPaymentResult res = min_payment(inst, a, monotone);
        if (!res.implementable) continue;
        Rational payoff = inst.expected_reward(a) - res.expected_payment;
        if (!winner || payoff > best_payoff) {
            winner = a;
            best_payoff = payoff;
            winner_lp = std::move(res);
        }
    }
    if (!winner) throw NoImplementableAction("no action admits an implementing contract");

    Contract t = winner_lp.contract;
    // Unrestricted optima are slid to a vertex so they pay out on few
    // outcomes; sliding does not preserve monotonicity, so the monotone
    // winner is returned as solved.
    if (!monotone) t = sparsify_to_basic(inst, *winner, t);

    BestResponse br = agent_best_response(inst, t);
    if (!br.choice || br.principal_payoff != best_payoff)
        throw InternalError("replayed payoff deviates from the per-action argmax");
    return SolveResult{*br.choice, std::move(t), br.expected_payment, br.principal_payoff};
}

} // namespace detail

/// Payoff-maximal contract over all limited-liability contracts.
inline SolveResult optimal_contract(const Instance& inst) {
    return detail::best_by_lp(inst, false);
}

/// Payoff-maximal contract with payments nondecreasing in the outcome.
inline SolveResult best_monotone(const Instance& inst) {
    return detail::best_by_lp(inst, true);
}

/// Exhaustive exact search over cut/share contracts.  For a fixed cut the
/// payoff is piecewise linear and decreasing in the share wherever the
/// agent's pick is constant, so only region edges compete: share zero and
/// one, pairwise indifference points, and participation boundaries.  Ties
/// prefer the smaller cut, then the smaller share.
inline DebtResult best_debt(const Instance& inst) {
    const size_t m = inst.num_outcomes();
    const size_t n = inst.num_actions();

    std::optional<DebtResult> best;
    for (size_t cut = 0; cut < m; ++cut) {
        std::vector<Rational> effective(n, Rational(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = cut; j < m; ++j)
                effective[i] += inst.actions[i].probs[j] * inst.outcomes[j];

        std::vector<Rational> candidates{Rational(0), Rational(1)};
        for (size_t i = 0; i < n; ++i) {
            for (size_t k = i + 1; k < n; ++k) {
                if (effective[i] == effective[k]) continue;
                Rational cross = (inst.actions[k].cost - inst.actions[i].cost) /
                                 (effective[k] - effective[i]);
                if (cross >= 0 && cross <= 1) candidates.push_back(std::move(cross));
            }
            if (effective[i] > 0) {
                Rational walkaway = inst.actions[i].cost / effective[i];
                if (walkaway <= 1) candidates.push_back(std::move(walkaway));
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()),
                         candidates.end());

        for (const auto& alpha : candidates) {
            Contract t{std::vector<Rational>(m, Rational(0))};
            for (size_t j = cut; j < m; ++j) t.payments[j] = alpha * inst.outcomes[j];
            BestResponse br = agent_best_response(inst, t);
            if (!best || br.principal_payoff > best->response.principal_payoff)
                best = DebtResult{cut, alpha, std::move(t), std::move(br)};
        }
    }
    return *best;
}

/// Exhaustive exact search over single-payment contracts.  Each action
/// contributes the least top payment that makes it the agent's pick (when
/// one exists); scoring replays the agent, so candidates that implement a
/// different action through ties are still scored truthfully.
inline SinglePaymentSearch best_single_payment(const Instance& inst) {
    const size_t m = inst.num_outcomes();
    const size_t n = inst.num_actions();

    std::vector<Rational> candidates{Rational(0)};
    for (size_t a = 0; a < n; ++a) {
        const Action& act = inst.actions[a];
        Rational low = 0;
        std::optional<Rational> high;
        bool feasible = true;
        for (size_t other = 0; other < n && feasible; ++other) {
            if (other == a) continue;
            Rational d = act.probs[m - 1] - inst.actions[other].probs[m - 1];
            Rational gap = act.cost - inst.actions[other].cost;
            if (d == 0) {
                feasible = gap <= 0;
            } else if (d > 0) {
                low = std::max(low, Rational(gap / d));
            } else {
                Rational cap = gap / d;
                if (!high || cap < *high) high = std::move(cap);
            }
        }
        if (feasible && !inst.flags.has_zero_cost_action) {
            if (act.probs[m - 1] == 0)
                feasible = act.cost <= 0;
            else
                low = std::max(low, Rational(act.cost / act.probs[m - 1]));
        }
        if (feasible && (!high || low <= *high)) candidates.push_back(low);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::optional<SinglePaymentSearch> best;
    for (const auto& tau : candidates) {
        Contract t{std::vector<Rational>(m, Rational(0))};
        t.payments[m - 1] = tau;
        BestResponse br = agent_best_response(inst, t);
        if (!best || br.principal_payoff > best->response.principal_payoff)
            best = SinglePaymentSearch{tau, std::move(t), std::move(br)};
    }
    return *best;
}

/// Closed form for the cheapest single payment implementing the costliest
/// action.  Under monotone likelihood ratios the top outcome is the most
/// informative signal of that action, and paying there alone is as cheap as
/// any contract; the result is asserted against the least-payment program.
inline TopActionSinglePayment single_payment_contract(const Instance& inst) {
    if (!mlrp_check(inst))
        throw PreconditionFailed("needs monotone likelihood ratios");

    const size_t m = inst.num_outcomes();
    const size_t n = inst.num_actions();
    size_t top = 0;
    for (size_t a = 1; a < n; ++a)
        if (inst.actions[a].cost > inst.actions[top].cost) top = a;
    for (size_t a = 0; a < n; ++a)
        if (a != top && inst.actions[a].cost == inst.actions[top].cost)
            throw PreconditionFailed("needs a unique costliest action");
    const Action& target = inst.actions[top];
    if (n > 1 && target.probs[m - 1] == 0)
        throw PreconditionFailed("costliest action never reaches the top outcome");

    MinPaymentResult lp = min_payment(inst, top, false);
    if (!lp.implementable)
        throw NotImplementable("costliest action is blocked by a cheaper mixture");

    Rational tau = 0;
    for (size_t a = 0; a < n; ++a) {
        if (a == top) continue;
        Rational d = target.probs[m - 1] - inst.actions[a].probs[m - 1];
        if (d <= 0)
            throw InternalError("likelihood order failed to separate the top outcome");
        tau = std::max(tau, Rational((target.cost - inst.actions[a].cost) / d));
    }
    if (!inst.flags.has_zero_cost_action) {
        if (target.probs[m - 1] == 0) {
            if (target.cost > 0)
                throw PreconditionFailed("costliest action never reaches the top outcome");
        } else {
            tau = std::max(tau, Rational(target.cost / target.probs[m - 1]));
        }
    }

    Contract t{std::vector<Rational>(m, Rational(0))};
    t.payments[m - 1] = tau;
    Rational outlay = target.probs[m - 1] * tau;
    if (outlay != lp.expected_payment)
        throw InternalError("closed-form single payment deviates from the lp optimum");
    BestResponse br = agent_best_response(inst, t);
    if (!br.choice || br.agent_utility != outlay - target.cost)
        throw InternalError("closed-form single payment does not implement the target");
    return TopActionSinglePayment{top, tau, std::move(t), std::move(outlay)};
}

/// Closed form for two actions, the first free: either pay nothing, or pay
/// only on the outcome with the largest likelihood ratio between the two.
inline SolveResult two_action_optimal(const Instance& inst) {
    if (inst.num_actions() != 2)
        throw PreconditionFailed("needs exactly two actions");
    if (inst.actions[0].cost != 0)
        throw PreconditionFailed("first action must cost nothing");

    const size_t m = inst.num_outcomes();
    const auto& lazy = inst.actions[0].probs;
    const auto& keen = inst.actions[1].probs;

    Contract zero{std::vector<Rational>(m, Rational(0))};
    BestResponse base = agent_best_response(inst, zero);
    if (!base.choice) throw InternalError("agent rejected the free action");
    SolveResult best{*base.choice, zero, base.expected_payment, base.principal_payoff};

    // Largest keen/lazy ratio by cross-multiplication (zero and infinite
    // ratios included); lowest index wins ties.
    std::optional<size_t> pick;
    for (size_t j = 0; j < m; ++j) {
        if (lazy[j] == 0 && keen[j] == 0) continue;
        if (!pick || keen[j] * lazy[*pick] > keen[*pick] * lazy[j]) pick = j;
    }
    if (pick && keen[*pick] > lazy[*pick]) {
        Contract t{std::vector<Rational>(m, Rational(0))};
        t.payments[*pick] = inst.actions[1].cost / (keen[*pick] - lazy[*pick]);
        BestResponse br = agent_best_response(inst, t);
        if (br.choice && br.principal_payoff > best.payoff)
            best = SolveResult{*br.choice, std::move(t), br.expected_payment,
                               br.principal_payoff};
    }
    return best;
}

} // namespace pact
