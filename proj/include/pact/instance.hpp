#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace pact {

/// One action available to the agent: an outcome distribution plus its cost.
struct Action {
    std::vector<Rational> probs;
    Rational cost;
};

/** Structural properties computed once at build time. Operations that rely
 * on one of these check the flag and throw AssumptionViolated when absent.
 */
struct AssumptionFlags {
    /// Expected rewards pairwise distinct and ordered like the costs
    /// (no action is made redundant by a cheaper one).
    bool no_dominated_actions = false;
    /// Exactly one action attains the maximum welfare.
    bool unique_welfare_maximizer = false;
    /// Some action costs nothing (so participation is never an issue).
    bool has_zero_cost_action = false;
    /// The smallest outcome is zero.
    bool first_outcome_zero = false;
};

/** A principal-agent instance: nondecreasing nonnegative outcomes and a
 * finite action set. Build through build_instance(), which canonicalizes
 * the outcome order and computes the assumption flags.
 *
 * Outcomes that no action can reach are tolerated: they constrain nothing
 * and payments on them are conventionally zero.
 */
struct Instance {
    std::vector<Rational> outcomes;
    std::vector<Action> actions;
    AssumptionFlags flags{};
    std::map<std::string, std::string> metadata;

    size_t num_outcomes() const { return outcomes.size(); }
    size_t num_actions() const { return actions.size(); }

    Rational expected_reward(size_t a) const {
        const auto& p = actions[a].probs;
        Rational r = 0;
        for (size_t j = 0; j < p.size(); ++j) r += p[j] * outcomes[j];
        return r;
    }

    Rational welfare(size_t a) const { return expected_reward(a) - actions[a].cost; }
};

namespace detail {

inline AssumptionFlags compute_flags(const Instance& inst) {
    AssumptionFlags f;
    size_t n = inst.num_actions();

    std::vector<Rational> rewards(n);
    for (size_t a = 0; a < n; ++a) rewards[a] = inst.expected_reward(a);

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return rewards[a] < rewards[b]; });

    f.no_dominated_actions = true;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t a = order[k], b = order[k + 1];
        if (rewards[a] == rewards[b] || inst.actions[a].cost >= inst.actions[b].cost) {
            f.no_dominated_actions = false;
            break;
        }
    }

    Rational best_welfare;
    size_t ties = 0;
    for (size_t a = 0; a < n; ++a) {
        Rational w = rewards[a] - inst.actions[a].cost;
        if (ties == 0 || w > best_welfare) {
            best_welfare = w;
            ties = 1;
        } else if (w == best_welfare) {
            ++ties;
        }
    }
    f.unique_welfare_maximizer = (ties == 1);

    for (const auto& act : inst.actions)
        if (act.cost == 0) { f.has_zero_cost_action = true; break; }

    f.first_outcome_zero = !inst.outcomes.empty() && inst.outcomes.front() == 0;
    return f;
}

} // namespace detail

/** Validate and canonicalize raw instance data.
 *
 * Checks: nonempty outcome and action lists, matching probability vector
 * lengths, nonnegative probabilities summing to one, nonnegative costs,
 * nonnegative outcomes. Outcomes are sorted ascending with every action's
 * probability entries carried along, so indices are comparable across the
 * whole library.
 */
inline Instance build_instance(std::vector<Rational> outcomes,
                               std::vector<Action> actions,
                               std::map<std::string, std::string> metadata = {}) {
    if (outcomes.empty()) throw MalformedInstance("no outcomes");
    if (actions.empty()) throw MalformedInstance("no actions");
    for (const auto& x : outcomes)
        if (x < 0) throw MalformedInstance("negative outcome " + to_string(x));

    size_t m = outcomes.size();
    for (size_t a = 0; a < actions.size(); ++a) {
        const auto& act = actions[a];
        if (act.probs.size() != m)
            throw MalformedInstance("action " + std::to_string(a + 1) + " has " +
                                    std::to_string(act.probs.size()) + " probabilities, expected " +
                                    std::to_string(m));
        if (act.cost < 0)
            throw MalformedInstance("action " + std::to_string(a + 1) + " has negative cost");
        Rational sum = 0;
        for (const auto& p : act.probs) {
            if (p < 0)
                throw MalformedInstance("action " + std::to_string(a + 1) +
                                        " has a negative probability");
            sum += p;
        }
        if (sum != 1)
            throw MalformedInstance("action " + std::to_string(a + 1) +
                                    " probabilities sum to " + to_string(sum));
    }

    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t i, size_t j) { return outcomes[i] < outcomes[j]; });

    Instance inst;
    inst.outcomes.reserve(m);
    for (size_t j = 0; j < m; ++j) inst.outcomes.push_back(outcomes[order[j]]);
    inst.actions.reserve(actions.size());
    for (auto& act : actions) {
        Action sorted;
        sorted.cost = act.cost;
        sorted.probs.reserve(m);
        for (size_t j = 0; j < m; ++j) sorted.probs.push_back(act.probs[order[j]]);
        inst.actions.push_back(std::move(sorted));
    }
    inst.metadata = std::move(metadata);
    inst.flags = detail::compute_flags(inst);
    return inst;
}

} // namespace pact
