#pragma once

#include <optional>

#include "contract.hpp"
#include "instance.hpp"

namespace pact {

/** The agent's reaction to a contract. `choice` is empty when the agent
 * opts out (every action has strictly negative expected utility); all
 * monetary fields are zero in that case.
 */
struct BestResponse {
    std::optional<size_t> choice;
    Rational agent_utility = 0;
    Rational expected_payment = 0;
    Rational principal_payoff = 0;
};

/** Deterministic best response: maximize expected utility; break utility
 * ties in the principal's favor (maximum expected reward minus payment);
 * break remaining ties toward the lowest action index.
 */
inline BestResponse agent_best_response(const Instance& inst, const Contract& t) {
    check_contract(inst, t);
    BestResponse best;
    bool found = false;
    Rational best_utility, best_payoff;
    for (size_t a = 0; a < inst.num_actions(); ++a) {
        Rational pay = expected_payment(inst, a, t);
        Rational utility = pay - inst.actions[a].cost;
        if (utility < 0) continue;
        Rational payoff = inst.expected_reward(a) - pay;
        if (!found || utility > best_utility ||
            (utility == best_utility && payoff > best_payoff)) {
            found = true;
            best_utility = utility;
            best_payoff = payoff;
            best.choice = a;
            best.agent_utility = utility;
            best.expected_payment = pay;
            best.principal_payoff = payoff;
        }
    }
    if (!found) return BestResponse{};
    return best;
}

} // namespace pact
