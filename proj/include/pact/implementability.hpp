#pragma once

#include <optional>
#include <vector>

#include "best_response.hpp"
#include "contract.hpp"
#include "error.hpp"
#include "instance.hpp"
#include "linalg.hpp"
#include "lp.hpp"
#include "rational.hpp"

// Implementability of a single action: the least-expected-payment contract
// that makes the agent pick it, or a machine-checkable reason none exists.
//
// The feasibility system for action a (payments t_j >= 0):
//   - one incentive row per other action a':  (F_a - F_a') . t >= c_a - c_a'
//   - a participation row  F_a . t >= c_a  only when no zero-cost action
//     exists (otherwise participation is implied by the incentive rows);
//   - optionally the monotonicity ladder  t_j >= t_{j-1}.
// Minimizing F_a . t over that system yields the cheapest implementation.
//
// When the system is infeasible the LP's Farkas ray normalizes into a
// convex mixture of the other actions that costs strictly less than c_a and
// whose outcome distribution equals F_a (plain case) or first-order
// stochastically dominates it (monotone case).  Either way the mixture is a
// deviation the agent always weakly prefers, so no contract of the relevant
// class can implement a.  Certificates are re-verified by direct arithmetic
// before they are handed out.

namespace pact {

/// Witness that an action cannot be implemented: a strictly cheaper convex
/// mixture of the other actions whose outcome distribution matches the
/// action's (equality when any contract is allowed, first-order stochastic
/// dominance when only monotone contracts are).
struct NonImplementabilityCertificate {
    std::vector<Rational> weights; ///< per action; zero at the target; sums to 1
    Rational mixture_cost;         ///< strictly below the target action's cost
    bool monotone = false;         ///< true when the argument needs monotone payments
    std::vector<Rational> step_weights; ///< monotone only: multipliers on t_j >= t_{j-1}
};

struct MinPaymentResult {
    bool implementable = false;
    Contract contract;              ///< cheapest implementing contract
    Rational expected_payment = 0;  ///< its expected cost to the principal
    size_t replayed_choice = 0;     ///< the agent's actual pick under it
    std::optional<NonImplementabilityCertificate> certificate;
};

namespace detail {

inline void require_action_index(const Instance& inst, size_t action) {
    if (action >= inst.num_actions())
        throw PreconditionFailed("action index out of range");
}

inline LpProblem build_min_payment_lp(const Instance& inst, size_t action, bool monotone) {
    const size_t m = inst.num_outcomes();
    const size_t n = inst.num_actions();
    const Action& target = inst.actions[action];

    LpProblem lp;
    lp.objective = target.probs;
    for (size_t other = 0; other < n; ++other) {
        if (other == action) continue;
        LpRow row;
        row.sense = RowSense::ge;
        row.rhs = target.cost - inst.actions[other].cost;
        row.coeffs.resize(m);
        for (size_t j = 0; j < m; ++j)
            row.coeffs[j] = target.probs[j] - inst.actions[other].probs[j];
        lp.rows.push_back(std::move(row));
    }
    if (!inst.flags.has_zero_cost_action) {
        LpRow row;
        row.sense = RowSense::ge;
        row.rhs = target.cost;
        row.coeffs = target.probs;
        lp.rows.push_back(std::move(row));
    }
    if (monotone) {
        for (size_t j = 1; j < m; ++j) {
            LpRow row;
            row.sense = RowSense::ge;
            row.rhs = 0;
            row.coeffs.assign(m, Rational(0));
            row.coeffs[j] = 1;
            row.coeffs[j - 1] = -1;
            lp.rows.push_back(std::move(row));
        }
    }
    return lp;
}

/// Normalize a Farkas ray of the min-payment system into a blocking mixture
/// and replay it from scratch; throws InternalError if the replay fails.
inline NonImplementabilityCertificate
extract_certificate(const Instance& inst, size_t action, bool monotone,
                    const std::vector<Rational>& farkas) {
    const size_t m = inst.num_outcomes();
    const size_t n = inst.num_actions();
    ExactnessStats& stats = lp_stats();
    stats.certificates_emitted.fetch_add(1, std::memory_order_relaxed);

    auto fail = [&](const char* why) -> NonImplementabilityCertificate {
        stats.certificate_failures.fetch_add(1, std::memory_order_relaxed);
        throw InternalError(why);
    };

    size_t pos = 0;
    std::vector<Rational> raw(n, Rational(0));
    Rational total = 0;
    for (size_t other = 0; other < n; ++other) {
        if (other == action) continue;
        raw[other] = farkas[pos++];
        total += raw[other];
    }
    if (!inst.flags.has_zero_cost_action) {
        // A participation multiplier cannot appear in a valid ray: summing
        // the ray's column conditions over all outcomes forces it to zero.
        if (farkas[pos++] != 0) return fail("certificate: nonzero participation multiplier");
    }
    if (total <= 0) return fail("certificate: ray has no mass on the incentive rows");

    NonImplementabilityCertificate cert;
    cert.monotone = monotone;
    cert.weights.assign(n, Rational(0));
    for (size_t other = 0; other < n; ++other) cert.weights[other] = raw[other] / total;
    if (monotone) {
        cert.step_weights.reserve(m - 1);
        for (size_t j = 1; j < m; ++j) cert.step_weights.push_back(farkas[pos++] / total);
    }
    cert.mixture_cost = 0;
    for (size_t i = 0; i < n; ++i) cert.mixture_cost += cert.weights[i] * inst.actions[i].cost;

    // Replay against the raw instance data.
    const Action& target = inst.actions[action];
    Rational weight_sum = 0;
    for (size_t i = 0; i < n; ++i) {
        if (cert.weights[i] < 0) return fail("certificate: negative mixture weight");
        weight_sum += cert.weights[i];
    }
    if (cert.weights[action] != 0) return fail("certificate: mixture uses the target action");
    if (weight_sum != 1) return fail("certificate: mixture weights do not sum to one");
    if (cert.mixture_cost >= target.cost) return fail("certificate: mixture is not cheaper");
    for (const Rational& s : cert.step_weights)
        if (s < 0) return fail("certificate: negative ladder multiplier");

    std::vector<Rational> mixture(m, Rational(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j)
            mixture[j] += cert.weights[i] * inst.actions[i].probs[j];
    if (monotone) {
        Rational prefix_mix = 0, prefix_target = 0;
        for (size_t j = 0; j + 1 < m; ++j) {
            prefix_mix += mixture[j];
            prefix_target += target.probs[j];
            if (prefix_mix > prefix_target)
                return fail("certificate: mixture does not stochastically dominate");
        }
    } else {
        for (size_t j = 0; j < m; ++j)
            if (mixture[j] != target.probs[j])
                return fail("certificate: mixture distribution differs from the target");
    }

    stats.certificates_verified.fetch_add(1, std::memory_order_relaxed);
    return cert;
}

} // namespace detail

/// Cheapest contract implementing the given action, or a verified blocking
/// mixture when none exists.  With monotone = true the search is restricted
/// to contracts whose payments never decrease along the outcome order.
inline MinPaymentResult min_payment(const Instance& inst, size_t action,
                                    bool monotone = false) {
    detail::require_action_index(inst, action);
    LpSolution sol = solve_lp(detail::build_min_payment_lp(inst, action, monotone));
    if (sol.status == LpStatus::unbounded)
        throw InternalError("min-payment objective cannot be unbounded below");

    MinPaymentResult res;
    if (sol.status == LpStatus::infeasible) {
        res.implementable = false;
        res.certificate = detail::extract_certificate(inst, action, monotone, sol.farkas);
        return res;
    }

    res.implementable = true;
    res.contract = Contract{sol.x};
    res.expected_payment = sol.objective;
    if (monotone && !is_monotone(res.contract))
        throw InternalError("monotone min-payment produced decreasing payments");

    BestResponse br = agent_best_response(inst, res.contract);
    if (!br.choice) throw InternalError("min-payment contract drove the agent away");
    // The target is utility-optimal under its own min-payment contract, so
    // the replayed pick can differ only through a principal-favourable tie.
    if (br.agent_utility != res.expected_payment - inst.actions[action].cost)
        throw InternalError("min-payment contract does not make the target optimal");
    res.replayed_choice = *br.choice;
    return res;
}

/// Whether any limited-liability contract makes the agent pick this action.
inline bool is_implementable(const Instance& inst, size_t action) {
    detail::require_action_index(inst, action);
    LpSolution sol = solve_lp(detail::build_min_payment_lp(inst, action, false));
    return sol.status == LpStatus::optimal;
}

/// Slide a least-cost implementing contract to a vertex of its feasibility
/// polytope without changing its expected payment.  The result pays out on
/// few outcomes: at most one fewer than the number of actions when a
/// zero-cost action exists, at most that number otherwise.
///
/// Throws PreconditionFailed when the contract does not implement the
/// action, and NotOptimalInput when it implements it at more than the
/// least-payment optimum.
inline Contract sparsify_to_basic(const Instance& inst, size_t action,
                                  const Contract& input) {
    detail::require_action_index(inst, action);
    check_contract(inst, input);
    const size_t m = inst.num_outcomes();
    const size_t n = inst.num_actions();
    const Action& target = inst.actions[action];

    // Replay feasibility of the input before touching it.
    LpProblem lp = detail::build_min_payment_lp(inst, action, false);
    for (const auto& row : lp.rows) {
        Rational act = 0;
        for (size_t j = 0; j < m; ++j) act += row.coeffs[j] * input.payments[j];
        if (act < row.rhs)
            throw PreconditionFailed("contract does not implement the requested action");
    }
    MinPaymentResult best = min_payment(inst, action, false);
    if (!best.implementable)
        throw InternalError("feasible contract for an action the lp rejects");
    Rational pay = expected_payment(inst, action, input);
    if (pay > best.expected_payment)
        throw NotOptimalInput("contract pays more than the least-payment optimum");
    if (pay < best.expected_payment)
        throw InternalError("contract beats the verified lp optimum");

    std::vector<Rational> t = input.payments;
    // Outcomes no action ever produces contribute nothing to any expected
    // value; pin their payments to zero so every direction search below is
    // blocked in both orientations.
    for (size_t j = 0; j < m; ++j) {
        bool supported = false;
        for (size_t i = 0; i < n && !supported; ++i) supported = inst.actions[i].probs[j] != 0;
        if (!supported) t[j] = 0;
    }

    for (;;) {
        detail::Matrix tight;
        tight.push_back(target.probs); // hold the expected payment fixed
        for (size_t j = 0; j < m; ++j) {
            if (t[j] != 0) continue;
            std::vector<Rational> unit(m, Rational(0));
            unit[j] = 1;
            tight.push_back(std::move(unit));
        }
        for (const auto& row : lp.rows) {
            Rational act = 0;
            for (size_t j = 0; j < m; ++j) act += row.coeffs[j] * t[j];
            if (act == row.rhs) tight.push_back(row.coeffs);
        }

        auto dir = detail::null_vector(tight, m);
        if (!dir) break; // the tight system pins t: it is a vertex

        auto max_step = [&](const std::vector<Rational>& d) -> std::optional<Rational> {
            std::optional<Rational> step;
            auto tighten = [&](const Rational& slack, const Rational& rate) {
                if (rate >= 0) return;
                Rational bound = slack / -rate;
                if (!step || bound < *step) step = bound;
            };
            for (size_t j = 0; j < m; ++j) tighten(t[j], d[j]);
            for (const auto& row : lp.rows) {
                Rational act = 0, rate = 0;
                for (size_t j = 0; j < m; ++j) {
                    act += row.coeffs[j] * t[j];
                    rate += row.coeffs[j] * d[j];
                }
                if (act > row.rhs) tighten(act - row.rhs, rate);
            }
            return step;
        };

        std::vector<Rational> d = *dir;
        std::optional<Rational> step = max_step(d);
        if (!step) {
            for (auto& v : d) v = -v;
            step = max_step(d);
        }
        if (!step)
            throw InternalError("sparsify: unblocked direction in a pinned polytope");
        for (size_t j = 0; j < m; ++j) t[j] += *step * d[j];
    }

    Contract out{t};
    if (expected_payment(inst, action, out) != pay)
        throw InternalError("sparsify drifted off the optimal face");
    return out;
}

} // namespace pact
