#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "best_response.hpp"
#include "contract.hpp"
#include "error.hpp"
#include "instance.hpp"
#include "rational.hpp"

// The agent's response map to linear contracts.
//
// Under the contract that shares a fraction alpha of every outcome, action i
// hands the agent utility  alpha * R_i - c_i: a line in alpha.  The agent's
// pick as alpha runs over [0, 1] therefore follows the upper envelope of n
// lines, and the principal's share (1 - alpha) * R_i is piecewise linear
// along it.  This header computes that envelope exactly, with the agent's
// tie rule baked in (equal utility resolves toward the principal, which
// under a linear contract means the larger expected reward).

namespace pact {

struct EnvelopeSegment {
    size_t action = 0; ///< the agent's pick throughout the segment
    Rational lo, hi;   ///< [lo, hi), except the last segment which is closed
};

struct Envelope {
    std::vector<EnvelopeSegment> segments; ///< ordered, jointly covering [0, 1]
};

struct BestLinear {
    Rational alpha;      ///< least optimal share (ties resolve downward)
    size_t action = 0;   ///< what the agent plays there
    Rational payoff = 0; ///< the principal's (1 - alpha) * R at the optimum
};

/// Exact upper envelope of the agent's utility lines over alpha in [0, 1].
///
/// Requires an instance with no dominated actions (rewards distinct, costs
/// ordered the same way) and a zero-cost action, so that the agent always
/// participates and every tie is broken by the reward order.
inline Envelope compute_envelope(const Instance& inst) {
    if (!inst.flags.no_dominated_actions)
        throw AssumptionViolated("envelope needs distinct, cost-ordered rewards");
    if (!inst.flags.has_zero_cost_action)
        throw AssumptionViolated("envelope needs a zero-cost action");

    const size_t n = inst.num_actions();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return inst.expected_reward(a) < inst.expected_reward(b);
    });

    // Sweep lines by increasing slope; keep (action, first alpha where it
    // leads).  A newcomer overtakes the stack top at the intersection of
    // their lines; tops whose lead would start at or after that point never
    // lead at all and are popped.  Equal utility goes to the larger reward,
    // so the newcomer also owns the intersection point itself.
    std::vector<EnvelopeSegment> stack;
    for (size_t rank = 0; rank < n; ++rank) {
        size_t act = order[rank];
        Rational reward = inst.expected_reward(act);
        Rational start = 0;
        while (!stack.empty()) {
            const EnvelopeSegment& top = stack.back();
            Rational cross = (inst.actions[act].cost - inst.actions[top.action].cost) /
                             (reward - inst.expected_reward(top.action));
            if (cross <= top.lo) {
                stack.pop_back();
                continue;
            }
            start = cross;
            break;
        }
        if (start > 1) continue; // overtakes only beyond the admissible range
        stack.push_back(EnvelopeSegment{act, start, Rational(1)});
    }

    for (size_t k = 0; k + 1 < stack.size(); ++k) stack[k].hi = stack[k + 1].lo;
    Envelope env;
    env.segments = std::move(stack);
    return env;
}

inline std::vector<Rational> breakpoints(const Envelope& env) {
    std::vector<Rational> out;
    out.reserve(env.segments.size());
    for (const auto& seg : env.segments) out.push_back(seg.lo);
    return out;
}

/// The agent's pick at a given share, looked up on the envelope.
inline size_t implemented_action(const Envelope& env, const Rational& alpha) {
    if (alpha < 0 || alpha > 1) throw BadParams("share must lie in [0, 1]");
    for (size_t k = 0; k < env.segments.size(); ++k) {
        bool last = k + 1 == env.segments.size();
        if (alpha < env.segments[k].hi || (last && alpha <= env.segments[k].hi))
            return env.segments[k].action;
    }
    throw InternalError("envelope does not cover the requested share");
}

/// Best linear contract: the principal's share payoff is decreasing within
/// each envelope segment, so only segment starts compete.  Payoff ties go to
/// the smaller share.
inline BestLinear best_linear(const Instance& inst) {
    Envelope env = compute_envelope(inst);
    BestLinear best;
    bool first = true;
    for (const auto& seg : env.segments) {
        Rational payoff = (Rational(1) - seg.lo) * inst.expected_reward(seg.action);
        if (first || payoff > best.payoff) {
            best = BestLinear{seg.lo, seg.action, payoff};
            first = false;
        }
    }
    return best;
}

} // namespace pact
