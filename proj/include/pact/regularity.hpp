#pragma once

#include <optional>
#include <vector>

#include "error.hpp"
#include "instance.hpp"
#include "rational.hpp"

// Regularity conditions on instances.  None of these are required to solve
// an instance; they gate the closed-form shortcuts and feed audit reports.

namespace pact {

/// First-order stochastic dominance: every prefix of f carries at most as
/// much mass as the same prefix of g (f shifts weight upward relative to g).
inline bool fosd_dominates(const std::vector<Rational>& f, const std::vector<Rational>& g) {
    if (f.size() != g.size())
        throw DimensionMismatch("dominance needs equally sized distributions");
    Rational pf = 0, pg = 0;
    for (size_t j = 0; j + 1 < f.size(); ++j) {
        pf += f[j];
        pg += g[j];
        if (pf > pg) return false;
    }
    return true;
}

/// Monotone likelihood ratios: for every cheaper/costlier action pair, the
/// outcome-by-outcome ratio costlier/cheaper never decreases.  Positions
/// where both probabilities vanish carry no information and are skipped;
/// the remaining comparisons are done by cross-multiplication so zero and
/// infinite ratios need no special casing.
inline bool mlrp_check(const Instance& inst) {
    const size_t n = inst.num_actions();
    const size_t m = inst.num_outcomes();
    for (size_t low = 0; low < n; ++low) {
        for (size_t high = 0; high < n; ++high) {
            if (!(inst.actions[low].cost < inst.actions[high].cost)) continue;
            const auto& f = inst.actions[low].probs;
            const auto& g = inst.actions[high].probs;
            bool have_prev = false;
            size_t prev = 0;
            for (size_t j = 0; j < m; ++j) {
                if (f[j] == 0 && g[j] == 0) continue;
                if (have_prev && g[prev] * f[j] > g[j] * f[prev]) return false;
                have_prev = true;
                prev = j;
            }
        }
    }
    return true;
}

struct CdfpWitness {
    size_t lower = 0;  ///< the cheaper bracket action
    size_t upper = 0;  ///< the costlier bracket action
    Rational lambda;   ///< weight on the cheaper one in the cost-matched mix
};

struct CdfpResult {
    bool satisfied = true;
    std::optional<CdfpWitness> witness; ///< a violating mixture, when not
};

/// Convexity of the distribution technology at one action: every mixture of
/// a cheaper and a costlier action whose blended cost equals the action's
/// own must be weakly dominated by the action's distribution.  A violation
/// names an equal-cost mixture that beats the action somewhere.
inline CdfpResult cdfp_check(const Instance& inst, size_t action) {
    if (action >= inst.num_actions())
        throw PreconditionFailed("action index out of range");
    const size_t n = inst.num_actions();
    const size_t m = inst.num_outcomes();
    const Action& target = inst.actions[action];

    auto dominated_by_target = [&](size_t lo, size_t hi, const Rational& lambda) {
        Rational prefix_mix = 0, prefix_target = 0;
        for (size_t j = 0; j + 1 < m; ++j) {
            prefix_mix += lambda * inst.actions[lo].probs[j] +
                          (Rational(1) - lambda) * inst.actions[hi].probs[j];
            prefix_target += target.probs[j];
            if (prefix_target > prefix_mix) return false;
        }
        return true;
    };

    for (size_t lo = 0; lo < n; ++lo) {
        if (lo == action || inst.actions[lo].cost > target.cost) continue;
        for (size_t hi = 0; hi < n; ++hi) {
            if (hi == action || inst.actions[hi].cost < target.cost) continue;
            std::vector<Rational> lambdas;
            if (inst.actions[lo].cost == inst.actions[hi].cost) {
                lambdas = {Rational(0), Rational(1)};
            } else {
                lambdas = {(inst.actions[hi].cost - target.cost) /
                           (inst.actions[hi].cost - inst.actions[lo].cost)};
            }
            for (const auto& lambda : lambdas) {
                if (dominated_by_target(lo, hi, lambda)) continue;
                CdfpResult res;
                res.satisfied = false;
                res.witness = CdfpWitness{lo, hi, lambda};
                return res;
            }
        }
    }
    return CdfpResult{};
}

/// Instance-wide convexity: every action passes the check above.
inline bool cdfp_check(const Instance& inst) {
    for (size_t a = 0; a < inst.num_actions(); ++a)
        if (!cdfp_check(inst, a).satisfied) return false;
    return true;
}

} // namespace pact
