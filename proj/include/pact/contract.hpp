#pragma once

#include <vector>

#include "error.hpp"
#include "instance.hpp"
#include "rational.hpp"

namespace pact {

/** A limited-liability contract: one nonnegative payment per outcome.
 * Index j pays when outcome j is realized.
 */
struct Contract {
    std::vector<Rational> payments;
};

/// Throws unless the contract has one nonnegative payment per outcome.
inline void check_contract(const Instance& inst, const Contract& t) {
    if (t.payments.size() != inst.num_outcomes())
        throw DimensionMismatch("contract has " + std::to_string(t.payments.size()) +
                                " payments, instance has " +
                                std::to_string(inst.num_outcomes()) + " outcomes");
    for (const auto& p : t.payments)
        if (p < 0) throw MalformedContract("negative payment " + to_string(p));
}

/// Payments nondecreasing in the outcome index.
inline bool is_monotone(const Contract& t) {
    for (size_t j = 0; j + 1 < t.payments.size(); ++j)
        if (t.payments[j] > t.payments[j + 1]) return false;
    return true;
}

inline size_t positive_payment_count(const Contract& t) {
    size_t k = 0;
    for (const auto& p : t.payments)
        if (p > 0) ++k;
    return k;
}

inline Rational expected_payment(const Instance& inst, size_t action, const Contract& t) {
    const auto& probs = inst.actions[action].probs;
    Rational sum = 0;
    for (size_t j = 0; j < probs.size(); ++j) sum += probs[j] * t.payments[j];
    return sum;
}

/// Pays alpha * outcome_j; alpha must lie in [0, 1].
struct LinearContract {
    Rational alpha;

    Contract materialize(const Instance& inst) const {
        if (alpha < 0 || alpha > 1)
            throw MalformedContract("linear coefficient " + to_string(alpha) +
                                    " outside [0, 1]");
        Contract t;
        t.payments.reserve(inst.num_outcomes());
        for (const auto& x : inst.outcomes) t.payments.push_back(alpha * x);
        return t;
    }
};

/// Pays base + slope * outcome_j; both coefficients must be nonnegative.
struct AffineContract {
    Rational base;
    Rational slope;

    Contract materialize(const Instance& inst) const {
        if (base < 0 || slope < 0)
            throw MalformedContract("affine coefficients must be nonnegative");
        Contract t;
        t.payments.reserve(inst.num_outcomes());
        for (const auto& x : inst.outcomes) t.payments.push_back(base + slope * x);
        return t;
    }
};

} // namespace pact
