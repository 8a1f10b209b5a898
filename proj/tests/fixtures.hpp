#pragma once

// Hand-entered instances reused across the test suite. Values are written
// out longhand on purpose: the suite cross-checks the generators in
// pact/families.hpp against these independent statements.

#include "pact/instance.hpp"

namespace fixtures {

// Six outcomes, four actions whose distributions shift the same
// (3/8, 3/8, 1/4) weight pattern rightward as cost grows.
inline pact::Instance shifted_support() {
    using pact::Rational;
    std::vector<Rational> x = {1, Rational(11, 10), Rational(49, 10), 5,
                               Rational(51, 10), Rational(26, 5)};
    std::vector<pact::Action> acts = {
        {{Rational(3, 8), Rational(3, 8), Rational(1, 4), 0, 0, 0}, 0},
        {{0, Rational(3, 8), Rational(3, 8), Rational(1, 4), 0, 0}, 1},
        {{0, 0, Rational(3, 8), Rational(3, 8), Rational(1, 4), 0}, 2},
        {{0, 0, 0, Rational(3, 8), Rational(3, 8), Rational(1, 4)}, Rational(11, 5)},
    };
    return pact::build_instance(x, acts);
}

// Two outcomes, two actions: a free action that always yields the low
// outcome and a costly action that always yields the high one.
inline pact::Instance all_or_nothing() {
    using pact::Rational;
    return pact::build_instance({1, 3},
                                {{{1, 0}, 0}, {{0, 1}, Rational(4, 3)}});
}

// Three outcomes, two actions whose likelihood ratio is not monotone:
// (1/3)/(1/3), (1/6)/(1/3), (1/2)/(1/3) dips before it rises.
inline pact::Instance non_monotone_ratio() {
    using pact::Rational;
    return pact::build_instance(
        {0, 1, 2},
        {{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}, 0},
         {{Rational(1, 3), Rational(1, 6), Rational(1, 2)}, 1}});
}

// Middle action is exactly the even mixture of its neighbours but costs
// more than the mixed cost, so it cannot be implemented.
inline pact::Instance mixture_trap() {
    using pact::Rational;
    return pact::build_instance(
        {0, 1, 2},
        {{{Rational(1, 2), Rational(1, 2), 0}, 0},
         {{Rational(1, 4), Rational(1, 2), Rational(1, 4)}, Rational(3, 4)},
         {{0, Rational(1, 2), Rational(1, 2)}, 1}});
}

} // namespace fixtures
