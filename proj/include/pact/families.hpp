#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pact/error.hpp"
#include "pact/instance.hpp"
#include "pact/rational.hpp"

/* Parameterized instance generators: adversarial ladder families whose
 * linear-contract gap grows with the number of actions, a small catalog of
 * hand-built examples, and a seeded random family that satisfies the
 * regularity assumptions by construction. Every generator routes through
 * build_instance so the returned instance carries validated data and
 * freshly computed assumption flags.
 */

namespace pact {

namespace detail {

inline void check_ladder_shape(std::size_t n, const Rational& eps) {
    if (n < 1) throw BadParams("ladder families need at least one action");
    if (!(eps > 0) || !(eps < 1)) throw BadParams("eps must lie strictly between 0 and 1");
}

/// Cost of the i-th ladder action (1-based): 1/eps^(i-1) - i + eps*(i-1).
/// Welfare under reward 1/eps^(i-1) is then i - eps*(i-1), increasing in i.
inline Rational ladder_cost(std::size_t i, const Rational& eps) {
    long k = static_cast<long>(i);
    return rational_pow(eps, 1 - k) - k + eps * (k - 1);
}

} // namespace detail

/** Diagonal ladder with n actions and n outcomes. Action i deterministically
 * produces outcome x_i = 1/eps^(i-1); costs rise so that welfare gains shrink
 * geometrically. The optimal contract extracts n - eps*(n-1) while every
 * linear contract is capped at payoff 1, so the gap grows linearly with n.
 */
inline Instance gen_diagonal_ladder(std::size_t n, const Rational& eps) {
    detail::check_ladder_shape(n, eps);

    std::vector<Rational> outcomes;
    std::vector<Action> actions;
    for (std::size_t i = 1; i <= n; ++i) {
        outcomes.push_back(rational_pow(eps, 1 - static_cast<long>(i)));
        std::vector<Rational> probs(n, Rational(0));
        probs[i - 1] = 1;
        actions.push_back(Action{std::move(probs), detail::ladder_cost(i, eps)});
    }

    std::map<std::string, std::string> meta{
        {"family", "diagonal-ladder"},
        {"n", std::to_string(n)},
        {"eps", to_string(eps)},
    };
    return build_instance(outcomes, actions, std::move(meta));
}

/** Ladder compressed onto three outcomes (0, R_n, R_n + 1). Actions keep the
 * rewards and costs of the diagonal ladder, except the top action diverts
 * delta mass to the extra outcome, nudging its reward up to R_n + delta.
 * The compression preserves the linear-contract gap while satisfying the
 * monotone-likelihood-ratio property, showing the gap survives regularity.
 * delta = 0 keeps the third outcome unreached, which is handy for tests.
 */
inline Instance gen_compressed_ladder(std::size_t n, const Rational& eps,
                                      const Rational& delta) {
    detail::check_ladder_shape(n, eps);
    if (n < 2) throw BadParams("compressed ladder needs at least two actions");
    if (delta < 0 || !(delta < 1)) throw BadParams("delta must lie in [0, 1)");

    Rational top_reward = rational_pow(eps, 1 - static_cast<long>(n));
    std::vector<Rational> outcomes{Rational(0), top_reward, top_reward + 1};

    std::vector<Action> actions;
    for (std::size_t i = 1; i < n; ++i) {
        Rational share = Rational(rational_pow(eps, 1 - static_cast<long>(i))) / top_reward;
        actions.push_back(Action{{Rational(1) - share, share, Rational(0)},
                                 detail::ladder_cost(i, eps)});
    }
    actions.push_back(Action{{Rational(0), Rational(1) - delta, delta},
                             detail::ladder_cost(n, eps)});

    std::map<std::string, std::string> meta{
        {"family", "compressed-ladder"},
        {"n", std::to_string(n)},
        {"eps", to_string(eps)},
        {"delta", to_string(delta)},
    };
    return build_instance(outcomes, actions, std::move(meta));
}

/** Four-outcome family on which monotone contracts forfeit almost the whole
 * surplus. The first n-2 actions form a two-outcome ladder, action n-1
 * leaks delta mass onto a slightly higher third outcome, and action n jumps
 * deterministically to the fourth. Incentivizing the welfare-maximizing
 * action n-1 with a monotone contract forces a huge payment on outcome 2
 * (payments on outcomes 3 and 4 must not make the jump action attractive),
 * so the best monotone payoff stays near 1 while the optimum is near n-1.
 */
inline Instance gen_monotone_trap(std::size_t n, const Rational& eps,
                                  const Rational& delta, const Rational& gamma) {
    if (n < 3) throw BadParams("monotone trap needs at least three actions");
    if (!(eps > 0) || !(eps < 1)) throw BadParams("eps must lie strictly between 0 and 1");
    if (!(delta > 0) || !(delta < eps)) throw BadParams("delta must lie strictly between 0 and eps");
    if (!(gamma > 0)) throw BadParams("gamma must be positive");

    Rational peak = rational_pow(eps, 2 - static_cast<long>(n));
    std::vector<Rational> outcomes{Rational(0), peak, peak + gamma, peak + 2 * gamma};

    std::vector<Action> actions;
    for (std::size_t i = 1; i + 2 <= n; ++i) {
        Rational hit = rational_pow(eps, static_cast<long>(n - i) - 1);
        actions.push_back(Action{{Rational(1) - hit, hit, Rational(0), Rational(0)},
                                 detail::ladder_cost(i, eps)});
    }
    actions.push_back(Action{{Rational(0), Rational(1) - delta, delta, Rational(0)},
                             detail::ladder_cost(n - 1, eps)});
    actions.push_back(Action{{Rational(0), Rational(0), Rational(0), Rational(1)}, peak});

    std::map<std::string, std::string> meta{
        {"family", "monotone-trap"},
        {"n", std::to_string(n)},
        {"eps", to_string(eps)},
        {"delta", to_string(delta)},
        {"gamma", to_string(gamma)},
    };
    return build_instance(outcomes, actions, std::move(meta));
}

/** Catalog of hand-built instances used throughout the documentation and
 * tests. Accepts the catalog token (example11, example12, exampleD5) or the
 * descriptive alias in parentheses:
 *   example11 (shifted-support)      four actions whose distributions shift
 *                                    weight rightward as cost grows;
 *   example12 (all-or-nothing)       a free safe action versus a costly
 *                                    action that always hits the top outcome;
 *   exampleD5 (non-monotone-ratio)   two actions whose likelihood ratio dips,
 *                                    making the optimal contract non-monotone.
 */
inline Instance gen_example(std::string_view name) {
    auto q = [](long num, long den = 1) { return Rational(num, den); };

    if (name == "example11" || name == "shifted-support") {
        std::vector<Rational> outcomes{q(1), q(11, 10), q(49, 10), q(5), q(51, 10), q(26, 5)};
        auto row = [&](std::size_t lead) {
            std::vector<Rational> probs(6, q(0));
            probs[lead] = q(3, 8);
            probs[lead + 1] = q(3, 8);
            probs[lead + 2] = q(1, 4);
            return probs;
        };
        std::vector<Action> actions{
            Action{row(0), q(0)},
            Action{row(1), q(1)},
            Action{row(2), q(2)},
            Action{row(3), q(11, 5)},
        };
        return build_instance(outcomes, actions, {{"family", "shifted-support"}});
    }
    if (name == "example12" || name == "all-or-nothing") {
        std::vector<Rational> outcomes{q(1), q(3)};
        std::vector<Action> actions{
            Action{{q(1), q(0)}, q(0)},
            Action{{q(0), q(1)}, q(4, 3)},
        };
        return build_instance(outcomes, actions, {{"family", "all-or-nothing"}});
    }
    if (name == "exampleD5" || name == "non-monotone-ratio") {
        std::vector<Rational> outcomes{q(0), q(1), q(2)};
        std::vector<Action> actions{
            Action{{q(1, 3), q(1, 3), q(1, 3)}, q(0)},
            Action{{q(1, 3), q(1, 6), q(1, 2)}, q(1)},
        };
        return build_instance(outcomes, actions, {{"family", "non-monotone-ratio"}});
    }
    throw UnknownName("no catalog instance named '" + std::string(name) + "'");
}

/** Seeded random instance with n actions and m outcomes that satisfies the
 * regularity assumptions by construction: every action's distribution is a
 * mixture (1-w_i)*G + w_i*H of a fixed pair G, H with nondecreasing mass
 * ratio H_j/G_j, so consecutive likelihood ratios are ordered (the mixture
 * weights w_i rise strictly from 0 to 1). Costs start at 0 and grow by a
 * positive fraction of each reward increment, which keeps the actions
 * undominated; the fraction occasionally exceeds 1 so welfare need not be
 * monotone. Cost draws repeat until the welfare maximizer is unique.
 * Identical seeds reproduce the instance exactly.
 */
inline Instance gen_random_spanning(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n < 2) throw BadParams("random spanning family needs at least two actions");
    if (m < 2) throw BadParams("random spanning family needs at least two outcomes");

    std::mt19937_64 gen(seed);
    auto draw = [&](std::uint64_t k) { return static_cast<long>(gen() % k); };

    std::vector<Rational> outcomes{Rational(0)};
    for (std::size_t j = 1; j < m; ++j)
        outcomes.push_back(outcomes.back() + Rational(1 + draw(6), 2));

    // Base masses g and a nondecreasing ratio profile r with at least one
    // strict rise, so H differs from G and shifts mass toward high outcomes.
    std::vector<long> g(m), r(m);
    for (auto& mass : g) mass = 1 + draw(9);
    r[0] = 1;
    bool rose = false;
    for (std::size_t j = 1; j < m; ++j) {
        long step = draw(3);
        if (j + 1 == m && !rose && step == 0) step = 1;
        rose = rose || step > 0;
        r[j] = r[j - 1] + step;
    }
    long g_total = 0, h_total = 0;
    for (std::size_t j = 0; j < m; ++j) {
        g_total += g[j];
        h_total += r[j] * g[j];
    }

    // Strictly increasing mixture weights from 0 to 1.
    std::vector<Rational> weights{Rational(0)};
    long acc = 0;
    std::vector<long> increments;
    for (std::size_t i = 1; i < n; ++i) increments.push_back(1 + draw(9));
    for (long inc : increments) acc += inc;
    long partial = 0;
    for (long inc : increments) {
        partial += inc;
        weights.push_back(Rational(partial, acc));
    }

    std::vector<std::vector<Rational>> rows(n);
    std::vector<Rational> rewards(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            Rational low = Rational(g[j], g_total);
            Rational high = Rational(r[j] * g[j], h_total);
            rows[i].push_back((Rational(1) - weights[i]) * low + weights[i] * high);
            rewards[i] += rows[i].back() * outcomes[j];
        }
        if (i > 0 && !(rewards[i] > rewards[i - 1]))
            throw InternalError("spanning construction must produce increasing rewards");
    }

    // Costs rise by a random positive fraction of each reward increment;
    // redraw if the welfare maximizer happens to tie.
    std::vector<Rational> costs(n);
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 32)
            throw InternalError("could not reach a unique welfare maximizer");
        costs[0] = 0;
        for (std::size_t i = 1; i < n; ++i) {
            Rational slope = Rational(1 + draw(9), 10);
            if (draw(4) == 3) slope += 1;
            costs[i] = costs[i - 1] + slope * (rewards[i] - rewards[i - 1]);
        }
        std::size_t ties = 0;
        Rational best;
        for (std::size_t i = 0; i < n; ++i) {
            Rational w = rewards[i] - costs[i];
            if (i == 0 || w > best) {
                best = w;
                ties = 1;
            } else if (w == best) {
                ++ties;
            }
        }
        if (ties == 1) break;
    }

    std::vector<Action> actions;
    for (std::size_t i = 0; i < n; ++i)
        actions.push_back(Action{std::move(rows[i]), std::move(costs[i])});

    std::map<std::string, std::string> meta{
        {"family", "random-spanning"},
        {"n", std::to_string(n)},
        {"m", std::to_string(m)},
        {"seed", std::to_string(seed)},
    };
    return build_instance(outcomes, actions, std::move(meta));
}

} // namespace pact
