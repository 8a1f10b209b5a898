#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pact/best_response.hpp"
#include "pact/contract.hpp"
#include "pact/envelope.hpp"
#include "pact/error.hpp"
#include "pact/instance.hpp"
#include "pact/rational.hpp"
#include "pact/solvers.hpp"

/* Approximation-ratio audit: solves one instance with the optimal, monotone,
 * and linear toolchains and evaluates the worst-case bounds that relate them
 * — the payoff of the best unrestricted contract never exceeds
 *   N   x (best linear payoff)   with N the linearly-implementable count,
 *   2K  x (best linear payoff)   with K the nonempty reward doubling buckets,
 *   4L  x (best linear payoff)   with L the nonempty cost doubling buckets,
 * nor the welfare of the top linearly-implementable action, and the optimal
 * contract pays out on at most n-1 outcomes. Reports render as CSV rows.
 */

namespace pact {

namespace detail {

/// Number of nonempty doubling buckets [2^k, 2^(k+1)) hit by the positive
/// entries after normalizing by their minimum (so the smallest positive
/// value always lands in bucket 0). Zero entries belong to no bucket.
inline std::size_t doubling_bucket_count(const std::vector<Rational>& values) {
    Rational lo;
    bool seen = false;
    for (const Rational& v : values)
        if (v > 0 && (!seen || v < lo)) {
            lo = v;
            seen = true;
        }
    if (!seen) return 0;

    std::set<long> hit;
    for (const Rational& v : values) {
        if (!(v > 0)) continue;
        Rational scaled = Rational(v) / lo;
        long bucket = 0;
        Rational edge = 2;
        while (edge <= scaled) {
            edge *= 2;
            ++bucket;
        }
        hit.insert(bucket);
    }
    return hit.size();
}

/// Spread max/min of the positive entries; 1 when fewer than one.
inline Rational positive_span(const std::vector<Rational>& values) {
    Rational lo, hi;
    bool seen = false;
    for (const Rational& v : values) {
        if (!(v > 0)) continue;
        if (!seen) {
            lo = hi = v;
            seen = true;
        } else {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
    }
    if (!seen) return Rational(1);
    return Rational(hi) / lo;
}

/** Best linear share by direct replay of the agent's response, without any
 * structural assumptions. Exact candidate shares suffice: on any open
 * interval of shares where the agent's pick is constant the principal's
 * payoff (1-alpha) R falls, and the pick can only change where two actions
 * become indifferent or a participation constraint crosses zero — all of
 * which are candidate points. Honors the agent's walk-away option, so the
 * returned payoff is never negative. Ties prefer the smallest share.
 */
inline std::pair<Rational, Rational> best_linear_by_replay(const Instance& inst) {
    std::vector<Rational> candidates{Rational(0), Rational(1)};
    const std::size_t n = inst.num_actions();
    std::vector<Rational> rewards(n);
    for (std::size_t a = 0; a < n; ++a) rewards[a] = inst.expected_reward(a);

    for (std::size_t a = 0; a < n; ++a) {
        if (rewards[a] > 0) candidates.push_back(Rational(inst.actions[a].cost) / rewards[a]);
        for (std::size_t b = a + 1; b < n; ++b) {
            if (rewards[a] == rewards[b]) continue;
            candidates.push_back(Rational(inst.actions[b].cost - inst.actions[a].cost) /
                                 (rewards[b] - rewards[a]));
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    Rational best_alpha = 0, best_payoff = 0;
    bool first = true;
    for (const Rational& alpha : candidates) {
        if (alpha < 0 || alpha > 1) continue;
        BestResponse br = agent_best_response(inst, LinearContract{alpha}.materialize(inst));
        Rational payoff = br.choice ? br.principal_payoff : Rational(0);
        if (first || payoff > best_payoff) {
            best_alpha = alpha;
            best_payoff = payoff;
            first = false;
        }
    }
    return {best_alpha, best_payoff};
}

} // namespace detail

/// Outcome of each audited bound. Disengaged checks (restricted audits with
/// no linear side) stay unset and do not count as failures.
struct AuditChecks {
    std::optional<bool> le_count;          ///< opt <= N * linear
    std::optional<bool> le_reward_buckets; ///< opt <= 2K * linear
    std::optional<bool> le_cost_buckets;   ///< opt <= 4L * linear
    std::optional<bool> le_top_welfare;    ///< opt <= welfare of the top implementable action
    bool sparse_ok = true;                 ///< optimal contract pays on <= n-1 outcomes

    bool all_pass() const {
        auto ok = [](const std::optional<bool>& b) { return !b.has_value() || *b; };
        return ok(le_count) && ok(le_reward_buckets) && ok(le_cost_buckets) &&
               ok(le_top_welfare) && sparse_ok;
    }
};

/** The cost-bucket bound re-read with the free actions removed: the
 * remaining sub-instance has all-positive costs, so its bucket count is
 * well-defined without excluding anyone. Both payoffs are recomputed on the
 * sub-instance; the linear side uses the assumption-free replay search and
 * the optimal side clamps at the principal's walk-away payoff of zero.
 */
struct DropZeroReading {
    Rational opt_payoff;
    Rational linear_alpha;
    Rational linear_payoff;
    std::size_t cost_buckets = 0;
    bool le_cost_buckets = true;
};

struct AuditReport {
    /// True when the structural flags required by the envelope machinery
    /// (undominated actions, a unique welfare maximizer, a free action) are
    /// missing; the linear-side cells are then left unset.
    bool restricted = false;
    std::size_t actions = 0;
    std::size_t outcomes = 0;

    Rational opt_payoff;
    Rational monotone_payoff;
    std::size_t positive_payments = 0;

    std::optional<Rational> linear_payoff;
    std::optional<Rational> linear_alpha;
    std::optional<Rational> rho;                      ///< opt / linear when linear > 0
    std::optional<std::size_t> implementable_count;   ///< N
    std::optional<Rational> top_welfare;

    std::size_t reward_buckets = 0; ///< K
    std::size_t cost_buckets = 0;   ///< L, over the positive costs
    Rational reward_range;          ///< max/min positive reward
    Rational cost_range;            ///< max/min positive cost

    AuditChecks checks;
    std::optional<DropZeroReading> drop_zero;
};

inline AuditReport audit_ratio(const Instance& inst) {
    AuditReport rep;
    rep.actions = inst.num_actions();
    rep.outcomes = inst.num_outcomes();
    rep.restricted = !(inst.flags.no_dominated_actions &&
                       inst.flags.unique_welfare_maximizer &&
                       inst.flags.has_zero_cost_action);

    SolveResult opt = optimal_contract(inst);
    SolveResult mono = best_monotone(inst);
    rep.opt_payoff = opt.payoff;
    rep.monotone_payoff = mono.payoff;
    rep.positive_payments = positive_payment_count(opt.contract);
    rep.checks.sparse_ok = rep.positive_payments + 1 <= rep.actions;

    std::vector<Rational> rewards, costs;
    for (std::size_t a = 0; a < rep.actions; ++a) {
        rewards.push_back(inst.expected_reward(a));
        costs.push_back(inst.actions[a].cost);
    }
    rep.reward_buckets = detail::doubling_bucket_count(rewards);
    rep.cost_buckets = detail::doubling_bucket_count(costs);
    rep.reward_range = detail::positive_span(rewards);
    rep.cost_range = detail::positive_span(costs);

    if (!rep.restricted) {
        Envelope env = compute_envelope(inst);
        BestLinear lin = best_linear(inst);
        rep.linear_payoff = lin.payoff;
        rep.linear_alpha = lin.alpha;
        rep.implementable_count = env.segments.size();
        rep.top_welfare = inst.welfare(env.segments.back().action);
        if (lin.payoff > 0) rep.rho = Rational(opt.payoff) / lin.payoff;

        const Rational& alg = lin.payoff;
        rep.checks.le_count = opt.payoff <= Rational(env.segments.size()) * alg;
        rep.checks.le_reward_buckets =
            rep.reward_buckets == 0 ? opt.payoff <= alg
                                    : opt.payoff <= Rational(2 * rep.reward_buckets) * alg;
        rep.checks.le_cost_buckets =
            rep.cost_buckets == 0 ? opt.payoff <= alg
                                  : opt.payoff <= Rational(4 * rep.cost_buckets) * alg;
        rep.checks.le_top_welfare = opt.payoff <= *rep.top_welfare;
    }

    // Second cost reading: audit the paid actions on their own.
    std::vector<Action> kept;
    for (const Action& act : inst.actions)
        if (act.cost > 0) kept.push_back(act);
    if (!kept.empty() && kept.size() < rep.actions) {
        Instance sub = build_instance(inst.outcomes, kept);
        DropZeroReading d;
        try {
            d.opt_payoff = std::max(Rational(0), Rational(optimal_contract(sub).payoff));
        } catch (const NoImplementableAction&) {
            d.opt_payoff = 0;
        }
        auto [alpha, alg] = detail::best_linear_by_replay(sub);
        d.linear_alpha = alpha;
        d.linear_payoff = alg;
        std::vector<Rational> sub_costs;
        for (const Action& act : sub.actions) sub_costs.push_back(act.cost);
        d.cost_buckets = detail::doubling_bucket_count(sub_costs);
        d.le_cost_buckets = d.opt_payoff <= Rational(4 * d.cost_buckets) * d.linear_payoff;
        rep.drop_zero = std::move(d);
    }

    return rep;
}

inline std::string audit_csv_header() {
    return "instance,n,m,N,K,L,opt,alg_linear,alg_monotone,rho,"
           "le_N,le_2K,le_4L,le_welfare,sparse_ok";
}

/// One CSV row per audit. Unset cells render as "n/a", booleans as 1/0.
/// Labels are caller-chosen identifiers and must not contain commas.
inline std::string audit_csv_row(const std::string& label, const AuditReport& rep) {
    auto flag = [](const std::optional<bool>& b) {
        return !b.has_value() ? "n/a" : (*b ? "1" : "0");
    };
    std::ostringstream out;
    out << label << ',' << rep.actions << ',' << rep.outcomes << ',';
    if (rep.implementable_count)
        out << *rep.implementable_count;
    else
        out << "n/a";
    out << ',' << rep.reward_buckets << ',' << rep.cost_buckets << ','
        << to_string(rep.opt_payoff) << ','
        << (rep.linear_payoff ? to_string(*rep.linear_payoff) : "n/a") << ','
        << to_string(rep.monotone_payoff) << ','
        << (rep.rho ? to_string(*rep.rho) : "n/a") << ','
        << flag(rep.checks.le_count) << ',' << flag(rep.checks.le_reward_buckets) << ','
        << flag(rep.checks.le_cost_buckets) << ',' << flag(rep.checks.le_top_welfare) << ','
        << (rep.checks.sparse_ok ? "1" : "0");
    return out.str();
}

} // namespace pact
