#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

// Exact rational linear programming.
//
// Minimizes c'x subject to mixed <= / >= / == rows and per-variable lower
// bounds, via a two-phase primal simplex with Bland's anti-cycling rule.
// Every answer is self-checked before it is returned:
//   - optimal:    primal feasibility, dual feasibility and exact strong
//                 duality are replayed against the original data;
//   - infeasible: a Farkas certificate is extracted and replayed.
// A failed check throws InternalError; nothing is ever rounded.

namespace pact {

enum class LpStatus { optimal, infeasible, unbounded };

enum class RowSense { le, ge, eq };

struct LpRow {
    std::vector<Rational> coeffs;
    RowSense sense = RowSense::ge;
    Rational rhs;
};

struct LpProblem {
    std::vector<Rational> objective;
    std::vector<LpRow> rows;
    /// Optional per-variable lower bounds; empty means all zero.
    std::vector<Rational> lower_bounds;
};

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<Rational> x;         ///< optimal point (optimal only)
    Rational objective = 0;          ///< c'x at the optimum (optimal only)
    std::vector<Rational> row_duals; ///< one multiplier per row (optimal only)
    std::vector<Rational> farkas;    ///< infeasibility certificate (infeasible only)
};

/// Running totals of every exactness check performed by the solver and the
/// certificate machinery built on top of it.  Failure counters stay at zero
/// in a correct build; they are surfaced so audits can assert that.
struct ExactnessStats {
    std::atomic<std::uint64_t> lp_solves{0};
    std::atomic<std::uint64_t> duality_checks{0};
    std::atomic<std::uint64_t> duality_failures{0};
    std::atomic<std::uint64_t> farkas_checks{0};
    std::atomic<std::uint64_t> farkas_failures{0};
    std::atomic<std::uint64_t> certificates_emitted{0};
    std::atomic<std::uint64_t> certificates_verified{0};
    std::atomic<std::uint64_t> certificate_failures{0};

    void reset() {
        lp_solves = 0;
        duality_checks = 0;
        duality_failures = 0;
        farkas_checks = 0;
        farkas_failures = 0;
        certificates_emitted = 0;
        certificates_verified = 0;
        certificate_failures = 0;
    }
};

inline ExactnessStats& lp_stats() {
    static ExactnessStats stats;
    return stats;
}

namespace detail {

// Tableau-based simplex over the standardized system
//   A_std x_std = b_std,  x_std >= 0,  b_std >= 0,
// where x_std = structural columns (the shifted originals), then one
// slack/surplus column per inequality row, then one artificial column per
// row.  Rows whose shifted right-hand side is negative are negated before
// the artificials are added; row_sign remembers that.  Starting from the
// all-artificial identity basis keeps B^-1 readable off the artificial
// columns, which is what makes exact dual and Farkas extraction one-liners.
class SimplexTableau {
  public:
    SimplexTableau(const LpProblem& prob, const std::vector<Rational>& lb)
        : nstruct_(prob.objective.size()), nrows_(prob.rows.size()) {
        size_t nslack = 0;
        for (const auto& row : prob.rows)
            if (row.sense != RowSense::eq) ++nslack;
        ncols_ = nstruct_ + nslack + nrows_;
        art0_ = nstruct_ + nslack;

        T_.assign(nrows_, std::vector<Rational>(ncols_, Rational(0)));
        rhs_.assign(nrows_, Rational(0));
        row_sign_.assign(nrows_, 1);
        basis_.resize(nrows_);
        blocked_.assign(ncols_, false);

        size_t slack = nstruct_;
        for (size_t i = 0; i < nrows_; ++i) {
            const LpRow& row = prob.rows[i];
            Rational shifted = row.rhs;
            for (size_t j = 0; j < nstruct_; ++j) shifted -= row.coeffs[j] * lb[j];

            for (size_t j = 0; j < nstruct_; ++j) T_[i][j] = row.coeffs[j];
            if (row.sense == RowSense::le) T_[i][slack++] = 1;
            else if (row.sense == RowSense::ge) T_[i][slack++] = -1;

            if (shifted < 0) {
                row_sign_[i] = -1;
                for (size_t j = 0; j < ncols_; ++j) T_[i][j] = -T_[i][j];
                shifted = -shifted;
            }
            rhs_[i] = shifted;
            T_[i][art0_ + i] = 1;
            basis_[i] = art0_ + i;
            blocked_[art0_ + i] = true; // artificials may leave but never re-enter
        }

        live_.resize(nrows_);
        for (size_t i = 0; i < nrows_; ++i) live_[i] = i;
    }

    /// Minimize the artificial sum; true iff it reaches zero (feasible).
    bool phase_one() {
        if (!run(phase_one_cost()))
            throw InternalError("lp: phase one reported an unbounded ray");
        Rational infeas = 0;
        for (size_t r = 0; r < live_.size(); ++r)
            if (is_artificial(basis_at(r))) infeas += rhs_at(r);
        return infeas == 0;
    }

    /// After a feasible phase one: pivot zero-valued artificials out of the
    /// basis, dropping rows that turn out to be redundant.
    void purge_artificials() {
        for (size_t r = 0; r < live_.size();) {
            if (!is_artificial(basis_at(r))) { ++r; continue; }
            size_t enter = ncols_;
            for (size_t j = 0; j < art0_; ++j)
                if (T_[live_[r]][j] != 0) { enter = j; break; }
            if (enter == ncols_) {
                live_.erase(live_.begin() + static_cast<std::ptrdiff_t>(r));
            } else {
                pivot(r, enter);
                ++r;
            }
        }
    }

    /// Minimize the given structural objective; true iff bounded.
    bool phase_two(const std::vector<Rational>& objective) {
        return run(phase_two_cost(objective));
    }

    std::vector<Rational> structural_values() const {
        std::vector<Rational> x(nstruct_, Rational(0));
        for (size_t r = 0; r < live_.size(); ++r)
            if (basis_at(r) < nstruct_) x[basis_at(r)] = rhs_at(r);
        return x;
    }

    /// y = cB' B^-1 in original-row coordinates, read off the artificial
    /// columns (column art0_+k of the worked tableau holds the coefficient
    /// of original standardized row k in each current row).
    std::vector<Rational> row_multipliers(const std::vector<Rational>& cost) const {
        std::vector<Rational> y(nrows_, Rational(0));
        for (size_t k = 0; k < nrows_; ++k) {
            Rational yk = 0;
            for (size_t r = 0; r < live_.size(); ++r)
                yk += cost[basis_at(r)] * T_[live_[r]][art0_ + k];
            y[k] = yk * row_sign_[k];
        }
        return y;
    }

    std::vector<Rational> phase_one_cost() const {
        std::vector<Rational> cost(ncols_, Rational(0));
        for (size_t i = 0; i < nrows_; ++i) cost[art0_ + i] = 1;
        return cost;
    }

    std::vector<Rational> phase_two_cost(const std::vector<Rational>& objective) const {
        std::vector<Rational> cost(ncols_, Rational(0));
        for (size_t j = 0; j < nstruct_; ++j) cost[j] = objective[j];
        return cost;
    }

  private:
    bool is_artificial(size_t col) const { return col >= art0_; }
    size_t basis_at(size_t r) const { return basis_[live_[r]]; }
    Rational rhs_at(size_t r) const { return rhs_[live_[r]]; }

    void pivot(size_t r, size_t enter) {
        size_t row = live_[r];
        Rational p = T_[row][enter];
        for (auto& v : T_[row]) v /= p;
        rhs_[row] /= p;
        for (size_t q = 0; q < live_.size(); ++q) {
            size_t other = live_[q];
            if (other == row || T_[other][enter] == 0) continue;
            Rational f = T_[other][enter];
            for (size_t j = 0; j < ncols_; ++j) T_[other][j] -= f * T_[row][j];
            rhs_[other] -= f * rhs_[row];
        }
        basis_[row] = enter;
    }

    /// Bland's rule throughout: entering column is the lowest-indexed one
    /// with negative reduced cost; the leaving row breaks ratio ties by the
    /// lowest basic variable index.  Returns false on an unbounded ray.
    bool run(const std::vector<Rational>& cost) {
        for (;;) {
            size_t enter = ncols_;
            for (size_t j = 0; j < ncols_ && enter == ncols_; ++j) {
                if (blocked_[j] || currently_basic(j)) continue;
                Rational rc = cost[j];
                for (size_t r = 0; r < live_.size(); ++r)
                    rc -= cost[basis_at(r)] * T_[live_[r]][j];
                if (rc < 0) enter = j;
            }
            if (enter == ncols_) return true;

            size_t leave = live_.size();
            Rational best_ratio = 0;
            for (size_t r = 0; r < live_.size(); ++r) {
                const Rational& a = T_[live_[r]][enter];
                if (a <= 0) continue;
                Rational ratio = rhs_at(r) / a;
                if (leave == live_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_at(r) < basis_at(leave))) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == live_.size()) return false;
            pivot(leave, enter);
        }
    }

    bool currently_basic(size_t col) const {
        for (size_t r = 0; r < live_.size(); ++r)
            if (basis_at(r) == col) return true;
        return false;
    }

    size_t nstruct_, nrows_, ncols_ = 0, art0_ = 0;
    std::vector<std::vector<Rational>> T_;
    std::vector<Rational> rhs_;
    std::vector<int> row_sign_;
    std::vector<size_t> basis_;
    std::vector<bool> blocked_;
    std::vector<size_t> live_;
};

inline Rational row_activity(const LpRow& row, const std::vector<Rational>& x) {
    Rational acc = 0;
    for (size_t j = 0; j < row.coeffs.size(); ++j) acc += row.coeffs[j] * x[j];
    return acc;
}

inline void verify_primal(const LpProblem& prob, const std::vector<Rational>& lb,
                          const std::vector<Rational>& x) {
    for (size_t j = 0; j < x.size(); ++j)
        if (x[j] < lb[j]) throw InternalError("lp: primal point violates a lower bound");
    for (const auto& row : prob.rows) {
        Rational act = row_activity(row, x);
        bool ok = row.sense == RowSense::le   ? act <= row.rhs
                  : row.sense == RowSense::ge ? act >= row.rhs
                                              : act == row.rhs;
        if (!ok) throw InternalError("lp: primal point violates a row");
    }
}

inline void verify_dual_signs(const LpProblem& prob, const std::vector<Rational>& y,
                              const char* what) {
    for (size_t i = 0; i < prob.rows.size(); ++i) {
        RowSense s = prob.rows[i].sense;
        if (s == RowSense::le && y[i] > 0) throw InternalError(what);
        if (s == RowSense::ge && y[i] < 0) throw InternalError(what);
    }
}

} // namespace detail

/// Solve min c'x over the given rows and lower bounds, exactly.
inline LpSolution solve_lp(const LpProblem& prob) {
    const size_t n = prob.objective.size();
    for (const auto& row : prob.rows)
        if (row.coeffs.size() != n)
            throw DimensionMismatch("lp row width does not match the objective");
    if (!prob.lower_bounds.empty() && prob.lower_bounds.size() != n)
        throw DimensionMismatch("lower bound count does not match the objective");
    if (n == 0) throw DimensionMismatch("lp with no variables");

    std::vector<Rational> lb = prob.lower_bounds;
    if (lb.empty()) lb.assign(n, Rational(0));

    ExactnessStats& stats = lp_stats();
    stats.lp_solves.fetch_add(1, std::memory_order_relaxed);

    detail::SimplexTableau tab(prob, lb);

    LpSolution sol;
    if (!tab.phase_one()) {
        // Infeasible: the optimal phase-one multipliers are a Farkas ray.
        std::vector<Rational> y = tab.row_multipliers(tab.phase_one_cost());
        stats.farkas_checks.fetch_add(1, std::memory_order_relaxed);
        bool ray_ok = true;
        for (size_t i = 0; i < prob.rows.size() && ray_ok; ++i) {
            RowSense s = prob.rows[i].sense;
            if (s == RowSense::le && y[i] > 0) ray_ok = false;
            if (s == RowSense::ge && y[i] < 0) ray_ok = false;
        }
        Rational yb = 0;
        for (size_t i = 0; i < prob.rows.size(); ++i) {
            Rational shifted = prob.rows[i].rhs;
            for (size_t j = 0; j < n; ++j) shifted -= prob.rows[i].coeffs[j] * lb[j];
            yb += y[i] * shifted;
        }
        for (size_t j = 0; j < n && ray_ok; ++j) {
            Rational col = 0;
            for (size_t i = 0; i < prob.rows.size(); ++i)
                col += y[i] * prob.rows[i].coeffs[j];
            ray_ok = col <= 0;
        }
        if (!ray_ok || yb <= 0) {
            stats.farkas_failures.fetch_add(1, std::memory_order_relaxed);
            throw InternalError("lp: farkas certificate failed replay");
        }
        sol.status = LpStatus::infeasible;
        sol.farkas = std::move(y);
        return sol;
    }

    tab.purge_artificials();
    if (!tab.phase_two(prob.objective)) {
        sol.status = LpStatus::unbounded;
        return sol;
    }

    std::vector<Rational> shifted_x = tab.structural_values();
    std::vector<Rational> x(n);
    for (size_t j = 0; j < n; ++j) x[j] = shifted_x[j] + lb[j];

    Rational obj = 0;
    for (size_t j = 0; j < n; ++j) obj += prob.objective[j] * x[j];

    std::vector<Rational> y = tab.row_multipliers(tab.phase_two_cost(prob.objective));

    // Exact optimality replay against the original data.
    stats.duality_checks.fetch_add(1, std::memory_order_relaxed);
    bool ok = true;
    try {
        detail::verify_primal(prob, lb, x);
        detail::verify_dual_signs(prob, y, "lp: dual multiplier has a wrong sign");
    } catch (const InternalError&) {
        stats.duality_failures.fetch_add(1, std::memory_order_relaxed);
        throw;
    }
    for (size_t j = 0; j < n && ok; ++j) {
        Rational reduced = prob.objective[j];
        for (size_t i = 0; i < prob.rows.size(); ++i)
            reduced -= y[i] * prob.rows[i].coeffs[j];
        ok = reduced >= 0;
    }
    Rational dual_obj = 0;
    if (ok) {
        // Strong duality in the shifted space: c'(x - lb) == y'(b - A lb).
        for (size_t i = 0; i < prob.rows.size(); ++i) {
            Rational shifted = prob.rows[i].rhs;
            for (size_t j = 0; j < n; ++j) shifted -= prob.rows[i].coeffs[j] * lb[j];
            dual_obj += y[i] * shifted;
        }
        Rational primal_shifted = obj;
        for (size_t j = 0; j < n; ++j) primal_shifted -= prob.objective[j] * lb[j];
        ok = primal_shifted == dual_obj;
    }
    if (!ok) {
        stats.duality_failures.fetch_add(1, std::memory_order_relaxed);
        throw InternalError("lp: exact duality replay failed");
    }

    sol.status = LpStatus::optimal;
    sol.x = std::move(x);
    sol.objective = std::move(obj);
    sol.row_duals = std::move(y);
    return sol;
}

} // namespace pact
