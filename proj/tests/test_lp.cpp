#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pact/linalg.hpp"
#include "pact/lp.hpp"

using namespace pact;

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

LpRow row(std::vector<Rational> coeffs, RowSense sense, Rational rhs) {
    return LpRow{std::move(coeffs), sense, std::move(rhs)};
}

} // namespace

TEST_CASE("two greater-equal rows, known vertex and duals") {
    LpProblem p;
    p.objective = {q(1), q(1)};
    p.rows = {row({q(1), q(2)}, RowSense::ge, q(3)),
              row({q(3), q(1)}, RowSense::ge, q(4))};
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::optimal);
    REQUIRE(s.objective == q(2));
    REQUIRE(s.x == std::vector<Rational>{q(1), q(1)});
    REQUIRE(s.row_duals == std::vector<Rational>{q(2, 5), q(1, 5)});
}

TEST_CASE("less-equal rows behave like a maximization") {
    LpProblem p;
    p.objective = {q(-2), q(-3)};
    p.rows = {row({q(1), q(1)}, RowSense::le, q(4)),
              row({q(1), q(3)}, RowSense::le, q(6))};
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::optimal);
    REQUIRE(s.objective == q(-9));
    REQUIRE(s.x == std::vector<Rational>{q(3), q(1)});
    REQUIRE(s.row_duals == std::vector<Rational>{q(-3, 2), q(-1, 2)});
}

TEST_CASE("equality row pins the optimum") {
    LpProblem p;
    p.objective = {q(1), q(0)};
    p.rows = {row({q(1), q(1)}, RowSense::eq, q(2)),
              row({q(0), q(1)}, RowSense::le, q(1))};
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::optimal);
    REQUIRE(s.objective == q(1));
    REQUIRE(s.x[0] == q(1));
    REQUIRE(s.x[1] == q(1));
}

TEST_CASE("redundant equality rows are tolerated") {
    LpProblem p;
    p.objective = {q(1), q(0)};
    p.rows = {row({q(1), q(1)}, RowSense::eq, q(2)),
              row({q(2), q(2)}, RowSense::eq, q(4))};
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::optimal);
    REQUIRE(s.objective == q(0));
    REQUIRE(s.x[0] + s.x[1] == q(2));
}

TEST_CASE("infeasible system yields a replayable certificate") {
    LpProblem p;
    p.objective = {q(0)};
    p.rows = {row({q(1)}, RowSense::ge, q(2)), row({q(1)}, RowSense::le, q(1))};
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::infeasible);
    REQUIRE(s.farkas.size() == 2);
    const Rational& y0 = s.farkas[0];
    const Rational& y1 = s.farkas[1];
    REQUIRE(y0 >= 0);
    REQUIRE(y1 <= 0);
    REQUIRE(y0 * q(1) + y1 * q(1) <= 0);
    REQUIRE(y0 * q(2) + y1 * q(1) > 0);
}

TEST_CASE("missing rows leave the objective unbounded") {
    LpProblem p;
    p.objective = {q(-1)};
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::unbounded);
}

TEST_CASE("negative lower bounds shift correctly") {
    LpProblem p;
    p.objective = {q(1)};
    p.rows = {row({q(1)}, RowSense::ge, q(-5))};
    p.lower_bounds = {q(-10)};
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::optimal);
    REQUIRE(s.objective == q(-5));
    REQUIRE(s.x[0] == q(-5));

    LpProblem p2;
    p2.objective = {q(1), q(1)};
    p2.rows = {row({q(1), q(1)}, RowSense::ge, q(0))};
    p2.lower_bounds = {q(-3), q(-3)};
    LpSolution s2 = solve_lp(p2);
    REQUIRE(s2.status == LpStatus::optimal);
    REQUIRE(s2.objective == q(0));
}

TEST_CASE("degenerate vertex still terminates under the anti-cycling rule") {
    LpProblem p;
    p.objective = {q(-1), q(-1)};
    p.rows = {row({q(1), q(0)}, RowSense::le, q(1)),
              row({q(0), q(1)}, RowSense::le, q(1)),
              row({q(1), q(1)}, RowSense::le, q(2))};
    LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::optimal);
    REQUIRE(s.objective == q(-2));
}

TEST_CASE("shape validation") {
    LpProblem ragged;
    ragged.objective = {q(1), q(1)};
    ragged.rows = {row({q(1)}, RowSense::ge, q(1))};
    REQUIRE_THROWS_AS(solve_lp(ragged), DimensionMismatch);

    LpProblem bad_lb;
    bad_lb.objective = {q(1)};
    bad_lb.lower_bounds = {q(0), q(0)};
    REQUIRE_THROWS_AS(solve_lp(bad_lb), DimensionMismatch);

    LpProblem empty;
    REQUIRE_THROWS_AS(solve_lp(empty), DimensionMismatch);
}

TEST_CASE("exactness counters reflect the work done") {
    lp_stats().reset();

    LpProblem p;
    p.objective = {q(1), q(1)};
    p.rows = {row({q(1), q(2)}, RowSense::ge, q(3))};
    REQUIRE(solve_lp(p).status == LpStatus::optimal);

    LpProblem bad;
    bad.objective = {q(0)};
    bad.rows = {row({q(1)}, RowSense::ge, q(2)), row({q(1)}, RowSense::le, q(1))};
    REQUIRE(solve_lp(bad).status == LpStatus::infeasible);

    REQUIRE(lp_stats().lp_solves.load() == 2);
    REQUIRE(lp_stats().duality_checks.load() == 1);
    REQUIRE(lp_stats().duality_failures.load() == 0);
    REQUIRE(lp_stats().farkas_checks.load() == 1);
    REQUIRE(lp_stats().farkas_failures.load() == 0);
}

namespace {

// Brute-force oracle: enumerate every intersection of dimension-many
// hyperplanes (rows taken as equalities plus the coordinate planes), keep
// the feasible ones, and take the best objective.  Valid whenever the
// feasible region is a polytope, which the generator ensures with a box.
std::optional<Rational> vertex_oracle(const LpProblem& p) {
    size_t n = p.objective.size();
    std::vector<std::pair<std::vector<Rational>, Rational>> planes;
    for (const auto& r : p.rows) planes.push_back({r.coeffs, r.rhs});
    for (size_t j = 0; j < n; ++j) {
        std::vector<Rational> unit(n, Rational(0));
        unit[j] = 1;
        planes.push_back({unit, Rational(0)});
    }

    std::optional<Rational> best;
    std::vector<size_t> pick(n);
    auto feasible = [&](const std::vector<Rational>& x) {
        for (const auto& v : x)
            if (v < 0) return false;
        for (const auto& r : p.rows) {
            Rational act = 0;
            for (size_t j = 0; j < n; ++j) act += r.coeffs[j] * x[j];
            if (r.sense == RowSense::le && act > r.rhs) return false;
            if (r.sense == RowSense::ge && act < r.rhs) return false;
            if (r.sense == RowSense::eq && act != r.rhs) return false;
        }
        return true;
    };

    auto consider = [&](const std::vector<size_t>& idx) {
        detail::Matrix M(n, std::vector<Rational>(n + 1, Rational(0)));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) M[i][j] = planes[idx[i]].first[j];
            M[i][n] = planes[idx[i]].second;
        }
        auto e = detail::echelonize(M);
        if (e.rank != n) return;
        for (size_t c : e.pivot_cols)
            if (c == n) return;
        std::vector<Rational> x(n);
        for (size_t i = 0; i < n; ++i) x[e.pivot_cols[i]] = M[i][n];
        if (!feasible(x)) return;
        Rational obj = 0;
        for (size_t j = 0; j < n; ++j) obj += p.objective[j] * x[j];
        if (!best || obj < *best) best = obj;
    };

    // Iterate over all n-element subsets of the plane list.
    std::vector<size_t> idx(n);
    auto rec = [&](auto&& self, size_t start, size_t depth) -> void {
        if (depth == n) {
            consider(idx);
            return;
        }
        for (size_t i = start; i < planes.size(); ++i) {
            idx[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return best;
}

} // namespace

TEST_CASE("random boxed programs agree with vertex enumeration") {
    std::mt19937_64 gen(7);
    auto small = [&](long lo, long hi) {
        return q(lo + static_cast<long>(gen() % static_cast<unsigned long>(hi - lo + 1)));
    };

    int optimal_seen = 0, infeasible_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        size_t n = 2 + gen() % 2;
        LpProblem p;
        for (size_t j = 0; j < n; ++j) p.objective.push_back(small(-3, 3));
        size_t extra = 1 + gen() % 3;
        for (size_t r = 0; r < extra; ++r) {
            LpRow lr;
            for (size_t j = 0; j < n; ++j) lr.coeffs.push_back(small(-3, 3));
            lr.sense = (gen() % 2) ? RowSense::ge : RowSense::le;
            lr.rhs = small(-4, 4);
            p.rows.push_back(lr);
        }
        for (size_t j = 0; j < n; ++j) {
            std::vector<Rational> unit(n, Rational(0));
            unit[j] = 1;
            p.rows.push_back(row(std::move(unit), RowSense::le, q(5)));
        }

        LpSolution s = solve_lp(p);
        std::optional<Rational> oracle = vertex_oracle(p);
        if (s.status == LpStatus::optimal) {
            ++optimal_seen;
            REQUIRE(oracle.has_value());
            REQUIRE(*oracle == s.objective);
        } else {
            ++infeasible_seen;
            REQUIRE(s.status == LpStatus::infeasible);
            REQUIRE_FALSE(oracle.has_value());
        }
    }
    // The generator should exercise both outcomes.
    REQUIRE(optimal_seen > 10);
    REQUIRE(infeasible_seen > 5);
}
