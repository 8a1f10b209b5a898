#pragma once

#include <optional>
#include <vector>

#include "pact/linalg.hpp"
#include "pact/lp.hpp"

// Brute-force reference optimum for small LPs: enumerate every intersection
// of dimension-many hyperplanes (rows taken as equalities plus the
// coordinate planes), keep the feasible ones, and take the best objective.
// Assumes zero lower bounds, so the region is pointed and any attained
// optimum sits on a vertex.  Exponential; test-sized inputs only.
inline std::optional<pact::Rational> vertex_enumerate_min(const pact::LpProblem& p) {
    using pact::Rational;
    const size_t n = p.objective.size();

    std::vector<std::pair<std::vector<Rational>, Rational>> planes;
    for (const auto& r : p.rows) planes.emplace_back(r.coeffs, r.rhs);
    for (size_t j = 0; j < n; ++j) {
        std::vector<Rational> unit(n, Rational(0));
        unit[j] = 1;
        planes.emplace_back(std::move(unit), Rational(0));
    }

    auto feasible = [&](const std::vector<Rational>& x) {
        for (const auto& v : x)
            if (v < 0) return false;
        for (const auto& r : p.rows) {
            Rational act = 0;
            for (size_t j = 0; j < n; ++j) act += r.coeffs[j] * x[j];
            if (r.sense == pact::RowSense::le && act > r.rhs) return false;
            if (r.sense == pact::RowSense::ge && act < r.rhs) return false;
            if (r.sense == pact::RowSense::eq && act != r.rhs) return false;
        }
        return true;
    };

    std::optional<Rational> best;
    std::vector<size_t> idx(n);
    auto consider = [&]() {
        pact::detail::Matrix M(n, std::vector<Rational>(n + 1, Rational(0)));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) M[i][j] = planes[idx[i]].first[j];
            M[i][n] = planes[idx[i]].second;
        }
        auto e = pact::detail::echelonize(M);
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
    auto rec = [&](auto&& self, size_t start, size_t depth) -> void {
        if (depth == n) {
            consider();
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
