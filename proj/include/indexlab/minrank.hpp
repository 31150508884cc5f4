#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "indexlab/graph.hpp"
#include "indexlab/matrix.hpp"

namespace indexlab {

/// A matrix bound to the graph it represents over its field: nonzero
/// diagonal, zero at every non-edge.
struct Representation {
    Graph graph;
    FieldSpec field;
    FFMatrix matrix;
};

struct RepresentsViolation {
    std::size_t i, j;
    FieldElement entry;
    enum Kind { ZeroDiagonal, NonzeroAtNonEdge } kind;
};

struct RepresentsReport {
    bool ok = true;
    std::vector<RepresentsViolation> violations;
};

/// Checks the representing conditions entry by entry; collects every
/// violating index.
inline RepresentsReport represents_check(const FFMatrix& m, const Graph& g) {
    if (m.rows() != m.cols() || m.rows() != g.n()) throw std::invalid_argument("represents_check: dimension mismatch");
    RepresentsReport rep;
    for (std::size_t i = 0; i < g.n(); ++i) {
        auto row = m.row(i);
        for (std::size_t j = 0; j < g.n(); ++j) {
            if (i == j) {
                if (row[j] == 0) {
                    rep.ok = false;
                    rep.violations.push_back({i, j, row[j], RepresentsViolation::ZeroDiagonal});
                }
            } else if (row[j] != 0 && !g.has_edge(i, j)) {
                rep.ok = false;
                rep.violations.push_back({i, j, row[j], RepresentsViolation::NonzeroAtNonEdge});
            }
        }
    }
    return rep;
}

struct MinrankResult {
    std::size_t value = 0;
    bool optimal = false;
    FFMatrix witness;
    std::uint64_t nodes = 0;
};

struct MinrankBounds {
    std::size_t lower = 0;
    std::size_t upper = 0;
};

/// Field-independent sandwich: max(alpha, MAIS for directed graphs) below,
/// clique cover number above.
inline MinrankBounds minrank_bounds(const Graph& g, std::size_t alpha_cap = 30, std::size_t mais_cap = 20,
                                    std::size_t cover_cap = 20) {
    MinrankBounds b;
    b.lower = independence_number(g, alpha_cap);
    if (!g.symmetric()) b.lower = std::max(b.lower, mais(g, mais_cap));
    b.upper = clique_cover_number(g, cover_cap);
    return b;
}

namespace detail {

// Row-by-row search for a rank <= target matrix whose row i is 1 at its
// demanded column (rows are scalable, so unit there without loss), 0 at its
// fixed columns, and free elsewhere. Each row is either a fresh pivot, with
// its free entries enumerated explicitly, or forced into the span of the
// pivots collected so far, which is a pure solvability check on the
// constrained coordinates. Covers both the square graph case (demand = the
// diagonal) and the rectangular shared-request case.
struct RowPatternSearch {
    FieldSpec f;
    std::size_t m = 0, n = 0, target = 0;
    std::uint64_t budget = 0;
    std::uint64_t nodes = 0;
    bool out_of_budget = false;

    std::vector<std::size_t> demand;                   // per row: the column forced to 1
    std::vector<std::vector<std::size_t>> free_cols;   // per row: enumerable columns
    std::vector<std::vector<std::size_t>> fixed_cols;  // per row: demand column + forced zeros

    std::vector<std::vector<FieldElement>> basis;                    // pivot rows, concrete values
    std::vector<std::optional<std::vector<FieldElement>>> assigned;  // per row: values if pivot

    bool tick() {
        if (++nodes > budget) {
            out_of_budget = true;
            return false;
        }
        return true;
    }

    // Is some combination of the basis rows equal to 1 at the demanded column
    // and 0 at the forced zeros of row i? Free coordinates are unconstrained.
    bool span_solvable(std::size_t i, std::vector<FieldElement>* solution) const {
        std::size_t r = basis.size();
        if (r == 0) return false;
        const auto& fixed = fixed_cols[i];
        // columns: lambda_0..lambda_{r-1}; rows: one equation per fixed coord
        std::vector<std::vector<FieldElement>> eq(fixed.size(), std::vector<FieldElement>(r + 1, 0));
        for (std::size_t e = 0; e < fixed.size(); ++e) {
            std::size_t c = fixed[e];
            for (std::size_t t = 0; t < r; ++t) eq[e][t] = basis[t][c];
            eq[e][r] = (c == demand[i]) ? 1 : 0;
        }
        // Gaussian elimination over the field
        std::size_t row = 0;
        std::vector<std::size_t> pivot_col(fixed.size(), SIZE_MAX);
        for (std::size_t col = 0; col < r && row < eq.size(); ++col) {
            std::size_t sel = SIZE_MAX;
            for (std::size_t e = row; e < eq.size(); ++e)
                if (eq[e][col] != 0) {
                    sel = e;
                    break;
                }
            if (sel == SIZE_MAX) continue;
            std::swap(eq[sel], eq[row]);
            FieldElement s = f.inv(eq[row][col]);
            for (std::size_t t = col; t <= r; ++t) eq[row][t] = f.mul(eq[row][t], s);
            for (std::size_t e = 0; e < eq.size(); ++e) {
                if (e == row || eq[e][col] == 0) continue;
                FieldElement factor = eq[e][col];
                for (std::size_t t = col; t <= r; ++t)
                    eq[e][t] = f.sub(eq[e][t], f.mul(factor, eq[row][t]));
            }
            pivot_col[row] = col;
            ++row;
        }
        for (std::size_t e = row; e < eq.size(); ++e)
            if (eq[e][r] != 0) return false;  // 0 = nonzero: inconsistent
        if (solution) {
            solution->assign(r, 0);
            for (std::size_t e = 0; e < row; ++e) (*solution)[pivot_col[e]] = eq[e][r];
        }
        return true;
    }

    bool rows_from(std::size_t i) {
        if (i == m) return true;
        if (!tick()) return false;
        // dependent branch: row i inside the current span
        if (span_solvable(i, nullptr)) {
            assigned[i].reset();
            if (rows_from(i + 1)) return true;
            if (out_of_budget) return false;
        }
        // pivot branch: enumerate free entries, lexicographically
        if (basis.size() < target) {
            const auto& free = free_cols[i];
            std::vector<FieldElement> row(n, 0);
            row[demand[i]] = 1;
            std::vector<FieldElement> vals(free.size(), 0);
            while (true) {
                if (!tick()) return false;
                for (std::size_t t = 0; t < free.size(); ++t) row[free[t]] = vals[t];
                if (independent_of_basis(row)) {
                    basis.push_back(row);
                    assigned[i] = row;
                    if (rows_from(i + 1)) return true;
                    basis.pop_back();
                    if (out_of_budget) return false;
                }
                // next assignment
                std::size_t t = 0;
                while (t < vals.size()) {
                    if (++vals[t] < f.q) break;
                    vals[t] = 0;
                    ++t;
                }
                if (t == vals.size()) break;
            }
        }
        return false;
    }

    bool independent_of_basis(const std::vector<FieldElement>& row) const {
        // reduce a copy against the (unstructured) basis via small elimination
        std::vector<std::vector<FieldElement>> w = basis;
        w.push_back(row);
        std::size_t rk = 0;
        std::vector<bool> used(w.size(), false);
        for (std::size_t col = 0; col < n && rk < w.size(); ++col) {
            std::size_t sel = SIZE_MAX;
            for (std::size_t e = 0; e < w.size(); ++e)
                if (!used[e] && w[e][col] != 0) {
                    sel = e;
                    break;
                }
            if (sel == SIZE_MAX) continue;
            used[sel] = true;
            ++rk;
            FieldElement s = f.inv(w[sel][col]);
            for (std::size_t e = 0; e < w.size(); ++e) {
                if (used[e] || w[e][col] == 0) continue;
                FieldElement factor = f.mul(w[e][col], s);
                for (std::size_t t = col; t < n; ++t) w[e][t] = f.sub(w[e][t], f.mul(factor, w[sel][t]));
            }
        }
        return rk == w.size();
    }

    // After success: materialize dependent rows against the final basis.
    FFMatrix build_witness() const {
        FFMatrix w(f, m, n, 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (assigned[i]) {
                for (std::size_t j = 0; j < n; ++j) w.set(i, j, (*assigned[i])[j]);
                continue;
            }
            std::vector<FieldElement> lambda;
            if (!span_solvable(i, &lambda)) throw std::logic_error("witness reconstruction failed");
            std::vector<FieldElement> row(n, 0);
            for (std::size_t t = 0; t < basis.size(); ++t) {
                if (lambda[t] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) row[j] = f.add(row[j], f.mul(lambda[t], basis[t][j]));
            }
            for (std::size_t j = 0; j < n; ++j) w.set(i, j, row[j]);
        }
        return w;
    }
};

}  // namespace detail

/// A representing matrix of guaranteed-valid shape (unit diagonal, greedy
/// bidirected clique blocks): the cheap upper-bound witness.
inline FFMatrix clique_cover_witness(const Graph& g, const FieldSpec& f) {
    FFMatrix w(f, g.n(), g.n(), 0);
    for (const auto& clique : greedy_clique_cover(g))
        for (std::size_t a : clique)
            for (std::size_t b : clique) w.set(a, b, 1);
    return w;
}

/// Exact minrank with an optimality certificate: iterates candidate ranks
/// upward from alpha(g), returning the first feasible level's witness. If
/// the node budget runs out, returns the best-known upper bound flagged
/// non-optimal.
inline MinrankResult exact_minrank(const Graph& g, const FieldSpec& f, std::uint64_t budget = 20'000'000) {
    if (g.n() == 0) throw std::invalid_argument("exact_minrank: empty graph");
    MinrankResult res;
    std::size_t start = g.n() <= 30 ? independence_number(g) : 1;

    std::vector<std::vector<std::size_t>> free_cols(g.n()), fixed_cols(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        for (std::size_t j = 0; j < g.n(); ++j) {
            if (j == i)
                fixed_cols[i].push_back(j);
            else if (g.has_edge(i, j))
                free_cols[i].push_back(j);
            else
                fixed_cols[i].push_back(j);
        }
    }

    std::vector<std::size_t> demand(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) demand[i] = i;

    std::uint64_t used = 0;
    for (std::size_t r = start; r <= g.n(); ++r) {
        detail::RowPatternSearch s;
        s.f = f;
        s.m = g.n();
        s.n = g.n();
        s.target = r;
        s.budget = budget - used;
        s.demand = demand;
        s.free_cols = free_cols;
        s.fixed_cols = fixed_cols;
        s.assigned.assign(g.n(), std::nullopt);
        bool found = s.rows_from(0);
        used += s.nodes;
        res.nodes = used;
        if (found) {
            res.value = r;
            res.optimal = true;
            res.witness = s.build_witness();
            return res;
        }
        if (s.out_of_budget) {
            res.witness = clique_cover_witness(g, f);
            res.value = rank(res.witness);
            res.optimal = false;
            return res;
        }
    }
    throw std::logic_error("exact_minrank: no representing matrix found (identity always works)");
}

/// Row-normalize to unit diagonal and keep the constant polynomial
/// coefficients: a representing matrix over GF(p^k) becomes one over GF(p)
/// with rank at most k times larger.
inline Representation reduce_representation(const Representation& rep) {
    const FieldSpec& f = rep.field;
    FieldSpec base = make_prime_field(f.p);
    FFMatrix out(base, rep.matrix.rows(), rep.matrix.cols(), 0);
    for (std::size_t i = 0; i < rep.matrix.rows(); ++i) {
        FieldElement scale = f.inv(rep.matrix.at(i, i));
        for (std::size_t j = 0; j < rep.matrix.cols(); ++j) {
            FieldElement v = f.mul(scale, rep.matrix.at(i, j));
            out.set(i, j, v % f.p);  // constant coefficient of the polynomial
        }
    }
    return Representation{rep.graph, base, std::move(out)};
}

struct UnionMinrank {
    std::size_t value = 0;
    FFMatrix witness;
    std::uint64_t nodes = 0;
};

/// Minrank of the disjoint union as the sum of component minranks, with a
/// block-diagonal witness. Throws BudgetExhausted if any component search
/// cannot be certified.
inline UnionMinrank union_minrank(std::span<const Graph> gs, const FieldSpec& f, std::uint64_t budget = 20'000'000) {
    if (gs.empty()) throw std::invalid_argument("union_minrank: empty list");
    UnionMinrank u;
    std::vector<FFMatrix> blocks;
    for (const auto& g : gs) {
        MinrankResult r = exact_minrank(g, f, budget);
        u.nodes += r.nodes;
        if (!r.optimal) throw BudgetExhausted("union_minrank: component budget exhausted");
        u.value += r.value;
        blocks.push_back(std::move(r.witness));
    }
    u.witness = block_diag(blocks);
    return u;
}

}  // namespace indexlab
