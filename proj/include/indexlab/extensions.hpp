#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "indexlab/graph.hpp"
#include "indexlab/indexcode.hpp"
#include "indexlab/matrix.hpp"
#include "indexlab/minrank.hpp"

namespace indexlab {

/// A shared-request instance: m receivers over n bits; receiver i knows the
/// bits flagged in its row of `knows` and demands bit wants[i]. No receiver
/// knows its own demanded bit.
struct P4Instance {
    std::size_t m = 0, n = 0;
    std::vector<std::size_t> wants;            ///< per receiver, in [0, n)
    std::vector<std::vector<bool>> knows;      ///< m x n
};

inline void validate(const P4Instance& inst) {
    if (inst.wants.size() != inst.m || inst.knows.size() != inst.m)
        throw std::invalid_argument("P4 instance shape mismatch");
    for (std::size_t i = 0; i < inst.m; ++i) {
        if (inst.knows[i].size() != inst.n) throw std::invalid_argument("P4 instance shape mismatch");
        if (inst.wants[i] >= inst.n) throw std::invalid_argument("P4 demand out of range");
        if (inst.knows[i][inst.wants[i]])
            throw std::invalid_argument("a receiver must not know its own demanded bit");
    }
}

/// Splits receivers demanding several bits into clones with identical side
/// information, one per demanded bit: the reduction to single demands.
inline P4Instance p4_from_multi_demand(std::size_t n, const std::vector<std::vector<std::size_t>>& demands,
                                       const std::vector<std::vector<bool>>& knows) {
    if (demands.size() != knows.size()) throw std::invalid_argument("shape mismatch");
    P4Instance inst;
    inst.n = n;
    for (std::size_t i = 0; i < demands.size(); ++i)
        for (std::size_t w : demands[i]) {
            inst.wants.push_back(w);
            inst.knows.push_back(knows[i]);
        }
    inst.m = inst.wants.size();
    validate(inst);
    return inst;
}

/// The reduction graphs of an extended problem, with the vertex bookkeeping
/// (vertex v corresponds to bit `bit[v]` of round `round[v]`).
struct ReducedProblem {
    Graph graph;
    std::vector<std::size_t> bit;
    std::vector<std::size_t> round;
};

/// Problem 2/2': t rounds over one graph reduce to the t-blow-up.
inline ReducedProblem reduce_blowup(const Graph& g, std::size_t t) {
    ReducedProblem r;
    r.graph = blow_up(g, t);
    for (std::size_t u = 0; u < g.n(); ++u)
        for (std::size_t k = 0; k < t; ++k) {
            r.bit.push_back(u);
            r.round.push_back(k);
        }
    return r;
}

/// Problem 3: per-round graphs reduce to the composition.
inline ReducedProblem reduce_compose(std::span<const Graph> gs) {
    ReducedProblem r;
    r.graph = compose(gs);
    std::size_t n = gs.empty() ? 0 : gs[0].n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < gs.size(); ++k) {
            r.bit.push_back(i);
            r.round.push_back(k);
        }
    return r;
}

/// The two bounding graphs of Claim 4.5: receivers sharing a demand form an
/// independent set in g_ind and a bidirected clique in g_cl; otherwise
/// (i, j) is an edge iff receiver i knows the bit receiver j demands.
struct P4Graphs {
    Graph g_ind;
    Graph g_cl;
};

inline P4Graphs build_gind_gcl(const P4Instance& inst) {
    validate(inst);
    P4Graphs g{Graph(inst.m), Graph(inst.m)};
    for (std::size_t i = 0; i < inst.m; ++i)
        for (std::size_t j = 0; j < inst.m; ++j) {
            if (i == j) continue;
            if (inst.wants[i] == inst.wants[j]) {
                g.g_cl.add_edge(i, j);
            } else if (inst.knows[i][inst.wants[j]]) {
                g.g_ind.add_edge(i, j);
                g.g_cl.add_edge(i, j);
            }
        }
    return g;
}

/// Representing condition for the m x n case: nonzero where a receiver
/// demands, zero where it neither demands nor knows.
inline RepresentsReport p4_represents_check(const FFMatrix& b, const P4Instance& inst) {
    if (b.rows() != inst.m || b.cols() != inst.n) throw std::invalid_argument("p4_represents_check: dimension mismatch");
    RepresentsReport rep;
    for (std::size_t i = 0; i < inst.m; ++i)
        for (std::size_t j = 0; j < inst.n; ++j) {
            if (j == inst.wants[i]) {
                if (b.at(i, j) == 0) {
                    rep.ok = false;
                    rep.violations.push_back({i, j, b.at(i, j), RepresentsViolation::ZeroDiagonal});
                }
            } else if (!inst.knows[i][j] && b.at(i, j) != 0) {
                rep.ok = false;
                rep.violations.push_back({i, j, b.at(i, j), RepresentsViolation::NonzeroAtNonEdge});
            }
        }
    return rep;
}

/// Exact minimum rank over m x n matrices passing p4_represents_check; the
/// same row-pattern search as exact_minrank, with the demanded column in the
/// diagonal role.
inline MinrankResult p4_minrank(const P4Instance& inst, const FieldSpec& f, std::uint64_t budget = 20'000'000) {
    validate(inst);
    std::vector<std::vector<std::size_t>> free_cols(inst.m), fixed_cols(inst.m);
    for (std::size_t i = 0; i < inst.m; ++i)
        for (std::size_t j = 0; j < inst.n; ++j) {
            if (j == inst.wants[i])
                fixed_cols[i].push_back(j);
            else if (inst.knows[i][j])
                free_cols[i].push_back(j);
            else
                fixed_cols[i].push_back(j);
        }
    MinrankResult res;
    std::uint64_t used = 0;
    for (std::size_t r = 1; r <= std::min(inst.m, inst.n); ++r) {
        detail::RowPatternSearch s;
        s.f = f;
        s.m = inst.m;
        s.n = inst.n;
        s.target = r;
        s.budget = budget - used;
        s.demand = inst.wants;
        s.free_cols = free_cols;
        s.fixed_cols = fixed_cols;
        s.assigned.assign(inst.m, std::nullopt);
        bool found = s.rows_from(0);
        used += s.nodes;
        res.nodes = used;
        if (found) {
            res.value = r;
            res.optimal = true;
            res.witness = s.build_witness();
            return res;
        }
        if (s.out_of_budget) throw BudgetExhausted("p4_minrank: node budget exhausted");
    }
    throw std::logic_error("p4_minrank: no representing matrix found");
}

/// Confusion-style oracle for shared requests: words are confusable iff some
/// receiver demands a differing bit while its known bits agree.
inline ConfusionGraph p4_confusion_graph(const P4Instance& inst, std::size_t cap = 8) {
    validate(inst);
    if (inst.n > cap) throw CapExceeded("p4_confusion_graph: bit count exceeds cap");
    std::size_t words = std::size_t{1} << inst.n;
    std::vector<std::uint32_t> know_mask(inst.m, 0);
    for (std::size_t i = 0; i < inst.m; ++i)
        for (std::size_t j = 0; j < inst.n; ++j)
            if (inst.knows[i][j]) know_mask[i] |= (std::uint32_t{1} << j);
    ConfusionGraph c;
    c.n = inst.n;
    c.g = Graph(words);
    for (std::size_t x = 0; x < words; ++x)
        for (std::size_t y = x + 1; y < words; ++y) {
            std::uint32_t diff = static_cast<std::uint32_t>(x ^ y);
            for (std::size_t i = 0; i < inst.m; ++i) {
                if (!((diff >> inst.wants[i]) & 1)) continue;
                if ((diff & know_mask[i]) == 0) {
                    c.g.add_undirected_edge(x, y);
                    break;
                }
            }
        }
    return c;
}

/// Exact optimal length for a shared-request instance, via its confusion
/// graph.
inline EllResult p4_exact_ell(const P4Instance& inst, std::size_t cap = 8, std::uint64_t budget = 50'000'000) {
    ConfusionGraph c = p4_confusion_graph(inst, cap);
    auto adj = detail::union_adjacency(c.g);
    std::size_t clique = detail::greedy_clique(adj, c.g.n());
    EllResult res;
    std::size_t ell = 0;
    while ((std::size_t{1} << ell) < clique) ++ell;
    for (;; ++ell) {
        std::vector<int> witness;
        if (detail::k_colorable(adj, c.g.n(), std::size_t{1} << ell, budget, &witness)) {
            res.ell = ell;
            res.coloring = std::move(witness);
            return res;
        }
    }
}

}  // namespace indexlab
