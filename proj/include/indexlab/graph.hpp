#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "indexlab/errors.hpp"

namespace indexlab {

namespace detail {

/// Fixed-width dynamic bit row; adjacency rows and search candidate sets.
class BitRow {
   public:
    BitRow() = default;
    explicit BitRow(std::size_t nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }

    bool intersects(const BitRow& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    void and_with(const BitRow& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    }
    void andnot_with(const BitRow& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    }
    void or_with(const BitRow& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    }

    /// First set bit at or above `from`; size() when none.
    std::size_t next(std::size_t from = 0) const {
        for (std::size_t i = from; i < n_;) {
            std::uint64_t w = w_[i >> 6] >> (i & 63);
            if (w != 0) return i + static_cast<std::size_t>(std::countr_zero(w));
            i = ((i >> 6) + 1) << 6;
        }
        return n_;
    }

    bool operator==(const BitRow& o) const { return n_ == o.n_ && w_ == o.w_; }

   private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace detail

/// Directed graph on vertices 0..n-1 with bit-set adjacency rows.
/// Undirected graphs are stored as symmetric directed graphs.
class Graph {
   public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), rows_(n, detail::BitRow(n)) {}

    std::size_t n() const { return n_; }
    bool has_edge(std::size_t i, std::size_t j) const { return rows_[i].test(j); }

    void add_edge(std::size_t i, std::size_t j) {
        if (i >= n_ || j >= n_) throw std::invalid_argument("edge endpoint out of range");
        if (i == j) throw std::invalid_argument("self-loops are not allowed");
        rows_[i].set(j);
    }
    void add_undirected_edge(std::size_t i, std::size_t j) {
        add_edge(i, j);
        add_edge(j, i);
    }

    const detail::BitRow& out_row(std::size_t i) const { return rows_[i]; }

    std::vector<std::size_t> out_neighbors(std::size_t i) const {
        std::vector<std::size_t> r;
        for (std::size_t j = rows_[i].next(0); j < n_; j = rows_[i].next(j + 1)) r.push_back(j);
        return r;
    }

    std::size_t edge_count() const {
        std::size_t c = 0;
        for (const auto& r : rows_) c += r.count();
        return c;
    }

    bool symmetric() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (has_edge(i, j) != has_edge(j, i)) return false;
        return true;
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> e;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = rows_[i].next(0); j < n_; j = rows_[i].next(j + 1)) e.emplace_back(i, j);
        return e;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

   private:
    std::size_t n_ = 0;
    std::vector<detail::BitRow> rows_;
};

// ---- named constructions -------------------------------------------------

inline Graph empty_graph(std::size_t n) { return Graph(n); }

inline Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) g.add_edge(i, j);
    return g;
}

inline Graph cycle_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i) g.add_undirected_edge(i, (i + 1) % n);
    return g;
}

inline Graph path_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_undirected_edge(i, i + 1);
    return g;
}

/// Edges (i, j) for all i < j.
inline Graph transitive_tournament(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline Graph reverse(const Graph& g) {
    Graph r(g.n());
    for (auto [i, j] : g.edges()) r.add_edge(j, i);
    return r;
}

// ---- operators -----------------------------------------------------------

inline Graph complement(const Graph& g) {
    Graph c(g.n());
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = 0; j < g.n(); ++j)
            if (i != j && !g.has_edge(i, j)) c.add_edge(i, j);
    return c;
}

/// Strong product; vertex (i1, i2) flattened as i1*n2 + i2. Distinct vertices
/// are adjacent iff each coordinate is equal or an edge.
inline Graph strong_product(const Graph& g1, const Graph& g2) {
    std::size_t n1 = g1.n(), n2 = g2.n();
    Graph p(n1 * n2);
    for (std::size_t u1 = 0; u1 < n1; ++u1)
        for (std::size_t u2 = 0; u2 < n2; ++u2)
            for (std::size_t v1 = 0; v1 < n1; ++v1)
                for (std::size_t v2 = 0; v2 < n2; ++v2) {
                    if (u1 == v1 && u2 == v2) continue;
                    bool c1 = (u1 == v1) || g1.has_edge(u1, v1);
                    bool c2 = (u2 == v2) || g2.has_edge(u2, v2);
                    if (c1 && c2) p.add_edge(u1 * n2 + u2, v1 * n2 + v2);
                }
    return p;
}

/// t-blow-up with independent copies; vertex (u, i) flattened as u*t + i.
inline Graph blow_up(const Graph& g, std::size_t t) {
    if (t == 0) throw std::invalid_argument("blow_up: t must be >= 1");
    Graph b(g.n() * t);
    for (std::size_t u = 0; u < g.n(); ++u)
        for (std::size_t v = 0; v < g.n(); ++v) {
            if (!g.has_edge(u, v)) continue;
            for (std::size_t i = 0; i < t; ++i)
                for (std::size_t j = 0; j < t; ++j) b.add_edge(u * t + i, v * t + j);
        }
    return b;
}

/// Round composition; vertex (i, k) flattened as i*t + k. Edge
/// ((i1,k1),(i2,k2)) iff (i1,i2) is an edge of gs[k2].
inline Graph compose(std::span<const Graph> gs) {
    if (gs.empty()) throw std::invalid_argument("compose: empty list");
    std::size_t n = gs[0].n(), t = gs.size();
    for (const auto& g : gs)
        if (g.n() != n) throw std::invalid_argument("compose: size mismatch");
    Graph c(n * t);
    for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t k1 = 0; k1 < t; ++k1)
            for (std::size_t i2 = 0; i2 < n; ++i2)
                for (std::size_t k2 = 0; k2 < t; ++k2) {
                    if (i1 == i2) continue;  // no self-edge in any round graph
                    if (gs[k2].has_edge(i1, i2)) c.add_edge(i1 * t + k1, i2 * t + k2);
                }
    return c;
}

inline Graph disjoint_union(std::span<const Graph> gs) {
    if (gs.empty()) throw std::invalid_argument("disjoint_union: empty list");
    std::size_t n = 0;
    for (const auto& g : gs) n += g.n();
    Graph u(n);
    std::size_t off = 0;
    for (const auto& g : gs) {
        for (auto [i, j] : g.edges()) u.add_edge(off + i, off + j);
        off += g.n();
    }
    return u;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph gs[2] = {a, b};
    return disjoint_union(std::span<const Graph>(gs, 2));
}

inline Graph induced_subgraph(const Graph& g, std::span<const std::size_t> vertices) {
    Graph s(vertices.size());
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = 0; b < vertices.size(); ++b)
            if (a != b && g.has_edge(vertices[a], vertices[b])) s.add_edge(a, b);
    return s;
}

// ---- exact invariants ------------------------------------------------------

namespace detail {

// Adjacency symmetrized over direction: a set is independent iff it spans no
// edge in either direction.
inline std::vector<BitRow> union_adjacency(const Graph& g) {
    std::vector<BitRow> rows(g.n(), BitRow(g.n()));
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = 0; j < g.n(); ++j)
            if (i != j && (g.has_edge(i, j) || g.has_edge(j, i))) rows[i].set(j);
    return rows;
}

// Bidirected core: edges present in both directions.
inline std::vector<BitRow> bidirected_adjacency(const Graph& g) {
    std::vector<BitRow> rows(g.n(), BitRow(g.n()));
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = 0; j < g.n(); ++j)
            if (i != j && g.has_edge(i, j) && g.has_edge(j, i)) rows[i].set(j);
    return rows;
}

struct MisSearch {
    const std::vector<BitRow>* adj;
    std::size_t best = 0;

    void run(BitRow cand, std::size_t have) {
        std::size_t c = cand.count();
        if (have + c <= best) return;
        std::size_t v = cand.next(0);
        if (v == cand.size()) {
            best = std::max(best, have);
            return;
        }
        // branch on a candidate of maximum remaining degree
        std::size_t pick = v, deg = 0;
        for (std::size_t u = v; u < cand.size(); u = cand.next(u + 1)) {
            BitRow t = (*adj)[u];
            t.and_with(cand);
            std::size_t d = t.count();
            if (d > deg) {
                deg = d;
                pick = u;
            }
        }
        BitRow with = cand;
        with.reset(pick);
        with.andnot_with((*adj)[pick]);
        run(with, have + 1);
        if (have + c - 1 > best) {
            BitRow without = cand;
            without.reset(pick);
            run(without, have);
        }
    }
};

inline std::size_t max_independent_set(const std::vector<BitRow>& adj, std::size_t n) {
    MisSearch s;
    s.adj = &adj;
    BitRow all(n);
    for (std::size_t i = 0; i < n; ++i) all.set(i);
    s.run(all, 0);
    return s.best;
}

// Any directed cycle in the induced subgraph on `mask` (2-cycles first),
// empty when acyclic.
inline std::vector<std::size_t> find_cycle(const Graph& g, std::uint64_t mask) {
    std::size_t n = g.n();
    for (std::size_t i = 0; i < n; ++i) {
        if (!((mask >> i) & 1)) continue;
        for (std::size_t j = i + 1; j < n; ++j)
            if (((mask >> j) & 1) && g.has_edge(i, j) && g.has_edge(j, i)) return {i, j};
    }
    // DFS with colors; back edge closes a cycle
    std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
    std::vector<std::size_t> parent(n, SIZE_MAX);
    for (std::size_t s = 0; s < n; ++s) {
        if (!((mask >> s) & 1) || state[s] != 0) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
        state[s] = 1;
        while (!stack.empty()) {
            auto& [v, it] = stack.back();
            bool advanced = false;
            for (std::size_t j = it; j < n; ++j) {
                if (!((mask >> j) & 1) || !g.has_edge(v, j)) continue;
                it = j + 1;
                if (state[j] == 1) {
                    // unwind v -> ... -> j
                    std::vector<std::size_t> cyc{j};
                    std::size_t w = v;
                    while (w != j) {
                        cyc.push_back(w);
                        w = parent[w];
                    }
                    return cyc;
                }
                if (state[j] == 0) {
                    state[j] = 1;
                    parent[j] = v;
                    stack.emplace_back(j, 0);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return {};
}

struct MaisSearch {
    const Graph* g;
    std::size_t best = 0;
    std::unordered_map<std::uint64_t, bool> seen;

    void run(std::uint64_t mask) {
        std::size_t size = static_cast<std::size_t>(std::popcount(mask));
        if (size <= best) return;
        if (seen.count(mask)) return;
        seen.emplace(mask, true);
        auto cyc = find_cycle(*g, mask);
        if (cyc.empty()) {
            best = std::max(best, size);
            return;
        }
        for (std::size_t v : cyc) run(mask & ~(std::uint64_t{1} << v));
    }
};

struct ColoringSearch {
    const std::vector<BitRow>* adj;
    std::size_t n, k;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> color;
    std::vector<int> witness;
    bool found = false;

    bool feasible(std::size_t v, int c) const {
        const BitRow& row = (*adj)[v];
        for (std::size_t u = row.next(0); u < n; u = row.next(u + 1))
            if (color[u] == c) return false;
        return true;
    }

    // DSATUR branch and bound: color the most saturated uncolored vertex,
    // trying used colors plus at most one fresh color.
    bool run(std::size_t colored, int used) {
        if (++nodes > budget) throw BudgetExhausted("coloring budget exhausted");
        if (colored == n) {
            witness = color;
            return found = true;
        }
        std::size_t pick = SIZE_MAX, psat = 0, pdeg = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (color[v] >= 0) continue;
            std::uint64_t satmask = 0;
            const BitRow& row = (*adj)[v];
            std::size_t deg = 0;
            for (std::size_t u = row.next(0); u < n; u = row.next(u + 1)) {
                ++deg;
                if (color[u] >= 0) satmask |= (std::uint64_t{1} << (color[u] & 63));
            }
            std::size_t sat = static_cast<std::size_t>(std::popcount(satmask));
            if (pick == SIZE_MAX || sat > psat || (sat == psat && deg > pdeg)) {
                pick = v;
                psat = sat;
                pdeg = deg;
            }
        }
        int limit = std::min<int>(static_cast<int>(k), used + 1);
        for (int c = 0; c < limit; ++c) {
            if (!feasible(pick, c)) continue;
            color[pick] = c;
            if (run(colored + 1, std::max(used, c + 1))) return true;
            color[pick] = -1;
        }
        return false;
    }
};

inline bool k_colorable(const std::vector<BitRow>& adj, std::size_t n, std::size_t k, std::uint64_t budget,
                        std::vector<int>* witness) {
    if (n == 0) return true;
    if (k == 0) return false;
    ColoringSearch s;
    s.adj = &adj;
    s.n = n;
    s.k = k;
    s.budget = budget;
    s.color.assign(n, -1);
    bool ok = s.run(0, 0);
    if (ok && witness) *witness = s.witness;
    return ok;
}

inline std::size_t greedy_clique(const std::vector<BitRow>& adj, std::size_t n) {
    std::size_t best = n == 0 ? 0 : 1;
    for (std::size_t seed = 0; seed < n; ++seed) {
        BitRow cand = adj[seed];
        std::size_t size = 1;
        while (true) {
            // extend by the candidate with most candidate-neighbors
            std::size_t pick = n, deg = 0;
            bool any = false;
            for (std::size_t u = cand.next(0); u < n; u = cand.next(u + 1)) {
                BitRow t = adj[u];
                t.and_with(cand);
                std::size_t d = t.count() + 1;
                if (!any || d > deg) {
                    any = true;
                    deg = d;
                    pick = u;
                }
            }
            if (!any) break;
            ++size;
            cand.and_with(adj[pick]);
        }
        best = std::max(best, size);
    }
    return best;
}

inline std::size_t chromatic_number(const std::vector<BitRow>& adj, std::size_t n, std::uint64_t budget,
                                    std::vector<int>* witness = nullptr) {
    if (n == 0) return 0;
    std::size_t lo = greedy_clique(adj, n);
    for (std::size_t k = lo;; ++k) {
        if (k_colorable(adj, n, k, budget, witness)) return k;
    }
}

}  // namespace detail

/// Exact independence number (direction-blind) by branch and bound.
inline std::size_t independence_number(const Graph& g, std::size_t cap = 30) {
    if (g.n() > cap) throw CapExceeded("independence_number: vertex count exceeds cap");
    if (g.n() == 0) return 0;
    return detail::max_independent_set(detail::union_adjacency(g), g.n());
}

/// Exact maximum induced acyclic subgraph size; 2-cycles count as cycles.
inline std::size_t mais(const Graph& g, std::size_t cap = 20) {
    if (g.n() > cap) throw CapExceeded("mais: vertex count exceeds cap");
    if (g.n() > 64) throw CapExceeded("mais: supported only up to 64 vertices");
    if (g.n() == 0) return 0;
    detail::MaisSearch s;
    s.g = &g;
    std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.n()) - 1);
    s.run(all);
    return s.best;
}

/// Exact chromatic number of the complement of the bidirected core: the
/// minimum number of (bidirected) cliques covering the vertices.
inline std::size_t clique_cover_number(const Graph& g, std::size_t cap = 20, std::uint64_t budget = 50'000'000) {
    if (g.n() > cap) throw CapExceeded("clique_cover_number: vertex count exceeds cap");
    if (g.n() == 0) return 0;
    auto core = detail::bidirected_adjacency(g);
    std::vector<detail::BitRow> comp(g.n(), detail::BitRow(g.n()));
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = 0; j < g.n(); ++j)
            if (i != j && !core[i].test(j)) comp[i].set(j);
    return detail::chromatic_number(comp, g.n(), budget);
}

/// Greedy cover of the vertices by bidirected cliques; used as a cheap upper
/// bound witness. Returns the list of cliques.
inline std::vector<std::vector<std::size_t>> greedy_clique_cover(const Graph& g) {
    auto core = detail::bidirected_adjacency(g);
    std::vector<bool> used(g.n(), false);
    std::vector<std::vector<std::size_t>> cliques;
    for (std::size_t v = 0; v < g.n(); ++v) {
        if (used[v]) continue;
        std::vector<std::size_t> cl{v};
        used[v] = true;
        for (std::size_t u = v + 1; u < g.n(); ++u) {
            if (used[u]) continue;
            bool ok = true;
            for (std::size_t w : cl)
                if (!core[u].test(w)) {
                    ok = false;
                    break;
                }
            if (ok) {
                cl.push_back(u);
                used[u] = true;
            }
        }
        cliques.push_back(std::move(cl));
    }
    return cliques;
}

}  // namespace indexlab
