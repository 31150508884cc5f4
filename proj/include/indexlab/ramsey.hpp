#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "indexlab/gf.hpp"
#include "indexlab/graph.hpp"
#include "indexlab/matrix.hpp"
#include "indexlab/minrank.hpp"
#include "indexlab/parallel.hpp"

namespace indexlab {

/// Exact nonnegative rational, for the epsilon margin test.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
};

/// Parses a decimal string like "0.51" or "2" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    auto dot = text.find('.');
    std::string ip = dot == std::string::npos ? text : text.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw std::invalid_argument("malformed rational: " + text);
    for (char c : ip + fp)
        if (c < '0' || c > '9') throw std::invalid_argument("malformed rational: " + text);
    if (fp.size() > 18) fp = fp.substr(0, 18);
    Rational r;
    r.num = ip.empty() ? 0 : std::stoull(ip);
    r.den = 1;
    for (char c : fp) {
        r.num = r.num * 10 + static_cast<std::uint64_t>(c - '0');
        r.den *= 10;
    }
    return r;
}

namespace detail {

inline std::uint64_t checked_pow_u64(std::uint64_t base, std::uint32_t exp, const char* what) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (r > UINT64_MAX / base) throw CapExceeded(std::string(what) + " overflows");
        r *= base;
    }
    return r;
}

/// C(n, k) as exact u64; throws on overflow. Each step holds a partial
/// binomial C(n-k+d, d), so intermediates never exceed the result.
inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t d = 1; d <= k; ++d) {
        std::uint64_t m = n - k + d;
        std::uint64_t g = std::gcd(r, d);
        std::uint64_t r2 = r / g, d2 = d / g;
        // r*m/d is the integer C(n-k+d, d) and gcd(r2, d2) = 1, so d2 | m
        std::uint64_t m2 = m / d2;
        if (r2 > UINT64_MAX / m2) throw CapExceeded("binomial overflows u64");
        r = r2 * m2;
    }
    return r;
}

/// Next bitmask with the same popcount in increasing numeric order, which is
/// exactly colexicographic order on the subsets.
inline std::uint64_t next_colex_mask(std::uint64_t v) {
    std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & (t + 1)) - 1) >> (static_cast<unsigned>(std::countr_zero(v)) + 1));
}

/// Position of an s-subset mask in colex order: sum of C(a_i, i+1) over the
/// elements a_0 < a_1 < ... .
inline std::uint64_t colex_rank(std::uint64_t mask) {
    std::uint64_t r = 0, i = 1;
    while (mask != 0) {
        unsigned a = static_cast<unsigned>(std::countr_zero(mask));
        mask &= mask - 1;
        r += binomial_u64(a, i);
        ++i;
    }
    return r;
}

}  // namespace detail

/// The construction parameters: distinct primes p, q with exponents k, l so
/// that q^l < p^k, subset size s = p^k q^l - 1 and canonical ground set size
/// r = p^{3k}. epsilon records the achieved ratio p^k/q^l - 1.
struct RamseyParams {
    std::uint64_t p = 0, q = 0;
    std::uint32_t k = 0, l = 0;
    std::uint64_t r = 0;  ///< canonical p^{3k}
    std::uint64_t s = 0;  ///< p^k q^l - 1
    double epsilon = 0.0;

    std::uint64_t pk() const { return detail::checked_pow_u64(p, k, "p^k"); }
    std::uint64_t ql() const { return detail::checked_pow_u64(q, l, "q^l"); }
};

/// Fills a RamseyParams directly from (p, q, k, l); validates q^l < p^k.
inline RamseyParams make_ramsey_params(std::uint64_t p, std::uint64_t q, std::uint32_t k, std::uint32_t l) {
    if (!detail::is_prime_u64(p) || !detail::is_prime_u64(q)) throw std::invalid_argument("p and q must be prime");
    if (p == q) throw std::invalid_argument("p and q must be distinct");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    RamseyParams pr;
    pr.p = p;
    pr.q = q;
    pr.k = k;
    pr.l = l;
    std::uint64_t pk = pr.pk(), ql = pr.ql();
    if (!(ql < pk)) throw std::invalid_argument("parameters must satisfy q^l < p^k");
    if (pk > UINT64_MAX / ql) throw CapExceeded("p^k * q^l overflows");
    pr.s = pk * ql - 1;
    pr.r = detail::checked_pow_u64(p, 3 * k, "r = p^{3k}");
    pr.epsilon = static_cast<double>(pk) / static_cast<double>(ql) - 1.0;
    return pr;
}

/// Smallest k <= k_max with q^l < p^k < (1 + eps) q^l for l = floor(k log_q p),
/// decided with exact integer comparisons.
inline RamseyParams find_params(std::uint64_t p, std::uint64_t q, const Rational& eps, std::uint32_t k_max = 20) {
    if (!detail::is_prime_u64(p) || !detail::is_prime_u64(q)) throw std::invalid_argument("p and q must be prime");
    if (p == q) throw std::invalid_argument("p and q must be distinct");
    if (eps.num == 0) throw std::invalid_argument("epsilon must be positive");
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        std::uint64_t pk = detail::checked_pow_u64(p, k, "p^k");
        // l = floor(k log_q p) is the largest l with q^l < p^k
        std::uint32_t l = 0;
        std::uint64_t ql = 1;
        while (ql <= pk / q) {
            ql *= q;
            ++l;
        }
        // q^l = p^k is impossible for distinct primes, so ql < pk here
        // p^k < (1 + num/den) q^l  <=>  p^k * den < q^l * (den + num)
        unsigned __int128 lhs = static_cast<unsigned __int128>(pk) * eps.den;
        unsigned __int128 rhs = static_cast<unsigned __int128>(ql) * (eps.den + eps.num);
        if (lhs < rhs) return make_ramsey_params(p, q, k, l);
    }
    throw std::invalid_argument("no k <= k_max satisfies the epsilon margin (larger k may exist)");
}

/// The set-system graph: vertices are the s-subsets of the ground set in
/// colexicographic order; X and Y are adjacent iff |X intersect Y| == -1
/// (mod p^k).
struct RamseyInstance {
    RamseyParams params;
    std::uint64_t r_used = 0;           ///< ground set actually used
    std::vector<std::uint64_t> vertices;  ///< subset bitmasks, colex order
    Graph graph;
};

inline RamseyInstance build_ramsey_graph(const RamseyParams& params, std::optional<std::uint64_t> r_override = {},
                                         std::uint64_t vertex_cap = 1'000'000, unsigned threads = 0) {
    RamseyInstance inst;
    inst.params = params;
    inst.r_used = r_override.value_or(params.r);
    if (inst.r_used < params.s) throw std::invalid_argument("ground set smaller than subset size");
    if (inst.r_used > 63) throw CapExceeded("ground set sizes above 63 are not supported");
    std::uint64_t n = detail::binomial_u64(inst.r_used, params.s);
    if (n > vertex_cap) throw CapExceeded("vertex count C(r,s) exceeds cap");

    inst.vertices.reserve(n);
    std::uint64_t mask = (std::uint64_t{1} << params.s) - 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        inst.vertices.push_back(mask);
        mask = detail::next_colex_mask(mask);
    }

    std::uint64_t pk = params.pk();
    Graph g(n);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> found(resolve_threads(threads));
    parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& out = found[chunk];
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                std::uint64_t c = static_cast<std::uint64_t>(
                    std::popcount(inst.vertices[i] & inst.vertices[j]));
                if (c % pk == pk - 1) out.emplace_back(i, j);
            }
    });
    for (const auto& chunk : found)
        for (auto [i, j] : chunk) g.add_undirected_edge(i, j);
    inst.graph = std::move(g);
    return inst;
}

/// The C(r,s) x C(r,d) containment matrix over f, subsets in colex order.
inline FFMatrix inclusion_matrix(std::uint64_t r, std::uint64_t s, std::uint64_t d, const FieldSpec& f,
                                 std::uint64_t entry_cap = 50'000'000) {
    if (d > s || s > r) throw std::invalid_argument("inclusion_matrix requires d <= s <= r");
    if (r > 63) throw CapExceeded("ground set sizes above 63 are not supported");
    std::uint64_t rows = detail::binomial_u64(r, s);
    std::uint64_t cols = detail::binomial_u64(r, d);
    if (rows > entry_cap / (cols ? cols : 1)) throw CapExceeded("inclusion matrix exceeds entry cap");
    FFMatrix m(f, rows, cols, 0);
    std::uint64_t mask = (std::uint64_t{1} << s) - 1;
    for (std::uint64_t i = 0; i < rows; ++i) {
        // enumerate the d-subsets of this row's set
        if (d == 0) {
            m.set(i, 0, 1);
        } else {
            std::vector<unsigned> elems;
            std::uint64_t t = mask;
            while (t) {
                elems.push_back(static_cast<unsigned>(std::countr_zero(t)));
                t &= t - 1;
            }
            std::vector<unsigned> idx(d);
            for (std::uint64_t v = 0; v < d; ++v) idx[v] = static_cast<unsigned>(v);
            while (true) {
                std::uint64_t bmask = 0;
                for (unsigned v : idx) bmask |= std::uint64_t{1} << elems[v];
                m.set(i, detail::colex_rank(bmask), 1);
                // next combination
                std::size_t t2 = d;
                while (t2 > 0 && idx[t2 - 1] == elems.size() - d + t2 - 1) --t2;
                if (t2 == 0) break;
                ++idx[t2 - 1];
                for (std::size_t v = t2; v < d; ++v) idx[v] = idx[v - 1] + 1;
            }
        }
        mask = detail::next_colex_mask(mask);
    }
    return m;
}

/// Streaming rank of the inclusion matrix M_d over f: rows are generated
/// one at a time and fed to the echelon accumulator, so the tall dimension
/// is never materialized. Stops early at full column rank.
inline std::size_t inclusion_rank_streamed(std::uint64_t r, std::uint64_t s, std::uint64_t d, const FieldSpec& f) {
    if (d > s || s > r) throw std::invalid_argument("inclusion rank requires d <= s <= r");
    if (r > 63) throw CapExceeded("ground set sizes above 63 are not supported");
    std::uint64_t rows = detail::binomial_u64(r, s);
    std::uint64_t cols = detail::binomial_u64(r, d);
    RowEchelon acc(f, cols);
    std::vector<std::uint16_t> row(cols);
    std::vector<unsigned> elems, idx;
    std::uint64_t mask = (std::uint64_t{1} << s) - 1;
    for (std::uint64_t i = 0; i < rows; ++i) {
        std::fill(row.begin(), row.end(), 0);
        if (d == 0) {
            row[0] = 1;
        } else {
            elems.clear();
            std::uint64_t t = mask;
            while (t) {
                elems.push_back(static_cast<unsigned>(std::countr_zero(t)));
                t &= t - 1;
            }
            idx.assign(d, 0);
            for (std::uint64_t v = 0; v < d; ++v) idx[v] = static_cast<unsigned>(v);
            while (true) {
                std::uint64_t bmask = 0;
                for (unsigned v : idx) bmask |= std::uint64_t{1} << elems[v];
                row[detail::colex_rank(bmask)] = 1;
                std::size_t t2 = d;
                while (t2 > 0 && idx[t2 - 1] == elems.size() - d + t2 - 1) --t2;
                if (t2 == 0) break;
                ++idx[t2 - 1];
                for (std::size_t v = t2; v < d; ++v) idx[v] = idx[v - 1] + 1;
            }
        }
        acc.push_row_u16(row);
        if (acc.rank() == cols) break;
        mask = detail::next_colex_mask(mask);
    }
    return acc.rank();
}

struct PQMatrices {
    FFMatrix P;  ///< over GF(p), represents the graph
    FFMatrix Q;  ///< over GF(q), represents the complement
};

/// P and Q from the closed form: entry (A,B) is C(|A^B|, p^k-1) mod p and
/// C(|A^B|, q^l-1) mod q. For instances up to 500 vertices the literal
/// M_d M_d^T products are computed as a cross-check.
inline PQMatrices build_PQ(const RamseyInstance& inst, unsigned threads = 0) {
    std::uint64_t n = inst.vertices.size();
    std::uint64_t pk = inst.params.pk(), ql = inst.params.ql();
    FieldSpec fp = make_prime_field(inst.params.p);
    FieldSpec fq = make_prime_field(inst.params.q);
    FFMatrix P(fp, n, n, 0);
    FFMatrix Q(fq, n, n, 0);
    parallel_chunks(n, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                std::uint64_t c = static_cast<std::uint64_t>(std::popcount(inst.vertices[a] & inst.vertices[b]));
                P.set(a, b, binomial_mod_p(c, pk - 1, inst.params.p));
                Q.set(a, b, binomial_mod_p(c, ql - 1, inst.params.q));
            }
    });
    if (n <= 500) {
        FFMatrix Mp = inclusion_matrix(inst.r_used, inst.params.s, pk - 1, fp);
        FFMatrix Mq = inclusion_matrix(inst.r_used, inst.params.s, ql - 1, fq);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                FieldElement sp = 0, sq = 0;
                for (std::size_t t = 0; t < Mp.cols(); ++t) sp = fp.add(sp, fp.mul(Mp.at(a, t), Mp.at(b, t)));
                for (std::size_t t = 0; t < Mq.cols(); ++t) sq = fq.add(sq, fq.mul(Mq.at(a, t), Mq.at(b, t)));
                if (sp != P.at(a, b) || sq != Q.at(a, b))
                    throw std::logic_error("closed-form P/Q disagrees with literal inclusion product");
            }
    }
    return PQMatrices{std::move(P), std::move(Q)};
}

struct ConstructionReport {
    bool ok = false;
    std::uint64_t n = 0;
    std::size_t violations_P = 0, violations_Q = 0;
    std::size_t rank_p_P = 0, rank_q_Q = 0;
    std::uint64_t col_bound_p = 0, col_bound_q = 0;  ///< C(r, p^k-1), C(r, q^l-1)
    std::uint64_t minrk_lower_q = 0;                 ///< ceil(n / rank_q(Q))
};

/// Verifies that P represents the graph over GF(p) and Q represents its
/// complement over GF(q), and derives the rank bounds and the certified
/// minrank lower bound over GF(q).
inline ConstructionReport verify_construction_with(const RamseyInstance& inst, const PQMatrices& pq) {
    ConstructionReport rep;
    rep.n = inst.vertices.size();
    RepresentsReport rp = represents_check(pq.P, inst.graph);
    RepresentsReport rq = represents_check(pq.Q, complement(inst.graph));
    rep.violations_P = rp.violations.size();
    rep.violations_Q = rq.violations.size();
    rep.ok = rp.ok && rq.ok;
    rep.rank_p_P = rank(pq.P);
    rep.rank_q_Q = rank(pq.Q);
    rep.col_bound_p = detail::binomial_u64(inst.r_used, inst.params.pk() - 1);
    rep.col_bound_q = detail::binomial_u64(inst.r_used, inst.params.ql() - 1);
    rep.minrk_lower_q = (rep.n + rep.rank_q_Q - 1) / rep.rank_q_Q;
    return rep;
}

inline ConstructionReport verify_construction(const RamseyInstance& inst, unsigned threads = 0) {
    return verify_construction_with(inst, build_PQ(inst, threads));
}

struct UnionCapacityWitness {
    Graph H;                               ///< G + complement(G)
    std::vector<std::uint64_t> witness;    ///< 2n vertices of H x H, flattened a*|V(H)|+b
    bool independent = false;
    double capacity_lower = 0.0;           ///< sqrt(2n), certified when independent
};

/// The Shannon-capacity witness for H = G + complement(G): the 2n diagonal
/// pairs (v_i, v'_i), (v'_i, v_i) inside the strong square of H, checked
/// pair-exhaustively without materializing the product graph.
inline UnionCapacityWitness union_with_complement_witness(const Graph& g) {
    std::size_t n = g.n();
    UnionCapacityWitness w;
    w.H = disjoint_union(g, complement(g));
    std::size_t N = 2 * n;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(i, n + i);
    for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(n + i, i);
    for (auto [a, b] : pairs) w.witness.push_back(static_cast<std::uint64_t>(a) * N + b);
    w.independent = true;
    for (std::size_t x = 0; x < pairs.size() && w.independent; ++x)
        for (std::size_t y = x + 1; y < pairs.size(); ++y) {
            auto [a1, b1] = pairs[x];
            auto [a2, b2] = pairs[y];
            bool c1 = (a1 == a2) || w.H.has_edge(a1, a2);
            bool c2 = (b1 == b2) || w.H.has_edge(b1, b2);
            if (c1 && c2) {  // adjacent in the strong square
                w.independent = false;
                break;
            }
        }
    if (w.independent) w.capacity_lower = std::sqrt(static_cast<double>(2 * n));
    return w;
}

inline UnionCapacityWitness build_union_H(const RamseyInstance& inst) {
    auto w = union_with_complement_witness(inst.graph);
    if (!w.independent) throw std::logic_error("union witness failed independence (implementation bug)");
    return w;
}

/// exp(sqrt(2 ln n ln ln n)): the paper-shaped growth rate with the o(1)
/// term set to zero. Diagnostic only, never asserted against.
inline double asymptotic_bound(double n) {
    if (n < 3) throw std::invalid_argument("asymptotic_bound requires n >= 3");
    double ln = std::log(n);
    return std::exp(std::sqrt(2.0 * ln * std::log(ln)));
}

}  // namespace indexlab
