#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "indexlab/bigint.hpp"
#include "indexlab/graph.hpp"
#include "indexlab/matrix.hpp"
#include "indexlab/minrank.hpp"

namespace indexlab {

/// A codeword is a bit string, most significant bit first.
using Codeword = std::vector<std::uint8_t>;

/// Side information handed to a decoder: the values of x on exactly the
/// out-neighborhood of the receiver, sorted by index.
using SideInfo = std::vector<std::pair<std::size_t, std::uint8_t>>;

inline SideInfo side_for(const Graph& g, std::size_t i, std::span<const std::uint8_t> x) {
    SideInfo s;
    for (std::size_t j : g.out_neighbors(i)) s.emplace_back(j, x[j]);
    return s;
}

/// The Prop-2.1 linear scheme: transmit the basis inner products
/// (u_1*x, ..., u_r*x), packed positionally base |F| and emitted as
/// ceil(r*log2|F|) bits.
class LinearIndexCode {
   public:
    LinearIndexCode(Graph g, FFMatrix m) : graph_(std::move(g)), matrix_(std::move(m)) {
        RepresentsReport rep = represents_check(matrix_, graph_);
        if (!rep.ok) throw std::invalid_argument("matrix does not represent the graph");
        basis_ = row_basis(matrix_);
        const FieldSpec& f = field();
        std::size_t r = basis_.rows();
        // length in bits: smallest L with 2^L >= |F|^r, exactly
        length_bits_ = detail::BigUInt::pow(f.q, static_cast<std::uint32_t>(r)).ceil_log2();
        // coordinates of every matrix row in the basis, via an augmented echelon
        RowEchelon acc(f, matrix_.cols() + r);
        std::vector<FieldElement> ext(matrix_.cols() + r, 0);
        for (std::size_t t = 0; t < r; ++t) {
            auto row = basis_.row(t);
            std::copy(row.begin(), row.end(), ext.begin());
            std::fill(ext.begin() + matrix_.cols(), ext.end(), 0);
            ext[matrix_.cols() + t] = 1;
            acc.push_row(ext);
        }
        row_coeffs_.assign(graph_.n(), {});
        std::vector<std::uint16_t> work(matrix_.cols() + r);
        for (std::size_t i = 0; i < graph_.n(); ++i) {
            auto row = matrix_.row(i);
            for (std::size_t j = 0; j < matrix_.cols(); ++j) work[j] = static_cast<std::uint16_t>(row[j]);
            std::fill(work.begin() + matrix_.cols(), work.end(), 0);
            acc.reduce_in_place(work);
            for (std::size_t j = 0; j < matrix_.cols(); ++j)
                if (work[j] != 0) throw std::logic_error("matrix row escapes its own row basis");
            row_coeffs_[i].assign(r, 0);
            for (std::size_t t = 0; t < r; ++t) row_coeffs_[i][t] = f.neg(work[matrix_.cols() + t]);
        }
    }

    const Graph& graph() const { return graph_; }
    const FieldSpec& field() const { return matrix_.field(); }
    const FFMatrix& matrix() const { return matrix_; }
    const FFMatrix& basis() const { return basis_; }
    std::size_t length_bits() const { return length_bits_; }

    Codeword encode(std::span<const std::uint8_t> x) const {
        if (x.size() != graph_.n()) throw std::invalid_argument("encode: input length mismatch");
        std::vector<FieldElement> fx(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x[j] > 1) throw std::invalid_argument("encode: input must be binary");
            fx[j] = x[j];
        }
        std::vector<FieldElement> syms = mat_vec(basis_, fx);
        detail::BigUInt packed;
        for (FieldElement s : syms) {
            packed.mul_small(field().q);
            packed.add_small(s);
        }
        Codeword out(length_bits_, 0);
        for (std::size_t b = 0; b < length_bits_; ++b)
            out[b] = packed.bit(length_bits_ - 1 - b) ? 1 : 0;
        return out;
    }

    std::uint8_t decode(std::size_t i, const Codeword& cw, const SideInfo& side) const {
        if (i >= graph_.n()) throw std::invalid_argument("decode: receiver out of range");
        if (cw.size() != length_bits_) throw std::invalid_argument("decode: malformed codeword");
        const FieldSpec& f = field();
        // unpack the base-|F| symbols
        detail::BigUInt packed;
        for (std::uint8_t b : cw) {
            if (b > 1) throw std::invalid_argument("decode: malformed codeword");
            packed.mul_small(2);
            packed.add_small(b);
        }
        std::size_t r = basis_.rows();
        std::vector<FieldElement> syms(r, 0);
        for (std::size_t t = r; t-- > 0;) syms[t] = packed.divmod_small(f.q);
        if (!packed.is_zero()) throw std::invalid_argument("decode: codeword out of range");
        // (Ax)_i from the basis symbols
        FieldElement axi = 0;
        for (std::size_t t = 0; t < r; ++t)
            if (row_coeffs_[i][t] != 0 && syms[t] != 0) axi = f.add(axi, f.mul(row_coeffs_[i][t], syms[t]));
        // subtract the known side contribution and divide by the diagonal
        auto nbrs = graph_.out_neighbors(i);
        if (side.size() != nbrs.size()) throw std::invalid_argument("decode: side information mismatch");
        FieldElement known = 0;
        for (std::size_t t = 0; t < nbrs.size(); ++t) {
            if (side[t].first != nbrs[t]) throw std::invalid_argument("decode: side information mismatch");
            if (side[t].second > 1) throw std::invalid_argument("decode: side bits must be binary");
            if (side[t].second != 0) known = f.add(known, matrix_.at(i, nbrs[t]));
        }
        FieldElement xi = f.mul(f.inv(matrix_.at(i, i)), f.sub(axi, known));
        if (xi > 1) throw std::invalid_argument("decode: inconsistent codeword/side information");
        return static_cast<std::uint8_t>(xi);
    }

   private:
    Graph graph_;
    FFMatrix matrix_;
    FFMatrix basis_;
    std::vector<std::vector<FieldElement>> row_coeffs_;  // n x r
    std::size_t length_bits_ = 0;
};

inline LinearIndexCode code_from_matrix(const Graph& g, const FFMatrix& m) { return LinearIndexCode(g, m); }

// ---- confusion-graph oracle ------------------------------------------------

/// Graph on all 2^n input words; two words are confusable iff some receiver
/// must distinguish them but cannot: they differ at i yet agree on N+(i).
struct ConfusionGraph {
    std::size_t n = 0;
    Graph g;  ///< 2^n vertices
};

inline ConfusionGraph confusion_graph(const Graph& g, std::size_t cap = 8) {
    if (g.n() > cap) throw CapExceeded("confusion_graph: vertex count exceeds cap");
    if (g.n() > 20) throw CapExceeded("confusion_graph: refuses 2^n beyond a million words");
    std::size_t n = g.n();
    std::size_t words = std::size_t{1} << n;
    std::vector<std::uint32_t> nbr_mask(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : g.out_neighbors(i)) nbr_mask[i] |= (std::uint32_t{1} << j);
    ConfusionGraph c;
    c.n = n;
    c.g = Graph(words);
    for (std::size_t x = 0; x < words; ++x)
        for (std::size_t y = x + 1; y < words; ++y) {
            std::uint32_t diff = static_cast<std::uint32_t>(x ^ y);
            for (std::size_t i = 0; i < n; ++i) {
                if (!((diff >> i) & 1)) continue;
                if ((diff & nbr_mask[i]) == 0) {  // differ at i, agree on N+(i)
                    c.g.add_undirected_edge(x, y);
                    break;
                }
            }
        }
    return c;
}

struct EllResult {
    std::size_t ell = 0;
    std::vector<int> coloring;  ///< color of each input word: the optimal encoder
    std::uint64_t nodes = 0;
};

/// Exact ell(G) via the confusion graph: an ell-bit index code is exactly a
/// proper coloring with at most 2^ell colors. Returns the witness coloring,
/// an explicit (generally non-linear) optimal encoder.
inline EllResult exact_ell(const Graph& g, std::size_t cap = 6, std::uint64_t budget = 50'000'000) {
    ConfusionGraph c = confusion_graph(g, cap);
    std::size_t words = c.g.n();
    auto adj = detail::union_adjacency(c.g);
    std::size_t clique = detail::greedy_clique(adj, words);
    EllResult res;
    std::size_t ell = 0;
    while ((std::size_t{1} << ell) < clique) ++ell;
    for (;; ++ell) {
        std::vector<int> witness;
        if (detail::k_colorable(adj, words, std::size_t{1} << ell, budget, &witness)) {
            res.ell = ell;
            res.coloring = std::move(witness);
            return res;
        }
    }
}

/// Smallest ell such that some ell x n GF(2) encoding matrix separates every
/// confusable pair; also checks it equals minrank over GF(2) (the [4]
/// optimality of linear codes, verified constructively at tiny scale).
inline std::size_t exact_linear_ell(const Graph& g, std::size_t max_ell = 4) {
    if (g.n() > 4 || max_ell > 4) throw CapExceeded("exact_linear_ell: supported only for n <= 4, ell <= 4");
    ConfusionGraph c = confusion_graph(g, 8);
    std::size_t n = g.n();
    auto pairs = c.g.edges();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> conf;
    for (auto [x, y] : pairs)
        if (x < y) conf.emplace_back(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));

    std::size_t found = SIZE_MAX;
    for (std::size_t ell = 0; ell <= max_ell && found == SIZE_MAX; ++ell) {
        std::size_t mats = std::size_t{1} << (ell * n);
        for (std::size_t m = 0; m < mats; ++m) {
            bool ok = true;
            for (auto [x, y] : conf) {
                // rows of the matrix are consecutive n-bit slices of m
                bool separated = false;
                for (std::size_t t = 0; t < ell; ++t) {
                    std::uint32_t row = static_cast<std::uint32_t>((m >> (t * n)) & ((1u << n) - 1));
                    if (std::popcount(row & x) % 2 != std::popcount(row & y) % 2) {
                        separated = true;
                        break;
                    }
                }
                if (!separated) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                found = ell;
                break;
            }
        }
    }
    if (found == SIZE_MAX) throw CapExceeded("exact_linear_ell: no encoder within max_ell");
    MinrankResult mr = exact_minrank(g, make_prime_field(2));
    if (!mr.optimal || mr.value != found)
        throw std::logic_error("optimal linear length disagrees with minrank over GF(2)");
    return found;
}

// ---- code combinators -------------------------------------------------------

/// Concatenation over a vertex partition: each part runs its own code on the
/// induced subgraph; receivers use only side information inside their part.
class CompositeCode {
   public:
    CompositeCode(Graph g, std::vector<std::pair<std::vector<std::size_t>, LinearIndexCode>> parts)
        : graph_(std::move(g)), parts_(std::move(parts)) {
        std::vector<bool> seen(graph_.n(), false);
        for (const auto& [verts, code] : parts_) {
            if (code.graph() != induced_subgraph(graph_, verts))
                throw std::invalid_argument("part code does not match the induced subgraph");
            for (std::size_t v : verts) {
                if (v >= graph_.n() || seen[v]) throw std::invalid_argument("parts must partition the vertex set");
                seen[v] = true;
            }
        }
        for (bool b : seen)
            if (!b) throw std::invalid_argument("parts must partition the vertex set");
        for (const auto& [verts, code] : parts_) length_bits_ += code.length_bits();
        part_of_.assign(graph_.n(), 0);
        pos_in_part_.assign(graph_.n(), 0);
        for (std::size_t pi = 0; pi < parts_.size(); ++pi)
            for (std::size_t t = 0; t < parts_[pi].first.size(); ++t) {
                part_of_[parts_[pi].first[t]] = pi;
                pos_in_part_[parts_[pi].first[t]] = t;
            }
    }

    const Graph& graph() const { return graph_; }
    std::size_t length_bits() const { return length_bits_; }

    Codeword encode(std::span<const std::uint8_t> x) const {
        if (x.size() != graph_.n()) throw std::invalid_argument("encode: input length mismatch");
        Codeword out;
        out.reserve(length_bits_);
        for (const auto& [verts, code] : parts_) {
            std::vector<std::uint8_t> part_x(verts.size());
            for (std::size_t t = 0; t < verts.size(); ++t) part_x[t] = x[verts[t]];
            Codeword piece = code.encode(part_x);
            out.insert(out.end(), piece.begin(), piece.end());
        }
        return out;
    }

    std::uint8_t decode(std::size_t i, const Codeword& cw, const SideInfo& side) const {
        if (cw.size() != length_bits_) throw std::invalid_argument("decode: malformed codeword");
        std::size_t pi = part_of_[i];
        std::size_t offset = 0;
        for (std::size_t t = 0; t < pi; ++t) offset += parts_[t].second.length_bits();
        const auto& [verts, code] = parts_[pi];
        Codeword piece(cw.begin() + offset, cw.begin() + offset + code.length_bits());
        // global side info restricted to in-part neighbors, reindexed; side is
        // sorted by index, so each lookup is a binary search
        SideInfo local;
        std::size_t li = pos_in_part_[i];
        for (std::size_t lj : code.graph().out_neighbors(li)) {
            std::size_t gj = verts[lj];
            auto it = std::lower_bound(side.begin(), side.end(), gj,
                                       [](const auto& kv, std::size_t key) { return kv.first < key; });
            if (it == side.end() || it->first != gj) throw std::invalid_argument("decode: missing side value");
            local.emplace_back(lj, it->second);
        }
        return code.decode(li, piece, local);
    }

   private:
    Graph graph_;
    std::vector<std::pair<std::vector<std::size_t>, LinearIndexCode>> parts_;
    std::vector<std::size_t> part_of_, pos_in_part_;
    std::size_t length_bits_ = 0;
};

inline CompositeCode concat_codes(Graph g, std::vector<std::pair<std::vector<std::size_t>, LinearIndexCode>> parts) {
    return CompositeCode(std::move(g), std::move(parts));
}

/// The (n+1)-bit scheme for compose([T_n, reverse(T_n)]): transmit x_i xor y_i
/// for each i plus the parity of x. Every receiver reconstructs both words.
class TournamentComposeCode {
   public:
    explicit TournamentComposeCode(std::size_t n) : n_(n) {
        if (n == 0) throw std::invalid_argument("n must be >= 1");
        Graph gs[2] = {transitive_tournament(n), reverse(transitive_tournament(n))};
        graph_ = compose(std::span<const Graph>(gs, 2));
    }

    std::size_t n() const { return n_; }
    const Graph& graph() const { return graph_; }
    std::size_t length_bits() const { return n_ + 1; }

    /// Input layout follows the composition flattening: bit (i, k) at 2i+k,
    /// k = 0 for the x word, k = 1 for the y word.
    Codeword encode(std::span<const std::uint8_t> xy) const {
        if (xy.size() != 2 * n_) throw std::invalid_argument("encode: input length mismatch");
        Codeword out(n_ + 1, 0);
        std::uint8_t parity = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            out[i] = xy[2 * i] ^ xy[2 * i + 1];
            parity ^= xy[2 * i];
        }
        out[n_] = parity;
        return out;
    }

    std::uint8_t decode(std::size_t v, const Codeword& cw, const SideInfo& side) const {
        if (cw.size() != n_ + 1) throw std::invalid_argument("decode: malformed codeword");
        std::size_t i = v / 2, k = v % 2;
        std::map<std::size_t, std::uint8_t> have(side.begin(), side.end());
        for (std::size_t j : graph_.out_neighbors(v))
            if (!have.count(j)) throw std::invalid_argument("decode: missing side value");
        // x_i = parity + sum_{j != i} x_j; x_j comes directly (j > i) or as
        // (x_j ^ y_j) ^ y_j (j < i). Receivers in either round know enough.
        std::uint8_t xi = cw[n_];
        for (std::size_t j = 0; j < n_; ++j) {
            if (j == i) continue;
            std::uint8_t xj;
            if (j > i)
                xj = have.at(2 * j);  // (j, round 0) is known to both (i, 0) and (i, 1)
            else
                xj = cw[j] ^ have.at(2 * j + 1);  // y_j known for j < i
            xi ^= xj;
        }
        return k == 0 ? xi : static_cast<std::uint8_t>(xi ^ cw[i]);
    }

   private:
    std::size_t n_;
    Graph graph_;
};

inline TournamentComposeCode tournament_compose_code(std::size_t n) { return TournamentComposeCode(n); }

/// The Prop-2.1 image-labeling variant: labels the set {Ax} in sorted order,
/// using ceil(log2 |{Ax}|) bits. Exact but table-driven; small n only.
class ImageLabelCode {
   public:
    ImageLabelCode(Graph g, FFMatrix m) : graph_(std::move(g)), matrix_(std::move(m)) {
        RepresentsReport rep = represents_check(matrix_, graph_);
        if (!rep.ok) throw std::invalid_argument("matrix does not represent the graph");
        if (graph_.n() > 16) throw CapExceeded("image_label_code: n above 16");
        std::size_t words = std::size_t{1} << graph_.n();
        std::vector<std::vector<FieldElement>> images;
        images.reserve(words);
        std::vector<FieldElement> fx(graph_.n());
        for (std::size_t x = 0; x < words; ++x) {
            for (std::size_t j = 0; j < graph_.n(); ++j) fx[j] = (x >> j) & 1;
            images.push_back(mat_vec(matrix_, fx));
        }
        std::vector<std::vector<FieldElement>> sorted = images;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t x = 0; x < words; ++x)
            label_of_word_.push_back(
                static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), images[x]) - sorted.begin()));
        image_of_label_ = std::move(sorted);
        length_bits_ = 0;
        while ((std::size_t{1} << length_bits_) < image_of_label_.size()) ++length_bits_;
    }

    const Graph& graph() const { return graph_; }
    std::size_t length_bits() const { return length_bits_; }
    std::size_t image_count() const { return image_of_label_.size(); }

    Codeword encode(std::span<const std::uint8_t> x) const {
        if (x.size() != graph_.n()) throw std::invalid_argument("encode: input length mismatch");
        std::size_t word = 0;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j]) word |= (std::size_t{1} << j);
        std::uint32_t label = label_of_word_[word];
        Codeword out(length_bits_, 0);
        for (std::size_t b = 0; b < length_bits_; ++b) out[b] = (label >> (length_bits_ - 1 - b)) & 1;
        return out;
    }

    std::uint8_t decode(std::size_t i, const Codeword& cw, const SideInfo& side) const {
        if (cw.size() != length_bits_) throw std::invalid_argument("decode: malformed codeword");
        std::uint32_t label = 0;
        for (std::uint8_t b : cw) label = (label << 1) | b;
        if (label >= image_of_label_.size()) throw std::invalid_argument("decode: codeword out of range");
        const auto& ax = image_of_label_[label];
        const FieldSpec& f = matrix_.field();
        FieldElement known = 0;
        auto nbrs = graph_.out_neighbors(i);
        if (side.size() != nbrs.size()) throw std::invalid_argument("decode: side information mismatch");
        for (std::size_t t = 0; t < nbrs.size(); ++t) {
            if (side[t].first != nbrs[t]) throw std::invalid_argument("decode: side information mismatch");
            if (side[t].second != 0) known = f.add(known, matrix_.at(i, nbrs[t]));
        }
        FieldElement xi = f.mul(f.inv(matrix_.at(i, i)), f.sub(ax[i], known));
        if (xi > 1) throw std::invalid_argument("decode: inconsistent codeword/side information");
        return static_cast<std::uint8_t>(xi);
    }

   private:
    Graph graph_;
    FFMatrix matrix_;
    std::vector<std::uint32_t> label_of_word_;
    std::vector<std::vector<FieldElement>> image_of_label_;
    std::size_t length_bits_ = 0;
};

// ---- protocol runner ---------------------------------------------------------

struct ProtocolResult {
    bool ok = true;
    std::vector<std::uint8_t> outputs;
    Codeword codeword;
    std::vector<SideInfo> receiver_inputs;  ///< populated when trace is set
};

/// One broadcast round: the sender encodes, every receiver decodes from the
/// codeword and its own side bits. ok iff every output matches the input.
template <class Code>
ProtocolResult run_protocol(const Code& code, const Graph& g, std::span<const std::uint8_t> x, bool trace = false) {
    if (x.size() != g.n()) throw std::invalid_argument("run_protocol: input length mismatch");
    ProtocolResult res;
    res.codeword = code.encode(x);
    res.outputs.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        SideInfo side = side_for(g, i, x);
        res.outputs[i] = code.decode(i, res.codeword, side);
        if (res.outputs[i] != x[i]) res.ok = false;
        if (trace) res.receiver_inputs.push_back(std::move(side));
    }
    return res;
}

}  // namespace indexlab
