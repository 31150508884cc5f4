#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "indexlab/gf.hpp"

namespace indexlab {

/// Dense row-major matrix over a FieldSpec.
class FFMatrix {
   public:
    FFMatrix() = default;
    FFMatrix(FieldSpec field, std::size_t rows, std::size_t cols, FieldElement fill = 0)
        : field_(std::move(field)), rows_(rows), cols_(cols), e_(rows * cols, fill) {
        if (cols == 0) throw std::invalid_argument("matrix must have at least one column");
        field_.check_element(fill);
    }

    static FFMatrix identity(const FieldSpec& f, std::size_t n) {
        FFMatrix m(f, n, n, 0);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FieldElement at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, FieldElement v) {
        field_.check_element(v);
        e_[i * cols_ + j] = v;
    }

    std::span<const FieldElement> row(std::size_t i) const { return {e_.data() + i * cols_, cols_}; }
    std::span<FieldElement> row(std::size_t i) { return {e_.data() + i * cols_, cols_}; }

    const std::vector<FieldElement>& entries() const { return e_; }

    bool operator==(const FFMatrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

   private:
    FieldSpec field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> e_;
};

/// Incremental row-echelon accumulator: rows are streamed in one at a time,
/// so rank of a tall matrix never needs the full matrix in memory. Holds at
/// most `cols` pivot rows. Fields with up to 2^16 elements are supported;
/// rows are kept as uint16 internally.
class RowEchelon {
   public:
    RowEchelon(FieldSpec field, std::size_t cols) : field_(std::move(field)), cols_(cols) {
        pivot_of_col_.assign(cols_, SIZE_MAX);
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    /// Reduces the row against the current pivots; keeps it as a new pivot
    /// if independent. Returns true when the rank grew.
    bool push_row(std::span<const FieldElement> row) {
        if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
        scratch_.resize(cols_);
        for (std::size_t j = 0; j < cols_; ++j) {
            field_.check_element(row[j]);
            scratch_[j] = static_cast<std::uint16_t>(row[j]);
        }
        return push_scratch();
    }

    bool push_row_u16(std::span<const std::uint16_t> row) {
        if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
        scratch_.assign(row.begin(), row.end());
        return push_scratch();
    }

    /// Expresses `row` as a combination of the pivot rows, if possible.
    /// Returns coefficients indexed by pivot insertion order, or empty if
    /// the row is outside the span (for nonzero rows).
    bool decompose(std::span<const FieldElement> row, std::vector<FieldElement>& coeffs) const {
        if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
        std::vector<std::uint16_t> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = static_cast<std::uint16_t>(row[j]);
        coeffs.assign(rows_.size(), 0);
        for (std::size_t t = 0; t < order_.size(); ++t) {
            std::size_t idx = order_[t];
            std::size_t c = pivot_col_[idx];
            std::uint16_t f = r[c];
            if (f == 0) continue;
            coeffs[idx] = f;  // pivot rows are normalized to leading 1
            eliminate(r.data(), rows_[idx].data(), field_.neg(f));
        }
        for (std::size_t j = 0; j < cols_; ++j)
            if (r[j] != 0) return false;
        return true;
    }

    std::span<const std::uint16_t> pivot_row(std::size_t idx) const { return rows_[idx]; }

    /// One ascending sweep of the current pivots over an external row.
    void reduce_in_place(std::span<std::uint16_t> row) const {
        if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
        for (std::size_t t = 0; t < order_.size(); ++t) {
            std::size_t idx = order_[t];
            std::uint16_t f = row[pivot_col_[idx]];
            if (f == 0) continue;
            eliminate(row.data(), rows_[idx].data(), field_.neg(f));
        }
    }

   private:
    void eliminate(std::uint16_t* r, const std::uint16_t* pv, FieldElement factor) const {
        // r += factor * pv
        const std::size_t n = cols_;
        if (field_.k == 1 && field_.p == 2) {
            for (std::size_t j = 0; j < n; ++j) r[j] ^= pv[j];
        } else if (field_.k == 1 && field_.p == 3) {
            if (factor == 1) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::uint16_t t = static_cast<std::uint16_t>(r[j] + pv[j]);
                    r[j] = t >= 3 ? static_cast<std::uint16_t>(t - 3) : t;
                }
            } else {
                for (std::size_t j = 0; j < n; ++j) {
                    std::uint16_t t = static_cast<std::uint16_t>(r[j] + pv[j] + pv[j]);
                    t = t >= 3 ? static_cast<std::uint16_t>(t - 3) : t;
                    r[j] = t >= 3 ? static_cast<std::uint16_t>(t - 3) : t;
                }
            }
        } else if (field_.k == 1) {
            const std::uint32_t p = static_cast<std::uint32_t>(field_.p);
            const std::uint32_t f = static_cast<std::uint32_t>(factor);
            for (std::size_t j = 0; j < n; ++j)
                r[j] = static_cast<std::uint16_t>((r[j] + f * static_cast<std::uint32_t>(pv[j])) % p);
        } else {
            for (std::size_t j = 0; j < n; ++j)
                r[j] = static_cast<std::uint16_t>(field_.add(r[j], field_.mul(factor, pv[j])));
        }
    }

    bool push_scratch() {
        std::uint16_t* r = scratch_.data();
        for (std::size_t t = 0; t < order_.size(); ++t) {
            std::size_t idx = order_[t];
            std::size_t c = pivot_col_[idx];
            std::uint16_t f = r[c];
            if (f == 0) continue;
            eliminate(r, rows_[idx].data(), field_.neg(f));
        }
        std::size_t lead = cols_;
        for (std::size_t j = 0; j < cols_; ++j)
            if (r[j] != 0) {
                lead = j;
                break;
            }
        if (lead == cols_) return false;
        if (r[lead] != 1) {
            FieldElement s = field_.inv(r[lead]);
            for (std::size_t j = lead; j < cols_; ++j)
                r[j] = static_cast<std::uint16_t>(field_.mul(r[j], s));
        }
        std::size_t idx = rows_.size();
        rows_.push_back(scratch_);
        pivot_col_.push_back(lead);
        pivot_of_col_[lead] = idx;
        // keep pivots ordered by column so a single ascending sweep reduces
        auto it = order_.begin();
        while (it != order_.end() && pivot_col_[*it] < lead) ++it;
        order_.insert(it, idx);
        return true;
    }

    FieldSpec field_;
    std::size_t cols_;
    std::vector<std::vector<std::uint16_t>> rows_;  // normalized pivot rows
    std::vector<std::size_t> pivot_col_;            // per stored row
    std::vector<std::size_t> order_;                // row indices sorted by pivot column
    std::vector<std::size_t> pivot_of_col_;
    std::vector<std::uint16_t> scratch_;
};

/// Rank over the matrix's field, exact.
inline std::size_t rank(const FFMatrix& m) {
    RowEchelon acc(m.field(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) acc.push_row(m.row(i));
    return acc.rank();
}

/// The first linearly independent rows in index order, as a rank x cols matrix.
inline FFMatrix row_basis(const FFMatrix& m) {
    RowEchelon acc(m.field(), m.cols());
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (acc.push_row(m.row(i))) keep.push_back(i);
    FFMatrix b(m.field(), keep.size(), m.cols(), 0);
    for (std::size_t t = 0; t < keep.size(); ++t)
        for (std::size_t j = 0; j < m.cols(); ++j) b.set(t, j, m.at(keep[t], j));
    return b;
}

/// Kronecker product; entry ((i1,i2),(j1,j2)) = a(i1,j1)*b(i2,j2) with
/// (i1,i2) flattened as i1*rows(b)+i2.
inline FFMatrix kron(const FFMatrix& a, const FFMatrix& b) {
    if (a.field() != b.field()) throw std::invalid_argument("kron: field mismatch");
    FFMatrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols(), 0);
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            FieldElement v = a.at(i1, j1);
            if (v == 0) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
                    FieldElement w = b.at(i2, j2);
                    if (w == 0) continue;
                    r.set(i1 * b.rows() + i2, j1 * b.cols() + j2, a.field().mul(v, w));
                }
        }
    return r;
}

inline FFMatrix block_diag(std::span<const FFMatrix> blocks) {
    if (blocks.empty()) throw std::invalid_argument("block_diag: empty list");
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        if (b.field() != blocks[0].field()) throw std::invalid_argument("block_diag: field mismatch");
        rows += b.rows();
        cols += b.cols();
    }
    FFMatrix r(blocks[0].field(), rows, cols, 0);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) r.set(ro + i, co + j, b.at(i, j));
        ro += b.rows();
        co += b.cols();
    }
    return r;
}

inline std::vector<FieldElement> mat_vec(const FFMatrix& m, std::span<const FieldElement> x) {
    if (x.size() != m.cols()) throw std::invalid_argument("mat_vec: dimension mismatch");
    const FieldSpec& f = m.field();
    std::vector<FieldElement> y(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        FieldElement s = 0;
        auto r = m.row(i);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (r[j] != 0 && x[j] != 0) s = f.add(s, f.mul(r[j], x[j]));
        y[i] = s;
    }
    return y;
}

}  // namespace indexlab
