#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "pbwdeg/errors.hpp"
#include "pbwdeg/integer.hpp"
#include "pbwdeg/sparse.hpp"

namespace pbwdeg {

// ---------------------------------------------------------------------------
// Integer lattices
// ---------------------------------------------------------------------------

/// Row-style Hermite normal form of a lattice in Z^ambient.
///
/// Rows are sorted by pivot column; pivots are positive and every entry
/// above a pivot lies in [0, pivot).
struct LatticeBasis {
    std::uint64_t ambient_dim = 0;
    std::vector<IntVec> rows;

    std::size_t rank() const { return rows.size(); }
    bool operator==(const LatticeBasis &) const = default;
};

/// Incremental echelon basis of an integer lattice with sparse rows.
///
/// Rows are kept in echelon form (strictly increasing pivot columns,
/// positive pivots) under unimodular updates. `finalize` reduces the
/// entries above pivots to obtain the Hermite normal form.
class HnfBuilder {
  public:
    explicit HnfBuilder(std::uint64_t ambient_dim = 0) : ambient_(ambient_dim) {}

    std::size_t rank() const { return rows_.size(); }
    const std::vector<IntVec> &rows() const { return rows_; }

    /// Adds a generator. Returns true iff the lattice grew (rank or index).
    bool insert(IntVec v) {
        bool changed = false;
        while (!v.empty()) {
            const std::uint64_t lc = v.front().first;
            auto pos = find_pivot(lc);
            if (pos == rows_.size() || rows_[pos].front().first != lc) {
                if (v.front().second < 0)
                    v = scaled(v, -1);
                rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
                return true;
            }
            IntVec &row = rows_[pos];
            const Integer a = row.front().second;
            const Integer b = v.front().second;
            if (b % a == 0) {
                v = axpy(v, -(b / a), row);
                continue;
            }
            Integer s, t;
            Integer g = gcdext(a, b, s, t);
            IntVec merged = axpy(scaled(row, s), t, v);
            IntVec rest = axpy(scaled(v, a / g), -(b / g), row);
            row = std::move(merged);
            reduce_row_tail(pos);
            v = std::move(rest);
            changed = true;
        }
        return changed;
    }

    /// Reduces v by the rows; returns the remainder (zero iff v is in the
    /// lattice).
    IntVec remainder(IntVec v) const {
        while (!v.empty()) {
            const std::uint64_t lc = v.front().first;
            auto pos = find_pivot(lc);
            if (pos == rows_.size() || rows_[pos].front().first != lc)
                return v;
            const Integer &a = rows_[pos].front().second;
            const Integer &b = v.front().second;
            if (b % a != 0)
                return v;
            v = axpy(v, -(b / a), rows_[pos]);
        }
        return v;
    }

    bool contains(const IntVec &v) const { return remainder(v).empty(); }

    /// Integer coordinates of v in the current rows, if v lies in the lattice.
    std::optional<std::vector<Integer>> coordinates(IntVec v) const {
        std::vector<Integer> c(rows_.size(), 0);
        while (!v.empty()) {
            const std::uint64_t lc = v.front().first;
            auto pos = find_pivot(lc);
            if (pos == rows_.size() || rows_[pos].front().first != lc)
                return std::nullopt;
            const Integer &a = rows_[pos].front().second;
            const Integer &b = v.front().second;
            if (b % a != 0)
                return std::nullopt;
            Integer q = b / a;
            c[pos] = q;
            v = axpy(v, -q, rows_[pos]);
        }
        return c;
    }

    /// Brings the rows into Hermite normal form.
    void finalize() {
        for (std::size_t j = 0; j < rows_.size(); ++j) {
            const std::uint64_t cj = rows_[j].front().first;
            const Integer pj = rows_[j].front().second;
            for (std::size_t i = 0; i < j; ++i) {
                Integer x = entry_at(rows_[i], cj);
                if (x == 0)
                    continue;
                Integer q = floor_div(x, pj);
                if (q != 0)
                    rows_[i] = axpy(rows_[i], -q, rows_[j]);
            }
        }
    }

    LatticeBasis basis() const {
        HnfBuilder copy = *this;
        copy.finalize();
        return LatticeBasis{ambient_, std::move(copy.rows_)};
    }

  private:
    std::size_t find_pivot(std::uint64_t col) const {
        auto it = std::lower_bound(rows_.begin(), rows_.end(), col,
                                   [](const IntVec &r, std::uint64_t c) { return r.front().first < c; });
        return static_cast<std::size_t>(it - rows_.begin());
    }

    // Keeps coefficients small after a gcd step by reducing the changed
    // row against the pivots below it.
    void reduce_row_tail(std::size_t pos) {
        for (std::size_t j = pos + 1; j < rows_.size(); ++j) {
            Integer x = entry_at(rows_[pos], rows_[j].front().first);
            if (x == 0)
                continue;
            Integer q = floor_div(x, rows_[j].front().second);
            if (q != 0)
                rows_[pos] = axpy(rows_[pos], -q, rows_[j]);
        }
    }

    std::uint64_t ambient_;
    std::vector<IntVec> rows_;
};

/// Hermite normal form of the row span of `gens`.
inline LatticeBasis hnf_lattice_basis(const SparseIntMatrix &gens) {
    std::vector<IntVec> rows(gens.nrows());
    for (std::size_t c = 0; c < gens.ncols(); ++c)
        for (const auto &[r, v] : gens.column(c))
            rows[r].emplace_back(c, v);
    // insert short rows first: small pivots early limit coefficient growth
    std::stable_sort(rows.begin(), rows.end(),
                     [](const IntVec &a, const IntVec &b) { return a.size() < b.size(); });
    HnfBuilder h(gens.ncols());
    for (auto &r : rows)
        if (!r.empty())
            h.insert(std::move(r));
    return h.basis();
}

// ---------------------------------------------------------------------------
// Linear algebra over F_p
// ---------------------------------------------------------------------------

/// Incremental row echelon basis of a subspace of F_p^n with dense rows.
///
/// Stored rows have pivot entry 1 and are zero left of the pivot. Columns
/// are processed in index order, so pivots record the leftmost nonzero
/// coordinate of each basis vector.
class EchelonModP {
  public:
    EchelonModP() = default;
    EchelonModP(std::uint32_t p, std::size_t ncols)
        : p_(p), ncols_(ncols), pivot_row_(ncols, -1) {}

    std::uint32_t modulus() const { return p_; }
    std::size_t ncols() const { return ncols_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<std::uint32_t>> &rows() const { return rows_; }
    const std::vector<std::size_t> &pivots() const { return pivots_; }

    /// Reduces v in place against the basis; returns true iff v became 0.
    bool reduce(std::vector<std::uint32_t> &v) const {
        if (v.size() != ncols_)
            throw DimensionMismatch("vector length " + std::to_string(v.size()) +
                                    " differs from ambient " + std::to_string(ncols_));
        bool zero = true;
        for (std::size_t c = 0; c < ncols_; ++c) {
            if (!v[c])
                continue;
            int r = pivot_row_[c];
            if (r < 0) {
                zero = false;
                continue;
            }
            const std::uint32_t f = p_ - v[c];
            const auto &row = rows_[r];
            for (std::size_t k = c; k < ncols_; ++k)
                if (row[k])
                    v[k] = static_cast<std::uint32_t>((v[k] + static_cast<std::uint64_t>(f) * row[k]) % p_);
        }
        return zero;
    }

    bool contains(std::vector<std::uint32_t> v) const { return reduce(v); }

    /// Reduces v against the first `nrows` inserted rows only. Every stored
    /// row vanishes left of its pivot, so any prefix of the insertion order
    /// is itself an echelon basis of the span it generates.
    bool reduce_prefix(std::vector<std::uint32_t> &v, std::size_t nrows) const {
        if (v.size() != ncols_)
            throw DimensionMismatch("vector length " + std::to_string(v.size()) +
                                    " differs from ambient " + std::to_string(ncols_));
        bool zero = true;
        for (std::size_t c = 0; c < ncols_; ++c) {
            if (!v[c])
                continue;
            int r = pivot_row_[c];
            if (r < 0 || static_cast<std::size_t>(r) >= nrows) {
                zero = false;
                continue;
            }
            const std::uint32_t f = p_ - v[c];
            const auto &row = rows_[r];
            for (std::size_t k = c; k < ncols_; ++k)
                if (row[k])
                    v[k] = static_cast<std::uint32_t>((v[k] + static_cast<std::uint64_t>(f) * row[k]) % p_);
        }
        return zero;
    }

    /// Adds v; returns true iff the rank increased.
    bool insert(std::vector<std::uint32_t> v) {
        if (reduce(v))
            return false;
        std::size_t c = 0;
        while (!v[c])
            ++c;
        const std::uint32_t inv = inv_mod(v[c], p_);
        for (std::size_t k = c; k < ncols_; ++k)
            v[k] = mul_mod(v[k], inv, p_);
        pivot_row_[c] = static_cast<int>(rows_.size());
        pivots_.push_back(c);
        rows_.push_back(std::move(v));
        return true;
    }

  private:
    std::uint32_t p_ = 2;
    std::size_t ncols_ = 0;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<int> pivot_row_;
};

inline std::size_t rank_mod_p(const SparsePrimeMatrix &m) {
    EchelonModP e(m.modulus(), m.ncols());
    for (auto &row : m.rows())
        e.insert(std::move(row));
    return e.rank();
}

/// Whether v lies in the row span of `basis_rows`.
inline bool subspace_membership_mod_p(const SparsePrimeMatrix &basis_rows,
                                      const std::vector<std::uint32_t> &v) {
    if (v.size() != basis_rows.ncols())
        throw DimensionMismatch("vector length " + std::to_string(v.size()) +
                                " differs from ambient " + std::to_string(basis_rows.ncols()));
    EchelonModP e(basis_rows.modulus(), basis_rows.ncols());
    for (auto &row : basis_rows.rows())
        e.insert(std::move(row));
    std::vector<std::uint32_t> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        w[i] = v[i] % basis_rows.modulus();
    return e.contains(std::move(w));
}

/// Basis (as rows) of the intersection of two row spaces (Zassenhaus).
inline SparsePrimeMatrix subspace_intersection_mod_p(const SparsePrimeMatrix &a,
                                                     const SparsePrimeMatrix &b) {
    if (a.ncols() != b.ncols() || a.modulus() != b.modulus())
        throw DimensionMismatch("subspaces live in different ambient spaces");
    const std::uint32_t p = a.modulus();
    const std::size_t n = a.ncols();
    EchelonModP e(p, 2 * n);
    for (const auto &row : a.rows()) {
        std::vector<std::uint32_t> w(2 * n);
        std::copy(row.begin(), row.end(), w.begin());
        std::copy(row.begin(), row.end(), w.begin() + static_cast<std::ptrdiff_t>(n));
        e.insert(std::move(w));
    }
    for (const auto &row : b.rows()) {
        std::vector<std::uint32_t> w(2 * n, 0);
        std::copy(row.begin(), row.end(), w.begin());
        e.insert(std::move(w));
    }
    std::vector<std::vector<std::uint32_t>> out;
    for (std::size_t r = 0; r < e.rank(); ++r) {
        if (e.pivots()[r] < n)
            continue;
        const auto &row = e.rows()[r];
        out.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(n), row.end());
    }
    return SparsePrimeMatrix::from_rows(p, n, out);
}

} // namespace pbwdeg
