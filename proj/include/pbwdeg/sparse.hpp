#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pbwdeg/errors.hpp"
#include "pbwdeg/integer.hpp"

namespace pbwdeg {

/// Sparse integer vector: (index, value) pairs sorted by index, no zeros.
using IntVec = std::vector<std::pair<std::uint64_t, Integer>>;

namespace detail {

/// Accumulates `coef * src` into a hash map, dropping nothing (zeros are
/// pruned by `finish`).
inline void axpy(std::unordered_map<std::uint64_t, Integer> &acc,
                 const Integer &coef, const IntVec &src) {
    for (const auto &[i, x] : src)
        acc[i] += coef * x;
}

inline IntVec finish(std::unordered_map<std::uint64_t, Integer> &acc) {
    IntVec out;
    out.reserve(acc.size());
    for (auto &[i, x] : acc)
        if (x != 0)
            out.emplace_back(i, std::move(x));
    std::sort(out.begin(), out.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    return out;
}

} // namespace detail

/// a + coef * b for sorted sparse vectors.
inline IntVec axpy(const IntVec &a, const Integer &coef, const IntVec &b) {
    IntVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Integer v = coef * b[j].second;
            if (v != 0)
                out.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            Integer v = a[i].second + coef * b[j].second;
            if (v != 0)
                out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

inline IntVec scaled(const IntVec &a, const Integer &s) {
    if (s == 0)
        return {};
    IntVec out = a;
    for (auto &e : out)
        e.second *= s;
    return out;
}

/// Value of a sparse vector at index `i` (zero if absent).
inline Integer entry_at(const IntVec &v, std::uint64_t i) {
    auto it = std::lower_bound(v.begin(), v.end(), i,
                               [](const auto &e, std::uint64_t k) { return e.first < k; });
    return (it != v.end() && it->first == i) ? it->second : Integer(0);
}

/// Sparse matrix over the integers, stored by columns.
///
/// Column j holds the image of the j-th basis vector, which is how module
/// operators are applied. Triplets are the exchange format.
class SparseIntMatrix {
  public:
    using Column = std::vector<std::pair<std::uint32_t, Integer>>;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t nrows, std::size_t ncols)
        : nrows_(nrows), cols_(ncols) {}

    static SparseIntMatrix identity(std::size_t n) {
        SparseIntMatrix m(n, n);
        for (std::size_t j = 0; j < n; ++j)
            m.cols_[j].emplace_back(static_cast<std::uint32_t>(j), Integer(1));
        return m;
    }

    static SparseIntMatrix
    from_triplets(std::size_t nrows, std::size_t ncols,
                  const std::vector<std::tuple<std::size_t, std::size_t, Integer>> &t) {
        SparseIntMatrix m(nrows, ncols);
        for (const auto &[r, c, v] : t) {
            if (r >= nrows || c >= ncols)
                throw DimensionMismatch("triplet out of range");
            m.add(r, c, v);
        }
        m.prune();
        return m;
    }

    /// Builds from a dense row-major array.
    static SparseIntMatrix from_dense(const std::vector<std::vector<Integer>> &rows) {
        std::size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
        SparseIntMatrix m(nr, nc);
        for (std::size_t r = 0; r < nr; ++r) {
            if (rows[r].size() != nc)
                throw DimensionMismatch("ragged dense matrix");
            for (std::size_t c = 0; c < nc; ++c)
                if (rows[r][c] != 0)
                    m.cols_[c].emplace_back(static_cast<std::uint32_t>(r), rows[r][c]);
        }
        return m;
    }

    std::size_t nrows() const { return nrows_; }
    std::size_t ncols() const { return cols_.size(); }
    const Column &column(std::size_t j) const { return cols_[j]; }
    Column &column(std::size_t j) { return cols_[j]; }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto &c : cols_)
            n += c.size();
        return n;
    }
    bool is_zero() const { return nnz() == 0; }

    Integer at(std::size_t r, std::size_t c) const {
        for (const auto &[i, v] : cols_[c])
            if (i == r)
                return v;
        return 0;
    }

    /// Adds v at (r, c); call `prune` afterwards to restore the invariants.
    void add(std::size_t r, std::size_t c, const Integer &v) {
        cols_[c].emplace_back(static_cast<std::uint32_t>(r), v);
    }

    /// Sorts each column, merges duplicates, drops zeros.
    void prune() {
        for (auto &col : cols_) {
            std::sort(col.begin(), col.end(),
                      [](const auto &a, const auto &b) { return a.first < b.first; });
            Column out;
            for (auto &e : col) {
                if (!out.empty() && out.back().first == e.first)
                    out.back().second += e.second;
                else
                    out.push_back(std::move(e));
            }
            std::erase_if(out, [](const auto &e) { return e.second == 0; });
            col = std::move(out);
        }
    }

    std::vector<std::tuple<std::size_t, std::size_t, Integer>> triplets() const {
        std::vector<std::tuple<std::size_t, std::size_t, Integer>> t;
        for (std::size_t c = 0; c < cols_.size(); ++c)
            for (const auto &[r, v] : cols_[c])
                t.emplace_back(r, c, v);
        std::sort(t.begin(), t.end(), [](const auto &a, const auto &b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) <
                   std::tie(std::get<0>(b), std::get<1>(b));
        });
        return t;
    }

    std::vector<std::vector<Integer>> to_dense() const {
        std::vector<std::vector<Integer>> d(nrows_, std::vector<Integer>(ncols(), 0));
        for (std::size_t c = 0; c < cols_.size(); ++c)
            for (const auto &[r, v] : cols_[c])
                d[r][c] = v;
        return d;
    }

    friend SparseIntMatrix operator*(const SparseIntMatrix &a, const SparseIntMatrix &b) {
        if (a.ncols() != b.nrows())
            throw DimensionMismatch("matrix product shape mismatch");
        SparseIntMatrix out(a.nrows(), b.ncols());
        std::vector<Integer> acc(a.nrows());
        std::vector<char> used(a.nrows(), 0);
        std::vector<std::uint32_t> touched;
        for (std::size_t j = 0; j < b.ncols(); ++j) {
            touched.clear();
            for (const auto &[k, bv] : b.cols_[j]) {
                for (const auto &[i, av] : a.cols_[k]) {
                    if (!used[i]) {
                        used[i] = 1;
                        touched.push_back(i);
                        acc[i] = av * bv;
                    } else {
                        acc[i] += av * bv;
                    }
                }
            }
            std::sort(touched.begin(), touched.end());
            auto &col = out.cols_[j];
            for (auto i : touched) {
                if (acc[i] != 0)
                    col.emplace_back(i, std::move(acc[i]));
                used[i] = 0;
            }
        }
        return out;
    }

    friend SparseIntMatrix operator+(const SparseIntMatrix &a, const SparseIntMatrix &b) {
        return a.combine(b, 1);
    }
    friend SparseIntMatrix operator-(const SparseIntMatrix &a, const SparseIntMatrix &b) {
        return a.combine(b, -1);
    }

    SparseIntMatrix scaled(const Integer &s) const {
        SparseIntMatrix out(nrows_, ncols());
        if (s == 0)
            return out;
        for (std::size_t j = 0; j < cols_.size(); ++j)
            for (const auto &[i, v] : cols_[j])
                out.cols_[j].emplace_back(i, v * s);
        return out;
    }

    bool operator==(const SparseIntMatrix &o) const {
        return nrows_ == o.nrows_ && cols_ == o.cols_;
    }

  private:
    SparseIntMatrix combine(const SparseIntMatrix &b, int sign) const {
        if (nrows_ != b.nrows_ || ncols() != b.ncols())
            throw DimensionMismatch("matrix sum shape mismatch");
        SparseIntMatrix out(nrows_, ncols());
        for (std::size_t j = 0; j < ncols(); ++j) {
            const auto &x = cols_[j];
            const auto &y = b.cols_[j];
            auto &o = out.cols_[j];
            std::size_t p = 0, q = 0;
            while (p < x.size() || q < y.size()) {
                if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
                    o.push_back(x[p++]);
                } else if (p == x.size() || y[q].first < x[p].first) {
                    o.emplace_back(y[q].first, sign * y[q].second);
                    ++q;
                } else {
                    Integer v = x[p].second + sign * y[q].second;
                    if (v != 0)
                        o.emplace_back(x[p].first, std::move(v));
                    ++p;
                    ++q;
                }
            }
        }
        return out;
    }

    std::size_t nrows_ = 0;
    std::vector<Column> cols_;
};

inline SparseIntMatrix commutator(const SparseIntMatrix &a, const SparseIntMatrix &b) {
    return a * b - b * a;
}

/// Sparse matrix over F_p with entries in [1, p-1], stored by columns.
class SparsePrimeMatrix {
  public:
    using Column = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

    SparsePrimeMatrix() = default;
    SparsePrimeMatrix(std::uint32_t p, std::size_t nrows, std::size_t ncols)
        : p_(p), nrows_(nrows), cols_(ncols) {}

    static SparsePrimeMatrix identity(std::uint32_t p, std::size_t n) {
        SparsePrimeMatrix m(p, n, n);
        for (std::size_t j = 0; j < n; ++j)
            m.cols_[j].emplace_back(static_cast<std::uint32_t>(j), 1u % p);
        m.prune();
        return m;
    }

    static SparsePrimeMatrix reduce(const SparseIntMatrix &m, std::uint32_t p) {
        SparsePrimeMatrix out(p, m.nrows(), m.ncols());
        for (std::size_t j = 0; j < m.ncols(); ++j)
            for (const auto &[i, v] : m.column(j)) {
                auto r = mod_p(v, p);
                if (r)
                    out.cols_[j].emplace_back(i, r);
            }
        return out;
    }

    static SparsePrimeMatrix
    from_triplets(std::uint32_t p, std::size_t nrows, std::size_t ncols,
                  const std::vector<std::tuple<std::size_t, std::size_t, long long>> &t) {
        SparsePrimeMatrix m(p, nrows, ncols);
        for (const auto &[r, c, v] : t) {
            if (r >= nrows || c >= ncols)
                throw DimensionMismatch("triplet out of range");
            m.cols_[c].emplace_back(static_cast<std::uint32_t>(r), mod_p(v, p));
        }
        m.prune();
        return m;
    }

    /// Rows given densely (each of length ncols).
    static SparsePrimeMatrix from_rows(std::uint32_t p, std::size_t ncols,
                                       const std::vector<std::vector<std::uint32_t>> &rows) {
        SparsePrimeMatrix m(p, rows.size(), ncols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != ncols)
                throw DimensionMismatch("row length mismatch");
            for (std::size_t c = 0; c < ncols; ++c)
                if (rows[r][c] % p)
                    m.cols_[c].emplace_back(static_cast<std::uint32_t>(r), rows[r][c] % p);
        }
        return m;
    }

    std::uint32_t modulus() const { return p_; }
    std::size_t nrows() const { return nrows_; }
    std::size_t ncols() const { return cols_.size(); }
    const Column &column(std::size_t j) const { return cols_[j]; }
    Column &column(std::size_t j) { return cols_[j]; }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto &c : cols_)
            n += c.size();
        return n;
    }
    bool is_zero() const { return nnz() == 0; }

    std::uint32_t at(std::size_t r, std::size_t c) const {
        for (const auto &[i, v] : cols_[c])
            if (i == r)
                return v;
        return 0;
    }

    /// Overwrites one entry (used to build fixtures).
    void set(std::size_t r, std::size_t c, std::uint32_t v) {
        auto &col = cols_[c];
        std::erase_if(col, [&](const auto &e) { return e.first == r; });
        if (v % p_)
            col.emplace_back(static_cast<std::uint32_t>(r), v % p_);
        std::sort(col.begin(), col.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
    }

    void prune() {
        for (auto &col : cols_) {
            std::sort(col.begin(), col.end(),
                      [](const auto &a, const auto &b) { return a.first < b.first; });
            Column out;
            for (auto &e : col) {
                if (!out.empty() && out.back().first == e.first)
                    out.back().second = add_mod(out.back().second, e.second, p_);
                else
                    out.push_back(e);
            }
            std::erase_if(out, [](const auto &e) { return e.second == 0; });
            col = std::move(out);
        }
    }

    std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> triplets() const {
        std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> t;
        for (std::size_t c = 0; c < cols_.size(); ++c)
            for (const auto &[r, v] : cols_[c])
                t.emplace_back(r, c, v);
        std::sort(t.begin(), t.end(), [](const auto &a, const auto &b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) <
                   std::tie(std::get<0>(b), std::get<1>(b));
        });
        return t;
    }

    /// Dense rows (row-major).
    std::vector<std::vector<std::uint32_t>> rows() const {
        std::vector<std::vector<std::uint32_t>> d(nrows_, std::vector<std::uint32_t>(ncols(), 0));
        for (std::size_t c = 0; c < cols_.size(); ++c)
            for (const auto &[r, v] : cols_[c])
                d[r][c] = v;
        return d;
    }

    /// y = M x for a dense vector x.
    std::vector<std::uint32_t> apply(const std::vector<std::uint32_t> &x) const {
        if (x.size() != ncols())
            throw DimensionMismatch("vector length mismatch");
        std::vector<std::uint64_t> acc(nrows_, 0);
        for (std::size_t j = 0; j < cols_.size(); ++j) {
            if (!x[j])
                continue;
            for (const auto &[i, v] : cols_[j])
                acc[i] = (acc[i] + static_cast<std::uint64_t>(v) * x[j]) % p_;
        }
        return {acc.begin(), acc.end()};
    }

    friend SparsePrimeMatrix operator*(const SparsePrimeMatrix &a, const SparsePrimeMatrix &b) {
        if (a.ncols() != b.nrows() || a.p_ != b.p_)
            throw DimensionMismatch("matrix product shape mismatch");
        const std::uint32_t p = a.p_;
        SparsePrimeMatrix out(p, a.nrows(), b.ncols());
        std::vector<std::uint64_t> acc(a.nrows(), 0);
        std::vector<char> used(a.nrows(), 0);
        std::vector<std::uint32_t> touched;
        for (std::size_t j = 0; j < b.ncols(); ++j) {
            touched.clear();
            for (const auto &[k, bv] : b.cols_[j]) {
                for (const auto &[i, av] : a.cols_[k]) {
                    if (!used[i]) {
                        used[i] = 1;
                        touched.push_back(i);
                        acc[i] = 0;
                    }
                    acc[i] = (acc[i] + static_cast<std::uint64_t>(av) * bv) % p;
                }
            }
            std::sort(touched.begin(), touched.end());
            auto &col = out.cols_[j];
            for (auto i : touched) {
                if (acc[i])
                    col.emplace_back(i, static_cast<std::uint32_t>(acc[i]));
                used[i] = 0;
            }
        }
        return out;
    }

    friend SparsePrimeMatrix operator+(const SparsePrimeMatrix &a, const SparsePrimeMatrix &b) {
        return a.combine(b, 1);
    }
    friend SparsePrimeMatrix operator-(const SparsePrimeMatrix &a, const SparsePrimeMatrix &b) {
        return a.combine(b, a.p_ - 1);
    }

    SparsePrimeMatrix scaled(std::uint32_t s) const {
        SparsePrimeMatrix out(p_, nrows_, ncols());
        s %= p_;
        if (!s)
            return out;
        for (std::size_t j = 0; j < cols_.size(); ++j)
            for (const auto &[i, v] : cols_[j])
                out.cols_[j].emplace_back(i, mul_mod(v, s, p_));
        return out;
    }

    bool operator==(const SparsePrimeMatrix &o) const {
        return p_ == o.p_ && nrows_ == o.nrows_ && cols_ == o.cols_;
    }

    /// Text form: "nrows ncols p" then "row col value" per line.
    void write_triplets(std::ostream &os) const {
        os << nrows_ << ' ' << ncols() << ' ' << p_ << '\n';
        for (const auto &[r, c, v] : triplets())
            os << r << ' ' << c << ' ' << v << '\n';
    }

    static SparsePrimeMatrix read_triplets(std::istream &is) {
        std::size_t nr = 0, nc = 0;
        std::string mod;
        if (!(is >> nr >> nc >> mod))
            throw InvalidArgument("malformed triplet header");
        if (mod == "Z")
            throw InvalidArgument("integer triplet file where a mod-p one was expected");
        std::uint32_t p = static_cast<std::uint32_t>(std::stoul(mod));
        SparsePrimeMatrix m(p, nr, nc);
        std::size_t r, c;
        long long v;
        while (is >> r >> c >> v) {
            if (r >= nr || c >= nc)
                throw InvalidArgument("triplet out of range");
            m.cols_[c].emplace_back(static_cast<std::uint32_t>(r), mod_p(v, p));
        }
        m.prune();
        return m;
    }

  private:
    SparsePrimeMatrix combine(const SparsePrimeMatrix &b, std::uint32_t s) const {
        if (nrows_ != b.nrows_ || ncols() != b.ncols() || p_ != b.p_)
            throw DimensionMismatch("matrix sum shape mismatch");
        SparsePrimeMatrix out(p_, nrows_, ncols());
        for (std::size_t j = 0; j < ncols(); ++j) {
            const auto &x = cols_[j];
            const auto &y = b.cols_[j];
            auto &o = out.cols_[j];
            std::size_t i = 0, k = 0;
            while (i < x.size() || k < y.size()) {
                if (k == y.size() || (i < x.size() && x[i].first < y[k].first)) {
                    o.push_back(x[i++]);
                } else if (i == x.size() || y[k].first < x[i].first) {
                    auto v = mul_mod(y[k].second, s, p_);
                    if (v)
                        o.emplace_back(y[k].first, v);
                    ++k;
                } else {
                    auto v = add_mod(x[i].second, mul_mod(y[k].second, s, p_), p_);
                    if (v)
                        o.emplace_back(x[i].first, v);
                    ++i;
                    ++k;
                }
            }
        }
        return out;
    }

    std::uint32_t p_ = 2;
    std::size_t nrows_ = 0;
    std::vector<Column> cols_;
};

/// Text form of an integer matrix: "nrows ncols Z" then "row col value".
inline void write_triplets(std::ostream &os, const SparseIntMatrix &m) {
    os << m.nrows() << ' ' << m.ncols() << " Z\n";
    for (const auto &[r, c, v] : m.triplets())
        os << r << ' ' << c << ' ' << v << '\n';
}

inline SparseIntMatrix read_int_triplets(std::istream &is) {
    std::size_t nr = 0, nc = 0;
    std::string mod;
    if (!(is >> nr >> nc >> mod) || mod != "Z")
        throw InvalidArgument("malformed integer triplet header");
    std::vector<std::tuple<std::size_t, std::size_t, Integer>> t;
    std::size_t r, c;
    std::string v;
    while (is >> r >> c >> v)
        t.emplace_back(r, c, Integer(v));
    return SparseIntMatrix::from_triplets(nr, nc, t);
}

} // namespace pbwdeg
