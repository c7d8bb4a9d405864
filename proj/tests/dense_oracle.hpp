#pragma once

// Dense reference implementation used to cross-check the sparse engine.
//
// Everything here works with dense vectors mod p inside a tensor product of
// fundamental representations. V(lam) mod p is the span of all ordered
// divided-power monomials applied to the tensor of highest weight vectors,
// its PBW filtration is read off from monomial degrees, and every dimension
// is obtained from a from-scratch Gaussian elimination. The only inputs
// shared with the engine are the Cartan matrix and the simple generator
// matrices of the fundamental representations.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "pbwdeg/chevrep.hpp"
#include "pbwdeg/integer.hpp"
#include "pbwdeg/rootsys.hpp"

namespace oracle {

using pbwdeg::Integer;
using Vec = std::vector<std::uint32_t>;
using IntDense = std::vector<std::vector<Integer>>;
using ModDense = std::vector<std::vector<std::uint32_t>>;

inline std::uint32_t reduce(const Integer &x, std::uint32_t p) {
    Integer r = x % p;
    if (r < 0)
        r += p;
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

/// Rank of a set of vectors by plain Gaussian elimination.
inline std::size_t rank(std::vector<Vec> rows, std::uint32_t p) {
    if (rows.empty())
        return 0;
    const std::size_t n = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[r]);
        const std::uint64_t inv = inverse(rows[r][c], p);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (!rows[i][c])
                continue;
            const std::uint64_t f = (p - rows[i][c]) * inv % p;
            for (std::size_t k = c; k < n; ++k)
                rows[i][k] = static_cast<std::uint32_t>((rows[i][k] + f * rows[r][k]) % p);
        }
        ++r;
    }
    return r;
}

inline std::vector<Vec> concat(std::vector<Vec> a, const std::vector<Vec> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// dim(span A intersect span B) = dim A + dim B - dim(A + B).
inline std::size_t intersection_dim(const std::vector<Vec> &a, const std::vector<Vec> &b, std::uint32_t p) {
    return rank(a, p) + rank(b, p) - rank(concat(a, b), p);
}

/// Growing echelon basis; `add` keeps the vector iff it is independent of
/// those already kept.
struct Reducer {
    std::uint32_t p;
    std::vector<Vec> rows;
    std::vector<std::size_t> pivots;

    bool add(Vec v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::size_t c = pivots[r];
            if (!v[c])
                continue;
            const std::uint64_t f = p - v[c];
            for (std::size_t k = 0; k < v.size(); ++k)
                if (rows[r][k])
                    v[k] = static_cast<std::uint32_t>((v[k] + f * rows[r][k]) % p);
        }
        std::size_t c = 0;
        while (c < v.size() && !v[c])
            ++c;
        if (c == v.size())
            return false;
        const std::uint64_t inv = inverse(v[c], p);
        for (auto &x : v)
            x = static_cast<std::uint32_t>(x * inv % p);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r][c]) {
                const std::uint64_t f = p - rows[r][c];
                for (std::size_t k = 0; k < v.size(); ++k)
                    if (v[k])
                        rows[r][k] = static_cast<std::uint32_t>((rows[r][k] + f * v[k]) % p);
            }
        rows.push_back(std::move(v));
        pivots.push_back(c);
        return true;
    }
};

/// Positive roots in simple coordinates, generated from the Cartan matrix
/// by simple reflections.
inline std::vector<std::vector<std::int64_t>> positive_roots(const std::vector<std::vector<std::int64_t>> &cartan) {
    const std::size_t n = cartan.size();
    std::vector<std::vector<std::int64_t>> found;
    std::vector<std::vector<std::int64_t>> todo;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::int64_t> e(n, 0);
        e[i] = 1;
        todo.push_back(e);
    }
    auto known = [&](const std::vector<std::int64_t> &r) {
        for (const auto &f : found)
            if (f == r)
                return true;
        return false;
    };
    while (!todo.empty()) {
        auto r = todo.back();
        todo.pop_back();
        if (known(r))
            continue;
        found.push_back(r);
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t pairing = 0;
            for (std::size_t j = 0; j < n; ++j)
                pairing += r[j] * cartan[i][j];
            auto s = r;
            s[i] -= pairing;
            bool positive = true;
            for (auto x : s)
                positive = positive && x >= 0;
            if (positive && !known(s))
                todo.push_back(s);
        }
    }
    std::sort(found.begin(), found.end(), [](const auto &a, const auto &b) {
        std::int64_t ha = 0, hb = 0;
        for (auto x : a)
            ha += x;
        for (auto x : b)
            hb += x;
        return ha != hb ? ha < hb : a < b;
    });
    return found;
}

inline IntDense multiply(const IntDense &a, const IntDense &b) {
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    IntDense c(n, std::vector<Integer>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t)
            if (a[i][t] != 0)
                for (std::size_t j = 0; j < m; ++j)
                    c[i][j] += a[i][t] * b[t][j];
    return c;
}

inline bool is_zero(const IntDense &a) {
    for (const auto &r : a)
        for (const auto &x : r)
            if (x != 0)
                return false;
    return true;
}

/// Lowering operators of one fundamental representation: for every
/// positive root, the divided powers F^(0), F^(1), ... up to the last
/// nonzero one, reduced mod p.
struct FactorTables {
    std::size_t dim = 0;
    std::size_t highest = 0;
    std::vector<std::vector<ModDense>> divided; // [root][k]
};

inline FactorTables factor_tables(const pbwdeg::RootSystemData &rs, int fundamental, std::uint32_t p,
                                  const std::vector<std::vector<std::int64_t>> &roots) {
    const pbwdeg::IntegralRep rep = pbwdeg::fundamental_rep(rs, fundamental);
    const std::size_t n = rs.rank();
    FactorTables t;
    t.dim = rep.dim;
    t.highest = rep.highest;
    auto index_of = [&](const std::vector<std::int64_t> &r) -> int {
        for (std::size_t b = 0; b < roots.size(); ++b)
            if (roots[b] == r)
                return static_cast<int>(b);
        return -1;
    };
    std::vector<IntDense> f(roots.size());
    for (std::size_t b = 0; b < roots.size(); ++b) {
        const auto &beta = roots[b];
        int height = 0;
        for (auto x : beta)
            height += static_cast<int>(x);
        if (height == 1) {
            std::size_t i = 0;
            while (beta[i] == 0)
                ++i;
            f[b] = rep.simple_lowering[i].to_dense();
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            auto rest = beta;
            rest[i] -= 1;
            const int r_idx = index_of(rest);
            if (r_idx < 0)
                continue;
            std::vector<std::int64_t> simple(n, 0);
            simple[i] = 1;
            const int a_idx = index_of(simple);
            int r = 0;
            for (auto s = rest; (s[i] -= 1, index_of(s) >= 0);)
                ++r;
            IntDense ab = multiply(f[a_idx], f[r_idx]);
            IntDense ba = multiply(f[r_idx], f[a_idx]);
            IntDense c(ab.size(), std::vector<Integer>(ab.size(), 0));
            for (std::size_t x = 0; x < ab.size(); ++x)
                for (std::size_t y = 0; y < ab.size(); ++y) {
                    Integer v = ab[x][y] - ba[x][y];
                    if (v % (r + 1) != 0)
                        throw std::logic_error("commutator not divisible by r+1");
                    c[x][y] = v / (r + 1);
                }
            f[b] = std::move(c);
            break;
        }
        if (f[b].empty())
            throw std::logic_error("no simple summand found");
    }
    t.divided.resize(roots.size());
    for (std::size_t b = 0; b < roots.size(); ++b) {
        IntDense power(t.dim, std::vector<Integer>(t.dim, 0));
        for (std::size_t i = 0; i < t.dim; ++i)
            power[i][i] = 1;
        Integer fact = 1;
        for (int k = 0;; ++k) {
            if (k > 0) {
                power = multiply(f[b], power);
                fact *= k;
            }
            if (is_zero(power))
                break;
            ModDense m(t.dim, Vec(t.dim, 0));
            for (std::size_t i = 0; i < t.dim; ++i)
                for (std::size_t j = 0; j < t.dim; ++j) {
                    if (power[i][j] % fact != 0)
                        throw std::logic_error("non-integral divided power in a fundamental representation");
                    m[i][j] = reduce(power[i][j] / fact, p);
                }
            t.divided[b].push_back(std::move(m));
        }
    }
    return t;
}

/// Tensor product of fundamental representations, first factor most
/// significant in the flat index.
class Ambient {
  public:
    Ambient(const pbwdeg::RootSystemData &rs, const std::vector<int> &fundamentals, std::uint32_t p)
        : p_(p), roots_(positive_roots(rs.cartan)) {
        std::map<int, FactorTables> memo;
        for (int i : fundamentals) {
            if (!memo.count(i))
                memo.emplace(i, factor_tables(rs, i, p, roots_));
            factors_.push_back(memo.at(i));
        }
        dim_ = 1;
        for (const auto &f : factors_)
            dim_ *= f.dim;
    }

    std::size_t dim() const { return dim_; }
    std::uint32_t p() const { return p_; }
    std::size_t num_roots() const { return roots_.size(); }
    std::size_t num_factors() const { return factors_.size(); }

    Vec highest() const {
        Vec v(dim_, 0);
        std::size_t idx = 0;
        for (const auto &f : factors_)
            idx = idx * f.dim + f.highest;
        v[idx] = 1;
        return v;
    }

    int nilpotency(std::size_t beta) const {
        int s = 0;
        for (const auto &f : factors_)
            s += static_cast<int>(f.divided[beta].size()) - 1;
        return s;
    }

    /// F_beta^(k) v, summing over all ways of distributing k over the factors.
    Vec apply(std::size_t beta, int k, const Vec &v) const { return apply_from(beta, k, v, 0); }

  private:
    Vec mode_product(const ModDense &m, std::size_t s, const Vec &v) const {
        std::size_t stride = 1;
        for (std::size_t t = s + 1; t < factors_.size(); ++t)
            stride *= factors_[t].dim;
        const std::size_t d = factors_[s].dim;
        const std::size_t block = d * stride;
        Vec out(dim_, 0);
        for (std::size_t outer = 0; outer < dim_; outer += block)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t r = 0; r < d; ++r) {
                    const std::uint64_t x = m[r][c];
                    if (!x)
                        continue;
                    for (std::size_t in = 0; in < stride; ++in) {
                        const std::uint32_t y = v[outer + c * stride + in];
                        if (y)
                            out[outer + r * stride + in] =
                                static_cast<std::uint32_t>((out[outer + r * stride + in] + x * y) % p_);
                    }
                }
        return out;
    }

    Vec apply_from(std::size_t beta, int k, const Vec &v, std::size_t s) const {
        const auto &table = factors_[s].divided[beta];
        const int top = static_cast<int>(table.size()) - 1;
        if (s + 1 == factors_.size())
            return k > top ? Vec(dim_, 0) : mode_product(table[k], s, v);
        Vec acc(dim_, 0);
        for (int a = 0; a <= std::min(k, top); ++a) {
            const Vec w = apply_from(beta, k - a, mode_product(table[a], s, v), s + 1);
            for (std::size_t i = 0; i < dim_; ++i)
                acc[i] = (acc[i] + w[i]) % p_;
        }
        return acc;
    }

    std::uint32_t p_;
    std::vector<std::vector<std::int64_t>> roots_;
    std::vector<FactorTables> factors_;
    std::size_t dim_ = 1;
};

inline std::vector<int> fundamentals_of(const pbwdeg::Weight &lam) {
    std::vector<int> out;
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::int64_t c = 0; c < lam[i]; ++c)
            out.push_back(static_cast<int>(i));
    return out;
}

inline bool nonzero(const Vec &v) {
    for (auto x : v)
        if (x)
            return true;
    return false;
}

/// V(lam) mod p inside the tensor of its fundamentals, with every ordered
/// monomial F_{b_1}^(k_1) ... F_{b_N}^(k_N) v grouped by total degree.
struct OracleModule {
    Ambient ambient;
    std::vector<std::vector<Vec>> monomials; // by degree
    std::vector<std::size_t> graded_dims;
    /// Adapted basis: independent monomial vectors selected in degree order.
    std::vector<Vec> adapted;
    std::vector<int> adapted_degree;

    std::vector<Vec> upto(int n) const {
        std::vector<Vec> out;
        for (int d = 0; d <= n && d < static_cast<int>(monomials.size()); ++d)
            out.insert(out.end(), monomials[d].begin(), monomials[d].end());
        return out;
    }
    int top() const { return static_cast<int>(graded_dims.size()) - 1; }
};

inline OracleModule weyl_module(const pbwdeg::RootSystemData &rs, const std::vector<int> &fundamentals,
                                std::uint32_t p) {
    OracleModule m{Ambient(rs, fundamentals, p), {}, {}, {}, {}};
    const Ambient &amb = m.ambient;
    const std::size_t nroots = amb.num_roots();
    std::function<void(int, const Vec &, int)> walk = [&](int b, const Vec &v, int deg) {
        if (b < 0) {
            if (static_cast<int>(m.monomials.size()) <= deg)
                m.monomials.resize(deg + 1);
            m.monomials[deg].push_back(v);
            return;
        }
        for (int k = 0; k <= amb.nilpotency(b); ++k) {
            const Vec w = k == 0 ? v : amb.apply(b, k, v);
            if (nonzero(w))
                walk(b - 1, w, deg + k);
        }
    };
    walk(static_cast<int>(nroots) - 1, amb.highest(), 0);

    Reducer red{p, {}, {}};
    for (int n = 0; n < static_cast<int>(m.monomials.size()); ++n) {
        std::size_t fresh = 0;
        for (const auto &v : m.monomials[n])
            if (red.add(v)) {
                m.adapted.push_back(v);
                m.adapted_degree.push_back(n);
                ++fresh;
            }
        m.graded_dims.push_back(fresh);
    }
    while (m.graded_dims.size() > 1 && m.graded_dims.back() == 0)
        m.graded_dims.pop_back();
    return m;
}

inline OracleModule weyl_module(const pbwdeg::RootSystemData &rs, const pbwdeg::Weight &lam, std::uint32_t p) {
    return weyl_module(rs, fundamentals_of(lam), p);
}

inline std::vector<std::size_t> pbw_dims(const pbwdeg::RootSystemData &rs, const pbwdeg::Weight &lam,
                                         std::uint32_t p) {
    return weyl_module(rs, lam, p).graded_dims;
}

/// Whether F_0 v lies outside V_{(p-1)N - 1} in V(2(p-1)rho).
inline bool f0_nonzero(const pbwdeg::RootSystemData &rs, std::uint32_t p) {
    const OracleModule m = weyl_module(rs, pbwdeg::splitting_weight(rs, p), p);
    Vec w = m.ambient.highest();
    for (int b = static_cast<int>(m.ambient.num_roots()) - 1; b >= 0; --b)
        w = m.ambient.apply(b, static_cast<int>(p) - 1, w);
    if (!nonzero(w))
        return false;
    const int degree = static_cast<int>(p - 1) * static_cast<int>(m.ambient.num_roots());
    std::vector<Vec> below = m.upto(degree - 1);
    const std::size_t r = rank(below, p);
    below.push_back(w);
    return rank(below, p) > r;
}

struct Row {
    int n;
    std::size_t dim_phi_Vn;
    std::size_t dim_im_cap_Tn;
    std::size_t gr_image;
    bool operator==(const Row &) const = default;
};

inline Vec kronecker(const Vec &a, const Vec &b, std::uint32_t p) {
    Vec out(a.size() * b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i * b.size() + j] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[i]) * b[j] % p);
    return out;
}

struct MapTable {
    std::vector<Row> rows;
    std::size_t rank_phi = 0;
    std::size_t gr_total = 0;
    bool strict = true;
};

/// Per-degree data of V(sum lam_s) -> tensor of V(lam_s), with T_n spanned
/// by Kronecker products of adapted factor vectors of total degree <= n.
inline MapTable map_table(const pbwdeg::RootSystemData &rs, const std::vector<pbwdeg::Weight> &lams,
                          std::uint32_t p) {
    std::vector<int> all;
    std::vector<OracleModule> factors;
    for (const auto &l : lams) {
        const auto f = fundamentals_of(l);
        all.insert(all.end(), f.begin(), f.end());
        factors.push_back(weyl_module(rs, f, p));
    }
    const OracleModule src = weyl_module(rs, all, p);

    std::vector<std::pair<Vec, int>> tensors{{Vec{1}, 0}};
    for (const auto &f : factors) {
        std::vector<std::pair<Vec, int>> next;
        for (const auto &[t, d] : tensors)
            for (std::size_t q = 0; q < f.adapted.size(); ++q)
                next.emplace_back(kronecker(t, f.adapted[q], p), d + f.adapted_degree[q]);
        tensors = std::move(next);
    }
    auto T = [&](int n) {
        std::vector<Vec> out;
        for (const auto &[t, d] : tensors)
            if (d <= n)
                out.push_back(t);
        return out;
    };

    int top = src.top();
    int sum_tops = 0;
    for (const auto &f : factors)
        sum_tops += f.top();
    top = std::max(top, sum_tops);

    MapTable out;
    const std::vector<Vec> image = src.upto(src.top());
    out.rank_phi = rank(image, p);
    for (int n = 0; n <= top; ++n) {
        const std::vector<Vec> vn = src.upto(n);
        const std::size_t dvn = rank(vn, p);
        const std::size_t cap_prev = n == 0 ? 0 : intersection_dim(vn, T(n - 1), p);
        Row r{n, dvn, intersection_dim(image, T(n), p), dvn - cap_prev};
        out.strict = out.strict && r.dim_phi_Vn == r.dim_im_cap_Tn;
        out.gr_total += r.gr_image;
        out.rows.push_back(r);
    }
    return out;
}

} // namespace oracle
