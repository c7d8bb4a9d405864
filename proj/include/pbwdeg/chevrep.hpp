#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbwdeg/errors.hpp"
#include "pbwdeg/integral_rep.hpp"
#include "pbwdeg/lattice_span.hpp"
#include "pbwdeg/rootsys.hpp"

namespace pbwdeg {

namespace detail {

inline bool is_root_any(const RootSystemData &rs, std::vector<std::int64_t> c) {
    if (rs.is_root(c))
        return true;
    for (auto &x : c)
        x = -x;
    return rs.is_root(c);
}

/// Smallest simple index i with beta - alpha_i a positive root, or -1 for
/// simple beta.
inline int first_simple_summand(const RootSystemData &rs, int b) {
    if (rs.heights[b] == 1)
        return -1;
    for (int i = 0; i < rs.rank(); ++i) {
        auto c = rs.positive_roots[b];
        c[i] -= 1;
        if (rs.is_root(c))
            return i;
    }
    throw DefectError("nonsimple root without a simple summand");
}

inline int minus_simple(const RootSystemData &rs, int b, int i) {
    auto c = rs.positive_roots[b];
    c[i] -= 1;
    return rs.root_index(c);
}

/// Ratio c with a = c * b for matrices of equal support; nullopt otherwise.
inline std::optional<Integer> matrix_ratio(const SparseIntMatrix &a, const SparseIntMatrix &b) {
    for (std::size_t j = 0; j < b.ncols(); ++j) {
        if (b.column(j).empty())
            continue;
        const auto &[r, bv] = b.column(j).front();
        Integer av = a.at(r, j);
        if (av % bv != 0)
            return std::nullopt;
        Integer c = av / bv;
        if (!(a == b.scaled(c)))
            return std::nullopt;
        return c;
    }
    return std::nullopt;
}

} // namespace detail

/// Largest r such that beta - r*alpha is a root (positive or negative),
/// for positive root indices a (alpha) and b (beta).
inline int root_string_below(const RootSystemData &rs, int a, int b) {
    auto c = rs.positive_roots[b];
    const auto &al = rs.positive_roots[a];
    int r = 0;
    while (true) {
        for (int i = 0; i < rs.rank(); ++i)
            c[i] -= al[i];
        if (!detail::is_root_any(rs, c))
            return r;
        ++r;
    }
}

/// Structure constants N(alpha, beta) of [E_alpha, E_beta] = N E_{alpha+beta}
/// for positive roots, indexed by root position.
struct StructureConstants {
    std::map<std::pair<int, int>, Integer> table;

    bool defined(int a, int b) const { return table.count({a, b}) > 0; }
    const Integer &operator()(int a, int b) const {
        auto it = table.find({a, b});
        if (it == table.end())
            throw InvalidArgument("alpha + beta is not a root");
        return it->second;
    }
};

/// E_beta and F_beta on a representation for every positive root beta.
///
/// Nonsimple root vectors follow E_beta = [E_a, E_{beta-a}] / (r+1) with a
/// the first simple root for which beta - a is a root and r the length of
/// the a-string below beta - a; the same rule defines F_beta.
struct RootMatrices {
    std::vector<SparseIntMatrix> raising;
    std::vector<SparseIntMatrix> lowering;
};

inline RootMatrices root_matrices(const RootSystemData &rs, const IntegralRep &rep) {
    RootMatrices out;
    out.raising.resize(rs.N);
    out.lowering.resize(rs.N);
    for (int b = 0; b < rs.N; ++b) {
        const int i = detail::first_simple_summand(rs, b);
        if (i < 0) {
            out.raising[b] = rep.simple_raising[b];
            out.lowering[b] = rep.simple_lowering[b];
            continue;
        }
        const int g = detail::minus_simple(rs, b, i);
        const Integer d = root_string_below(rs, i, g) + 1;
        auto divide = [&](SparseIntMatrix m) {
            for (std::size_t c = 0; c < m.ncols(); ++c)
                for (auto &e : m.column(c)) {
                    if (e.second % d != 0)
                        throw DefectError("root vector recursion is not integral");
                    e.second /= d;
                }
            return m;
        };
        out.raising[b] = divide(commutator(out.raising[i], out.raising[g]));
        out.lowering[b] = divide(commutator(out.lowering[i], out.lowering[g]));
    }
    return out;
}

IntegralRep fundamental_rep(const RootSystemData &rs, int i);

/// Structure constants read off from the root vectors in the first
/// fundamental representation.
inline StructureConstants chevalley_constants(const RootSystemData &rs) {
    const IntegralRep v = fundamental_rep(rs, 0);
    const RootMatrices m = root_matrices(rs, v);
    StructureConstants sc;
    for (int a = 0; a < rs.N; ++a)
        for (int b = 0; b < rs.N; ++b) {
            auto c = rs.positive_roots[a];
            for (int i = 0; i < rs.rank(); ++i)
                c[i] += rs.positive_roots[b][i];
            const int s = rs.root_index(c);
            if (s < 0)
                continue;
            auto ratio = detail::matrix_ratio(commutator(m.raising[a], m.raising[b]), m.raising[s]);
            if (!ratio)
                throw DefectError("bracket of root vectors is not a multiple of a root vector");
            sc.table[{a, b}] = *ratio;
        }
    return sc;
}

/// Empty string if antisymmetry, the Chevalley condition |N| = r+1, the
/// sign convention and the Jacobi identity hold; otherwise a description.
inline std::string check_structure_constants(const RootSystemData &rs, const StructureConstants &sc) {
    for (const auto &[ab, n] : sc.table) {
        const auto [a, b] = ab;
        if (!sc.defined(b, a) || sc(b, a) != -n)
            return "antisymmetry fails at (" + std::to_string(a) + "," + std::to_string(b) + ")";
        if (abs(n) != root_string_below(rs, a, b) + 1)
            return "Chevalley condition fails at (" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
    for (int b = 0; b < rs.N; ++b) {
        const int i = detail::first_simple_summand(rs, b);
        if (i >= 0 && sc(i, detail::minus_simple(rs, b, i)) <= 0)
            return "sign convention fails for root " + std::to_string(b);
    }
    auto sum = [&](int a, int b) {
        auto c = rs.positive_roots[a];
        for (int i = 0; i < rs.rank(); ++i)
            c[i] += rs.positive_roots[b][i];
        return rs.root_index(c);
    };
    // [a,[b,c]] + [b,[c,a]] + [c,[a,b]] as a multiple of E_{a+b+c}
    for (int a = 0; a < rs.N; ++a)
        for (int b = 0; b < rs.N; ++b)
            for (int c = 0; c < rs.N; ++c) {
                Integer total = 0;
                bool any = false;
                const int triple[3] = {a, b, c};
                for (int r = 0; r < 3; ++r) {
                    int x = triple[r], y = triple[(r + 1) % 3], z = triple[(r + 2) % 3];
                    int yz = sum(y, z);
                    if (yz < 0 || sum(x, yz) < 0)
                        continue;
                    any = true;
                    total += sc(y, z) * sc(x, yz);
                }
                if (any && total != 0)
                    return "Jacobi identity fails on (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) + ")";
            }
    return {};
}

/// F_beta on `rep`: the stored simple lowering for simple beta, otherwise
/// [F_a, F_{beta-a}] / N(a, beta-a).
inline SparseIntMatrix root_lowering_operator(const RootSystemData &rs, const IntegralRep &rep,
                                              const StructureConstants &sc, int beta) {
    if (beta < 0 || beta >= rs.N)
        throw InvalidArgument("root index " + std::to_string(beta) + " out of range");
    const int i = detail::first_simple_summand(rs, beta);
    if (i < 0)
        return rep.simple_lowering[beta];
    const int g = detail::minus_simple(rs, beta, i);
    SparseIntMatrix m = commutator(rep.simple_lowering[i], root_lowering_operator(rs, rep, sc, g));
    const Integer &d = sc(i, g);
    for (std::size_t c = 0; c < m.ncols(); ++c)
        for (auto &e : m.column(c)) {
            if (e.second % d != 0)
                throw DefectError("root lowering recursion is not integral");
            e.second /= d;
        }
    return m;
}

/// Adjoint representation on the Chevalley lattice spanned by E_beta, H_i,
/// F_beta, with brackets evaluated in the faithful representation `v`.
/// Basis: E_beta for decreasing root index, then H_1..H_n, then F_beta.
inline IntegralRep adjoint_rep(const RootSystemData &rs, const IntegralRep &v) {
    const int n = rs.rank();
    const RootMatrices rm = root_matrices(rs, v);
    std::vector<SparseIntMatrix> basis;
    IntegralRep out;
    for (int b = rs.N - 1; b >= 0; --b) {
        basis.push_back(rm.raising[b]);
        out.weights.push_back(rs.root_weight(b));
    }
    for (int i = 0; i < n; ++i) {
        basis.push_back(cartan_action(v, i));
        out.weights.push_back(Weight::zero(n));
    }
    for (int b = 0; b < rs.N; ++b) {
        basis.push_back(rm.lowering[b]);
        out.weights.push_back(-rs.root_weight(b));
    }
    out.dim = basis.size();
    out.highest = 0;

    auto express = [&](const SparseIntMatrix &x, const Weight &w) -> IntVec {
        if (x.is_zero())
            return {};
        if (!w.is_zero()) {
            for (std::size_t k = 0; k < basis.size(); ++k)
                if (out.weights[k] == w) {
                    auto c = detail::matrix_ratio(x, basis[k]);
                    if (!c)
                        throw DefectError("bracket is not a multiple of a root vector");
                    return {{k, *c}};
                }
            throw DefectError("bracket has a weight outside the root system");
        }
        // weight zero: diagonal, equal to sum_i c_i H_i with c_i recovered
        // from the diagonal entries through exact elimination
        std::vector<std::vector<Rational>> a;
        for (std::size_t j = 0; j < v.dim; ++j) {
            std::vector<Rational> row;
            for (int i = 0; i < n; ++i)
                row.emplace_back(v.weights[j][i]);
            row.emplace_back(x.at(j, j));
            a.push_back(std::move(row));
        }
        std::vector<int> piv;
        std::size_t r = 0;
        for (int c = 0; c < n && r < a.size(); ++c) {
            std::size_t s = r;
            while (s < a.size() && a[s][c] == 0)
                ++s;
            if (s == a.size())
                continue;
            std::swap(a[r], a[s]);
            for (std::size_t t = 0; t < a.size(); ++t)
                if (t != r && a[t][c] != 0) {
                    Rational f = a[t][c] / a[r][c];
                    for (int k = 0; k <= n; ++k)
                        a[t][k] -= f * a[r][k];
                }
            piv.push_back(c);
            ++r;
        }
        IntVec res;
        SparseIntMatrix check(v.dim, v.dim);
        for (std::size_t k = 0; k < piv.size(); ++k) {
            Rational c = a[k][n] / a[k][piv[k]];
            if (denominator(c) != 1)
                throw DefectError("Cartan part of a bracket is not integral");
            if (numerator(c) != 0) {
                res.emplace_back(static_cast<std::uint64_t>(rs.N + piv[k]), numerator(c));
                check = check + basis[rs.N + piv[k]].scaled(numerator(c));
            }
        }
        if (!(check == x))
            throw DefectError("weight-zero bracket is not in the Cartan span");
        return res;
    };
    auto ad = [&](const SparseIntMatrix &x, const Weight &shift) {
        SparseIntMatrix m(out.dim, out.dim);
        for (std::size_t k = 0; k < basis.size(); ++k)
            for (const auto &[r, c] : express(commutator(x, basis[k]), out.weights[k] + shift))
                m.add(r, k, c);
        m.prune();
        return m;
    };
    for (int i = 0; i < n; ++i) {
        out.simple_lowering.push_back(ad(v.simple_lowering[i], -rs.simple_root_weight(i)));
        out.simple_raising.push_back(ad(v.simple_raising[i], rs.simple_root_weight(i)));
    }
    return out;
}

/// Fundamental representation V(omega_{i+1}) over Z (i is 0-based).
///
/// Minuscule weights, the B_n vector representation and the 7-dimensional
/// G2 representation use the one-dimensional-weight-space model. The
/// remaining classical fundamentals are the lattices generated by the top
/// wedge inside exterior powers of the vector representation, and the
/// second G2 fundamental is the adjoint representation.
inline IntegralRep fundamental_rep(const RootSystemData &rs, int i) {
    const int n = rs.rank();
    if (i < 0 || i >= n)
        throw InvalidArgument("fundamental index " + std::to_string(i + 1) + " out of range 1.." +
                              std::to_string(n));
    auto omega = [&](int j) {
        Weight w = Weight::zero(n);
        w[j] = 1;
        return w;
    };
    auto wedge_span = [&](int j) {
        auto wedge = std::make_shared<const IntegralRep>(exterior_power(thin_rep(rs, omega(0)), j + 1));
        TensorAmbient amb({wedge});
        return span_lattice(rs, amb, amb.highest_vector(), omega(j)).rep;
    };
    switch (rs.cartan_type.family) {
    case Family::A:
        return thin_rep(rs, omega(i));
    case Family::B:
        if (i == 0 || i == n - 1)
            return thin_rep(rs, omega(i));
        return wedge_span(i);
    case Family::C:
        if (i == 0)
            return thin_rep(rs, omega(0));
        return wedge_span(i);
    case Family::D:
        if (i == 0 || i >= n - 2)
            return thin_rep(rs, omega(i));
        return wedge_span(i);
    case Family::G:
        if (i == 0)
            return thin_rep(rs, omega(0));
        return adjoint_rep(rs, thin_rep(rs, omega(0)));
    }
    throw UnsupportedType("unsupported Cartan type " + rs.cartan_type.name());
}

} // namespace pbwdeg
