#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "pbwdeg/errors.hpp"
#include "pbwdeg/integer.hpp"
#include "pbwdeg/rootsys.hpp"
#include "pbwdeg/sparse.hpp"
#include "pbwdeg/weyl_dim.hpp"

namespace pbwdeg {

/// A representation over Z given by integer matrices of the simple
/// Chevalley generators in a weight basis.
struct IntegralRep {
    std::size_t dim = 0;
    std::vector<Weight> weights;
    std::vector<SparseIntMatrix> simple_lowering;
    std::vector<SparseIntMatrix> simple_raising;
    /// Basis index of a highest-weight vector.
    std::size_t highest = 0;

    int rank() const { return static_cast<int>(simple_lowering.size()); }
};

/// M^k / k! computed exactly; throws NonIntegralDividedPower when an entry
/// is not an integer.
inline SparseIntMatrix divided_power_matrix(const SparseIntMatrix &m, int k) {
    if (m.nrows() != m.ncols())
        throw DimensionMismatch("divided power of a non-square matrix");
    if (k < 0)
        throw InvalidArgument("negative divided-power exponent");
    if (k == 0)
        return SparseIntMatrix::identity(m.nrows());
    // M^(j) = M^(j-1) M / j as long as the quotients stay integral
    SparseIntMatrix r = m;
    for (int j = 2; j <= k; ++j) {
        SparseIntMatrix prod = r * m;
        bool divisible = true;
        for (std::size_t c = 0; c < prod.ncols() && divisible; ++c)
            for (auto &e : prod.column(c))
                if (e.second % j != 0) {
                    divisible = false;
                    break;
                }
        if (!divisible) {
            // an intermediate divided power is fractional; decide on M^k/k!
            SparseIntMatrix power = m;
            for (int t = 2; t <= k; ++t)
                power = power * m;
            const Integer f = factorial(k);
            for (std::size_t c = 0; c < power.ncols(); ++c)
                for (auto &e : power.column(c)) {
                    if (e.second % f != 0)
                        throw NonIntegralDividedPower(
                            "entry (" + std::to_string(e.first) + "," + std::to_string(c) +
                            ") of M^" + std::to_string(k) + "/" + std::to_string(k) +
                            "! is not an integer");
                    e.second /= f;
                }
            return power;
        }
        for (std::size_t c = 0; c < prod.ncols(); ++c)
            for (auto &e : prod.column(c))
                e.second /= j;
        r = std::move(prod);
        if (r.is_zero())
            return SparseIntMatrix(m.nrows(), m.ncols());
    }
    return r;
}

/// All divided powers M^(0), M^(1), ... up to the last nonzero one.
inline std::vector<SparseIntMatrix> divided_power_table(const SparseIntMatrix &m) {
    std::vector<SparseIntMatrix> t{SparseIntMatrix::identity(m.nrows())};
    if (m.is_zero())
        return t;
    t.push_back(m);
    for (int j = 2;; ++j) {
        SparseIntMatrix prod = t.back() * m;
        for (std::size_t c = 0; c < prod.ncols(); ++c)
            for (auto &e : prod.column(c)) {
                if (e.second % j != 0)
                    throw NonIntegralDividedPower("divided power " + std::to_string(j) +
                                                  " is not integral");
                e.second /= j;
            }
        if (prod.is_zero())
            break;
        t.push_back(std::move(prod));
        if (j > 4096)
            throw DefectError("operator is not nilpotent");
    }
    return t;
}

namespace detail {

/// Root coordinates of lam - mu, recorded while walking down strings.
using Depth = std::vector<std::int64_t>;

} // namespace detail

/// Representation whose weight spaces are all one-dimensional, modelled
/// on the saturated weight set of `lam` (minuscule weights, the B_n vector
/// representation, the 7-dimensional G2 representation).
///
/// On an alpha_i-string u_0, ..., u_m the generators act by
/// F u_j = (j+1) u_{j+1} and E u_{j+1} = (m-j) u_j, i.e. u_j = F^(j) u_0.
inline IntegralRep thin_rep(const RootSystemData &rs, const Weight &lam) {
    const int n = rs.rank();
    // saturated weight set, recorded with depths for a stable order
    std::map<Weight, detail::Depth> depth;
    std::vector<Weight> frontier{lam};
    depth[lam] = detail::Depth(n, 0);
    while (!frontier.empty()) {
        std::vector<Weight> next;
        for (const auto &mu : frontier) {
            for (int i = 0; i < n; ++i) {
                Weight cur = mu;
                auto d = depth[mu];
                for (std::int64_t k = 1; k <= mu[i]; ++k) {
                    cur -= rs.simple_root_weight(i);
                    d[i] += 1;
                    if (!depth.count(cur)) {
                        depth[cur] = d;
                        next.push_back(cur);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<std::pair<detail::Depth, Weight>> order;
    for (const auto &[w, d] : depth)
        order.emplace_back(d, w);
    std::sort(order.begin(), order.end(), [](const auto &a, const auto &b) {
        auto sa = std::accumulate(a.first.begin(), a.first.end(), std::int64_t{0});
        auto sb = std::accumulate(b.first.begin(), b.first.end(), std::int64_t{0});
        return sa != sb ? sa < sb : a.first < b.first;
    });
    if (Integer(order.size()) != weyl_dim(rs, lam))
        throw DefectError("weight " + lam.to_string() + " has a multiple weight space");

    IntegralRep rep;
    rep.dim = order.size();
    std::map<Weight, std::uint32_t> index;
    for (std::size_t j = 0; j < order.size(); ++j) {
        rep.weights.push_back(order[j].second);
        index[order[j].second] = static_cast<std::uint32_t>(j);
    }
    for (int i = 0; i < n; ++i) {
        SparseIntMatrix f(rep.dim, rep.dim), e(rep.dim, rep.dim);
        const Weight &a = rs.simple_root_weight(i);
        for (std::size_t j = 0; j < rep.dim; ++j) {
            const Weight &mu = rep.weights[j];
            int up = 0;
            for (Weight w = mu + a; index.count(w); w += a)
                ++up;
            int down = 0;
            for (Weight w = mu - a; index.count(w); w -= a)
                ++down;
            const int m = up + down;
            if (down > 0)
                f.add(index[mu - a], j, up + 1);
            if (up > 0)
                e.add(index[mu + a], j, m - up + 1);
        }
        f.prune();
        e.prune();
        rep.simple_lowering.push_back(std::move(f));
        rep.simple_raising.push_back(std::move(e));
    }
    rep.highest = 0;
    return rep;
}

/// k-th exterior power of a representation; generators act as derivations
/// on wedges of basis vectors (basis: increasing k-subsets, lexicographic).
inline IntegralRep exterior_power(const IntegralRep &v, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > v.dim)
        throw InvalidArgument("exterior power degree out of range");
    std::vector<std::vector<std::uint32_t>> subsets;
    std::vector<std::uint32_t> cur;
    auto rec = [&](auto &&self, std::uint32_t start) -> void {
        if (cur.size() == static_cast<std::size_t>(k)) {
            subsets.push_back(cur);
            return;
        }
        for (std::uint32_t s = start; s < v.dim; ++s) {
            cur.push_back(s);
            self(self, s + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    std::map<std::vector<std::uint32_t>, std::uint32_t> index;
    for (std::size_t j = 0; j < subsets.size(); ++j)
        index[subsets[j]] = static_cast<std::uint32_t>(j);

    IntegralRep out;
    out.dim = subsets.size();
    for (const auto &s : subsets) {
        Weight w = Weight::zero(v.weights.front().size());
        for (auto t : s)
            w += v.weights[t];
        out.weights.push_back(w);
    }
    auto derive = [&](const SparseIntMatrix &x) {
        SparseIntMatrix m(out.dim, out.dim);
        for (std::size_t j = 0; j < subsets.size(); ++j) {
            const auto &s = subsets[j];
            for (std::size_t pos = 0; pos < s.size(); ++pos) {
                for (const auto &[r, c] : x.column(s[pos])) {
                    if (std::find(s.begin(), s.end(), r) != s.end() && r != s[pos])
                        continue;
                    if (r == s[pos]) {
                        m.add(j, j, c);
                        continue;
                    }
                    auto t = s;
                    t[pos] = r;
                    // sign: r moves past the entries strictly between s[pos] and r
                    int between = 0;
                    for (auto u : s)
                        if ((u > std::min(s[pos], r)) && (u < std::max(s[pos], r)))
                            ++between;
                    std::sort(t.begin(), t.end());
                    m.add(index[t], j, (between % 2) ? Integer(-c) : c);
                }
            }
        }
        m.prune();
        return m;
    };
    for (const auto &f : v.simple_lowering)
        out.simple_lowering.push_back(derive(f));
    for (const auto &e : v.simple_raising)
        out.simple_raising.push_back(derive(e));
    out.highest = 0;
    return out;
}

/// H_i as a diagonal matrix: <weight, alpha_i^vee> on each basis vector.
inline SparseIntMatrix cartan_action(const IntegralRep &rep, int i) {
    SparseIntMatrix h(rep.dim, rep.dim);
    for (std::size_t j = 0; j < rep.dim; ++j)
        if (rep.weights[j][i] != 0)
            h.add(j, j, rep.weights[j][i]);
    h.prune();
    return h;
}

/// First violation of [E_i, F_j] = delta_ij H_i, weight shifts, or the
/// Serre relations; empty if none.
inline std::string check_chevalley_relations(const RootSystemData &rs, const IntegralRep &rep) {
    const int n = rs.rank();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            SparseIntMatrix c = commutator(rep.simple_raising[i], rep.simple_lowering[j]);
            SparseIntMatrix want = i == j ? cartan_action(rep, i) : SparseIntMatrix(rep.dim, rep.dim);
            if (!(c == want))
                return "[E_" + std::to_string(i + 1) + ", F_" + std::to_string(j + 1) +
                       "] differs from the expected Cartan action";
        }
        for (std::size_t c = 0; c < rep.dim; ++c) {
            for (const auto &[r, v] : rep.simple_lowering[i].column(c))
                if (rep.weights[r] != rep.weights[c] - rs.simple_root_weight(i))
                    return "F_" + std::to_string(i + 1) + " breaks weight shift at column " +
                           std::to_string(c);
            for (const auto &[r, v] : rep.simple_raising[i].column(c))
                if (rep.weights[r] != rep.weights[c] + rs.simple_root_weight(i))
                    return "E_" + std::to_string(i + 1) + " breaks weight shift at column " +
                           std::to_string(c);
        }
    }
    // Serre: (ad X_i)^{1 - a_ij} X_j = 0
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const auto reps = 1 - rs.cartan[i][j];
            for (int which = 0; which < 2; ++which) {
                const auto &xi = which ? rep.simple_raising[i] : rep.simple_lowering[i];
                SparseIntMatrix acc = which ? rep.simple_raising[j] : rep.simple_lowering[j];
                for (std::int64_t t = 0; t < reps; ++t)
                    acc = commutator(xi, acc);
                if (!acc.is_zero())
                    return std::string("Serre relation fails for ") + (which ? "E" : "F") +
                           " pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            }
        }
    return {};
}

} // namespace pbwdeg
