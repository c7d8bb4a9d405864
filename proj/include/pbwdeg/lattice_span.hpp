#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "pbwdeg/errors.hpp"
#include "pbwdeg/exactla.hpp"
#include "pbwdeg/integral_rep.hpp"
#include "pbwdeg/rootsys.hpp"
#include "pbwdeg/sparse.hpp"

namespace pbwdeg {

/// Tensor product of integral representations acting on pure-tensor
/// coordinates. Basis index is mixed radix with the first factor most
/// significant.
class TensorAmbient {
  public:
    explicit TensorAmbient(std::vector<std::shared_ptr<const IntegralRep>> factors)
        : factors_(std::move(factors)) {
        if (factors_.empty())
            throw InvalidArgument("tensor product needs at least one factor");
        rank_ = factors_.front()->rank();
        strides_.assign(factors_.size(), 1);
        dim_ = 1;
        for (std::size_t s = factors_.size(); s-- > 0;) {
            strides_[s] = dim_;
            if (factors_[s]->dim == 0)
                throw InvalidArgument("zero-dimensional tensor factor");
            if (dim_ > (std::uint64_t{1} << 62) / factors_[s]->dim)
                throw InvalidArgument("tensor ambient too large for 64-bit indexing");
            dim_ *= factors_[s]->dim;
        }
        powers_.resize(factors_.size());
        for (std::size_t s = 0; s < factors_.size(); ++s) {
            if (factors_[s]->rank() != rank_)
                throw DimensionMismatch("tensor factors of different rank");
            for (int i = 0; i < rank_; ++i)
                powers_[s].push_back(divided_power_table(factors_[s]->simple_lowering[i]));
        }
    }

    std::uint64_t dim() const { return dim_; }
    int rank() const { return rank_; }
    std::size_t num_factors() const { return factors_.size(); }
    const IntegralRep &factor(std::size_t s) const { return *factors_[s]; }
    std::shared_ptr<const IntegralRep> factor_ptr(std::size_t s) const { return factors_[s]; }

    std::uint32_t digit(std::uint64_t idx, std::size_t s) const {
        return static_cast<std::uint32_t>((idx / strides_[s]) % factors_[s]->dim);
    }
    std::uint64_t stride(std::size_t s) const { return strides_[s]; }

    std::uint64_t encode(const std::vector<std::uint32_t> &digits) const {
        std::uint64_t idx = 0;
        for (std::size_t s = 0; s < digits.size(); ++s)
            idx += digits[s] * strides_[s];
        return idx;
    }

    Weight weight(std::uint64_t idx) const {
        Weight w = Weight::zero(static_cast<std::size_t>(rank_));
        for (std::size_t s = 0; s < factors_.size(); ++s)
            w += factors_[s]->weights[digit(idx, s)];
        return w;
    }

    /// Tensor of the factors' highest-weight basis vectors.
    IntVec highest_vector() const {
        std::vector<std::uint32_t> d;
        for (const auto &f : factors_)
            d.push_back(static_cast<std::uint32_t>(f->highest));
        return IntVec{{encode(d), Integer(1)}};
    }

    /// Largest k with F_i^(k) possibly nonzero on the ambient.
    int nilpotency(int i) const {
        int k = 0;
        for (const auto &p : powers_)
            k += static_cast<int>(p[i].size()) - 1;
        return k;
    }

    /// Divided-power tables of one operator, one table per factor.
    using Tables = std::vector<const std::vector<SparseIntMatrix> *>;

    /// F_i^(k) v.
    IntVec lower(int i, int k, const IntVec &v) const {
        Tables tabs;
        for (const auto &p : powers_)
            tabs.push_back(&p[i]);
        return apply_divided(tabs, k, v);
    }

    /// X^(k) v for a primitive operator X given by its divided powers on
    /// each factor: X^(k) on a tensor is the sum over k_1 + ... + k_m = k of
    /// X^(k_1) (x) ... (x) X^(k_m).
    IntVec apply_divided(const Tables &tabs, int k, const IntVec &v) const {
        std::unordered_map<std::uint64_t, Integer> acc;
        for (const auto &[idx, c] : v)
            lower_term(tabs, k, idx, c, 0, acc);
        return detail::finish(acc);
    }

    /// E_i v (derivation action).
    IntVec raise(int i, const IntVec &v) const {
        std::unordered_map<std::uint64_t, Integer> acc;
        for (const auto &[idx, c] : v)
            for (std::size_t s = 0; s < factors_.size(); ++s) {
                const auto d = digit(idx, s);
                for (const auto &[r, x] : factors_[s]->simple_raising[i].column(d))
                    acc[idx - d * strides_[s] + r * strides_[s]] += c * x;
            }
        return detail::finish(acc);
    }

  private:
    void lower_term(const Tables &tabs, int k, std::uint64_t idx, const Integer &c, std::size_t s,
                    std::unordered_map<std::uint64_t, Integer> &acc) const {
        const auto &tab = *tabs[s];
        const auto d = digit(idx, s);
        if (s + 1 == factors_.size()) {
            if (k >= static_cast<int>(tab.size()))
                return;
            if (k == 0) {
                acc[idx] += c;
                return;
            }
            for (const auto &[r, x] : tab[k].column(d))
                acc[idx - d * strides_[s] + r * strides_[s]] += c * x;
            return;
        }
        const int top = std::min<int>(k, static_cast<int>(tab.size()) - 1);
        lower_term(tabs, k, idx, c, s + 1, acc);
        for (int a = 1; a <= top; ++a)
            for (const auto &[r, x] : tab[a].column(d))
                lower_term(tabs, k - a, idx - d * strides_[s] + r * strides_[s], c * x, s + 1, acc);
    }

    std::vector<std::shared_ptr<const IntegralRep>> factors_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t dim_ = 0;
    int rank_ = 0;
    // powers_[s][i][k] = F_i^(k) on factor s
    std::vector<std::vector<std::vector<SparseIntMatrix>>> powers_;
};

/// Lattice U_Z(n^-) . top inside a tensor ambient, organised by weight.
struct SpannedLattice {
    Weight top_weight;
    std::vector<Weight> weights;         // one per weight space, in basis order
    std::vector<detail::Depth> depths;   // root coordinates of top_weight - weight
    std::vector<HnfBuilder> spaces;      // HNF rows in ambient coordinates
    std::vector<std::size_t> offsets;    // first basis index of each space
    std::size_t dim = 0;
    /// Simple generators restricted to the lattice basis.
    IntegralRep rep;

    std::size_t space_of(const Weight &w) const {
        auto it = index.find(w);
        return it == index.end() ? npos : it->second;
    }
    /// Lattice basis vector g in ambient coordinates.
    const IntVec &basis_vector(std::size_t g) const {
        auto s = static_cast<std::size_t>(
            std::upper_bound(offsets.begin(), offsets.end(), g) - offsets.begin() - 1);
        return spaces[s].rows()[g - offsets[s]];
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::map<Weight, std::size_t> index;
};

namespace detail {

struct DepthKey {
    std::int64_t total;
    Depth depth;
    auto operator<=>(const DepthKey &) const = default;
};

} // namespace detail

/// Closes `top` (a weight vector of weight `top_weight`) under the simple
/// divided powers F_i^(k), accumulating one HNF per weight space, then
/// restricts E_i and F_i to the resulting lattice basis.
///
/// Weight spaces are completed in order of depth: the space of weight mu is
/// the Z-span of F_i^(k) applied to the spaces of weight mu + k alpha_i.
inline SpannedLattice span_lattice(const RootSystemData &rs, const TensorAmbient &amb,
                                   const IntVec &top, const Weight &top_weight) {
    const int n = rs.rank();
    struct Pending {
        Weight weight;
        HnfBuilder hnf;
    };
    std::map<detail::DepthKey, Pending> pending;
    {
        Pending p{top_weight, HnfBuilder(amb.dim())};
        p.hnf.insert(top);
        pending.emplace(detail::DepthKey{0, detail::Depth(n, 0)}, std::move(p));
    }
    SpannedLattice out;
    out.top_weight = top_weight;
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        Pending &cur = node.mapped();
        cur.hnf.finalize();
        if (cur.hnf.rank() == 0)
            continue;
        const auto &key = node.key();
        for (int i = 0; i < n; ++i) {
            Weight w = cur.weight;
            detail::Depth d = key.depth;
            for (int k = 1; k <= amb.nilpotency(i); ++k) {
                w -= rs.simple_root_weight(i);
                d[i] += 1;
                bool any = false;
                detail::DepthKey nk{key.total + k, d};
                for (const auto &row : cur.hnf.rows()) {
                    IntVec img = amb.lower(i, k, row);
                    if (img.empty())
                        continue;
                    any = true;
                    auto it = pending.find(nk);
                    if (it == pending.end())
                        it = pending.emplace(nk, Pending{w, HnfBuilder(amb.dim())}).first;
                    it->second.hnf.insert(std::move(img));
                }
                if (!any)
                    break;
            }
        }
        out.index[cur.weight] = out.weights.size();
        out.weights.push_back(cur.weight);
        out.depths.push_back(key.depth);
        out.offsets.push_back(out.dim);
        out.dim += cur.hnf.rank();
        out.spaces.push_back(std::move(cur.hnf));
    }

    // restrict the generators to the lattice basis
    IntegralRep &rep = out.rep;
    rep.dim = out.dim;
    rep.highest = 0;
    for (std::size_t s = 0; s < out.weights.size(); ++s)
        for (std::size_t r = 0; r < out.spaces[s].rank(); ++r)
            rep.weights.push_back(out.weights[s]);
    auto restrict_op = [&](int i, bool raising) {
        SparseIntMatrix m(out.dim, out.dim);
        const Weight shift = raising ? rs.simple_root_weight(i) : -rs.simple_root_weight(i);
        for (std::size_t s = 0; s < out.weights.size(); ++s) {
            const std::size_t t = out.space_of(out.weights[s] + shift);
            for (std::size_t r = 0; r < out.spaces[s].rank(); ++r) {
                const auto &row = out.spaces[s].rows()[r];
                IntVec img = raising ? amb.raise(i, row) : amb.lower(i, 1, row);
                if (img.empty())
                    continue;
                if (t == SpannedLattice::npos)
                    throw DefectError("generator leaves the lattice's weight support");
                auto coords = out.spaces[t].coordinates(std::move(img));
                if (!coords)
                    throw DefectError(std::string(raising ? "E_" : "F_") + std::to_string(i + 1) +
                                      " does not preserve the spanned lattice");
                for (std::size_t q = 0; q < coords->size(); ++q)
                    if ((*coords)[q] != 0)
                        m.add(out.offsets[t] + q, out.offsets[s] + r, (*coords)[q]);
            }
        }
        m.prune();
        return m;
    };
    for (int i = 0; i < n; ++i) {
        rep.simple_lowering.push_back(restrict_op(i, false));
        rep.simple_raising.push_back(restrict_op(i, true));
    }
    return out;
}

} // namespace pbwdeg
