#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "pbwdeg/errors.hpp"
#include "pbwdeg/exactla.hpp"
#include "pbwdeg/pbwgrade.hpp"
#include "pbwdeg/version.hpp"
#include "pbwdeg/weylmod.hpp"

namespace pbwdeg {

struct RingOptions {
    long long ceiling = 20000;
    BuildOptions build{Realization::Chain, std::nullopt};
};

/// One Weyl module factor with its PBW filtration and the inverse of the
/// filtration-adapted basis, block by block.
struct FilteredFactor {
    Weight lam;
    std::shared_ptr<const WeylLatticeZ> lattice;
    std::unique_ptr<WeylModuleP> module;
    PBWGraded filtration;
    /// inverse[b] is the inverse (row convention) of the adapted basis of
    /// block b: adapted coordinates y = x * inverse.
    std::vector<std::vector<std::vector<std::uint32_t>>> inverse;
    /// PBW degree of adapted basis vector g (global numbering).
    std::vector<int> degree;
};

namespace detail {

inline std::vector<std::vector<std::uint32_t>> invert_mod_p(std::vector<std::vector<std::uint32_t>> a,
                                                            std::uint32_t p) {
    const std::size_t n = a.size();
    std::vector<std::vector<std::uint32_t>> inv(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1 % p;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t r = c;
        while (r < n && a[r][c] == 0)
            ++r;
        if (r == n)
            throw DefectError("adapted basis is singular");
        std::swap(a[r], a[c]);
        std::swap(inv[r], inv[c]);
        const std::uint32_t s = inv_mod(a[c][c], p);
        for (std::size_t k = 0; k < n; ++k) {
            a[c][k] = mul_mod(a[c][k], s, p);
            inv[c][k] = mul_mod(inv[c][k], s, p);
        }
        for (std::size_t t = 0; t < n; ++t) {
            if (t == c || a[t][c] == 0)
                continue;
            const std::uint32_t f = a[t][c];
            for (std::size_t k = 0; k < n; ++k) {
                a[t][k] = sub_mod(a[t][k], mul_mod(f, a[c][k], p), p);
                inv[t][k] = sub_mod(inv[t][k], mul_mod(f, inv[c][k], p), p);
            }
        }
    }
    return inv;
}

} // namespace detail

inline FilteredFactor make_filtered_factor(const RootSystemData &rs, const Weight &lam, long long p,
                                           const BuildOptions &build) {
    FilteredFactor f;
    f.lam = lam;
    f.lattice = std::make_shared<const WeylLatticeZ>(build_weyl_lattice(rs, lam, build));
    f.module = std::make_unique<WeylModuleP>(rs, f.lattice, p);
    f.filtration = pbw_filtration(*f.module);
    const auto &g = f.filtration;
    f.degree.assign(f.module->dim(), 0);
    for (std::size_t b = 0; b < g.blocks.size(); ++b) {
        f.inverse.push_back(detail::invert_mod_p(g.echelon[b].rows(), g.p));
        for (std::size_t r = 0; r < g.blocks[b].size; ++r)
            f.degree[g.blocks[b].offset + r] = g.row_degree[b][r];
    }
    return f;
}

/// Sparse vector over F_p with 64-bit indices (tensor coordinates).
using TensorVec = std::vector<std::pair<std::uint64_t, std::uint32_t>>;

/// The comultiplication phi: V(lam_1 + ... + lam_m) -> V(lam_1) (x) ... (x)
/// V(lam_m) mod p, with v_sum |-> v_1 (x) ... (x) v_m, and the PBW
/// filtrations of source and factors.
struct ComultiplicationMap {
    std::uint32_t p = 2;
    std::vector<FilteredFactor> factors;
    std::shared_ptr<const WeylLatticeZ> source_lattice;
    std::unique_ptr<WeylModuleP> source;
    PBWGraded source_filtration;
    std::uint64_t tensor_dim = 1;
    std::vector<std::uint64_t> strides;

    /// phi of source basis vector g in tensor coordinates (the lattice
    /// basis vector reduced mod p).
    TensorVec image(std::size_t g) const {
        TensorVec out;
        for (const auto &[i, x] : source_lattice->lattice.basis_vector(g)) {
            const std::uint32_t r = mod_p(x, p);
            if (r)
                out.emplace_back(i, r);
        }
        return out;
    }

    /// Rewrites tensor coordinates in the tensor product of the adapted
    /// factor bases.
    TensorVec to_adapted(TensorVec v) const {
        for (std::size_t s = 0; s < factors.size(); ++s) {
            const auto &f = factors[s];
            const auto &blocks = f.filtration.blocks;
            std::unordered_map<std::uint64_t, std::uint64_t> acc;
            for (const auto &[idx, c] : v) {
                const auto d = static_cast<std::size_t>((idx / strides[s]) % f.module->dim());
                const std::size_t b = f.module->block_of(f.module->weights()[d]);
                const auto &row = f.inverse[b][d - blocks[b].offset];
                const std::uint64_t base = idx - d * strides[s];
                for (std::size_t j = 0; j < row.size(); ++j)
                    if (row[j]) {
                        auto &slot = acc[base + (blocks[b].offset + j) * strides[s]];
                        slot = (slot + static_cast<std::uint64_t>(c) * row[j]) % p;
                    }
            }
            v.clear();
            for (const auto &[i, x] : acc)
                if (x)
                    v.emplace_back(i, static_cast<std::uint32_t>(x));
            std::sort(v.begin(), v.end());
        }
        return v;
    }

    int tensor_degree(std::uint64_t idx) const {
        int d = 0;
        for (std::size_t s = 0; s < factors.size(); ++s)
            d += factors[s].degree[(idx / strides[s]) % factors[s].module->dim()];
        return d;
    }

    /// Tensor basis indices of weight w.
    std::vector<std::uint64_t> tensor_basis_of_weight(const Weight &w) const {
        std::vector<std::uint64_t> out;
        auto rec = [&](auto &&self, std::size_t s, const Weight &rest, std::uint64_t idx) -> void {
            const auto &blocks = factors[s].filtration.blocks;
            if (s + 1 == factors.size()) {
                const std::size_t b = factors[s].module->block_of(rest);
                if (b == static_cast<std::size_t>(-1))
                    return;
                for (std::size_t j = 0; j < blocks[b].size; ++j)
                    out.push_back(idx + (blocks[b].offset + j) * strides[s]);
                return;
            }
            for (const auto &blk : blocks)
                for (std::size_t j = 0; j < blk.size; ++j)
                    self(self, s + 1, rest - blk.weight, idx + (blk.offset + j) * strides[s]);
        };
        rec(rec, 0, w, 0);
        return out;
    }
};

inline ComultiplicationMap comultiplication_map(const RootSystemData &rs, const std::vector<Weight> &weights,
                                                long long p, const RingOptions &opts = {}) {
    if (weights.empty())
        throw InvalidArgument("comultiplication needs at least one factor");
    ComultiplicationMap m;
    m.p = prime_modulus(p);
    Weight sum = Weight::zero(rs.rank());
    Integer tensor = 1;
    for (const auto &w : weights) {
        if (static_cast<int>(w.size()) != rs.rank())
            throw DimensionMismatch("weight has rank " + std::to_string(w.size()) + ", expected " +
                                    std::to_string(rs.rank()));
        if (!w.is_dominant())
            throw InvalidArgument("weight " + w.to_string() + " is not dominant");
        sum += w;
        tensor *= weyl_dim(rs, w);
    }
    const Integer source_dim = weyl_dim(rs, sum);
    if (source_dim > opts.ceiling)
        throw SizeCeilingExceeded(static_cast<long long>(source_dim), opts.ceiling);
    if (tensor > opts.ceiling)
        throw SizeCeilingExceeded(static_cast<long long>(tensor), opts.ceiling);

    std::vector<std::shared_ptr<const IntegralRep>> reps;
    std::string desc;
    for (const auto &w : weights) {
        m.factors.push_back(make_filtered_factor(rs, w, p, opts.build));
        const auto &lat = m.factors.back().lattice;
        reps.push_back(std::shared_ptr<const IntegralRep>(lat, &lat->rep()));
        desc += (desc.empty() ? "V(" : "(x)V(") + w.to_string() + ")";
    }
    m.source_lattice = std::make_shared<const WeylLatticeZ>(build_cartan_component(rs, reps, desc));
    m.source = std::make_unique<WeylModuleP>(rs, m.source_lattice, p);
    m.source_filtration = pbw_filtration(*m.source);
    m.strides.assign(m.factors.size(), 1);
    for (std::size_t s = m.factors.size(); s-- > 0;) {
        m.strides[s] = m.tensor_dim;
        m.tensor_dim *= m.factors[s].module->dim();
    }
    return m;
}

/// Per-degree dimensions of the filtered map phi.
struct DegreeRow {
    int n = 0;
    std::size_t dim_phi_Vn = 0;       // dim phi(V_n)
    std::size_t dim_im_cap_Tn = 0;    // dim(im phi intersect T_n)
    std::size_t gr_image = 0;         // dim phi(V_n) - dim(phi(V_n) intersect T_{n-1})
};

struct FilteredMapData {
    std::size_t source_dim = 0;
    std::size_t rank_phi = 0;
    std::vector<DegreeRow> table;
    bool injective_ungraded = false;
    bool strict = false;
    bool gr_injective = false;
    std::size_t gr_image_total = 0;
};

/// dim phi(V_n), dim(im phi intersect T_n) and the graded image dimensions,
/// where T_n is spanned by tensors of adapted basis vectors of total
/// degree at most n.
///
/// Each weight is handled separately. Columns are ordered by decreasing
/// degree, so in an echelon basis the vectors lying in T_n are exactly the
/// rows whose pivot has degree at most n; inserting phi(V_0), phi(V_1), ...
/// in order gives every count from one echelon.
inline FilteredMapData analyze_filtered_map(const ComultiplicationMap &m) {
    const auto &src = m.source_filtration;
    FilteredMapData out;
    out.source_dim = m.source->dim();
    const int top_src = static_cast<int>(src.n_top);
    int top_tensor = 0;
    for (const auto &f : m.factors)
        top_tensor += static_cast<int>(f.filtration.n_top);
    const int top = std::max(top_src, top_tensor);
    std::vector<std::size_t> phi_vn(top + 1, 0), cap_prev(top + 1, 0), im_cap(top + 1, 0);

    for (std::size_t b = 0; b < src.blocks.size(); ++b) {
        const auto &blk = src.blocks[b];
        std::vector<std::uint64_t> cols = m.tensor_basis_of_weight(blk.weight);
        std::vector<int> coldeg(cols.size());
        std::vector<std::size_t> order(cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            coldeg[j] = m.tensor_degree(cols[j]);
            order[j] = j;
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
            return coldeg[a] != coldeg[c] ? coldeg[a] > coldeg[c] : cols[a] < cols[c];
        });
        std::unordered_map<std::uint64_t, std::size_t> local;
        std::vector<int> local_deg(cols.size());
        for (std::size_t j = 0; j < order.size(); ++j) {
            local[cols[order[j]]] = j;
            local_deg[j] = coldeg[order[j]];
        }
        // adapted images of the block's basis vectors
        std::vector<std::vector<std::uint32_t>> img(blk.size, std::vector<std::uint32_t>(cols.size(), 0));
        for (std::size_t q = 0; q < blk.size; ++q)
            for (const auto &[i, x] : m.to_adapted(m.image(blk.offset + q))) {
                auto it = local.find(i);
                if (it == local.end())
                    throw DefectError("image of a weight vector has the wrong weight");
                img[q][it->second] = x;
            }
        EchelonModP ech(m.p, cols.size());
        auto count_pivots_upto = [&](int n) {
            std::size_t c = 0;
            for (auto pv : ech.pivots())
                if (local_deg[pv] <= n)
                    ++c;
            return c;
        };
        const auto &rows = src.echelon[b].rows();
        const auto &deg = src.row_degree[b];
        std::size_t r = 0;
        for (int n = 0; n <= top; ++n) {
            for (; r < rows.size() && deg[r] <= n; ++r) {
                std::vector<std::uint32_t> v(cols.size(), 0);
                for (std::size_t q = 0; q < blk.size; ++q)
                    if (rows[r][q])
                        for (std::size_t j = 0; j < cols.size(); ++j)
                            if (img[q][j])
                                v[j] = add_mod(v[j], mul_mod(rows[r][q], img[q][j], m.p), m.p);
                ech.insert(std::move(v));
            }
            phi_vn[n] += ech.rank();
            cap_prev[n] += n == 0 ? 0 : count_pivots_upto(n - 1);
        }
        for (int n = 0; n <= top; ++n)
            im_cap[n] += count_pivots_upto(n);
        out.rank_phi += ech.rank();
    }
    out.strict = true;
    for (int n = 0; n <= top; ++n) {
        DegreeRow row;
        row.n = n;
        row.dim_phi_Vn = phi_vn[n];
        row.dim_im_cap_Tn = im_cap[n];
        row.gr_image = phi_vn[n] - cap_prev[n];
        out.gr_image_total += row.gr_image;
        if (row.dim_phi_Vn != row.dim_im_cap_Tn)
            out.strict = false;
        out.table.push_back(row);
    }
    out.injective_ungraded = out.rank_phi == out.source_dim;
    out.gr_injective = out.injective_ungraded && out.strict;
    return out;
}

struct MultReport {
    std::string cartan;
    std::uint32_t p = 2;
    Weight lam, mu;
    std::size_t dim_source = 0;
    std::size_t rank_phi = 0;
    bool injective_ungraded = false;
    bool strict = false;
    bool gr_injective = false;
    bool verdict_mult_surjective = false;
    std::vector<DegreeRow> table;
    std::string note;
    std::string tool_version = kToolVersion;
};

/// Decides gr-injectivity of V^a(lam + mu) -> V^a(lam) (x) V^a(mu), which is
/// equivalent to surjectivity of H0^a(lam*) (x) H0^a(mu*) -> H0^a(lam* + mu*).
inline MultReport check_mult_surjective(const RootSystemData &rs, const Weight &lam, const Weight &mu,
                                        long long p, const RingOptions &opts = {}) {
    const ComultiplicationMap m = comultiplication_map(rs, {lam, mu}, p, opts);
    const FilteredMapData d = analyze_filtered_map(m);
    MultReport r;
    r.cartan = rs.cartan_type.name();
    r.p = m.p;
    r.lam = lam;
    r.mu = mu;
    r.dim_source = d.source_dim;
    r.rank_phi = d.rank_phi;
    r.injective_ungraded = d.injective_ungraded;
    r.strict = d.strict;
    r.gr_injective = d.gr_injective;
    r.verdict_mult_surjective = d.gr_injective;
    r.table = d.table;
    r.note = "verdict concerns H0a(" + star_weight(rs, lam).to_string() + ") (x) H0a(" +
             star_weight(rs, mu).to_string() + ") -> H0a(" + star_weight(rs, lam + mu).to_string() + ")";
    return r;
}

struct GenRow {
    int n = 0;
    bool injective_ungraded = false;
    bool strict = false;
    bool gr_injective = false;
    std::size_t gr_image_total = 0;
    std::size_t weyl_dim = 0;
    std::vector<DegreeRow> table;
};

struct GenReport {
    std::string cartan;
    std::uint32_t p = 2;
    Weight lam;
    int n_max = 0;
    std::vector<GenRow> rows;
    bool generated = true;
    std::string tool_version = kToolVersion;
};

inline GenRow nfold_row(const RootSystemData &rs, const Weight &lam, int n, long long p, const RingOptions &opts) {
    const ComultiplicationMap m = comultiplication_map(rs, std::vector<Weight>(n, lam), p, opts);
    const FilteredMapData d = analyze_filtered_map(m);
    GenRow row;
    row.n = n;
    row.injective_ungraded = d.injective_ungraded;
    row.strict = d.strict;
    row.gr_injective = d.gr_injective;
    row.gr_image_total = d.gr_image_total;
    row.weyl_dim = static_cast<std::size_t>(weyl_dim(rs, static_cast<std::int64_t>(n) * lam));
    row.table = d.table;
    if (row.gr_injective && row.gr_image_total != row.weyl_dim)
        throw DefectError("gr-injective map with graded image of the wrong dimension");
    return row;
}

/// Checks V^a(n lam) -> V^a(lam)^{(x) n} for 2 <= n <= n_max.
inline GenReport check_degree_one_generation(const RootSystemData &rs, const Weight &lam, long long p,
                                             int n_max, const RingOptions &opts = {}) {
    if (n_max < 2)
        throw InvalidArgument("n_max must be at least 2");
    GenReport r;
    r.cartan = rs.cartan_type.name();
    r.p = prime_modulus(p);
    r.lam = lam;
    r.n_max = n_max;
    for (int n = 2; n <= n_max; ++n) {
        r.rows.push_back(nfold_row(rs, lam, n, p, opts));
        r.generated = r.generated && r.rows.back().gr_injective;
    }
    return r;
}

struct HilbertReport {
    std::string cartan;
    std::uint32_t p = 2;
    Weight lam;
    Weight lam_star;
    int n_max = 0;
    std::vector<std::size_t> h;
    std::vector<std::size_t> weyl_dims;
    /// profile[n][d] = graded image dimension in PBW degree d of the n-fold map.
    std::vector<std::vector<std::size_t>> profile;
    std::string tool_version = kToolVersion;
};

/// h(n) = dimension of the degree-n part of the subalgebra of R^a(lam*)
/// generated in degree 1, computed as the total graded image of the n-fold
/// map.
inline HilbertReport hilbert_function(const RootSystemData &rs, const Weight &lam, long long p, int n_max,
                                      const RingOptions &opts = {}) {
    if (n_max < 0)
        throw InvalidArgument("n_max must be nonnegative");
    HilbertReport r;
    r.cartan = rs.cartan_type.name();
    r.p = prime_modulus(p);
    r.lam = lam;
    r.lam_star = star_weight(rs, lam);
    r.n_max = n_max;
    r.h.push_back(1);
    r.weyl_dims.push_back(1);
    r.profile.push_back({1});
    for (int n = 1; n <= n_max; ++n) {
        GenRow row = nfold_row(rs, lam, n, p, opts);
        r.h.push_back(row.gr_image_total);
        r.weyl_dims.push_back(row.weyl_dim);
        std::vector<std::size_t> prof;
        for (const auto &t : row.table)
            prof.push_back(t.gr_image);
        r.profile.push_back(std::move(prof));
    }
    return r;
}

} // namespace pbwdeg
