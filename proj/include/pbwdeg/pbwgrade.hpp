#pragma once

#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "pbwdeg/errors.hpp"
#include "pbwdeg/exactla.hpp"
#include "pbwdeg/version.hpp"
#include "pbwdeg/weylmod.hpp"

namespace pbwdeg {

/// Sparse vector over F_p: (index, value) pairs sorted by index.
using PrimeVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline PrimeVec apply_sparse(const SparsePrimeMatrix &m, const PrimeVec &v) {
    const std::uint32_t p = m.modulus();
    std::unordered_map<std::uint32_t, std::uint64_t> acc;
    for (const auto &[j, x] : v)
        for (const auto &[i, y] : m.column(j))
            acc[i] = (acc[i] + static_cast<std::uint64_t>(x) * y) % p;
    PrimeVec out;
    for (const auto &[i, x] : acc)
        if (x)
            out.emplace_back(i, static_cast<std::uint32_t>(x));
    std::sort(out.begin(), out.end());
    return out;
}

/// Cumulative PBW filtration V_0 within V_1 within ... of a mod-p Weyl
/// module, stored per weight block.
///
/// Each block keeps an echelon basis whose rows were inserted in order of
/// filtration degree, so V_n restricted to the block is spanned by the
/// rows of degree at most n.
struct PBWGraded {
    Weight lam;
    std::uint32_t p = 2;
    std::vector<std::size_t> graded_dims;
    /// Least n with V_n = V(lam); equals graded_dims.size() - 1 when
    /// `complete`.
    std::size_t n_top = 0;
    bool complete = false;

    std::vector<WeightBlock> blocks;
    std::vector<EchelonModP> echelon;
    std::vector<std::vector<int>> row_degree;

    std::size_t dim_upto(std::size_t n) const {
        std::size_t s = 0;
        for (std::size_t d = 0; d <= n && d < graded_dims.size(); ++d)
            s += graded_dims[d];
        return s;
    }

    /// Whether the weight-homogeneous vector v (global coordinates, lying in
    /// block b) belongs to V_n.
    bool contains(std::size_t b, const PrimeVec &v, int n) const {
        std::vector<std::uint32_t> local(blocks[b].size, 0);
        for (const auto &[g, x] : v) {
            if (g < blocks[b].offset || g >= blocks[b].offset + blocks[b].size)
                throw DimensionMismatch("vector is not supported on the given weight block");
            local[g - blocks[b].offset] = x;
        }
        if (n < 0)
            return std::all_of(local.begin(), local.end(), [](std::uint32_t x) { return x == 0; });
        const auto &deg = row_degree[b];
        const std::size_t k = static_cast<std::size_t>(
            std::upper_bound(deg.begin(), deg.end(), n) - deg.begin());
        return echelon[b].reduce_prefix(local, k);
    }

    /// Basis of V_n as global sparse vectors.
    std::vector<PrimeVec> basis_upto(int n) const {
        std::vector<PrimeVec> out;
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (std::size_t r = 0; r < echelon[b].rank(); ++r) {
                if (row_degree[b][r] > n)
                    break;
                PrimeVec v;
                const auto &row = echelon[b].rows()[r];
                for (std::size_t c = 0; c < row.size(); ++c)
                    if (row[c])
                        v.emplace_back(static_cast<std::uint32_t>(blocks[b].offset + c), row[c]);
                out.push_back(std::move(v));
            }
        return out;
    }
};

/// Computes V_n = V_{n-1} + sum_{beta, j} F_beta^(p^j) New_{n - p^j}, where
/// New_m are the vectors added at degree m. Mod p every F_beta^(k) is a
/// unit multiple of a product of the F_beta^(p^j), so these generate the
/// same filtration as all ordered PBW monomials.
inline PBWGraded pbw_filtration(WeylModuleP &m, std::optional<int> n_max = std::nullopt) {
    const auto &rs = m.root_system();
    const std::uint32_t p = m.p();
    PBWGraded g;
    g.lam = m.lam();
    g.p = p;
    g.blocks = m.blocks();
    for (const auto &b : g.blocks)
        g.echelon.emplace_back(p, b.size);
    g.row_degree.resize(g.blocks.size());

    struct Step {
        int beta;
        int k;
    };
    std::vector<Step> steps;
    int max_step = 0;
    for (int b = 0; b < rs.N; ++b)
        for (long long k = 1; k <= m.nilpotency(b); k *= p) {
            steps.push_back({b, static_cast<int>(k)});
            max_step = std::max(max_step, static_cast<int>(k));
        }

    std::vector<std::vector<PrimeVec>> fresh; // fresh[n] = vectors new at degree n
    auto insert = [&](const PrimeVec &v, int deg) -> std::optional<PrimeVec> {
        if (v.empty())
            return std::nullopt;
        const Weight &w = m.weights()[v.front().first];
        const std::size_t b = m.block_of(w);
        const auto &blk = g.blocks[b];
        std::vector<std::uint32_t> local(blk.size, 0);
        for (const auto &[i, x] : v) {
            if (m.weights()[i] != w)
                throw DefectError("operator image is not weight-homogeneous");
            local[i - blk.offset] = x;
        }
        if (!g.echelon[b].insert(std::move(local)))
            return std::nullopt;
        g.row_degree[b].push_back(deg);
        PrimeVec out;
        const auto &row = g.echelon[b].rows().back();
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c])
                out.emplace_back(static_cast<std::uint32_t>(blk.offset + c), row[c]);
        return out;
    };

    std::size_t total = 0;
    fresh.push_back({});
    if (auto r = insert({{static_cast<std::uint32_t>(m.highest_index()), 1u}}, 0)) {
        fresh[0].push_back(*r);
        total = 1;
    }
    g.graded_dims.push_back(total);
    for (int n = 1; total < m.dim(); ++n) {
        if (n_max && n > *n_max)
            break;
        bool live = false;
        for (int k = 1; k <= max_step && k <= n; ++k)
            live = live || !fresh[n - k].empty();
        if (!live)
            throw DefectError("PBW filtration stabilised below the module dimension");
        fresh.push_back({});
        for (const auto &st : steps) {
            if (st.k > n || fresh[n - st.k].empty())
                continue;
            const auto &op = m.lowering(st.beta, st.k);
            for (std::size_t q = 0; q < fresh[n - st.k].size(); ++q)
                if (auto r = insert(apply_sparse(op, fresh[n - st.k][q]), n))
                    fresh[n].push_back(std::move(*r));
        }
        g.graded_dims.push_back(fresh[n].size());
        total += fresh[n].size();
    }
    g.complete = total == m.dim();
    g.n_top = g.graded_dims.size() - 1;
    while (g.complete && g.n_top > 0 && g.graded_dims[g.n_top] == 0)
        --g.n_top;
    g.graded_dims.resize(g.n_top + 1);
    return g;
}

/// Validates a root order: a permutation of 0..N-1.
inline void require_root_order(const RootSystemData &rs, const std::vector<int> &order) {
    std::vector<int> s = order;
    std::sort(s.begin(), s.end());
    std::vector<int> id(rs.N);
    std::iota(id.begin(), id.end(), 0);
    if (s != id)
        throw InvalidArgument("root order is not a permutation of the positive roots");
}

inline std::vector<int> canonical_root_order(const RootSystemData &rs) {
    std::vector<int> id(rs.N);
    std::iota(id.begin(), id.end(), 0);
    return id;
}

/// F_0 = F_{order[0]}^(p-1) F_{order[1]}^(p-1) ... F_{order[N-1]}^(p-1).
inline SparsePrimeMatrix build_F0(WeylModuleP &m, const std::vector<int> &order) {
    require_root_order(m.root_system(), order);
    SparsePrimeMatrix acc = SparsePrimeMatrix::identity(m.p(), m.dim());
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        acc = m.lowering(*it, static_cast<int>(m.p()) - 1) * acc;
    return acc;
}

/// F_0 v_lam, applying the factors right to left.
inline PrimeVec apply_F0(WeylModuleP &m, const std::vector<int> &order, PrimeVec v) {
    require_root_order(m.root_system(), order);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        v = apply_sparse(m.lowering(*it, static_cast<int>(m.p()) - 1), v);
    return v;
}

struct F0Report {
    std::string cartan;
    std::uint32_t p = 2;
    Weight weight;
    int degree = 0;
    bool nonzero = false;
    std::vector<std::size_t> graded_dims;
    double elapsed_ms = 0;
    std::string tool_version = kToolVersion;
};

struct F0Options {
    long long ceiling = 20000;
    BuildOptions build{Realization::Chain, std::nullopt};
};

/// Decides whether F_0 v lies outside V_{(p-1)N - 1} on a module built for
/// 2(p-1)rho; `elapsed_ms` is left at 0.
inline F0Report check_f0_module(WeylModuleP &m) {
    const auto &rs = m.root_system();
    if (m.lam() != splitting_weight(rs, m.p()))
        throw InvalidArgument("module highest weight (" + m.lam().to_string() + ") is not 2(p-1)rho");
    F0Report r;
    r.cartan = rs.cartan_type.name();
    r.p = m.p();
    r.weight = m.lam();
    r.degree = static_cast<int>(m.p() - 1) * rs.N;
    const PBWGraded g = pbw_filtration(m);
    r.graded_dims = g.graded_dims;
    const PrimeVec w = apply_F0(m, canonical_root_order(rs), {{0u, 1u}});
    if (!w.empty()) {
        const std::size_t b = m.block_of(m.weights()[w.front().first]);
        r.nonzero = !g.contains(b, w, r.degree - 1);
    }
    return r;
}

inline void require_within_ceiling(const Integer &dim, long long ceiling) {
    if (dim > ceiling)
        throw SizeCeilingExceeded(static_cast<long long>(dim), ceiling);
}

/// Builds V(2(p-1)rho) mod p and runs check_f0_module.
inline F0Report check_f0(const RootSystemData &rs, long long p, const F0Options &opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    const Weight lam = splitting_weight(rs, p);
    require_within_ceiling(weyl_dim(rs, lam), opts.ceiling);
    auto lattice = std::make_shared<const WeylLatticeZ>(build_weyl_lattice(rs, lam, opts.build));
    WeylModuleP m(rs, lattice, p);
    F0Report r = check_f0_module(m);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

struct OrderInvarianceReport {
    bool invariant = true;
    bool central = true;
    /// Orders whose F_0 differ, when not invariant.
    std::vector<int> order_a, order_b;
    /// Root whose F_beta fails to commute with F_0, or -1.
    int noncentral_root = -1;

    bool ok() const { return invariant && central; }
};

/// Compares F_0 under `trials` pseudorandom root orders (fixed seed) with
/// the canonical one and checks that F_0 commutes with every F_beta.
inline OrderInvarianceReport check_F0_order_invariance(WeylModuleP &m, int trials,
                                                       std::uint64_t seed = 20240601) {
    const auto &rs = m.root_system();
    OrderInvarianceReport rep;
    const auto canon = canonical_root_order(rs);
    const SparsePrimeMatrix f0 = build_F0(m, canon);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials && rep.invariant; ++t) {
        auto order = canon;
        std::shuffle(order.begin(), order.end(), rng);
        if (!(build_F0(m, order) == f0)) {
            rep.invariant = false;
            rep.order_a = canon;
            rep.order_b = order;
        }
    }
    for (int b = 0; b < rs.N && rep.central; ++b) {
        const auto &f = m.lowering(b, 1);
        if (!(f * f0 == f0 * f)) {
            rep.central = false;
            rep.noncentral_root = b;
        }
    }
    return rep;
}

} // namespace pbwdeg
