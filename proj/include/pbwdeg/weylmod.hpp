#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pbwdeg/chevrep.hpp"
#include "pbwdeg/errors.hpp"
#include "pbwdeg/integral_rep.hpp"
#include "pbwdeg/lattice_span.hpp"
#include "pbwdeg/rootsys.hpp"
#include "pbwdeg/weyl_dim.hpp"

namespace pbwdeg {

/// How the ambient tensor product for V_Z(lam) is chosen.
enum class Realization {
    /// V(omega_1)^{m_1} (x) ... (x) V(omega_n)^{m_n}, indices ascending.
    Fundamental,
    /// V_Z(a) (x) V_Z(b) with lam = a + b splitting the fundamental
    /// factors alternately; each half is built recursively.
    Split,
    /// V_Z(lam - omega_j) (x) V(omega_j), peeling off the smallest
    /// fundamental factor of lam; built recursively.
    Chain,
};

struct BuildOptions {
    Realization realization = Realization::Fundamental;
    /// Explicit sequence of fundamental indices (0-based) for the
    /// Fundamental realization; must expand lam.
    std::optional<std::vector<int>> factor_order;
};

/// Minimal admissible lattice V_Z(lam) = U_Z(n^-) v_lam inside an ambient
/// tensor product.
struct WeylLatticeZ {
    Weight lam;
    /// Human-readable ambient, e.g. "V(1,0)(x)V(0,1)".
    std::string ambient_description;
    std::shared_ptr<const TensorAmbient> ambient;
    SpannedLattice lattice;

    std::size_t dim() const { return lattice.dim; }
    const IntegralRep &rep() const { return lattice.rep; }
    IntVec highest_vector() const { return ambient->highest_vector(); }
};

inline IntegralRep trivial_rep(int rank) {
    IntegralRep r;
    r.dim = 1;
    r.weights.push_back(Weight::zero(rank));
    for (int i = 0; i < rank; ++i) {
        r.simple_lowering.emplace_back(1, 1);
        r.simple_raising.emplace_back(1, 1);
    }
    return r;
}

/// Fundamental indices of lam with multiplicity, ascending.
inline std::vector<int> expand_weight(const Weight &lam) {
    std::vector<int> out;
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::int64_t m = 0; m < lam[i]; ++m)
            out.push_back(static_cast<int>(i));
    return out;
}

/// Spans the cyclic lattice on the tensor of the factors' highest vectors
/// and checks its rank against the Weyl dimension formula.
inline WeylLatticeZ build_cartan_component(const RootSystemData &rs,
                                           std::vector<std::shared_ptr<const IntegralRep>> factors,
                                           std::string description) {
    WeylLatticeZ out;
    out.lam = Weight::zero(rs.rank());
    for (const auto &f : factors)
        out.lam += f->weights[f->highest];
    if (!out.lam.is_dominant())
        throw InvalidArgument("factor highest weights do not sum to a dominant weight");
    if (factors.empty())
        factors.push_back(std::make_shared<const IntegralRep>(trivial_rep(rs.rank())));
    out.ambient = std::make_shared<const TensorAmbient>(std::move(factors));
    out.ambient_description = std::move(description);
    out.lattice = span_lattice(rs, *out.ambient, out.ambient->highest_vector(), out.lam);
    const Integer expected = weyl_dim(rs, out.lam);
    if (Integer(out.dim()) != expected)
        throw RankMismatch(static_cast<long long>(out.dim()), static_cast<long long>(expected));
    return out;
}

namespace detail {

inline std::string fundamental_name(int rank, int i) {
    Weight w = Weight::zero(rank);
    w[i] = 1;
    return "V(" + w.to_string() + ")";
}

inline std::shared_ptr<const WeylLatticeZ>
build_split(const RootSystemData &rs, const std::vector<int> &indices,
            std::map<std::vector<int>, std::shared_ptr<const WeylLatticeZ>> &memo) {
    if (auto it = memo.find(indices); it != memo.end())
        return it->second;
    std::vector<std::shared_ptr<const IntegralRep>> factors;
    std::string desc;
    if (indices.size() <= 1) {
        if (indices.size() == 1) {
            factors.push_back(std::make_shared<const IntegralRep>(fundamental_rep(rs, indices[0])));
            desc = fundamental_name(rs.rank(), indices[0]);
        }
    } else {
        std::vector<int> a, b;
        for (std::size_t k = 0; k < indices.size(); ++k)
            (k % 2 ? b : a).push_back(indices[k]);
        auto la = build_split(rs, a, memo);
        auto lb = build_split(rs, b, memo);
        // aliasing constructors keep the sub-lattices alive with their reps
        factors.push_back(std::shared_ptr<const IntegralRep>(la, &la->rep()));
        factors.push_back(std::shared_ptr<const IntegralRep>(lb, &lb->rep()));
        desc = "V(" + la->lam.to_string() + ")(x)V(" + lb->lam.to_string() + ")";
    }
    auto out = std::make_shared<const WeylLatticeZ>(build_cartan_component(rs, std::move(factors), desc));
    memo[indices] = out;
    return out;
}

inline std::shared_ptr<const WeylLatticeZ> build_chain(const RootSystemData &rs, const Weight &lam) {
    const std::vector<int> indices = expand_weight(lam);
    if (indices.size() <= 1) {
        std::map<std::vector<int>, std::shared_ptr<const WeylLatticeZ>> memo;
        return build_split(rs, indices, memo);
    }
    int best = -1;
    Integer best_dim = 0;
    for (int i = 0; i < rs.rank(); ++i) {
        if (lam[i] == 0)
            continue;
        Weight w = Weight::zero(rs.rank());
        w[i] = 1;
        Integer d = weyl_dim(rs, w);
        if (best < 0 || d < best_dim) {
            best = i;
            best_dim = d;
        }
    }
    Weight rest = lam;
    rest[best] -= 1;
    auto head = build_chain(rs, rest);
    std::vector<std::shared_ptr<const IntegralRep>> factors{
        std::shared_ptr<const IntegralRep>(head, &head->rep()),
        std::make_shared<const IntegralRep>(fundamental_rep(rs, best))};
    return std::make_shared<const WeylLatticeZ>(build_cartan_component(
        rs, std::move(factors), "V(" + rest.to_string() + ")(x)" + fundamental_name(rs.rank(), best)));
}

} // namespace detail

/// V_Z(lam), spanned from the tensor of highest-weight vectors by the simple
/// divided powers.
inline WeylLatticeZ build_weyl_lattice(const RootSystemData &rs, const Weight &lam,
                                       const BuildOptions &opts = {}) {
    if (static_cast<int>(lam.size()) != rs.rank())
        throw DimensionMismatch("weight has rank " + std::to_string(lam.size()) + ", expected " +
                                std::to_string(rs.rank()));
    if (!lam.is_dominant())
        throw InvalidArgument("weight " + lam.to_string() + " is not dominant");
    std::vector<int> indices = expand_weight(lam);
    if (opts.realization == Realization::Split) {
        std::map<std::vector<int>, std::shared_ptr<const WeylLatticeZ>> memo;
        return *detail::build_split(rs, indices, memo);
    }
    if (opts.realization == Realization::Chain)
        return *detail::build_chain(rs, lam);
    if (opts.factor_order) {
        auto given = *opts.factor_order;
        auto sorted = given;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != indices)
            throw InvalidArgument("factor order does not expand the weight " + lam.to_string());
        indices = given;
    }
    std::map<int, std::shared_ptr<const IntegralRep>> fund;
    std::vector<std::shared_ptr<const IntegralRep>> factors;
    std::string desc;
    for (int i : indices) {
        if (!fund.count(i))
            fund[i] = std::make_shared<const IntegralRep>(fundamental_rep(rs, i));
        factors.push_back(fund[i]);
        desc += (desc.empty() ? "" : "(x)") + detail::fundamental_name(rs.rank(), i);
    }
    return build_cartan_component(rs, std::move(factors), desc.empty() ? "trivial" : desc);
}

/// Operators E_beta^(k), F_beta^(k) restricted from the ambient to the lattice
/// basis; throws NonIntegralDividedPower if the lattice is not stable.
class LatticeOperators {
  public:
    LatticeOperators(const RootSystemData &rs, std::shared_ptr<const WeylLatticeZ> lattice)
        : rs_(rs), lat_(std::move(lattice)) {
        const auto &amb = *lat_->ambient;
        for (std::size_t s = 0; s < amb.num_factors(); ++s)
            factor_roots_.push_back(root_matrices(rs_, amb.factor(s)));
        tables_.resize(2 * static_cast<std::size_t>(rs_.N));
    }

    const WeylLatticeZ &lattice() const { return *lat_; }

    /// X^(k) on the lattice, X = F_beta (raising = false) or E_beta.
    SparseIntMatrix restricted(int beta, int k, bool raising) {
        const auto &lat = lat_->lattice;
        const auto &amb = *lat_->ambient;
        const auto &tabs = tables(beta, raising);
        const Weight shift = (raising ? k : -k) * rs_.root_weight(beta);
        SparseIntMatrix m(lat.dim, lat.dim);
        for (std::size_t s = 0; s < lat.weights.size(); ++s) {
            const std::size_t t = lat.space_of(lat.weights[s] + shift);
            for (std::size_t r = 0; r < lat.spaces[s].rank(); ++r) {
                IntVec img = amb.apply_divided(tabs, k, lat.spaces[s].rows()[r]);
                if (img.empty())
                    continue;
                std::optional<std::vector<Integer>> coords;
                if (t != SpannedLattice::npos)
                    coords = lat.spaces[t].coordinates(std::move(img));
                if (!coords)
                    throw NonIntegralDividedPower(
                        std::string(raising ? "E" : "F") + "_beta^(" + std::to_string(k) +
                        ") for root " + std::to_string(beta) + " maps lattice vector " +
                        std::to_string(lat.offsets[s] + r) + " outside the lattice");
                for (std::size_t q = 0; q < coords->size(); ++q)
                    if ((*coords)[q] != 0)
                        m.add(lat.offsets[t] + q, lat.offsets[s] + r, (*coords)[q]);
            }
        }
        m.prune();
        return m;
    }

    /// Largest k for which X^(k) can be nonzero on the ambient.
    int ambient_nilpotency(int beta, bool raising) {
        int k = 0;
        for (const auto *t : tables(beta, raising))
            k += static_cast<int>(t->size()) - 1;
        return k;
    }

  private:
    const TensorAmbient::Tables &tables(int beta, bool raising) {
        auto &slot = tables_[2 * static_cast<std::size_t>(beta) + (raising ? 1 : 0)];
        if (!slot) {
            slot.emplace();
            for (const auto &fr : factor_roots_)
                slot->storage.push_back(
                    divided_power_table(raising ? fr.raising[beta] : fr.lowering[beta]));
            for (const auto &t : slot->storage)
                slot->view.push_back(&t);
        }
        return slot->view;
    }

    struct TableSet {
        std::vector<std::vector<SparseIntMatrix>> storage;
        TensorAmbient::Tables view;
    };

    RootSystemData rs_;
    std::shared_ptr<const WeylLatticeZ> lat_;
    std::vector<RootMatrices> factor_roots_;
    std::vector<std::optional<TableSet>> tables_;
};

/// Contiguous block of basis vectors sharing one weight.
struct WeightBlock {
    Weight weight;
    std::size_t offset = 0;
    std::size_t size = 0;
};

/// The Weyl module V(lam) over F_p with lazily computed divided powers.
///
/// Only X^(p^j) is restricted from the ambient; other divided powers are
/// assembled mod p from X^(k) = c^{-1} prod_j (X^(p^j))^{k_j}, where the
/// k_j are the base-p digits of k and c = k! / prod_j ((p^j)!)^{k_j}.
class WeylModuleP {
  public:
    using Key = std::tuple<int, int, bool>; // (root, k, raising)

    WeylModuleP(const RootSystemData &rs, std::shared_ptr<const WeylLatticeZ> lattice, long long p)
        : rs_(rs), p_(prime_modulus(p)), lam_(lattice->lam),
          weights_(lattice->rep().weights), ops_(std::make_unique<LatticeOperators>(rs, lattice)) {
        init_blocks();
    }

    /// A module given by its weights and a set of precomputed operators;
    /// operators outside the set are obtained from `source` on demand.
    WeylModuleP(const RootSystemData &rs, long long p, Weight lam, std::vector<Weight> weights,
                std::map<Key, SparsePrimeMatrix> ops,
                std::function<std::shared_ptr<const WeylLatticeZ>()> source)
        : rs_(rs), p_(prime_modulus(p)), lam_(std::move(lam)),
          weights_(std::move(weights)), cache_(std::move(ops)), source_(std::move(source)) {
        init_blocks();
    }

    const RootSystemData &root_system() const { return rs_; }
    std::uint32_t p() const { return p_; }
    const Weight &lam() const { return lam_; }
    std::size_t dim() const { return weights_.size(); }
    const std::vector<Weight> &weights() const { return weights_; }
    const std::vector<WeightBlock> &blocks() const { return blocks_; }
    std::size_t block_of(const Weight &w) const {
        auto it = block_index_.find(w);
        return it == block_index_.end() ? static_cast<std::size_t>(-1) : it->second;
    }
    std::size_t highest_index() const { return 0; }

    /// max over weights mu of <mu, beta^vee>: no beta-string in V(lam) is
    /// longer, so X_beta^(k) = 0 beyond it.
    int nilpotency(int beta) const {
        std::int64_t best = 0;
        for (const auto &b : blocks_) {
            Rational r = rs_.coroot_pairing(b.weight, beta);
            best = std::max<std::int64_t>(best, static_cast<std::int64_t>(numerator(r)));
        }
        return static_cast<int>(best);
    }

    /// F_beta^(k) mod p.
    const SparsePrimeMatrix &lowering(int beta, int k) { return op(beta, k, false); }
    /// E_beta^(k) mod p.
    const SparsePrimeMatrix &raising(int beta, int k) { return op(beta, k, true); }

    const SparsePrimeMatrix &op(int beta, int k, bool raise) {
        if (beta < 0 || beta >= rs_.N)
            throw InvalidArgument("root index " + std::to_string(beta) + " out of range");
        if (k < 0)
            throw InvalidArgument("negative divided-power exponent");
        std::lock_guard<std::recursive_mutex> lock(mu_);
        Key key{beta, k, raise};
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
        SparsePrimeMatrix m = compute(beta, k, raise);
        return cache_.emplace(key, std::move(m)).first->second;
    }

    /// Overwrites a cached operator (used to build defect fixtures).
    void replace_operator(int beta, int k, bool raise, SparsePrimeMatrix m) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        cache_[Key{beta, k, raise}] = std::move(m);
    }

    std::map<Key, SparsePrimeMatrix> cached_operators() const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        return cache_;
    }

  private:
    void init_blocks() {
        for (std::size_t g = 0; g < weights_.size(); ++g) {
            if (blocks_.empty() || blocks_.back().weight != weights_[g]) {
                if (block_index_.count(weights_[g]))
                    throw DefectError("basis is not grouped by weight");
                block_index_[weights_[g]] = blocks_.size();
                blocks_.push_back({weights_[g], g, 0});
            }
            ++blocks_.back().size;
        }
    }

    SparsePrimeMatrix compute(int beta, int k, bool raise) {
        const std::size_t n = dim();
        if (k == 0)
            return SparsePrimeMatrix::identity(p_, n);
        if (k > nilpotency(beta))
            return SparsePrimeMatrix(p_, n, n);
        std::vector<int> digits;
        for (int x = k; x > 0; x /= static_cast<int>(p_))
            digits.push_back(x % static_cast<int>(p_));
        const bool power_of_p =
            std::count(digits.begin(), digits.end(), 0) == static_cast<long>(digits.size()) - 1 &&
            digits.back() == 1;
        if (power_of_p) {
            if (!ops_) {
                if (!source_)
                    throw DefectError("operator not available and no lattice to compute it from");
                ops_ = std::make_unique<LatticeOperators>(rs_, source_());
            }
            return SparsePrimeMatrix::reduce(ops_->restricted(beta, k, raise), p_);
        }
        SparsePrimeMatrix acc = SparsePrimeMatrix::identity(p_, n);
        Integer c = factorial(k);
        int pj = 1;
        for (int d : digits) {
            for (int t = 0; t < d; ++t) {
                acc = op(beta, pj, raise) * acc;
                c /= factorial(pj);
            }
            pj *= static_cast<int>(p_);
        }
        const std::uint32_t cm = static_cast<std::uint32_t>(mod_p(c, p_));
        if (cm == 0)
            throw DefectError("divided-power digit coefficient vanishes mod p");
        return acc.scaled(inv_mod(cm, p_));
    }

    RootSystemData rs_;
    std::uint32_t p_;
    Weight lam_;
    std::vector<Weight> weights_;
    std::vector<WeightBlock> blocks_;
    std::map<Weight, std::size_t> block_index_;
    mutable std::recursive_mutex mu_;
    std::map<Key, SparsePrimeMatrix> cache_;
    std::unique_ptr<LatticeOperators> ops_;
    std::function<std::shared_ptr<const WeylLatticeZ>()> source_;
};

inline WeylModuleP reduce_mod_p(const RootSystemData &rs, std::shared_ptr<const WeylLatticeZ> lattice,
                                long long p) {
    return WeylModuleP(rs, std::move(lattice), p);
}

inline const SparsePrimeMatrix &operator_mod_p(WeylModuleP &m, int beta, int k) {
    return m.lowering(beta, k);
}

struct ValidationReport {
    bool ok = true;
    std::string witness;
};

/// Checks [E_i, F_j] = delta_ij H_i, the divided-power product rule
/// F^(j) F^(k) = binom(j+k, j) F^(j+k) for every root, and the weight shift
/// of every operator checked, all mod p.
inline ValidationReport validate_relations(WeylModuleP &m) {
    const auto &rs = m.root_system();
    const std::uint32_t p = m.p();
    const std::size_t n = m.dim();
    auto fail = [](std::string w) { return ValidationReport{false, std::move(w)}; };
    auto check_shift = [&](const SparsePrimeMatrix &x, const Weight &shift,
                           const std::string &name) -> std::optional<std::string> {
        for (std::size_t c = 0; c < x.ncols(); ++c)
            for (const auto &[r, v] : x.column(c))
                if (m.weights()[r] != m.weights()[c] + shift)
                    return name + " has entry (" + std::to_string(r) + "," + std::to_string(c) +
                           ") breaking the weight shift";
        return std::nullopt;
    };
    for (int i = 0; i < rs.rank(); ++i)
        for (int j = 0; j < rs.rank(); ++j) {
            const auto &e = m.raising(i, 1);
            const auto &f = m.lowering(j, 1);
            SparsePrimeMatrix c = e * f - f * e;
            SparsePrimeMatrix want(p, n, n);
            if (i == j)
                for (std::size_t g = 0; g < n; ++g)
                    want.set(g, g, static_cast<std::uint32_t>(mod_p(m.weights()[g][i], p)));
            if (!(c == want)) {
                for (std::size_t col = 0; col < n; ++col)
                    for (std::size_t row = 0; row < n; ++row)
                        if (c.at(row, col) != want.at(row, col))
                            return fail("[E_" + std::to_string(i + 1) + ", F_" + std::to_string(j + 1) +
                                        "] differs at entry (" + std::to_string(row) + "," +
                                        std::to_string(col) + ")");
            }
        }
    for (int b = 0; b < rs.N; ++b) {
        const int top = m.nilpotency(b);
        for (bool raise : {false, true}) {
            const std::string nm = raise ? "E" : "F";
            const Weight step = raise ? rs.root_weight(b) : -rs.root_weight(b);
            for (int k = 1; k <= top; ++k)
                if (auto w = check_shift(m.op(b, k, raise), k * step,
                                         nm + "_" + std::to_string(b) + "^(" + std::to_string(k) + ")"))
                    return fail(*w);
            for (int j = 1; j <= top; ++j)
                for (int k = 1; j + k <= top; ++k) {
                    SparsePrimeMatrix lhs = m.op(b, j, raise) * m.op(b, k, raise);
                    SparsePrimeMatrix rhs = m.op(b, j + k, raise).scaled(binomial_mod(j + k, j, p));
                    if (!(lhs == rhs))
                        return fail(nm + "_" + std::to_string(b) + "^(" + std::to_string(j) + ") " + nm +
                                    "_" + std::to_string(b) + "^(" + std::to_string(k) +
                                    ") violates the divided-power product rule");
                }
        }
    }
    return {};
}

/// Asserts that every E_beta^(k) and F_beta^(k) restricts to the lattice
/// (throws NonIntegralDividedPower otherwise).
inline void check_lattice_stability(const RootSystemData &rs, std::shared_ptr<const WeylLatticeZ> lattice) {
    LatticeOperators ops(rs, lattice);
    for (int b = 0; b < rs.N; ++b)
        for (bool raise : {false, true})
            for (int k = 1; k <= ops.ambient_nilpotency(b, raise); ++k)
                if (ops.restricted(b, k, raise).is_zero())
                    break;
}

} // namespace pbwdeg
