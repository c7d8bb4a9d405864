#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "pbwdeg/errors.hpp"
#include "pbwdeg/integer.hpp"

namespace pbwdeg {

/// Weight in the basis of fundamental weights.
struct Weight {
    std::vector<std::int64_t> coords;

    Weight() = default;
    explicit Weight(std::vector<std::int64_t> c) : coords(std::move(c)) {}
    Weight(std::initializer_list<std::int64_t> c) : coords(c) {}

    static Weight zero(std::size_t rank) {
        return Weight(std::vector<std::int64_t>(rank, 0));
    }

    std::size_t size() const { return coords.size(); }
    std::int64_t operator[](std::size_t i) const { return coords[i]; }
    std::int64_t &operator[](std::size_t i) { return coords[i]; }

    bool is_dominant() const {
        return std::all_of(coords.begin(), coords.end(),
                           [](std::int64_t c) { return c >= 0; });
    }
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(),
                           [](std::int64_t c) { return c == 0; });
    }

    Weight &operator+=(const Weight &o) {
        if (o.size() != size())
            throw DimensionMismatch("weight rank mismatch");
        for (std::size_t i = 0; i < size(); ++i)
            coords[i] += o.coords[i];
        return *this;
    }
    Weight &operator-=(const Weight &o) {
        if (o.size() != size())
            throw DimensionMismatch("weight rank mismatch");
        for (std::size_t i = 0; i < size(); ++i)
            coords[i] -= o.coords[i];
        return *this;
    }
    friend Weight operator+(Weight a, const Weight &b) { return a += b; }
    friend Weight operator-(Weight a, const Weight &b) { return a -= b; }
    friend Weight operator*(std::int64_t s, Weight a) {
        for (auto &c : a.coords)
            c *= s;
        return a;
    }
    Weight operator-() const { return -1 * (*this); }

    auto operator<=>(const Weight &) const = default;
    bool operator==(const Weight &) const = default;

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i)
                s += ',';
            s += std::to_string(coords[i]);
        }
        return s;
    }
    friend std::ostream &operator<<(std::ostream &os, const Weight &w) {
        return os << '(' << w.to_string() << ')';
    }
};

/// Parses "1,0,2" into a weight.
inline Weight parse_weight(const std::string &text) {
    std::vector<std::int64_t> c;
    std::string cur;
    auto flush = [&] {
        if (cur.empty())
            throw InvalidArgument("malformed weight: '" + text + "'");
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(cur, &pos);
        } catch (const std::exception &) {
            throw InvalidArgument("malformed weight: '" + text + "'");
        }
        if (pos != cur.size())
            throw InvalidArgument("malformed weight: '" + text + "'");
        c.push_back(v);
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',')
            flush();
        else if (!std::isspace(static_cast<unsigned char>(ch)))
            cur += ch;
    }
    flush();
    return Weight(std::move(c));
}

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', G = 'G' };

struct CartanType {
    Family family;
    int rank;

    CartanType(Family f, int r) : family(f), rank(r) {
        bool ok = false;
        switch (f) {
        case Family::A: ok = r >= 1 && r <= 3; break;
        case Family::B: ok = r == 2 || r == 3; break;
        case Family::C: ok = r == 2 || r == 3; break;
        case Family::D: ok = r == 4; break;
        case Family::G: ok = r == 2; break;
        }
        if (!ok)
            throw UnsupportedType("unsupported Cartan type " + name_of(f, r) +
                                  " (supported: A1-A3, B2, B3, C2, C3, D4, G2)");
    }

    /// Parses "A2", "g2", ... (family letter + rank, case-insensitive).
    static CartanType parse(const std::string &s) {
        if (s.size() < 2)
            throw UnsupportedType("malformed Cartan type '" + s + "'");
        char f = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
        if (std::string("ABCDG").find(f) == std::string::npos)
            throw UnsupportedType("unsupported Cartan family in '" + s + "'");
        std::string digits = s.substr(1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) {
                return std::isdigit(static_cast<unsigned char>(ch));
            }) || digits.size() > 3)
            throw UnsupportedType("malformed Cartan type '" + s + "'");
        return CartanType(static_cast<Family>(f), std::stoi(digits));
    }

    std::string name() const { return name_of(family, rank); }

    bool operator==(const CartanType &) const = default;

  private:
    static std::string name_of(Family f, int r) {
        return std::string(1, static_cast<char>(f)) + std::to_string(r);
    }
};

/// Root data of one Cartan type.
///
/// Positive roots are stored in simple-root coordinates, weights in
/// fundamental-weight coordinates. `cartan[i][j]` is the pairing of the
/// simple root j with the simple coroot i, so the fundamental coordinates
/// of a root with simple-root coefficients c are `cartan * c`.
struct RootSystemData {
    explicit RootSystemData(CartanType ct) : cartan_type(ct) {}

    CartanType cartan_type;
    std::vector<std::vector<std::int64_t>> cartan;
    /// (alpha_i, alpha_i)/2, normalised so that short roots have 1.
    std::vector<std::int64_t> symmetrizer;
    std::vector<std::vector<std::int64_t>> positive_roots;
    std::vector<int> heights;
    int N = 0;
    Weight rho;
    std::vector<int> w0_diagram_perm;

    int rank() const { return cartan_type.rank; }

    /// Index of a positive root given in simple-root coordinates, or -1.
    int root_index(const std::vector<std::int64_t> &coeffs) const {
        auto it = index_.find(coeffs);
        return it == index_.end() ? -1 : it->second;
    }

    bool is_root(const std::vector<std::int64_t> &coeffs) const {
        return root_index(coeffs) >= 0;
    }

    /// Fundamental coordinates of the positive root with index b.
    const Weight &root_weight(int b) const { return root_weights_[b]; }
    /// Fundamental coordinates of the simple root alpha_i.
    const Weight &simple_root_weight(int i) const { return root_weights_[i]; }

    /// (beta, beta) for a positive root, in symmetrizer units.
    std::int64_t root_norm(int b) const {
        const auto &c = positive_roots[b];
        std::int64_t s = 0;
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j)
                s += c[i] * c[j] * symmetrizer[i] * cartan[i][j];
        return s;
    }

    /// Pairing <lam, beta^vee> as an exact rational.
    Rational coroot_pairing(const Weight &lam, int b) const {
        if (static_cast<int>(lam.size()) != rank())
            throw DimensionMismatch("weight has rank " +
                                    std::to_string(lam.size()) + ", expected " +
                                    std::to_string(rank()));
        const auto &c = positive_roots[b];
        Integer num = 0;
        for (int i = 0; i < rank(); ++i)
            num += Integer(c[i]) * lam[i] * symmetrizer[i];
        return Rational(2 * num, Integer(root_norm(b)));
    }

    /// Largest r such that beta - r*alpha_i is a root (beta given as index).
    int string_down(int b, int i) const {
        auto c = positive_roots[b];
        int r = 0;
        while (true) {
            c[i] -= 1;
            if (!is_root(c))
                return r;
            ++r;
        }
    }

    /// Index of the simple root alpha_i.
    int simple_index(int i) const { return i; }

    friend RootSystemData build_root_system(const CartanType &ct);

  private:
    std::map<std::vector<std::int64_t>, int> index_;
    std::vector<Weight> root_weights_;
};

namespace detail {

inline std::vector<std::vector<std::int64_t>> cartan_matrix(const CartanType &ct) {
    const int n = ct.rank;
    std::vector<std::vector<std::int64_t>> C(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i)
        C[i][i] = 2;
    auto link = [&](int i, int j) { C[i][j] = C[j][i] = -1; };
    switch (ct.family) {
    case Family::A:
        for (int i = 0; i + 1 < n; ++i)
            link(i, i + 1);
        break;
    case Family::B:
        for (int i = 0; i + 1 < n; ++i)
            link(i, i + 1);
        // alpha_n short
        C[n - 1][n - 2] = -2;
        break;
    case Family::C:
        for (int i = 0; i + 1 < n; ++i)
            link(i, i + 1);
        // alpha_n long
        C[n - 2][n - 1] = -2;
        break;
    case Family::D:
        for (int i = 0; i + 2 < n; ++i)
            link(i, i + 1);
        link(n - 3, n - 1);
        break;
    case Family::G:
        // alpha_1 short, alpha_2 long
        C[0][1] = -3;
        C[1][0] = -1;
        break;
    }
    return C;
}

inline std::vector<std::int64_t> symmetrizer(const CartanType &ct) {
    const int n = ct.rank;
    std::vector<std::int64_t> d(n, 1);
    switch (ct.family) {
    case Family::B:
        for (int i = 0; i + 1 < n; ++i)
            d[i] = 2;
        break;
    case Family::C: d[n - 1] = 2; break;
    case Family::G: d[1] = 3; break;
    default: break;
    }
    return d;
}

} // namespace detail

/// Builds the root data by closing the simple roots under root strings.
inline RootSystemData build_root_system(const CartanType &ct) {
    RootSystemData rs(ct);
    rs.cartan = detail::cartan_matrix(ct);
    rs.symmetrizer = detail::symmetrizer(ct);
    const int n = ct.rank;
    auto pairing = [&](const std::vector<std::int64_t> &c, int i) {
        std::int64_t s = 0;
        for (int j = 0; j < n; ++j)
            s += rs.cartan[i][j] * c[j];
        return s;
    };

    // Layered closure: beta + alpha_i is a root iff q > 0 where
    // q = r - <beta, alpha_i^vee> and r is the downward string length.
    std::vector<std::vector<std::vector<std::int64_t>>> layers(1);
    std::map<std::vector<std::int64_t>, int> seen;
    for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> e(n, 0);
        e[i] = 1;
        layers[0].push_back(e);
        seen[e] = 1;
    }
    while (!layers.back().empty()) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto &beta : layers.back()) {
            for (int i = 0; i < n; ++i) {
                int r = 0;
                auto down = beta;
                while (true) {
                    down[i] -= 1;
                    if (!seen.count(down))
                        break;
                    ++r;
                }
                std::int64_t q = r - pairing(beta, i);
                if (q > 0) {
                    auto up = beta;
                    up[i] += 1;
                    if (!seen.count(up)) {
                        seen[up] = 1;
                        next.push_back(up);
                    }
                }
            }
        }
        layers.push_back(std::move(next));
    }
    for (auto &layer : layers) {
        // within a height: lexicographically decreasing, so alpha_1 comes first
        std::sort(layer.begin(), layer.end(), std::greater<>());
        for (auto &beta : layer)
            rs.positive_roots.push_back(beta);
    }
    rs.N = static_cast<int>(rs.positive_roots.size());
    for (int b = 0; b < rs.N; ++b) {
        const auto &c = rs.positive_roots[b];
        rs.heights.push_back(static_cast<int>(std::accumulate(c.begin(), c.end(), std::int64_t{0})));
        rs.index_[c] = b;
        std::vector<std::int64_t> w(n);
        for (int i = 0; i < n; ++i)
            w[i] = pairing(c, i);
        rs.root_weights_.emplace_back(std::move(w));
    }
    rs.rho = Weight(std::vector<std::int64_t>(n, 1));
    rs.w0_diagram_perm.resize(n);
    for (int i = 0; i < n; ++i)
        rs.w0_diagram_perm[i] = ct.family == Family::A ? n - 1 - i : i;
    return rs;
}

/// lam* = -w0 lam, realised by the diagram permutation.
inline Weight star_weight(const RootSystemData &rs, const Weight &lam) {
    if (static_cast<int>(lam.size()) != rs.rank())
        throw DimensionMismatch("weight has rank " + std::to_string(lam.size()) +
                                ", expected " + std::to_string(rs.rank()));
    Weight out = Weight::zero(lam.size());
    for (int i = 0; i < rs.rank(); ++i)
        out[rs.w0_diagram_perm[i]] = lam[i];
    return out;
}

/// w0 applied to an arbitrary weight: w0 mu = -(mu*).
inline Weight w0_weight(const RootSystemData &rs, const Weight &mu) {
    return -star_weight(rs, mu);
}

/// 2(p-1)rho, the weight whose Weyl module carries the splitting criterion.
inline Weight splitting_weight(const RootSystemData &rs, long long p) {
    require_prime(p);
    return Weight(std::vector<std::int64_t>(rs.rank(), 2 * (p - 1)));
}

} // namespace pbwdeg
