#pragma once

#include "pbwdeg/rootsys.hpp"

namespace pbwdeg {

/// Weyl dimension formula: prod over positive roots of
/// <lam + rho, beta^vee> / <rho, beta^vee>, in exact arithmetic.
inline Integer weyl_dim(const RootSystemData &rs, const Weight &lam) {
    if (static_cast<int>(lam.size()) != rs.rank())
        throw DimensionMismatch("weight has rank " + std::to_string(lam.size()) +
                                ", expected " + std::to_string(rs.rank()));
    if (!lam.is_dominant())
        throw InvalidArgument("weight " + lam.to_string() + " is not dominant");
    Rational d = 1;
    Weight shifted = lam + rs.rho;
    for (int b = 0; b < rs.N; ++b)
        d *= rs.coroot_pairing(shifted, b) / rs.coroot_pairing(rs.rho, b);
    if (denominator(d) != 1)
        throw DefectError("Weyl dimension formula produced a non-integer");
    return numerator(d);
}

inline long long weyl_dim_ll(const RootSystemData &rs, const Weight &lam) {
    return static_cast<long long>(weyl_dim(rs, lam));
}

} // namespace pbwdeg
