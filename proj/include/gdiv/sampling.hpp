#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gdiv/matdiv.hpp"
#include "gdiv/series.hpp"
#include "gdiv/skewpoly.hpp"

// Seeded random instances for sweeps and tests.
namespace gdiv::sampling {

using Rng = std::mt19937_64;

inline FiniteField::Elt random_elt(const FiniteField& F, Rng& rng) {
    return static_cast<FiniteField::Elt>(rng() % F.size());
}

inline FiniteField::Elt random_unit(const FiniteField& F, Rng& rng) {
    return F.exp(static_cast<std::int64_t>(rng() % F.order()));
}

// Series t^v * (c_0 + ...) with absolute precision prec; lead forced nonzero when requested.
inline Series random_series(std::shared_ptr<const FiniteField> F, std::int64_t v, std::int64_t prec, bool nonzero_lead,
                            Rng& rng) {
    std::vector<FiniteField::Elt> c(static_cast<std::size_t>(std::max<std::int64_t>(0, prec - v)));
    for (auto& e : c) e = random_elt(*F, rng);
    if (nonzero_lead && !c.empty() && c[0] == 0) c[0] = random_unit(*F, rng);
    return Series(F, v, c, prec);
}

inline SkewPoly random_monic(const SkewPolyRing& R, int degree, Rng& rng) {
    std::vector<FiniteField::Elt> c(static_cast<std::size_t>(degree) + 1);
    for (auto& e : c) e = random_elt(R.field(), rng);
    c.back() = 1;
    return SkewPoly(c);
}

inline SkewPoly random_nonzero(const SkewPolyRing& R, int degree, Rng& rng) {
    std::vector<FiniteField::Elt> c(static_cast<std::size_t>(degree) + 1);
    for (auto& e : c) e = random_elt(R.field(), rng);
    c.back() = random_unit(R.field(), rng);
    return SkewPoly(c);
}

// Unit lower and unit upper triangular matrices with integral entries.
inline std::pair<TMatrix, TMatrix> random_unipotent_pair(const TwistedRing& C, std::size_t n, std::int64_t prec, Rng& rng) {
    TMatrix g = tmat_identity(C, n, prec), h = tmat_identity(C, n, prec);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            g[i][j] = random_series(C.field_ptr(), 0, prec, false, rng);
            h[j][i] = random_series(C.field_ptr(), 0, prec, false, rng);
        }
    return {g, h};
}

}  // namespace gdiv::sampling
