#pragma once

#include <chrono>
#include <cstdint>
#include <numeric>
#include <vector>

#include "gdiv/sampling.hpp"
#include "gdiv/series.hpp"

// Random instance generators for the series and tower properties.
namespace gdiv::support {

using sampling::Rng;

// Random lambda-polynomial of degree n with unit leading coefficient; n * lambda must be integral.
inline SPoly random_lambda_poly(std::shared_ptr<const FiniteField> F, std::size_t n, const Rational& lambda,
                                std::int64_t prec, Rng& rng) {
    SPoly f;
    for (std::size_t i = 0; i <= n; ++i) {
        const Rational bound = lambda * static_cast<std::int64_t>(n - i);
        const std::int64_t lo = rat_ceil(bound);
        const bool exact = bound.denominator() == 1;
        if (i == n) {
            f.push_back(sampling::random_series(F, 0, prec, true, rng));
        } else if (i == 0) {
            f.push_back(sampling::random_series(F, lo, prec, true, rng));
        } else {
            // Either a term sitting exactly on the Newton line or one strictly above it.
            const bool on_line = exact && rng() % 2;
            f.push_back(sampling::random_series(F, on_line ? lo : lo + (exact ? 1 : 0), prec, on_line, rng));
        }
    }
    return f;
}

inline Rational random_lambda(Rng& rng, std::int64_t& denominator) {
    static const std::vector<Rational> choices{Rational(0), Rational(1), Rational(2), Rational(1, 2),
                                               Rational(3, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4)};
    Rational l = choices[rng() % choices.size()];
    denominator = l.denominator();
    return l;
}

inline SPoly monic(const SPoly& f) {
    Series inv = f.back().inverse();
    SPoly g;
    for (auto& c : f) g.push_back(c * inv);
    return g;
}

// Eisenstein step x^e + (terms of positive valuation) + u t (1 + ...), tame when p does not divide e.
inline SPoly eisenstein(std::shared_ptr<const FiniteField> F, std::size_t e, std::int64_t prec, Rng& rng) {
    SPoly f;
    f.push_back(sampling::random_series(F, 1, prec, true, rng));
    for (std::size_t i = 1; i < e; ++i) f.push_back(sampling::random_series(F, 1, prec, false, rng));
    f.push_back(Series::constant(F, 1, prec));
    return f;
}

// x^k - c with x^k - c irreducible over the residue field: an unramified step.
inline SPoly unramified(std::shared_ptr<const FiniteField> F, std::size_t k, FiniteField::Elt c, std::int64_t prec) {
    SPoly f(k + 1, Series::zero(F, prec));
    f[0] = Series::constant(F, F->neg(c), prec);
    f[k] = Series::constant(F, 1, prec);
    return f;
}

// Random tame tower of total degree <= 6 over GF(p)((t)), p in {5, 7}, built from linearly disjoint steps.
inline std::vector<SPoly> random_tame_tower(std::shared_ptr<const FiniteField> F, std::int64_t prec, Rng& rng) {
    const std::uint64_t p = F->characteristic();
    const FiniteField::Elt nonsquare = p == 5 ? 2 : 3;
    std::vector<std::vector<SPoly>> options{
        {eisenstein(F, 2, prec, rng)},
        {eisenstein(F, 3, prec, rng)},
        {eisenstein(F, 4, prec, rng)},
        {eisenstein(F, 6, prec, rng)},
        {unramified(F, 2, nonsquare, prec)},
        {unramified(F, 2, nonsquare, prec), eisenstein(F, 2, prec, rng)},
        {unramified(F, 2, nonsquare, prec), eisenstein(F, 3, prec, rng)},
        {eisenstein(F, 2, prec, rng), eisenstein(F, 3, prec, rng)},
    };
    if (p == 5) {
        // x^4 + t x^2 + t^2: residue polynomial X^2 + X + 1 is irreducible over GF(5).
        SPoly h(5, Series::zero(F, prec));
        h[0] = Series::monomial(F, 1, 2, prec);
        h[2] = Series::monomial(F, 1, 1, prec);
        h[4] = Series::constant(F, 1, prec);
        options.push_back({h});
    } else {
        // 2 is not a cube mod 7.
        options.push_back({unramified(F, 3, 2, prec)});
        options.push_back({unramified(F, 3, 2, prec), eisenstein(F, 2, prec, rng)});
    }
    return options[rng() % options.size()];
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

}  // namespace gdiv::support
