#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "gdiv/errors.hpp"
#include "gdiv/graded.hpp"

namespace gdiv {

// Polynomial in a central variable with coefficients in E, low to high.
using EPoly = std::vector<GradedElement>;

inline EPoly epoly_mul(const MonomialGradedRing& E, const EPoly& a, const EPoly& b) {
    EPoly r(a.size() + b.size() - 1, GradedElement(E.rank()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = E.add(r[i + j], E.multiply(a[i], b[j]));
    return r;
}

// Sum of c_i b^i with coefficients on the left.
inline GradedElement epoly_eval(const MonomialGradedRing& E, const EPoly& f, const Monomial& b) {
    GradedElement acc(E.rank());
    Monomial pw = E.one();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) pw = E.mono_mul(pw, b);
        acc = E.add(acc, E.multiply(f[i], GradedElement::from(pw)));
    }
    return acc;
}

// f = g k for monic k; throws if the remainder is nonzero.
inline EPoly epoly_left_quotient(const MonomialGradedRing& E, EPoly f, const EPoly& k) {
    const std::size_t dk = k.size() - 1;
    if (f.size() <= dk) throw InvalidStructureError("right factor has larger degree");
    EPoly g(f.size() - dk, GradedElement(E.rank()));
    for (std::size_t i = f.size(); i-- > dk;) {
        GradedElement c = f[i];
        g[i - dk] = c;
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j <= dk; ++j) f[i - dk + j] = E.sub(f[i - dk + j], E.multiply(c, k[j]));
    }
    for (std::size_t j = 0; j < dk; ++j)
        if (!f[j].is_zero()) throw InvalidStructureError("polynomial is not right divisible");
    return g;
}

inline EPoly epoly_from_central(const CentralPoly& h) { return h.coeffs; }

inline EPoly linear_factor(const MonomialGradedRing& E, const Monomial& a) {
    return {E.neg(GradedElement::from(a)), GradedElement::from(E.one())};
}

// Homogeneous conjugates of a, each with a monomial witness u such that u a u^-1 equals the member.
// Any homogeneous conjugate is reached by a homogeneous component of the conjugating unit, so monomials suffice.
struct ConjugacyClass {
    Monomial base;
    std::map<Elt, Monomial> members;  // coefficient of the member -> witness
};

inline ConjugacyClass conjugacy_class(const MonomialGradedRing& E, const Monomial& a, std::size_t budget = 1000000) {
    if (a.c == 0) throw ZeroElementError("conjugacy class of zero");
    ConjugacyClass cls{a, {}};
    std::vector<Monomial> gens{E.scalar(E.field().generator())};
    for (std::size_t i = 0; i < E.rank(); ++i) gens.push_back(E.z(i));
    std::deque<Elt> queue{a.c};
    cls.members.emplace(a.c, E.one());
    while (!queue.empty()) {
        Elt c = queue.front();
        queue.pop_front();
        const Monomial w = cls.members.at(c);
        for (auto& g : gens) {
            Monomial img = E.conjugate(g, {c, a.deg});
            if (cls.members.count(img.c)) continue;
            if (cls.members.size() >= budget) throw OrbitBudgetError("conjugacy orbit exceeds the budget");
            cls.members.emplace(img.c, E.mono_mul(g, w));
            queue.push_back(img.c);
        }
    }
    return cls;
}

struct WedderburnFactor {
    Monomial root;
    Monomial witness;
};

struct WedderburnResult {
    CentralPoly h;                        // minimal polynomial of a over T
    std::vector<WedderburnFactor> factors;  // h = (x - a_n) ... (x - a_1)
    std::size_t class_size = 0;
};

inline std::int64_t coeff_key(const FiniteField& F, Elt c) { return F.log(c); }

// Follows the constructive proof: extend a maximal right factor k using a class member b with k(b) != 0,
// whose conjugate k(b) b k(b)^-1 is a root of the left cofactor.
inline WedderburnResult wedderburn_factor(const MonomialGradedRing& E, const Monomial& a, std::size_t budget = 1000000) {
    if (a.c == 0) throw ZeroElementError("Wedderburn factorization of zero");
    const FiniteField& F = E.field();
    WedderburnResult res;
    res.h = E.minimal_polynomial(a).h;
    ConjugacyClass cls = conjugacy_class(E, a, budget);
    res.class_size = cls.members.size();
    std::vector<Elt> order;
    for (auto& [c, w] : cls.members) order.push_back(c);
    std::sort(order.begin(), order.end(), [&](Elt x, Elt y) { return coeff_key(F, x) < coeff_key(F, y); });

    const EPoly h = epoly_from_central(res.h);
    EPoly k = linear_factor(E, a);
    res.factors.push_back({a, E.one()});
    while (k.size() < h.size()) {
        EPoly g = epoly_left_quotient(E, h, k);
        std::optional<WedderburnFactor> next;
        for (Elt c : order) {
            Monomial b{c, a.deg};
            GradedElement kb = epoly_eval(E, k, b);
            if (kb.is_zero()) continue;
            Monomial km = kb.as_monomial();
            Monomial root = E.conjugate(km, b);
            if (!epoly_eval(E, g, root).is_zero()) throw InvalidStructureError("conjugate is not a root of the cofactor");
            next = WedderburnFactor{root, E.mono_mul(km, cls.members.at(c))};
            break;
        }
        if (!next) throw InvalidStructureError("right factor vanishes on the whole class before reaching deg h_a");
        res.factors.push_back(*next);
        k = epoly_mul(E, linear_factor(E, next->root), k);
    }
    return res;
}

// Right-to-left product (x - a_n) ... (x - a_1).
inline EPoly expand_factors(const MonomialGradedRing& E, const std::vector<WedderburnFactor>& fs) {
    EPoly k{GradedElement::from(E.one())};
    for (auto& f : fs) k = epoly_mul(E, linear_factor(E, f.root), k);
    return k;
}

inline bool reconstructs(const MonomialGradedRing& E, const WedderburnResult& r) {
    EPoly k = expand_factors(E, r.factors);
    if (k.size() != r.h.coeffs.size()) return false;
    for (std::size_t i = 0; i < k.size(); ++i)
        if (!(k[i] == r.h.coeffs[i])) return false;
    for (auto& f : r.factors)
        if (!(E.conjugate(f.witness, {r.factors[0].root.c, r.factors[0].root.deg}) == f.root)) return false;
    return true;
}

// Smallest d such that a monic polynomial of degree d with homogeneous coefficients vanishes on the class.
// Vanishing is left-linear over the residue field in the coefficients, so each d is one rank test.
inline std::size_t min_vanishing_degree(const MonomialGradedRing& E, const ConjugacyClass& cls, std::size_t max_degree) {
    const FiniteField& F = E.field();
    const Degree& delta = cls.base.deg;
    for (std::size_t d = 1; d <= max_degree; ++d) {
        // Unknowns c_0..c_{d-1}; coefficient j sits at degree (d-j) delta with unit monomial basis.
        std::vector<std::vector<Elt>> rows;
        for (auto& [c, w] : cls.members) {
            Monomial b{c, delta};
            std::vector<Elt> row(d + 1);
            Monomial pw = E.one();
            for (std::size_t j = 0; j <= d; ++j) {
                if (j) pw = E.mono_mul(pw, b);
                Monomial basis{1, degree_scale(delta, static_cast<std::int64_t>(d - j))};
                row[j] = E.mono_mul(basis, pw).c;
            }
            row[d] = F.neg(row[d]);
            rows.push_back(row);
        }
        // Solvable iff the augmented column is not a pivot column.
        std::size_t r = 0;
        bool inconsistent = false;
        for (std::size_t col = 0; col <= d && r < rows.size(); ++col) {
            std::size_t p = r;
            while (p < rows.size() && rows[p][col] == 0) ++p;
            if (p == rows.size()) continue;
            if (col == d) {
                inconsistent = true;
                break;
            }
            std::swap(rows[p], rows[r]);
            Elt inv = F.inv(rows[r][col]);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == r || rows[i][col] == 0) continue;
                Elt f = F.mul(rows[i][col], inv);
                for (std::size_t j = col; j <= d; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
            }
            ++r;
        }
        if (!inconsistent) return d;
    }
    return max_degree + 1;
}

// Conjugating monomial u with u a u^-1 = b when a, b share a minimal polynomial.
inline std::optional<Monomial> dickson_conjugate(const MonomialGradedRing& E, const Monomial& a, const Monomial& b,
                                                 std::size_t budget = 1000000) {
    if (a.c == 0 || b.c == 0) throw ZeroElementError("conjugacy test on zero");
    if (a.deg != b.deg) return std::nullopt;
    auto ha = E.minimal_polynomial(a).h, hb = E.minimal_polynomial(b).h;
    if (ha.coeffs.size() != hb.coeffs.size()) return std::nullopt;
    for (std::size_t i = 0; i < ha.coeffs.size(); ++i)
        if (!(ha.coeffs[i] == hb.coeffs[i])) return std::nullopt;
    ConjugacyClass cls = conjugacy_class(E, a, budget);
    auto it = cls.members.find(b.c);
    if (it == cls.members.end()) return std::nullopt;
    return it->second;
}

}  // namespace gdiv
