#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdiv/errors.hpp"
#include "gdiv/gf.hpp"
#include "gdiv/series.hpp"

namespace gdiv {

// GF(Q)((x; sigma)) with x c = sigma(c) x, sigma = Frobenius to the p^s; elements stored as Series in x.
// w(x) = var_value, so w(a) = var_value * ord_x(a).
class TwistedRing {
public:
    TwistedRing(std::shared_ptr<const FiniteField> F, std::int64_t sigma_exp, std::int64_t var_value = 1)
        : F_(std::move(F)), s_(mod_floor(sigma_exp, F_->degree())), value_(var_value) {
        if (var_value < 1) throw InputError("variable value must be positive");
        const std::int64_t k = F_->degree();
        ell_ = s_ == 0 ? 1 : k / std::gcd(k, s_);
    }

    const std::shared_ptr<const FiniteField>& field_ptr() const { return F_; }
    const FiniteField& field() const { return *F_; }
    std::int64_t sigma_exp() const { return s_; }
    std::int64_t sigma_order() const { return ell_; }
    std::int64_t var_value() const { return value_; }

    FiniteField::Elt sigma(FiniteField::Elt c, std::int64_t j) const {
        return F_->frob(c, mod_floor(s_ * mod_floor(j, ell_), F_->degree()));
    }

    Series zero(std::int64_t prec) const { return Series::zero(F_, prec); }
    Series one(std::int64_t prec) const { return Series::constant(F_, 1, prec); }
    Series x(std::int64_t prec) const { return Series::monomial(F_, 1, 1, prec); }
    Series scalar(FiniteField::Elt c, std::int64_t prec) const { return Series::constant(F_, c, prec); }

    // Certified lower bound on w: exact for nonzero elements, the precision bound for tracked zeros.
    std::int64_t w(const Series& a) const { return value_ * a.val_or_prec(); }

    Series mul(const Series& a, const Series& b) const {
        const std::int64_t va = a.val_or_prec(), vb = b.val_or_prec();
        const std::int64_t prec = std::min(va + b.prec(), vb + a.prec());
        if (a.is_zero() || b.is_zero() || va + vb >= prec) return zero(prec);
        const std::size_t len = static_cast<std::size_t>(prec - va - vb);
        std::vector<FiniteField::Elt> v(len, 0);
        const auto& ac = a.coeffs();
        const auto& bc = b.coeffs();
        for (std::size_t i = 0; i < ac.size() && i < len; ++i) {
            if (!ac[i]) continue;
            const std::int64_t e = va + static_cast<std::int64_t>(i);
            for (std::size_t j = 0; j < bc.size() && i + j < len; ++j)
                if (bc[j]) v[i + j] = F_->add(v[i + j], F_->mul(ac[i], sigma(bc[j], e)));
        }
        return Series(F_, va + vb, v, prec);
    }

    // Two-sided inverse; solves a b = 1 term by term.
    Series inv(const Series& a) const {
        if (a.is_zero()) throw PrecisionExhaustedError("cannot invert a twisted series with no known nonzero coefficient");
        const std::int64_t v = *a.valuation();
        const std::size_t r = static_cast<std::size_t>(a.prec() - v);
        const auto& ac = a.coeffs();
        std::vector<FiniteField::Elt> b(r, 0);  // b[k] multiplies x^(k - v)
        const FiniteField::Elt l = F_->inv(ac[0]);
        for (std::size_t k = 0; k < r; ++k) {
            FiniteField::Elt s = k == 0 ? 1 : 0;
            for (std::size_t i = 1; i <= k && i < ac.size(); ++i)
                if (ac[i] && b[k - i])
                    s = F_->sub(s, F_->mul(ac[i], sigma(b[k - i], v + static_cast<std::int64_t>(i))));
            b[k] = sigma(F_->mul(l, s), -v);
        }
        return Series(F_, -v, b, -v + static_cast<std::int64_t>(r));
    }

    Series pow(const Series& a, std::int64_t k) const {
        if (k < 0) return pow(inv(a), -k);
        Series r = one(a.relative_precision()), b = a;
        while (k) {
            if (k & 1) r = mul(r, b);
            k >>= 1;
            if (k) b = mul(b, b);
        }
        return r;
    }

    // Reduced norm to the center GF(Q)^sigma((y)), y = x^ell, as a series in y.
    Series center_nrd(const Series& a) const {
        const std::int64_t l = ell_;
        if (l == 1) return a;
        // a = sum_i A_i(y) x^i with A_i over the maximal subfield GF(Q)((y)).
        std::vector<Series> A;
        for (std::int64_t i = 0; i < l; ++i) {
            const std::int64_t pi = floor_div(a.prec() - i + l - 1, l);
            std::int64_t lo = pi;
            std::vector<std::pair<std::int64_t, FiniteField::Elt>> terms;
            for (std::size_t j = 0; j < a.coeffs().size(); ++j) {
                const std::int64_t e = a.start() + static_cast<std::int64_t>(j);
                if (mod_floor(e, l) != i || !a.coeffs()[j]) continue;
                const std::int64_t k = floor_div(e, l);
                terms.emplace_back(k, a.coeffs()[j]);
                lo = std::min(lo, k);
            }
            std::vector<FiniteField::Elt> c(static_cast<std::size_t>(std::max<std::int64_t>(0, pi - lo)), 0);
            for (auto& [k, v] : terms)
                if (k < pi) c[static_cast<std::size_t>(k - lo)] = v;
            A.emplace_back(F_, lo, c, pi);
        }
        const std::int64_t yp = floor_div(a.prec() + l - 1, l) + 1;
        Tower base(F_, yp, {});
        std::vector<std::vector<TElem>> M(static_cast<std::size_t>(l), std::vector<TElem>(static_cast<std::size_t>(l)));
        for (auto& row : M)
            for (auto& e : row) e = base.zero(0);
        for (std::int64_t r = 0; r < l; ++r)
            for (std::int64_t i = 0; i < l; ++i) {
                Series entry = sigma_coeffs(A[static_cast<std::size_t>(i)], r);
                if (r + i >= l) entry = entry.shift(1);
                const std::size_t col = static_cast<std::size_t>((r + i) % l);
                M[static_cast<std::size_t>(r)][col].s = M[static_cast<std::size_t>(r)][col].s + entry;
            }
        Series d = base.det(0, M).s;
        for (auto c : d.coeffs())
            if (sigma(c, 1) != c) throw InvalidStructureError("reduced norm left the center");
        return d;
    }

private:
    Series sigma_coeffs(const Series& a, std::int64_t j) const {
        std::vector<FiniteField::Elt> c(a.coeffs());
        for (auto& e : c) e = sigma(e, j);
        return Series(F_, a.start(), c, a.prec());
    }

    std::shared_ptr<const FiniteField> F_;
    std::int64_t s_;
    std::int64_t value_;
    std::int64_t ell_ = 1;
};

using TMatrix = std::vector<std::vector<Series>>;

inline TMatrix tmat_identity(const TwistedRing& C, std::size_t n, std::int64_t prec) {
    TMatrix m(n, std::vector<Series>(n, C.zero(prec)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = C.one(prec);
    return m;
}

inline TMatrix tmat_mul(const TwistedRing& C, const TMatrix& a, const TMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b[0].size();
    TMatrix r(n, std::vector<Series>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Series acc = C.mul(a[i][0], b[0][j]);
            for (std::size_t t = 1; t < k; ++t) acc = acc + C.mul(a[i][t], b[t][j]);
            r[i][j] = acc;
        }
    return r;
}

// Entrywise agreement up to the precision both sides carry.
inline bool tmat_agree(const TMatrix& a, const TMatrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (!agree_to(a[i][j], b[i][j], std::min(a[i][j].prec(), b[i][j].prec()))) return false;
    return true;
}

enum class Membership { InR, InJ, InOnePlusJ, Outside };

inline std::string to_string(Membership m) {
    switch (m) {
        case Membership::InR: return "InR";
        case Membership::InJ: return "InJ";
        case Membership::InOnePlusJ: return "InOnePlusJ";
        case Membership::Outside: return "Outside";
    }
    return "?";
}

// Matrix over C with weights gamma_i; R: w(a_ij) >= gamma_i - gamma_j, J: strict.
struct WeightedMatrix {
    std::vector<std::int64_t> gamma;
    TMatrix m;
};

inline bool entries_satisfy(const TwistedRing& C, const std::vector<std::int64_t>& gamma, const TMatrix& m, bool strict) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            const std::int64_t bound = gamma[i] - gamma[j];
            const std::int64_t wv = C.w(m[i][j]);
            if (strict ? wv <= bound : wv < bound) return false;
        }
    return true;
}

inline Membership membership(const TwistedRing& C, const WeightedMatrix& t) {
    const std::size_t n = t.m.size();
    if (t.gamma.size() != n) throw InputError("weight count differs from matrix size");
    if (entries_satisfy(C, t.gamma, t.m, true)) return Membership::InJ;
    TMatrix z = t.m;
    for (std::size_t i = 0; i < n; ++i) z[i][i] = z[i][i] - C.one(z[i][i].prec());
    if (entries_satisfy(C, t.gamma, z, true)) return Membership::InOnePlusJ;
    if (entries_satisfy(C, t.gamma, t.m, false)) return Membership::InR;
    return Membership::Outside;
}

struct OnePlusJReduction {
    TMatrix t_prime;
    std::vector<TMatrix> transcript;  // nontrivial elimination steps, in order
    Series diagonal_product;
};

// Row reduction to upper triangular form inside 1+J; every Y_k and intermediate product is certified.
inline OnePlusJReduction reduce_one_plus_J(const TwistedRing& C, const WeightedMatrix& t) {
    if (membership(C, t) != Membership::InOnePlusJ) throw ContainmentError("matrix is not in 1+J");
    const std::size_t n = t.m.size();
    OnePlusJReduction out;
    TMatrix cur = t.m;
    std::int64_t prec = std::numeric_limits<std::int64_t>::max();
    for (auto& row : cur)
        for (auto& e : row) prec = std::min(prec, e.prec());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        bool clear = true;
        for (std::size_t i = k + 1; i < n; ++i) clear = clear && cur[i][k].is_zero();
        if (clear) continue;
        TMatrix Y = tmat_identity(C, n, prec);
        Series pinv = C.inv(cur[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) Y[i][k] = -C.mul(cur[i][k], pinv);
        if (membership(C, {t.gamma, Y}) != Membership::InOnePlusJ)
            throw PrecisionExhaustedError("elimination matrix not certified in 1+J");
        cur = tmat_mul(C, Y, cur);
        if (membership(C, {t.gamma, cur}) != Membership::InOnePlusJ)
            throw PrecisionExhaustedError("intermediate product not certified in 1+J");
        out.transcript.push_back(std::move(Y));
    }
    Series d = C.one(prec);
    for (std::size_t i = 0; i < n; ++i) {
        if (C.w(cur[i][i] - C.one(prec)) <= 0) throw PrecisionExhaustedError("diagonal entry not certified in 1+M_C");
        d = C.mul(d, cur[i][i]);
    }
    out.t_prime = std::move(cur);
    out.diagonal_product = d;
    return out;
}

inline TMatrix replay(const TwistedRing& C, const std::vector<TMatrix>& transcript, const TMatrix& t) {
    TMatrix cur = t;
    for (auto& Y : transcript) cur = tmat_mul(C, Y, cur);
    return cur;
}

// Dieudonne determinant by elimination, kept as pivots and swap parity; only abelian invariants are read off.
struct Ddet {
    std::vector<Series> pivots;
    bool negated = false;
    bool singular = false;
};

inline Ddet ddet(const TwistedRing& C, TMatrix m) {
    const std::size_t n = m.size();
    Ddet d;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i)
            if (!m[i][k].is_zero() && (piv == n || *m[i][k].valuation() < *m[piv][k].valuation())) piv = i;
        if (piv == n) {
            d.singular = true;
            return d;
        }
        if (piv != k) {
            std::swap(m[piv], m[k]);
            d.negated = !d.negated;
        }
        Series inv = C.inv(m[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            Series f = C.mul(m[i][k], inv);
            for (std::size_t j = k; j < n; ++j) m[i][j] = m[i][j] - C.mul(f, m[k][j]);
        }
        d.pivots.push_back(m[k][k]);
    }
    return d;
}

inline std::int64_t ddet_valuation(const TwistedRing& C, const Ddet& d) {
    if (d.singular) throw ZeroElementError("singular matrix");
    std::int64_t v = 0;
    for (auto& p : d.pivots) v += C.w(p);
    return v;
}

inline Series ddet_nrd(const TwistedRing& C, const Ddet& d) {
    if (d.singular) throw ZeroElementError("singular matrix");
    Series r = C.center_nrd(d.pivots[0]);
    for (std::size_t i = 1; i < d.pivots.size(); ++i) r = r * C.center_nrd(d.pivots[i]);
    if (d.negated) r = C.sigma_order() % 2 ? -r : r;
    return r;
}

struct DiagonalConsistency {
    std::int64_t ddet_valuation = 0;
    std::int64_t power_valuation = 0;
    std::int64_t nrd_agreement = 0;  // certified v_y(Nrd(ddet) - Nrd(a^l))
    std::int64_t nrd_precision = 0;  // the smaller of the two norm precisions
    bool valuation_match = false;
    bool nrd_match = false;
};

// ddet(g diag(a, ..., a) h) for unipotent g, h against a^l; mixers may be empty.
inline DiagonalConsistency ddet_diagonal_consistency(const TwistedRing& C, const Series& a, std::size_t l,
                                                     const std::optional<std::pair<TMatrix, TMatrix>>& mixers = {}) {
    if (a.is_zero()) throw ZeroElementError("diagonal consistency needs a != 0");
    TMatrix D = tmat_identity(C, l, a.prec());
    for (std::size_t i = 0; i < l; ++i) D[i][i] = a;
    if (mixers) D = tmat_mul(C, tmat_mul(C, mixers->first, D), mixers->second);
    Ddet d = ddet(C, D);
    DiagonalConsistency r;
    r.ddet_valuation = ddet_valuation(C, d);
    Series p = C.pow(a, static_cast<std::int64_t>(l));
    r.power_valuation = C.w(p);
    Series n1 = ddet_nrd(C, d), n2 = C.center_nrd(p);
    r.nrd_precision = std::min(n1.prec(), n2.prec());
    r.nrd_agreement = (n1 - n2).val_or_prec();
    r.valuation_match = r.ddet_valuation == r.power_valuation;
    r.nrd_match = r.nrd_agreement >= r.nrd_precision;
    return r;
}

// Model: D = GF(Q)((x; sigma)) of index l = ord(sigma), L = C = GF(Q)((y)) with y = x^l.
// D is a left C-space; a base b_i splits w exactly when the values w(b_i) are distinct mod l.
struct CongruenceWitness {
    std::vector<std::int64_t> gamma;
    TMatrix S;  // matrix of right multiplication by a - 1
    bool S_in_J = false;
    OnePlusJReduction reduction;
    std::int64_t diagonal_value = 0;  // certified w(prod t'_ii - 1) in D's normalization
    bool in_one_plus_MC = false;
};

class CongruenceModel {
public:
    CongruenceModel(const TwistedRing& D, std::vector<Series> base) : D_(D), C_(D.field_ptr(), 0, D.sigma_order()) {
        const std::int64_t l = D.sigma_order();
        if (static_cast<std::int64_t>(base.size()) != l) throw InputError("base must have ell elements");
        std::vector<char> seen(static_cast<std::size_t>(l), 0);
        for (auto& b : base) {
            if (b.is_zero()) throw SplittingBaseError("zero base element");
            const std::int64_t g = *b.valuation();
            char& s = seen[static_cast<std::size_t>(mod_floor(g, l))];
            if (s) throw SplittingBaseError("base values are not distinct modulo ell; the min formula fails");
            s = 1;
            gamma_.push_back(g);
        }
        base_ = std::move(base);
    }

    static std::vector<Series> standard_base(const TwistedRing& D, std::int64_t prec) {
        std::vector<Series> b;
        for (std::int64_t i = 0; i < D.sigma_order(); ++i) b.push_back(Series::monomial(D.field_ptr(), 1, i, prec));
        return b;
    }

    const TwistedRing& D() const { return D_; }
    const TwistedRing& C() const { return C_; }
    const std::vector<std::int64_t>& gamma() const { return gamma_; }

    // Left C-coordinates of d, by peeling leading terms; coordinates are series in y.
    std::vector<Series> coordinates(const Series& d) const {
        const std::int64_t l = D_.sigma_order();
        const FiniteField& F = D_.field();
        std::int64_t prec = d.prec();
        for (auto& b : base_) prec = std::min(prec, b.prec());
        std::vector<std::vector<std::pair<std::int64_t, FiniteField::Elt>>> terms(base_.size());
        Series rest = d.with_prec(prec);
        while (!rest.is_zero()) {
            const std::int64_t e = *rest.valuation();
            std::size_t j = 0;
            while (mod_floor(e - gamma_[j], l) != 0) ++j;
            const std::int64_t k = (e - gamma_[j]) / l;
            const FiniteField::Elt c = F.div(rest.lead(), base_[j].lead());
            terms[j].emplace_back(k, c);
            rest = rest - D_.mul(Series::monomial(D_.field_ptr(), c, k * l, prec), base_[j]);
        }
        std::vector<Series> out;
        for (std::size_t j = 0; j < base_.size(); ++j) {
            const std::int64_t yp = floor_div(rest.prec() - gamma_[j], l);
            std::int64_t lo = yp;
            for (auto& [k, c] : terms[j]) lo = std::min(lo, k);
            std::vector<FiniteField::Elt> v(static_cast<std::size_t>(std::max<std::int64_t>(0, yp - lo)), 0);
            for (auto& [k, c] : terms[j])
                if (k < yp) v[static_cast<std::size_t>(k - lo)] = F.add(v[static_cast<std::size_t>(k - lo)], c);
            out.emplace_back(D_.field_ptr(), lo, v, yp);
        }
        return out;
    }

    // Row i holds the coordinates of b_i m.
    TMatrix right_mult_matrix(const Series& m) const {
        TMatrix M;
        for (auto& b : base_) M.push_back(coordinates(D_.mul(b, m)));
        return M;
    }

    CongruenceWitness witness(const Series& a) const {
        if (a.is_zero() || D_.w(a - D_.one(a.prec())) <= 0) throw ContainmentError("a must lie in 1 + M_D");
        CongruenceWitness r;
        r.gamma = gamma_;
        Series m = a - D_.one(a.prec());
        r.S = right_mult_matrix(m);
        r.S_in_J = membership(C_, {gamma_, r.S}) == Membership::InJ;
        TMatrix T = r.S;
        for (std::size_t i = 0; i < T.size(); ++i) T[i][i] = T[i][i] + C_.one(T[i][i].prec());
        r.reduction = reduce_one_plus_J(C_, {gamma_, T});
        r.diagonal_value = C_.w(r.reduction.diagonal_product - C_.one(r.reduction.diagonal_product.prec()));
        r.in_one_plus_MC = r.diagonal_value > 0;
        return r;
    }

private:
    TwistedRing D_;
    TwistedRing C_;
    std::vector<Series> base_;
    std::vector<std::int64_t> gamma_;
};

}  // namespace gdiv
