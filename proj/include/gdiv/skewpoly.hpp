#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gdiv/abgroup.hpp"
#include "gdiv/errors.hpp"
#include "gdiv/gf.hpp"

namespace gdiv {

// Element of D[x; sigma]; c[i] is the coefficient of x^i (coefficients on the left).
struct SkewPoly {
    std::vector<FiniteField::Elt> c;

    SkewPoly() = default;
    explicit SkewPoly(std::vector<FiniteField::Elt> coeffs) : c(std::move(coeffs)) { trim(); }
    static SkewPoly constant(FiniteField::Elt a) { return SkewPoly({a}); }
    static SkewPoly monomial(FiniteField::Elt a, std::size_t deg) {
        std::vector<FiniteField::Elt> v(deg + 1, 0);
        v[deg] = a;
        return SkewPoly(v);
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    FiniteField::Elt lead() const { return c.empty() ? 0 : c.back(); }
    FiniteField::Elt coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    friend bool operator==(const SkewPoly& a, const SkewPoly& b) { return a.c == b.c; }
    friend bool operator!=(const SkewPoly& a, const SkewPoly& b) { return a.c != b.c; }
    friend bool operator<(const SkewPoly& a, const SkewPoly& b) {
        if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
        for (std::size_t i = a.c.size(); i-- > 0;)
            if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
        return false;
    }
};

// Formal Z-combination of simple classes, keyed by canonical class label.
using Divisor = std::map<SkewPoly, std::int64_t>;
// Formal Z-combination of maximal ideals of K[y], keyed by monic irreducible generator.
using CentralDivisor = std::map<FPoly, std::int64_t>;

inline void divisor_add(Divisor& a, const Divisor& b, std::int64_t scale = 1) {
    for (auto& [k, v] : b) {
        auto& x = a[k];
        x += scale * v;
        if (x == 0) a.erase(k);
    }
}
inline void divisor_add(CentralDivisor& a, const CentralDivisor& b, std::int64_t scale = 1) {
    for (auto& [k, v] : b) {
        auto& x = a[k];
        x += scale * v;
        if (x == 0) a.erase(k);
    }
}

struct SimpleClass {
    SkewPoly label;  // lex-least monic irreducible in the class
    FPoly bound;     // monic irreducible pi in K[y] with ann_R(S) = (pi)
};

struct Factorization {
    FiniteField::Elt unit = 1;
    std::vector<SkewPoly> factors;  // f = unit * factors[0] * factors[1] * ...
};

struct KernelStep {
    SkewPoly f, g;           // before the move: f = f1 p, g = g1 q g2
    SkewPoly f1, p, g1, q, g2;
    SkewPoly s, t;           // p s = t q
    SkewPoly f_next, g_next;  // f1 t and g1 g2 s
};

struct KernelReduction {
    FiniteField::Elt d = 1;
    std::vector<KernelStep> certificate;
};

// Kernel of a matrix over GF(p) (rows are equations); returns a basis of solutions.
inline std::vector<std::vector<std::uint32_t>> fp_kernel(std::vector<std::vector<std::uint32_t>> a, std::size_t cols,
                                                         std::uint64_t p) {
    std::vector<int> pivcol;
    std::size_t row = 0;
    auto inv = [&](std::uint64_t x) { return static_cast<std::uint32_t>(powmod_u64(x, p - 2, p)); };
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        std::size_t piv = row;
        while (piv < a.size() && a[piv][col] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[row], a[piv]);
        std::uint64_t iv = inv(a[row][col]);
        for (auto& x : a[row]) x = static_cast<std::uint32_t>(x * iv % p);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][col] == 0) continue;
            std::uint64_t f = a[i][col];
            for (std::size_t j = 0; j < cols; ++j)
                a[i][j] = static_cast<std::uint32_t>((a[i][j] + (p - f) * a[row][j]) % p);
        }
        pivcol.push_back(static_cast<int>(col));
        ++row;
    }
    std::vector<char> is_piv(cols, 0);
    for (int c : pivcol) is_piv[static_cast<std::size_t>(c)] = 1;
    std::vector<std::vector<std::uint32_t>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<std::uint32_t> v(cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivcol.size(); ++r)
            v[static_cast<std::size_t>(pivcol[r])] = static_cast<std::uint32_t>((p - a[r][free]) % p);
        basis.push_back(v);
    }
    return basis;
}

class SkewPolyRing {
public:
    using Elt = FiniteField::Elt;

    // D = GF(q^m), sigma = Frob_q^s.
    SkewPolyRing(std::uint64_t q, std::int64_t m, std::int64_t s) : q_(q), m_(m), s_(mod_floor(s, m)) {
        auto [p, a] = prime_power(q);
        if (m < 1) throw InputError("m must be >= 1");
        p_ = p;
        a_ = a;
        std::uint64_t size = 1;
        for (std::int64_t i = 0; i < m; ++i) {
            if (size > FiniteField::kMaxSize / q) throw BudgetExceededError("field too large");
            size *= q;
        }
        D_ = FiniteField::get(size);
        g_ = std::gcd(m_, s_ == 0 ? m_ : s_);
        ell_ = m_ / g_;
        cache_ = std::make_shared<Cache>();
    }

    const FiniteField& field() const { return *D_; }
    std::uint64_t q() const { return q_; }
    std::int64_t m() const { return m_; }
    std::int64_t sigma_exp() const { return s_; }
    std::int64_t ell() const { return ell_; }
    std::int64_t index() const { return ell_; }
    // K = GF(q^k_degree), fixed field of sigma.
    std::int64_t k_degree() const { return g_; }
    unsigned k_fp_degree() const { return static_cast<unsigned>(a_ * g_); }
    bool in_K(Elt c) const { return D_->in_subfield(c, k_fp_degree()); }

    Elt sigma(Elt c, std::int64_t k = 1) const { return D_->frob(c, static_cast<std::int64_t>(a_) * mod_floor(s_ * k, m_)); }

    SkewPoly x_pow(std::size_t k) const { return SkewPoly::monomial(1, k); }
    SkewPoly central(const FPoly& n) const {
        std::vector<Elt> v(n.c.empty() ? 0 : (n.c.size() - 1) * static_cast<std::size_t>(ell_) + 1, 0);
        for (std::size_t i = 0; i < n.c.size(); ++i) v[i * static_cast<std::size_t>(ell_)] = n.c[i];
        return SkewPoly(v);
    }

    SkewPoly add(const SkewPoly& a, const SkewPoly& b) const {
        std::vector<Elt> v(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = D_->add(a.coeff(i), b.coeff(i));
        return SkewPoly(v);
    }
    SkewPoly neg(const SkewPoly& a) const {
        std::vector<Elt> v(a.c.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = D_->neg(a.c[i]);
        return SkewPoly(v);
    }
    SkewPoly sub(const SkewPoly& a, const SkewPoly& b) const { return add(a, neg(b)); }
    SkewPoly scale_left(Elt u, const SkewPoly& a) const {
        std::vector<Elt> v(a.c.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = D_->mul(u, a.c[i]);
        return SkewPoly(v);
    }

    SkewPoly mul(const SkewPoly& a, const SkewPoly& b) const {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Elt> v(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                if (b.c[j]) v[i + j] = D_->add(v[i + j], D_->mul(a.c[i], sigma(b.c[j], static_cast<std::int64_t>(i))));
        }
        return SkewPoly(v);
    }

    SkewPoly product(const std::vector<SkewPoly>& fs, std::size_t lo, std::size_t hi) const {
        SkewPoly r = SkewPoly::constant(1);
        for (std::size_t i = lo; i < hi; ++i) r = mul(r, fs[i]);
        return r;
    }

    // f = q g + r with deg r < deg g.
    std::pair<SkewPoly, SkewPoly> right_divide(const SkewPoly& f, const SkewPoly& g) const {
        if (g.is_zero()) throw DivisionByZero("right division by zero");
        SkewPoly r = f;
        const int dg = g.degree();
        std::vector<Elt> qv(f.degree() >= dg ? static_cast<std::size_t>(f.degree() - dg + 1) : 0, 0);
        while (!r.is_zero() && r.degree() >= dg) {
            const std::size_t k = static_cast<std::size_t>(r.degree() - dg);
            Elt c = D_->div(r.lead(), sigma(g.lead(), static_cast<std::int64_t>(k)));
            qv[k] = c;
            for (std::size_t j = 0; j < g.c.size(); ++j)
                if (g.c[j]) r.c[k + j] = D_->sub(r.c[k + j], D_->mul(c, sigma(g.c[j], static_cast<std::int64_t>(k))));
            r.trim();
        }
        return {SkewPoly(qv), r};
    }

    // f = g q + r with deg r < deg g.
    std::pair<SkewPoly, SkewPoly> left_divide(const SkewPoly& f, const SkewPoly& g) const {
        if (g.is_zero()) throw DivisionByZero("left division by zero");
        SkewPoly r = f;
        const int dg = g.degree();
        std::vector<Elt> qv(f.degree() >= dg ? static_cast<std::size_t>(f.degree() - dg + 1) : 0, 0);
        while (!r.is_zero() && r.degree() >= dg) {
            const std::size_t k = static_cast<std::size_t>(r.degree() - dg);
            Elt c = sigma(D_->div(r.lead(), g.lead()), -dg);
            qv[k] = c;
            r = sub(r, mul(g, SkewPoly::monomial(c, k)));
        }
        return {SkewPoly(qv), r};
    }

    bool right_divides(const SkewPoly& g, const SkewPoly& f) const { return right_divide(f, g).second.is_zero(); }

    SkewPoly monic(const SkewPoly& f) const {
        if (f.is_zero()) throw ZeroElementError("monic of zero");
        return scale_left(D_->inv(f.lead()), f);
    }

    // Monic generator of T a + T b.
    SkewPoly right_gcd(SkewPoly a, SkewPoly b) const {
        while (!b.is_zero()) {
            SkewPoly r = right_divide(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.is_zero() ? a : monic(a);
    }

    // Reduced norm to the center K[y]: determinant of left multiplication on the right
    // D[y]-basis 1, x, ..., x^(ell-1).
    FPoly nrd(const SkewPoly& f) const {
        if (f.is_zero()) throw ZeroElementError("reduced norm of zero");
        const std::size_t L = static_cast<std::size_t>(ell_);
        std::vector<std::vector<FPoly>> M(L, std::vector<FPoly>(L));
        for (std::size_t j = 0; j < L; ++j)
            for (std::size_t k = 0; k < f.c.size(); ++k) {
                if (f.c[k] == 0) continue;
                // f_k x^k x^j = x^(k+j) sigma^-(k+j)(f_k)
                const std::size_t e = k + j;
                Elt c = sigma(f.c[k], -static_cast<std::int64_t>(e));
                M[e % L][j] = padd(*D_, M[e % L][j], FPoly::monomial(c, e / L));
            }
        FPoly det = poly_det(M);
        for (auto c : det.c)
            if (!in_K(c)) throw InvalidStructureError("reduced norm left the center");
        return det;
    }

    // N_{D/K}(d).
    Elt norm_D_K(Elt d) const {
        Elt r = 1;
        for (std::int64_t i = 0; i < ell_; ++i) r = D_->mul(r, sigma(d, i));
        return r;
    }

    // Factorization of a nonzero polynomial in K[y] into monic irreducibles (trial division).
    std::vector<std::pair<FPoly, std::int64_t>> factor_central(const FPoly& n) const {
        if (n.is_zero()) throw ZeroElementError("factor of zero");
        std::vector<std::pair<FPoly, std::int64_t>> out;
        FPoly r = pmonic(*D_, n);
        for (int e = 1; 2 * e <= r.degree(); ++e) {
            for_each_monic(*D_, k_fp_degree(), e, [&](const FPoly& c) {
                std::int64_t mult = 0;
                for (;;) {
                    auto [qq, rr] = pdivmod(*D_, r, c);
                    if (!rr.is_zero()) break;
                    r = qq;
                    ++mult;
                }
                if (mult) out.emplace_back(c, mult);
                return 2 * e <= r.degree();
            });
        }
        if (r.degree() > 0) {
            bool merged = false;
            for (auto& [f, k] : out)
                if (f == r) {
                    ++k;
                    merged = true;
                }
            if (!merged) out.emplace_back(r, 1);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Monic irreducible right divisor of f (deg f >= 1).
    SkewPoly irreducible_right_divisor(const SkewPoly& f) const {
        if (f.degree() < 1) throw InputError("no irreducible divisor of a unit");
        if (f.c[0] == 0) return x_pow(1);
        FPoly nf = nrd(f);
        std::mt19937_64 rng(0x5eed0000ULL + static_cast<std::uint64_t>(f.c.size()) * 7919 + f.c[0]);
        for (auto& [pi, mult] : factor_central(nf)) {
            if (pi.degree() == 1 && pi.c[0] == 0) continue;  // y: handled by the constant-term test
            SkewPoly g0 = right_gcd(f, right_divide(central(pi), f).second);
            if (g0.degree() < 1) continue;
            const int d = pi.degree();
            for (int tries = 0; tries < 400 && g0.degree() > d; ++tries) {
                std::vector<Elt> hv(static_cast<std::size_t>(g0.degree()));
                for (auto& x : hv) x = static_cast<Elt>(rng() % D_->size());
                SkewPoly r = right_gcd(g0, SkewPoly(hv));
                if (r.degree() > 0 && r.degree() < g0.degree()) g0 = r;
            }
            if (g0.degree() == d) return g0;
            std::optional<SkewPoly> found;
            for_each_monic(*D_, D_->degree(), d, [&](const FPoly& cand) {
                SkewPoly c(cand.c);
                if (right_divides(c, g0)) {
                    found = c;
                    return false;
                }
                return true;
            });
            if (found) return *found;
        }
        throw InvalidStructureError("no irreducible right divisor found");
    }

    Factorization factor(const SkewPoly& f) const {
        if (f.is_zero()) throw ZeroElementError("factor of zero");
        Factorization out;
        SkewPoly cur = f;
        std::vector<SkewPoly> rev;
        while (cur.degree() > 0) {
            SkewPoly p = irreducible_right_divisor(cur);
            rev.push_back(p);
            cur = right_divide(cur, p).first;
        }
        out.unit = cur.c[0];
        out.factors.assign(rev.rbegin(), rev.rend());
        return out;
    }

    // Exhaustive check: no monic right divisor of degree 1..deg-1.
    bool is_irreducible_exhaustive(const SkewPoly& f) const {
        if (f.degree() < 1) return false;
        for (int d = 1; d < f.degree(); ++d) {
            bool hit = false;
            for_each_monic(*D_, D_->degree(), d, [&](const FPoly& cand) {
                hit = right_divides(SkewPoly(cand.c), f);
                return !hit;
            });
            if (hit) return false;
        }
        return true;
    }

    FPoly bound_of(const SkewPoly& p) const {
        auto fs = factor_central(nrd(p));
        if (fs.size() != 1) throw InputError("polynomial is not irreducible");
        return fs.front().first;
    }

    // Canonical label: lex-least monic right divisor of pi(x^ell) of degree deg(p).
    SimpleClass class_of_bound(const FPoly& pi, int deg) const {
        {
            std::lock_guard<std::mutex> lock(cache_->mu);
            auto it = cache_->labels.find(pi);
            if (it != cache_->labels.end()) return {it->second, pi};
        }
        SkewPoly big = (pi.degree() == 1 && pi.c[0] == 0) ? x_pow(1) : central(pi);
        std::optional<SkewPoly> found;
        for_each_monic(*D_, D_->degree(), deg, [&](const FPoly& cand) {
            SkewPoly c(cand.c);
            if (right_divides(c, big)) {
                found = c;
                return false;
            }
            return true;
        });
        if (!found) throw InvalidStructureError("class label search failed");
        std::lock_guard<std::mutex> lock(cache_->mu);
        cache_->labels.emplace(pi, *found);
        return {*found, pi};
    }

    SimpleClass class_of(const SkewPoly& p) const { return class_of_bound(bound_of(p), p.degree()); }

    Divisor divisor(const SkewPoly& f) const {
        Divisor d;
        for (auto& p : factor(f).factors) ++d[class_of(p).label];
        return d;
    }

    // (s, t) with f s = t g and deg s = deg t < deg f, when T/Tf and T/Tg are isomorphic.
    std::optional<std::pair<SkewPoly, SkewPoly>> similar(const SkewPoly& f, const SkewPoly& g) const {
        if (f.degree() != g.degree() || f.degree() < 1) throw InputError("similarity needs equal positive degrees");
        if (f == g) return std::make_pair(SkewPoly::constant(1), SkewPoly::constant(1));
        const std::size_t n = static_cast<std::size_t>(g.degree());
        const std::size_t k = D_->degree();
        const std::size_t cols = n * k;
        std::vector<std::vector<std::uint32_t>> rows(cols, std::vector<std::uint32_t>(cols, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t b = 0; b < k; ++b) {
                std::vector<std::uint32_t> dig(k, 0);
                dig[b] = 1;
                SkewPoly s = SkewPoly::monomial(D_->from_digits(dig), i);
                SkewPoly r = right_divide(mul(f, s), g).second;
                for (std::size_t ii = 0; ii < n; ++ii) {
                    auto rd = D_->digits(r.coeff(ii));
                    for (std::size_t bb = 0; bb < k; ++bb) rows[ii * k + bb][i * k + b] = rd[bb];
                }
            }
        auto ker = fp_kernel(rows, cols, p_);
        if (ker.empty()) return std::nullopt;
        std::vector<Elt> sv(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            sv[i] = D_->from_digits(std::vector<std::uint32_t>(ker.front().begin() + static_cast<std::ptrdiff_t>(i * k),
                                                               ker.front().begin() + static_cast<std::ptrdiff_t>((i + 1) * k)));
        SkewPoly s(sv);
        auto [t, rem] = right_divide(mul(f, s), g);
        if (!rem.is_zero()) throw InvalidStructureError("similarity witness failed");
        return std::make_pair(s, t);
    }

    static bool replay(const SkewPolyRing& R, const KernelStep& st) {
        return R.mul(st.f1, st.p) == st.f && R.mul(R.mul(st.g1, st.q), st.g2) == st.g &&
               R.mul(st.p, st.s) == R.mul(st.t, st.q) && R.mul(st.f1, st.t) == st.f_next &&
               R.mul(R.mul(st.g1, st.g2), st.s) == st.g_next && st.f_next.degree() < st.f.degree();
    }

    KernelReduction reduce_kernel_element(const SkewPoly& f, const SkewPoly& g) const {
        if (f.is_zero() || g.is_zero()) throw ZeroElementError("kernel reduction of zero");
        if (divisor(f) != divisor(g)) throw DivisorMismatchError("delta(f) != delta(g)");
        KernelReduction out;
        SkewPoly F = f, G = g;
        while (F.degree() > 0) {
            KernelStep st;
            st.f = F;
            st.g = G;
            st.p = irreducible_right_divisor(F);
            st.f1 = right_divide(F, st.p).first;
            SkewPoly plabel = class_of(st.p).label;
            Factorization gf = factor(G);
            std::size_t j = gf.factors.size();
            for (std::size_t i = 0; i < gf.factors.size(); ++i)
                if (class_of(gf.factors[i]).label == plabel) {
                    j = i;
                    break;
                }
            if (j == gf.factors.size()) throw DivisorMismatchError("no similar factor in the denominator");
            st.q = gf.factors[j];
            st.g1 = scale_left(gf.unit, product(gf.factors, 0, j));
            st.g2 = product(gf.factors, j + 1, gf.factors.size());
            auto w = similar(st.p, st.q);
            if (!w) throw InvalidStructureError("similar classes without a witness");
            st.s = w->first;
            st.t = w->second;
            st.f_next = mul(st.f1, st.t);
            st.g_next = mul(mul(st.g1, st.g2), st.s);
            if (!replay(*this, st)) throw InvalidStructureError("kernel step does not replay");
            F = st.f_next;
            G = st.g_next;
            out.certificate.push_back(std::move(st));
        }
        if (G.degree() != 0) throw InvalidStructureError("denominator kept positive degree");
        out.d = D_->div(F.c[0], G.c[0]);
        // Nrd(f) = N_{D/K}(d) Nrd(g)
        if (pscale(*D_, nrd(g), norm_D_K(out.d)) != nrd(f)) throw InvalidStructureError("norm check failed");
        return out;
    }

    // dim_K of T/M and of S for the class with bound pi and label degree deg.
    std::int64_t dim_K_TM(const FPoly& pi) const {
        bool is_y = pi.degree() == 1 && pi.c[0] == 0;
        return is_y ? ell_ : ell_ * ell_ * pi.degree();
    }
    std::int64_t n_S(const SimpleClass& c) const {
        const std::int64_t tm = dim_K_TM(c.bound);
        const std::int64_t s = ell_ * c.label.degree();
        const std::int64_t k = tm / s;  // T/M = M_k(Delta): dim T/M = k dim S
        const std::int64_t over_rp = tm / c.bound.degree();
        if (over_rp % (ell_ * k) != 0) throw InvalidStructureError("n_S is not integral");
        return over_rp / (ell_ * k);
    }

    CentralDivisor nrd_divisor(const Divisor& d) const {
        CentralDivisor out;
        for (auto& [label, mult] : d) {
            SimpleClass c{label, bound_of(label)};
            divisor_add(out, CentralDivisor{{c.bound, n_S(c) * mult}});
        }
        return out;
    }

    // Restriction of scalars: jh_R of S viewed as an R-module.
    CentralDivisor restriction_divisor(const Divisor& d) const {
        CentralDivisor out;
        for (auto& [label, mult] : d) {
            FPoly pi = bound_of(label);
            std::int64_t dimS = ell_ * label.degree();
            divisor_add(out, CentralDivisor{{pi, mult * dimS / pi.degree()}});
        }
        return out;
    }

    // Scalar extension: [R/P] -> jh_T(T/T pi).
    Divisor rho(const CentralDivisor& d) const {
        Divisor out;
        for (auto& [pi, mult] : d) divisor_add(out, divisor(central(pi)), mult);
        return out;
    }

    CentralDivisor central_divisor(const FPoly& n) const {
        CentralDivisor out;
        for (auto& [pi, k] : factor_central(n)) out[pi] += k;
        return out;
    }

    // Every simple class whose bound has degree <= max_deg.
    std::vector<SimpleClass> simple_classes_up_to(int max_deg) const {
        std::vector<SimpleClass> out;
        for (int e = 1; e <= max_deg; ++e)
            for_each_monic(*D_, k_fp_degree(), e, [&](const FPoly& pi) {
                if (factor_central(pi).size() == 1 && factor_central(pi).front().second == 1) {
                    bool is_y = e == 1 && pi.c[0] == 0;
                    out.push_back(class_of_bound(pi, is_y ? 1 : e));
                }
                return true;
            });
        return out;
    }

    // Text form: terms "L*x^k" with L the discrete log of the coefficient.
    std::string format(const SkewPoly& f) const {
        if (f.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = f.c.size(); i-- > 0;) {
            if (f.c[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << D_->log(f.c[i]);
            if (i > 0) os << "*x" << (i > 1 ? "^" + std::to_string(i) : "");
        }
        return os.str();
    }

    SkewPoly parse(const std::string& text) const {
        std::vector<Elt> v;
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        if (s == "0") return {};
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t end = s.find('+', pos);
            std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
            pos = end == std::string::npos ? s.size() : end + 1;
            if (term.empty()) throw InputError("empty term in skew polynomial");
            std::int64_t lg = 0;
            std::size_t deg = 0;
            std::size_t xp = term.find('x');
            std::string coef = xp == std::string::npos ? term : term.substr(0, xp);
            if (!coef.empty() && coef.back() == '*') coef.pop_back();
            try {
                if (!coef.empty()) lg = std::stoll(coef);
                if (xp != std::string::npos) {
                    std::string rest = term.substr(xp + 1);
                    if (rest.empty())
                        deg = 1;
                    else if (rest[0] == '^')
                        deg = static_cast<std::size_t>(std::stoul(rest.substr(1)));
                    else
                        throw InputError("bad exponent");
                } else if (coef.empty()) {
                    throw InputError("bad term");
                }
            } catch (const std::logic_error&) {
                throw InputError("cannot parse skew polynomial term '" + term + "'");
            }
            if (v.size() <= deg) v.resize(deg + 1, 0);
            v[deg] = D_->add(v[deg], D_->exp(lg));
        }
        return SkewPoly(v);
    }

private:
    struct Cache {
        std::mutex mu;
        std::map<FPoly, SkewPoly> labels;
    };

    // Fraction-free determinant over D[y].
    FPoly poly_det(std::vector<std::vector<FPoly>> m) const {
        const std::size_t n = m.size();
        FPoly prev = FPoly::constant(1);
        bool neg = false;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (m[k][k].is_zero()) {
                std::size_t p = k + 1;
                while (p < n && m[p][k].is_zero()) ++p;
                if (p == n) return {};
                std::swap(m[k], m[p]);
                neg = !neg;
            }
            for (std::size_t i = k + 1; i < n; ++i)
                for (std::size_t j = k + 1; j < n; ++j) {
                    FPoly num = psub(*D_, pmul(*D_, m[i][j], m[k][k]), pmul(*D_, m[i][k], m[k][j]));
                    m[i][j] = pdivmod(*D_, num, prev).first;
                }
            prev = m[k][k];
        }
        FPoly d = m[n - 1][n - 1];
        return neg ? pneg(*D_, d) : d;
    }

    std::uint64_t q_;
    std::int64_t m_, s_;
    std::uint64_t p_ = 0;
    unsigned a_ = 1;
    std::shared_ptr<const FiniteField> D_;
    std::int64_t g_ = 1, ell_ = 1;
    std::shared_ptr<Cache> cache_;
};

}  // namespace gdiv
