#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "gdiv/errors.hpp"
#include "gdiv/gf.hpp"

namespace gdiv {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}
inline std::int64_t rat_floor(const Rational& r) { return floor_div(r.numerator(), r.denominator()); }
inline std::int64_t rat_ceil(const Rational& r) { return -floor_div(-r.numerator(), r.denominator()); }
inline std::string rat_str(const Rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Sum c[i] t^(val+i) + O(t^prec) over GF(q); c[0] != 0 unless the element is zero to precision,
// in which case c is empty and val == prec.
class Series {
public:
    using Elt = FiniteField::Elt;

    Series() = default;
    Series(std::shared_ptr<const FiniteField> f, std::int64_t val, std::vector<Elt> coeffs, std::int64_t prec)
        : F_(std::move(f)), val_(val), c_(std::move(coeffs)), prec_(prec) {
        normalize();
    }
    static Series zero(std::shared_ptr<const FiniteField> f, std::int64_t prec) { return Series(std::move(f), prec, {}, prec); }
    static Series constant(std::shared_ptr<const FiniteField> f, Elt a, std::int64_t prec) {
        return Series(std::move(f), 0, {a}, prec);
    }
    static Series monomial(std::shared_ptr<const FiniteField> f, Elt a, std::int64_t e, std::int64_t prec) {
        return Series(std::move(f), e, {a}, prec);
    }

    const std::shared_ptr<const FiniteField>& field_ptr() const { return F_; }
    const FiniteField& field() const { return *F_; }
    bool is_zero() const { return c_.empty(); }
    std::optional<std::int64_t> valuation() const {
        if (c_.empty()) return std::nullopt;
        return val_;
    }
    // Valuation, or the precision bound for a tracked zero.
    std::int64_t val_or_prec() const { return c_.empty() ? prec_ : val_; }
    std::int64_t prec() const { return prec_; }
    std::int64_t relative_precision() const { return prec_ - val_; }
    Elt lead() const { return c_.empty() ? 0 : c_[0]; }
    const std::vector<Elt>& coeffs() const { return c_; }
    std::int64_t start() const { return val_; }
    Elt coeff(std::int64_t e) const {
        if (e < val_ || e >= val_ + static_cast<std::int64_t>(c_.size())) return 0;
        return c_[static_cast<std::size_t>(e - val_)];
    }

    Series with_prec(std::int64_t p) const { return Series(F_, val_, c_, std::min(p, prec_)); }

    friend Series operator+(const Series& a, const Series& b) {
        const FiniteField& F = a.same_field(b);
        std::int64_t prec = std::min(a.prec_, b.prec_);
        std::int64_t lo = std::min(a.val_or_prec(), b.val_or_prec());
        if (lo >= prec) return zero(a.F_, prec);
        std::vector<Elt> v(static_cast<std::size_t>(prec - lo), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            std::int64_t e = a.val_ + static_cast<std::int64_t>(i);
            if (e < prec) v[static_cast<std::size_t>(e - lo)] = a.c_[i];
        }
        for (std::size_t i = 0; i < b.c_.size(); ++i) {
            std::int64_t e = b.val_ + static_cast<std::int64_t>(i);
            if (e < prec) v[static_cast<std::size_t>(e - lo)] = F.add(v[static_cast<std::size_t>(e - lo)], b.c_[i]);
        }
        return Series(a.F_, lo, v, prec);
    }
    Series operator-() const {
        std::vector<Elt> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = F_->neg(c_[i]);
        return Series(F_, val_, v, prec_);
    }
    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

    friend Series operator*(const Series& a, const Series& b) {
        const FiniteField& F = a.same_field(b);
        std::int64_t va = a.val_or_prec(), vb = b.val_or_prec();
        std::int64_t prec = std::min(va + b.prec_, vb + a.prec_);
        if (a.c_.empty() || b.c_.empty()) return zero(a.F_, prec);
        std::int64_t lo = va + vb;
        if (lo >= prec) return zero(a.F_, prec);
        std::size_t len = static_cast<std::size_t>(prec - lo);
        std::vector<Elt> v(len, 0);
        for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j)
                if (b.c_[j]) v[i + j] = F.add(v[i + j], F.mul(a.c_[i], b.c_[j]));
        }
        return Series(a.F_, lo, v, prec);
    }

    Series scale(Elt s) const {
        std::vector<Elt> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = F_->mul(s, c_[i]);
        return Series(F_, val_, v, s == 0 ? prec_ : prec_);
    }
    Series shift(std::int64_t k) const { return Series(F_, val_ + k, c_, prec_ + k); }

    Series inverse() const {
        if (c_.empty()) throw PrecisionExhaustedError("cannot invert a series with no known nonzero coefficient");
        std::size_t r = static_cast<std::size_t>(prec_ - val_);
        std::vector<Elt> inv(r, 0);
        Elt l = F_->inv(c_[0]);
        inv[0] = l;
        for (std::size_t k = 1; k < r; ++k) {
            Elt s = 0;
            for (std::size_t j = 1; j <= k && j < c_.size(); ++j)
                if (c_[j] && inv[k - j]) s = F_->add(s, F_->mul(c_[j], inv[k - j]));
            inv[k] = F_->neg(F_->mul(l, s));
        }
        return Series(F_, -val_, inv, -val_ + static_cast<std::int64_t>(r));
    }
    friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

    Series pow(std::int64_t k) const {
        if (k < 0) return inverse().pow(-k);
        if (k == 0) return constant(F_, 1, relative_precision());
        std::optional<Series> r;
        Series b = *this;
        while (k) {
            if (k & 1) r = r ? *r * b : b;
            k >>= 1;
            if (k) b = b * b;
        }
        return *r;
    }

    // v(a - b) >= n is certified by the tracked precision.
    friend bool agree_to(const Series& a, const Series& b, std::int64_t n) {
        Series d = a - b;
        return d.val_or_prec() >= n;
    }

    std::string str() const {
        std::ostringstream os;
        if (c_.empty()) {
            os << "0 [prec=" << prec_ << "]";
            return os.str();
        }
        if (val_ != 0) os << "t^" << val_ << " * ";
        os << "(";
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << c_[i];
            if (i) os << "*t" << (i > 1 ? "^" + std::to_string(i) : "");
        }
        os << ") [prec=" << prec_ << "]";
        return os.str();
    }

private:
    const FiniteField& same_field(const Series& o) const {
        if (F_.get() != o.F_.get()) throw InputError("series over different fields");
        return *F_;
    }
    void normalize() {
        if (static_cast<std::int64_t>(c_.size()) > prec_ - val_)
            c_.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, prec_ - val_)));
        std::size_t k = 0;
        while (k < c_.size() && c_[k] == 0) ++k;
        if (k == c_.size()) {
            c_.clear();
            val_ = prec_;
            return;
        }
        if (k) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(k));
            val_ += static_cast<std::int64_t>(k);
        }
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::shared_ptr<const FiniteField> F_;
    std::int64_t val_ = 0;
    std::vector<Elt> c_;
    std::int64_t prec_ = 0;
};

// Literal form: "t^v * (c0 + c1*t + ...) [prec=N]"; coefficients are field element codes.
inline Series parse_series(std::shared_ptr<const FiniteField> F, const std::string& text, std::int64_t default_prec) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    std::int64_t prec = default_prec, shift = 0;
    auto bad = [&]() { return InputError("cannot parse series literal '" + text + "'"); };
    try {
        auto lb = s.find("[prec=");
        if (lb != std::string::npos) {
            auto rb = s.find(']', lb);
            if (rb == std::string::npos) throw bad();
            prec = std::stoll(s.substr(lb + 6, rb - lb - 6));
            s = s.substr(0, lb);
        }
        auto star = s.find("*(");
        if (s.rfind("t^", 0) == 0 && star != std::string::npos) {
            shift = std::stoll(s.substr(2, star - 2));
            s = s.substr(star + 1);
        }
        if (!s.empty() && s.front() == '(') {
            if (s.back() != ')') throw bad();
            s = s.substr(1, s.size() - 2);
        }
        std::vector<FiniteField::Elt> v;
        std::int64_t lo = 0;
        std::vector<std::pair<std::int64_t, FiniteField::Elt>> terms;
        std::size_t pos = 0;
        while (pos < s.size()) {
            bool negative = false;
            if (s[pos] == '+' || s[pos] == '-') {
                negative = s[pos] == '-';
                ++pos;
            }
            // Next sign that does not belong to an exponent.
            std::size_t end = pos;
            while (end < s.size() && !((s[end] == '+' || s[end] == '-') && end > pos && s[end - 1] != '^')) ++end;
            std::string term = s.substr(pos, end - pos);
            pos = end;
            if (term.empty() || term[0] == '+' || term[0] == '-') throw bad();
            std::int64_t e = 0;
            std::uint64_t c = 1;
            auto tp = term.find('t');
            std::string coef = tp == std::string::npos ? term : term.substr(0, tp);
            if (!coef.empty() && coef.back() == '*') coef.pop_back();
            if (!coef.empty()) c = std::stoull(coef);
            if (tp != std::string::npos) {
                std::string rest = term.substr(tp + 1);
                e = rest.empty() ? 1 : (rest[0] == '^' ? std::stoll(rest.substr(1)) : throw bad());
            }
            if (c >= F->size()) throw bad();
            FiniteField::Elt ce = static_cast<FiniteField::Elt>(c);
            terms.emplace_back(e, negative ? F->neg(ce) : ce);
            lo = std::min(lo, e);
        }
        std::int64_t hi = lo;
        for (auto& [e, c] : terms) hi = std::max(hi, e);
        v.assign(static_cast<std::size_t>(hi - lo + 1), 0);
        for (auto& [e, c] : terms) v[static_cast<std::size_t>(e - lo)] = F->add(v[static_cast<std::size_t>(e - lo)], c);
        return Series(F, lo + shift, v, prec);
    } catch (const std::logic_error&) {
        throw bad();
    }
}

// Polynomial over the series field, coefficients low to high.
using SPoly = std::vector<Series>;

inline std::size_t spoly_degree(const SPoly& f) { return f.empty() ? 0 : f.size() - 1; }

inline Series spoly_eval(const SPoly& f, const Series& a) {
    Series acc = f.back();
    for (std::size_t i = f.size() - 1; i-- > 0;) acc = acc * a + f[i];
    return acc;
}

inline SPoly spoly_deriv(const SPoly& f) {
    SPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i].scale(f[i].field().from_int(static_cast<std::int64_t>(i))));
    if (d.empty()) d.push_back(Series::zero(f[0].field_ptr(), f[0].prec()));
    return d;
}

inline SPoly spoly_add(const SPoly& a, const SPoly& b) {
    SPoly r;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        if (i >= a.size())
            r.push_back(b[i]);
        else if (i >= b.size())
            r.push_back(a[i]);
        else
            r.push_back(a[i] + b[i]);
    }
    return r;
}
inline SPoly spoly_neg(const SPoly& a) {
    SPoly r;
    for (auto& x : a) r.push_back(-x);
    return r;
}
inline SPoly spoly_sub(const SPoly& a, const SPoly& b) { return spoly_add(a, spoly_neg(b)); }
inline SPoly spoly_mul(const SPoly& a, const SPoly& b) {
    SPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j].field_ptr() ? r[i + j] + a[i] * b[j] : a[i] * b[j];
    return r;
}

// Division by a polynomial with unit leading coefficient.
inline std::pair<SPoly, SPoly> spoly_divmod(const SPoly& a, const SPoly& b) {
    if (b.back().is_zero()) throw DivisionByZero("divisor has zero leading coefficient");
    SPoly r = a;
    const std::size_t db = b.size() - 1;
    if (a.size() <= db) return {SPoly{Series::zero(a[0].field_ptr(), a[0].prec())}, r};
    SPoly q(a.size() - db, Series::zero(a[0].field_ptr(), a[0].prec()));
    Series linv = b.back().inverse();
    for (std::size_t k = a.size(); k-- > db;) {
        Series c = r[k] * linv;
        q[k - db] = c;
        for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = r[k - db + j] - c * b[j];
    }
    r.resize(db);
    if (r.empty()) r.push_back(Series::zero(a[0].field_ptr(), a[0].prec()));
    return {q, r};
}

// Weighted valuation min_i v(a_i) + i*lambda (tracked zeros count at their precision bound).
inline Rational weight(const SPoly& f, const Rational& lambda) {
    Rational w(std::numeric_limits<std::int32_t>::max());
    for (std::size_t i = 0; i < f.size(); ++i)
        w = std::min(w, Rational(f[i].val_or_prec()) + lambda * static_cast<std::int64_t>(i));
    return w;
}

// ---------------------------------------------------------------------------
// lambda-polynomials

inline bool is_lambda_polynomial(const SPoly& f, const Rational& lambda) {
    if (f.size() < 2) throw InputError("lambda-polynomial needs degree >= 1");
    if (f.front().is_zero() || f.back().is_zero()) throw InputError("a_0 and a_n must be nonzero");
    const std::int64_t n = static_cast<std::int64_t>(f.size()) - 1;
    const std::int64_t vn = *f.back().valuation();
    for (std::size_t i = 0; i < f.size(); ++i) {
        Rational bound = Rational(n - static_cast<std::int64_t>(i)) * lambda + vn;
        if (f[i].is_zero()) {
            if (Rational(f[i].prec()) < bound) throw PrecisionExhaustedError("coefficient precision below the lambda bound");
            continue;
        }
        if (Rational(*f[i].valuation()) < bound) return false;
    }
    return Rational(*f.front().valuation()) == Rational(n) * lambda + vn;
}

inline Rational forced_lambda(const SPoly& f) {
    const std::int64_t n = static_cast<std::int64_t>(f.size()) - 1;
    return Rational(*f.front().valuation() - *f.back().valuation(), n);
}

// Homogeneous polynomial over gr(F) = GF(q)[t~, t~^-1] with x of degree lambda, stored dehomogenized:
// the coefficient of x^i is c_i t~^(degree - i*lambda).
struct GradedPoly {
    FPoly c;
    Rational lambda;
    Rational degree;
    friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
        return a.c == b.c && a.lambda == b.lambda && (a.c.is_zero() || a.degree == b.degree);
    }
    std::int64_t coeff_exponent(std::size_t i) const {
        Rational e = degree - lambda * static_cast<std::int64_t>(i);
        if (e.denominator() != 1) throw InvalidStructureError("non-integral coefficient degree");
        return e.numerator();
    }
};

inline GradedPoly homogenize(const SPoly& f, const Rational& lambda) {
    if (!is_lambda_polynomial(f, lambda)) throw NotLambdaPolyError("not a lambda-polynomial for lambda = " + rat_str(lambda));
    const std::int64_t n = static_cast<std::int64_t>(f.size()) - 1;
    const std::int64_t vn = *f.back().valuation();
    std::vector<FiniteField::Elt> c(f.size(), 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        if (Rational(*f[i].valuation()) == Rational(n - static_cast<std::int64_t>(i)) * lambda + vn) c[i] = f[i].lead();
    }
    return {FPoly(c), lambda, Rational(vn) + lambda * n};
}

inline GradedPoly graded_mul(const FiniteField& F, const GradedPoly& a, const GradedPoly& b) {
    if (a.lambda != b.lambda) throw InputError("graded product needs equal lambda");
    return {pmul(F, a.c, b.c), a.lambda, a.degree + b.degree};
}

// Series coefficients of a homogeneous polynomial, c_i t^(exponent).
inline SPoly lift_graded(std::shared_ptr<const FiniteField> F, const GradedPoly& g, std::int64_t prec) {
    SPoly out;
    for (std::size_t i = 0; i < g.c.c.size(); ++i)
        out.push_back(g.c.c[i] ? Series::monomial(F, g.c.c[i], g.coeff_exponent(i), prec) : Series::zero(F, prec));
    if (out.empty()) out.push_back(Series::zero(F, prec));
    return out;
}

// Root of f with leading term beta t^lambda, by Newton iteration; lambda must be integral.
inline Series hensel_lift_root(const SPoly& f, const Rational& lambda, FiniteField::Elt beta, std::int64_t target) {
    if (lambda.denominator() != 1) throw InputError("roots in gr(F) need integral lambda");
    GradedPoly g = homogenize(f, lambda);
    const FiniteField& F = f[0].field();
    if (beta == 0 || peval(F, g.c, beta) != 0) throw NotSimpleRootError("beta t^lambda is not a root of f^(lambda)");
    if (peval(F, pderiv(F, g.c), beta) == 0) throw NotSimpleRootError("root of f^(lambda) is not simple");
    std::int64_t wp = target;
    for (auto& c : f) wp = std::max(wp, c.prec());
    Series a = Series::monomial(f[0].field_ptr(), beta, lambda.numerator(), wp);
    SPoly df = spoly_deriv(f);
    for (int it = 0; it < 64; ++it) {
        Series fa = spoly_eval(f, a);
        if (fa.val_or_prec() >= target) return a;
        Series step = fa / spoly_eval(df, a);
        if (step.is_zero()) break;
        a = a - step;
    }
    if (spoly_eval(f, a).val_or_prec() >= target) return a;
    throw PrecisionExhaustedError("Newton iteration did not reach the target precision");
}

// f = g h with g^(lambda) = gp, h^(lambda) = hp, by quadratic Hensel lifting for the lambda-weighted valuation.
inline std::pair<SPoly, SPoly> hensel_lift_factorization(const SPoly& f, const Rational& lambda, const GradedPoly& gp,
                                                         const GradedPoly& hp, std::int64_t target) {
    auto Fp = f[0].field_ptr();
    const FiniteField& F = *Fp;
    GradedPoly fl = homogenize(f, lambda);
    if (gp.lambda != lambda || hp.lambda != lambda) throw InputError("factor grading differs from lambda");
    if (!(graded_mul(F, gp, hp) == fl)) throw InputError("g' h' differs from f^(lambda)");
    auto [gc, s, t] = pxgcd(F, gp.c, hp.c);
    if (gc.degree() != 0) throw NotCoprimeError("g' and h' are not coprime");
    std::int64_t wp = target;
    for (auto& c : f) wp = std::max(wp, c.prec());
    if (hp.c.degree() == 0) {
        // h' is a unit: h = its lift, g = f h^-1.
        Series hl = lift_graded(Fp, hp, wp)[0];
        SPoly g;
        for (auto& c : f) g.push_back(c / hl);
        return {g, SPoly{hl}};
    }
    // Make h' monic by moving its leading coefficient into g'.
    FiniteField::Elt lc = hp.c.lead();
    std::int64_t lexp = hp.coeff_exponent(static_cast<std::size_t>(hp.c.degree()));
    GradedPoly hm{pscale(F, hp.c, F.inv(lc)), lambda, hp.degree - lexp};
    GradedPoly gm{pscale(F, gp.c, lc), lambda, gp.degree + lexp};
    // Bezout in gr(F)[x]: keep the components of degree -deg(g'), -deg(h').
    FPoly inv0 = FPoly::constant(F.inv(gc.c[0]));
    auto bez = [&](const FPoly& p, const Rational& d) {
        GradedPoly out{pmul(F, p, inv0), lambda, -d};
        std::vector<FiniteField::Elt> keep(out.c.c.size(), 0);
        for (std::size_t i = 0; i < keep.size(); ++i)
            if ((out.degree - lambda * static_cast<std::int64_t>(i)).denominator() == 1) keep[i] = out.c.c[i];
        out.c = FPoly(keep);
        return out;
    };
    // s g' + t h' = 1 with the original g', h'; rescale for gm, hm.
    GradedPoly sg = bez(pscale(F, s, F.inv(lc)), gm.degree), th = bez(pscale(F, t, lc), hm.degree);
    SPoly g = lift_graded(Fp, gm, wp), h = lift_graded(Fp, hm, wp);
    SPoly S = lift_graded(Fp, sg, wp), T = lift_graded(Fp, th, wp);
    h.back() = Series::constant(Fp, 1, wp);
    for (int it = 0; it < 40; ++it) {
        SPoly e = spoly_sub(f, spoly_mul(g, h));
        e.resize(f.size());
        if (weight(e, lambda) >= Rational(target)) return {g, h};
        auto [q, r] = spoly_divmod(spoly_mul(S, e), h);
        SPoly g2 = spoly_add(spoly_add(g, spoly_mul(T, e)), spoly_mul(q, g));
        SPoly h2 = spoly_add(h, r);
        SPoly one{Series::constant(Fp, 1, wp)};
        SPoly b = spoly_sub(spoly_add(spoly_mul(S, g2), spoly_mul(T, h2)), one);
        auto [c, d] = spoly_divmod(spoly_mul(S, b), h2);
        S = spoly_sub(S, d);
        T = spoly_sub(spoly_sub(T, spoly_mul(T, b)), spoly_mul(c, g2));
        g = g2;
        h = h2;
        g.resize(f.size() - hp.c.c.size() + 1, Series::zero(Fp, wp));
        h.resize(hp.c.c.size());
        S.resize(std::max<std::size_t>(1, h.size() - 1), Series::zero(Fp, wp));
        T.resize(std::max<std::size_t>(1, g.size() - 1), Series::zero(Fp, wp));
    }
    SPoly e = spoly_sub(f, spoly_mul(g, h));
    if (weight(e, lambda) >= Rational(target)) return {g, h};
    throw PrecisionExhaustedError("factor lifting did not reach the target precision");
}

// ---------------------------------------------------------------------------
// Towers of simple extensions F = K_0 ⊂ K_1 ⊂ ... with K_k = K_{k-1}[x]/(f_k), f_k monic over F.

struct TElem {
    Series s;                // level 0
    std::vector<TElem> v;    // level >= 1: coordinates in 1, theta, ..., theta^(n-1)
};

class Tower {
public:
    Tower(std::shared_ptr<const FiniteField> F, std::int64_t prec, std::vector<SPoly> steps)
        : F_(std::move(F)), prec_(prec), steps_(std::move(steps)) {
        for (auto& f : steps_) {
            if (f.size() < 2) throw InputError("tower step must have degree >= 1");
            if (f.back().is_zero() || f.back().val_or_prec() != 0 || f.back().lead() != 1)
                throw InputError("tower step polynomials must be monic");
        }
    }

    std::size_t depth() const { return steps_.size(); }
    std::int64_t prec() const { return prec_; }
    const std::shared_ptr<const FiniteField>& field_ptr() const { return F_; }
    const SPoly& step(std::size_t k) const { return steps_[k - 1]; }
    std::size_t step_degree(std::size_t k) const { return steps_[k - 1].size() - 1; }
    std::int64_t degree(std::size_t level) const {
        std::int64_t d = 1;
        for (std::size_t k = 1; k <= level; ++k) d *= static_cast<std::int64_t>(step_degree(k));
        return d;
    }

    TElem from_series(std::size_t level, const Series& s) const {
        if (level == 0) return TElem{s, {}};
        return embed(level, from_series(level - 1, s));
    }
    TElem embed(std::size_t level, const TElem& a) const {
        TElem r;
        r.v.assign(step_degree(level), zero(level - 1));
        r.v[0] = a;
        return r;
    }
    TElem zero(std::size_t level) const { return from_series(level, Series::zero(F_, prec_)); }
    TElem one(std::size_t level) const { return from_series(level, Series::constant(F_, 1, prec_)); }
    TElem generator(std::size_t level) const {
        TElem r = zero(level);
        if (step_degree(level) == 1) {
            r.v[0] = from_series(level - 1, -steps_[level - 1][0]);
        } else {
            r.v[1] = one(level - 1);
        }
        return r;
    }

    TElem add(std::size_t level, const TElem& a, const TElem& b) const {
        if (level == 0) return TElem{a.s + b.s, {}};
        TElem r;
        for (std::size_t i = 0; i < a.v.size(); ++i) r.v.push_back(add(level - 1, a.v[i], b.v[i]));
        return r;
    }
    TElem neg(std::size_t level, const TElem& a) const {
        if (level == 0) return TElem{-a.s, {}};
        TElem r;
        for (auto& x : a.v) r.v.push_back(neg(level - 1, x));
        return r;
    }
    TElem sub(std::size_t level, const TElem& a, const TElem& b) const { return add(level, a, neg(level, b)); }

    TElem mul(std::size_t level, const TElem& a, const TElem& b) const {
        if (level == 0) return TElem{a.s * b.s, {}};
        const std::size_t n = step_degree(level);
        std::vector<TElem> prod(2 * n - 1, zero(level - 1));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                prod[i + j] = add(level - 1, prod[i + j], mul(level - 1, a.v[i], b.v[j]));
        const SPoly& f = steps_[level - 1];
        for (std::size_t k = prod.size(); k-- > n;) {
            const TElem c = prod[k];
            for (std::size_t j = 0; j < n; ++j)
                prod[k - n + j] = sub(level - 1, prod[k - n + j], mul(level - 1, c, from_series(level - 1, f[j])));
        }
        prod.resize(n);
        return TElem{{}, prod};
    }

    TElem scale(std::size_t level, const Series& s, const TElem& a) const { return mul(level, from_series(level, s), a); }

    TElem pow(std::size_t level, const TElem& a, std::int64_t k) const {
        if (k < 0) return pow(level, inverse(level, a), -k);
        TElem r = one(level), b = a;
        while (k) {
            if (k & 1) r = mul(level, r, b);
            k >>= 1;
            if (k) b = mul(level, b, b);
        }
        return r;
    }

    bool is_zero(std::size_t level, const TElem& a) const {
        if (level == 0) return a.s.is_zero();
        return std::all_of(a.v.begin(), a.v.end(), [&](const TElem& x) { return is_zero(level - 1, x); });
    }

    // Matrix over level-1 of multiplication by a: column j holds a * theta^j.
    std::vector<std::vector<TElem>> mult_matrix(std::size_t level, const TElem& a) const {
        const std::size_t n = step_degree(level);
        std::vector<std::vector<TElem>> m(n, std::vector<TElem>(n));
        TElem col = a, th = generator(level);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) m[i][j] = col.v[i];
            if (j + 1 < n) col = mul(level, col, th);
        }
        return m;
    }

    TElem norm_down(std::size_t level, const TElem& a) const { return det(level - 1, mult_matrix(level, a)); }

    Series norm_to_base(std::size_t level, const TElem& a) const {
        TElem x = a;
        for (std::size_t l = level; l > 0; --l) x = norm_down(l, x);
        return x.s;
    }

    std::optional<Rational> valuation(std::size_t level, const TElem& a) const {
        if (level == 0) {
            auto v = a.s.valuation();
            if (!v) return std::nullopt;
            return Rational(*v);
        }
        if (is_zero(level, a)) return std::nullopt;
        Series n = norm_to_base(level, a);
        auto v = n.valuation();
        if (!v) return std::nullopt;
        return Rational(*v, degree(level));
    }

    TElem inverse(std::size_t level, const TElem& a) const {
        if (level == 0) return TElem{a.s.inverse(), {}};
        auto m = mult_matrix(level, a);
        std::vector<TElem> rhs(step_degree(level), zero(level - 1));
        rhs[0] = one(level - 1);
        return TElem{{}, solve(level - 1, m, rhs)};
    }

    // Determinant over the given level, pivoting on minimal valuation.
    TElem det(std::size_t level, std::vector<std::vector<TElem>> m) const {
        const std::size_t n = m.size();
        TElem d = one(level);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = pivot(level, m, k);
            if (piv == n) return zero(level);
            if (piv != k) {
                std::swap(m[piv], m[k]);
                d = neg(level, d);
            }
            d = mul(level, d, m[k][k]);
            TElem inv = inverse(level, m[k][k]);
            for (std::size_t i = k + 1; i < n; ++i) {
                TElem f = mul(level, m[i][k], inv);
                for (std::size_t j = k; j < n; ++j) m[i][j] = sub(level, m[i][j], mul(level, f, m[k][j]));
            }
        }
        return d;
    }

    std::vector<TElem> solve(std::size_t level, std::vector<std::vector<TElem>> m, std::vector<TElem> b) const {
        const std::size_t n = m.size();
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = pivot(level, m, k);
            if (piv == n) throw PrecisionExhaustedError("singular system at working precision");
            std::swap(m[piv], m[k]);
            std::swap(b[piv], b[k]);
            TElem inv = inverse(level, m[k][k]);
            for (std::size_t i = 0; i < n; ++i) {
                if (i == k) continue;
                TElem f = mul(level, m[i][k], inv);
                for (std::size_t j = k; j < n; ++j) m[i][j] = sub(level, m[i][j], mul(level, f, m[k][j]));
                b[i] = sub(level, b[i], mul(level, f, b[k]));
            }
        }
        for (std::size_t k = 0; k < n; ++k) b[k] = mul(level, b[k], inverse(level, m[k][k]));
        return b;
    }

    // Value of p(x) at a in level, p with level coefficients.
    TElem eval(std::size_t level, const std::vector<TElem>& p, const TElem& a) const {
        TElem acc = p.back();
        for (std::size_t i = p.size() - 1; i-- > 0;) acc = add(level, mul(level, acc, a), p[i]);
        return acc;
    }

    // Smallest absolute precision among all series coordinates.
    std::int64_t min_prec(std::size_t level, const TElem& a) const {
        if (level == 0) return a.s.prec();
        std::int64_t p = std::numeric_limits<std::int64_t>::max();
        for (auto& x : a.v) p = std::min(p, min_prec(level - 1, x));
        return p;
    }

private:
    std::size_t pivot(std::size_t level, const std::vector<std::vector<TElem>>& m, std::size_t k) const {
        std::size_t best = m.size();
        std::optional<Rational> bv;
        for (std::size_t i = k; i < m.size(); ++i) {
            auto v = valuation(level, m[i][k]);
            if (v && (!bv || *v < *bv)) {
                bv = v;
                best = i;
            }
        }
        return best;
    }

    std::shared_ptr<const FiniteField> F_;
    std::int64_t prec_;
    std::vector<SPoly> steps_;
};

// Tame step: lambda-polynomial with v(disc f) = n(n-1) lambda and lambda's denominator prime to p.
struct TamenessReport {
    Rational lambda;
    std::int64_t disc_valuation = 0;
};

inline Series discriminant(const SPoly& f) {
    // Res(f, f') over the series field via a one-step tower: N(f'(theta)) = (-1)^(n(n-1)/2) disc for monic f.
    auto Fp = f[0].field_ptr();
    std::int64_t prec = f[0].prec();
    for (auto& c : f) prec = std::min(prec, c.prec());
    Tower t(Fp, prec, {f});
    SPoly df = spoly_deriv(f);
    std::vector<TElem> dp;
    for (auto& c : df) dp.push_back(t.from_series(1, c));
    Series n = t.norm_to_base(1, t.eval(1, dp, t.generator(1)));
    const std::int64_t deg = static_cast<std::int64_t>(f.size()) - 1;
    return (deg * (deg - 1) / 2) % 2 ? -n : n;
}

inline TamenessReport check_tame(const SPoly& f) {
    TamenessReport r;
    if (f.front().is_zero()) throw NotTameError("step polynomial has zero constant term");
    r.lambda = forced_lambda(f);
    if (!is_lambda_polynomial(f, r.lambda)) throw NotTameError("step polynomial is not a lambda-polynomial");
    const std::int64_t p = static_cast<std::int64_t>(f[0].field().characteristic());
    if (r.lambda.denominator() % p == 0) throw NotTameError("ramification divisible by the residue characteristic");
    const std::int64_t n = static_cast<std::int64_t>(f.size()) - 1;
    Series d = discriminant(f);
    Rational want = Rational(n * (n - 1)) * r.lambda;
    if (d.is_zero() || Rational(*d.valuation()) != want)
        throw NotTameError("residue polynomial is inseparable (v(disc) = " +
                           (d.is_zero() ? std::string("inf") : std::to_string(*d.valuation())) + ", expected " +
                           rat_str(want) + ")");
    r.disc_valuation = *d.valuation();
    return r;
}

struct NormPreimage {
    TElem s;                 // element of the top level
    Series norm;             // N(s) down to F
    std::int64_t agreement;  // certified v(N(s) - t)
};

// N(s) = t for t in 1 + M_F, following the constructive proof one step at a time.
inline NormPreimage norm_one_unit_preimage(const std::vector<SPoly>& steps, const Series& t, std::int64_t target,
                                           std::int64_t guard = 24) {
    auto Fp = t.field_ptr();
    Series one = Series::constant(Fp, 1, t.prec());
    if (!((t - one).val_or_prec() >= 1) || t.is_zero()) throw InputError("target must lie in 1 + M_F");
    const std::int64_t wp = target + guard;
    std::vector<SPoly> work;
    for (auto& f : steps) {
        check_tame(f);
        SPoly g;
        for (auto& c : f) g.push_back(c.with_prec(wp));
        work.push_back(g);
    }
    Tower tw(Fp, wp, work);
    // s_k lives at level k and has norm s_{k-1}; s_0 = t.
    TElem s = tw.from_series(0, t.with_prec(wp));
    for (std::size_t k = 1; k <= tw.depth(); ++k) {
        const SPoly& f = tw.step(k);
        const std::size_t n = f.size() - 1;
        std::vector<TElem> h;
        for (std::size_t i = 0; i <= n; ++i) h.push_back(tw.from_series(k, f[i]));
        h[0] = tw.mul(k, tw.embed(k, s), h[0]);
        std::vector<TElem> dh;
        for (std::size_t i = 1; i <= n; ++i)
            dh.push_back(tw.scale(k, Series::constant(Fp, Fp->from_int(static_cast<std::int64_t>(i)), wp), h[i]));
        TElem a = tw.generator(k), d = a;
        for (int it = 0; it < 12; ++it) {
            TElem hd = tw.eval(k, h, d);
            if (tw.is_zero(k, hd)) break;
            d = tw.sub(k, d, tw.mul(k, hd, tw.inverse(k, tw.eval(k, dh, d))));
        }
        s = tw.mul(k, d, tw.inverse(k, a));
    }
    NormPreimage out;
    out.s = s;
    out.norm = tw.norm_to_base(tw.depth(), s);
    out.agreement = (out.norm - t.with_prec(wp)).val_or_prec();
    if (out.agreement < target)
        throw PrecisionExhaustedError("norm agrees with the target only to t^" + std::to_string(out.agreement));
    return out;
}

// Leading-term comparison for one step K = F[x]/(f): lead(N(a)) against the graded norm of a~.
struct GradedNormCheck {
    bool equal = false;
    FiniteField::Elt lhs_coeff = 0, rhs_coeff = 0;
    std::int64_t lhs_val = 0;
    Rational rhs_deg;
};

// Resultant over a finite field by Sylvester determinant.
inline FiniteField::Elt resultant(const FiniteField& F, const FPoly& a, const FPoly& b) {
    const int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return 0;
    const std::size_t N = static_cast<std::size_t>(m + n);
    if (N == 0) return 1;
    std::vector<std::vector<FiniteField::Elt>> s(N, std::vector<FiniteField::Elt>(N, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = a.c[static_cast<std::size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = b.c[static_cast<std::size_t>(n - j)];
    FiniteField::Elt d = 1;
    for (std::size_t k = 0; k < N; ++k) {
        std::size_t p = k;
        while (p < N && s[p][k] == 0) ++p;
        if (p == N) return 0;
        if (p != k) {
            std::swap(s[p], s[k]);
            d = F.neg(d);
        }
        d = F.mul(d, s[k][k]);
        FiniteField::Elt inv = F.inv(s[k][k]);
        for (std::size_t i = k + 1; i < N; ++i) {
            if (s[i][k] == 0) continue;
            FiniteField::Elt f = F.mul(s[i][k], inv);
            for (std::size_t j = k; j < N; ++j) s[i][j] = F.sub(s[i][j], F.mul(f, s[k][j]));
        }
    }
    return d;
}

inline GradedNormCheck graded_norm_check(const SPoly& f, const TElem& a) {
    auto Fp = f[0].field_ptr();
    const FiniteField& F = *Fp;
    Rational lambda = forced_lambda(f);
    GradedPoly fl = homogenize(f, lambda);
    std::int64_t prec = f[0].prec();
    Tower tw(Fp, prec, {f});
    const std::size_t n = f.size() - 1;
    // a~ = sum over the coordinates attaining min v(a_i) + i lambda.
    std::optional<Rational> va;
    for (std::size_t i = 0; i < n; ++i)
        if (!a.v[i].s.is_zero()) {
            Rational w = Rational(*a.v[i].s.valuation()) + lambda * static_cast<std::int64_t>(i);
            if (!va || w < *va) va = w;
        }
    if (!va) throw ZeroElementError("graded norm of zero");
    std::vector<FiniteField::Elt> at(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (!a.v[i].s.is_zero() &&
            Rational(*a.v[i].s.valuation()) + lambda * static_cast<std::int64_t>(i) == *va)
            at[i] = a.v[i].s.lead();
    FPoly A(at);
    // N(a~) = Res(f~, A) / lc(f~)^deg A, homogeneous of degree n v(a~).
    GradedNormCheck r;
    r.rhs_coeff = F.div(resultant(F, fl.c, A), F.pow(fl.c.lead(), A.degree()));
    r.rhs_deg = *va * static_cast<std::int64_t>(n);
    Series N = tw.norm_to_base(1, a);
    if (N.is_zero()) throw PrecisionExhaustedError("norm vanished at working precision");
    r.lhs_coeff = N.lead();
    r.lhs_val = *N.valuation();
    r.equal = r.rhs_deg == Rational(r.lhs_val) && r.lhs_coeff == r.rhs_coeff;
    return r;
}

}  // namespace gdiv
