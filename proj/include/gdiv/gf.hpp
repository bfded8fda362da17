#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gdiv/errors.hpp"

namespace gdiv {

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1 % m, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> f;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) f.push_back(n);
    return f;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Returns (p, k) with q = p^k, or throws.
inline std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) {
    if (q < 2) throw InputError("field size must be a prime power >= 2");
    std::uint64_t p = prime_factors(q).front();
    unsigned k = 0;
    std::uint64_t x = q;
    while (x % p == 0) {
        x /= p;
        ++k;
    }
    if (x != 1) throw InputError("field size " + std::to_string(q) + " is not a prime power");
    return {p, k};
}

// GF(p^k) with elements encoded as base-p digit strings of polynomials in the
// generator x modulo a primitive polynomial; 0 is zero, 1 is one.
class FiniteField {
public:
    using Elt = std::uint32_t;
    static constexpr std::int64_t kLogZero = -1;

    static constexpr std::uint64_t kMaxSize = std::uint64_t(1) << 24;

    // Cached field with the lexicographically least primitive modulus.
    static std::shared_ptr<const FiniteField> get(std::uint64_t size) {
        static std::mutex mu;
        static std::map<std::uint64_t, std::shared_ptr<const FiniteField>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(size);
        if (it != cache.end()) return it->second;
        auto [p, k] = prime_power(size);
        auto f = std::shared_ptr<const FiniteField>(new FiniteField(p, k, least_primitive(p, k)));
        cache.emplace(size, f);
        return f;
    }

    // Field from a caller-supplied monic primitive modulus (coefficients low to high, leading 1 included).
    static std::shared_ptr<const FiniteField> with_modulus(std::uint64_t p, const std::vector<std::uint32_t>& modulus) {
        if (!is_prime(p)) throw InputError("characteristic must be prime");
        if (modulus.size() < 2 || modulus.back() != 1) throw InputError("modulus must be monic of degree >= 1");
        unsigned k = static_cast<unsigned>(modulus.size() - 1);
        std::vector<std::uint32_t> low(modulus.begin(), modulus.end() - 1);
        for (auto c : low)
            if (c >= p) throw InputError("modulus coefficient out of range");
        if (!is_primitive(p, k, low)) throw InputError("supplied modulus is not primitive");
        if (low == least_primitive(p, k)) return get(ipow(p, k));
        return std::shared_ptr<const FiniteField>(new FiniteField(p, k, low));
    }

    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return k_; }
    std::uint64_t size() const { return q_; }
    std::uint64_t order() const { return q_ - 1; }  // size of the unit group

    // Monic modulus, coefficients low to high including the leading 1.
    std::vector<std::uint32_t> modulus() const {
        std::vector<std::uint32_t> m = low_;
        m.push_back(1);
        return m;
    }

    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    Elt generator() const { return exp_[1 % order()]; }

    Elt add(Elt a, Elt b) const {
        if (p_ == 2) return a ^ b;
        if (!addtab_.empty()) return addtab_[std::size_t(a) * q_ + b];
        Elt r = 0, mul = 1;
        while (a || b) {
            Elt d = static_cast<Elt>((a % p_ + b % p_) % p_);
            r += d * mul;
            mul *= static_cast<Elt>(p_);
            a /= static_cast<Elt>(p_);
            b /= static_cast<Elt>(p_);
        }
        return r;
    }
    Elt neg(Elt a) const {
        if (p_ == 2) return a;
        Elt r = 0, mul = 1;
        while (a) {
            Elt d = static_cast<Elt>((p_ - a % p_) % p_);
            r += d * mul;
            mul *= static_cast<Elt>(p_);
            a /= static_cast<Elt>(p_);
        }
        return r;
    }
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
    Elt mul(Elt a, Elt b) const {
        if (a == 0 || b == 0) return 0;
        std::uint64_t s = std::uint64_t(log_[a]) + log_[b];
        if (s >= order()) s -= order();
        return exp_[s];
    }
    Elt inv(Elt a) const {
        if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
        return exp_[(order() - log_[a]) % order()];
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, std::int64_t e) const {
        if (a == 0) {
            if (e == 0) return 1;
            if (e < 0) throw DivisionByZero("negative power of zero");
            return 0;
        }
        std::int64_t l = mod_floor(static_cast<std::int64_t>(
                                       (static_cast<__int128>(log_[a]) * e) % static_cast<__int128>(order())),
                                   static_cast<std::int64_t>(order()));
        return exp_[static_cast<std::size_t>(l)];
    }
    // Discrete log with respect to generator(); kLogZero for zero.
    std::int64_t log(Elt a) const { return a == 0 ? kLogZero : static_cast<std::int64_t>(log_[a]); }
    Elt exp(std::int64_t e) const { return exp_[static_cast<std::size_t>(mod_floor(e, static_cast<std::int64_t>(order())))]; }
    // a^(p^j), j may be negative (taken modulo the degree).
    Elt frob(Elt a, std::int64_t j) const {
        if (a == 0) return 0;
        std::int64_t jj = mod_floor(j, k_);
        std::uint64_t e = powmod_u64(p_, static_cast<std::uint64_t>(jj), order());
        return exp_[static_cast<std::size_t>((static_cast<unsigned __int128>(log_[a]) * e) % order())];
    }
    Elt from_int(std::int64_t n) const { return static_cast<Elt>(mod_floor(n, static_cast<std::int64_t>(p_))); }
    // Digits of the polynomial representation, low to high.
    std::vector<std::uint32_t> digits(Elt a) const {
        std::vector<std::uint32_t> d(k_);
        for (unsigned i = 0; i < k_; ++i) {
            d[i] = static_cast<std::uint32_t>(a % p_);
            a /= static_cast<Elt>(p_);
        }
        return d;
    }
    Elt from_digits(const std::vector<std::uint32_t>& d) const {
        Elt r = 0, mul = 1;
        for (unsigned i = 0; i < k_; ++i) {
            r += static_cast<Elt>((i < d.size() ? d[i] % p_ : 0) * mul);
            mul *= static_cast<Elt>(p_);
        }
        return r;
    }
    // Membership in the subfield with p^d elements, d | k.
    bool in_subfield(Elt a, unsigned d) const { return frob(a, d) == a; }

    // Generator of the multiplicative group of the subfield of size p^d.
    Elt subfield_generator(unsigned d) const {
        if (d == 0 || k_ % d != 0) throw InputError("not a subfield degree");
        return exp_[order() / (ipow(p_, d) - 1) % order()];
    }

    std::string name() const { return "GF(" + std::to_string(q_) + ")"; }

    std::string modulus_str() const {
        std::ostringstream os;
        auto m = modulus();
        bool first = true;
        for (std::size_t i = m.size(); i-- > 0;) {
            if (m[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0 || m[i] != 1) os << m[i];
            if (i > 0) os << (m[i] != 1 ? "*" : "") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
        }
        return os.str();
    }

private:
    FiniteField(std::uint64_t p, unsigned k, std::vector<std::uint32_t> low)
        : p_(p), k_(k), q_(ipow(p, k)), low_(std::move(low)) {
        if (q_ > kMaxSize) throw BudgetExceededError("field too large for table arithmetic");
        exp_.resize(q_ - 1);
        log_.assign(q_, 0);
        std::vector<std::uint32_t> cur(k_, 0);
        cur[0] = 1;
        for (std::uint64_t i = 0; i < q_ - 1; ++i) {
            Elt code = encode(cur);
            exp_[i] = code;
            log_[code] = static_cast<std::uint32_t>(i);
            times_x(cur);
        }
        if (p_ != 2 && q_ <= 256) {
            addtab_.resize(q_ * q_);
            for (Elt a = 0; a < q_; ++a)
                for (Elt b = 0; b < q_; ++b) {
                    auto da = digits_raw(a), db = digits_raw(b);
                    for (unsigned i = 0; i < k_; ++i) da[i] = static_cast<std::uint32_t>((da[i] + db[i]) % p_);
                    addtab_[std::size_t(a) * q_ + b] = encode(da);
                }
        }
    }

    std::vector<std::uint32_t> digits_raw(Elt a) const {
        std::vector<std::uint32_t> d(k_);
        for (unsigned i = 0; i < k_; ++i) {
            d[i] = static_cast<std::uint32_t>(a % p_);
            a /= static_cast<Elt>(p_);
        }
        return d;
    }

    Elt encode(const std::vector<std::uint32_t>& d) const {
        Elt r = 0, mul = 1;
        for (unsigned i = 0; i < k_; ++i) {
            r += d[i] * mul;
            mul *= static_cast<Elt>(p_);
        }
        return r;
    }

    void times_x(std::vector<std::uint32_t>& cur) const { times_x(cur, p_, low_); }

    static void times_x(std::vector<std::uint32_t>& cur, std::uint64_t p, const std::vector<std::uint32_t>& low) {
        const std::size_t k = low.size();
        std::uint32_t top = cur[k - 1];
        for (std::size_t i = k - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top)
            for (std::size_t i = 0; i < k; ++i)
                cur[i] = static_cast<std::uint32_t>((cur[i] + (p - low[i]) % p * top) % p);
    }

    // Polynomial multiplication modulo x^k + low.
    static std::vector<std::uint32_t> mulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                             std::uint64_t p, const std::vector<std::uint32_t>& low) {
        const std::size_t k = low.size();
        std::vector<std::uint32_t> r(k, 0), acc = a;
        for (std::size_t i = 0; i < k; ++i) {
            if (b[i])
                for (std::size_t j = 0; j < k; ++j) r[j] = static_cast<std::uint32_t>((r[j] + std::uint64_t(acc[j]) * b[i]) % p);
            times_x(acc, p, low);
        }
        return r;
    }

    static bool is_primitive(std::uint64_t p, unsigned k, const std::vector<std::uint32_t>& low) {
        if (low[0] == 0) return false;
        const std::uint64_t n = ipow(p, k) - 1;
        auto power_of_x = [&](std::uint64_t e) {
            std::vector<std::uint32_t> r(k, 0), base(k, 0);
            r[0] = 1;
            if (k == 1)
                base[0] = static_cast<std::uint32_t>((p - low[0]) % p);
            else
                base[1] = 1;
            while (e) {
                if (e & 1) r = mulmod(r, base, p, low);
                base = mulmod(base, base, p, low);
                e >>= 1;
            }
            return r;
        };
        auto is_one = [&](const std::vector<std::uint32_t>& v) {
            if (v[0] != 1) return false;
            for (unsigned i = 1; i < k; ++i)
                if (v[i]) return false;
            return true;
        };
        if (!is_one(power_of_x(n))) return false;
        for (auto f : prime_factors(n))
            if (is_one(power_of_x(n / f))) return false;
        return true;
    }

    static std::vector<std::uint32_t> least_primitive(std::uint64_t p, unsigned k) {
        const std::uint64_t total = ipow(p, k);
        for (std::uint64_t code = 1; code < total; ++code) {
            std::vector<std::uint32_t> low(k);
            std::uint64_t c = code;
            for (unsigned i = 0; i < k; ++i) {
                low[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            if (is_primitive(p, k, low)) return low;
        }
        throw InputError("no primitive polynomial found");
    }

    std::uint64_t p_;
    unsigned k_;
    std::uint64_t q_;
    std::vector<std::uint32_t> low_;
    std::vector<Elt> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elt> addtab_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

// Dense univariate polynomial over a finite field; coefficients low to high, no trailing zeros.
struct FPoly {
    std::vector<FiniteField::Elt> c;

    FPoly() = default;
    explicit FPoly(std::vector<FiniteField::Elt> coeffs) : c(std::move(coeffs)) { trim(); }

    static FPoly constant(FiniteField::Elt a) { return FPoly(std::vector<FiniteField::Elt>{a}); }
    static FPoly monomial(FiniteField::Elt a, std::size_t deg) {
        std::vector<FiniteField::Elt> v(deg + 1, 0);
        v[deg] = a;
        return FPoly(v);
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    FiniteField::Elt lead() const { return c.empty() ? 0 : c.back(); }
    FiniteField::Elt coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }

    friend bool operator==(const FPoly& a, const FPoly& b) { return a.c == b.c; }
    friend bool operator<(const FPoly& a, const FPoly& b) {
        if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
        for (std::size_t i = a.c.size(); i-- > 0;)
            if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
        return false;
    }
};

inline FPoly padd(const FiniteField& F, const FPoly& a, const FPoly& b) {
    std::vector<FiniteField::Elt> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a.coeff(i), b.coeff(i));
    return FPoly(r);
}
inline FPoly pneg(const FiniteField& F, const FPoly& a) {
    FPoly r = a;
    for (auto& x : r.c) x = F.neg(x);
    return r;
}
inline FPoly psub(const FiniteField& F, const FPoly& a, const FPoly& b) { return padd(F, a, pneg(F, b)); }
inline FPoly pscale(const FiniteField& F, const FPoly& a, FiniteField::Elt s) {
    FPoly r = a;
    for (auto& x : r.c) x = F.mul(x, s);
    r.trim();
    return r;
}
inline FPoly pmul(const FiniteField& F, const FPoly& a, const FPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<FiniteField::Elt> r(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
    }
    return FPoly(r);
}
inline std::pair<FPoly, FPoly> pdivmod(const FiniteField& F, const FPoly& a, const FPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.degree() < b.degree()) return {FPoly{}, a};
    std::vector<FiniteField::Elt> r = a.c, q(a.c.size() - b.c.size() + 1, 0);
    FiniteField::Elt li = F.inv(b.lead());
    const std::size_t db = b.c.size() - 1;
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i] == 0) continue;
        FiniteField::Elt f = F.mul(r[i], li);
        std::size_t sh = i - db;
        q[sh] = f;
        for (std::size_t j = 0; j <= db; ++j) r[sh + j] = F.sub(r[sh + j], F.mul(f, b.c[j]));
    }
    return {FPoly(q), FPoly(r)};
}
inline FPoly pmonic(const FiniteField& F, const FPoly& a) {
    if (a.is_zero()) return a;
    return pscale(F, a, F.inv(a.lead()));
}
inline FPoly pgcd(const FiniteField& F, FPoly a, FPoly b) {
    while (!b.is_zero()) {
        FPoly r = pdivmod(F, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(F, a);
}
// Returns (g, s, t) with s*a + t*b = g monic.
inline std::tuple<FPoly, FPoly, FPoly> pxgcd(const FiniteField& F, FPoly a, FPoly b) {
    FPoly s0 = FPoly::constant(1), s1, t0, t1 = FPoly::constant(1);
    while (!b.is_zero()) {
        auto [q, r] = pdivmod(F, a, b);
        FPoly s2 = psub(F, s0, pmul(F, q, s1));
        FPoly t2 = psub(F, t0, pmul(F, q, t1));
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (a.is_zero()) return {a, s0, t0};
    FiniteField::Elt li = F.inv(a.lead());
    return {pscale(F, a, li), pscale(F, s0, li), pscale(F, t0, li)};
}
inline FiniteField::Elt peval(const FiniteField& F, const FPoly& a, FiniteField::Elt x) {
    FiniteField::Elt r = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
    return r;
}
inline FPoly pderiv(const FiniteField& F, const FPoly& a) {
    if (a.c.size() <= 1) return {};
    std::vector<FiniteField::Elt> r(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) r[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i)), a.c[i]);
    return FPoly(r);
}

// Minimal polynomial of a over the subfield of size p^d: product over its Frobenius orbit.
inline FPoly subfield_minpoly(const FiniteField& F, FiniteField::Elt a, unsigned d) {
    FPoly m = FPoly::constant(1);
    FiniteField::Elt cur = a;
    do {
        m = pmul(F, m, FPoly({F.neg(cur), 1}));
        cur = F.frob(cur, d);
    } while (cur != a);
    return m;
}

// All monic polynomials of the given degree with coefficients in the subfield of size p^d,
// enumerated in lexicographic order of (c_{deg-1}, ..., c_0) by discrete-log key.
template <class Fn>
void for_each_monic(const FiniteField& F, unsigned d, int degree, Fn&& fn) {
    std::vector<FiniteField::Elt> elems{0};
    FiniteField::Elt g = F.subfield_generator(d);
    std::uint64_t sub = ipow(F.characteristic(), d) - 1;
    FiniteField::Elt cur = 1;
    for (std::uint64_t i = 0; i < sub; ++i) {
        elems.push_back(cur);
        cur = F.mul(cur, g);
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(degree), 0);
    for (;;) {
        std::vector<FiniteField::Elt> c(static_cast<std::size_t>(degree) + 1);
        for (int i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = elems[idx[static_cast<std::size_t>(i)]];
        c[static_cast<std::size_t>(degree)] = 1;
        if (!fn(FPoly(c))) return;
        int pos = 0;
        while (pos < degree && ++idx[static_cast<std::size_t>(pos)] == elems.size()) idx[static_cast<std::size_t>(pos++)] = 0;
        if (pos == degree) return;
    }
}

}  // namespace gdiv
