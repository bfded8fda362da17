#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gdiv/abgroup.hpp"
#include "gdiv/errors.hpp"
#include "gdiv/gf.hpp"
#include "gdiv/gmodule.hpp"

namespace gdiv {

using Degree = std::vector<std::int64_t>;
using Elt = FiniteField::Elt;

inline std::vector<BigInt> to_big(const Degree& d) { return {d.begin(), d.end()}; }

inline Degree degree_add(const Degree& a, const Degree& b) {
    Degree c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}
inline Degree degree_scale(const Degree& a, std::int64_t k) {
    Degree c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * k;
    return c;
}
inline bool degree_is_zero(const Degree& a) {
    return std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Descriptors

enum class Classification { Unramified, TotallyRamified, Semiramified, Other };

inline std::string to_string(Classification c) {
    switch (c) {
        case Classification::Unramified: return "Unramified";
        case Classification::TotallyRamified: return "TotallyRamified";
        case Classification::Semiramified: return "Semiramified";
        default: return "Other";
    }
}

// E0 with [E0:T0] = degree, [Z(E0):T0] = center_degree, T0 = GF(q).
struct FiniteFieldResidue {
    std::uint64_t q = 0;
    std::int64_t degree = 1;
    std::int64_t center_degree = 1;
};

// E0* supplied as a G-module; sk1 is an optional asserted SK(E0).
struct AbstractResidue {
    GModule module;
    std::int64_t degree = 1;
    std::int64_t center_degree = 1;
    std::optional<FiniteAbelianGroup> sk1;
    std::optional<std::uint64_t> q;  // |T0| when T0 is finite
};

struct GradedDivAlgDesc {
    std::size_t gamma_rank = 0;
    IntMatrix gamma_T;  // rows: basis of Gamma_T inside Z^gamma_rank
    std::variant<FiniteFieldResidue, AbstractResidue> residue;
    std::int64_t index = 1;
    std::optional<IntMatrix> theta_kernel;  // rows: generators of the preimage of ker(theta') in Z^n
    std::optional<WedgeData> u;
    bool totally_ramified_maximal_subfield = false;

    IntMatrix gamma_T_matrix() const { return gamma_T.rows() ? gamma_T : IntMatrix(0, gamma_rank); }

    FiniteAbelianGroup grade_quotient() const {
        return subquotient(gamma_rank, IntMatrix::identity(gamma_rank), gamma_T_matrix());
    }

    BigInt grade_index() const {
        auto o = grade_quotient().order();
        if (!o) throw InvalidStructureError("Gamma_T must have finite index in Gamma_E");
        return *o;
    }

    std::int64_t residue_degree() const {
        return std::visit([](const auto& r) { return r.degree; }, residue);
    }
    std::int64_t residue_center_degree() const {
        return std::visit([](const auto& r) { return r.center_degree; }, residue);
    }

    void validate() const {
        if (gamma_T.rows() && gamma_T.cols() != gamma_rank)
            throw InvalidStructureError("gamma_T rows must have gamma_rank entries");
        BigInt idx = grade_index();
        std::int64_t deg = residue_degree(), cdeg = residue_center_degree();
        if (deg < 1 || cdeg < 1 || deg % cdeg != 0)
            throw InvalidStructureError("center_degree must divide the residue degree");
        if (index < 1) throw InvalidStructureError("index must be positive");
        if (BigInt(index) * index != BigInt(deg) * idx)
            throw InvalidStructureError("Fundamental Equality fails: index^2 = " + std::to_string(index * index) +
                                        " but [E0:T0]*|Gamma_E:Gamma_T| = " +
                                        (BigInt(deg) * idx).str());
        if (const auto* ff = std::get_if<FiniteFieldResidue>(&residue)) {
            if (ff->q < 2 || !prime_power(ff->q).first) throw InvalidStructureError("q must be a prime power");
        } else {
            const auto& ar = std::get<AbstractResidue>(residue);
            if (classify_unchecked() == Classification::Semiramified &&
                BigInt(ar.module.group().size()) != idx)
                throw InvalidStructureError("residue module group must have order |Gamma_E:Gamma_T|");
        }
        if (theta_kernel) {
            if (theta_kernel->cols() != gamma_rank) throw InvalidStructureError("theta_kernel rows have wrong length");
            RowLattice k(*theta_kernel, gamma_rank);
            IntMatrix g = gamma_T_matrix();
            for (std::size_t i = 0; i < g.rows(); ++i)
                if (!k.contains(g.row(i))) throw InvalidStructureError("theta_kernel must contain Gamma_T");
        }
    }

    Classification classify_unchecked() const {
        BigInt idx = grade_index();
        std::int64_t deg = residue_degree(), cdeg = residue_center_degree();
        if (idx == 1) return Classification::Unramified;
        if (deg == 1) return Classification::TotallyRamified;
        if (cdeg == deg && BigInt(deg) == idx && BigInt(index) == idx) return Classification::Semiramified;
        return Classification::Other;
    }
};

inline Classification classify(const GradedDivAlgDesc& d) {
    d.validate();
    return d.classify_unchecked();
}

// ---------------------------------------------------------------------------
// Elements

struct Monomial {
    Elt c = 0;
    Degree deg;
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.c == b.c && a.deg == b.deg; }
};

class GradedElement {
public:
    GradedElement() = default;
    explicit GradedElement(std::size_t rank) : rank_(rank) {}
    static GradedElement monomial(Elt c, Degree d) {
        GradedElement e(d.size());
        if (c != 0) e.terms_.emplace(std::move(d), c);
        return e;
    }
    static GradedElement from(const Monomial& m) { return monomial(m.c, m.deg); }

    std::size_t rank() const { return rank_; }
    const std::map<Degree, Elt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const { return terms_.size() <= 1; }
    Elt coefficient(const Degree& d) const {
        auto it = terms_.find(d);
        return it == terms_.end() ? 0 : it->second;
    }
    Monomial as_monomial() const {
        if (terms_.empty()) throw ZeroElementError("element is zero");
        if (terms_.size() != 1) throw InputError("element is not homogeneous");
        return {terms_.begin()->second, terms_.begin()->first};
    }
    void add_term(const FiniteField& F, const Degree& d, Elt c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(d, c);
        if (!fresh) {
            it->second = F.add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }
    friend bool operator==(const GradedElement& a, const GradedElement& b) { return a.terms_ == b.terms_; }

private:
    std::size_t rank_ = 0;
    std::map<Degree, Elt> terms_;
};

using DegreeOrder = std::function<bool(const Degree&, const Degree&)>;

// Minimal-degree homogeneous component under the given total order (lexicographic by default).
inline GradedElement leading_term(const GradedElement& s, const DegreeOrder& less = {}) {
    if (s.is_zero()) throw ZeroElementError("leading term of zero");
    auto best = s.terms().begin();
    if (less)
        for (auto it = s.terms().begin(); it != s.terms().end(); ++it)
            if (less(it->first, best->first)) best = it;
    return GradedElement::monomial(best->second, best->first);
}

inline Degree valuation(const GradedElement& s, const DegreeOrder& less = {}) {
    return leading_term(s, less).as_monomial().deg;
}

// Polynomial in x with coefficients in the center T; coeffs[i] multiplies x^i.
struct CentralPoly {
    std::vector<GradedElement> coeffs;
    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

struct MinimalPolynomial {
    CentralPoly h;
    std::int64_t k0 = 1;  // order of deg(a) modulo Gamma_T
    Monomial t;           // central element of degree k0 * deg(a)
    Elt b = 0;            // a^k0 * t^-1, in E0
    FPoly p;              // minimal polynomial of b over T0
};

// ---------------------------------------------------------------------------
// Monomial graded rings

// Raw input data: field elements as discrete logs w.r.t. the generator of GF(q^m).
struct MonomialRingData {
    std::uint64_t q = 0;
    std::int64_t m = 1;
    std::vector<std::int64_t> sigma;
    std::vector<std::int64_t> r;
    std::vector<std::int64_t> b;
    std::vector<std::vector<std::int64_t>> u;
};

class MonomialGradedRing {
public:
    static constexpr std::int64_t kMaxBox = 1000000;

    explicit MonomialGradedRing(const MonomialRingData& data) : data_(data) {
        auto [p, a] = prime_power(data.q);
        if (data.m < 1) throw InvalidStructureError("m must be >= 1");
        p_ = p;
        a_ = a;
        n_ = data.sigma.size();
        if (data.r.size() != n_ || data.b.size() != n_ || data.u.size() != n_)
            throw InvalidStructureError("sigma, r, b, u must all have n entries");
        std::uint64_t qm = 1;
        for (std::int64_t i = 0; i < data.m; ++i) {
            if (qm > FiniteField::kMaxSize / data.q) throw BudgetExceededError("q^m too large");
            qm *= data.q;
        }
        F_ = FiniteField::get(qm);
        N_ = static_cast<std::int64_t>(F_->order());
        for (std::size_t i = 0; i < n_; ++i) {
            if (data.r[i] < 1) throw InvalidStructureError("r_i must be >= 1");
            if (data.u[i].size() != n_) throw InvalidStructureError("u must be n x n");
            b_.push_back(F_->exp(data.b[i]));
            std::vector<Elt> row;
            for (auto l : data.u[i]) row.push_back(F_->exp(l));
            u_.push_back(row);
        }
        validate();
        compute_center();
    }

    const MonomialRingData& data() const { return data_; }
    const FiniteField& field() const { return *F_; }
    std::shared_ptr<const FiniteField> field_ptr() const { return F_; }
    std::size_t rank() const { return n_; }
    std::uint64_t q() const { return data_.q; }
    std::int64_t m() const { return data_.m; }
    // T0 = GF(q^t0_degree).
    std::int64_t t0_degree() const { return d_; }
    std::uint64_t t0_size() const { return ipow(data_.q, static_cast<unsigned>(d_)); }
    const IntMatrix& gamma_T() const { return gammaT_; }
    const BigInt& grade_index() const { return grade_index_; }
    FiniteAbelianGroup grade_quotient() const { return grade_quotient_; }
    std::int64_t index() const { return index_; }
    Elt u(std::size_t i, std::size_t j) const { return u_[i][j]; }
    Elt b(std::size_t i) const { return b_[i]; }

    Degree zero_degree() const { return Degree(n_, 0); }
    Degree unit_degree(std::size_t i, std::int64_t e = 1) const {
        Degree d(n_, 0);
        d[i] = e;
        return d;
    }
    Monomial one() const { return {1, zero_degree()}; }
    Monomial z(std::size_t i, std::int64_t e = 1) const { return {1, unit_degree(i, e)}; }
    Monomial scalar(Elt c) const { return {c, zero_degree()}; }

    // sigma^alpha(c) = c^(q^(sum s_i alpha_i)).
    Elt sigma_pow(Elt c, const Degree& alpha) const {
        std::int64_t e = 0;
        for (std::size_t i = 0; i < n_; ++i) e += data_.sigma[i] * alpha[i];
        return F_->frob(c, static_cast<std::int64_t>(a_) * mod_floor(e, data_.m));
    }
    Elt sigma_gen(Elt c, std::size_t k, std::int64_t e) const {
        return F_->frob(c, static_cast<std::int64_t>(a_) * mod_floor(data_.sigma[k] * e, data_.m));
    }

    Monomial mono_mul(const Monomial& x, const Monomial& y) const {
        check_rank(x.deg);
        check_rank(y.deg);
        if (x.c == 0 || y.c == 0) return {0, degree_add(x.deg, y.deg)};
        Monomial r{F_->mul(x.c, sigma_pow(y.c, x.deg)), x.deg};
        for (std::size_t i = 0; i < n_; ++i) {
            std::int64_t e = y.deg[i];
            int sgn = e >= 0 ? 1 : -1;
            for (std::int64_t t = 0; t < (e >= 0 ? e : -e); ++t) right_mul_gen(r, i, sgn);
        }
        return r;
    }

    Monomial mono_inv(const Monomial& x) const {
        if (x.c == 0) throw ZeroElementError("inverse of zero");
        Degree neg = degree_scale(x.deg, -1);
        Monomial w = mono_mul({1, x.deg}, {1, neg});  // (omega, 0)
        Elt c = F_->mul(F_->inv(w.c), F_->inv(x.c));
        return {sigma_pow(c, neg), neg};
    }

    Monomial mono_pow(const Monomial& x, std::int64_t k) const {
        if (k < 0) return mono_pow(mono_inv(x), -k);
        Monomial r = one(), base = x;
        while (k) {
            if (k & 1) r = mono_mul(r, base);
            k >>= 1;
            if (k) base = mono_mul(base, base);
        }
        return r;
    }

    Monomial conjugate(const Monomial& by, const Monomial& x) const { return mono_mul(mono_mul(by, x), mono_inv(by)); }
    Monomial commutator(const Monomial& x, const Monomial& y) const {
        return mono_mul(mono_mul(x, y), mono_inv(mono_mul(y, x)));
    }

    bool is_central(const Monomial& x) const {
        if (x.c == 0) return true;
        Monomial g = scalar(F_->generator());
        if (!(mono_mul(g, x) == mono_mul(x, g))) return false;
        for (std::size_t j = 0; j < n_; ++j)
            if (!(mono_mul(z(j), x) == mono_mul(x, z(j)))) return false;
        return true;
    }

    GradedElement add(const GradedElement& x, const GradedElement& y) const {
        GradedElement r = x.is_zero() && x.rank() != n_ ? GradedElement(n_) : x;
        for (auto& [d, c] : y.terms()) r.add_term(*F_, d, c);
        return r;
    }
    GradedElement neg(const GradedElement& x) const {
        GradedElement r(n_);
        for (auto& [d, c] : x.terms()) r.add_term(*F_, d, F_->neg(c));
        return r;
    }
    GradedElement sub(const GradedElement& x, const GradedElement& y) const { return add(x, neg(y)); }

    GradedElement multiply(const GradedElement& x, const GradedElement& y) const {
        GradedElement r(n_);
        for (auto& [dx, cx] : x.terms())
            for (auto& [dy, cy] : y.terms()) {
                Monomial p = mono_mul({cx, dx}, {cy, dy});
                r.add_term(*F_, p.deg, p.c);
            }
        return r;
    }

    GradedElement inverse(const GradedElement& x) const { return GradedElement::from(mono_inv(x.as_monomial())); }

    // Coefficient c making c*z^alpha central, if alpha lies in Gamma_T.
    std::optional<Elt> central_coefficient(const Degree& alpha) const {
        check_rank(alpha);
        std::int64_t e = 0;
        for (std::size_t i = 0; i < n_; ++i) e += data_.sigma[i] * alpha[i];
        if (mod_floor(e, data_.m) != 0) return std::nullopt;
        // x (q^{s_j} - 1) = -log(kappa_j) mod N, where z_j z^alpha z_j^-1 = kappa_j z^alpha.
        std::int64_t x0 = 0, M0 = 1;
        const std::int64_t N = N_;
        for (std::size_t j = 0; j < n_; ++j) {
            Monomial k = conjugate(z(j), {1, alpha});
            std::int64_t coef = mod_floor(static_cast<std::int64_t>(powmod_u64(
                                              data_.q, static_cast<std::uint64_t>(mod_floor(data_.sigma[j], data_.m)),
                                              static_cast<std::uint64_t>(N))) - 1,
                                          N);
            std::int64_t rhs = mod_floor(-F_->log(k.c), N);
            // coef * (x0 + M0 y) = rhs mod N
            std::int64_t A = static_cast<std::int64_t>((static_cast<__int128>(coef) * M0) % N);
            std::int64_t B = mod_floor(rhs - static_cast<std::int64_t>((static_cast<__int128>(coef) * x0) % N), N);
            std::int64_t g = std::gcd(A, N);
            if (B % g != 0) return std::nullopt;
            std::int64_t Ng = N / g;
            std::int64_t y0 = 0;
            if (Ng > 1) {
                std::int64_t inv = modinv(A / g % Ng, Ng);
                y0 = static_cast<std::int64_t>((static_cast<__int128>(B / g) * inv) % Ng);
            }
            x0 = mod_floor(x0 + M0 * y0, N);
            M0 = std::gcd(M0 * Ng, N);
            x0 %= M0;
        }
        return F_->exp(x0);
    }

    bool in_gamma_T(const Degree& alpha) const { return RowLattice(gammaT_, n_).contains(to_big(alpha)); }

    Monomial central_element(const Degree& alpha) const {
        auto c = central_coefficient(alpha);
        if (!c) throw InputError("degree is not in Gamma_T");
        return {*c, alpha};
    }

    MinimalPolynomial minimal_polynomial(const Monomial& a) const {
        if (a.c == 0) throw ZeroElementError("minimal polynomial of zero");
        check_rank(a.deg);
        MinimalPolynomial mp;
        std::int64_t k0 = 1;
        const std::int64_t bound = static_cast<std::int64_t>(grade_quotient_.exponent());
        while (!in_gamma_T(degree_scale(a.deg, k0))) {
            if (++k0 > bound) throw InvalidStructureError("degree order exceeds the exponent of Gamma_E/Gamma_T");
        }
        mp.k0 = k0;
        mp.t = central_element(degree_scale(a.deg, k0));
        Monomial bm = mono_mul(mono_pow(a, k0), mono_inv(mp.t));
        mp.b = bm.c;
        mp.p = subfield_minpoly(*F_, mp.b, static_cast<unsigned>(a_ * d_));
        const std::size_t D = static_cast<std::size_t>(mp.p.degree());
        mp.h.coeffs.assign(D * static_cast<std::size_t>(k0) + 1, GradedElement(n_));
        for (std::size_t j = 0; j <= D; ++j) {
            Monomial tp = mono_pow(mp.t, static_cast<std::int64_t>(D - j));
            mp.h.coeffs[j * static_cast<std::size_t>(k0)] =
                GradedElement::monomial(F_->mul(mp.p.coeff(j), tp.c), tp.deg);
        }
        return mp;
    }

    GradedElement eval(const CentralPoly& h, const Monomial& a) const {
        GradedElement acc(n_);
        Monomial pw = one();
        for (std::size_t i = 0; i < h.coeffs.size(); ++i) {
            if (i) pw = mono_mul(pw, a);
            acc = add(acc, multiply(h.coeffs[i], GradedElement::from(pw)));
        }
        return acc;
    }

    Monomial reduced_norm(const Monomial& a) const {
        auto mp = minimal_polynomial(a);
        const std::int64_t deg = static_cast<std::int64_t>(mp.h.degree());
        if (index_ % deg != 0) throw InvalidStructureError("minimal polynomial degree does not divide the index");
        Monomial h0 = mp.h.coeffs[0].as_monomial();
        if (deg % 2 == 1) h0.c = F_->neg(h0.c);
        return mono_pow(h0, index_ / deg);
    }

    // Kernel of theta: Gamma_E -> Gal(M/T0), alpha -> sigma^alpha.
    IntMatrix theta_kernel() const {
        IntMatrix s(n_ + 1, 1);
        for (std::size_t i = 0; i < n_; ++i) s(i, 0) = data_.sigma[i];
        s(n_, 0) = data_.m;
        IntMatrix lk = left_kernel(s);
        IntMatrix out(0, n_);
        for (std::size_t i = 0; i < lk.rows(); ++i) {
            auto r = lk.row(i);
            r.resize(n_);
            out.append_row(r);
        }
        return n_ ? hermite_normal_form(out) : out;
    }

    GradedDivAlgDesc descriptor() const {
        GradedDivAlgDesc d;
        d.gamma_rank = n_;
        d.gamma_T = gammaT_;
        std::int64_t deg = data_.m / d_;
        d.residue = FiniteFieldResidue{t0_size(), deg, deg};
        d.index = index_;
        d.theta_kernel = theta_kernel();
        return d;
    }

    // Every element of E0* = M*.
    std::vector<Elt> residue_units() const {
        std::vector<Elt> v;
        for (std::int64_t k = 0; k < N_; ++k) v.push_back(F_->exp(k));
        return v;
    }

private:
    static std::int64_t modinv(std::int64_t a, std::int64_t m) {
        std::int64_t g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
        while (a1) {
            std::int64_t qq = g / a1;
            std::tie(g, a1) = std::make_pair(a1, g - qq * a1);
            std::tie(x, x1) = std::make_pair(x1, x - qq * x1);
        }
        return mod_floor(x, m);
    }

    void check_rank(const Degree& d) const {
        if (d.size() != n_) throw InputError("degree vector has wrong length");
    }

    // Coefficient w with z_k^g z_i^sgn z_k^-g = w z_i^sgn.
    Elt conj_coeff(std::size_t k, std::int64_t g, std::size_t i, int sgn) const {
        Elt w = 1;
        if (g >= 0) {
            for (std::int64_t t = 0; t < g; ++t) w = F_->mul(sigma_gen(w, k, 1), u_[k][i]);
        } else {
            Elt uinv = sigma_gen(F_->inv(u_[k][i]), k, -1);
            for (std::int64_t t = 0; t < -g; ++t) w = F_->mul(sigma_gen(w, k, -1), uinv);
        }
        if (sgn < 0) w = sigma_gen(F_->inv(w), i, -1);
        return w;
    }

    void right_mul_gen(Monomial& x, std::size_t i, int sgn) const {
        Elt W = 1;
        for (std::size_t k = n_; k-- > i + 1;) {
            if (x.deg[k] == 0) continue;
            W = F_->mul(sigma_gen(W, k, x.deg[k]), conj_coeff(k, x.deg[k], i, sgn));
        }
        if (W != 1) {
            Degree prefix(n_, 0);
            for (std::size_t k = 0; k <= i; ++k) prefix[k] = x.deg[k];
            x.c = F_->mul(x.c, sigma_pow(W, prefix));
        }
        x.deg[i] += sgn;
    }

    void validate() const {
        for (std::size_t i = 0; i < n_; ++i) {
            if (u_[i][i] != 1) throw InvalidStructureError("u_ii must be 1");
            for (std::size_t j = 0; j < n_; ++j)
                if (F_->mul(u_[i][j], u_[j][i]) != 1) throw InvalidStructureError("u_ji must equal u_ij^-1");
            if (mod_floor(data_.sigma[i] * data_.r[i], data_.m) != 0)
                throw InvalidStructureError("sigma_i^r_i must be the identity on M");
        }
        std::vector<Monomial> gens{scalar(F_->generator())};
        for (std::size_t i = 0; i < n_; ++i) {
            gens.push_back(z(i));
            gens.push_back(z(i, -1));
        }
        for (auto& x : gens)
            for (auto& y : gens)
                for (auto& w : gens)
                    if (!(mono_mul(mono_mul(x, y), w) == mono_mul(x, mono_mul(y, w))))
                        throw InvalidStructureError("presentation is not associative on generator triples");
        for (std::size_t i = 0; i < n_; ++i) {
            Monomial xi = mono_mul(scalar(F_->inv(b_[i])), z(i, data_.r[i]));
            if (!is_central(xi)) throw InvalidStructureError("b_i^-1 z_i^r_i is not central");
        }
    }

    void compute_center() {
        d_ = data_.m;
        for (auto s : data_.sigma) d_ = std::gcd(d_, mod_floor(s, data_.m));
        std::int64_t box = 1;
        for (auto r : data_.r) {
            box *= r;
            if (box > kMaxBox) throw BudgetExceededError("Gamma_T search box too large");
        }
        IntMatrix gens(0, n_);
        for (std::size_t i = 0; i < n_; ++i) gens.append_row(to_big(unit_degree(i, data_.r[i])));
        Degree alpha(n_, 0);
        for (std::int64_t idx = 1; idx < box; ++idx) {
            std::int64_t rest = idx;
            for (std::size_t i = 0; i < n_; ++i) {
                alpha[i] = rest % data_.r[i];
                rest /= data_.r[i];
            }
            if (central_coefficient(alpha)) gens.append_row(to_big(alpha));
        }
        gammaT_ = n_ ? hermite_normal_form(gens) : IntMatrix(0, 0);
        grade_quotient_ = subquotient(n_, IntMatrix::identity(n_), gammaT_);
        grade_index_ = *grade_quotient_.order();
        BigInt dim = BigInt(data_.m / d_) * grade_index_;
        BigInt s = boost::multiprecision::sqrt(dim);
        if (s * s != dim) throw InvalidStructureError("[E:T] is not a perfect square");
        index_ = static_cast<std::int64_t>(s);
    }

    MonomialRingData data_;
    std::uint64_t p_ = 0;
    unsigned a_ = 1;
    std::size_t n_ = 0;
    std::shared_ptr<const FiniteField> F_;
    std::int64_t N_ = 1;
    std::vector<Elt> b_;
    std::vector<std::vector<Elt>> u_;
    std::int64_t d_ = 1;
    IntMatrix gammaT_;
    FiniteAbelianGroup grade_quotient_;
    BigInt grade_index_ = 1;
    std::int64_t index_ = 1;
};

}  // namespace gdiv
