#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdiv/abgroup.hpp"
#include "gdiv/errors.hpp"
#include "gdiv/gmodule.hpp"
#include "gdiv/graded.hpp"

namespace gdiv {

enum class SK1Method { UnramifiedTransfer, TotallyRamifiedMu, SemiramifiedSequence, NicelySemiramified, BruteForce };

inline std::string to_string(SK1Method m) {
    switch (m) {
        case SK1Method::UnramifiedTransfer: return "UnramifiedTransfer";
        case SK1Method::TotallyRamifiedMu: return "TotallyRamifiedMu";
        case SK1Method::SemiramifiedSequence: return "SemiramifiedSequence";
        case SK1Method::NicelySemiramified: return "NicelySemiramified";
        default: return "BruteForce";
    }
}

// Every invariant factor divides n (so every element order does).
inline bool is_n_torsion(const FiniteAbelianGroup& g, std::int64_t n) {
    for (auto& d : g.invariant_factors())
        if (d == 0 || BigInt(n) % d != 0) return false;
    return true;
}

struct SK1Report {
    FiniteAbelianGroup group;
    std::optional<std::string> symbolic;  // set when SK(E0) is an unevaluated input
    SK1Method method = SK1Method::BruteForce;
    Classification classification = Classification::Other;
    std::int64_t index = 1;
    std::vector<std::pair<std::string, std::string>> witnesses;
    std::map<std::string, bool> checks;
};

struct MuQuotientSpec {
    std::uint64_t q = 0;
    std::int64_t n = 1;
    BigInt e = 1;
};

// mu_n(GF(q)) / mu_e(GF(q)), cyclic of order gcd(n, q-1) / gcd(e, q-1).
inline FiniteAbelianGroup mu_quotient(const MuQuotientSpec& s) {
    BigInt q1 = BigInt(s.q) - 1;
    BigInt a = big_gcd(BigInt(s.n), q1), b = big_gcd(s.e, q1);
    if (a % b != 0) throw InvalidStructureError("mu_e is not contained in mu_n");
    return FiniteAbelianGroup::cyclic(a / b);
}

inline SK1Report sk1(const GradedDivAlgDesc& d) {
    SK1Report r;
    r.classification = classify(d);
    r.index = d.index;
    const auto* ff = std::get_if<FiniteFieldResidue>(&d.residue);
    const auto* ar = std::get_if<AbstractResidue>(&d.residue);
    switch (r.classification) {
        case Classification::Unramified:
            r.method = SK1Method::UnramifiedTransfer;
            if (ff) {
                r.witnesses.emplace_back("residue", "finite field, SK(E0) trivial");
            } else if (ar->sk1) {
                r.group = *ar->sk1;
                r.witnesses.emplace_back("residue", "asserted SK(E0)");
            } else {
                r.symbolic = "SK(E0)";
            }
            break;
        case Classification::TotallyRamified: {
            std::optional<std::uint64_t> q = ff ? std::optional<std::uint64_t>(ff->q) : ar->q;
            if (!q) throw UnsupportedCaseError("totally ramified case needs the size of T0");
            MuQuotientSpec s{*q, d.index, d.grade_quotient().exponent()};
            r.method = SK1Method::TotallyRamifiedMu;
            r.group = mu_quotient(s);
            r.witnesses.emplace_back("mu_n_order", big_gcd(BigInt(s.n), BigInt(*q) - 1).str());
            r.witnesses.emplace_back("mu_e_order", big_gcd(s.e, BigInt(*q) - 1).str());
            r.witnesses.emplace_back("e", s.e.str());
            break;
        }
        case Classification::Semiramified: {
            FiniteAbelianGroup gq = d.grade_quotient();
            std::optional<GModule> mod;
            if (ff) {
                if (gq.rank() > 1)
                    throw InvalidStructureError("finite-field residue forces a cyclic Gamma_E/Gamma_T");
                mod = finite_field_unit_module(static_cast<std::int64_t>(ff->q), ff->degree);
            } else {
                mod = ar->module;
            }
            TateComplex tc = tate_complex(*mod);
            r.witnesses.emplace_back("h_minus1", tc.group.str());
            if (d.totally_ramified_maximal_subfield) {
                r.method = SK1Method::NicelySemiramified;
                r.group = tc.group;
                break;
            }
            r.method = SK1Method::SemiramifiedSequence;
            WedgeData u = d.u ? *d.u : WedgeData{};
            if (!d.u && mod->group().rank() > 1 && !wedge_square(mod->group()).group.is_trivial())
                throw UnsupportedCaseError("semiramified case with non-cyclic G needs u-data");
            WedgeMapResult w = wedge_map(*mod, u);
            r.group = w.cokernel;
            r.witnesses.emplace_back("wedge_image", w.image.str());
            auto ho = w.h_minus1.order(), io = w.image.order(), co = w.cokernel.order();
            r.checks["exact_orders"] = ho && io && co && *ho == *io * *co;
            break;
        }
        default:
            throw UnsupportedCaseError("no formula for classification Other");
    }
    r.checks["n_torsion"] = is_n_torsion(r.group, r.index);
    return r;
}

struct BruteForceBudget {
    std::int64_t max_units = 1000000;
    std::int64_t max_index = 64;
};

struct BruteForceData {
    std::int64_t units = 0;       // |E0*|
    std::int64_t e1_order = 0;    // |E^(1)|
    std::int64_t eprime_order = 0;  // |E' cap E0*|
    std::int64_t nrd_log = 0;     // log of Nrd(g) for the generator g of E0*
};

inline void check_budget(const MonomialGradedRing& e, const BruteForceBudget& b) {
    if (static_cast<std::int64_t>(e.field().order()) > b.max_units)
        throw BudgetExceededError("|E0*| exceeds the enumeration budget");
    if (e.grade_index() > b.max_index || e.index() > b.max_index)
        throw BudgetExceededError("|Gamma_E:Gamma_T| exceeds the enumeration budget");
}

// Logs of the generators of E' cap E0*: commutators of E* generators, closed under conjugation.
inline std::int64_t commutator_subgroup_log(const MonomialGradedRing& e) {
    const auto& F = e.field();
    const std::int64_t N = static_cast<std::int64_t>(F.order());
    std::vector<Monomial> S{e.scalar(F.generator())};
    for (std::size_t i = 0; i < e.rank(); ++i) {
        S.push_back(e.z(i));
        S.push_back(e.z(i, -1));
    }
    std::int64_t g = N;  // E' = <g^gcd>
    for (auto& x : S)
        for (auto& y : S) {
            Monomial c = e.commutator(x, y);
            if (!degree_is_zero(c.deg)) throw InvalidStructureError("commutator left degree zero");
            g = std::gcd(g, F.log(c.c));
        }
    for (;;) {
        std::int64_t g2 = g;
        for (auto& x : S) {
            Monomial c = e.conjugate(x, e.scalar(F.exp(g)));
            g2 = std::gcd(g2, F.log(c.c));
        }
        if (g2 == g) break;
        g = g2;
    }
    return g;
}

inline BruteForceData brute_force_data(const MonomialGradedRing& e, const BruteForceBudget& budget = {}) {
    check_budget(e, budget);
    const auto& F = e.field();
    BruteForceData out;
    const std::int64_t N = static_cast<std::int64_t>(F.order());
    out.units = N;
    Monomial ng = e.reduced_norm(e.scalar(F.generator()));
    if (!degree_is_zero(ng.deg)) throw InvalidStructureError("reduced norm of a residue unit has nonzero degree");
    out.nrd_log = F.log(ng.c);
    // Nrd(g^k) = Nrd(g)^k; enumerate k, spot-checking against the element-level norm.
    std::int64_t e1 = 0;
    const std::int64_t stride = std::max<std::int64_t>(1, N / 512);
    for (std::int64_t k = 0; k < N; ++k) {
        bool one = static_cast<std::int64_t>((static_cast<__int128>(k) * out.nrd_log) % N) == 0;
        if (k % stride == 0) {
            Monomial direct = e.reduced_norm(e.scalar(F.exp(k)));
            if ((direct.c == 1) != one) throw InvalidStructureError("reduced norm is not multiplicative on E0*");
        }
        if (one) ++e1;
    }
    out.e1_order = e1;
    out.eprime_order = N / commutator_subgroup_log(e);
    return out;
}

inline SK1Report sk1_bruteforce(const MonomialGradedRing& e, const BruteForceBudget& budget = {}) {
    BruteForceData d = brute_force_data(e, budget);
    if (d.e1_order % d.eprime_order != 0) throw InvalidStructureError("E' is not contained in E^(1)");
    // Both are subgroups of the cyclic group E0*, so containment is divisibility of orders.
    SK1Report r;
    r.method = SK1Method::BruteForce;
    r.classification = classify(e.descriptor());
    r.index = e.index();
    r.group = FiniteAbelianGroup::cyclic(d.e1_order / d.eprime_order);
    r.witnesses.emplace_back("E0_units", std::to_string(d.units));
    r.witnesses.emplace_back("E1_order", std::to_string(d.e1_order));
    r.witnesses.emplace_back("Eprime_order", std::to_string(d.eprime_order));
    r.checks["n_torsion"] = is_n_torsion(r.group, r.index);
    r.checks["eprime_in_e1"] = true;
    return r;
}

struct CK1Report {
    FiniteAbelianGroup group;
    std::optional<FiniteAbelianGroup> residue_part;  // E0*/T0*E'
    FiniteAbelianGroup grade_part;                   // Gamma_E/Gamma_T
};

inline CK1Report ck1(const GradedDivAlgDesc& d) {
    CK1Report r;
    Classification c = classify(d);
    r.grade_part = d.grade_quotient();
    if (c == Classification::Unramified) {
        const auto* ff = std::get_if<FiniteFieldResidue>(&d.residue);
        if (!ff) throw UnsupportedCaseError("CK of an abstract residue algebra is not computable");
        BigInt qm = 1;
        for (std::int64_t i = 0; i < ff->degree; ++i) qm *= ff->q;
        r.group = FiniteAbelianGroup::cyclic((qm - 1) / (BigInt(ff->q) - 1));
        r.residue_part = r.group;
        return r;
    }
    if (c == Classification::TotallyRamified) {
        r.group = r.grade_part;
        r.residue_part = FiniteAbelianGroup();
        return r;
    }
    throw UnsupportedCaseError("CK formula only covers unramified and totally ramified descriptors");
}

// E*/(T* E'), using E*/E' = E0*/E' x Z^n via c z^alpha -> (log c, alpha).
inline CK1Report ck1(const MonomialGradedRing& e, const BruteForceBudget& budget = {}) {
    check_budget(e, budget);
    const auto& F = e.field();
    const std::size_t n = e.rank();
    const std::int64_t N = static_cast<std::int64_t>(F.order());
    const std::int64_t K = commutator_subgroup_log(e);  // |E0*/E'|
    const std::int64_t t0gen = N / static_cast<std::int64_t>(e.t0_size() - 1);
    IntMatrix rel(0, n + 1);
    std::vector<BigInt> row(n + 1, 0);
    row[0] = K;
    rel.append_row(row);
    row[0] = t0gen;
    rel.append_row(row);
    for (std::size_t k = 0; k < e.gamma_T().rows(); ++k) {
        Degree beta(n);
        for (std::size_t j = 0; j < n; ++j) beta[j] = static_cast<std::int64_t>(e.gamma_T()(k, j));
        Monomial t = e.central_element(beta);
        std::vector<BigInt> rr(n + 1);
        rr[0] = F.log(t.c);
        for (std::size_t j = 0; j < n; ++j) rr[j + 1] = beta[j];
        rel.append_row(rr);
    }
    CK1Report r;
    r.group = FiniteAbelianGroup::from_relations(rel, n + 1);
    r.residue_part = FiniteAbelianGroup::cyclic(std::gcd(K, t0gen));
    r.grade_part = e.grade_quotient();
    return r;
}

struct SH1Report {
    FiniteAbelianGroup group;     // T*/Nrd(E*)
    FiniteAbelianGroup residue;   // T0*/Nrd(E0*)
    FiniteAbelianGroup grade;     // Gamma_T/n Gamma_E
};

inline SH1Report sh1(const MonomialGradedRing& e, const BruteForceBudget& budget = {}) {
    check_budget(e, budget);
    const auto& F = e.field();
    const std::size_t n = e.rank();
    const std::int64_t N = static_cast<std::int64_t>(F.order());
    const std::int64_t Q0 = static_cast<std::int64_t>(e.t0_size()) - 1;
    const std::int64_t step = N / Q0;
    RowLattice gt(e.gamma_T(), n);
    std::vector<Monomial> basis;
    for (std::size_t k = 0; k < e.gamma_T().rows(); ++k) {
        Degree beta(n);
        for (std::size_t j = 0; j < n; ++j) beta[j] = static_cast<std::int64_t>(e.gamma_T()(k, j));
        basis.push_back(e.central_element(beta));
    }
    // T* = T0* x Gamma_T via c z^gamma -> (log of c z^gamma s(gamma)^-1, coordinates of gamma).
    auto coords = [&](const Monomial& x) {
        auto cg = gt.coordinates(to_big(x.deg));
        if (!cg) throw InvalidStructureError("reduced norm has degree outside Gamma_T");
        Monomial s = e.one();
        for (std::size_t k = 0; k < basis.size(); ++k)
            s = e.mono_mul(s, e.mono_pow(basis[k], static_cast<std::int64_t>((*cg)[k])));
        Monomial rest = e.mono_mul(x, e.mono_inv(s));
        std::int64_t l = F.log(rest.c);
        if (!degree_is_zero(rest.deg) || l % step != 0) throw InvalidStructureError("reduced norm is not central");
        std::vector<BigInt> v{BigInt(l / step)};
        v.insert(v.end(), cg->begin(), cg->end());
        return v;
    };
    IntMatrix rel(0, n + 1);
    std::vector<BigInt> row(n + 1, 0);
    row[0] = Q0;
    rel.append_row(row);
    auto ng = coords(e.reduced_norm(e.scalar(F.generator())));
    rel.append_row(ng);
    for (std::size_t i = 0; i < n; ++i) rel.append_row(coords(e.reduced_norm(e.z(i))));
    SH1Report r;
    r.group = FiniteAbelianGroup::from_relations(rel, n + 1);
    IntMatrix r0{{0}};
    r0(0, 0) = Q0;
    r0.append_row({ng[0]});
    r.residue = FiniteAbelianGroup::from_relations(r0, 1);
    IntMatrix nI = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) nI(i, i) = e.index();
    r.grade = subquotient(n, e.gamma_T(), nI);
    return r;
}

struct NondegeneracyCertificate {
    std::vector<std::int64_t> h1, h2;  // direct basis of H inside G
    std::vector<BigInt> image;         // sum (a_i b_j - a_j b_i) u_ij
    BigInt class_order;                // order of its class in H^-1(H, M)
    bool nonzero = false;
};

struct NondegeneracyResult {
    bool nondegenerate = true;
    std::vector<NondegeneracyCertificate> certificates;
};

// Direct basis {h1, h2} of a rank-2 subgroup, if the subgroup has rank exactly 2.
inline std::optional<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> rank2_basis(
    const FiniteAbGroupSpec& g, const std::vector<char>& mask) {
    auto els = g.subgroup_elements(mask);
    const std::int64_t order = static_cast<std::int64_t>(els.size());
    for (auto& x : els)
        if (g.element_order(x) == order) return std::nullopt;  // cyclic
    for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = 0; j < els.size(); ++j) {
            std::int64_t oi = g.element_order(els[i]), oj = g.element_order(els[j]);
            if (oi * oj != order || oi > oj) continue;
            auto span = g.closure({els[i], els[j]});
            if (std::count(span.begin(), span.end(), 1) == order) return std::make_pair(els[i], els[j]);
        }
    return std::nullopt;
}

inline NondegeneracyResult nondegenerate(const GModule& m, const WedgeData& u) {
    wedge_map(m, u);  // validates u
    const auto& G = m.group();
    const std::size_t k = m.generators();
    NondegeneracyResult res;
    for (auto& mask : G.all_subgroups()) {
        auto basis = rank2_basis(G, mask);
        if (!basis) continue;
        auto& [h1, h2] = *basis;
        std::vector<BigInt> img(k, 0);
        for (auto& [ij, vec] : u) {
            BigInt coef = BigInt(h1[ij.first]) * h2[ij.second] - BigInt(h1[ij.second]) * h2[ij.first];
            for (std::size_t t = 0; t < k; ++t) img[t] += coef * vec[t];
        }
        GModule hm = restrict_module(m, {h1, h2});
        TateComplex tc = tate_complex(hm);
        if (!RowLattice(tc.kernel_gens, k).contains(img))
            throw NotInKernelError("restricted wedge value is not in the kernel of N_H");
        NondegeneracyCertificate c{h1, h2, img, class_order(k, tc.augmentation_gens, img), false};
        c.nonzero = c.class_order != 1;
        res.nondegenerate = res.nondegenerate && c.nonzero;
        res.certificates.push_back(std::move(c));
    }
    return res;
}

}  // namespace gdiv
