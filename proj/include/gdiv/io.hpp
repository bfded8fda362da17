#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gdiv/abgroup.hpp"
#include "gdiv/errors.hpp"
#include "gdiv/gmodule.hpp"
#include "gdiv/graded.hpp"
#include "gdiv/matdiv.hpp"
#include "gdiv/series.hpp"
#include "gdiv/sk1.hpp"
#include "gdiv/skewpoly.hpp"
#include "gdiv/wedderburn.hpp"

namespace gdiv::io {

using json = nlohmann::json;

template <class T>
T get(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string("field '") + key + "' has the wrong type");
    }
}

inline IntMatrix matrix_from(const json& j, std::size_t cols) {
    if (!j.is_array()) throw InputError("matrix must be a list of rows");
    IntMatrix m(0, cols);
    for (auto& row : j) {
        auto r = row.get<std::vector<std::int64_t>>();
        if (r.size() != cols) throw InputError("matrix row has the wrong length");
        m.append_row(std::vector<BigInt>(r.begin(), r.end()));
    }
    return m;
}

inline json matrix_to(const IntMatrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).convert_to<std::int64_t>());
        out.push_back(row);
    }
    return out;
}

inline json group_to(const FiniteAbelianGroup& g) {
    json f = json::array();
    for (auto& d : g.invariant_factors()) f.push_back(d.convert_to<std::int64_t>());
    return {{"invariant_factors", f}, {"str", g.str()}};
}

// {"group": [r1..rn], "generators": k, "relations": [[..]], "actions": [[[..]]], "u": [{"pair": [i,j], "value": [..]}]}
inline GModule gmodule_from(const json& j) {
    auto orders = get<std::vector<std::int64_t>>(j, "group");
    auto k = get<std::size_t>(j, "generators");
    IntMatrix rel = j.contains("relations") ? matrix_from(j.at("relations"), k) : IntMatrix(0, k);
    std::vector<IntMatrix> acts;
    if (!j.contains("actions") || !j.at("actions").is_array()) throw InputError("missing field 'actions'");
    for (auto& a : j.at("actions")) acts.push_back(matrix_from(a, k));
    return GModule(FiniteAbGroupSpec(orders), k, rel, acts);
}

inline WedgeData wedge_from(const json& j, std::size_t k) {
    WedgeData u;
    if (!j.is_array()) throw InputError("'u' must be a list of {pair, value}");
    for (auto& e : j) {
        auto p = get<std::vector<std::size_t>>(e, "pair");
        auto v = get<std::vector<std::int64_t>>(e, "value");
        if (p.size() != 2 || v.size() != k) throw InputError("bad 'u' entry");
        u[{p[0], p[1]}] = std::vector<BigInt>(v.begin(), v.end());
    }
    return u;
}

inline bool is_ring_json(const json& j) { return j.is_object() && j.contains("sigma") && j.contains("q"); }

// {"q","m","n","sigma","r","b","u", optional "modulus"}; b and u are discrete logs.
inline MonomialRingData ring_from(const json& j) {
    MonomialRingData d;
    d.q = get<std::uint64_t>(j, "q");
    d.m = j.contains("m") ? get<std::int64_t>(j, "m") : 1;
    d.sigma = get<std::vector<std::int64_t>>(j, "sigma");
    d.r = get<std::vector<std::int64_t>>(j, "r");
    d.b = get<std::vector<std::int64_t>>(j, "b");
    d.u = get<std::vector<std::vector<std::int64_t>>>(j, "u");
    const std::size_t n = j.contains("n") ? get<std::size_t>(j, "n") : d.sigma.size();
    if (d.sigma.size() != n || d.r.size() != n || d.b.size() != n || d.u.size() != n)
        throw InputError("sigma, r, b, u must all have n entries");
    for (auto& row : d.u)
        if (row.size() != n) throw InputError("u must be n x n");
    if (j.contains("modulus")) {
        auto F = FiniteField::get(ipow(d.q, static_cast<unsigned>(d.m)));
        if (get<std::vector<std::uint32_t>>(j, "modulus") != F->modulus())
            throw UnsupportedCaseError("only the lexicographically least primitive modulus is supported");
    }
    return d;
}

inline json ring_to(const MonomialGradedRing& e) {
    const auto& d = e.data();
    return {{"q", d.q}, {"m", d.m}, {"n", d.sigma.size()}, {"sigma", d.sigma}, {"r", d.r},
            {"b", d.b}, {"u", d.u}, {"modulus", e.field().modulus()}};
}

// {"gamma_rank", "gamma_T", "index", "residue": {"q","degree","center_degree"} | {"module", "degree",
//  "center_degree", "sk1"?, "q"?}, "theta_kernel"?, "u"?, "totally_ramified_maximal_subfield"?}
inline GradedDivAlgDesc descriptor_from(const json& j) {
    GradedDivAlgDesc d;
    d.gamma_rank = get<std::size_t>(j, "gamma_rank");
    d.gamma_T = j.contains("gamma_T") ? matrix_from(j.at("gamma_T"), d.gamma_rank) : IntMatrix(0, d.gamma_rank);
    d.index = get<std::int64_t>(j, "index");
    if (!j.contains("residue")) throw InputError("missing field 'residue'");
    const json& r = j.at("residue");
    if (r.contains("module")) {
        AbstractResidue ar{gmodule_from(r.at("module")), get<std::int64_t>(r, "degree"),
                           get<std::int64_t>(r, "center_degree"), std::nullopt, std::nullopt};
        if (r.contains("sk1")) {
            auto o = get<std::vector<std::int64_t>>(r, "sk1");
            ar.sk1 = FiniteAbelianGroup::from_orders(std::vector<BigInt>(o.begin(), o.end()));
        }
        if (r.contains("q")) ar.q = get<std::uint64_t>(r, "q");
        d.residue = ar;
        if (j.contains("u")) d.u = wedge_from(j.at("u"), ar.module.generators());
    } else {
        d.residue = FiniteFieldResidue{get<std::uint64_t>(r, "q"), get<std::int64_t>(r, "degree"),
                                       get<std::int64_t>(r, "center_degree")};
        if (j.contains("u")) throw InputError("'u' needs an abstract residue module");
    }
    if (j.contains("theta_kernel")) d.theta_kernel = matrix_from(j.at("theta_kernel"), d.gamma_rank);
    if (j.contains("totally_ramified_maximal_subfield"))
        d.totally_ramified_maximal_subfield = get<bool>(j, "totally_ramified_maximal_subfield");
    return d;
}

inline json sk1_report_to(const SK1Report& r) {
    json checks = json::object();
    for (auto& [k, v] : r.checks) checks[k] = v;
    json w = json::array();
    for (auto& [k, v] : r.witnesses) w.push_back({{"name", k}, {"value", v}});
    json sk = group_to(r.group);
    if (r.symbolic) sk["symbolic"] = *r.symbolic;
    return {{"classification", to_string(r.classification)},
            {"sk1", sk},
            {"method", to_string(r.method)},
            {"index", r.index},
            {"checks", checks},
            {"witnesses", w}};
}

inline json dlog(const FiniteField& F, FiniteField::Elt c) {
    if (c == 0) return nullptr;
    return F.log(c);
}

inline json monomial_to(const MonomialGradedRing& E, const Monomial& m) {
    return {{"c", dlog(E.field(), m.c)}, {"deg", m.deg}};
}

inline Monomial monomial_from(const MonomialGradedRing& E, const json& j) {
    auto deg = get<Degree>(j, "deg");
    if (deg.size() != E.rank()) throw InputError("element degree has the wrong rank");
    if (!j.contains("c") || j.at("c").is_null()) return {0, deg};
    return {E.field().exp(get<std::int64_t>(j, "c")), deg};
}

inline json graded_to(const MonomialGradedRing& E, const GradedElement& g) {
    json out = json::array();
    for (auto& [d, c] : g.terms()) out.push_back({{"c", dlog(E.field(), c)}, {"deg", d}});
    return out;
}

inline json central_poly_to(const MonomialGradedRing& E, const CentralPoly& h) {
    json out = json::array();
    for (auto& c : h.coeffs) out.push_back(graded_to(E, c));
    return out;
}

inline std::vector<std::int64_t> elts(const FPoly& p) { return {p.c.begin(), p.c.end()}; }

inline Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        auto s = j.get<std::string>();
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            std::int64_t den = std::stoll(s.substr(slash + 1));
            if (den == 0) throw InputError("zero denominator in lambda");
            return Rational(std::stoll(s.substr(0, slash)), den);
        } catch (const std::logic_error&) {
            throw InputError("cannot parse rational '" + s + "'");
        }
    }
    throw InputError("lambda must be an integer or a string 'a/b'");
}

// Polynomial over the series field, given as a list of series literals (low to high).
inline SPoly spoly_from(std::shared_ptr<const FiniteField> F, const json& j, std::int64_t prec) {
    if (!j.is_array() || j.size() < 2) throw InputError("polynomial must be a list of at least two series literals");
    SPoly f;
    for (auto& c : j) {
        if (c.is_number_integer()) {
            auto code = c.get<std::int64_t>();
            if (code < 0 || static_cast<std::uint64_t>(code) >= F->size()) throw InputError("element code out of range");
            f.push_back(Series::constant(F, static_cast<FiniteField::Elt>(code), prec));
        } else if (c.is_string()) {
            f.push_back(parse_series(F, c.get<std::string>(), prec));
        } else {
            throw InputError("polynomial coefficients must be series literals");
        }
    }
    return f;
}

inline json spoly_to(const SPoly& f) {
    json out = json::array();
    for (auto& c : f) out.push_back(c.str());
    return out;
}

inline json tower_elem_to(const Tower& t, std::size_t level, const TElem& a) {
    if (level == 0) return a.s.str();
    json out = json::array();
    for (auto& x : a.v) out.push_back(tower_elem_to(t, level - 1, x));
    return out;
}

}  // namespace gdiv::io
