#include <openssl/evp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "gdiv/io.hpp"
#include "gdiv/sampling.hpp"

namespace {

using gdiv::io::json;
using namespace gdiv;

struct Options {
    std::int64_t precision = 32;
    std::int64_t budget = 1000000;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
    std::string input;
};

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read input file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

BruteForceBudget brute_budget(const Options& o) { return {o.budget, 64}; }

json divisor_to(const SkewPolyRing& R, const Divisor& d) {
    json out = json::array();
    for (auto& [label, mult] : d) out.push_back({{"class_label", R.format(label)}, {"multiplicity", mult}});
    return out;
}

json central_divisor_to(const CentralDivisor& d) {
    json out = json::array();
    for (auto& [pi, mult] : d) out.push_back({{"bound", io::elts(pi)}, {"multiplicity", mult}});
    return out;
}

SkewPolyRing skew_ring(const json& j) {
    return SkewPolyRing(io::get<std::uint64_t>(j, "q"), io::get<std::int64_t>(j, "m"), io::get<std::int64_t>(j, "s"));
}

json cmd_classify(const json& j) {
    GradedDivAlgDesc d = io::is_ring_json(j) ? MonomialGradedRing(io::ring_from(j)).descriptor() : io::descriptor_from(j);
    return {{"classification", to_string(classify(d))}};
}

json cmd_sk1(const json& j) {
    if (io::is_ring_json(j)) return io::sk1_report_to(sk1(MonomialGradedRing(io::ring_from(j)).descriptor()));
    return io::sk1_report_to(sk1(io::descriptor_from(j)));
}

json cmd_sk1_brute(const json& j, const Options& o) {
    MonomialGradedRing E(io::ring_from(j));
    return io::sk1_report_to(sk1_bruteforce(E, brute_budget(o)));
}

json cmd_ck1(const json& j, const Options& o) {
    CK1Report r = io::is_ring_json(j) ? ck1(MonomialGradedRing(io::ring_from(j)), brute_budget(o))
                                      : ck1(io::descriptor_from(j));
    json out{{"ck1", io::group_to(r.group)}, {"grade_part", io::group_to(r.grade_part)}};
    if (r.residue_part) out["residue_part"] = io::group_to(*r.residue_part);
    return out;
}

json cmd_sh1(const json& j, const Options& o) {
    SH1Report r = sh1(MonomialGradedRing(io::ring_from(j)), brute_budget(o));
    return {{"sh1", io::group_to(r.group)}, {"residue_part", io::group_to(r.residue)}, {"grade_part", io::group_to(r.grade)}};
}

json cmd_nondegenerate(const json& j) {
    GModule m = io::gmodule_from(j);
    WedgeData u = j.contains("u") ? io::wedge_from(j.at("u"), m.generators()) : WedgeData{};
    NondegeneracyResult r = nondegenerate(m, u);
    json certs = json::array();
    for (auto& c : r.certificates) {
        json img = json::array();
        for (auto& x : c.image) img.push_back(x.convert_to<std::int64_t>());
        certs.push_back({{"h1", c.h1}, {"h2", c.h2}, {"image", img},
                         {"class_order", c.class_order.convert_to<std::int64_t>()}, {"nonzero", c.nonzero}});
    }
    return {{"nondegenerate", r.nondegenerate}, {"certificates", certs}};
}

json cmd_skew_divisor(const json& j) {
    SkewPolyRing R = skew_ring(j);
    SkewPoly f = R.parse(io::get<std::string>(j, "f"));
    if (f.is_zero()) throw ZeroElementError("divisor of zero");
    Factorization fa = R.factor(f);
    json factors = json::array();
    for (auto& p : fa.factors) factors.push_back(R.format(p));
    Divisor d = R.divisor(f);
    CentralDivisor nd = R.nrd_divisor(d);
    std::int64_t degree = 0;
    for (auto& [label, mult] : d) degree += mult * label.degree();
    Divisor scaled;
    divisor_add(scaled, d, R.ell());
    return {{"index", R.ell()},
            {"divisor", divisor_to(R, d)},
            {"divisor_degree", degree},
            {"factorization", {{"unit", io::dlog(R.field(), fa.unit)}, {"factors", factors}}},
            {"nrd", io::elts(R.nrd(f))},
            {"nrd_divisor", central_divisor_to(nd)},
            {"checks", {{"nrd_scaling", R.divisor(R.central(R.nrd(f))) == scaled}}}};
}

json cmd_skew_reduce(const json& j) {
    SkewPolyRing R = skew_ring(j);
    SkewPoly f = R.parse(io::get<std::string>(j, "f")), g = R.parse(io::get<std::string>(j, "g"));
    KernelReduction kr = R.reduce_kernel_element(f, g);
    json steps = json::array();
    bool replays = true;
    for (auto& st : kr.certificate) {
        replays = replays && SkewPolyRing::replay(R, st);
        steps.push_back({{"f", R.format(st.f)}, {"g", R.format(st.g)}, {"p", R.format(st.p)}, {"q", R.format(st.q)},
                         {"s", R.format(st.s)}, {"t", R.format(st.t)}, {"f_next", R.format(st.f_next)},
                         {"g_next", R.format(st.g_next)}});
    }
    return {{"d", io::dlog(R.field(), kr.d)}, {"certificate", steps}, {"checks", {{"replays", replays}}}};
}

GradedPoly graded_from(const FiniteField& F, const json& j, const Rational& lambda, std::optional<Rational> degree) {
    auto codes = io::get<std::vector<std::uint64_t>>(j, "coeffs");
    std::vector<FiniteField::Elt> c;
    for (auto x : codes) {
        if (x >= F.size()) throw InputError("element code out of range");
        c.push_back(static_cast<FiniteField::Elt>(x));
    }
    FPoly p(c);
    if (j.contains("degree")) degree = io::rational_from(j.at("degree"));
    return {p, lambda, degree ? *degree : lambda * static_cast<std::int64_t>(p.degree())};
}

json cmd_hensel(const json& j, const Options& o) {
    auto F = FiniteField::get(io::get<std::uint64_t>(j, "q"));
    const std::int64_t wp = o.precision + 32;
    SPoly f = io::spoly_from(F, j.at("f"), wp);
    Rational lambda = j.contains("lambda") ? io::rational_from(j.at("lambda")) : forced_lambda(f);
    json out{{"lambda", rat_str(lambda)}, {"target", o.precision}};
    if (j.contains("root")) {
        auto code = io::get<std::uint64_t>(j, "root");
        if (code == 0 || code >= F->size()) throw InputError("root must be a nonzero element code");
        Series a = hensel_lift_root(f, lambda, static_cast<FiniteField::Elt>(code), o.precision);
        Series r = spoly_eval(f, a);
        out["root"] = a.str();
        out["residual_valuation"] = r.val_or_prec();
        out["checks"] = {{"residual_at_target", r.val_or_prec() >= o.precision}};
        return out;
    }
    if (!j.contains("factor")) throw InputError("hensel input needs 'root' or 'factor'");
    const json& fj = j.at("factor");
    GradedPoly fl = homogenize(f, lambda);
    GradedPoly g = graded_from(*F, io::get<json>(fj, "g"), lambda, std::nullopt);
    GradedPoly h = graded_from(*F, io::get<json>(fj, "h"), lambda, fl.degree - g.degree);
    auto [G, H] = hensel_lift_factorization(f, lambda, g, h, o.precision);
    Rational err = weight(spoly_sub(f, spoly_mul(G, H)), lambda);
    out["g"] = io::spoly_to(G);
    out["h"] = io::spoly_to(H);
    out["residual_weight"] = rat_str(err);
    out["checks"] = {{"residual_at_target", err >= Rational(o.precision)},
                     {"graded_product", graded_mul(*F, homogenize(G, lambda), homogenize(H, lambda)) == fl}};
    return out;
}

json cmd_norm_preimage(const json& j, const Options& o) {
    auto F = FiniteField::get(io::get<std::uint64_t>(j, "q"));
    const std::int64_t wp = o.precision + 24;
    std::vector<SPoly> steps;
    if (!j.contains("tower") || !j.at("tower").is_array()) throw InputError("missing field 'tower'");
    for (auto& s : j.at("tower")) steps.push_back(io::spoly_from(F, s, wp));
    Series t = parse_series(F, io::get<std::string>(j, "t"), wp);
    json tame = json::array();
    for (auto& s : steps) {
        TamenessReport tr = check_tame(s);
        tame.push_back({{"lambda", rat_str(tr.lambda)}, {"disc_valuation", tr.disc_valuation}});
    }
    NormPreimage r = norm_one_unit_preimage(steps, t, o.precision);
    Tower tw(F, wp, steps);
    return {{"s", io::tower_elem_to(tw, steps.size(), r.s)},
            {"norm", r.norm.str()},
            {"agreement", r.agreement},
            {"steps", tame},
            {"checks", {{"norm_matches_target", r.agreement >= o.precision}}}};
}

json cmd_wedderburn(const json& j, const Options& o) {
    MonomialGradedRing E(io::ring_from(j));
    Monomial a = io::monomial_from(E, io::get<json>(j, "element"));
    WedderburnResult r = wedderburn_factor(E, a, static_cast<std::size_t>(o.budget));
    json factors = json::array();
    bool witnesses = true;
    for (auto& f : r.factors) {
        witnesses = witnesses && E.conjugate(f.witness, a) == f.root;
        factors.push_back({{"root", io::monomial_to(E, f.root)}, {"witness", io::monomial_to(E, f.witness)}});
    }
    return {{"h_a", io::central_poly_to(E, r.h)},
            {"factors", factors},
            {"class_size", r.class_size},
            {"modulus", E.field().modulus()},
            {"checks", {{"reconstructs", reconstructs(E, r)}, {"witnesses_conjugate", witnesses}}}};
}

json cmd_congruence_check(const json& j, const Options& o) {
    auto F = FiniteField::get(io::get<std::uint64_t>(j, "q"));
    TwistedRing D(F, io::get<std::int64_t>(j, "sigma"));
    const std::int64_t prec = o.precision;
    Series a = parse_series(F, io::get<std::string>(j, "a"), prec);
    std::vector<Series> base;
    if (j.contains("base")) {
        for (auto& b : j.at("base")) base.push_back(parse_series(F, b.get<std::string>(), prec));
    } else {
        base = CongruenceModel::standard_base(D, prec);
    }
    CongruenceModel M(D, base);
    CongruenceWitness w = M.witness(a);
    sampling::Rng rng(o.seed);
    const std::size_t l = static_cast<std::size_t>(D.sigma_order());
    DiagonalConsistency dc = ddet_diagonal_consistency(D, a, l, sampling::random_unipotent_pair(D, l, prec, rng));
    TMatrix T = w.S;
    for (std::size_t i = 0; i < T.size(); ++i) T[i][i] = T[i][i] + M.C().one(T[i][i].prec());
    json S = json::array();
    for (auto& row : w.S) {
        json r = json::array();
        for (auto& e : row) r.push_back(e.str());
        S.push_back(r);
    }
    return {{"ell", D.sigma_order()},
            {"gamma", w.gamma},
            {"S", S},
            {"diagonal_product", w.reduction.diagonal_product.str()},
            {"diagonal_value", w.diagonal_value},
            {"ddet", {{"valuation", dc.ddet_valuation}, {"power_valuation", dc.power_valuation},
                      {"nrd_agreement", dc.nrd_agreement}, {"nrd_precision", dc.nrd_precision}}},
            {"checks", {{"S_in_J", w.S_in_J},
                        {"diagonal_in_one_plus_MC", w.in_one_plus_MC},
                        {"replays", tmat_agree(replay(M.C(), w.reduction.transcript, T), w.reduction.t_prime)},
                        {"ddet_valuation_match", dc.valuation_match},
                        {"ddet_nrd_match", dc.nrd_match}}}};
}

json dispatch(const std::string& cmd, const json& j, const Options& o) {
    if (cmd == "classify") return cmd_classify(j);
    if (cmd == "sk1") return cmd_sk1(j);
    if (cmd == "sk1-brute") return cmd_sk1_brute(j, o);
    if (cmd == "ck1") return cmd_ck1(j, o);
    if (cmd == "sh1") return cmd_sh1(j, o);
    if (cmd == "nondegenerate") return cmd_nondegenerate(j);
    if (cmd == "skew-divisor") return cmd_skew_divisor(j);
    if (cmd == "skew-reduce") return cmd_skew_reduce(j);
    if (cmd == "hensel") return cmd_hensel(j, o);
    if (cmd == "norm-preimage") return cmd_norm_preimage(j, o);
    if (cmd == "wedderburn") return cmd_wedderburn(j, o);
    if (cmd == "congruence-check") return cmd_congruence_check(j, o);
    throw InputError("unknown command '" + cmd + "'");
}

std::string render_text(const json& report) {
    std::ostringstream os;
    for (auto& [k, v] : report.items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    return os.str();
}

void emit(const json& report, const Options& o) {
    const std::string body = o.format == "text" ? render_text(report) : report.dump(2) + "\n";
    if (!o.out.empty()) {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw InputError("cannot write '" + o.out + "'");
        f << report.dump(2) << "\n";
    }
    std::cout << body;
}

int fail(int code, const std::string& kind, const std::string& msg) {
    std::cerr << json{{"error", kind}, {"message", msg}, {"exit_code", code}}.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SK1 and related invariants of graded and valued division algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--precision", o.precision, "Working precision in t")->check(CLI::Range(1, 4096));
    app.add_option("--budget", o.budget, "Orbit and enumeration cap")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Seed for randomized parts");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", o.out, "Write the JSON report to this path");
    const std::vector<std::pair<std::string, std::string>> commands{
        {"classify", "Classify a descriptor or monomial ring"},
        {"sk1", "SK1 by the case formulas"},
        {"sk1-brute", "SK1 of a monomial ring by enumeration"},
        {"ck1", "CK1 = E*/T*E'"},
        {"sh1", "SH1 = T*/Nrd(E*) of a monomial ring"},
        {"nondegenerate", "Nondegeneracy of u-data on a G-module"},
        {"skew-divisor", "Jordan-Holder divisor of a twisted polynomial"},
        {"skew-reduce", "Kernel reduction for delta-matched twisted polynomials"},
        {"hensel", "Hensel lifting of a root or a factorization of a lambda-polynomial"},
        {"norm-preimage", "Preimage of a 1-unit under the norm of a tame tower"},
        {"wedderburn", "Wedderburn factorization of a homogeneous element's minimal polynomial"},
        {"congruence-check", "Matrix model and 1+J reduction for a 1-unit of a twisted series ring"}};
    for (auto& [name, help] : commands) app.add_subcommand(name, help)->add_option("input", o.input, "Input JSON")->required();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        const std::string bytes = read_file(o.input);
        json j = json::parse(bytes);
        json report = dispatch(cmd, j, o);
        report["command"] = cmd;
        report["version"] = GDIV_VERSION;
        report["input_sha256"] = sha256_hex(bytes);
        report["options"] = {{"precision", o.precision}, {"budget", o.budget}, {"seed", o.seed}};
        emit(report, o);
        return 0;
    } catch (const json::exception& e) {
        return fail(1, "SchemaError", e.what());
    } catch (const UnsupportedCaseError& e) {
        return fail(2, "UnsupportedCaseError", e.what());
    } catch (const ResourceError& e) {
        return fail(3, "ResourceError", e.what());
    } catch (const InputError& e) {
        return fail(1, "InputError", e.what());
    } catch (const std::exception& e) {
        return fail(1, "Error", e.what());
    }
}
