#include <gtest/gtest.h>

#include <set>

#include "corpus.hpp"
#include "gdiv/sk1.hpp"

using namespace gdiv;

namespace {

MonomialGradedRing gf9_ring() { return MonomialGradedRing({3, 2, {1}, {2}, {0}, {{0}}}); }

GradedDivAlgDesc totally_ramified_desc(std::uint64_t q, std::size_t rank, std::int64_t e, std::int64_t index) {
    GradedDivAlgDesc d;
    d.gamma_rank = rank;
    d.gamma_T = IntMatrix(rank, rank);
    for (std::size_t i = 0; i < rank; ++i) d.gamma_T(i, i) = e;
    d.residue = FiniteFieldResidue{q, 1, 1};
    d.index = index;
    return d;
}

// Order of mu_k(GF(p)) by enumeration.
std::int64_t mu_order(std::int64_t p, std::int64_t k) {
    std::int64_t c = 0;
    for (std::int64_t x = 1; x < p; ++x) {
        std::int64_t y = 1;
        for (std::int64_t i = 0; i < k; ++i) y = y * x % p;
        if (y == 1) ++c;
    }
    return c;
}

GModule rank4_test_module() {
    FiniteAbGroupSpec v4({2, 2});
    GModule pm = permutation_module(v4, {{1, 0}});
    GModule sign(v4, 1, IntMatrix(0, 1), {IntMatrix{{-1}}, IntMatrix{{1}}});
    GModule triv(v4, 1, IntMatrix(0, 1), {IntMatrix{{1}}, IntMatrix{{1}}});
    return direct_sum(direct_sum(pm, sign), triv);
}

GradedDivAlgDesc abstract_semiramified(std::optional<WedgeData> u, bool nicely) {
    GradedDivAlgDesc d;
    d.gamma_rank = 2;
    d.gamma_T = IntMatrix{{2, 0}, {0, 2}};
    d.residue = AbstractResidue{rank4_test_module(), 4, 4, std::nullopt, std::nullopt};
    d.index = 4;
    d.u = std::move(u);
    d.totally_ramified_maximal_subfield = nicely;
    return d;
}

}  // namespace

TEST(SK1, UnramifiedFiniteFieldIsTrivial) {
    GradedDivAlgDesc d;
    d.gamma_rank = 1;
    d.gamma_T = IntMatrix{{1}};
    d.residue = FiniteFieldResidue{5, 1, 1};
    auto r = sk1(d);
    EXPECT_EQ(r.method, SK1Method::UnramifiedTransfer);
    EXPECT_TRUE(r.group.is_trivial());
    for (auto& e : corpus::unramified()) EXPECT_TRUE(sk1_bruteforce(MonomialGradedRing(e.data)).group.is_trivial());
}

TEST(SK1, TotallyRamifiedQ5N4E2) {
    // mu_4(GF(5)) has 4 elements and mu_2(GF(5)) has 2.
    ASSERT_EQ(mu_order(5, 4) / mu_order(5, 2), 2);
    auto r = sk1(totally_ramified_desc(5, 4, 2, 4));
    EXPECT_EQ(r.method, SK1Method::TotallyRamifiedMu);
    EXPECT_EQ(r.group, FiniteAbelianGroup::cyclic(mu_order(5, 4) / mu_order(5, 2)));
}

TEST(SK1, TotallyRamifiedMatchesMuEnumeration) {
    for (std::int64_t p : {3, 5, 7, 11, 13})
        for (std::int64_t e : {2, 3, 4}) {
            for (std::size_t rank : {2u, 4u}) {
                std::int64_t n = rank == 2 ? e : e * e;
                auto r = sk1(totally_ramified_desc(static_cast<std::uint64_t>(p), rank, e, n));
                EXPECT_EQ(*r.group.order(), BigInt(mu_order(p, n) / mu_order(p, e))) << p << " " << e << " " << rank;
            }
        }
}

TEST(SK1, SemiramifiedCyclicIsTrivial) {
    auto E = gf9_ring();
    auto r = sk1(E.descriptor());
    EXPECT_EQ(r.method, SK1Method::SemiramifiedSequence);
    EXPECT_TRUE(r.group.is_trivial());
    EXPECT_TRUE(tate_h_minus1(finite_field_unit_module(3, 2)).is_trivial());
}

TEST(SK1, SemiramifiedAbstractResidue) {
    auto zero = sk1(abstract_semiramified(WedgeData{}, false));
    EXPECT_EQ(zero.group, FiniteAbelianGroup::cyclic(2));
    EXPECT_TRUE(zero.checks.at("exact_orders"));
    WedgeData hit;
    hit[{0, 1}] = {0, 0, 1, 0};
    auto onto = sk1(abstract_semiramified(hit, false));
    EXPECT_TRUE(onto.group.is_trivial());
    auto nicely = sk1(abstract_semiramified(std::nullopt, true));
    EXPECT_EQ(nicely.method, SK1Method::NicelySemiramified);
    EXPECT_EQ(nicely.group, FiniteAbelianGroup::cyclic(2));
    EXPECT_THROW(sk1(abstract_semiramified(std::nullopt, false)), UnsupportedCaseError);
}

TEST(SK1Brute, GF9Ring) {
    auto E = gf9_ring();
    const FiniteField& F = E.field();
    // Oracle: norm-one elements of GF(9)/GF(3) and the subgroup generated by c^-2.
    std::set<Elt> norm_one, commutators;
    for (Elt c = 1; c < F.size(); ++c) {
        if (F.mul(c, F.pow(c, 3)) == 1) norm_one.insert(c);
        commutators.insert(F.inv(F.mul(c, c)));
    }
    auto data = brute_force_data(E);
    EXPECT_EQ(data.units, 8);
    EXPECT_EQ(data.e1_order, static_cast<std::int64_t>(norm_one.size()));
    EXPECT_EQ(data.eprime_order, static_cast<std::int64_t>(commutators.size()));
    EXPECT_TRUE(sk1_bruteforce(E).group.is_trivial());
}

TEST(SK1Brute, SymbolRingQ5) {
    MonomialGradedRing E({5, 1, {0, 0}, {2, 2}, {0, 0}, {{0, 2}, {2, 0}}});
    auto r = sk1_bruteforce(E);
    EXPECT_EQ(*r.group.order(), BigInt(mu_order(5, 2) / mu_order(5, 2)));
    EXPECT_EQ(r.classification, Classification::TotallyRamified);
}

TEST(SK1Brute, AgreesWithFormulaOnCorpus) {
    for (auto& e : corpus::all()) {
        MonomialGradedRing E(e.data);
        auto b = sk1_bruteforce(E, {1000000, 256});
        auto f = sk1(E.descriptor());
        EXPECT_EQ(b.group, f.group) << e.name;
        EXPECT_TRUE(is_n_torsion(b.group, E.index())) << e.name;
    }
}

TEST(SK1Brute, BudgetEnforced) {
    MonomialGradedRing E({5, 1, {0, 0, 0, 0}, {4, 4, 4, 4}, {0, 0, 0, 0},
                          {{0, 1, 0, 0}, {3, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 3, 0}}});
    EXPECT_THROW(sk1_bruteforce(E, {1000000, 64}), ResourceError);
}

TEST(CK1, TotallyRamifiedIsGradeQuotient) {
    auto r = ck1(totally_ramified_desc(5, 2, 2, 2));
    EXPECT_EQ(r.group.str(), "Z/2 x Z/2");
    MonomialGradedRing E({5, 1, {0, 0}, {2, 2}, {0, 0}, {{0, 2}, {2, 0}}});
    EXPECT_EQ(ck1(E).group.str(), "Z/2 x Z/2");
}

TEST(CK1, RankZeroRingIsTrivial) {
    // A commutative E = M is its own center, so E0* / T0* E' is trivial.
    for (auto& e : corpus::unramified()) {
        auto r = ck1(MonomialGradedRing(e.data));
        EXPECT_TRUE(r.group.is_trivial()) << e.name;
        EXPECT_TRUE(r.residue_part->is_trivial()) << e.name;
    }
}

TEST(CK1, GF9Ring) {
    // E0*/T0*E' = GF(9)*/(GF(3)* . <c^-2>) = GF(9)*/<c^2> has order 2; Gamma_E/Gamma_T = Z/2.
    auto r = ck1(gf9_ring());
    EXPECT_EQ(r.residue_part->str(), "Z/2");
    EXPECT_EQ(r.grade_part.str(), "Z/2");
    EXPECT_EQ(*r.group.order(), 4);
}

TEST(SH1, Examples) {
    for (auto& e : corpus::unramified()) EXPECT_TRUE(sh1(MonomialGradedRing(e.data)).group.is_trivial()) << e.name;
    auto r = sh1(gf9_ring());
    EXPECT_TRUE(r.residue.is_trivial());
    EXPECT_TRUE(r.group.is_trivial());
}

TEST(MuQuotient, RejectsNonDividing) {
    EXPECT_THROW(mu_quotient({7, 2, 3}), InvalidStructureError);
    EXPECT_EQ(mu_quotient({13, 12, 3}), FiniteAbelianGroup::cyclic(4));
}
