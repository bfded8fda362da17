#include <gtest/gtest.h>

#include <set>

#include "gdiv/gf.hpp"
#include "gdiv/gmodule.hpp"
#include "gdiv/sk1.hpp"

using namespace gdiv;

namespace {

GModule negation_module() { return GModule(FiniteAbGroupSpec({2}), 1, IntMatrix(0, 1), {IntMatrix{{-1}}}); }

// Z[V4/<s1>] + sign (s1 -> -1, s2 -> 1) + trivial, rank 4 over V4 = Z/2 x Z/2.
GModule rank4_test_module() {
    FiniteAbGroupSpec v4({2, 2});
    GModule pm = permutation_module(v4, {{1, 0}});
    GModule sign(v4, 1, IntMatrix(0, 1), {IntMatrix{{-1}}, IntMatrix{{1}}});
    GModule triv(v4, 1, IntMatrix(0, 1), {IntMatrix{{1}}, IntMatrix{{1}}});
    return direct_sum(direct_sum(pm, sign), triv);
}

}  // namespace

TEST(NormEndomorphism, TrivialGroupGivesIdentity) {
    GModule m(FiniteAbGroupSpec({1, 1}), 3, IntMatrix(0, 3), {IntMatrix::identity(3), IntMatrix::identity(3)});
    EXPECT_EQ(norm_endomorphism(m), IntMatrix::identity(3));
    EXPECT_TRUE(tate_h_minus1(m).is_trivial());
}

TEST(NormEndomorphism, NegationAndSwap) {
    EXPECT_EQ(norm_endomorphism(negation_module()), IntMatrix(1, 1));
    GModule sw(FiniteAbGroupSpec({2}), 2, IntMatrix(0, 2), {IntMatrix{{0, 1}, {1, 0}}});
    EXPECT_EQ(norm_endomorphism(sw), (IntMatrix::identity(2) + IntMatrix{{0, 1}, {1, 0}}));
    EXPECT_EQ(norm_endomorphism(sw), (IntMatrix{{1, 1}, {1, 1}}));
}

TEST(TateHMinus1, NegationModuleIsZ2) {
    // ker N = Z and I_G = (g - 1)Z = 2Z.
    EXPECT_EQ(tate_h_minus1(negation_module()), FiniteAbelianGroup::cyclic(2));
}

TEST(TateHMinus1, RegularModulesVanish) {
    for (auto& g : abelian_groups_up_to(16)) EXPECT_TRUE(tate_h_minus1(permutation_module(g, {})).is_trivial());
}

TEST(TateHMinus1, FiniteFieldUnitsVanish) {
    for (auto [q, m] : std::vector<std::pair<std::uint64_t, std::int64_t>>{{2, 3}, {3, 2}, {3, 3}, {4, 2}, {5, 2}, {2, 4}}) {
        // Enumeration oracle: |ker Norm| equals |{c^(q-1)}|, so every norm-one element is sigma(c)/c.
        auto F = FiniteField::get(gdiv::ipow(q, static_cast<unsigned>(m)));
        const std::int64_t N = static_cast<std::int64_t>(F->order());
        const std::int64_t e = N / (static_cast<std::int64_t>(q) - 1);
        std::size_t kernel = 0;
        std::set<FiniteField::Elt> aug;
        for (std::int64_t k = 0; k < N; ++k) {
            FiniteField::Elt c = F->exp(k);
            if (F->pow(c, e) == 1) ++kernel;
            aug.insert(F->pow(c, static_cast<std::int64_t>(q) - 1));
        }
        ASSERT_EQ(kernel, aug.size());
        EXPECT_TRUE(tate_h_minus1(finite_field_unit_module(static_cast<std::int64_t>(q), m)).is_trivial());
    }
}

TEST(WedgeSquare, SmallGroups) {
    EXPECT_TRUE(wedge_square(FiniteAbGroupSpec({6})).group.is_trivial());
    EXPECT_EQ(wedge_square(FiniteAbGroupSpec({2, 2})).group, FiniteAbelianGroup::cyclic(2));
    EXPECT_EQ(wedge_square(FiniteAbGroupSpec({2, 4})).group, FiniteAbelianGroup::cyclic(2));
    EXPECT_EQ(wedge_square(FiniteAbGroupSpec({2, 4, 6})).group.str(), "Z/2 x Z/2 x Z/2");
}

TEST(PermutationModule, Examples) {
    FiniteAbGroupSpec z2({2});
    GModule whole = permutation_module(z2, {{1}});
    EXPECT_EQ(whole.generators(), 1u);
    EXPECT_EQ(whole.actions()[0], IntMatrix::identity(1));
    GModule reg = permutation_module(z2, {});
    EXPECT_EQ(reg.generators(), 2u);
    EXPECT_EQ(reg.actions()[0], (IntMatrix{{0, 1}, {1, 0}}));
    GModule half = permutation_module(FiniteAbGroupSpec({2, 2}), {{1, 0}});
    EXPECT_EQ(half.generators(), 2u);
    EXPECT_TRUE(tate_h_minus1(half).is_trivial());
}

TEST(PermutationModule, AllSubgroupsVanish) {
    for (auto& g : abelian_groups_up_to(12))
        for (auto& s : g.all_subgroups())
            EXPECT_TRUE(tate_h_minus1(permutation_module(g, g.subgroup_elements(s))).is_trivial());
}

TEST(WedgeMap, ZeroDataGivesFullCokernel) {
    GModule m = rank4_test_module();
    auto r = wedge_map(m, {});
    EXPECT_TRUE(r.image.is_trivial());
    EXPECT_EQ(r.cokernel, tate_h_minus1(m));
}

TEST(WedgeMap, CyclicGroupGivesFullCokernel) {
    auto r = wedge_map(negation_module(), {});
    EXPECT_EQ(r.cokernel, FiniteAbelianGroup::cyclic(2));
}

TEST(WedgeMap, Rank4ModuleSurjects) {
    // Only the sign summand contributes: its kernel is Z and I_G = 2Z.
    GModule m = rank4_test_module();
    EXPECT_EQ(tate_h_minus1(m), FiniteAbelianGroup::cyclic(2));
    WedgeData u;
    u[{0, 1}] = {0, 0, 1, 0};
    auto r = wedge_map(m, u);
    EXPECT_EQ(r.image, FiniteAbelianGroup::cyclic(2));
    EXPECT_TRUE(r.cokernel.is_trivial());
    EXPECT_EQ(r.class_orders, std::vector<BigInt>{2});
}

TEST(WedgeMap, RejectsNonKernelData) {
    WedgeData u;
    u[{0, 1}] = {0, 0, 0, 1};
    EXPECT_THROW(wedge_map(rank4_test_module(), u), NotInKernelError);
}

TEST(Nondegenerate, Examples) {
    EXPECT_TRUE(nondegenerate(negation_module(), {}).nondegenerate);
    GModule m = rank4_test_module();
    WedgeData zero;
    zero[{0, 1}] = {0, 0, 2, 0};
    EXPECT_FALSE(nondegenerate(m, zero).nondegenerate);
    WedgeData hit;
    hit[{0, 1}] = {0, 0, 1, 0};
    auto res = nondegenerate(m, hit);
    EXPECT_TRUE(res.nondegenerate);
    ASSERT_FALSE(res.certificates.empty());
    EXPECT_TRUE(res.certificates[0].nonzero);
}
