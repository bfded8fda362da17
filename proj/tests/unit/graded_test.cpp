#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "gdiv/graded.hpp"

using namespace gdiv;

namespace {

MonomialGradedRing gf9_ring() { return MonomialGradedRing({3, 2, {1}, {2}, {0}, {{0}}}); }
MonomialGradedRing q5_symbol_ring() { return MonomialGradedRing({5, 1, {0, 0}, {2, 2}, {0, 0}, {{0, 2}, {2, 0}}}); }

GradedDivAlgDesc ff_desc(std::size_t rank, IntMatrix gt, FiniteFieldResidue res, std::int64_t index) {
    GradedDivAlgDesc d;
    d.gamma_rank = rank;
    d.gamma_T = std::move(gt);
    d.residue = res;
    d.index = index;
    return d;
}

}  // namespace

TEST(Classify, Examples) {
    // Residue GF(3^4) is commutative, so it equals T0 and has degree 1 over it.
    EXPECT_EQ(classify(ff_desc(1, IntMatrix{{1}}, {81, 1, 1}, 1)), Classification::Unramified);
    EXPECT_EQ(classify(ff_desc(2, IntMatrix{{2, 0}, {0, 2}}, {5, 1, 1}, 2)), Classification::TotallyRamified);
    // [GF(9):GF(3)] = 2 = |Z : 2Z|.
    EXPECT_EQ(classify(ff_desc(1, IntMatrix{{2}}, {3, 2, 2}, 2)), Classification::Semiramified);
    EXPECT_EQ(classify(gf9_ring().descriptor()), Classification::Semiramified);
    EXPECT_EQ(classify(q5_symbol_ring().descriptor()), Classification::TotallyRamified);
}

TEST(Classify, FundamentalEqualityEnforced) {
    EXPECT_THROW(classify(ff_desc(1, IntMatrix{{2}}, {3, 1, 1}, 2)), InvalidStructureError);
}

TEST(Classify, CorpusRingsSatisfyFundamentalEquality) {
    for (auto& e : corpus::all()) {
        MonomialGradedRing E(e.data);
        auto d = E.descriptor();
        EXPECT_EQ(BigInt(d.index) * d.index, BigInt(d.residue_degree()) * d.grade_index()) << e.name;
    }
}

TEST(Multiply, IdentityAndFrobeniusTwist) {
    auto E = gf9_ring();
    const FiniteField& F = E.field();
    const Elt c = F.generator();
    EXPECT_EQ(E.mono_mul(E.z(0), E.one()), E.z(0));
    Monomial zc = E.mono_mul(E.z(0), E.scalar(c));
    EXPECT_EQ(zc.c, F.mul(c, F.mul(c, c)));
    EXPECT_EQ(zc.deg, Degree{1});
}

TEST(Multiply, SymbolRelation) {
    auto E = q5_symbol_ring();
    Monomial lhs = E.mono_mul(E.z(0), E.z(1));
    Monomial rhs = E.mono_mul(E.scalar(E.u(0, 1)), E.mono_mul(E.z(1), E.z(0)));
    EXPECT_EQ(lhs, rhs);
    EXPECT_EQ(E.u(0, 1), E.field().neg(1));
}

TEST(Multiply, Associative) {
    std::mt19937_64 rng(3);
    for (auto& e : corpus::all()) {
        MonomialGradedRing E(e.data);
        auto rnd = [&] {
            Degree d(E.rank());
            for (auto& x : d) x = static_cast<std::int64_t>(rng() % 7) - 3;
            return Monomial{E.field().exp(static_cast<std::int64_t>(rng() % E.field().order())), d};
        };
        for (int i = 0; i < 10; ++i) {
            Monomial a = rnd(), b = rnd(), c = rnd();
            ASSERT_EQ(E.mono_mul(E.mono_mul(a, b), c), E.mono_mul(a, E.mono_mul(b, c))) << e.name;
            ASSERT_EQ(E.mono_mul(a, E.mono_inv(a)), E.one()) << e.name;
        }
    }
}

TEST(MinimalPolynomial, CentralElement) {
    auto E = gf9_ring();
    Monomial t = E.central_element({2});
    auto mp = E.minimal_polynomial(t);
    ASSERT_EQ(mp.h.degree(), 1u);
    EXPECT_EQ(mp.h.coeffs[0], E.neg(GradedElement::from(t)));
    EXPECT_TRUE(E.eval(mp.h, t).is_zero());
}

TEST(MinimalPolynomial, GeneratorZ) {
    auto E = gf9_ring();
    auto mp = E.minimal_polynomial(E.z(0));
    ASSERT_EQ(mp.h.degree(), 2u);
    EXPECT_TRUE(mp.h.coeffs[1].is_zero());
    EXPECT_EQ(mp.h.coeffs[0], E.neg(GradedElement::from(E.mono_mul(E.z(0), E.z(0)))));
    EXPECT_TRUE(E.eval(mp.h, E.z(0)).is_zero());
}

TEST(MinimalPolynomial, ResidueElementOverGF3) {
    auto E = gf9_ring();
    const FiniteField& F = E.field();
    const Elt c = F.generator();
    const Elt c3 = F.mul(c, F.mul(c, c));
    auto mp = E.minimal_polynomial(E.scalar(c));
    ASSERT_EQ(mp.h.degree(), 2u);
    // (x - c)(x - c^3) = x^2 - (c + c^3) x + c^4
    EXPECT_EQ(mp.h.coeffs[2].coefficient({0}), 1u);
    EXPECT_EQ(mp.h.coeffs[1].coefficient({0}), F.neg(F.add(c, c3)));
    EXPECT_EQ(mp.h.coeffs[0].coefficient({0}), F.mul(c, c3));
}

TEST(ReducedNorm, Examples) {
    auto E = gf9_ring();
    const FiniteField& F = E.field();
    Monomial nz = E.reduced_norm(E.z(0));
    EXPECT_EQ(nz, (Monomial{F.neg(1), {2}}));
    // Nrd(z)^2 = Nrd(z^2) = (z^2)^2.
    Monomial z2 = E.mono_mul(E.z(0), E.z(0));
    EXPECT_EQ(E.mono_mul(nz, nz), E.reduced_norm(z2));
    EXPECT_EQ(E.reduced_norm(z2), E.mono_mul(z2, z2));
    // Field norm GF(9) -> GF(3) by enumerating conjugates.
    for (Elt c = 1; c < F.size(); ++c) EXPECT_EQ(E.reduced_norm(E.scalar(c)).c, F.mul(c, F.pow(c, 3)));
    Monomial t = E.central_element({2});
    EXPECT_EQ(E.reduced_norm(t), E.mono_pow(t, 2));
}

TEST(ReducedNorm, Multiplicative) {
    std::mt19937_64 rng(9);
    for (auto& e : corpus::all()) {
        MonomialGradedRing E(e.data);
        for (int i = 0; i < 10; ++i) {
            Degree d1(E.rank()), d2(E.rank());
            for (auto& x : d1) x = static_cast<std::int64_t>(rng() % 5) - 2;
            for (auto& x : d2) x = static_cast<std::int64_t>(rng() % 5) - 2;
            Monomial a{E.field().exp(static_cast<std::int64_t>(rng() % E.field().order())), d1};
            Monomial b{E.field().exp(static_cast<std::int64_t>(rng() % E.field().order())), d2};
            Monomial nab = E.reduced_norm(E.mono_mul(a, b));
            ASSERT_EQ(nab, E.mono_mul(E.reduced_norm(a), E.reduced_norm(b))) << e.name;
            ASSERT_TRUE(E.is_central(nab)) << e.name;
            ASSERT_EQ(nab.deg, degree_scale(degree_add(d1, d2), E.index())) << e.name;
        }
    }
}

TEST(LeadingTerm, Examples) {
    auto E = gf9_ring();
    GradedElement z = GradedElement::from(E.z(0));
    EXPECT_EQ(leading_term(z), z);
    GradedElement s = E.add(GradedElement::from(E.one()), z);
    EXPECT_EQ(leading_term(s), GradedElement::from(E.one()));
    EXPECT_THROW(leading_term(GradedElement(1)), ZeroElementError);
}

TEST(LeadingTerm, Multiplicative) {
    std::mt19937_64 rng(21);
    auto E = q5_symbol_ring();
    auto rnd = [&] {
        GradedElement s(2);
        const int terms = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < terms; ++k) {
            Degree d{static_cast<std::int64_t>(rng() % 5) - 2, static_cast<std::int64_t>(rng() % 5) - 2};
            s.add_term(E.field(), d, E.field().exp(static_cast<std::int64_t>(rng() % 4)));
        }
        return s;
    };
    for (int i = 0; i < 100; ++i) {
        GradedElement a = rnd(), b = rnd();
        EXPECT_EQ(leading_term(E.multiply(a, b)), E.multiply(leading_term(a), leading_term(b)));
    }
}

TEST(MonomialRing, RejectsNonCentralPowers) {
    EXPECT_THROW(MonomialGradedRing({5, 1, {0, 0}, {2, 2}, {0, 0}, {{0, 1}, {3, 0}}}), InvalidStructureError);
}
