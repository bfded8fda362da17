#include <gtest/gtest.h>

#include <algorithm>

#include "gdiv/sampling.hpp"
#include "gdiv/skewpoly.hpp"

using namespace gdiv;
using Elt = FiniteField::Elt;

namespace {

// GF(9)[x; Frob]: sigma(c) = c^3, ell = 2, center GF(3)[x^2].
SkewPolyRing gf9() { return SkewPolyRing(3, 2, 1); }

SkewPoly linear(const FiniteField& F, Elt c) { return SkewPoly({F.neg(c), 1}); }

Elt cube(const FiniteField& F, Elt c) { return F.mul(c, F.mul(c, c)); }

}  // namespace

TEST(RightDivide, Examples) {
    auto R = gf9();
    const auto& F = R.field();
    SkewPoly g({2, 5, 1});
    auto [q1, r1] = R.right_divide(g, g);
    EXPECT_EQ(q1, SkewPoly::constant(1));
    EXPECT_TRUE(r1.is_zero());
    SkewPoly small({3, 1});
    auto [q2, r2] = R.right_divide(small, g);
    EXPECT_TRUE(q2.is_zero());
    EXPECT_EQ(r2, small);
    for (Elt c = 1; c < F.size(); ++c) {
        // x^2 = (x + sigma(c))(x - c) + sigma(c) c
        auto [q, r] = R.right_divide(R.x_pow(2), linear(F, c));
        EXPECT_EQ(q, SkewPoly({cube(F, c), 1}));
        EXPECT_EQ(r, SkewPoly::constant(F.mul(cube(F, c), c)));
    }
}

TEST(RightDivide, Reconstructs) {
    sampling::Rng rng(4);
    for (auto [q, m, s] : std::vector<std::tuple<std::uint64_t, std::int64_t, std::int64_t>>{{3, 2, 1}, {2, 3, 2}, {4, 2, 1}}) {
        SkewPolyRing R(q, m, s);
        for (int i = 0; i < 50; ++i) {
            SkewPoly f = sampling::random_nonzero(R, static_cast<int>(rng() % 7), rng);
            SkewPoly g = sampling::random_nonzero(R, 1 + static_cast<int>(rng() % 4), rng);
            auto [qq, r] = R.right_divide(f, g);
            EXPECT_LT(r.degree(), g.degree());
            EXPECT_EQ(R.add(R.mul(qq, g), r), f);
            EXPECT_EQ(R.mul(f, g).degree(), f.degree() + g.degree());
        }
    }
}

TEST(Factor, LinearIsMonicMultiple) {
    auto R = gf9();
    SkewPoly f({4, 7});
    auto fa = R.factor(f);
    ASSERT_EQ(fa.factors.size(), 1u);
    EXPECT_EQ(fa.unit, 7u);
    EXPECT_TRUE(fa.factors[0].is_monic());
    EXPECT_EQ(R.scale_left(fa.unit, fa.factors[0]), f);
}

TEST(Factor, XSquaredMinusOne) {
    auto R = gf9();
    const auto& F = R.field();
    // Exhaustive search: (x - a)(x - b) = x^2 - (sigma(b) + a) x + ab equals x^2 - 1 iff a = -b^3 and b^4 = 1.
    std::vector<std::pair<Elt, Elt>> solutions;
    for (Elt a = 0; a < F.size(); ++a)
        for (Elt b = 0; b < F.size(); ++b)
            if (F.add(cube(F, b), a) == 0 && F.mul(a, b) == F.neg(1)) solutions.emplace_back(a, b);
    ASSERT_EQ(solutions.size(), 4u);
    SkewPoly f({F.neg(1), 0, 1});
    auto fa = R.factor(f);
    ASSERT_EQ(fa.factors.size(), 2u);
    EXPECT_EQ(fa.unit, 1u);
    std::pair<Elt, Elt> found{F.neg(fa.factors[0].coeff(0)), F.neg(fa.factors[1].coeff(0))};
    EXPECT_NE(std::find(solutions.begin(), solutions.end(), found), solutions.end());
}

TEST(Factor, CommutativeIrreducibleStaysWhole) {
    SkewPolyRing R(3, 1, 0);
    SkewPoly f({1, 0, 1});  // x^2 + 1 has no root in GF(3)
    for (Elt c = 0; c < 3; ++c) ASSERT_NE(peval(R.field(), FPoly(std::vector<Elt>{1, 0, 1}), c), 0u);
    EXPECT_EQ(R.factor(f).factors.size(), 1u);
    EXPECT_TRUE(R.is_irreducible_exhaustive(f));
}

TEST(Factor, CentralPolynomialSplitsWhenEllIsTwo) {
    auto R = gf9();
    // y - c with c in GF(3)*: x^2 - c splits into two linear factors over GF(9)[x; Frob].
    for (Elt c : {Elt{1}, R.field().neg(1)}) {
        SkewPoly f({R.field().neg(c), 0, 1});
        auto fa = R.factor(f);
        EXPECT_EQ(fa.factors.size(), 2u);
        EXPECT_EQ(R.product(fa.factors, 0, fa.factors.size()), f);
    }
}

TEST(Factor, ProductReconstructs) {
    sampling::Rng rng(8);
    for (auto [q, m, s] : std::vector<std::tuple<std::uint64_t, std::int64_t, std::int64_t>>{{3, 2, 1}, {2, 3, 1}, {2, 2, 1}}) {
        SkewPolyRing R(q, m, s);
        for (int i = 0; i < 40; ++i) {
            SkewPoly f = sampling::random_nonzero(R, 1 + static_cast<int>(rng() % 5), rng);
            auto fa = R.factor(f);
            EXPECT_EQ(R.scale_left(fa.unit, R.product(fa.factors, 0, fa.factors.size())), f);
            for (auto& p : fa.factors) EXPECT_TRUE(R.is_irreducible_exhaustive(p));
        }
    }
}

TEST(Divisor, UnitIsEmpty) {
    auto R = gf9();
    EXPECT_TRUE(R.divisor(SkewPoly::constant(5)).empty());
}

TEST(Divisor, Additive) {
    sampling::Rng rng(12);
    auto R = gf9();
    for (int i = 0; i < 60; ++i) {
        SkewPoly f = sampling::random_nonzero(R, 1 + static_cast<int>(rng() % 4), rng);
        SkewPoly g = sampling::random_nonzero(R, 1 + static_cast<int>(rng() % 4), rng);
        Divisor d = R.divisor(f);
        divisor_add(d, R.divisor(g));
        EXPECT_EQ(d, R.divisor(R.mul(f, g)));
        std::int64_t total = 0;
        for (auto& [label, mult] : R.divisor(f)) total += mult * label.degree();
        EXPECT_EQ(total, f.degree());
    }
}

TEST(ReducedNorm, LinearAndMultiplicative) {
    auto R = gf9();
    const auto& F = R.field();
    // Nrd(x) = -y, the determinant of left multiplication by x on the basis {1, x}.
    EXPECT_EQ(R.nrd(R.x_pow(1)), FPoly(std::vector<Elt>{0, F.neg(1)}));
    for (Elt c = 1; c < F.size(); ++c) {
        // (x + sigma(c))(x - c) = y - sigma(c) c, with the sign fixed by Nrd(x) = -y.
        FPoly n = R.nrd(linear(F, c));
        EXPECT_EQ(n, FPoly(std::vector<Elt>{F.mul(cube(F, c), c), F.neg(1)}));
    }
    sampling::Rng rng(2);
    for (int i = 0; i < 40; ++i) {
        SkewPoly f = sampling::random_nonzero(R, 1 + static_cast<int>(rng() % 4), rng);
        SkewPoly g = sampling::random_nonzero(R, 1 + static_cast<int>(rng() % 4), rng);
        EXPECT_EQ(R.nrd(R.mul(f, g)), pmul(F, R.nrd(f), R.nrd(g)));
        EXPECT_EQ(R.nrd(f).degree(), f.degree());
    }
}

TEST(Similar, Examples) {
    auto R = gf9();
    const auto& F = R.field();
    SkewPoly f = linear(F, 2);
    auto same = R.similar(f, f);
    ASSERT_TRUE(same);
    EXPECT_EQ(same->first, SkewPoly::constant(1));
    // (x - c) d = sigma(d) (x - c d / sigma(d)).
    const Elt c = 2, d = 5;
    SkewPoly g = linear(F, F.div(F.mul(c, d), cube(F, d)));
    auto w = R.similar(f, g);
    ASSERT_TRUE(w);
    EXPECT_EQ(R.mul(f, w->first), R.mul(w->second, g));
    // Different central norms c^4 rule out similarity.
    Elt other = 0;
    for (Elt e = 1; e < F.size(); ++e)
        if (F.pow(e, 4) != F.pow(c, 4)) other = e;
    ASSERT_NE(other, 0u);
    EXPECT_FALSE(R.similar(f, linear(F, other)));
}

TEST(KernelReduction, Examples) {
    auto R = gf9();
    SkewPoly f({1, 2, 1});
    auto same = R.reduce_kernel_element(f, f);
    EXPECT_EQ(same.d, 1u);
    SkewPoly g({2, 3, 1});
    auto scaled = R.reduce_kernel_element(R.scale_left(6, g), g);
    EXPECT_EQ(scaled.d, 6u);
    EXPECT_THROW(R.reduce_kernel_element(SkewPoly({1, 1}), SkewPoly({2, 1, 1})), DivisorMismatchError);
}

TEST(KernelReduction, PermutedFactorsReplay) {
    sampling::Rng rng(31);
    auto R = gf9();
    for (int i = 0; i < 20; ++i) {
        SkewPoly f = sampling::random_nonzero(R, 1 + static_cast<int>(rng() % 5), rng);
        auto fa = R.factor(f);
        std::shuffle(fa.factors.begin(), fa.factors.end(), rng);
        SkewPoly g = R.scale_left(sampling::random_unit(R.field(), rng), R.product(fa.factors, 0, fa.factors.size()));
        auto kr = R.reduce_kernel_element(f, g);
        int last = f.degree() + 1;
        for (auto& st : kr.certificate) {
            EXPECT_TRUE(SkewPolyRing::replay(R, st));
            EXPECT_LT(st.f.degree(), last);
            last = st.f.degree();
        }
    }
}

TEST(NrdDivisor, EmptyAndRhoRelation) {
    auto R = gf9();
    EXPECT_TRUE(R.nrd_divisor({}).empty());
    for (auto& c : R.simple_classes_up_to(3)) {
        Divisor one{{c.label, 1}};
        Divisor expect;
        divisor_add(expect, one, R.ell());
        EXPECT_EQ(R.rho(R.nrd_divisor(one)), expect) << R.format(c.label);
    }
}

TEST(NrdDivisor, LinearClass) {
    auto R = gf9();
    const auto& F = R.field();
    // S = T/T(x - c): bound y - c^4, and dimension count gives n_S = 1.
    SkewPoly p = linear(F, 2);
    FPoly bound({F.neg(F.pow(2, 4)), 1});
    CentralDivisor nd = R.nrd_divisor(R.divisor(p));
    EXPECT_EQ(nd, (CentralDivisor{{bound, 1}}));
}

TEST(Format, RoundTrip) {
    sampling::Rng rng(6);
    auto R = gf9();
    for (int i = 0; i < 30; ++i) {
        SkewPoly f = sampling::random_nonzero(R, static_cast<int>(rng() % 5), rng);
        EXPECT_EQ(R.parse(R.format(f)), f);
    }
}
