#include <gtest/gtest.h>

#include "gdiv/matdiv.hpp"
#include "gdiv/sampling.hpp"

using namespace gdiv;

namespace {

// GF(9)((x; Frob)), ell = 2.
TwistedRing gf9_ring() { return TwistedRing(FiniteField::get(9), 1); }

TMatrix random_one_plus_j(const TwistedRing& C, const std::vector<std::int64_t>& g, std::int64_t prec, sampling::Rng& rng) {
    const std::size_t n = g.size();
    TMatrix m(n, std::vector<Series>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::int64_t lo = i == j ? 1 : g[i] - g[j] + 1;
            m[i][j] = sampling::random_series(C.field_ptr(), lo, prec + std::max<std::int64_t>(0, lo), false, rng);
            if (i == j) m[i][j] = m[i][j] + C.one(prec);
        }
    return m;
}

}  // namespace

TEST(TwistedRing, InverseAndNorm) {
    sampling::Rng rng(7);
    auto C = gf9_ring();
    const FiniteField& F = C.field();
    for (int i = 0; i < 50; ++i) {
        Series a = sampling::random_series(C.field_ptr(), static_cast<std::int64_t>(rng() % 5) - 2, 24, true, rng);
        Series b = sampling::random_series(C.field_ptr(), static_cast<std::int64_t>(rng() % 3), 24, true, rng);
        Series p = C.mul(a, C.inv(a));
        EXPECT_TRUE(agree_to(p, C.one(p.prec()), p.prec()));
        Series l = C.center_nrd(C.mul(a, b)), r = C.center_nrd(a) * C.center_nrd(b);
        EXPECT_TRUE(agree_to(l, r, std::min(l.prec(), r.prec())));
    }
    // x c = sigma(c) x with sigma(c) = c^3.
    const FiniteField::Elt c = F.generator();
    EXPECT_EQ(C.mul(C.x(24), C.scalar(c, 24)).coeff(1), F.pow(c, 3));
    // Norms of scalars are field norms c * c^3; x^2 is central so Nrd(x^2) = (x^2)^2 in y = x^2.
    for (FiniteField::Elt e = 1; e < F.size(); ++e) EXPECT_EQ(C.center_nrd(C.scalar(e, 24)).coeff(0), F.pow(e, 4));
    Series nx = C.center_nrd(C.x(24));
    Series nx2 = C.center_nrd(C.mul(C.x(24), C.x(24)));
    EXPECT_TRUE(agree_to(nx * nx, nx2, std::min((nx * nx).prec(), nx2.prec())));
    EXPECT_EQ(*nx2.valuation(), 2);
}

TEST(Membership, Examples) {
    auto C = gf9_ring();
    std::vector<std::int64_t> g{0, 1};
    EXPECT_EQ(membership(C, {g, tmat_identity(C, 2, 24)}), Membership::InOnePlusJ);
    TMatrix z(2, std::vector<Series>(2, C.zero(24)));
    EXPECT_EQ(membership(C, {g, z}), Membership::InJ);
    // a_12 with w(a_12) = gamma_1 - gamma_2 sits on the boundary of R.
    TMatrix b = z;
    b[0][1] = Series::monomial(C.field_ptr(), 1, g[0] - g[1], 24);
    EXPECT_EQ(membership(C, {g, b}), Membership::InR);
    b[0][1] = Series::monomial(C.field_ptr(), 1, g[0] - g[1] - 1, 24);
    EXPECT_EQ(membership(C, {g, b}), Membership::Outside);
}

TEST(Membership, RingAndIdealClosure) {
    sampling::Rng rng(13);
    auto C = gf9_ring();
    std::vector<std::int64_t> g{0, 2, -1};
    for (int i = 0; i < 30; ++i) {
        TMatrix a = random_one_plus_j(C, g, 24, rng), b = random_one_plus_j(C, g, 24, rng);
        for (std::size_t k = 0; k < 3; ++k) b[k][k] = b[k][k] - C.one(24);
        ASSERT_EQ(membership(C, {g, b}), Membership::InJ);
        EXPECT_EQ(membership(C, {g, tmat_mul(C, a, a)}), Membership::InOnePlusJ);
        EXPECT_EQ(membership(C, {g, tmat_mul(C, a, b)}), Membership::InJ);
        EXPECT_EQ(membership(C, {g, tmat_mul(C, b, a)}), Membership::InJ);
    }
}

TEST(ReduceOnePlusJ, IdentityAndSizeOne) {
    auto C = gf9_ring();
    auto r = reduce_one_plus_J(C, {{0, 1}, tmat_identity(C, 2, 24)});
    EXPECT_TRUE(r.transcript.empty());
    EXPECT_TRUE(tmat_agree(r.t_prime, tmat_identity(C, 2, 24)));
    TMatrix one{{C.one(24) + C.x(24)}};
    auto s = reduce_one_plus_J(C, {{0}, one});
    EXPECT_TRUE(s.transcript.empty());
    EXPECT_TRUE(tmat_agree(s.t_prime, one));
}

TEST(ReduceOnePlusJ, RandomSizeThree) {
    sampling::Rng rng(5);
    auto C = gf9_ring();
    for (int i = 0; i < 50; ++i) {
        std::vector<std::int64_t> g{0, static_cast<std::int64_t>(rng() % 4), -static_cast<std::int64_t>(rng() % 3)};
        TMatrix m = random_one_plus_j(C, g, 24, rng);
        auto r = reduce_one_plus_J(C, {g, m});
        TMatrix cur = m;
        for (auto& Y : r.transcript) {
            EXPECT_EQ(membership(C, {g, Y}), Membership::InOnePlusJ);
            cur = tmat_mul(C, Y, cur);
            EXPECT_EQ(membership(C, {g, cur}), Membership::InOnePlusJ);
        }
        EXPECT_TRUE(tmat_agree(cur, r.t_prime));
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < a; ++b) EXPECT_TRUE(r.t_prime[a][b].is_zero());
            EXPECT_GT(C.w(r.t_prime[a][a] - C.one(24)), 0);
        }
    }
}

TEST(ReduceOnePlusJ, RejectsNonMembers) {
    auto C = gf9_ring();
    TMatrix z(2, std::vector<Series>(2, C.zero(24)));
    EXPECT_THROW(reduce_one_plus_J(C, {{0, 1}, z}), ContainmentError);
}

TEST(DiagonalConsistency, Examples) {
    auto C = gf9_ring();
    auto one = ddet_diagonal_consistency(C, C.one(24), 2);
    EXPECT_EQ(one.ddet_valuation, 0);
    EXPECT_TRUE(one.nrd_match);
    auto x = ddet_diagonal_consistency(C, C.x(24), 2);
    EXPECT_EQ(x.ddet_valuation, 2);
    EXPECT_EQ(x.power_valuation, 2);
    EXPECT_TRUE(x.valuation_match);
    EXPECT_TRUE(x.nrd_match);
}

TEST(DiagonalConsistency, RandomMixers) {
    sampling::Rng rng(19);
    auto C = gf9_ring();
    for (int i = 0; i < 30; ++i) {
        Series a = sampling::random_series(C.field_ptr(), static_cast<std::int64_t>(rng() % 5) - 2, 24, true, rng);
        auto mixers = sampling::random_unipotent_pair(C, 3, 24, rng);
        auto r = ddet_diagonal_consistency(C, a, 3, mixers);
        EXPECT_TRUE(r.valuation_match);
        EXPECT_EQ(r.ddet_valuation, 3 * *a.valuation());
        EXPECT_TRUE(r.nrd_match);
    }
}

TEST(Congruence, Examples) {
    auto D = gf9_ring();
    CongruenceModel M(D, CongruenceModel::standard_base(D, 24));
    auto one = M.witness(D.one(24));
    EXPECT_TRUE(one.S_in_J);
    EXPECT_TRUE(one.in_one_plus_MC);
    auto w = M.witness(D.one(24) + D.x(24));
    EXPECT_TRUE(w.S_in_J);
    EXPECT_TRUE(w.in_one_plus_MC);
    EXPECT_GT(w.diagonal_value, 0);
    EXPECT_THROW(CongruenceModel(D, {D.one(24), D.one(24) + Series::monomial(D.field_ptr(), 1, 2, 24)}), SplittingBaseError);
    EXPECT_THROW(M.witness(D.x(24)), ContainmentError);
}

TEST(Congruence, CoordinatesReconstruct) {
    sampling::Rng rng(29);
    auto D = TwistedRing(FiniteField::get(27), 1);
    const std::int64_t l = D.sigma_order();
    ASSERT_EQ(l, 3);
    std::vector<Series> base{D.x(48), D.one(48) + D.x(48).shift(1), D.mul(D.x(48), D.x(48)).shift(3)};
    CongruenceModel M(D, base);
    for (int i = 0; i < 20; ++i) {
        Series d = sampling::random_series(D.field_ptr(), 0, 30, true, rng);
        auto co = M.coordinates(d);
        // sum_j c_j(y) b_j with y = x^3.
        Series sum = D.zero(30);
        for (std::size_t j = 0; j < base.size(); ++j) {
            const std::int64_t v0 = co[j].val_or_prec();
            Series cj = D.zero(30);
            for (std::int64_t k = v0; k < co[j].prec(); ++k)
                cj = cj + Series::monomial(D.field_ptr(), co[j].coeff(k), 3 * k, 3 * co[j].prec());
            sum = sum + D.mul(cj, base[j]);
        }
        EXPECT_GE((sum - d).val_or_prec(), 28);
    }
}

TEST(Congruence, JMembershipMatchesValuationGain) {
    sampling::Rng rng(37);
    auto D = TwistedRing(FiniteField::get(16), 1);
    const std::int64_t l = D.sigma_order();
    ASSERT_EQ(l, 4);
    std::vector<Series> base;
    for (std::int64_t j = 0; j < l; ++j) base.push_back(sampling::random_series(D.field_ptr(), j + l, 96 + j + l, true, rng));
    CongruenceModel M(D, base);
    for (int i = 0; i < 40; ++i) {
        const std::int64_t v = static_cast<std::int64_t>(rng() % 3);
        Series m = sampling::random_series(D.field_ptr(), v, 96, true, rng);
        bool gains = true;
        for (auto& b : base) gains = gains && D.w(D.mul(b, m)) > D.w(b);
        EXPECT_EQ(membership(M.C(), {M.gamma(), M.right_mult_matrix(m)}) == Membership::InJ, gains);
        EXPECT_EQ(gains, v > 0);
    }
}
