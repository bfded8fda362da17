#include <gtest/gtest.h>

#include <fstream>

#include "corpus.hpp"
#include "gdiv/io.hpp"

using namespace gdiv;
using nlohmann::json;

namespace {

json load(const std::string& name) {
    std::ifstream in(std::string(GDIV_EXAMPLES_DIR) + "/" + name);
    return json::parse(in);
}

}  // namespace

TEST(Io, DescriptorExamples) {
    auto d = io::descriptor_from(load("tot_ram_q5_n4_e2.json"));
    EXPECT_EQ(d.gamma_rank, 4u);
    EXPECT_EQ(d.index, 4);
    EXPECT_EQ(classify(d), Classification::TotallyRamified);
    EXPECT_EQ(classify(io::descriptor_from(load("unramified.json"))), Classification::Unramified);
}

TEST(Io, RingRoundTrip) {
    for (auto& e : corpus::all()) {
        MonomialGradedRing E(e.data);
        json j = io::ring_to(E);
        MonomialRingData back = io::ring_from(j);
        EXPECT_EQ(back.q, e.data.q);
        EXPECT_EQ(back.m, e.data.m);
        EXPECT_EQ(back.sigma, e.data.sigma);
        EXPECT_EQ(back.r, e.data.r);
        EXPECT_EQ(back.b, e.data.b);
        EXPECT_EQ(back.u, e.data.u);
    }
}

TEST(Io, RingRejectsForeignModulus) {
    json j = load("ring_gf9.json");
    j["modulus"] = {1, 0};  // x^2 + 1 over GF(3) is not primitive
    EXPECT_THROW(io::ring_from(j), UnsupportedCaseError);
    j.erase("modulus");
    j.erase("r");
    EXPECT_THROW(io::ring_from(j), InputError);
}

TEST(Io, GroupAndMatrix) {
    json g = io::group_to(FiniteAbelianGroup::from_orders({2, 4}));
    EXPECT_EQ(g["invariant_factors"], json({2, 4}));
    IntMatrix m{{1, -2}, {3, 4}};
    EXPECT_EQ(io::matrix_from(io::matrix_to(m), 2), m);
    EXPECT_THROW(io::matrix_from(json::parse("[[1,2],[3]]"), 2), InputError);
}

TEST(Io, Rationals) {
    EXPECT_EQ(io::rational_from(json(3)), Rational(3));
    EXPECT_EQ(io::rational_from(json("1/2")), Rational(1, 2));
    EXPECT_EQ(io::rational_from(json("-4/6")), Rational(-2, 3));
    EXPECT_THROW(io::rational_from(json("1/0")), InputError);
    EXPECT_THROW(io::rational_from(json("abc")), InputError);
}

TEST(Io, SeriesPolynomial) {
    auto F = FiniteField::get(5);
    SPoly f = io::spoly_from(F, json::parse(R"(["-1 - t", 0, 1])"), 32);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0].coeff(0), 4u);
    EXPECT_EQ(f[0].coeff(1), 4u);
    EXPECT_TRUE(f[1].is_zero());
    EXPECT_THROW(io::spoly_from(F, json::parse("[7, 1]"), 32), InputError);
}
