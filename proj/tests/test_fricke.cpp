#include "smplab/fricke.hpp"
#include "smplab/regions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace smplab;

namespace {

MatrixPair integer_pair(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-3, 3);
    auto m = [&] {
        return Mat2{static_cast<double>(d(rng)), static_cast<double>(d(rng)), static_cast<double>(d(rng)),
                    static_cast<double>(d(rng))};
    };
    return {m(), m()};
}

} // namespace

TEST(Fricke, SmallWords)
{
    EXPECT_EQ(fricke_poly(Word("0")).str(), "x");
    EXPECT_EQ(fricke_poly(Word("1")).str(), "y");
    EXPECT_EQ(fricke_poly(Word("01")).str(), "z");
    EXPECT_EQ(fricke_poly(Word("00")), Poly5::x() * Poly5::x() - 2 * Poly5::u());
    EXPECT_EQ(fricke_poly(Word("001")), Poly5::x() * Poly5::z() - Poly5::y() * Poly5::u());
    EXPECT_EQ(fricke_poly(Word("011")), Poly5::y() * Poly5::z() - Poly5::x() * Poly5::v());
}

TEST(Fricke, ExactOnIntegerPairs)
{
    // Integer entries keep every trace exactly representable up to length 12.
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const MatrixPair p = integer_pair(rng);
        const FiveTuple t = five_tuple(p);
        for (std::size_t n = 1; n <= 9; ++n) {
            for (const Word& w : lyndon_words(n)) {
                EXPECT_EQ(evaluate(fricke_poly(w), t), word_product(p, w).trace()) << w;
            }
        }
    }
}

TEST(Fricke, MatchesTracesOnRandomPairs)
{
    PairSampler sampler(21, 0, SampleDistribution::Normal);
    for (int trial = 0; trial < 200; ++trial) {
        const MatrixPair p = sampler.pair();
        const FiveTuple t = five_tuple(p);
        const double s = std::max({1.0, operator_norm_2(p.a), operator_norm_2(p.b)});
        for (const Word& w : lyndon_words(8)) {
            const double scale = std::pow(s, static_cast<double>(w.size()));
            EXPECT_NEAR(evaluate(fricke_poly(w), t), word_product(p, w).trace(), 1e-9 * scale) << w;
        }
    }
}

TEST(Fricke, RotationAndReversalInvariant)
{
    for (const Word& w : lyndon_words(10)) {
        const Poly5 f = fricke_poly(w);
        EXPECT_EQ(fricke_poly(w.rotated(3)), f);
        std::string r = w.str();
        std::reverse(r.begin(), r.end());
        EXPECT_EQ(fricke_poly(Word(r)), f) << w;
    }
}

TEST(Fricke, MonomialLawAtZeroDeterminants)
{
    for (std::size_t n = 1; n <= 14; ++n) {
        for (const Word& w : lyndon_words(n)) {
            EXPECT_EQ(monomial_at_uv0(w), signature_monomial(signature(w))) << w;
        }
    }
}

TEST(Fricke, MonomialLawNumerically)
{
    // Rank-one pairs: u = v = 0, so tr W = x^{m-l} y^{k-l} z^l.
    PairSampler sampler(22, 0, SampleDistribution::Normal);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec2 a1{sampler.entry(), sampler.entry()}, a2{sampler.entry(), sampler.entry()};
        const Vec2 b1{sampler.entry(), sampler.entry()}, b2{sampler.entry(), sampler.entry()};
        const MatrixPair p{outer(a1, a2), outer(b1, b2)};
        const FiveTuple t = five_tuple(p);
        for (const Word& w : lyndon_words(7)) {
            const Signature s = signature(w);
            const double expected = std::pow(t.x, static_cast<double>(s.m - s.l)) *
                                    std::pow(t.y, static_cast<double>(s.k - s.l)) *
                                    std::pow(t.z, static_cast<double>(s.l));
            const double scale = std::pow(1.0 + p.a.max_abs() + p.b.max_abs(), 2.0 * static_cast<double>(w.size()));
            EXPECT_NEAR(word_product(p, w).trace(), expected, 1e-10 * scale) << w;
        }
    }
}

TEST(Fricke, MonomialRequiresPrimitiveWord)
{
    EXPECT_THROW(monomial_at_uv0(Word("0101")), precondition_error);
}

TEST(MultiplicationTable, ReproducesMatrixProducts)
{
    PairSampler sampler(23, 0, SampleDistribution::Normal);
    for (int trial = 0; trial < 1000; ++trial) {
        const MatrixPair p = sampler.pair();
        const double s = 1.0 + p.a.max_abs() + p.b.max_abs();
        EXPECT_LE(multiplication_table_error(p), 1e-12 * std::pow(s, 4.0));
    }
}

TEST(MultiplicationTable, ProductOfWordElementsIsConcatenation)
{
    for (const Word& w : lyndon_words(5)) {
        for (const Word& v : lyndon_words(4)) {
            EXPECT_EQ(word_element(w) * word_element(v), word_element(w + v));
        }
    }
}

TEST(Evaluate, DyadicEvaluationIsExactForDyadicInputs)
{
    // (x - 2^-30)^... : a polynomial with heavy cancellation evaluated at dyadics.
    const Poly5 f = Poly5::x() * Poly5::x() - 2 * Poly5::x() * Poly5::y() + Poly5::y() * Poly5::y();
    const double x = 1.0 + std::ldexp(1.0, -30);
    const double y = 1.0;
    EXPECT_EQ(evaluate(f, FiveTuple{x, y, 0, 0, 0}), std::ldexp(1.0, -60));
}
