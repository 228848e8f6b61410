#include "smplab/jsr.hpp"
#include "smplab/regions.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace smplab;

namespace {

// Plain oracle over all words of length exactly k: max rho^(1/k) over the
// primitive ones, max |.|^(1/k) over all of them.
std::pair<double, double> exhaustive_length(const MatrixPair& p, std::size_t k)
{
    double rho = 0.0;
    double norm = 0.0;
    for (std::uint64_t code = 0; code < (1ull << k); ++code) {
        Mat2 m = Mat2::identity();
        for (std::size_t i = 0; i < k; ++i) {
            m = m * p.letter(static_cast<int>((code >> (k - 1 - i)) & 1));
        }
        std::string letters;
        for (std::size_t i = 0; i < k; ++i) {
            letters.push_back((code >> (k - 1 - i)) & 1 ? '1' : '0');
        }
        if (is_primitive(Word(letters))) {
            rho = std::max(rho, std::pow(spectral_radius(m), 1.0 / static_cast<double>(k)));
        }
        norm = std::max(norm, std::pow(operator_norm_2(m), 1.0 / static_cast<double>(k)));
    }
    return {rho, norm};
}

} // namespace

TEST(BruteForce, MatchesExhaustiveOracle)
{
    PairSampler sampler(41, 0, SampleDistribution::Normal);
    for (int trial = 0; trial < 30; ++trial) {
        const MatrixPair p = sampler.pair();
        const BoundsReport r = brute_force(p, 10);
        ASSERT_EQ(r.per_length.size(), 10u);
        double lower = 0.0;
        double upper = INFINITY;
        for (std::size_t k = 1; k <= 10; ++k) {
            const auto [rho, norm] = exhaustive_length(p, k);
            const LengthRow& row = r.per_length[k - 1];
            EXPECT_NEAR(row.best_root, rho, 1e-10 * rho + 1e-300);
            EXPECT_NEAR(row.max_norm_root, norm, 1e-10 * norm);
            lower = std::max(lower, rho);
            upper = std::min(upper, norm);
        }
        EXPECT_NEAR(r.lower, lower, 1e-10 * lower);
        EXPECT_NEAR(r.upper, upper, 1e-10 * upper);
        EXPECT_LE(r.lower, r.upper * (1.0 + 1e-12));
    }
}

TEST(BruteForce, SandwichHoldsPerLength)
{
    PairSampler sampler(42, 0, SampleDistribution::Normal);
    for (int trial = 0; trial < 40; ++trial) {
        const BoundsReport r = brute_force(sampler.pair(), 12);
        for (const LengthRow& row : r.per_length) {
            EXPECT_LE(row.best_root, row.max_norm_root * (1.0 + 1e-12));
            EXPECT_LE(row.best_root, r.upper * (1.0 + 1e-12));
        }
        for (std::size_t k = 1; 2 * k <= r.per_length.size(); ++k) {
            EXPECT_LE(r.per_length[2 * k - 1].max_norm_root, r.per_length[k - 1].max_norm_root * (1.0 + 1e-12));
        }
    }
}

TEST(BruteForce, ThreadCountDoesNotChangeResult)
{
    PairSampler sampler(43, 0, SampleDistribution::Normal);
    const MatrixPair p = sampler.pair();
    const BoundsReport one = brute_force(p, 14, EuclideanNorm{}, BruteForceOptions{1e-9, 1});
    const BoundsReport four = brute_force(p, 14, EuclideanNorm{}, BruteForceOptions{1e-9, 4});
    EXPECT_EQ(one.lower, four.lower);
    EXPECT_EQ(one.upper, four.upper);
    EXPECT_EQ(one.best_word, four.best_word);
    EXPECT_EQ(one.ties, four.ties);
}

TEST(BruteForce, BestWordIsLyndonAndScaleInvariant)
{
    PairSampler sampler(44, 0, SampleDistribution::Normal);
    for (int trial = 0; trial < 20; ++trial) {
        const MatrixPair p = sampler.pair();
        const BoundsReport r = brute_force(p, 10);
        EXPECT_TRUE(is_lyndon(r.best_word));
        const BoundsReport scaled = brute_force({1e6 * p.a, 1e6 * p.b}, 10);
        EXPECT_NEAR(scaled.lower, 1e6 * r.lower, 1e-9 * scaled.lower);
        EXPECT_EQ(scaled.best_word, r.best_word);
    }
}

TEST(BruteForce, GoldenPairIsPinned)
{
    const MatrixPair p{{1, 1, 0, 1}, {1, 0, 1, 1}};
    const BoundsReport r = brute_force(p, 12);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    EXPECT_EQ(r.best_word.str(), "01");
    EXPECT_NEAR(r.lower, phi, 1e-13);
    EXPECT_NEAR(r.upper, phi, 1e-12);
    const SmpCandidate c = certify(p);
    EXPECT_TRUE(c.certified);
    EXPECT_EQ(c.word.str(), "01");
}

TEST(BruteForce, RejectsOversizedSearch)
{
    const MatrixPair p{{1, 1, 0, 1}, {1, 0, 1, 1}};
    EXPECT_THROW(brute_force(p, 25), precondition_error);
    EXPECT_THROW(brute_force(p, 0), precondition_error);
}

TEST(Gelfand, DominantPowerWins)
{
    const MatrixPair p{Mat2::diag(2.0, 0.5), {1, 1, 1, 1}};
    const GelfandScan s = gelfand_scan({p.a, {0.1, 0.1, 0.1, 0.1}}, ScanDirection::APowB);
    EXPECT_TRUE(s.terminated);
    EXPECT_EQ(s.best_n, -1);
    EXPECT_NEAR(s.value, 2.0, 1e-12);
}

TEST(Gelfand, ValueMatchesWordRoot)
{
    PairSampler sampler(45, 0, SampleDistribution::Normal);
    int scanned = 0;
    for (int trial = 0; trial < 2000 && scanned < 100; ++trial) {
        const MatrixPair p = sampler.pair();
        if (p.a.det() <= 0.0 || p.b.det() >= 0.0) {
            continue;
        }
        ++scanned;
        const GelfandScan s = gelfand_scan(p, ScanDirection::APowB);
        ASSERT_TRUE(s.terminated);
        const double root = std::exp(log_spectral_radius(p, s.word()) / static_cast<double>(s.word().size()));
        EXPECT_NEAR(s.value, root, 1e-10 * root);
        // No A^m B with m below the scan horizon does better.
        for (std::size_t m = 0; m < std::min<std::size_t>(s.scanned, 40); ++m) {
            const Word w = Word(std::string(m, '0') + "1");
            const double r = std::exp(log_spectral_radius(p, w) / static_cast<double>(m + 1));
            EXPECT_LE(r, std::max(s.value, spectral_radius(p.a)) * (1.0 + 1e-10));
        }
    }
    EXPECT_EQ(scanned, 100);
}

TEST(Certify, CrossPairsPickALetter)
{
    const SmpCandidate c = certify({{2, 0, 0, 0.5}, {1.25, 0.75, 0.75, 1.25}});
    EXPECT_TRUE(c.certified);
    EXPECT_EQ(c.certificate, "cross");
    EXPECT_EQ(c.word.size(), 1u);
    EXPECT_NEAR(*c.jsr, 2.0, 1e-12);
}

TEST(Certify, SoundAgainstBruteForce)
{
    // Whenever a certificate is issued, exhaustive search cannot beat it.
    PairSampler sampler(46, 0, SampleDistribution::Normal);
    int certified = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const MatrixPair p = sampler.pair();
        const SmpCandidate c = certify(p);
        const BoundsReport bf = brute_force(p, 12);
        EXPECT_LE(bf.lower, c.upper * (1.0 + 1e-9));
        if (c.certified) {
            ++certified;
            ASSERT_TRUE(c.jsr.has_value());
            EXPECT_LE(bf.lower, *c.jsr * (1.0 + 1e-9)) << c.certificate << " " << c.word;
            EXPECT_NEAR(std::exp(log_spectral_radius(p, c.word) / static_cast<double>(c.word.size())), *c.jsr,
                        1e-9 * *c.jsr);
        }
    }
    EXPECT_GT(certified, 80);
}

TEST(Certify, SwapRelabelsLetters)
{
    PairSampler sampler(47, 0, SampleDistribution::Normal);
    for (int trial = 0; trial < 60; ++trial) {
        const MatrixPair p = sampler.pair();
        const SmpCandidate c = certify(p);
        const SmpCandidate s = certify(p.swapped());
        EXPECT_NEAR(c.value, s.value, 1e-9 * c.value);
        EXPECT_EQ(c.certified, s.certified);
    }
}

TEST(Certify, RotationExceptionWithholdsCertificate)
{
    // A is a quarter turn scaled by 2; B is rank one with a small image.
    const MatrixPair p{{0, -2, 2, 0}, {0.1, 0.0, 0.0, -0.05}};
    const SmpCandidate c = certify(p);
    ASSERT_EQ(c.certificate, "mix");
    EXPECT_FALSE(c.certified);
    EXPECT_NE(c.note.find("M^4"), std::string::npos);
}

TEST(RotationOrder, DetectsFiniteOrder)
{
    EXPECT_EQ(rotation_order({0, -3, 3, 0}, 1e-12), 4);
    const double t = 2.0 * M_PI / 5.0;
    EXPECT_EQ(rotation_order({std::cos(t), -std::sin(t), std::sin(t), std::cos(t)}, 1e-12), 5);
    EXPECT_FALSE(rotation_order({std::cos(1.0), -std::sin(1.0), std::sin(1.0), std::cos(1.0)}, 1e-12).has_value());
    EXPECT_FALSE(rotation_order(Mat2::diag(2, 1), 1e-12).has_value());
}
