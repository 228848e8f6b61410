#include "smplab/words.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace smplab;

namespace {

std::string bits(std::uint64_t code, std::size_t n)
{
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        s.push_back((code >> (n - 1 - i)) & 1 ? '1' : '0');
    }
    return s;
}

// Lyndon by definition: strictly smaller than every proper rotation.
bool lyndon_by_rotations(const std::string& s)
{
    for (std::size_t k = 1; k < s.size(); ++k) {
        if (!(s < s.substr(k) + s.substr(0, k))) {
            return false;
        }
    }
    return true;
}

// Balanced: any two factors of equal length differ by at most one in their
// count of ones; cyclic reads factors of the circular word.
bool balanced_by_factors(const std::string& s, bool cyclic = true)
{
    const std::string ss = s + s;
    const std::size_t starts = s.size();
    for (std::size_t len = 1; len <= s.size(); ++len) {
        int lo = 1 << 30;
        int hi = -1;
        for (std::size_t i = 0; i < starts && (cyclic || i + len <= s.size()); ++i) {
            const int ones = static_cast<int>(std::count(ss.begin() + i, ss.begin() + i + len, '1'));
            lo = std::min(lo, ones);
            hi = std::max(hi, ones);
        }
        if (hi - lo > 1) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST(Rational, ReducesAndOrders)
{
    EXPECT_EQ(Rational(2, 4), Rational(1, 2));
    EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_EQ(mediant(Rational(0, 1), Rational(1, 1)), Rational(1, 2));
    EXPECT_EQ(Rational::parse("6/8"), Rational(3, 4));
    EXPECT_THROW(Rational(1, 0), precondition_error);
    EXPECT_THROW(Rational::parse("a/b"), precondition_error);
}

TEST(Word, RejectsBadLetters)
{
    EXPECT_THROW(Word("012"), precondition_error);
    EXPECT_THROW(Word(""), precondition_error);
}

TEST(Christoffel, KnownWords)
{
    EXPECT_EQ(christoffel(0, 1).str(), "0");
    EXPECT_EQ(christoffel(1, 1).str(), "1");
    EXPECT_EQ(christoffel(1, 2).str(), "01");
    EXPECT_EQ(christoffel(2, 5).str(), "00101");
    EXPECT_EQ(christoffel(3, 5).str(), "01011");
    EXPECT_EQ(christoffel(1, 4).str(), "0001");
}

TEST(Christoffel, IsLowerMechanicalWordAtZero)
{
    // Independent formula: letter i is floor((i+1)p/q) - floor(ip/q).
    for (std::int64_t q = 1; q <= 30; ++q) {
        for (std::int64_t p = 0; p <= q; ++p) {
            if (std::gcd(p, q) != 1) {
                continue;
            }
            std::string expected;
            for (std::int64_t i = 0; i < q; ++i) {
                expected.push_back(((i + 1) * p / q - i * p / q) ? '1' : '0');
            }
            EXPECT_EQ(christoffel(p, q).str(), expected) << p << "/" << q;
        }
    }
}

TEST(Christoffel, WordsAreLyndonAndBalanced)
{
    for (std::int64_t q = 2; q <= 40; ++q) {
        for (std::int64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) {
                continue;
            }
            const Word w = christoffel(p, q);
            EXPECT_TRUE(lyndon_by_rotations(w.str())) << w;
            EXPECT_TRUE(balanced_by_factors(w.str())) << w;
            EXPECT_EQ(w.ones(), static_cast<std::size_t>(p));
        }
    }
}

TEST(ChristoffelTree, DepthEightEnumeratesEachWordOnce)
{
    const auto nodes = christoffel_tree(8);
    EXPECT_EQ(nodes.size(), (1u << 9) - 1);
    std::set<std::string> seen;
    for (const ChristoffelNode& node : nodes) {
        const Word w = node.word();
        EXPECT_TRUE(seen.insert(w.str()).second) << w;
        EXPECT_TRUE(is_lyndon(w)) << w;
        EXPECT_TRUE(is_sturmian_word(w).has_value()) << w;
        const auto p = static_cast<std::int64_t>(w.ones());
        const auto q = static_cast<std::int64_t>(w.size());
        EXPECT_EQ(std::gcd(p, q), 1);
        EXPECT_EQ(christoffel(p, q), w);
    }
}

TEST(ChristoffelTree, ChildrenFollowStandardFactorization)
{
    const auto nodes = christoffel_tree(5);
    for (std::size_t i = 0; 2 * i + 2 < nodes.size(); ++i) {
        const ChristoffelNode& parent = nodes[i];
        const ChristoffelNode& left = nodes[2 * i + 1];
        const ChristoffelNode& right = nodes[2 * i + 2];
        EXPECT_EQ(left.u, parent.u);
        EXPECT_EQ(left.v, parent.u + parent.v);
        EXPECT_EQ(right.u, parent.u + parent.v);
        EXPECT_EQ(right.v, parent.v);
        EXPECT_EQ(left.depth, parent.depth + 1);
    }
}

TEST(Lyndon, DuvalMatchesBruteForce)
{
    for (std::size_t n = 1; n <= 14; ++n) {
        std::vector<std::string> expected;
        for (std::uint64_t code = 0; code < (1ull << n); ++code) {
            const std::string s = bits(code, n);
            if (lyndon_by_rotations(s)) {
                expected.push_back(s);
            }
        }
        std::vector<std::string> got;
        for (const Word& w : lyndon_words(n)) {
            got.push_back(w.str());
        }
        EXPECT_EQ(got, expected) << "length " << n;
    }
}

TEST(Lyndon, CountsMatchNecklaceFormula)
{
    // Number of binary Lyndon words of length n is (1/n) sum_{d|n} mu(d) 2^{n/d}.
    auto mobius = [](std::size_t d) {
        int mu = 1;
        for (std::size_t p = 2; p * p <= d; ++p) {
            if (d % p == 0) {
                d /= p;
                if (d % p == 0) {
                    return 0;
                }
                mu = -mu;
            }
        }
        return d > 1 ? -mu : mu;
    };
    std::vector<std::size_t> count(19, 0);
    for_each_lyndon_word(18, [&](const Word& w) { ++count[w.size()]; });
    for (std::size_t n = 1; n <= 18; ++n) {
        long long total = 0;
        for (std::size_t d = 1; d <= n; ++d) {
            if (n % d == 0) {
                total += mobius(d) * (1ll << (n / d));
            }
        }
        EXPECT_EQ(static_cast<long long>(count[n]), total / static_cast<long long>(n)) << n;
    }
}

TEST(Sturmian, BalancedPrimitiveWordsAreSturmian)
{
    for (std::size_t n = 1; n <= 14; ++n) {
        for (std::uint64_t code = 0; code < (1ull << n); ++code) {
            const std::string s = bits(code, n);
            const Word w(s);
            const bool primitive_balanced = is_primitive(w) && balanced_by_factors(s);
            EXPECT_EQ(is_sturmian_word(w).has_value(), primitive_balanced) << s;
            EXPECT_EQ(is_balanced(w), balanced_by_factors(s, false)) << s;
        }
    }
}

TEST(Sturmian, WitnessReproducesWord)
{
    for (const Word& w : lyndon_words(11)) {
        const auto witness = is_sturmian_word(w);
        if (!witness) {
            continue;
        }
        const Word rebuilt = mechanical_prefix(Rational(witness->p, witness->q),
                                               Rational(witness->intercept_index, witness->q), Mechanical::lower,
                                               w.size());
        EXPECT_EQ(rebuilt, w);
    }
}

TEST(Sturmian, ClassWordsAreRotationsOfChristoffel)
{
    const auto words = sturmian_class_words(3, 2);
    EXPECT_EQ(words.size(), 5u);
    for (const Word& w : words) {
        EXPECT_TRUE(is_rotation_of(w, christoffel(2, 5)));
        EXPECT_EQ(w.zeros(), 3u);
    }
    EXPECT_THROW(sturmian_class_words(2, 4), precondition_error);
}

TEST(Mechanical, FloatingAgreesWithExact)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> den(2, 200);
    for (int trial = 0; trial < 200; ++trial) {
        const std::int64_t q = den(rng);
        const std::int64_t p = std::uniform_int_distribution<std::int64_t>(0, q)(rng);
        // Intercept strictly between grid points so rounding cannot flip a letter.
        const Rational rho(2 * (p % q) + 1, 2 * q * 7);
        EXPECT_EQ(mechanical_prefix(Rational(p, q), rho, Mechanical::upper, 50),
                  mechanical_prefix(Rational(p, q).value(), rho.value(), Mechanical::upper, 50));
    }
}

TEST(Signature, CountsFactors)
{
    EXPECT_EQ(signature(Word("01")).str(), "1,1,1");
    EXPECT_EQ(signature(Word("0")).str(), "1,0,0");
    EXPECT_EQ(signature(Word("00101")).str(), "3,2,2");
    EXPECT_EQ(signature(Word("10100")), signature(Word("00101")));
    EXPECT_EQ(signature(Word("000111")).str(), "3,3,1");
}

TEST(Rotations, DistinctAndPrimitive)
{
    EXPECT_EQ(distinct_rotations(Word("0101")).size(), 2u);
    EXPECT_EQ(distinct_rotations(Word("0011")).size(), 4u);
    EXPECT_FALSE(is_primitive(Word("0101")));
    EXPECT_TRUE(is_primitive(Word("0110")));
    EXPECT_EQ(lyndon_rotation(Word("1100")).str(), "0011");
    EXPECT_TRUE(is_rotation_of(Word("0110"), Word("1001")));
    EXPECT_FALSE(is_rotation_of(Word("0110"), Word("0101")));
}
