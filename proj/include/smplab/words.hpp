#pragma once

/// \file words.hpp
/// Binary words: primitivity, Lyndon rotations, signatures, mechanical
/// (Sturmian) prefixes, Christoffel words and the Christoffel tree.

#include "smplab/error.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace smplab {

__extension__ typedef __int128 int128;

/// Exact rational with 64-bit numerator/denominator, always reduced, den > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d)
    {
        if (d == 0) {
            throw precondition_error("rational with zero denominator");
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int128 lhs = static_cast<int128>(a.num) * b.den;
        const int128 rhs = static_cast<int128>(b.num) * a.den;
        if (lhs < rhs) {
            return std::strong_ordering::less;
        }
        if (lhs > rhs) {
            return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend Rational operator-(const Rational& a, const Rational& b)
    {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }

    /// Parses "p/q" or an integer.
    static Rational parse(std::string_view text)
    {
        const auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) {
                return {std::stoll(std::string(text)), 1};
            }
            return {std::stoll(std::string(text.substr(0, slash))),
                    std::stoll(std::string(text.substr(slash + 1)))};
        } catch (const std::logic_error&) {
            throw precondition_error("malformed rational '" + std::string(text) + "'");
        }
    }

    [[nodiscard]] std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Stern-Brocot mediant (p1+p2)/(q1+q2).
inline Rational mediant(const Rational& a, const Rational& b) { return {a.num + b.num, a.den + b.den}; }

/// A nonempty finite word over {0,1}; letter 0 stands for A and 1 for B.
class Word {
public:
    explicit Word(std::string letters) : letters_(std::move(letters))
    {
        detail::require(!letters_.empty(), "empty word");
        detail::require(letters_.find_first_not_of("01") == std::string::npos,
                        "word must consist of the letters 0 and 1");
    }

    static Word parse(std::string_view text) { return Word(std::string(text)); }

    [[nodiscard]] std::size_t size() const { return letters_.size(); }
    [[nodiscard]] int operator[](std::size_t i) const { return letters_[i] == '1' ? 1 : 0; }
    [[nodiscard]] const std::string& str() const { return letters_; }

    [[nodiscard]] std::size_t ones() const
    {
        return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), '1'));
    }
    [[nodiscard]] std::size_t zeros() const { return size() - ones(); }

    /// Cyclic rotation moving the first `k` letters to the back.
    [[nodiscard]] Word rotated(std::size_t k) const
    {
        k %= size();
        return Word(letters_.substr(k) + letters_.substr(0, k));
    }

    [[nodiscard]] Word power(std::size_t n) const
    {
        detail::require(n >= 1, "word power must be positive");
        std::string out;
        out.reserve(size() * n);
        for (std::size_t i = 0; i < n; ++i) {
            out += letters_;
        }
        return Word(std::move(out));
    }

    friend Word operator+(const Word& a, const Word& b) { return Word(a.letters_ + b.letters_); }
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }
    friend std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.letters_; }

private:
    std::string letters_;
};

/// (m, k, l): zeros, ones, and "01" factors of the Lyndon rotation.
struct Signature {
    std::size_t m = 0;
    std::size_t k = 0;
    std::size_t l = 0;

    friend bool operator==(const Signature&, const Signature&) = default;
    [[nodiscard]] std::string str() const
    {
        return std::to_string(m) + "," + std::to_string(k) + "," + std::to_string(l);
    }
};

inline bool is_primitive(const Word& w)
{
    const std::size_t n = w.size();
    const std::string& s = w.str();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) {
            continue;
        }
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i) {
            periodic = s[i] == s[i - d];
        }
        if (periodic) {
            return false;
        }
    }
    return true;
}

/// Least cyclic rotation, with 0 < 1.
inline Word least_rotation(const Word& w)
{
    const std::string& s = w.str();
    const std::size_t n = s.size();
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            const char a = s[(r + i) % n];
            const char b = s[(best + i) % n];
            if (a != b) {
                if (a < b) {
                    best = r;
                }
                break;
            }
        }
    }
    return w.rotated(best);
}

inline Word lyndon_rotation(const Word& w)
{
    detail::require(is_primitive(w), "Lyndon rotation requires a primitive word, got " + w.str());
    return least_rotation(w);
}

inline bool is_lyndon(const Word& w) { return is_primitive(w) && least_rotation(w) == w; }

inline bool is_rotation_of(const Word& a, const Word& b)
{
    return a.size() == b.size() && (b.str() + b.str()).find(a.str()) != std::string::npos;
}

inline Signature signature(const Word& w)
{
    const Word lyndon = lyndon_rotation(w);
    const std::string& s = lyndon.str();
    Signature sig;
    sig.k = lyndon.ones();
    sig.m = lyndon.size() - sig.k;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] == '0' && s[i + 1] == '1') {
            ++sig.l;
        }
    }
    return sig;
}

/// Distinct cyclic rotations, in order of rotation offset.
inline std::vector<Word> distinct_rotations(const Word& w)
{
    std::vector<Word> out;
    for (std::size_t r = 0; r < w.size(); ++r) {
        Word candidate = w.rotated(r);
        if (std::find(out.begin(), out.end(), candidate) == out.end()) {
            out.push_back(std::move(candidate));
        }
    }
    return out;
}

enum class Mechanical { lower, upper };

namespace detail {

inline std::int64_t floor_div(int128 a, int128 b)
{
    int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return static_cast<std::int64_t>(q);
}

inline std::int64_t ceil_div(int128 a, int128 b) { return -floor_div(-a, b); }

} // namespace detail

/// First n letters of the mechanical word of slope gamma and intercept rho
/// (index starting at 0), computed in exact rational arithmetic.
inline Word mechanical_prefix(Rational gamma, Rational rho, Mechanical variant, std::size_t n)
{
    detail::require(gamma >= Rational(0) && gamma <= Rational(1), "slope must lie in [0,1]");
    detail::require(rho >= Rational(0) && rho <= Rational(1), "intercept must lie in [0,1]");
    detail::require(n >= 1, "prefix length must be positive");
    const int128 den = static_cast<int128>(gamma.den) * rho.den;
    auto numerator_at = [&](std::size_t i) {
        return static_cast<int128>(gamma.num) * rho.den * static_cast<int128>(i) +
               static_cast<int128>(rho.num) * gamma.den;
    };
    auto round = [&](std::size_t i) {
        return variant == Mechanical::lower ? detail::floor_div(numerator_at(i), den)
                                            : detail::ceil_div(numerator_at(i), den);
    };
    std::string letters(n, '0');
    std::int64_t previous = round(0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t next = round(i + 1);
        letters[i] = next - previous == 1 ? '1' : '0';
        previous = next;
    }
    return Word(std::move(letters));
}

/// Floating-point variant for real (possibly irrational) slopes.
inline Word mechanical_prefix(double gamma, double rho, Mechanical variant, std::size_t n)
{
    detail::require(gamma >= 0.0 && gamma <= 1.0, "slope must lie in [0,1]");
    detail::require(rho >= 0.0 && rho <= 1.0, "intercept must lie in [0,1]");
    detail::require(n >= 1, "prefix length must be positive");
    auto round = [&](std::size_t i) {
        const double t = gamma * static_cast<double>(i) + rho;
        return variant == Mechanical::lower ? std::floor(t) : std::ceil(t);
    };
    std::string letters(n, '0');
    for (std::size_t i = 0; i < n; ++i) {
        letters[i] = round(i + 1) - round(i) == 1.0 ? '1' : '0';
    }
    return Word(std::move(letters));
}

/// Christoffel word of slope p/q: length q, p ones.
inline Word christoffel(std::int64_t p, std::int64_t q)
{
    detail::require(q >= 1 && p >= 0 && p <= q, "christoffel requires 0 <= p <= q and q >= 1");
    detail::require(std::gcd(p, q) == 1, "christoffel requires gcd(p, q) = 1");
    return mechanical_prefix(Rational(p, q), Rational(0), Mechanical::lower, static_cast<std::size_t>(q));
}

/// A node (u, v) of the Christoffel tree; uv is a Christoffel word.
struct ChristoffelNode {
    Word u;
    Word v;
    std::size_t depth = 0;

    [[nodiscard]] Word word() const { return u + v; }
};

/// Breadth-first listing of the Christoffel tree down to `depth` (root (0,1) at depth 0).
inline std::vector<ChristoffelNode> christoffel_tree(std::size_t depth)
{
    std::vector<ChristoffelNode> nodes{{Word("0"), Word("1"), 0}};
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        if (nodes[head].depth == depth) {
            continue;
        }
        const ChristoffelNode parent = nodes[head];
        const Word uv = parent.word();
        nodes.push_back({parent.u, uv, parent.depth + 1});
        nodes.push_back({uv, parent.v, parent.depth + 1});
    }
    return nodes;
}

/// Parameters (p, q, i) such that w is the q-prefix of the lower mechanical
/// word of slope p/q and intercept i/q.
struct SturmianWitness {
    std::int64_t p = 0;
    std::int64_t q = 1;
    std::int64_t intercept_index = 0;
};

/// Decides membership by enumerating the intercepts i/q, i = 0..q-1; the floor
/// values only change on that grid.
inline std::optional<SturmianWitness> is_sturmian_word(const Word& w)
{
    const auto q = static_cast<std::int64_t>(w.size());
    const auto p = static_cast<std::int64_t>(w.ones());
    if (std::gcd(p, q) != 1) {
        return std::nullopt;
    }
    for (std::int64_t i = 0; i < q; ++i) {
        if (mechanical_prefix(Rational(p, q), Rational(i, q), Mechanical::lower, w.size()) == w) {
            return SturmianWitness{p, q, i};
        }
    }
    return std::nullopt;
}

/// Balanced: any two factors of equal length differ in their count of ones by at most one.
inline bool is_balanced(const Word& w)
{
    const std::string& s = w.str();
    for (std::size_t len = 1; len <= s.size(); ++len) {
        std::size_t lo = len;
        std::size_t hi = 0;
        for (std::size_t i = 0; i + len <= s.size(); ++i) {
            const auto c = static_cast<std::size_t>(std::count(s.begin() + i, s.begin() + i + len, '1'));
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        if (hi - lo > 1) {
            return false;
        }
    }
    return true;
}

/// The class of words with a zeros and b ones whose rotations maximize the
/// spectral radius for co-parallel pairs: rotations of christoffel(b, a+b).
inline std::vector<Word> sturmian_class_words(std::int64_t a, std::int64_t b)
{
    detail::require(a >= 1 && b >= 1, "sturmian class requires a, b >= 1");
    detail::require(std::gcd(a, b) == 1, "sturmian class requires gcd(a, b) = 1");
    return distinct_rotations(christoffel(b, a + b));
}

/// Calls fn(word) for every binary Lyndon word of length 1..max_length in
/// lexicographic order (Duval's generation algorithm). These are the
/// canonical representatives of primitive necklaces.
template <class Fn>
void for_each_lyndon_word(std::size_t max_length, Fn&& fn)
{
    if (max_length == 0) {
        return;
    }
    std::string w = "0";
    while (!w.empty()) {
        fn(Word(w));
        const std::size_t m = w.size();
        while (w.size() < max_length) {
            w.push_back(w[w.size() - m]);
        }
        while (!w.empty() && w.back() == '1') {
            w.pop_back();
        }
        if (!w.empty()) {
            w.back() = '1';
        }
    }
}

inline std::vector<Word> lyndon_words(std::size_t length)
{
    std::vector<Word> out;
    for_each_lyndon_word(length, [&](const Word& w) {
        if (w.size() == length) {
            out.push_back(w);
        }
    });
    return out;
}

} // namespace smplab
