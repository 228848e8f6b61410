#pragma once

/// \file fricke.hpp
/// Exact integer trace polynomials: tr w(A, B) = F_w(x, y, z, u, v).
///
/// A word is reduced left to right inside the algebra spanned by
/// {I, A, B, AB}, whose coefficients are integer polynomials in the
/// invariants; Cayley-Hamilton closes the multiplication table.

#include "smplab/error.hpp"
#include "smplab/linalg.hpp"
#include "smplab/words.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace smplab {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse polynomial in (x, y, z, u, v) with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored.
class Poly5 {
public:
    using Exponents = std::array<unsigned, 5>;
    using Terms = std::map<Exponents, BigInt>;

    Poly5() = default;

    static Poly5 constant(long long c)
    {
        Poly5 p;
        p.add_term({0, 0, 0, 0, 0}, BigInt(c));
        return p;
    }

    /// The variable with index 0..4 = x, y, z, u, v.
    static Poly5 variable(std::size_t index)
    {
        Exponents e{0, 0, 0, 0, 0};
        e.at(index) = 1;
        Poly5 p;
        p.add_term(e, BigInt(1));
        return p;
    }
    static Poly5 x() { return variable(0); }
    static Poly5 y() { return variable(1); }
    static Poly5 z() { return variable(2); }
    static Poly5 u() { return variable(3); }
    static Poly5 v() { return variable(4); }

    static Poly5 monomial(const Exponents& e, long long c = 1)
    {
        Poly5 p;
        p.add_term(e, BigInt(c));
        return p;
    }

    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }

    [[nodiscard]] unsigned total_degree() const
    {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) {
            d = std::max(d, e[0] + e[1] + e[2] + e[3] + e[4]);
        }
        return d;
    }

    void add_term(const Exponents& e, const BigInt& c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    Poly5& operator+=(const Poly5& o)
    {
        for (const auto& [e, c] : o.terms_) {
            add_term(e, c);
        }
        return *this;
    }
    Poly5& operator-=(const Poly5& o)
    {
        for (const auto& [e, c] : o.terms_) {
            add_term(e, -c);
        }
        return *this;
    }
    friend Poly5 operator+(Poly5 a, const Poly5& b) { return a += b; }
    friend Poly5 operator-(Poly5 a, const Poly5& b) { return a -= b; }
    friend Poly5 operator-(const Poly5& a) { return Poly5() - a; }
    friend Poly5 operator*(const Poly5& a, const Poly5& b)
    {
        Poly5 out;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e{};
                for (std::size_t i = 0; i < 5; ++i) {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }
    friend Poly5 operator*(long long s, const Poly5& a) { return Poly5::constant(s) * a; }
    friend bool operator==(const Poly5&, const Poly5&) = default;

    /// Sets the variables flagged in `mask` (x, y, z, u, v order) to zero.
    [[nodiscard]] Poly5 with_zeroed(const std::array<bool, 5>& mask) const
    {
        Poly5 out;
        for (const auto& [e, c] : terms_) {
            bool keep = true;
            for (std::size_t i = 0; i < 5; ++i) {
                keep = keep && !(mask[i] && e[i] > 0);
            }
            if (keep) {
                out.add_term(e, c);
            }
        }
        return out;
    }

    /// Monomials sorted by total degree (descending), then exponents
    /// (descending), written as "coef x^a y^b z^c u^d v^e" with unit
    /// exponents and coefficients elided.
    [[nodiscard]] std::string str() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::vector<std::pair<Exponents, BigInt>> sorted(terms_.begin(), terms_.end());
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            const unsigned da = a.first[0] + a.first[1] + a.first[2] + a.first[3] + a.first[4];
            const unsigned db = b.first[0] + b.first[1] + b.first[2] + b.first[3] + b.first[4];
            if (da != db) {
                return da > db;
            }
            return a.first > b.first;
        });
        static constexpr std::array<const char*, 5> names{"x", "y", "z", "u", "v"};
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : sorted) {
            const bool negative = c < 0;
            const BigInt magnitude = negative ? BigInt(-c) : c;
            if (first) {
                os << (negative ? "-" : "");
            } else {
                os << (negative ? " - " : " + ");
            }
            first = false;
            const bool constant_term = e == Exponents{0, 0, 0, 0, 0};
            bool need_space = false;
            if (magnitude != 1 || constant_term) {
                os << magnitude;
                need_space = true;
            }
            for (std::size_t i = 0; i < 5; ++i) {
                if (e[i] == 0) {
                    continue;
                }
                os << (need_space ? " " : "") << names[i];
                if (e[i] > 1) {
                    os << '^' << e[i];
                }
                need_space = true;
            }
        }
        return os.str();
    }

private:
    Terms terms_;
};

namespace detail {

/// Exact binary rational mantissa * 2^exponent.
struct Dyadic {
    BigInt mantissa = 0;
    std::int64_t exponent = 0;

    static Dyadic from_double(double value)
    {
        detail::require(std::isfinite(value), "cannot evaluate at a non-finite point");
        if (value == 0.0) {
            return {};
        }
        int e = 0;
        const double frac = std::frexp(value, &e);
        const auto m = static_cast<std::int64_t>(std::ldexp(frac, 53));
        return {BigInt(m), static_cast<std::int64_t>(e) - 53};
    }

    friend Dyadic operator*(const Dyadic& a, const Dyadic& b)
    {
        return {a.mantissa * b.mantissa, a.exponent + b.exponent};
    }

    Dyadic& operator+=(const Dyadic& o)
    {
        if (o.mantissa == 0) {
            return *this;
        }
        if (mantissa == 0) {
            return *this = o;
        }
        if (exponent <= o.exponent) {
            mantissa += o.mantissa << static_cast<unsigned>(o.exponent - exponent);
        } else {
            mantissa = (mantissa << static_cast<unsigned>(exponent - o.exponent)) + o.mantissa;
            exponent = o.exponent;
        }
        return *this;
    }

    /// Correctly rounded (to nearest) conversion; subnormals excepted.
    [[nodiscard]] double to_double() const
    {
        if (mantissa == 0) {
            return 0.0;
        }
        const bool negative = mantissa < 0;
        BigInt mag = negative ? BigInt(-mantissa) : mantissa;
        const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(mag)) + 1;
        std::int64_t shift = 0;
        if (bits > 63) {
            shift = bits - 63;
            const bool sticky = (mag & ((BigInt(1) << static_cast<unsigned>(shift)) - 1)) != 0;
            mag >>= static_cast<unsigned>(shift);
            if (sticky) {
                mag |= 1;
            }
        }
        const auto top = static_cast<std::uint64_t>(mag);
        const double value = std::ldexp(static_cast<double>(top), static_cast<int>(exponent + shift));
        return negative ? -value : value;
    }
};

} // namespace detail

/// Evaluates exactly in binary rational arithmetic, rounding once at the end.
inline double evaluate(const Poly5& f, const FiveTuple& t)
{
    const auto point = t.as_array();
    std::array<std::vector<detail::Dyadic>, 5> powers;
    std::array<unsigned, 5> max_exp{};
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t i = 0; i < 5; ++i) {
            max_exp[i] = std::max(max_exp[i], e[i]);
        }
    }
    for (std::size_t i = 0; i < 5; ++i) {
        powers[i].push_back({BigInt(1), 0});
        const detail::Dyadic base = detail::Dyadic::from_double(point[i]);
        for (unsigned k = 1; k <= max_exp[i]; ++k) {
            powers[i].push_back(powers[i].back() * base);
        }
    }
    detail::Dyadic sum;
    for (const auto& [e, c] : f.terms()) {
        detail::Dyadic term{c, 0};
        for (std::size_t i = 0; i < 5; ++i) {
            if (e[i] > 0) {
                term = term * powers[i][e[i]];
            }
        }
        sum += term;
    }
    return sum.to_double();
}

/// Element cI*I + cA*A + cB*B + cAB*AB of the algebra generated by a pair.
struct AlgebraElement {
    Poly5 c_i;
    Poly5 c_a;
    Poly5 c_b;
    Poly5 c_ab;

    static AlgebraElement basis(std::size_t index)
    {
        AlgebraElement e;
        e.coefficient(index) = Poly5::constant(1);
        return e;
    }
    static AlgebraElement identity() { return basis(0); }
    static AlgebraElement a() { return basis(1); }
    static AlgebraElement b() { return basis(2); }
    static AlgebraElement ab() { return basis(3); }

    Poly5& coefficient(std::size_t index)
    {
        switch (index) {
        case 0: return c_i;
        case 1: return c_a;
        case 2: return c_b;
        default: return c_ab;
        }
    }
    [[nodiscard]] const Poly5& coefficient(std::size_t index) const
    {
        return const_cast<AlgebraElement*>(this)->coefficient(index);
    }

    /// tr = 2 cI + x cA + y cB + z cAB.
    [[nodiscard]] Poly5 trace() const
    {
        return Poly5::constant(2) * c_i + Poly5::x() * c_a + Poly5::y() * c_b + Poly5::z() * c_ab;
    }

    /// Numeric matrix for a concrete pair.
    [[nodiscard]] Mat2 realize(const MatrixPair& p) const
    {
        const FiveTuple t = five_tuple(p);
        return evaluate(c_i, t) * Mat2::identity() + evaluate(c_a, t) * p.a + evaluate(c_b, t) * p.b +
               evaluate(c_ab, t) * (p.a * p.b);
    }

    friend AlgebraElement operator+(AlgebraElement l, const AlgebraElement& r)
    {
        for (std::size_t i = 0; i < 4; ++i) {
            l.coefficient(i) += r.coefficient(i);
        }
        return l;
    }
    friend AlgebraElement operator*(const Poly5& s, const AlgebraElement& r)
    {
        AlgebraElement out;
        for (std::size_t i = 0; i < 4; ++i) {
            out.coefficient(i) = s * r.coefficient(i);
        }
        return out;
    }
    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

/// Product of basis elements (row) * (column) in the basis {I, A, B, AB}:
///   A A   = xA - uI              B B   = yB - vI
///   B A   = yA + xB + (z-xy)I - AB
///   A AB  = xAB - uB             AB A  = zA + uB - uyI
///   B AB  = vA + zB - vxI        AB B  = yAB - vA
///   AB AB = zAB - uvI
inline AlgebraElement basis_product(std::size_t row, std::size_t col)
{
    using P = Poly5;
    const P x = P::x(), y = P::y(), z = P::z(), u = P::u(), v = P::v();
    auto make = [](P ci, P ca, P cb, P cab) { return AlgebraElement{std::move(ci), std::move(ca), std::move(cb), std::move(cab)}; };
    const P zero;
    const P one = P::constant(1);
    if (row == 0) {
        return AlgebraElement::basis(col);
    }
    if (col == 0) {
        return AlgebraElement::basis(row);
    }
    switch (row * 4 + col) {
    case 1 * 4 + 1: return make(-u, x, zero, zero);                       // A A
    case 1 * 4 + 2: return make(zero, zero, zero, one);                   // A B
    case 1 * 4 + 3: return make(zero, zero, -u, x);                       // A AB
    case 2 * 4 + 1: return make(z - x * y, y, x, -one);                   // B A
    case 2 * 4 + 2: return make(-v, zero, y, zero);                       // B B
    case 2 * 4 + 3: return make(-(v * x), v, z, zero);                    // B AB
    case 3 * 4 + 1: return make(-(u * y), z, u, zero);                    // AB A
    case 3 * 4 + 2: return make(zero, -v, zero, y);                       // AB B
    default: return make(-(u * v), zero, zero, z);                        // AB AB
    }
}

inline AlgebraElement operator*(const AlgebraElement& l, const AlgebraElement& r)
{
    AlgebraElement out;
    for (std::size_t i = 0; i < 4; ++i) {
        if (l.coefficient(i).is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < 4; ++j) {
            if (r.coefficient(j).is_zero()) {
                continue;
            }
            out = out + (l.coefficient(i) * r.coefficient(j)) * basis_product(i, j);
        }
    }
    return out;
}

/// w(A, B) as an algebra element, reduced left to right.
inline AlgebraElement word_element(const Word& w)
{
    const AlgebraElement letters[2] = {AlgebraElement::a(), AlgebraElement::b()};
    AlgebraElement acc = letters[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) {
        acc = acc * letters[w[i]];
    }
    return acc;
}

/// The Fricke polynomial F_w with tr w(A, B) = F_w(x, y, z, u, v).
inline Poly5 fricke_poly(const Word& w) { return word_element(w).trace(); }

/// x^{m-l} y^{k-l} z^l for a signature (m, k, l).
inline Poly5 signature_monomial(const Signature& s)
{
    return Poly5::monomial({static_cast<unsigned>(s.m - s.l), static_cast<unsigned>(s.k - s.l),
                            static_cast<unsigned>(s.l), 0, 0});
}

/// F_w restricted to u = v = 0.
inline Poly5 monomial_at_uv0(const Word& w)
{
    detail::require(is_primitive(w), "monomial_at_uv0 requires a primitive word, got " + w.str());
    return fricke_poly(w).with_zeroed({false, false, false, true, true});
}

/// Largest entrywise deviation between each table row, realized for the
/// given pair, and the direct matrix product. Used to validate the table.
inline double multiplication_table_error(const MatrixPair& p)
{
    const Mat2 basis[4] = {Mat2::identity(), p.a, p.b, p.a * p.b};
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const Mat2 diff = basis_product(i, j).realize(p) - basis[i] * basis[j];
            worst = std::max(worst, diff.max_abs());
        }
    }
    return worst;
}

} // namespace smplab
