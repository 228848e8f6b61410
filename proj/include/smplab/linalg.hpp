#pragma once

/// \file linalg.hpp
/// Real 2x2 linear algebra: spectra, the Euclidean operator norm, the
/// conjugacy invariants (x, y, z, u, v) of a pair, commutator identities,
/// reducibility and realizability tests, and word products.

#include "smplab/error.hpp"
#include "smplab/words.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

namespace smplab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Row-major real 2x2 matrix [[a11, a12], [a21, a22]].
struct Mat2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }

    [[nodiscard]] double trace() const { return a11 + a22; }
    [[nodiscard]] double det() const { return a11 * a22 - a12 * a21; }
    [[nodiscard]] Mat2 transpose() const { return {a11, a21, a12, a22}; }
    /// Adjugate: M * adj(M) = det(M) * I.
    [[nodiscard]] Mat2 adjugate() const { return {a22, -a12, -a21, a11}; }
    [[nodiscard]] bool finite() const
    {
        return std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a21) && std::isfinite(a22);
    }
    [[nodiscard]] double max_abs() const
    {
        return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
    }

    friend Mat2 operator*(const Mat2& m, const Mat2& n)
    {
        return {m.a11 * n.a11 + m.a12 * n.a21, m.a11 * n.a12 + m.a12 * n.a22,
                m.a21 * n.a11 + m.a22 * n.a21, m.a21 * n.a12 + m.a22 * n.a22};
    }
    friend Vec2 operator*(const Mat2& m, Vec2 v) { return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y}; }
    friend Mat2 operator+(const Mat2& m, const Mat2& n)
    {
        return {m.a11 + n.a11, m.a12 + n.a12, m.a21 + n.a21, m.a22 + n.a22};
    }
    friend Mat2 operator-(const Mat2& m, const Mat2& n)
    {
        return {m.a11 - n.a11, m.a12 - n.a12, m.a21 - n.a21, m.a22 - n.a22};
    }
    friend Mat2 operator*(double s, const Mat2& m) { return {s * m.a11, s * m.a12, s * m.a21, s * m.a22}; }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Rank-one matrix u v^T.
inline Mat2 outer(Vec2 u, Vec2 v) { return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y}; }

inline Mat2 inverse(const Mat2& m)
{
    const double d = m.det();
    detail::require(d != 0.0, "matrix is singular");
    return (1.0 / d) * m.adjugate();
}

/// An ordered pair (A, B); letter 0 is A, letter 1 is B.
struct MatrixPair {
    Mat2 a;
    Mat2 b;

    [[nodiscard]] const Mat2& letter(int l) const { return l == 0 ? a : b; }
    [[nodiscard]] MatrixPair swapped() const { return {b, a}; }
    friend bool operator==(const MatrixPair&, const MatrixPair&) = default;
};

/// Simultaneous-conjugacy invariants (tr A, tr B, tr AB, det A, det B).
struct FiveTuple {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double u = 0.0;
    double v = 0.0;

    [[nodiscard]] std::array<double, 5> as_array() const { return {x, y, z, u, v}; }
    friend bool operator==(const FiveTuple&, const FiveTuple&) = default;
};

/// 4uv - uy^2 - vx^2 + xyz - z^2, which equals det(AB - BA).
inline double commutator_polynomial(const FiveTuple& t)
{
    return 4.0 * t.u * t.v - t.u * t.y * t.y - t.v * t.x * t.x + t.x * t.y * t.z - t.z * t.z;
}

enum class SpectrumKind { RealDistinct, RealRepeated, ComplexConjugate };

/// Eigenvalue data of a real 2x2 matrix. For complex spectra only the
/// modulus is kept (both entries of `eigenvalues` hold it).
struct Spectrum {
    SpectrumKind kind = SpectrumKind::RealDistinct;
    double rho = 0.0;
    std::array<double, 2> eigenvalues{};
    double discriminant = 0.0;
};

/// Closed-form eigenvalues. The discriminant counts as zero when
/// |tr^2 - 4 det| <= repeated_tol * max(1, tr^2).
inline Spectrum spectrum(const Mat2& m, double repeated_tol = 1e-14)
{
    const double tr = m.trace();
    const double det = m.det();
    const double disc = tr * tr - 4.0 * det;
    Spectrum s;
    s.discriminant = disc;
    if (std::abs(disc) <= repeated_tol * std::max(1.0, tr * tr)) {
        s.kind = SpectrumKind::RealRepeated;
        s.eigenvalues = {tr / 2.0, tr / 2.0};
        s.rho = std::abs(tr) / 2.0;
    } else if (disc > 0.0) {
        s.kind = SpectrumKind::RealDistinct;
        const double root = std::sqrt(disc);
        // Avoid cancellation: the larger-magnitude root first, the other via det.
        const double big = tr >= 0.0 ? (tr + root) / 2.0 : (tr - root) / 2.0;
        const double small = big != 0.0 ? det / big : 0.0;
        s.eigenvalues = {big, small};
        s.rho = std::abs(big);
    } else {
        s.kind = SpectrumKind::ComplexConjugate;
        s.rho = std::sqrt(det);
        s.eigenvalues = {s.rho, s.rho};
    }
    return s;
}

inline double spectral_radius(const Mat2& m)
{
    const double tr = m.trace();
    const double det = m.det();
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        return (std::abs(tr) + std::sqrt(disc)) / 2.0;
    }
    return std::sqrt(det);
}

/// Largest singular value: sqrt of the top eigenvalue of M^T M, written as
/// (sqrt((a+d)^2 + (b-c)^2) + sqrt((a-d)^2 + (b+c)^2)) / 2.
inline double operator_norm_2(const Mat2& m)
{
    const double p = std::hypot(m.a11 + m.a22, m.a12 - m.a21);
    const double q = std::hypot(m.a11 - m.a22, m.a12 + m.a21);
    return (p + q) / 2.0;
}

inline FiveTuple five_tuple(const MatrixPair& p)
{
    return {p.a.trace(), p.b.trace(), (p.a * p.b).trace(), p.a.det(), p.b.det()};
}

/// det(AB - BA) together with the alternative closed forms it equals.
struct CommutatorReport {
    double value = 0.0;
    /// [0] tuple polynomial, [1] det(AB-BA), [2] discriminant form,
    /// [3] tr(A^2 B^2) - tr((AB)^2), [4] det A det B (2 - tr(A B A^-1 B^-1)).
    std::array<std::optional<double>, 5> expressions{};
    double max_deviation = 0.0;
};

inline CommutatorReport commutator_invariant(const MatrixPair& p)
{
    const Mat2& a = p.a;
    const Mat2& b = p.b;
    const FiveTuple t = five_tuple(p);
    const Mat2 ab = a * b;
    const Mat2 ba = b * a;

    CommutatorReport r;
    r.value = (ab - ba).det();
    r.expressions[0] = commutator_polynomial(t);
    r.expressions[1] = r.value;
    const double shifted = t.z - 0.5 * t.x * t.y;
    r.expressions[2] = 0.25 * (t.x * t.x - 4.0 * t.u) * (t.y * t.y - 4.0 * t.v) - shifted * shifted;
    r.expressions[3] = (a * a * b * b).trace() - (ab * ab).trace();
    if (t.u != 0.0 && t.v != 0.0) {
        r.expressions[4] = t.u * t.v * (2.0 - (ab * inverse(a) * inverse(b)).trace());
    }
    for (std::size_t i = 0; i < r.expressions.size(); ++i) {
        for (std::size_t j = i + 1; j < r.expressions.size(); ++j) {
            if (r.expressions[i] && r.expressions[j]) {
                r.max_deviation = std::max(r.max_deviation, std::abs(*r.expressions[i] - *r.expressions[j]));
            }
        }
    }
    return r;
}

enum class Reducibility { Reducible, Irreducible, Indeterminate };

struct ReducibilityVerdict {
    Reducibility kind = Reducibility::Indeterminate;
    /// det(AB - BA) / (|A|_2 |B|_2)^2.
    double margin = 0.0;
};

/// Normalized commutator determinant det(AB-BA) / (|A|_2 |B|_2)^2.
inline double normalized_commutator(const MatrixPair& p)
{
    const double scale = operator_norm_2(p.a) * operator_norm_2(p.b);
    if (scale == 0.0) {
        return 0.0;
    }
    return ((p.a * p.b - p.b * p.a).det() / scale) / scale;
}

/// Below this normalized size the commutator determinant is rounding noise.
inline constexpr double kCommutatorNoise = 64.0 * 2.220446049250313e-16;

/// Reducible when the normalized commutator is at rounding level, Irreducible
/// when it exceeds tol, Indeterminate in between.
inline ReducibilityVerdict is_reducible(const MatrixPair& p, double tol)
{
    detail::require(tol > 0.0, "tolerance must be positive");
    const double margin = normalized_commutator(p);
    if (std::abs(margin) <= std::min(tol, kCommutatorNoise)) {
        return {Reducibility::Reducible, margin};
    }
    if (std::abs(margin) <= tol) {
        return {Reducibility::Indeterminate, margin};
    }
    return {Reducibility::Irreducible, margin};
}

/// A real tuple comes from a real pair iff min(4u - x^2, commutator polynomial) <= 0.
inline bool realizable(const FiveTuple& t)
{
    return std::min(4.0 * t.u - t.x * t.x, commutator_polynomial(t)) <= 0.0;
}

/// w(A, B), multiplied left to right in word order.
inline Mat2 word_product(const MatrixPair& p, const Word& w)
{
    Mat2 out = p.letter(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
        out = out * p.letter(w[i]);
    }
    return out;
}

/// log rho(w(A, B)) with running renormalization so long words do not
/// overflow. Returns -infinity for a nilpotent product.
inline double log_spectral_radius(const MatrixPair& p, const Word& w)
{
    Mat2 acc = Mat2::identity();
    double log_scale = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc = acc * p.letter(w[i]);
        const double s = acc.max_abs();
        if (s == 0.0) {
            return -std::numeric_limits<double>::infinity();
        }
        if (s > 1e100 || s < 1e-100) {
            acc = (1.0 / s) * acc;
            log_scale += std::log(s);
        }
    }
    const double rho = spectral_radius(acc);
    if (rho == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::log(rho) + log_scale;
}

} // namespace smplab
