#pragma once

/// \file constructions.hpp
/// Explicit constructions: symmetric representatives of crossing pairs,
/// matrices realizing a five-tuple, and the invariant-polygon family
/// (A_n, B_n) whose unique SMP is A_n^n B_n.

#include "smplab/error.hpp"
#include "smplab/jsr.hpp"
#include "smplab/linalg.hpp"
#include "smplab/regions.hpp"
#include "smplab/words.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace smplab {

/// Symmetric pair with the same five-tuple as a crossing pair:
/// A = diag((x ± √d)/2) with d = x² - 4u, and B with diagonal
/// (y√d ∓ (xy - 2z)) / (2√d) and off-diagonal √(Δ/d), Δ = det(AB - BA).
inline MatrixPair symmetrize(const MatrixPair& p, double tol = 1e-9)
{
    const RegionFlags flags = classify(p, tol);
    detail::require(flags.in_cross == Tri::True,
                    "symmetrize requires a crossing pair (disc_a margin " + std::to_string(flags.margins.at("disc_a")) +
                        ", commutator margin " + std::to_string(flags.margins.at("commutator")) + ")");
    const FiveTuple t = five_tuple(p);
    const double d = t.x * t.x - 4.0 * t.u;
    const double delta = (p.a * p.b - p.b * p.a).det();
    const double root = std::sqrt(d);
    const double shift = t.x * t.y - 2.0 * t.z;
    const Mat2 a = Mat2::diag((t.x + root) / 2.0, (t.x - root) / 2.0);
    const double off = std::sqrt(delta / d);
    const Mat2 b{(t.y * root - shift) / (2.0 * root), off, off, (t.y * root + shift) / (2.0 * root)};
    return {a, b};
}

struct Realization {
    MatrixPair pair;
    /// "diagonal", "rotation", "jordan" or "scalar".
    std::string branch;
    /// The tuple lies on the reducible locus Δ = 0; the returned pair is one
    /// representative of a non-unique conjugacy class.
    bool reducible = false;
};

/// A canonical pair with the given five-tuple.
inline Realization realize_from_tuple(const FiveTuple& t)
{
    detail::require(std::isfinite(t.x) && std::isfinite(t.y) && std::isfinite(t.z) && std::isfinite(t.u) &&
                        std::isfinite(t.v),
                    "tuple entries must be finite");
    detail::require(realizable(t), "tuple is not realizable by a real pair");
    const double scale = std::max({t.x * t.x, std::abs(t.u), 1e-300});
    const double d = t.x * t.x - 4.0 * t.u;
    Realization out;
    out.reducible = commutator_polynomial(t) == 0.0;

    if (d > 1e-14 * scale) {
        const double root = std::sqrt(d);
        // The larger-magnitude eigenvalue directly, the other through u.
        double lambda1 = (t.x + root) / 2.0;
        double lambda2 = (t.x - root) / 2.0;
        if (t.x >= 0.0) {
            lambda2 = t.u / lambda1;
        } else {
            lambda1 = t.u / lambda2;
        }
        const double b1 = (t.z - lambda2 * t.y) / (lambda1 - lambda2);
        const double b4 = t.y - b1;
        out.pair = {Mat2::diag(lambda1, lambda2), Mat2{b1, 1.0, b1 * b4 - t.v, b4}};
        out.branch = "diagonal";
        return out;
    }
    if (d < -1e-14 * scale) {
        const double s = std::sqrt(-d) / 2.0;
        const double dd = (t.z - t.x * t.y / 2.0) / s;
        const double c = t.y * t.y / 4.0 - t.v;
        const double disc = std::max(0.0, dd * dd + 4.0 * c);
        // Stable root of b3² + dd b3 - c = 0.
        const double q = -0.5 * (dd + std::copysign(std::sqrt(disc), dd));
        const double b3 = q != 0.0 ? -c / q : 0.0;
        const double b2 = b3 + dd;
        out.pair = {Mat2{t.x / 2.0, -s, s, t.x / 2.0}, Mat2{t.y / 2.0, b2, b3, t.y / 2.0}};
        out.branch = "rotation";
        return out;
    }
    const double b3 = t.z - t.x * t.y / 2.0;
    if (b3 != 0.0) {
        out.pair = {Mat2{t.x / 2.0, 1.0, 0.0, t.x / 2.0},
                    Mat2{t.y / 2.0, (t.y * t.y / 4.0 - t.v) / b3, b3, t.y / 2.0}};
        out.branch = "jordan";
        return out;
    }
    const double disc_b = t.y * t.y - 4.0 * t.v;
    if (disc_b >= 0.0) {
        const double root = std::sqrt(disc_b);
        out.pair = {Mat2{t.x / 2.0, 1.0, 0.0, t.x / 2.0}, Mat2{(t.y + root) / 2.0, 0.0, 0.0, (t.y - root) / 2.0}};
        out.branch = "jordan";
        return out;
    }
    out.pair = {Mat2::diag(t.x / 2.0, t.x / 2.0), Mat2{0.0, -t.v, 1.0, t.y}};
    out.branch = "scalar";
    return out;
}

/// The root c = W(1/e) ≈ 0.2784645428 of x e^{x+1} = 1, by Newton's method.
inline double lambert_c()
{
    double x = 0.3;
    for (int i = 0; i < 100; ++i) {
        const double e = std::exp(x + 1.0);
        const double g = x * e - 1.0;
        if (std::abs(g) < 1e-16) {
            break;
        }
        x -= g / ((x + 1.0) * e);
    }
    return x;
}

/// Centrally symmetric convex polygon given by half of its vertices
/// w_1..w_m in counterclockwise order; the full vertex list is
/// w_1..w_m, -w_1..-w_m.
class Polygon {
public:
    explicit Polygon(std::vector<Vec2> half, double tol = 1e-12) : half_(std::move(half))
    {
        detail::require(half_.size() >= 2, "polygon needs at least two half vertices");
        for (const Vec2& w : half_) {
            full_.push_back(w);
        }
        for (const Vec2& w : half_) {
            full_.push_back(-w);
        }
        double radius = 0.0;
        for (const Vec2& w : full_) {
            detail::require(std::isfinite(w.x) && std::isfinite(w.y), "polygon vertices must be finite");
            radius = std::max(radius, std::hypot(w.x, w.y));
        }
        detail::require(radius > 0.0, "degenerate polygon");
        const double area_tol = tol * radius * radius;
        double winding = 0.0;
        const std::size_t n = full_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 p = full_[i];
            const Vec2 q = full_[(i + 1) % n];
            const Vec2 r = full_[(i + 2) % n];
            detail::require(cross(p, q) > area_tol, "origin must lie strictly inside, vertices counterclockwise");
            detail::require(cross(q - p, r - q) > -area_tol, "polygon is not convex");
            winding += std::atan2(cross(p, q), dot(p, q));
        }
        detail::require(std::abs(winding - 2.0 * std::numbers::pi) < 1e-9, "polygon boundary must wind once");
    }

    [[nodiscard]] const std::vector<Vec2>& half_vertices() const { return half_; }
    [[nodiscard]] const std::vector<Vec2>& vertices() const { return full_; }

    /// Minkowski gauge: the edge cone containing v gives v = a w_i + b w_{i+1}
    /// with a, b >= 0, and the gauge is a + b.
    [[nodiscard]] double gauge(Vec2 v) const
    {
        if (v.x == 0.0 && v.y == 0.0) {
            return 0.0;
        }
        const std::size_t n = full_.size();
        double fallback = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 w0 = full_[i];
            const Vec2 w1 = full_[(i + 1) % n];
            const double det = cross(w0, w1);
            const double a = cross(v, w1) / det;
            const double b = cross(w0, v) / det;
            if (a >= 0.0 && b >= 0.0) {
                return a + b;
            }
            fallback = std::max(fallback, a + b);
        }
        // Only reachable through rounding on a cone boundary.
        return fallback;
    }

private:
    std::vector<Vec2> half_;
    std::vector<Vec2> full_;
};

inline double polygon_gauge(const Polygon& s, Vec2 v) { return s.gauge(v); }

/// Operator norm induced by the gauge: the maximum over vertices of the
/// gauge of the image.
inline double polygon_operator_norm(const Polygon& s, const Mat2& m)
{
    double out = 0.0;
    for (const Vec2& w : s.half_vertices()) {
        out = std::max(out, s.gauge(m * w));
    }
    return out;
}

struct PolygonNorm {
    const Polygon* polygon = nullptr;
    double operator()(const Mat2& m) const { return polygon_operator_norm(*polygon, m); }
};

/// Direction of Ker B_n. Supporting picks a line meeting S only at v_n (the
/// average of the two edge directions at v_n). Tangent uses the tangent of
/// the generating curve at v_n, which contains the whole edge [v_n, -v_0];
/// then B_n v_0 = -v_0 and ρ(B_n) = 1 ties with A_n^n B_n.
enum class KernelChoice { Supporting, Tangent };

struct ExampleFamily {
    int n = 1;
    double c = 0.0;
    Mat2 a;
    Mat2 b;
    /// v_i = A_n^i (1, 0) for i = 0..n.
    std::vector<Vec2> v;
    Polygon polygon;
};

inline ExampleFamily counterexample_family(int n, KernelChoice kernel = KernelChoice::Supporting)
{
    detail::require(n >= 1, "family index must be at least 1");
    const double c = lambert_c();
    const double root = std::pow(c, 1.0 / n);
    const Mat2 a = root * Mat2{1.0, 0.0, 1.0, 1.0};
    std::vector<Vec2> v;
    for (int i = 0; i <= n; ++i) {
        const double scale = std::pow(c, static_cast<double>(i) / n);
        v.push_back({scale, i * scale});
    }
    const Vec2 vn = v.back();
    Vec2 direction;
    if (kernel == KernelChoice::Tangent) {
        direction = vn + v.front();
    } else {
        auto unit = [](Vec2 w) { return (1.0 / std::hypot(w.x, w.y)) * w; };
        direction = unit(vn - v[static_cast<std::size_t>(n) - 1]) + unit(-v.front() - vn);
    }
    // φ vanishes on `direction` and φ(v_n) = 1.
    const Vec2 normal{direction.y, -direction.x};
    const Vec2 phi = (1.0 / dot(normal, vn)) * normal;
    const Mat2 b = outer(v.front(), phi);
    return {n, c, a, b, v, Polygon(v)};
}

struct ExampleVerification {
    int n = 1;
    std::size_t max_len = 0;
    double norm_a = 0.0;
    double norm_b = 0.0;
    double rho_product = 0.0;
    BoundsReport bounds;
    Word expected{"01"};
    bool unique = false;
    /// lower - runner_up.
    double gap = 0.0;
    bool passes = false;
};

inline ExampleVerification verify_example(int n, std::size_t max_len, KernelChoice kernel = KernelChoice::Supporting,
                                          unsigned threads = 0)
{
    detail::require(n >= 1, "family index must be at least 1");
    detail::require(max_len >= static_cast<std::size_t>(n) + 1, "maximum length must be at least n + 1");
    const ExampleFamily f = counterexample_family(n, kernel);
    ExampleVerification out;
    out.n = n;
    out.max_len = max_len;
    out.norm_a = polygon_operator_norm(f.polygon, f.a);
    out.norm_b = polygon_operator_norm(f.polygon, f.b);
    out.expected = Word(std::string(static_cast<std::size_t>(n), '0') + "1");
    const MatrixPair pair{f.a, f.b};
    out.rho_product = spectral_radius(word_product(pair, out.expected));
    out.bounds = brute_force(pair, max_len, PolygonNorm{&f.polygon}, BruteForceOptions{1e-9, threads});
    out.unique = out.bounds.ties.size() == 1 && out.bounds.best_word == out.expected;
    out.gap = out.bounds.runner_up < 0.0 ? out.bounds.lower : out.bounds.lower - out.bounds.runner_up;
    out.passes = std::abs(out.norm_a - 1.0) <= 1e-12 && std::abs(out.norm_b - 1.0) <= 1e-12 &&
                 std::abs(out.rho_product - 1.0) <= 1e-10 && out.unique && out.gap > 0.0;
    return out;
}

} // namespace smplab
