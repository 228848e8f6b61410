#pragma once

/// \file regions.hpp
/// Region membership of a pair: the algebraic criteria on matrices, the
/// trace-window criteria on five-tuples, a geometric fixed-point oracle, and
/// a Monte Carlo frequency probe.

#include "smplab/error.hpp"
#include "smplab/linalg.hpp"
#include "smplab/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace smplab {

/// Three-valued truth: a test whose margin lies within tolerance of its
/// boundary is Indeterminate rather than guessed.
enum class Tri { False, True, Indeterminate };

inline Tri tri_and(Tri a, Tri b)
{
    if (a == Tri::False || b == Tri::False) {
        return Tri::False;
    }
    if (a == Tri::Indeterminate || b == Tri::Indeterminate) {
        return Tri::Indeterminate;
    }
    return Tri::True;
}

inline Tri tri_or(Tri a, Tri b)
{
    if (a == Tri::True || b == Tri::True) {
        return Tri::True;
    }
    if (a == Tri::Indeterminate || b == Tri::Indeterminate) {
        return Tri::Indeterminate;
    }
    return Tri::False;
}

inline Tri tri_not(Tri a)
{
    switch (a) {
    case Tri::True: return Tri::False;
    case Tri::False: return Tri::True;
    default: return Tri::Indeterminate;
    }
}

inline Tri tri_all(std::initializer_list<Tri> values)
{
    Tri out = Tri::True;
    for (Tri t : values) {
        out = tri_and(out, t);
    }
    return out;
}

/// value > 0, with |value| <= tol undecided.
inline Tri positive(double value, double tol)
{
    if (!std::isfinite(value)) {
        return Tri::Indeterminate;
    }
    if (value > tol) {
        return Tri::True;
    }
    if (value < -tol) {
        return Tri::False;
    }
    return Tri::Indeterminate;
}

inline const char* to_string(Tri t)
{
    switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "indeterminate";
    }
}

struct RegionFlags {
    Tri in_cross = Tri::False;
    Tri in_mix = Tri::False;
    Tri in_neg = Tri::False;
    Tri in_copar = Tri::False;
    Tri in_anti = Tri::False;
    Tri in_complex = Tri::False;
    Tri reducible = Tri::False;
    /// Signed, scale-normalized distance to each boundary.
    std::map<std::string, double> margins;

    [[nodiscard]] std::array<Tri, 6> regions() const
    {
        return {in_cross, in_mix, in_neg, in_copar, in_anti, in_complex};
    }
    [[nodiscard]] bool any_indeterminate() const
    {
        const auto all = regions();
        return reducible == Tri::Indeterminate ||
               std::any_of(all.begin(), all.end(), [](Tri t) { return t == Tri::Indeterminate; });
    }
    /// Membership in one of the four regions with a known SMP structure.
    [[nodiscard]] Tri in_classified_union() const
    {
        return tri_or(tri_or(in_cross, in_mix), tri_or(in_neg, in_copar));
    }
};

namespace detail {

/// Raw normalized quantities shared by the pair and tuple classifiers.
struct RegionInputs {
    double det_a = 0.0;      // u / sA^2
    double det_b = 0.0;      // v / sB^2
    bool det_a_zero = false; // exactly singular
    bool det_b_zero = false;
    double disc_a = 0.0;     // (x^2 - 4u) / sA^2
    double disc_b = 0.0;
    double commutator = 0.0; // det(AB - BA) / (sA sB)^2
    double trace_gap = 0.0;  // (|z| - |xy|/2) / (sA sB)
    double trace_sign = 0.0; // z x y / (sA sB)^2
};

/// Applies the region definitions once each test's sign is known. Window
/// tests (for the tuple route) may override the commutator-based ones.
inline RegionFlags decide_regions(const RegionInputs& in, Tri reducible, double tol, Tri cross_test, Tri copar_test,
                                  Tri anti_test)
{
    RegionFlags f;
    f.reducible = reducible;
    const Tri diag_a = positive(in.disc_a, tol);
    const Tri diag_b = positive(in.disc_b, tol);
    const Tri pos_a = positive(in.det_a, tol);
    const Tri pos_b = positive(in.det_b, tol);
    const Tri neg_a = positive(-in.det_a, tol);
    const Tri neg_b = positive(-in.det_b, tol);

    f.in_mix = (in.det_a_zero || in.det_b_zero) ? Tri::True : positive(-in.det_a * in.det_b, tol);
    f.in_neg = tri_and(neg_a, neg_b);
    f.in_cross = tri_all({diag_a, diag_b, cross_test});
    f.in_copar = tri_all({pos_a, pos_b, diag_a, diag_b, copar_test});
    f.in_anti = tri_all({pos_a, pos_b, diag_a, diag_b, anti_test});
    f.in_complex = tri_or(positive(-in.disc_a, tol), positive(-in.disc_b, tol));

    if (reducible == Tri::True) {
        f.in_cross = f.in_mix = f.in_neg = f.in_copar = f.in_anti = f.in_complex = Tri::False;
    } else if (reducible == Tri::Indeterminate) {
        for (Tri* flag : {&f.in_cross, &f.in_mix, &f.in_neg, &f.in_copar, &f.in_anti, &f.in_complex}) {
            if (*flag == Tri::True) {
                *flag = Tri::Indeterminate;
            }
        }
    }

    f.margins = {{"commutator", in.commutator}, {"det_a", in.det_a},       {"det_b", in.det_b},
                 {"disc_a", in.disc_a},         {"disc_b", in.disc_b},     {"trace_gap", in.trace_gap},
                 {"trace_sign", in.trace_sign}, {"det_product", in.det_a * in.det_b}};
    return f;
}

inline Tri reducibility_tri(double normalized_commutator, double tol)
{
    const double m = std::abs(normalized_commutator);
    if (m <= std::min(tol, kCommutatorNoise)) {
        return Tri::True;
    }
    if (m <= tol) {
        return Tri::Indeterminate;
    }
    return Tri::False;
}

} // namespace detail

/// Classifies a pair with the algebraic region criteria:
///   cross:   both real-diagonalizable, det(AB-BA) > 0
///   mix:     det A det B <= 0
///   neg:     det A < 0 and det B < 0
///   copar:   both in GL+ and real-diagonalizable, det(AB-BA) < 0,
///            |tr AB| > |tr A tr B| / 2 and tr AB tr A tr B > 0
///   anti:    as copar up to the two trace conditions, which fail
///   complex: A or B has complex eigenvalues
/// Every test is made on a scale-normalized quantity.
inline RegionFlags classify(const MatrixPair& p, double tol = 1e-9)
{
    detail::require(tol > 0.0, "tolerance must be positive");
    const FiveTuple t = five_tuple(p);
    const double sa = operator_norm_2(p.a);
    const double sb = operator_norm_2(p.b);
    const ReducibilityVerdict red = is_reducible(p, tol);
    const Tri reducible = red.kind == Reducibility::Reducible       ? Tri::True
                          : red.kind == Reducibility::Indeterminate ? Tri::Indeterminate
                                                                    : Tri::False;
    detail::RegionInputs in;
    if (sa > 0.0 && sb > 0.0) {
        in.det_a = t.u / (sa * sa);
        in.det_b = t.v / (sb * sb);
        in.disc_a = (t.x * t.x - 4.0 * t.u) / (sa * sa);
        in.disc_b = (t.y * t.y - 4.0 * t.v) / (sb * sb);
        in.commutator = red.margin;
        in.trace_gap = (std::abs(t.z) - 0.5 * std::abs(t.x * t.y)) / (sa * sb);
        in.trace_sign = (t.z / (sa * sb)) * (t.x / sa) * (t.y / sb);
    }
    in.det_a_zero = t.u == 0.0;
    in.det_b_zero = t.v == 0.0;

    const Tri comm_pos = positive(in.commutator, tol);
    const Tri comm_neg = positive(-in.commutator, tol);
    const Tri copar_traces = tri_and(positive(in.trace_gap, tol), positive(in.trace_sign, tol));
    return detail::decide_regions(in, reducible, tol, comm_pos, tri_and(comm_neg, copar_traces),
                                  tri_and(comm_neg, tri_not(copar_traces)));
}

/// Classifies a realizable tuple with the trace-window criteria
///   cross ⟺ xy/2 - r < z < xy/2 + r,  r = sqrt((x^2-4u)(y^2-4v)) / 2,
///   copar ⟺ z above the window, anti ⟺ z below it (both with u, v > 0),
/// after flipping signs so that x, y >= 0. Scale per matrix is
/// max(|tr|, sqrt|det|).
inline RegionFlags classify_tuple(FiveTuple t, double tol = 1e-9)
{
    detail::require(tol > 0.0, "tolerance must be positive");
    detail::require(realizable(t), "tuple is not realizable by a real pair");
    if (t.x < 0.0) {
        t.x = -t.x;
        t.z = -t.z;
    }
    if (t.y < 0.0) {
        t.y = -t.y;
        t.z = -t.z;
    }
    auto scale_of = [](double tr, double det) {
        const double s = std::max(std::abs(tr), std::sqrt(std::abs(det)));
        return s > 0.0 ? s : 1.0;
    };
    const double sa = scale_of(t.x, t.u);
    const double sb = scale_of(t.y, t.v);
    const double sab = sa * sb;

    detail::RegionInputs in;
    in.det_a = t.u / (sa * sa);
    in.det_b = t.v / (sb * sb);
    in.det_a_zero = t.u == 0.0;
    in.det_b_zero = t.v == 0.0;
    in.disc_a = (t.x * t.x - 4.0 * t.u) / (sa * sa);
    in.disc_b = (t.y * t.y - 4.0 * t.v) / (sb * sb);
    in.commutator = commutator_polynomial(t) / (sab * sab);
    in.trace_gap = (std::abs(t.z) - 0.5 * std::abs(t.x * t.y)) / sab;
    in.trace_sign = (t.z / sab) * (t.x / sa) * (t.y / sb);

    Tri cross = Tri::Indeterminate;
    Tri above = Tri::Indeterminate;
    Tri below = Tri::Indeterminate;
    RegionFlags flags;
    if (in.disc_a > 0.0 && in.disc_b > 0.0) {
        const double half_width = 0.5 * std::sqrt((t.x * t.x - 4.0 * t.u) * (t.y * t.y - 4.0 * t.v));
        const double centre = 0.5 * t.x * t.y;
        const double from_lower = (t.z - (centre - half_width)) / sab;
        const double to_upper = ((centre + half_width) - t.z) / sab;
        cross = tri_and(positive(from_lower, tol), positive(to_upper, tol));
        above = positive(-to_upper, tol);
        below = positive(-from_lower, tol);
        flags = detail::decide_regions(in, detail::reducibility_tri(in.commutator, tol), tol, cross, above, below);
        flags.margins["window_lower"] = from_lower;
        flags.margins["window_upper"] = to_upper;
    } else {
        flags = detail::decide_regions(in, detail::reducibility_tri(in.commutator, tol), tol, cross, above, below);
    }
    return flags;
}

enum class AxisKind { Crossing, CoParallel, AntiParallel, NonCrossing, Degenerate };

inline const char* to_string(AxisKind k)
{
    switch (k) {
    case AxisKind::Crossing: return "crossing";
    case AxisKind::CoParallel: return "co-parallel";
    case AxisKind::AntiParallel: return "anti-parallel";
    case AxisKind::NonCrossing: return "non-crossing";
    default: return "degenerate";
    }
}

/// Fixed-point configuration of the Möbius maps f_A, f_B on the real
/// projective line. fixed_points = {attractor A, repellor A, attractor B,
/// repellor B}; infinity is +inf.
struct AxisConfig {
    AxisKind kind = AxisKind::Degenerate;
    std::array<double, 4> fixed_points{};
    double cross_ratio = 0.0;
};

namespace detail {

struct Projective {
    double p = 1.0;
    double q = 0.0;

    /// The extended real p / q.
    [[nodiscard]] double value() const
    {
        return q == 0.0 ? std::numeric_limits<double>::infinity() : p / q;
    }
    /// Position on the circle: twice the angle of (p, q), in [0, 2π).
    [[nodiscard]] double angle() const
    {
        double a = 2.0 * std::atan2(q, p);
        while (a < 0.0) {
            a += 2.0 * std::numbers::pi;
        }
        while (a >= 2.0 * std::numbers::pi) {
            a -= 2.0 * std::numbers::pi;
        }
        return a;
    }
};

inline double bracket(const Projective& a, const Projective& b) { return a.p * b.q - a.q * b.p; }

/// Eigen-direction of M for eigenvalue lambda as a projective point; the
/// fixed point t = p / q solves c t^2 + (d - a) t - b = 0.
inline Projective eigen_direction(const Mat2& m, double lambda)
{
    const Vec2 first{m.a12, lambda - m.a11};
    const Vec2 second{lambda - m.a22, m.a21};
    const Vec2 pick = std::hypot(first.x, first.y) >= std::hypot(second.x, second.y) ? first : second;
    const double n = std::hypot(pick.x, pick.y);
    return {pick.x / n, pick.y / n};
}

struct FixedPoints {
    Projective attractor;
    Projective repellor;
    bool valid = false;
};

inline FixedPoints fixed_points_of(const Mat2& m)
{
    const double tr = m.trace();
    const double det = m.det();
    const double disc = tr * tr - 4.0 * det;
    const double scale = std::max(1e-300, operator_norm_2(m) * operator_norm_2(m));
    if (!(disc > 1e-12 * scale)) {
        return {};
    }
    const double root = std::sqrt(disc);
    const double big = tr >= 0.0 ? (tr + root) / 2.0 : (tr - root) / 2.0;
    const double small = big != 0.0 ? det / big : 0.0;
    return {eigen_direction(m, big), eigen_direction(m, small), true};
}

} // namespace detail

/// Independent geometric classification from fixed points. Crossing when the
/// fixed points of f_A separate those of f_B (negative cross-ratio). For
/// non-crossing pairs in GL+, the translation axes are oriented repellor to
/// attractor: walking from A's repellor to its attractor along the arc free of
/// B's points, meeting B's attractor next means co-parallel, B's repellor
/// means anti-parallel.
inline AxisConfig geometric_oracle(const MatrixPair& pair)
{
    AxisConfig out;
    const detail::FixedPoints fa = detail::fixed_points_of(pair.a);
    const detail::FixedPoints fb = detail::fixed_points_of(pair.b);
    if (!fa.valid || !fb.valid) {
        return out;
    }
    out.fixed_points = {fa.attractor.value(), fa.repellor.value(), fb.attractor.value(), fb.repellor.value()};

    const double num = detail::bracket(fa.attractor, fb.attractor) * detail::bracket(fa.repellor, fb.repellor);
    const double den = detail::bracket(fa.attractor, fb.repellor) * detail::bracket(fa.repellor, fb.attractor);
    constexpr double separation_floor = 1e-12;
    if (std::abs(num) < separation_floor || std::abs(den) < separation_floor) {
        return out; // a shared fixed point: reducible
    }
    out.cross_ratio = num / den;
    if (out.cross_ratio < 0.0) {
        out.kind = AxisKind::Crossing;
        return out;
    }
    if (!(pair.a.det() > 0.0 && pair.b.det() > 0.0)) {
        out.kind = AxisKind::NonCrossing;
        return out;
    }

    enum Label { RA, AA, RB, AB };
    std::array<std::pair<double, Label>, 4> circle{{{fa.repellor.angle(), RA},
                                                    {fa.attractor.angle(), AA},
                                                    {fb.repellor.angle(), RB},
                                                    {fb.attractor.angle(), AB}}};
    std::sort(circle.begin(), circle.end());
    auto index_of = [&](Label l) {
        return static_cast<int>(std::find_if(circle.begin(), circle.end(), [l](const auto& e) { return e.second == l; }) -
                                circle.begin());
    };
    const int ra = index_of(RA);
    const int aa = index_of(AA);
    const int step = ((aa - ra + 4) % 4 == 1) ? 1 : -1;
    const Label after = circle[static_cast<std::size_t>((aa + step + 4) % 4)].second;
    out.kind = after == AB ? AxisKind::CoParallel : AxisKind::AntiParallel;
    return out;
}

enum class SampleDistribution { Normal, Uniform01 };

inline SampleDistribution parse_distribution(const std::string& name)
{
    if (name == "normal") {
        return SampleDistribution::Normal;
    }
    if (name == "uniform01") {
        return SampleDistribution::Uniform01;
    }
    throw precondition_error("unknown distribution '" + name + "' (expected normal or uniform01)");
}

/// Deterministic pair sampler with iid entries.
class PairSampler {
public:
    PairSampler(std::uint64_t seed, std::uint64_t stream, SampleDistribution dist) : dist_(dist)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }

    double entry()
    {
        return dist_ == SampleDistribution::Normal ? normal_(engine_) : uniform_(engine_);
    }
    Mat2 matrix() { return {entry(), entry(), entry(), entry()}; }
    MatrixPair pair() { return {matrix(), matrix()}; }
    std::mt19937_64& engine() { return engine_; }

private:
    SampleDistribution dist_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

struct MonteCarloCounts {
    std::uint64_t samples = 0;
    std::uint64_t cross = 0;
    std::uint64_t mix = 0;
    std::uint64_t neg = 0;
    std::uint64_t copar = 0;
    std::uint64_t anti = 0;
    std::uint64_t complex = 0;
    std::uint64_t reducible = 0;
    std::uint64_t indeterminate = 0;
    /// cross, mix, neg or copar.
    std::uint64_t union_of_four = 0;
    std::uint64_t cross_and_mix = 0;
    std::uint64_t cross_and_neg = 0;
    std::uint64_t copar_and_cross = 0;
    /// Neither in the four-region union nor reducible nor indeterminate.
    std::uint64_t unclassified = 0;

    MonteCarloCounts& operator+=(const MonteCarloCounts& o)
    {
        samples += o.samples;
        cross += o.cross;
        mix += o.mix;
        neg += o.neg;
        copar += o.copar;
        anti += o.anti;
        complex += o.complex;
        reducible += o.reducible;
        indeterminate += o.indeterminate;
        union_of_four += o.union_of_four;
        cross_and_mix += o.cross_and_mix;
        cross_and_neg += o.cross_and_neg;
        copar_and_cross += o.copar_and_cross;
        unclassified += o.unclassified;
        return *this;
    }

    void record(const RegionFlags& f)
    {
        ++samples;
        cross += f.in_cross == Tri::True;
        mix += f.in_mix == Tri::True;
        neg += f.in_neg == Tri::True;
        copar += f.in_copar == Tri::True;
        anti += f.in_anti == Tri::True;
        complex += f.in_complex == Tri::True;
        reducible += f.reducible == Tri::True;
        const bool undecided = f.any_indeterminate();
        indeterminate += undecided;
        const bool in_union = f.in_classified_union() == Tri::True;
        union_of_four += in_union;
        cross_and_mix += f.in_cross == Tri::True && f.in_mix == Tri::True;
        cross_and_neg += f.in_cross == Tri::True && f.in_neg == Tri::True;
        copar_and_cross += f.in_copar == Tri::True && f.in_cross == Tri::True;
        unclassified += !in_union && f.reducible != Tri::True && !undecided;
    }
};

/// Samples N pairs in fixed-size blocks, each with its own derived seed, so
/// the totals do not depend on the worker count.
inline MonteCarloCounts monte_carlo_regions(std::uint64_t seed, std::uint64_t samples, SampleDistribution dist,
                                            double tol = 1e-9, unsigned threads = 0)
{
    constexpr std::uint64_t block = 4096;
    const std::uint64_t blocks = (samples + block - 1) / block;
    std::vector<MonteCarloCounts> partial(blocks);
    parallel_for(blocks, resolve_threads(threads), [&](std::size_t b) {
        PairSampler sampler(seed, b, dist);
        const std::uint64_t begin = b * block;
        const std::uint64_t end = std::min(samples, begin + block);
        for (std::uint64_t i = begin; i < end; ++i) {
            partial[b].record(classify(sampler.pair(), tol));
        }
    });
    MonteCarloCounts total;
    for (const auto& p : partial) {
        total += p;
    }
    return total;
}

} // namespace smplab
