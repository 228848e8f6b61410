#pragma once

/// \file jsr.hpp
/// Joint spectral radius bounds for a pair: exhaustive three-member
/// sandwich, the A^n B scan, and region-based SMP certification.

#include "smplab/error.hpp"
#include "smplab/linalg.hpp"
#include "smplab/parallel.hpp"
#include "smplab/regions.hpp"
#include "smplab/sturmian.hpp"
#include "smplab/words.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace smplab {

struct EuclideanNorm {
    double operator()(const Mat2& m) const { return operator_norm_2(m); }
};

struct LengthRow {
    std::size_t length = 0;
    Word best_word{"0"};
    /// max ρ(Π)^{1/k} over primitive classes of length k (0 if there are none).
    double best_root = 0.0;
    /// max ‖Π‖^{1/k} over all 2^k products of length k.
    double max_norm_root = 0.0;
};

struct BoundsReport {
    double lower = 0.0;
    double upper = 0.0;
    Word best_word{"0"};
    /// Lyndon words whose root is within the tie tolerance of `lower`, best first.
    std::vector<Word> ties;
    /// Best root among classes other than best_word; -1 if there is none.
    double runner_up = -1.0;
    Word runner_up_word{"0"};
    std::vector<LengthRow> per_length;
};

struct BruteForceOptions {
    /// Relative tolerance for reporting tied classes.
    double tie_tol = 1e-9;
    unsigned threads = 0;
};

namespace detail {

inline constexpr std::size_t kMaxBruteForceLength = 24;

struct ClassValue {
    double root = 0.0;
    std::uint32_t bits = 0;
    std::uint8_t length = 0;
};

inline std::uint32_t word_bits(const Word& w)
{
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        bits = (bits << 1) | static_cast<std::uint32_t>(w[i]);
    }
    return bits;
}

inline Word bits_word(std::uint32_t bits, std::size_t length)
{
    std::string s(length, '0');
    for (std::size_t i = 0; i < length; ++i) {
        if ((bits >> (length - 1 - i)) & 1U) {
            s[i] = '1';
        }
    }
    return Word(s);
}

/// Shorter first, then lexicographic (equal lengths: numeric order of bits).
inline bool class_precedes(const ClassValue& a, const ClassValue& b)
{
    return a.length != b.length ? a.length < b.length : a.bits < b.bits;
}

inline double root_of(double log_rho, std::size_t k)
{
    return std::isinf(log_rho) && log_rho < 0.0 ? 0.0 : std::exp(log_rho / static_cast<double>(k));
}

/// Running product with a separate log scale, so deep products neither
/// overflow nor underflow.
struct ScaledProduct {
    Mat2 m = Mat2::identity();
    double log_scale = 0.0;

    [[nodiscard]] ScaledProduct times(const Mat2& f) const
    {
        ScaledProduct out{m * f, log_scale};
        const double s = out.m.max_abs();
        if (s != 0.0 && (s > 1e100 || s < 1e-100)) {
            out.m = (1.0 / s) * out.m;
            out.log_scale += std::log(s);
        }
        return out;
    }
};

template <class Norm>
void norm_dfs(const MatrixPair& p, const Norm& norm, const ScaledProduct& node, std::size_t depth,
              std::size_t max_len, std::vector<double>& max_log_norm)
{
    for (int l = 0; l < 2; ++l) {
        const ScaledProduct next = node.times(p.letter(l));
        const double n = norm(next.m);
        const double log_norm = n > 0.0 ? std::log(n) + next.log_scale : -std::numeric_limits<double>::infinity();
        max_log_norm[depth + 1] = std::max(max_log_norm[depth + 1], log_norm);
        if (depth + 1 < max_len) {
            norm_dfs(p, norm, next, depth + 1, max_len, max_log_norm);
        }
    }
}

} // namespace detail

/// Lower bound max ρ(Π)^{1/k} over one Lyndon representative per primitive
/// cyclic class of length <= L; upper bound min_k max ‖Π‖^{1/k} over all
/// products of length k <= L. Norm must be a submultiplicative operator norm.
template <class Norm = EuclideanNorm>
BoundsReport brute_force(const MatrixPair& p, std::size_t max_len, const Norm& norm = {},
                         const BruteForceOptions& opt = {})
{
    detail::require(max_len >= 1, "maximum word length must be at least 1");
    detail::require(max_len <= detail::kMaxBruteForceLength, "maximum word length above 24 is rejected");
    detail::require(p.a.finite() && p.b.finite(), "matrices must be finite");

    BoundsReport report;
    const double scale = std::max(operator_norm_2(p.a), operator_norm_2(p.b));
    if (scale == 0.0) {
        for (std::size_t k = 1; k <= max_len; ++k) {
            report.per_length.push_back({k, Word(k == 1 ? "0" : std::string(k - 1, '0') + "1"), 0.0, 0.0});
        }
        report.ties.push_back(report.best_word);
        return report;
    }
    const MatrixPair q{(1.0 / scale) * p.a, (1.0 / scale) * p.b};
    const unsigned threads = resolve_threads(opt.threads);

    // Lower bound: one task per length.
    std::vector<std::vector<detail::ClassValue>> classes(max_len + 1);
    parallel_for(max_len, threads, [&](std::size_t i) {
        const std::size_t k = i + 1;
        auto& out = classes[k];
        for_each_lyndon_word(k, [&](const Word& w) {
            if (w.size() == k) {
                out.push_back({detail::root_of(log_spectral_radius(q, w), k) * scale, detail::word_bits(w),
                               static_cast<std::uint8_t>(k)});
            }
        });
    });

    // Upper bound: one task per prefix of length `split`.
    const std::size_t split = std::min<std::size_t>(max_len, 4);
    std::vector<double> max_log_norm(max_len + 1, -std::numeric_limits<double>::infinity());
    for (std::size_t k = 1; k < split; ++k) {
        for (std::uint32_t bits = 0; bits < (1U << k); ++bits) {
            const Mat2 m = word_product(q, detail::bits_word(bits, k));
            const double n = norm(m);
            if (n > 0.0) {
                max_log_norm[k] = std::max(max_log_norm[k], std::log(n));
            }
        }
    }
    const std::size_t prefixes = std::size_t{1} << split;
    std::vector<std::vector<double>> partial(prefixes);
    parallel_for(prefixes, threads, [&](std::size_t b) {
        std::vector<double> local(max_len + 1, -std::numeric_limits<double>::infinity());
        detail::ScaledProduct node;
        for (std::size_t i = 0; i < split; ++i) {
            node = node.times(q.letter(static_cast<int>((b >> (split - 1 - i)) & 1U)));
        }
        const double n = norm(node.m);
        if (n > 0.0) {
            local[split] = std::log(n) + node.log_scale;
        }
        if (split < max_len) {
            detail::norm_dfs(q, norm, node, split, max_len, local);
        }
        partial[b] = std::move(local);
    });
    for (const auto& local : partial) {
        for (std::size_t k = split; k <= max_len; ++k) {
            max_log_norm[k] = std::max(max_log_norm[k], local[k]);
        }
    }

    // Merge.
    std::vector<detail::ClassValue> all;
    report.upper = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= max_len; ++k) {
        LengthRow row;
        row.length = k;
        row.max_norm_root = detail::root_of(max_log_norm[k], k) * scale;
        const detail::ClassValue* best = nullptr;
        for (const auto& c : classes[k]) {
            if (best == nullptr || c.root > best->root) {
                best = &c;
            }
        }
        if (best != nullptr) {
            row.best_word = detail::bits_word(best->bits, k);
            row.best_root = best->root;
        }
        report.per_length.push_back(row);
        report.upper = std::min(report.upper, row.max_norm_root);
        all.insert(all.end(), classes[k].begin(), classes[k].end());
    }

    double top = 0.0;
    for (const auto& c : all) {
        top = std::max(top, c.root);
    }
    report.lower = top;
    std::vector<detail::ClassValue> tied;
    for (const auto& c : all) {
        if (c.root >= top - opt.tie_tol * top) {
            tied.push_back(c);
        }
    }
    std::sort(tied.begin(), tied.end(), detail::class_precedes);
    const detail::ClassValue chosen = tied.front();
    for (const auto& c : tied) {
        report.ties.push_back(detail::bits_word(c.bits, c.length));
    }
    report.best_word = report.ties.front();
    for (const auto& c : all) {
        if ((c.bits != chosen.bits || c.length != chosen.length) && c.root > report.runner_up) {
            report.runner_up = c.root;
            report.runner_up_word = detail::bits_word(c.bits, c.length);
        }
    }
    return report;
}

enum class ScanDirection { APowB, BPowA };

inline const char* to_string(ScanDirection d) { return d == ScanDirection::APowB ? "A_pow_B" : "B_pow_A"; }

struct GelfandScan {
    ScanDirection direction = ScanDirection::APowB;
    /// Exponent of the best A^n B (or B^n A); -1 when ρ of the powered matrix wins.
    long best_n = -1;
    double value = 0.0;
    bool terminated = false;
    /// Number of exponents examined.
    std::size_t scanned = 0;

    /// Lyndon representative of the winning product.
    [[nodiscard]] Word word() const
    {
        const char powered = direction == ScanDirection::APowB ? '0' : '1';
        const char other = direction == ScanDirection::APowB ? '1' : '0';
        if (best_n < 0) {
            return Word(std::string(1, powered));
        }
        return lyndon_rotation(Word(std::string(static_cast<std::size_t>(best_n), powered) + other));
    }
};

inline constexpr std::size_t kGelfandCap = 10'000;

namespace detail {

/// Tail bounds in the eigenbasis of a diagonalizable A, for when ρ(A) itself
/// is (close to) the supremum and Euclidean norms of A^N never drop below
/// ρ(A)^N.
///
/// Complex spectrum: with P^{-1} A P = ρ R and B' = P^{-1} B P,
/// ρ(A^m B) = ρ^m ρ(R^m B') <= ρ^m G, where G = max over rotations R_φ of
/// ρ(R_φ B'). tr(R_φ B') ranges over [-τ, τ] with
/// τ = |(tr B', b'_12 - b'_21)| and ρ grows with |tr| at fixed det.
///
/// Real distinct spectrum |λ1| > |λ2|: in the weighted ∞-norm with weights
/// (1, ε), ‖A^m B'‖ = max(|λ1|^m (|b'_11| + ε|b'_12|), |λ2|^m (|b'_21|/ε + |b'_22|)).
struct DominantTail {
    enum class Kind { None, Complex, Real } kind = Kind::None;
    double g = 0.0;
    double b11 = 0.0, b12 = 0.0, b21 = 0.0, b22 = 0.0;
    double lambda2 = 0.0;

    static DominantTail of(const Mat2& a, const Mat2& b)
    {
        DominantTail out;
        const Spectrum sp = spectrum(a);
        if (sp.kind == SpectrumKind::ComplexConjugate && a.a12 != 0.0) {
            const double alpha = a.trace() / 2.0;
            const double beta = std::sqrt(std::max(0.0, a.det() - alpha * alpha));
            const Mat2 pm{a.a12, 0.0, alpha - a.a11, beta};
            const Mat2 bt = inverse(pm) * b * pm;
            const double tau = std::hypot(bt.trace(), bt.a12 - bt.a21);
            const double det = bt.det();
            const double disc = tau * tau - 4.0 * det;
            out.g = disc >= 0.0 ? (tau + std::sqrt(disc)) / 2.0 : std::sqrt(det);
            out.kind = Kind::Complex;
        } else if (sp.kind == SpectrumKind::RealDistinct && std::abs(sp.eigenvalues[1]) < std::abs(sp.eigenvalues[0])) {
            auto eigenvector = [&](double lambda) {
                // Rows of A - λI annihilate the eigenvector; use the larger row.
                const Vec2 r1{a.a11 - lambda, a.a12};
                const Vec2 r2{a.a21, a.a22 - lambda};
                const Vec2 r = std::hypot(r1.x, r1.y) >= std::hypot(r2.x, r2.y) ? r1 : r2;
                return Vec2{-r.y, r.x};
            };
            const Vec2 e1 = eigenvector(sp.eigenvalues[0]);
            const Vec2 e2 = eigenvector(sp.eigenvalues[1]);
            const Mat2 pm{e1.x, e2.x, e1.y, e2.y};
            if (std::abs(pm.det()) <= 1e-12 * std::hypot(e1.x, e1.y) * std::hypot(e2.x, e2.y)) {
                return out;
            }
            const Mat2 bt = inverse(pm) * b * pm;
            out.b11 = std::abs(bt.a11);
            out.b12 = std::abs(bt.a12);
            out.b21 = std::abs(bt.a21);
            out.b22 = std::abs(bt.a22);
            out.lambda2 = std::abs(sp.eigenvalues[1]);
            out.kind = Kind::Real;
        }
        return out;
    }

    /// True when ρ(A^m B) <= best^{m+1} for every m >= first.
    [[nodiscard]] bool closes(double best, std::size_t first) const
    {
        constexpr double margin = 1e-12;
        if (kind == Kind::Complex) {
            return g <= best * (1.0 + margin);
        }
        if (kind != Kind::Real || !(b11 < best * (1.0 - margin))) {
            return false;
        }
        const double eps = b12 > 0.0 ? (best - b11) / (2.0 * b12) : 1.0;
        const double r2 = b21 / eps + b22;
        if (r2 == 0.0 || lambda2 == 0.0) {
            return first >= 1 || r2 <= best;
        }
        return static_cast<double>(first) * std::log(lambda2 / best) + std::log(r2 / best) <= 0.0;
    }
};

} // namespace detail

/// sup over n >= 0 of ρ(A^n B)^{1/(n+1)} together with ρ(A).
///
/// Termination is rigorous. For N >= 1 let α = ‖A^N‖ / best^N and
/// K = max_{j<N} ‖A^j B‖ / best^{j+1}. Any m = qN + j with j < N satisfies
///   ρ(A^m B) <= ‖A^N‖^q ‖A^j B‖ <= α^q K best^{m+1},
/// so every m >= q0 N is dominated once α^{q0} K <= 1. The scan records the
/// horizon q0 N (0 when α <= 1 and K <= 1) and stops after reaching it.
/// A larger best later only tightens the bound. When ρ(A) itself is the
/// supremum, the eigenbasis bounds of DominantTail close the scan instead.
inline GelfandScan gelfand_scan(const MatrixPair& pair, ScanDirection direction, std::size_t cap = kGelfandCap)
{
    const MatrixPair p = direction == ScanDirection::APowB ? pair : pair.swapped();
    detail::require(p.a.finite() && p.b.finite(), "matrices must be finite");
    detail::require(p.b.max_abs() != 0.0, direction == ScanDirection::APowB
                                               ? "the multiplied matrix B must be nonzero"
                                               : "the multiplied matrix A must be nonzero");

    const double scale = std::max(operator_norm_2(p.a), operator_norm_2(p.b));
    const Mat2 a = (1.0 / scale) * p.a;
    const Mat2 b = (1.0 / scale) * p.b;
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    constexpr double slack = 1e-12;
    auto log_or_inf = [](double x) { return x > 0.0 ? std::log(x) : neg_inf; };

    GelfandScan out;
    out.direction = direction;
    double best = spectral_radius(a);
    std::vector<double> log_norm_pb; // log ‖A^j B‖ for j <= n
    double log_k = neg_inf;          // log K for the current best
    detail::ScaledProduct power;     // A^n
    double horizon = std::numeric_limits<double>::infinity();
    const detail::DominantTail dominant = detail::DominantTail::of(a, b);

    auto refresh_k = [&] {
        log_k = neg_inf;
        const double lb = std::log(best);
        for (std::size_t j = 0; j < log_norm_pb.size(); ++j) {
            log_k = std::max(log_k, log_norm_pb[j] - static_cast<double>(j + 1) * lb);
        }
    };

    for (std::size_t n = 0; n < cap; ++n) {
        const detail::ScaledProduct pb = power.times(b);
        const double root = detail::root_of(log_or_inf(spectral_radius(pb.m)) + pb.log_scale, n + 1);
        out.scanned = n + 1;
        log_norm_pb.push_back(log_or_inf(operator_norm_2(pb.m)) + pb.log_scale);
        if (root > best) {
            best = root;
            out.best_n = static_cast<long>(n);
            refresh_k();
        } else if (best > 0.0) {
            log_k = std::max(log_k, log_norm_pb.back() - static_cast<double>(n + 1) * std::log(best));
        }

        power = power.times(a);
        const double log_norm_power = log_or_inf(operator_norm_2(power.m)) + power.log_scale;
        const auto big_n = static_cast<double>(n + 1);
        if (log_norm_power == neg_inf) {
            // A^{n+1} = 0: every later product vanishes.
            out.terminated = true;
            break;
        }
        if (best > 0.0) {
            const double log_alpha = log_norm_power - big_n * std::log(best);
            if (log_alpha <= slack && log_k <= slack) {
                horizon = 0.0;
            } else if (log_alpha < 0.0) {
                const double q0 = std::max(0.0, std::ceil(log_k / -log_alpha));
                horizon = std::min(horizon, q0 * big_n);
            }
        }
        if (big_n >= horizon || dominant.closes(best, n + 1)) {
            out.terminated = true;
            break;
        }
    }
    out.value = best * scale;
    return out;
}

struct SmpCandidate {
    Word word{"0"};
    /// ρ(word)^{1/|word|}.
    double value = 0.0;
    bool certified = false;
    /// "reducible", "cross", "neg", "mix", "copar-sturmian" or "brute-force-only".
    std::string certificate = "brute-force-only";
    std::optional<double> jsr;
    double lower = 0.0;
    double upper = 0.0;
    std::vector<Word> ties;
    std::vector<GelfandScan> scans;
    std::string note;
};

struct CertifyOptions {
    double tol = 1e-9;
    std::size_t max_len = 12;
    Rational resolution{1, 1024};
    unsigned threads = 0;
};

namespace detail {

inline double word_root(const MatrixPair& p, const Word& w)
{
    return root_of(log_spectral_radius(p, w), w.size());
}

/// Picks the best of a few explicit candidates; ties within tol are listed,
/// the tie-break being shorter first, then lexicographic.
inline void settle(SmpCandidate& out, std::vector<std::pair<Word, double>> candidates, double tol)
{
    double top = 0.0;
    for (const auto& c : candidates) {
        top = std::max(top, c.second);
    }
    std::vector<Word> tied;
    for (const auto& c : candidates) {
        if (c.second >= top - tol * top &&
            std::find(tied.begin(), tied.end(), c.first) == tied.end()) {
            tied.push_back(c.first);
        }
    }
    std::sort(tied.begin(), tied.end(), [](const Word& a, const Word& b) {
        return a.size() != b.size() ? a.size() < b.size() : a.str() < b.str();
    });
    out.ties = tied;
    out.word = tied.front();
    out.jsr = top;
    out.lower = top;
    out.upper = top;
    out.certified = true;
    for (const auto& c : candidates) {
        if (c.first == out.word) {
            out.value = c.second;
        }
    }
}

inline void from_brute_force(SmpCandidate& out, const BoundsReport& bf)
{
    out.word = bf.best_word;
    out.value = bf.lower;
    out.lower = bf.lower;
    out.upper = bf.upper;
    out.ties = bf.ties;
    out.certified = false;
    out.jsr.reset();
}

} // namespace detail

/// Smallest k in [2, max_order] with M^k within tol of ρ(M)^k I (M a
/// scaled rational rotation), if any.
inline std::optional<int> rotation_order(const Mat2& m, double tol, int max_order = 64)
{
    if (spectrum(m).kind != SpectrumKind::ComplexConjugate) {
        return std::nullopt;
    }
    const Mat2 unit = (1.0 / spectral_radius(m)) * m;
    Mat2 power = unit;
    for (int k = 2; k <= max_order; ++k) {
        power = power * unit;
        if ((power - Mat2::identity()).max_abs() <= tol) {
            return k;
        }
    }
    return std::nullopt;
}

/// Region-based SMP certification: exact in the crossing, negative and
/// mixed regions (and for reducible pairs), an interval elsewhere.
inline SmpCandidate certify(const MatrixPair& p, const CertifyOptions& opt = {})
{
    detail::require(opt.tol > 0.0, "tolerance must be positive");
    const RegionFlags flags = classify(p, opt.tol);
    const double rho_a = spectral_radius(p.a);
    const double rho_b = spectral_radius(p.b);
    const Word a("0"), b("1"), ab("01");

    SmpCandidate out;
    auto brute = [&] {
        return brute_force(p, opt.max_len, EuclideanNorm{}, BruteForceOptions{opt.tol, opt.threads});
    };

    if (flags.reducible == Tri::True) {
        detail::settle(out, {{a, rho_a}, {b, rho_b}}, opt.tol);
        out.certificate = "reducible";
        return out;
    }
    if (flags.in_cross == Tri::True) {
        detail::settle(out, {{a, rho_a}, {b, rho_b}}, opt.tol);
        out.certificate = "cross";
        return out;
    }
    if (flags.in_neg == Tri::True) {
        detail::settle(out, {{a, rho_a}, {b, rho_b}, {ab, detail::word_root(p, ab)}}, opt.tol);
        out.certificate = "neg";
        return out;
    }
    if (flags.in_mix == Tri::True) {
        const double u = p.a.det();
        const double v = p.b.det();
        std::vector<std::pair<Word, double>> candidates{{a, rho_a}, {b, rho_b}};
        bool all_terminated = true;
        auto run = [&](ScanDirection d) {
            const GelfandScan s = gelfand_scan(p, d);
            out.scans.push_back(s);
            candidates.emplace_back(s.word(), detail::word_root(p, s.word()));
            all_terminated = all_terminated && s.terminated;
        };
        if (v <= 0.0 && 0.0 <= u) {
            run(ScanDirection::APowB);
        }
        if (u <= 0.0 && 0.0 <= v) {
            run(ScanDirection::BPowA);
        }
        detail::settle(out, candidates, opt.tol);
        out.certificate = "mix";
        if (!all_terminated) {
            out.note = "scan reached its cap before the tail bound closed";
            detail::from_brute_force(out, brute());
            return out;
        }
        for (const GelfandScan& s : out.scans) {
            const Mat2& powered = s.direction == ScanDirection::APowB ? p.a : p.b;
            if (spectral_radius(powered) >= *out.jsr * (1.0 - opt.tol)) {
                if (const auto k = rotation_order(powered, opt.tol)) {
                    out.note = "powered matrix satisfies M^" + std::to_string(*k) +
                               " = rho^k I; other SMPs may exist, exact certificate withheld";
                    detail::from_brute_force(out, brute());
                    return out;
                }
            }
        }
        return out;
    }
    if (flags.in_copar == Tri::True) {
        const BoundsReport bf = brute();
        detail::from_brute_force(out, bf);
        out.certificate = "copar-sturmian";
        try {
            const ConcavityReport cr = maximize_sturmian(p, opt.resolution, SturmianOptions{opt.tol});
            out.word = christoffel(cr.argmax_gamma.num, cr.argmax_gamma.den);
            out.value = std::exp(cr.max_value);
            out.lower = std::max(out.lower, out.value);
        } catch (const concavity_error& e) {
            out.certificate = "brute-force-only";
            out.note = e.what();
        }
        return out;
    }
    detail::from_brute_force(out, brute());
    if (out.upper <= out.lower * (1.0 + 1e-12) && out.ties.size() == 1) {
        out.certified = true;
        out.jsr = out.lower;
        out.certificate = "sandwich";
    }
    return out;
}

} // namespace smplab
