#pragma once

/// \file sturmian.hpp
/// Lyapunov exponents of Sturmian measures, f(γ) = λ(μ_γ), and their
/// maximization over the slope for co-parallel pairs.
///
/// For a rational slope p/q the Sturmian measure is carried by the periodic
/// orbit of christoffel(p, q), so f(p/q) = (1/q) log ρ(christoffel(p, q)(A, B)).

#include "smplab/error.hpp"
#include "smplab/linalg.hpp"
#include "smplab/regions.hpp"
#include "smplab/words.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace smplab {

struct LyapunovSample {
    Rational gamma;
    double value = 0.0;
    /// The Christoffel product is nilpotent; value is -infinity.
    bool nilpotent = false;
};

inline LyapunovSample lyapunov_rational(const MatrixPair& p, std::int64_t num, std::int64_t den)
{
    detail::require(den >= 1 && num >= 0 && num <= den, "slope must satisfy 0 <= num <= den");
    detail::require(std::gcd(num, den) == 1, "slope must be in lowest terms");
    const Word w = christoffel(num, den);
    const double log_rho = log_spectral_radius(p, w);
    LyapunovSample s{Rational(num, den), log_rho / static_cast<double>(den), false};
    s.nilpotent = std::isinf(log_rho) && log_rho < 0.0;
    return s;
}

inline LyapunovSample lyapunov_rational(const MatrixPair& p, Rational gamma)
{
    return lyapunov_rational(p, gamma.num, gamma.den);
}

struct IrrationalLyapunov {
    double value = 0.0;
    /// |last value - previous value|, the error estimate.
    double increment = 0.0;
    std::vector<LyapunovSample> convergents;
};

/// Continued-fraction convergents p_k/q_k of gamma (k = 0..depth-1, or until
/// gamma is represented exactly).
inline std::vector<Rational> convergents(double gamma, std::size_t depth, std::int64_t max_den = 10'000'000)
{
    std::vector<Rational> out;
    std::int64_t h_prev = 1, h_prev2 = 0;
    std::int64_t k_prev = 0, k_prev2 = 1;
    double x = gamma;
    for (std::size_t i = 0; i < depth; ++i) {
        const double a_real = std::floor(x);
        const auto a = static_cast<std::int64_t>(a_real);
        const std::int64_t h = a * h_prev + h_prev2;
        const std::int64_t k = a * k_prev + k_prev2;
        if (k > max_den) {
            break;
        }
        out.emplace_back(h, k);
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        const double frac = x - a_real;
        if (frac < 1e-12 || std::abs(static_cast<double>(h) / static_cast<double>(k) - gamma) < 1e-15) {
            break;
        }
        x = 1.0 / frac;
    }
    return out;
}

inline IrrationalLyapunov lyapunov_irrational(const MatrixPair& p, double gamma, std::size_t depth)
{
    detail::require(gamma > 0.0 && gamma < 1.0, "slope must lie strictly between 0 and 1");
    detail::require(depth >= 1, "depth must be positive");
    IrrationalLyapunov out;
    for (const Rational& c : convergents(gamma, depth)) {
        out.convergents.push_back(lyapunov_rational(p, c));
    }
    out.value = out.convergents.back().value;
    if (out.convergents.size() >= 2) {
        out.increment = std::abs(out.value - out.convergents[out.convergents.size() - 2].value);
    }
    return out;
}

struct ConcavityViolation {
    Rational left;
    Rational middle;
    Rational right;
    /// How far f(middle) falls below the chord (positive).
    double deficit = 0.0;
};

struct ConcavityReport {
    /// Every evaluated slope, sorted.
    std::vector<LyapunovSample> grid;
    std::vector<ConcavityViolation> midpoint_violations;
    Rational argmax_gamma;
    double max_value = 0.0;
    Rational bracket_low;
    Rational bracket_high;
};

class concavity_error : public std::runtime_error {
public:
    concavity_error(const std::string& what, ConcavityReport report)
        : std::runtime_error(what), report_(std::move(report))
    {
    }
    [[nodiscard]] const ConcavityReport& report() const { return report_; }

private:
    ConcavityReport report_;
};

/// Consecutive-triple chord test over sorted samples: the piecewise-linear
/// interpolant is concave iff no sample lies below the chord of its neighbours.
inline std::vector<ConcavityViolation> concavity_audit(const std::vector<LyapunovSample>& sorted, double tol)
{
    std::vector<ConcavityViolation> out;
    for (std::size_t i = 1; i + 1 < sorted.size(); ++i) {
        const LyapunovSample& l = sorted[i - 1];
        const LyapunovSample& m = sorted[i];
        const LyapunovSample& r = sorted[i + 1];
        const double t1 = l.gamma.value(), t2 = m.gamma.value(), t3 = r.gamma.value();
        const double chord = l.value + (r.value - l.value) * (t2 - t1) / (t3 - t1);
        if (m.value < chord - tol) {
            out.push_back({l.gamma, m.gamma, r.gamma, chord - m.value});
        }
    }
    return out;
}

struct SturmianOptions {
    double classify_tol = 1e-9;
    double audit_tol = 1e-10;
    bool abort_on_violation = true;
};

/// Stern-Brocot descent for the slope maximizing f. State: a centre c with
/// Farey neighbours l < c < r bracketing the argmax. With cl = mediant(l, c)
/// and cr = mediant(c, r): f(cl) > f(c) moves to [l, c] centred at cl,
/// f(cr) > f(c) moves to [c, r] centred at cr, otherwise the bracket narrows
/// to [cl, cr] around c. Concavity keeps the argmax inside the bracket.
inline ConcavityReport maximize_sturmian(const MatrixPair& p, Rational resolution, const SturmianOptions& opt = {})
{
    detail::require(resolution > Rational(0), "resolution must be positive");
    detail::require(classify(p, opt.classify_tol).in_copar == Tri::True,
                    "maximize_sturmian requires a co-parallel pair");

    std::map<Rational, LyapunovSample> cache;
    auto f = [&](Rational g) {
        auto it = cache.find(g);
        if (it == cache.end()) {
            it = cache.emplace(g, lyapunov_rational(p, g)).first;
        }
        return it->second.value;
    };

    Rational low(0, 1), high(1, 1), centre(1, 2);
    f(low);
    f(high);
    while (high - low >= resolution) {
        const Rational left = mediant(low, centre);
        const Rational right = mediant(centre, high);
        const double fc = f(centre);
        if (f(left) > fc) {
            high = centre;
            centre = left;
        } else if (f(right) > fc) {
            low = centre;
            centre = right;
        } else {
            low = left;
            high = right;
        }
    }

    ConcavityReport report;
    for (const auto& [g, s] : cache) {
        report.grid.push_back(s);
    }
    report.bracket_low = low;
    report.bracket_high = high;
    report.argmax_gamma = centre;
    report.max_value = f(centre);
    for (Rational g : {low, high}) {
        if (f(g) > report.max_value) {
            report.argmax_gamma = g;
            report.max_value = f(g);
        }
    }
    report.midpoint_violations = concavity_audit(report.grid, opt.audit_tol);
    if (opt.abort_on_violation && !report.midpoint_violations.empty()) {
        const auto& v = report.midpoint_violations.front();
        std::ostringstream msg;
        msg << "Lyapunov function not concave at " << v.middle.str() << " (between " << v.left.str() << " and "
            << v.right.str() << ", deficit " << v.deficit << "); the pair is not co-parallel or the evaluation broke down";
        throw concavity_error(msg.str(), std::move(report));
    }
    return report;
}

/// Reduced fractions in [0, 1] with denominator <= max_den, ascending.
inline std::vector<Rational> farey_sequence(std::int64_t max_den)
{
    std::vector<Rational> out;
    for (std::int64_t q = 1; q <= max_den; ++q) {
        for (std::int64_t p = 0; p <= q; ++p) {
            if (std::gcd(p, q) == 1) {
                out.emplace_back(p, q);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Checks f((t1+t2)/2) > (f(t1)+f(t2))/2 for every pair on the Farey grid
/// whose midpoint is also on the grid.
inline std::vector<ConcavityViolation> farey_midpoint_audit(const MatrixPair& p, std::int64_t max_den, double tol)
{
    const std::vector<Rational> grid = farey_sequence(max_den);
    std::map<Rational, double> values;
    for (const Rational& g : grid) {
        values[g] = lyapunov_rational(p, g).value;
    }
    std::vector<ConcavityViolation> out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 2; j < grid.size(); ++j) {
            const Rational sum = grid[i] + grid[j];
            const Rational mid(sum.num, sum.den * 2);
            const auto it = values.find(mid);
            if (it == values.end()) {
                continue;
            }
            const double average = 0.5 * (values[grid[i]] + values[grid[j]]);
            if (!(it->second > average - tol)) {
                out.push_back({grid[i], mid, grid[j], average - it->second});
            }
        }
    }
    return out;
}

/// ρ(AB) - ρ(A)ρ(B), positive on the co-parallel region.
inline double copar_gap(const MatrixPair& p, double tol = 1e-9)
{
    detail::require(classify(p, tol).in_copar == Tri::True, "copar_gap requires a co-parallel pair");
    return spectral_radius(p.a * p.b) - spectral_radius(p.a) * spectral_radius(p.b);
}

struct ClassMaximizer {
    Word best{"0"};
    double rho = 0.0;
    /// Words of the class whose spectral radius is within the tolerance of the best.
    std::vector<Word> ties;
};

/// Exhaustive maximization of ρ over all words with a zeros and b ones.
inline ClassMaximizer class_maximizers(const MatrixPair& p, std::size_t a, std::size_t b, double rel_tol = 1e-9)
{
    detail::require(a + b >= 1 && a + b <= 24, "class size must be between 1 and 24");
    const std::size_t n = a + b;
    std::vector<std::pair<Word, double>> all;
    std::string letters(a, '0');
    letters.append(b, '1');
    do {
        Word w(letters);
        all.emplace_back(w, spectral_radius(word_product(p, w)));
    } while (std::next_permutation(letters.begin(), letters.end()));
    (void)n;
    ClassMaximizer out;
    for (const auto& [w, r] : all) {
        if (r > out.rho) {
            out.rho = r;
            out.best = w;
        }
    }
    for (const auto& [w, r] : all) {
        if (r >= out.rho * (1.0 - rel_tol)) {
            out.ties.push_back(w);
        }
    }
    return out;
}

} // namespace smplab
