#include "smplab/constructions.hpp"
#include "smplab/regions.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace smplab;

namespace {

// Gauge by support lines: max over edges of <normal, v> / <normal, edge point>.
double support_gauge(const std::vector<Vec2>& vertices, Vec2 v)
{
    double best = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = vertices[i];
        const Vec2 q = vertices[(i + 1) % n];
        const Vec2 normal{q.y - p.y, p.x - q.x};
        best = std::max(best, dot(normal, v) / dot(normal, p));
    }
    return best;
}

double tuple_distance(const FiveTuple& a, const FiveTuple& b)
{
    double d = 0.0;
    const auto x = a.as_array();
    const auto y = b.as_array();
    for (std::size_t i = 0; i < 5; ++i) {
        d = std::max(d, std::abs(x[i] - y[i]) / (1.0 + std::abs(x[i])));
    }
    return d;
}

} // namespace

TEST(Lambert, SolvesFixedPoint)
{
    // Independent fixed-point iteration c = exp(-1 - c)... with c e^c = 1/e.
    double c = 0.5;
    for (int i = 0; i < 200; ++i) {
        c = std::exp(-1.0 - c);
    }
    EXPECT_NEAR(lambert_c(), c, 1e-15);
    EXPECT_NEAR(lambert_c() * std::exp(lambert_c()), std::exp(-1.0), 1e-16);
    EXPECT_NEAR(lambert_c(), 0.278464542761074, 1e-14);
}

TEST(Polygon, GaugeMatchesSupportLines)
{
    for (int n = 1; n <= 6; ++n) {
        const ExampleFamily f = counterexample_family(n);
        const auto vertices = f.polygon.vertices();
        PairSampler sampler(60 + n, 0, SampleDistribution::Normal);
        for (int i = 0; i < 2000; ++i) {
            const Vec2 v{sampler.entry(), sampler.entry()};
            EXPECT_NEAR(f.polygon.gauge(v), support_gauge(vertices, v), 1e-12 * (1.0 + std::hypot(v.x, v.y)));
        }
        for (const Vec2& w : vertices) {
            EXPECT_NEAR(f.polygon.gauge(w), 1.0, 1e-12);
        }
    }
}

TEST(Polygon, GaugeIsANorm)
{
    const Polygon square({{1, 0}, {0, 1}});
    EXPECT_NEAR(square.gauge({0.5, 0.5}), 1.0, 1e-15);
    EXPECT_NEAR(square.gauge({-2, 0}), 2.0, 1e-15);
    EXPECT_EQ(square.gauge({0, 0}), 0.0);
    PairSampler sampler(70, 0, SampleDistribution::Normal);
    for (int i = 0; i < 1000; ++i) {
        const Vec2 a{sampler.entry(), sampler.entry()};
        const Vec2 b{sampler.entry(), sampler.entry()};
        EXPECT_LE(square.gauge(a + b), square.gauge(a) + square.gauge(b) + 1e-12);
        EXPECT_NEAR(square.gauge(-3.0 * a), 3.0 * square.gauge(a), 1e-12);
    }
}

TEST(Polygon, RejectsNonConvex)
{
    EXPECT_THROW(Polygon({{1, 0}, {0.1, 0.1}, {0, 1}}), precondition_error);
    EXPECT_THROW(Polygon({{1, 0}, {0, 1}, {1, 1}}), precondition_error);
}

TEST(Polygon, OperatorNormIsMaxOverVertices)
{
    const Polygon square({{1, 0}, {0, 1}});
    EXPECT_NEAR(polygon_operator_norm(square, {1, 1, 0, 1}), 2.0, 1e-15);
    EXPECT_NEAR(polygon_operator_norm(square, Mat2::identity()), 1.0, 1e-15);
}

TEST(Family, NormsAndSpectralRadius)
{
    for (int n = 1; n <= 6; ++n) {
        const ExampleFamily f = counterexample_family(n);
        EXPECT_NEAR(polygon_operator_norm(f.polygon, f.a), 1.0, 1e-12) << n;
        EXPECT_NEAR(polygon_operator_norm(f.polygon, f.b), 1.0, 1e-12) << n;
        Mat2 w = f.b;
        for (int i = 0; i < n; ++i) {
            w = f.a * w;
        }
        EXPECT_NEAR(spectral_radius(w), 1.0, 1e-12) << n;
        EXPECT_NEAR(f.b.det(), 0.0, 1e-14);
        ASSERT_EQ(f.v.size(), static_cast<std::size_t>(n + 1));
        for (int i = 0; i <= n; ++i) {
            EXPECT_NEAR(f.v[static_cast<std::size_t>(i)].x, std::pow(f.c, static_cast<double>(i) / n), 1e-14);
        }
    }
}

TEST(Family, UniqueSmpUpToSix)
{
    for (int n = 1; n <= 6; ++n) {
        const ExampleVerification v = verify_example(n, static_cast<std::size_t>(2 * n + 4));
        EXPECT_TRUE(v.passes) << n;
        EXPECT_TRUE(v.unique) << n;
        EXPECT_GT(v.gap, 0.0) << n;
        std::string expected(static_cast<std::size_t>(n), '0');
        expected += '1';
        EXPECT_EQ(v.expected.str(), expected);
        EXPECT_EQ(v.bounds.best_word.str(), expected);
        EXPECT_NEAR(v.bounds.upper, 1.0, 1e-12);
    }
}

TEST(Family, PerturbationKeepsStructure)
{
    // Small perturbation of B_2 keeps A^2 B the best class among short words.
    const ExampleFamily f = counterexample_family(2);
    const MatrixPair p{f.a, f.b + Mat2{1e-4, -2e-4, 1.5e-4, 0.5e-4}};
    const BoundsReport r = brute_force(p, 10);
    EXPECT_EQ(r.best_word.str(), "001");
}

TEST(Family, TangentKernelTies)
{
    // The tangent kernel makes rho(B_1) = 1 as well, so the SMP is not unique.
    const ExampleFamily f = counterexample_family(1, KernelChoice::Tangent);
    EXPECT_NEAR(spectral_radius(f.b), 1.0, 1e-12);
    EXPECT_FALSE(verify_example(1, 8, KernelChoice::Tangent).unique);
}

TEST(Symmetrize, PreservesTupleAndSymmetry)
{
    PairSampler sampler(80, 0, SampleDistribution::Normal);
    int done = 0;
    for (int i = 0; i < 5000 && done < 1000; ++i) {
        const MatrixPair p = sampler.pair();
        if (classify(p).in_cross != Tri::True) {
            continue;
        }
        ++done;
        const MatrixPair s = symmetrize(p);
        EXPECT_LT(tuple_distance(five_tuple(p), five_tuple(s)), 1e-9);
        EXPECT_EQ(s.a.a12, 0.0);
        EXPECT_EQ(s.a.a21, 0.0);
        EXPECT_NEAR(s.b.a12, s.b.a21, 1e-12 * s.b.max_abs());
        // Symmetric matrices: norm equals spectral radius.
        EXPECT_NEAR(operator_norm_2(s.a), spectral_radius(s.a), 1e-12 * operator_norm_2(s.a));
        EXPECT_NEAR(operator_norm_2(s.b), spectral_radius(s.b), 1e-12 * operator_norm_2(s.b));
        // The product is strictly dominated.
        const double top = std::max(spectral_radius(s.a), spectral_radius(s.b));
        EXPECT_LT(std::sqrt(spectral_radius(s.a * s.b)), top);
    }
    EXPECT_EQ(done, 1000);
}

TEST(Symmetrize, RejectsNonCrossing)
{
    EXPECT_THROW(symmetrize({{1, 1, 0, 1}, {0, 1, 1, 0}}), precondition_error);
}

TEST(Realize, RoundTripOnRandomTuples)
{
    PairSampler sampler(90, 0, SampleDistribution::Normal);
    for (int i = 0; i < 10000; ++i) {
        const MatrixPair p = sampler.pair();
        const FiveTuple t = five_tuple(p);
        const Realization r = realize_from_tuple(t);
        EXPECT_LT(tuple_distance(t, five_tuple(r.pair)), 1e-8) << r.branch;
    }
}

TEST(Realize, SpecialBranches)
{
    // Rotation (complex A), Jordan block, scalar A.
    const std::vector<MatrixPair> cases{
        {{0, -1, 1, 0}, {2, 1, 0, 1}},
        {{1, 1, 0, 1}, {2, 0, 1, 3}},
        {Mat2::diag(2, 2), {0, -1, 1, 0}},
        {{1, 1, 0, 1}, Mat2::diag(2, 5)},
    };
    for (const MatrixPair& p : cases) {
        const Realization r = realize_from_tuple(five_tuple(p));
        EXPECT_LT(tuple_distance(five_tuple(p), five_tuple(r.pair)), 1e-12) << r.branch;
    }
    EXPECT_EQ(realize_from_tuple(five_tuple(cases[0])).branch, "rotation");
    EXPECT_EQ(realize_from_tuple(five_tuple(cases[1])).branch, "jordan");
    EXPECT_EQ(realize_from_tuple(five_tuple(cases[2])).branch, "scalar");
}

TEST(Realize, ReferenceTuple)
{
    const Realization r = realize_from_tuple({3, 3, 8, 1, 1});
    EXPECT_FALSE(r.reducible);
    EXPECT_EQ(classify(r.pair).in_copar, Tri::True);
}
