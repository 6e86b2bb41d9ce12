#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"

using namespace solenoid;

TEST_CASE("trigonometric filter evaluation") {
    const FilterCoeffs haar = haar_coeffs();
    CHECK(std::abs(m0_eval(haar, 0.0) - Complex(std::numbers::sqrt2, 0.0)) <= 1e-15);
    CHECK(std::abs(m0_eval(haar, 0.5)) <= 1e-15);

    FilterCoeffs c;
    c.N = 3;
    c.a[-2] = Complex(0.3, -0.1);
    c.a[0] = Complex(0.7, 0.2);
    c.a[3] = Complex(-0.4, 0.5);
    SplitMix64 rng(301);
    for (int i = 0; i < 50; ++i) {
        const double x = rng.next_double();
        CHECK(std::abs(m0_eval(c, x) - m0_eval(c, x + 1.0)) <= 1e-14);
        CHECK(std::abs(m0_eval(c, x) - m0_eval(c, x - 1.0)) <= 1e-14);
    }
    CHECK(filter_arity(FilterSpec{haar}) == 2);
    CHECK(filter_arity(FilterSpec{c}) == 3);
    CHECK(filter_arity(FilterSpec{shannon_step(3)}) == 2);
}

TEST_CASE("low-pass normalization residuals") {
    CHECK(qmf_residual(haar_coeffs(), 2) <= 1e-12);
    CHECK(qmf_residual(haar_coeffs(), 6) <= 1e-12);
    CHECK(qmf_residual(shannon_step(4)) <= 1e-15);

    FilterCoeffs c; // m0 = sqrt(2): normalization off by exactly 1
    c.a[0] = Complex(std::numbers::sqrt2, 0.0);
    CHECK(std::abs(qmf_residual(c, 4) - 1.0) <= 1e-12);

    CHECK_THROWS_AS(shannon_step(1), InvalidSpec);
}

TEST_CASE("filter_step refines and coarsens native step filters exactly") {
    const StepFunction m0 = shannon_step(3);
    const FilterSpec spec{m0};
    const StepFunction up = filter_step(spec, 5);
    CHECK(max_abs_diff(up, refine(m0, up.basis)) == 0.0);
    const StepFunction down = filter_step(spec, 2);
    CHECK(max_abs_diff(refine(down, m0.basis), m0) == 0.0);
    const StepFunction same = filter_step(spec, 3);
    CHECK(max_abs_diff(same, m0) == 0.0);
    for (std::uint64_t j = 0; j < m0.size(); ++j) {
        const double mid = (static_cast<double>(j) + 0.5) / static_cast<double>(m0.size());
        CHECK(filter_eval(spec, mid) == m0.values[j]);
        CHECK(filter_eval(spec, mid - 1.0) == m0.values[j]);
    }
}

TEST_CASE("cascade products telescope across one scale") {
    const FilterSpec haar{haar_coeffs()};
    const FreqGrid g = make_grid(4.0, 64);
    const FreqGrid gh = make_grid(2.0, 64);
    const ScalingApprox full = cascade_product(haar, 12, g);
    const ScalingApprox tail = cascade_product(haar, 11, gh);
    for (std::int64_t i = 0; i < g.M; ++i) {
        const Complex factor =
            filter_eval(haar, grid_point(g, i) / 2.0) / std::numbers::sqrt2;
        CHECK(std::abs(full.values[static_cast<std::size_t>(i)] -
                       factor * tail.values[static_cast<std::size_t>(i)]) <= 1e-14);
    }
    // x = 0 sits on this grid and the product there is 1
    CHECK(grid_point(g, 32) == 0.0);
    CHECK(std::abs(full.values[32] - Complex(1.0, 0.0)) <= 1e-14);

    CHECK_THROWS_AS(make_grid(0.0, 16), InvalidSpec);
    CHECK_THROWS_AS(cascade_product(haar, 0, g), InvalidSpec);
}

TEST_CASE("the half-band scaling transform is an exact indicator") {
    const FilterSpec spec{shannon_step(4)};
    const FreqGrid g = make_grid(8.0, 2048);
    const ScalingApprox s = cascade_product(spec, 8, g);
    for (std::int64_t i = 0; i < g.M; ++i) {
        const double x = grid_point(g, i);
        const Complex expect = (x >= -0.5 && x < 0.5) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
        CHECK(s.values[static_cast<std::size_t>(i)] == expect);
    }
    CHECK(scaling_residual(s, spec) == 0.0);

    // grid Parseval mass of the indicator is exactly 1
    Complex mass(0.0, 0.0);
    for (const Complex& v : s.values) mass += v * std::conj(v);
    CHECK(mass.real() * (2.0 * g.T / static_cast<double>(g.M)) == 1.0);
}

TEST_CASE("the two-tap cascade matches its closed form") {
    // truncation scales as 2^-K (phase tail pi x 2^-K times |phihat| ~ 1/(pi x))
    const FilterSpec haar{haar_coeffs()};
    const FreqGrid g = make_grid(8.0, 256);
    const ScalingApprox s = cascade_product(haar, 35, g);
    for (std::int64_t i = 0; i < g.M; ++i) {
        const double x = grid_point(g, i);
        Complex oracle(1.0, 0.0);
        if (x != 0.0) {
            const double px = std::numbers::pi * x;
            oracle = std::polar(1.0, -px) * (std::sin(px) / px);
        }
        CHECK(std::abs(s.values[static_cast<std::size_t>(i)] - oracle) <= 1e-10);
    }
}

TEST_CASE("scaling residual measures the refinement equation") {
    const FilterSpec haar{haar_coeffs()};
    const ScalingApprox s = cascade_product(haar, 20, make_grid(8.0, 131072));
    CHECK(scaling_residual(s, haar) <= 1e-6);

    const FreqGrid g = make_grid(2.0, 16);
    const ScalingApprox zero{g, std::vector<Complex>(16, Complex(0.0, 0.0)), 3};
    CHECK(scaling_residual(zero, haar) == 0.0);
}

TEST_CASE("the scaling embedding is isometric for the half-band pair") {
    const StepFunction m0 = shannon_step(3);
    const FilterSpec spec{m0};
    const StepFunction h = const_step(m0.basis, Complex(1.0, 0.0));

    const StepFunction one = const_step(m0.basis, Complex(1.0, 0.0));
    CHECK(embed_isometry_residual(spec, h, one, 0, 64, 1.0) <= 1e-10);

    StepFunction xi = const_step(m0.basis, Complex(0.0, 0.0));
    for (std::uint64_t c = 0; c < m0.size() / 2; ++c) xi.values[c] = Complex(1.0, 0.0);
    CHECK(embed_isometry_residual(spec, h, xi, 1, 64, 1.0) <= 1e-8);

    const StepFunction zero = const_step(m0.basis, Complex(0.0, 0.0));
    CHECK(embed_isometry_residual(spec, h, zero, 1, 64, 1.0) == 0.0);

    CHECK_THROWS_AS(embed_isometry_residual(spec, h, one, 0, 3, 1.0, 1e-12),
                    QuadratureUnderresolved);
}
