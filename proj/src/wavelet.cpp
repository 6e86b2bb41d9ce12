#include "solenoid/wavelet.hpp"

#include <cmath>
#include <numbers>

#include "solenoid/martingale.hpp"
#include "solenoid/parallel.hpp"

namespace solenoid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Periodized lookup f(x mod 1) against half-open cells [j/M, (j+1)/M).
Complex step_eval_periodic(const StepFunction& f, double x) {
    double t = x - std::floor(x);
    if (t >= 1.0) t = 0.0;
    auto j = static_cast<std::uint64_t>(t * static_cast<double>(f.size()));
    if (j >= f.size()) j = f.size() - 1;
    return f.values[j];
}

const SystemSpec& require_circle_filter(const StepFunction& s) {
    if (!s.system().is_circle())
        throw InvalidSpec("a step filter must live on a circle map");
    return s.system();
}

} // namespace

Complex m0_eval(const FilterCoeffs& c, double x) {
    Complex acc(0.0, 0.0);
    for (const auto& [n, an] : c.a)
        acc += an * std::polar(1.0, -kTwoPi * static_cast<double>(n) * x);
    return acc;
}

FilterCoeffs haar_coeffs() {
    FilterCoeffs c;
    c.N = 2;
    c.a[0] = Complex(1.0 / std::numbers::sqrt2, 0.0);
    c.a[1] = Complex(1.0 / std::numbers::sqrt2, 0.0);
    return c;
}

StepFunction shannon_step(int level) {
    if (level < 2) throw InvalidSpec("the half-band edges need resolution >= 2");
    BasisPtr basis = make_basis(SystemSpec::circle(2), level);
    const std::uint64_t quarter = basis->size() / 4;
    StepFunction f{basis, std::vector<Complex>(basis->size())};
    for (std::uint64_t j = 0; j < f.size(); ++j)
        f.values[j] = (j < quarter || j >= 3 * quarter)
                          ? Complex(std::numbers::sqrt2, 0.0)
                          : Complex(0.0, 0.0);
    return f;
}

StepFunction step_from_coeffs(const FilterCoeffs& c, int level) {
    if (c.N < 2) throw InvalidSpec("filter arity must be >= 2");
    BasisPtr basis = make_basis(SystemSpec::circle(c.N), level);
    const double M = static_cast<double>(basis->size());
    StepFunction f{basis, std::vector<Complex>(basis->size())};
    for (std::uint64_t j = 0; j < f.size(); ++j)
        f.values[j] = m0_eval(c, (static_cast<double>(j) + 0.5) / M);
    return f;
}

int filter_arity(const FilterSpec& m0) {
    if (const auto* c = std::get_if<FilterCoeffs>(&m0)) {
        if (c->N < 2) throw InvalidSpec("filter arity must be >= 2");
        return c->N;
    }
    return require_circle_filter(std::get<StepFunction>(m0)).alphabet_size();
}

Complex filter_eval(const FilterSpec& m0, double x) {
    if (const auto* c = std::get_if<FilterCoeffs>(&m0)) return m0_eval(*c, x);
    return step_eval_periodic(std::get<StepFunction>(m0), x);
}

StepFunction filter_step(const FilterSpec& m0, int level) {
    if (const auto* c = std::get_if<FilterCoeffs>(&m0)) return step_from_coeffs(*c, level);
    const StepFunction& s = std::get<StepFunction>(m0);
    require_circle_filter(s);
    if (s.resolution() == level) return s;
    BasisPtr target = make_basis(s.system(), level);
    return s.resolution() < level ? refine(s, target) : coarsen(s, target);
}

double qmf_residual(const FilterCoeffs& c, int level) {
    return qmf_residual(step_from_coeffs(c, level));
}

double qmf_residual(const StepFunction& m0_step) {
    require_circle_filter(m0_step);
    return prf_residual(m0_step, const_step(m0_step.basis, Complex(1.0, 0.0)));
}

FreqGrid make_grid(double T, std::int64_t M) {
    if (!(T > 0.0) || M < 2) throw InvalidSpec("need half-range T > 0 and M >= 2 samples");
    return FreqGrid{T, M};
}

double grid_point(const FreqGrid& g, std::int64_t i) {
    return -g.T + (2.0 * g.T) * static_cast<double>(i) / static_cast<double>(g.M);
}

ScalingApprox cascade_product(const FilterSpec& m0, int K, const FreqGrid& grid) {
    if (K < 1) throw InvalidSpec("cascade depth must be >= 1");
    if (!(grid.T > 0.0) || grid.M < 2) throw InvalidSpec("grid is degenerate");
    const double N = static_cast<double>(filter_arity(m0));
    const double root = std::sqrt(N);
    ScalingApprox s;
    s.grid = grid;
    s.K = K;
    s.values.assign(static_cast<std::size_t>(grid.M), Complex(0.0, 0.0));
#pragma omp parallel for num_threads(effective_threads())
    for (std::int64_t i = 0; i < grid.M; ++i) {
        double y = grid_point(grid, i);
        Complex v(1.0, 0.0);
        for (int k = 1; k <= K; ++k) {
            y /= N;
            v *= filter_eval(m0, y) / root;
        }
        s.values[static_cast<std::size_t>(i)] = v;
    }
    return s;
}

double scaling_residual(const ScalingApprox& s, const FilterSpec& m0) {
    const FreqGrid& g = s.grid;
    if (static_cast<std::int64_t>(s.values.size()) != g.M)
        throw InvalidSpec("value count does not match the grid");
    const double N = static_cast<double>(filter_arity(m0));
    const double root = std::sqrt(N);
    double worst = 0.0;
    for (std::int64_t i = 0; i < g.M; ++i) {
        const double y = grid_point(g, i) / N;
        const double fj = (y + g.T) * static_cast<double>(g.M) / (2.0 * g.T);
        auto j0 = static_cast<std::int64_t>(std::floor(fj));
        const double w = fj - static_cast<double>(j0);
        if (j0 < 0 || (j0 >= g.M - 1 && w != 0.0) || j0 > g.M - 1)
            throw InvalidSpec("grid is not closed under division by N");
        const Complex phi_half =
            (w == 0.0) ? s.values[static_cast<std::size_t>(j0)]
                       : (1.0 - w) * s.values[static_cast<std::size_t>(j0)] +
                             w * s.values[static_cast<std::size_t>(j0 + 1)];
        const Complex rhs = filter_eval(m0, y) / root * phi_half;
        worst = std::max(worst, std::abs(s.values[static_cast<std::size_t>(i)] - rhs));
    }
    return worst;
}

namespace {

double embed_quadrature(const FilterSpec& m0, const StepFunction& xi, int n, std::int64_t M,
                        double T, int K) {
    const double N = static_cast<double>(filter_arity(m0));
    const double root = std::sqrt(N);
    const double width = 2.0 * T / static_cast<double>(M);
    const double scale = std::pow(N, static_cast<double>(n));
    std::vector<double> terms(static_cast<std::size_t>(M));
#pragma omp parallel for num_threads(effective_threads())
    for (std::int64_t i = 0; i < M; ++i) {
        const double x = -T + (static_cast<double>(i) + 0.5) * width;
        double y = x;
        Complex phi(1.0, 0.0);
        for (int k = 1; k <= K; ++k) {
            y /= N;
            phi *= filter_eval(m0, y) / root;
        }
        terms[static_cast<std::size_t>(i)] =
            std::norm(step_eval_periodic(xi, x / scale) * phi);
    }
    double acc = 0.0;
    for (double t : terms) acc += t;
    return acc * width;
}

} // namespace

double embed_isometry_residual(const FilterSpec& m0, const StepFunction& h,
                               const StepFunction& xi, int n, std::int64_t quad_M, double T,
                               double tol, int K) {
    if (n < 0) throw LevelOutOfRange("scale index must be >= 0");
    if (quad_M < 2 || !(T > 0.0) || K < 1 || !(tol > 0.0))
        throw InvalidSpec("need quad_M >= 2, T > 0, K >= 1, tol > 0");
    const int N = filter_arity(m0);
    if (!xi.system().is_circle() || xi.system().alphabet_size() != N)
        throw DimensionMismatch("xi must live on the filter's circle map");
    if (h.system() != xi.system())
        throw DimensionMismatch("h must live on the filter's circle map");

    int base = std::max(xi.resolution(), h.resolution());
    if (const auto* s = std::get_if<StepFunction>(&m0))
        base = std::max(base, s->resolution());
    BasisPtr B = make_basis(xi.system(), base);
    const OmegaFamily fam =
        make_omega_family(filter_step(m0, base), refine(h, B), canonical_measure(B));
    const Complex om = omega(fam, abs2_fn(refine(xi, B)), n);

    const double q1 = embed_quadrature(m0, xi, n, quad_M, T, K);
    const double q2 = embed_quadrature(m0, xi, n, 2 * quad_M, T, K);
    if (std::abs(q1 - q2) > 10.0 * tol)
        throw QuadratureUnderresolved("doubling quad_M moved the quadrature by " +
                                      std::to_string(std::abs(q1 - q2)));
    return std::abs(om - q2);
}

} // namespace solenoid
