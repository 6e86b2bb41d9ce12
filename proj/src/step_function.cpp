#include "solenoid/step_function.hpp"

#include <algorithm>
#include <cmath>

namespace solenoid {

BasisPtr make_basis(SystemSpec sys, int resolution) {
    return std::make_shared<const CellBasis>(std::move(sys), resolution);
}

double MeasureVector::total_mass() const {
    double t = 0.0;
    for (double m : mass) t += m;
    return t;
}

StepFunction const_step(BasisPtr basis, Complex value) {
    StepFunction f;
    f.values.assign(basis->size(), value);
    f.basis = std::move(basis);
    return f;
}

StepFunction step_from_values(BasisPtr basis, std::vector<Complex> values) {
    if (values.size() != basis->size())
        throw ResolutionMismatch("value array length does not match cell count");
    return StepFunction{std::move(basis), std::move(values)};
}

MeasureVector measure_from_mass(BasisPtr basis, std::vector<double> mass) {
    if (mass.size() != basis->size())
        throw ResolutionMismatch("mass array length does not match cell count");
    for (double m : mass)
        if (!(m >= 0.0)) throw InvalidSpec("measure masses must be >= 0 and finite");
    return MeasureVector{std::move(basis), std::move(mass)};
}

void require_same_layout(const StepFunction& a, const StepFunction& b) {
    if (a.system() != b.system()) throw DimensionMismatch("functions live on different systems");
    if (a.resolution() != b.resolution())
        throw ResolutionMismatch("functions live at different resolutions");
}

namespace {
void require_same_system(const CellBasis& a, const CellBasis& b) {
    if (a.system() != b.system()) throw DimensionMismatch("bases belong to different systems");
}
} // namespace

StepFunction refine(const StepFunction& f, const BasisPtr& finer) {
    require_same_system(*f.basis, *finer);
    if (finer->resolution() < f.resolution())
        throw ResolutionMismatch("refine target must not be coarser");
    StepFunction out;
    out.basis = finer;
    out.values.resize(finer->size());
    for (std::uint64_t c = 0; c < finer->size(); ++c)
        out.values[c] = f.values[finer->ancestor_in(*f.basis, c)];
    return out;
}

StepFunction coarsen(const StepFunction& f, const BasisPtr& coarser) {
    require_same_system(*f.basis, *coarser);
    if (coarser->resolution() > f.resolution())
        throw ResolutionMismatch("coarsen target must not be finer");
    StepFunction out = const_step(coarser, Complex(0.0, 0.0));
    std::vector<char> seen(coarser->size(), 0);
    for (std::uint64_t c = 0; c < f.size(); ++c) {
        const std::uint64_t a = f.basis->ancestor_in(*coarser, c);
        if (!seen[a]) {
            out.values[a] = f.values[c];
            seen[a] = 1;
        } else if (out.values[a] != f.values[c]) {
            throw ResolutionMismatch("function is not constant on the coarser cells");
        }
    }
    return out;
}

StepFunction compose_r_pow(const StepFunction& f, int m, const BasisPtr& fine) {
    require_same_system(*f.basis, *fine);
    StepFunction out;
    out.basis = fine;
    out.values.resize(fine->size());
    for (std::uint64_t c = 0; c < fine->size(); ++c)
        out.values[c] = f.values[fine->shift_ancestor(*f.basis, c, m)];
    return out;
}

MeasureVector coarsen_measure(const MeasureVector& mu, const BasisPtr& coarser) {
    require_same_system(*mu.basis, *coarser);
    if (coarser->resolution() > mu.resolution())
        throw ResolutionMismatch("coarsen target must not be finer");
    MeasureVector out;
    out.basis = coarser;
    out.mass.assign(coarser->size(), 0.0);
    for (std::uint64_t c = 0; c < mu.mass.size(); ++c)
        out.mass[mu.basis->ancestor_in(*coarser, c)] += mu.mass[c];
    return out;
}

MeasureVector canonical_measure(const BasisPtr& basis) {
    MeasureVector mu;
    mu.basis = basis;
    const auto& sys = basis->system();
    if (!sys.is_subshift()) {
        mu.mass.assign(basis->size(), 1.0 / static_cast<double>(basis->size()));
        return mu;
    }
    // Stationary symbol distribution: fixed point of B = A diag(1/n), found
    // with the lazy iteration p <- (p + Bp)/2 which converges even for
    // periodic transition graphs and preserves total mass (columns of B sum
    // to 1).
    const int K = sys.alphabet_size();
    std::vector<double> n(K);
    for (int s = 0; s < K; ++s) n[s] = static_cast<double>(sys.prefixes(s).size());
    std::vector<double> p(K, 1.0 / K), q(K);
    for (int it = 0; it < 20000; ++it) {
        double change = 0.0;
        for (int s = 0; s < K; ++s) {
            double acc = 0.0;
            for (int u : sys.successors(s)) acc += p[u] / n[u];
            q[s] = 0.5 * (p[s] + acc);
        }
        for (int s = 0; s < K; ++s) {
            change = std::max(change, std::abs(q[s] - p[s]));
            p[s] = q[s];
        }
        if (change < 1e-16) break;
    }
    // Cylinder mass p(w1) prod P(wi, wi+1) with P(s,t) = p(t)/(n(t)p(s));
    // telescopes to p(wd) / prod_{i>=2} n(wi).
    mu.mass.resize(basis->size());
    for (std::uint64_t c = 0; c < basis->size(); ++c) {
        const SymbolWord w = basis->word_of(c);
        double m = p[w.back()];
        for (std::size_t i = 1; i < w.size(); ++i) m /= n[w[i]];
        mu.mass[c] = m;
    }
    return mu;
}

Complex integrate(const StepFunction& f, const MeasureVector& mu) {
    if (f.system() != mu.system()) throw DimensionMismatch("function and measure systems differ");
    if (f.resolution() != mu.resolution())
        throw ResolutionMismatch("function and measure resolutions differ");
    Complex acc(0.0, 0.0);
    for (std::uint64_t c = 0; c < f.size(); ++c) acc += f.values[c] * mu.mass[c];
    return acc;
}

double sup_norm(const StepFunction& f) {
    double m = 0.0;
    for (const Complex& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

Complex evaluate(const StepFunction& f, const PointCode& p) {
    return f.values[f.basis->locate(p)];
}

StepFunction pointwise_mul(const StepFunction& a, const StepFunction& b) {
    require_same_layout(a, b);
    StepFunction out = a;
    for (std::uint64_t c = 0; c < out.size(); ++c) out.values[c] *= b.values[c];
    return out;
}

StepFunction conj_fn(const StepFunction& f) {
    StepFunction out = f;
    for (auto& v : out.values) v = std::conj(v);
    return out;
}

StepFunction abs2_fn(const StepFunction& f) {
    StepFunction out = f;
    for (auto& v : out.values) v = Complex(std::norm(v), 0.0);
    return out;
}

StepFunction lin_comb(Complex ca, const StepFunction& a, Complex cb, const StepFunction& b) {
    require_same_layout(a, b);
    StepFunction out = a;
    for (std::uint64_t c = 0; c < out.size(); ++c)
        out.values[c] = ca * a.values[c] + cb * b.values[c];
    return out;
}

double max_abs_diff(const StepFunction& a, const StepFunction& b) {
    require_same_layout(a, b);
    double m = 0.0;
    for (std::uint64_t c = 0; c < a.size(); ++c)
        m = std::max(m, std::abs(a.values[c] - b.values[c]));
    return m;
}

bool is_nonnegative_real(const StepFunction& f, double tol) {
    for (const Complex& v : f.values)
        if (std::abs(v.imag()) > tol || v.real() < -tol || !std::isfinite(v.real())) return false;
    return true;
}

} // namespace solenoid
