#include "solenoid/pathspace.hpp"

#include <algorithm>
#include <cmath>

#include "solenoid/parallel.hpp"

namespace solenoid {

namespace {

// One kernel step of the cell walk: branch weights q_k = W h at the k-th
// preimage cell, normalized by their sum.
int draw_branch(const StepFunction& W, const StepFunction& h,
                const std::vector<std::uint64_t>& pre, SplitMix64& rng) {
    double total = 0.0;
    for (std::uint64_t q : pre) total += W.values[q].real() * h.values[q].real();
    if (total <= 0.0)
        throw DeadEnd("all branch weights vanish at the current cell");
    const double u = rng.next_double() * total;
    double cum = 0.0;
    for (std::size_t k = 0; k + 1 < pre.size(); ++k) {
        cum += W.values[pre[k]].real() * h.values[pre[k]].real();
        if (u < cum) return static_cast<int>(k);
    }
    return static_cast<int>(pre.size()) - 1;
}

std::vector<double> measure_cumulative(const MeasureVector& mu) {
    std::vector<double> cum(mu.mass.size());
    double acc = 0.0;
    for (std::size_t c = 0; c < mu.mass.size(); ++c) {
        acc += mu.mass[c];
        cum[c] = acc;
    }
    if (!(acc > 0.0)) throw ZeroMass("measure has no mass to sample from");
    return cum;
}

std::uint64_t draw_cell(const std::vector<double>& cum, SplitMix64& rng) {
    const double u = rng.next_double() * cum.back();
    return static_cast<std::uint64_t>(
        std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
}

} // namespace

PathMeasure make_path_measure(StepFunction W, StepFunction h, PointCode x) {
    require_same_layout(W, h);
    if (!is_nonnegative_real(W, 0.0)) throw InvalidSpec("W must be real and >= 0");
    if (!is_nonnegative_real(h, 0.0)) throw InvalidSpec("h must be real and >= 0");
    W.basis->locate(x); // validates x against the shared layout
    return PathMeasure{std::move(W), std::move(h), std::move(x)};
}

double cylinder_mass(const PathMeasure& P, const BranchWord& w) {
    const SystemSpec& sys = P.W.system();
    PointCode z = P.x;
    double mass = 1.0;
    for (int k : w) {
        if (k < 0 || k >= branch_count(sys, z))
            throw InvalidWord("branch symbol out of range along the orbit");
        z = branch(sys, k, z);
        mass *= evaluate(P.W, z).real();
    }
    return mass * evaluate(P.h, z).real();
}

double consistency_residual(const PathMeasure& P, const BranchWord& w) {
    const SystemSpec& sys = P.W.system();
    PointCode z = P.x;
    for (int k : w) z = branch(sys, k, z);
    double children = 0.0;
    BranchWord ext = w;
    ext.push_back(0);
    for (int k = 0; k < branch_count(sys, z); ++k) {
        ext.back() = k;
        children += cylinder_mass(P, ext);
    }
    return std::abs(children - cylinder_mass(P, w));
}

std::vector<double> transition_kernel(const PathMeasure& P, const PointCode& z) {
    const SystemSpec& sys = P.W.system();
    const double hz = evaluate(P.h, z).real();
    if (hz == 0.0) throw ZeroMass("h vanishes at the requested point");
    std::vector<double> p(static_cast<std::size_t>(branch_count(sys, z)));
    for (std::size_t k = 0; k < p.size(); ++k) {
        const PointCode y = branch(sys, static_cast<int>(k), z);
        p[k] = evaluate(P.W, y).real() * evaluate(P.h, y).real() / hz;
    }
    return p;
}

PathSample sample_path(const PathMeasure& P, int n, SplitMix64& rng) {
    if (n < 0) throw InvalidSpec("path length must be >= 0");
    const CellBasis& B = *P.W.basis;
    std::uint64_t cur = B.locate(P.x);
    if (P.h.values[cur].real() == 0.0) throw ZeroMass("h vanishes at the starting point");
    PathSample s;
    s.word.reserve(n);
    s.cells.reserve(static_cast<std::size_t>(n) + 1);
    s.cells.push_back(cur);
    std::vector<std::uint64_t> pre;
    for (int step = 0; step < n; ++step) {
        B.preimage_cells(cur, pre);
        const int k = draw_branch(P.W, P.h, pre, rng);
        cur = pre[k];
        s.word.push_back(k);
        s.cells.push_back(cur);
    }
    return s;
}

PathSample sample_path(const PathMeasure& P, int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return sample_path(P, n, rng);
}

std::vector<PointCode> visited_points(const PathMeasure& P, const PathSample& s) {
    const CellBasis& B = *P.W.basis;
    std::vector<PointCode> pts;
    pts.reserve(s.cells.size());
    for (std::uint64_t c : s.cells) {
        if (P.W.system().is_circle())
            pts.emplace_back(CellIndex{B.resolution(), c});
        else
            pts.emplace_back(B.word_of(c));
    }
    return pts;
}

int branch_digit(const SystemSpec& sys, const PointCode& x) {
    const PointCode fwd = forward(sys, x);
    for (int k = 0; k < branch_count(sys, fwd); ++k)
        if (points_equal(sys, branch(sys, k, fwd), x)) return k;
    throw NotAnOrbit("point is not a branch image of its own forward image");
}

std::pair<PointCode, BranchWord> psi(const SystemSpec& sys,
                                     const std::vector<PointCode>& prefix) {
    if (prefix.empty()) throw InvalidSpec("an orbit prefix needs at least x_0");
    BranchWord w;
    w.reserve(prefix.size() - 1);
    for (std::size_t j = 1; j < prefix.size(); ++j) {
        if (!points_equal(sys, forward(sys, prefix[j]), prefix[j - 1]))
            throw NotAnOrbit("r(x_" + std::to_string(j) + ") differs from x_" +
                             std::to_string(j - 1));
        int digit = -1;
        for (int k = 0; k < branch_count(sys, prefix[j - 1]); ++k)
            if (points_equal(sys, branch(sys, k, prefix[j - 1]), prefix[j])) {
                digit = k;
                break;
            }
        if (digit < 0) throw NotAnOrbit("no branch maps x_" + std::to_string(j - 1) +
                                        " to x_" + std::to_string(j));
        w.push_back(digit);
    }
    return {prefix.front(), std::move(w)};
}

std::vector<PointCode> psi_inv(const SystemSpec& sys, const PointCode& x, const BranchWord& w) {
    std::vector<PointCode> orbit;
    orbit.reserve(w.size() + 1);
    orbit.push_back(x);
    for (int k : w) {
        if (k < 0 || k >= branch_count(sys, orbit.back()))
            throw InvalidWord("branch symbol out of range along the orbit");
        orbit.push_back(branch(sys, k, orbit.back()));
    }
    return orbit;
}

namespace {

// sum over depth-d branch words of prod W(z_j) * h(z_d) f(z_d), walking
// preimage cells.
Complex enumerate_paths(const CellBasis& B, const StepFunction& W, const StepFunction& h,
                        const StepFunction& f, std::uint64_t cell, int depth) {
    if (depth == 0) return h.values[cell].real() * f.values[cell];
    std::vector<std::uint64_t> pre;
    B.preimage_cells(cell, pre);
    Complex acc(0.0, 0.0);
    for (std::uint64_t q : pre)
        acc += W.values[q].real() * enumerate_paths(B, W, h, f, q, depth - 1);
    return acc;
}

} // namespace

double disintegration_exact(const OmegaFamily& fam, const StepFunction& f, int n) {
    require_same_layout(fam.m0, f);
    if (n < 0) throw LevelOutOfRange("depth must be >= 0");
    const StepFunction W = weight_from_filter(fam.m0);
    Complex acc(0.0, 0.0);
    for (std::uint64_t c = 0; c < fam.mu.mass.size(); ++c)
        acc += fam.mu.mass[c] * enumerate_paths(*fam.m0.basis, W, fam.h, f, c, n);
    return std::abs(acc - omega(fam, f, n));
}

DisintegrationStats disintegration_mc(const OmegaFamily& fam, const StepFunction& f, int n,
                                      long long samples, std::uint64_t seed) {
    require_same_layout(fam.m0, f);
    if (n < 0) throw LevelOutOfRange("depth must be >= 0");
    if (samples < 2) throw InvalidSpec("need at least 2 samples");
    const StepFunction W = weight_from_filter(fam.m0);
    const StepFunction& h = fam.h;
    const CellBasis& B = *fam.m0.basis;
    const std::vector<double> cum = measure_cumulative(fam.mu);
    const double total = cum.back();

    std::vector<Complex> vals(static_cast<std::size_t>(samples));
#pragma omp parallel num_threads(effective_threads())
    {
        std::vector<std::uint64_t> pre;
#pragma omp for
        for (long long i = 0; i < samples; ++i) {
            SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(i));
            std::uint64_t cur = draw_cell(cum, rng);
            const double hx = h.values[cur].real();
            if (hx == 0.0) {
                vals[i] = Complex(0.0, 0.0);
                continue;
            }
            for (int step = 0; step < n; ++step) {
                B.preimage_cells(cur, pre);
                cur = pre[draw_branch(W, h, pre, rng)];
            }
            vals[i] = hx * f.values[cur];
        }
    }
    Complex mean(0.0, 0.0);
    for (const Complex& v : vals) mean += v;
    mean /= static_cast<double>(samples);
    double var = 0.0;
    for (const Complex& v : vals) var += std::norm(v - mean);
    var /= static_cast<double>(samples - 1);

    DisintegrationStats st;
    st.estimate = total * mean;
    st.std_error = total * std::sqrt(var / static_cast<double>(samples));
    st.omega_value = omega(fam, f, n);
    st.residual = std::abs(st.estimate - st.omega_value);
    st.samples = samples;
    return st;
}

ConvergenceStats cocycle_convergence(const StepFunction& W, const StepFunction& h,
                                     const MeasureVector& mu, const StepFunction& h0, int steps,
                                     int n_checkpoints, long long paths, std::uint64_t seed,
                                     double epsilon) {
    require_same_layout(W, h);
    require_same_layout(W, h0);
    if (mu.system() != W.system() || mu.resolution() != W.resolution())
        throw ResolutionMismatch("measure layout does not match the weight layout");
    if (steps < 2 || n_checkpoints < 2 || paths < 1 || !(epsilon > 0.0))
        throw InvalidSpec("need steps >= 2, n_checkpoints >= 2, paths >= 1, epsilon > 0");
    if (!is_nonnegative_real(W, 0.0)) throw InvalidSpec("W must be real and >= 0");
    if (!is_nonnegative_real(h, 0.0)) throw InvalidSpec("h must be real and >= 0");

    const CellBasis& B = *W.basis;
    std::vector<Complex> ratio(B.size());
    for (std::uint64_t c = 0; c < B.size(); ++c) {
        const double d = h.values[c].real();
        ratio[c] = (d == 0.0) ? Complex(0.0, 0.0) : h0.values[c] / d;
    }
    std::vector<int> check_steps(static_cast<std::size_t>(n_checkpoints));
    for (int t = 1; t <= n_checkpoints; ++t)
        check_steps[t - 1] = static_cast<int>(
            (static_cast<long long>(steps) * t) / n_checkpoints);
    const std::vector<double> cum = measure_cumulative(mu);

    std::vector<double> fluct(static_cast<std::size_t>(paths), 0.0);
#pragma omp parallel num_threads(effective_threads())
    {
        std::vector<std::uint64_t> pre;
        std::vector<Complex> late;
#pragma omp for
        for (long long i = 0; i < paths; ++i) {
            SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(i));
            std::uint64_t cur = draw_cell(cum, rng);
            late.clear();
            std::size_t next_cp = 0;
            for (int step = 1; step <= steps; ++step) {
                B.preimage_cells(cur, pre);
                cur = pre[draw_branch(W, h, pre, rng)];
                while (next_cp < check_steps.size() && check_steps[next_cp] == step) {
                    if (2 * step >= steps) late.push_back(ratio[cur]);
                    ++next_cp;
                }
            }
            double d = 0.0;
            for (std::size_t a = 0; a < late.size(); ++a)
                for (std::size_t b = a + 1; b < late.size(); ++b)
                    d = std::max(d, std::abs(late[a] - late[b]));
            fluct[i] = d;
        }
    }
    ConvergenceStats st;
    st.paths = paths;
    st.steps = steps;
    st.epsilon = epsilon;
    long long bad = 0;
    double mx = 0.0;
    for (double d : fluct) {
        if (d > epsilon) ++bad;
        mx = std::max(mx, d);
    }
    st.failure_fraction = static_cast<double>(bad) / static_cast<double>(paths);
    st.max_late_fluctuation = mx;
    return st;
}

} // namespace solenoid
