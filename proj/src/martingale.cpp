#include "solenoid/martingale.hpp"

#include <cmath>

namespace solenoid {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Cells where the (real, nonnegative) denominator vanishes take value 0.
StepFunction div_by(const StepFunction& num, const StepFunction& den) {
    require_same_layout(num, den);
    StepFunction out = num;
    for (std::uint64_t c = 0; c < out.size(); ++c) {
        const double d = den.values[c].real();
        out.values[c] = (d == 0.0) ? Complex(0.0, 0.0) : num.values[c] / d;
    }
    return out;
}

void require_family_layout(const StepFunction& m0, const StepFunction& h,
                           const MeasureVector& mu) {
    require_same_layout(m0, h);
    if (mu.system() != m0.system() || mu.resolution() != m0.resolution())
        throw ResolutionMismatch("measure layout does not match the filter layout");
    if (!is_nonnegative_real(h, 0.0)) throw InvalidSpec("h must be real and >= 0");
}

} // namespace

OmegaFamily make_omega_family(StepFunction m0, StepFunction h, MeasureVector mu) {
    require_family_layout(m0, h, mu);
    return OmegaFamily{std::move(m0), std::move(h), std::move(mu)};
}

MartingaleFn make_martingale(StepFunction m0, StepFunction h, MeasureVector mu,
                             std::vector<StepFunction> levels) {
    require_family_layout(m0, h, mu);
    if (levels.empty()) throw InvalidSpec("a martingale needs at least level 0");
    for (const auto& xi : levels) require_same_layout(levels.front(), xi);
    if (levels.front().system() != m0.system())
        throw DimensionMismatch("levels live on a different system");
    const int K = static_cast<int>(levels.size()) - 1;
    if (levels.front().resolution() < m0.resolution() + K)
        throw ResolutionMismatch("levels need resolution >= base + depth");
    return MartingaleFn{std::move(m0), std::move(h), std::move(mu), std::move(levels)};
}

MeasureVector refine_with_density(const MeasureVector& mu, const BasisPtr& fine) {
    if (mu.system() != fine->system()) throw DimensionMismatch("refinement across systems");
    if (fine->resolution() < mu.resolution())
        throw ResolutionMismatch("refinement target is coarser than the measure");
    if (fine->resolution() == mu.resolution()) return MeasureVector{fine, mu.mass};
    const MeasureVector can_base = canonical_measure(mu.basis);
    MeasureVector out = canonical_measure(fine);
    std::vector<double> ratio(mu.mass.size());
    for (std::uint64_t a = 0; a < mu.mass.size(); ++a) {
        if (can_base.mass[a] > 0.0) {
            ratio[a] = mu.mass[a] / can_base.mass[a];
        } else if (mu.mass[a] == 0.0) {
            ratio[a] = 0.0;
        } else {
            throw InvalidSpec("measure has mass where the canonical refinement vanishes");
        }
    }
    for (std::uint64_t c = 0; c < out.mass.size(); ++c)
        out.mass[c] *= ratio[fine->ancestor_in(*mu.basis, c)];
    return out;
}

Complex omega(const OmegaFamily& fam, const StepFunction& f, int n) {
    if (n < 0) throw LevelOutOfRange("omega level must be >= 0");
    if (f.system() != fam.m0.system()) throw DimensionMismatch("f lives on a different system");
    if (f.resolution() < fam.m0.resolution())
        throw ResolutionMismatch("f must be at least as fine as the family base");
    const BasisPtr& wb = f.basis;
    const StepFunction m0w = refine(fam.m0, wb);
    const StepFunction hw = refine(fam.h, wb);
    StepFunction acc = pointwise_mul(f, hw);
    for (int i = 0; i < n; ++i) acc = ruelle_m0(m0w, acc);
    return integrate(acc, refine_with_density(fam.mu, wb));
}

double omega_compat_residual(const OmegaFamily& fam, const StepFunction& f, int n) {
    const BasisPtr fine = make_basis(f.system(), f.resolution() + 1);
    const StepFunction fr = compose_r_pow(f, 1, fine);
    return std::abs(omega(fam, fr, n + 1) - omega(fam, f, n));
}

double radon_nikodym_residual(const OmegaFamily& fam, const StepFunction& f, int n) {
    if (n < 0) throw LevelOutOfRange("omega level must be >= 0");
    const int wres = std::max(f.resolution() + 1, fam.m0.resolution() + n);
    const BasisPtr wb = make_basis(f.system(), wres);
    const StepFunction g =
        pointwise_mul(compose_r_pow(abs2_fn(fam.m0), n, wb), compose_r_pow(f, 1, wb));
    return std::abs(omega(fam, g, n) - omega(fam, f, n));
}

MartingaleFn lift_to_martingale(const OmegaFamily& fam, const StepFunction& xi, int n, int K) {
    require_same_layout(fam.m0, xi);
    if (n < 0 || K < n) throw LevelOutOfRange("lift needs 0 <= n <= K");
    const BasisPtr wb = make_basis(xi.system(), xi.resolution() + K);
    const StepFunction m0w = refine(fam.m0, wb);
    const StepFunction hw = refine(fam.h, wb);
    std::vector<StepFunction> levels(static_cast<std::size_t>(K) + 1);
    levels[n] = refine(xi, wb);
    for (int j = n + 1; j <= K; ++j) levels[j] = compose_r_pow(xi, j - n, wb);
    StepFunction cur = pointwise_mul(levels[n], hw);
    for (int j = n - 1; j >= 0; --j) {
        cur = ruelle_m0(m0w, cur);
        levels[j] = div_by(cur, hw);
    }
    return make_martingale(fam.m0, fam.h, fam.mu, std::move(levels));
}

double martingale_compat_residual(const MartingaleFn& m) {
    const BasisPtr& wb = m.levels.front().basis;
    const StepFunction m0w = refine(m.m0, wb);
    const StepFunction hw = refine(m.h, wb);
    double res = 0.0;
    for (int n = 0; n < m.depth(); ++n) {
        const StepFunction lhs = ruelle_m0(m0w, pointwise_mul(m.levels[n + 1], hw));
        const StepFunction rhs = pointwise_mul(m.levels[n], hw);
        res = std::max(res, max_abs_diff(lhs, rhs));
    }
    return res;
}

StepFunction cond_expect(const MartingaleFn& m, int n, int k) {
    if (n < 0 || k < 0 || n + k > m.depth())
        throw LevelOutOfRange("cond_expect needs 0 <= n, 0 <= k, n + k <= depth");
    const BasisPtr& wb = m.levels.front().basis;
    const StepFunction m0w = refine(m.m0, wb);
    const StepFunction hw = refine(m.h, wb);
    StepFunction cur = pointwise_mul(m.levels[n + k], hw);
    for (int i = 0; i < k; ++i) cur = ruelle_m0(m0w, cur);
    return div_by(cur, hw);
}

MartingaleFn apply_U(const MartingaleFn& m) {
    const int K = m.depth();
    if (K < 1) throw DepthExhausted("U needs at least one level below the truncation");
    const BasisPtr& wb = m.levels.front().basis;
    std::vector<StepFunction> levels(static_cast<std::size_t>(K));
    for (int n = 0; n < K; ++n)
        levels[n] = pointwise_mul(compose_r_pow(m.m0, n, wb), m.levels[n + 1]);
    return make_martingale(m.m0, m.h, m.mu, std::move(levels));
}

MartingaleFn apply_U_star(const MartingaleFn& m) {
    const int K = m.depth();
    const int needed = m.base_resolution() + K + 1;
    BasisPtr wb = m.levels.front().basis;
    std::vector<StepFunction> lv = m.levels;
    if (wb->resolution() < needed) {
        wb = make_basis(m.m0.system(), needed);
        for (auto& xi : lv) xi = refine(xi, wb);
    }
    const StepFunction hw = refine(m.h, wb);
    std::vector<StepFunction> levels(static_cast<std::size_t>(K) + 2);
    levels[0] =
        div_by(transfer_normalized(pointwise_mul(conj_fn(refine(m.m0, wb)),
                                                 pointwise_mul(lv[0], hw))),
               hw);
    for (int n = 1; n <= K + 1; ++n) {
        const StepFunction m0r = compose_r_pow(m.m0, n - 1, wb);
        StepFunction out = lv[n - 1];
        for (std::uint64_t c = 0; c < out.size(); ++c) {
            const Complex d = m0r.values[c];
            out.values[c] = (d == Complex(0.0, 0.0)) ? Complex(0.0, 0.0) : out.values[c] / d;
        }
        levels[n] = std::move(out);
    }
    return make_martingale(m.m0, m.h, m.mu, std::move(levels));
}

MartingaleFn apply_pi(const StepFunction& g, const MartingaleFn& m) {
    if (g.system() != m.m0.system()) throw DimensionMismatch("g lives on a different system");
    const BasisPtr& wb = m.levels.front().basis;
    std::vector<StepFunction> levels = m.levels;
    for (int n = 0; n <= m.depth(); ++n)
        levels[n] = pointwise_mul(compose_r_pow(g, n, wb), m.levels[n]);
    return make_martingale(m.m0, m.h, m.mu, std::move(levels));
}

MartingaleFn compose_rhat(const MartingaleFn& m) {
    if (m.depth() < 1) throw DepthExhausted("composition with rhat needs depth >= 1");
    std::vector<StepFunction> levels(m.levels.begin() + 1, m.levels.end());
    return make_martingale(m.m0, m.h, m.mu, std::move(levels));
}

MartingaleFn compose_rhat_inv(const MartingaleFn& m) {
    const int K = m.depth();
    const int needed = m.base_resolution() + K + 1;
    BasisPtr wb = m.levels.front().basis;
    std::vector<StepFunction> lv = m.levels;
    if (wb->resolution() < needed) {
        wb = make_basis(m.m0.system(), needed);
        for (auto& xi : lv) xi = refine(xi, wb);
    }
    const StepFunction m0w = refine(m.m0, wb);
    const StepFunction hw = refine(m.h, wb);
    std::vector<StepFunction> levels;
    levels.reserve(lv.size() + 1);
    levels.push_back(div_by(ruelle_m0(m0w, pointwise_mul(lv[0], hw)), hw));
    for (auto& xi : lv) levels.push_back(std::move(xi));
    return make_martingale(m.m0, m.h, m.mu, std::move(levels));
}

Complex inner_product(const MartingaleFn& a, const MartingaleFn& b) {
    if (a.m0.system() != b.m0.system() || a.base_resolution() != b.base_resolution() ||
        a.depth() != b.depth() || a.work_resolution() != b.work_resolution())
        throw ResolutionMismatch("martingales live at different layouts");
    const int K = a.depth();
    const BasisPtr& wb = a.levels.front().basis;
    const StepFunction m0w = refine(a.m0, wb);
    const StepFunction hw = refine(a.h, wb);
    StepFunction acc = pointwise_mul(conj_fn(a.levels[K]), pointwise_mul(b.levels[K], hw));
    for (int i = 0; i < K; ++i) acc = ruelle_m0(m0w, acc);
    return integrate(acc, refine_with_density(a.mu, wb));
}

std::vector<double> norm_sequence(const MartingaleFn& m) {
    const BasisPtr& wb = m.levels.front().basis;
    const StepFunction m0w = refine(m.m0, wb);
    const StepFunction hw = refine(m.h, wb);
    const MeasureVector muw = refine_with_density(m.mu, wb);
    std::vector<double> v(static_cast<std::size_t>(m.depth()) + 1);
    for (int n = 0; n <= m.depth(); ++n) {
        StepFunction acc = pointwise_mul(abs2_fn(m.levels[n]), hw);
        for (int i = 0; i < n; ++i) acc = ruelle_m0(m0w, acc);
        v[n] = integrate(acc, muw).real();
    }
    return v;
}

bool is_cocycle(const MartingaleFn& m, double tol) {
    for (int n = 0; n < m.depth(); ++n)
        if (max_abs_diff(m.levels[n], m.levels[n + 1]) > tol) return false;
    return true;
}

MartingaleFn harmonic_to_cocycle(const StepFunction& m0, const StepFunction& h0,
                                 const StepFunction& h, int K, double tol) {
    require_same_layout(m0, h0);
    require_same_layout(m0, h);
    if (!is_nonnegative_real(h, 0.0)) throw InvalidSpec("h must be real and >= 0");
    if (K < 0) throw LevelOutOfRange("truncation depth must be >= 0");
    const double res = max_abs_diff(ruelle_m0(m0, h0), h0);
    if (res > tol)
        throw NotHarmonic("h0 fails R_{m0} h0 = h0: residual " + std::to_string(res));
    for (std::uint64_t c = 0; c < h.size(); ++c)
        if (h.values[c].real() == 0.0 && h0.values[c] != Complex(0.0, 0.0))
            throw DominationFailure("h0 is not dominated by any multiple of h");
    const StepFunction xi = div_by(h0, h);
    const BasisPtr wb = make_basis(m0.system(), m0.resolution() + K);
    std::vector<StepFunction> levels(static_cast<std::size_t>(K) + 1, refine(xi, wb));
    return make_martingale(m0, h, canonical_measure(m0.basis), std::move(levels));
}

StepFunction cocycle_to_harmonic(const MartingaleFn& c) {
    return pointwise_mul(c.levels[0], refine(c.h, c.levels.front().basis));
}

double intertwine_residual(const StepFunction& m0, const StepFunction& m0p,
                           const MartingaleFn& cocycle) {
    require_same_layout(m0, m0p);
    require_same_layout(m0, cocycle.m0);
    const BasisPtr& wb = cocycle.levels.front().basis;
    double e1 = 0.0;
    for (int n = 0; n < cocycle.depth(); ++n) {
        const StepFunction lhs = pointwise_mul(compose_r_pow(m0, n, wb), cocycle.levels[n]);
        const StepFunction rhs = pointwise_mul(compose_r_pow(m0p, n, wb), cocycle.levels[n + 1]);
        e1 = std::max(e1, max_abs_diff(lhs, rhs));
    }
    const StepFunction h0 = pointwise_mul(cocycle.levels[0], refine(cocycle.h, wb));
    const StepFunction mixed = transfer_normalized(
        pointwise_mul(pointwise_mul(conj_fn(refine(m0p, wb)), refine(m0, wb)), h0));
    return e1 + max_abs_diff(mixed, h0);
}

double shift_dilation_check(double k, int jmin, int jmax) {
    if (jmin >= jmax) throw InvalidSpec("shift_dilation_check needs jmin < jmax");
    double res = 0.0;
    for (int j = jmin; j < jmax; ++j) {
        const double t1 = kTwoPi * (k * std::ldexp(1.0, -j));
        const double t2 = kTwoPi * ((k * 0.5) * std::ldexp(1.0, -(j - 1)));
        res = std::max(res, std::abs(std::polar(1.0, t1) - std::polar(1.0, t2)));
    }
    return res;
}

} // namespace solenoid
