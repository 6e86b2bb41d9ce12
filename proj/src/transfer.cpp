#include "solenoid/transfer.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>

#include "solenoid/parallel.hpp"

namespace solenoid {

namespace {

void require_weight(const StepFunction& W) {
    if (!is_nonnegative_real(W, 0.0))
        throw InvalidSpec("weight must be real-valued and >= 0");
}

void require_real_nonneg(const StepFunction& h, const char* what) {
    if (!is_nonnegative_real(h, 0.0)) throw InvalidSpec(std::string(what) + " must be real and >= 0");
}

// Eigenvalues of a real symmetric matrix by cyclic Jacobi sweeps.
std::vector<double> sym_eigenvalues(std::vector<double> a, int n) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, scale = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                if (p != q) off += a[p * n + q] * a[p * n + q];
                scale += a[p * n + q] * a[p * n + q];
            }
        if (off <= 1e-30 * (scale + 1e-300)) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a[i * n + i];
    return ev;
}

// Hermitian d x d block -> real symmetric 2d x 2d with the same spectrum
// (doubled multiplicities): [[Re, -Im], [Im, Re]].
std::vector<double> embed_hermitian(const Complex* m, int d) {
    std::vector<double> a(4 * d * d);
    const int n = 2 * d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double re = m[i * d + j].real(), im = m[i * d + j].imag();
            a[i * n + j] = re;
            a[(i + d) * n + (j + d)] = re;
            a[i * n + (j + d)] = -im;
            a[(i + d) * n + j] = im;
        }
    return a;
}

double hermitian_opnorm(const Complex* m, int d) {
    double mx = 0.0;
    for (double ev : sym_eigenvalues(embed_hermitian(m, d), 2 * d)) mx = std::max(mx, std::abs(ev));
    return mx;
}

double hermitian_min_eig(const Complex* m, int d) {
    double mn = std::numeric_limits<double>::infinity();
    for (double ev : sym_eigenvalues(embed_hermitian(m, d), 2 * d)) mn = std::min(mn, ev);
    return mn;
}

} // namespace

MatrixStepFunction matrix_step_from_values(BasisPtr basis, int dim, std::vector<Complex> values) {
    if (dim < 1) throw DimensionMismatch("matrix dimension must be >= 1");
    if (values.size() != basis->size() * static_cast<std::uint64_t>(dim) * dim)
        throw DimensionMismatch("matrix value array length does not match cells * dim^2");
    return MatrixStepFunction{std::move(basis), dim, std::move(values)};
}

StepFunction ruelle_apply(const StepFunction& W, const StepFunction& f) {
    require_same_layout(W, f);
    require_weight(W);
    StepFunction out;
    out.basis = f.basis;
    out.values.resize(f.size());
    const CellBasis& B = *f.basis;
    const std::int64_t n = static_cast<std::int64_t>(f.size());
#pragma omp parallel num_threads(effective_threads())
    {
        std::vector<std::uint64_t> pre;
#pragma omp for
        for (std::int64_t c = 0; c < n; ++c) {
            B.preimage_cells(static_cast<std::uint64_t>(c), pre);
            Complex acc(0.0, 0.0);
            for (std::uint64_t q : pre) acc += W.values[q].real() * f.values[q];
            out.values[c] = acc;
        }
    }
    return out;
}

StepFunction transfer_normalized(const StepFunction& g) {
    StepFunction out;
    out.basis = g.basis;
    out.values.resize(g.size());
    const CellBasis& B = *g.basis;
    const std::int64_t n = static_cast<std::int64_t>(g.size());
#pragma omp parallel num_threads(effective_threads())
    {
        std::vector<std::uint64_t> pre;
#pragma omp for
        for (std::int64_t c = 0; c < n; ++c) {
            B.preimage_cells(static_cast<std::uint64_t>(c), pre);
            Complex acc(0.0, 0.0);
            for (std::uint64_t q : pre) acc += g.values[q];
            out.values[c] = acc / static_cast<double>(pre.size());
        }
    }
    return out;
}

StepFunction ruelle_m0(const StepFunction& m0, const StepFunction& f) {
    return transfer_normalized(pointwise_mul(abs2_fn(m0), f));
}

StepFunction weight_from_filter(const StepFunction& m0) {
    StepFunction W = abs2_fn(m0);
    const CellBasis& B = *m0.basis;
    if (!m0.system().is_subshift()) {
        const double inv = 1.0 / static_cast<double>(B.arity());
        for (auto& v : W.values) v *= inv;
        return W;
    }
    if (m0.resolution() < 2)
        throw ResolutionMismatch("subshift filter weights need resolution >= 2");
    for (std::uint64_t c = 0; c < W.size(); ++c) {
        const SymbolWord w = B.word_of(c);
        W.values[c] /= static_cast<double>(m0.system().prefixes(w[1]).size());
    }
    return W;
}

std::vector<double> adjoint_apply(const StepFunction& W, const BasisPtr& basis,
                                  const std::vector<double>& nu) {
    require_weight(W);
    if (W.basis->system() != basis->system() || W.resolution() != basis->resolution())
        throw ResolutionMismatch("weight layout does not match basis");
    if (nu.size() != basis->size()) throw ResolutionMismatch("mass vector length mismatch");
    std::vector<double> out(nu.size());
    const CellBasis& B = *basis;
    const std::int64_t n = static_cast<std::int64_t>(nu.size());
#pragma omp parallel num_threads(effective_threads())
    {
        std::vector<std::uint64_t> tgt;
#pragma omp for
        for (std::int64_t p = 0; p < n; ++p) {
            B.target_cells(static_cast<std::uint64_t>(p), tgt);
            double acc = 0.0;
            for (std::uint64_t j : tgt) acc += nu[j];
            out[p] = W.values[p].real() * acc;
        }
    }
    return out;
}

namespace reference {

StepFunction ruelle_apply(const StepFunction& W, const StepFunction& f) {
    require_same_layout(W, f);
    require_weight(W);
    StepFunction out;
    out.basis = f.basis;
    out.values.resize(f.size());
    std::vector<std::uint64_t> pre;
    for (std::uint64_t c = 0; c < f.size(); ++c) {
        f.basis->preimage_cells(c, pre);
        Complex acc(0.0, 0.0);
        for (std::uint64_t q : pre) acc += W.values[q].real() * f.values[q];
        out.values[c] = acc;
    }
    return out;
}

StepFunction transfer_normalized(const StepFunction& g) {
    StepFunction out;
    out.basis = g.basis;
    out.values.resize(g.size());
    std::vector<std::uint64_t> pre;
    for (std::uint64_t c = 0; c < g.size(); ++c) {
        g.basis->preimage_cells(c, pre);
        Complex acc(0.0, 0.0);
        for (std::uint64_t q : pre) acc += g.values[q];
        out.values[c] = acc / static_cast<double>(pre.size());
    }
    return out;
}

std::vector<double> adjoint_apply(const StepFunction& W, const BasisPtr& basis,
                                  const std::vector<double>& nu) {
    require_weight(W);
    if (W.basis->system() != basis->system() || W.resolution() != basis->resolution())
        throw ResolutionMismatch("weight layout does not match basis");
    if (nu.size() != basis->size()) throw ResolutionMismatch("mass vector length mismatch");
    std::vector<double> out(nu.size());
    std::vector<std::uint64_t> tgt;
    for (std::uint64_t p = 0; p < nu.size(); ++p) {
        basis->target_cells(p, tgt);
        double acc = 0.0;
        for (std::uint64_t j : tgt) acc += nu[j];
        out[p] = W.values[p].real() * acc;
    }
    return out;
}

} // namespace reference

PerronData solve_perron(const StepFunction& W, double tol, int maxit) {
    require_weight(W);
    if (sup_norm(W) == 0.0) throw ZeroWeight("weight is identically zero");
    if (!structure_flags(W.system()).aperiodic)
        std::cerr << "warning: transition matrix is not aperiodic; Perron data may not be unique\n";

    StepFunction h = const_step(W.basis, Complex(1.0, 0.0));
    double lambda = 0.0, change = std::numeric_limits<double>::infinity();
    int iters = 0;
    for (int it = 1; it <= maxit; ++it) {
        StepFunction Rh = ruelle_apply(W, h);
        lambda = sup_norm(Rh);
        if (lambda == 0.0) throw ZeroWeight("transfer image vanished during iteration");
        for (auto& v : Rh.values) v /= lambda;
        change = max_abs_diff(Rh, h);
        h = std::move(Rh);
        iters = it;
        if (change < tol) break;
    }
    {
        StepFunction Rh = ruelle_apply(W, h);
        StepFunction lh = h;
        for (auto& v : lh.values) v *= lambda;
        const double residual = max_abs_diff(Rh, lh);
        if (change >= tol)
            throw NoConvergence("power iteration for h did not converge", iters, change, residual);

        std::vector<double> nu(W.size(), 1.0 / static_cast<double>(W.size()));
        double nchange = std::numeric_limits<double>::infinity();
        for (int it = 1; it <= maxit; ++it) {
            std::vector<double> next = adjoint_apply(W, W.basis, nu);
            double s = 0.0;
            for (double v : next) s += v;
            if (s == 0.0) throw ZeroWeight("adjoint image vanished during iteration");
            nchange = 0.0;
            for (std::size_t i = 0; i < nu.size(); ++i) {
                next[i] /= s;
                nchange = std::max(nchange, std::abs(next[i] - nu[i]));
            }
            nu = std::move(next);
            if (nchange < tol) break;
        }
        if (nchange >= tol)
            throw NoConvergence("adjoint iteration for nu did not converge", maxit, nchange,
                                residual);
        double ip = 0.0;
        for (std::uint64_t c = 0; c < W.size(); ++c) ip += nu[c] * h.values[c].real();
        if (!(ip > 0.0))
            throw NoConvergence("nu(h) vanished; cannot normalize Perron data", iters, change,
                                residual);
        for (double& v : nu) v /= ip;

        PerronData out{lambda, std::move(h), MeasureVector{W.basis, std::move(nu)}, iters,
                       residual};
        return out;
    }
}

double strong_invariance_residual(const MeasureVector& mu) {
    const CellBasis& B = *mu.basis;
    std::vector<double> tmp(mu.mass.size());
    for (std::uint64_t j = 0; j < mu.mass.size(); ++j)
        tmp[j] = mu.mass[j] / static_cast<double>(B.branch_count(j));
    double res = 0.0;
    std::vector<std::uint64_t> tgt;
    for (std::uint64_t p = 0; p < mu.mass.size(); ++p) {
        B.target_cells(p, tgt);
        double acc = 0.0;
        for (std::uint64_t j : tgt) acc += tmp[j];
        res = std::max(res, std::abs(mu.mass[p] - acc));
    }
    return res;
}

double invariance_residual(const MeasureVector& mu) {
    const int L = mu.resolution();
    // At the minimum resolution the only coarser test functions are
    // constants, for which both sides equal the total mass.
    if (L == 0 || (mu.system().is_subshift() && L == 1)) return 0.0;
    BasisPtr coarse = make_basis(mu.system(), L - 1);
    std::vector<double> push(coarse->size(), 0.0);
    for (std::uint64_t c = 0; c < mu.mass.size(); ++c)
        push[mu.basis->shift_ancestor(*coarse, c, 1)] += mu.mass[c];
    MeasureVector co = coarsen_measure(mu, coarse);
    double res = 0.0;
    for (std::uint64_t b = 0; b < push.size(); ++b)
        res = std::max(res, std::abs(push[b] - co.mass[b]));
    return res;
}

MeasureVector invariant_from_eigen(const MeasureVector& nu, const StepFunction& h) {
    if (nu.system() != h.system() || nu.resolution() != h.resolution())
        throw ResolutionMismatch("nu and h live at different layouts");
    require_real_nonneg(h, "h");
    MeasureVector out;
    out.basis = nu.basis;
    out.mass.resize(nu.mass.size());
    for (std::uint64_t c = 0; c < nu.mass.size(); ++c)
        out.mass[c] = nu.mass[c] * h.values[c].real();
    return out;
}

double prf_residual(const StepFunction& m0, const StepFunction& h) {
    require_same_layout(m0, h);
    require_real_nonneg(h, "h");
    return max_abs_diff(ruelle_m0(m0, h), h);
}

double matrix_prf_residual(const MatrixStepFunction& M0, const MatrixStepFunction& H,
                           double psd_tol) {
    if (M0.dim != H.dim) throw DimensionMismatch("M0 and H dimensions differ");
    if (M0.basis->system() != H.basis->system() ||
        M0.basis->resolution() != H.basis->resolution())
        throw ResolutionMismatch("M0 and H layouts differ");
    const int d = M0.dim;
    const std::uint64_t n = M0.basis->size();
    const std::uint64_t dd = static_cast<std::uint64_t>(d) * d;
    for (std::uint64_t c = 0; c < n; ++c) {
        const Complex* Hc = H.values.data() + c * dd;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (std::abs(Hc[i * d + j] - std::conj(Hc[j * d + i])) > psd_tol)
                    throw NotPSD("H is not Hermitian within tolerance");
        if (hermitian_min_eig(Hc, d) < -psd_tol)
            throw NotPSD("H has an eigenvalue below -tolerance");
    }
    double res = 0.0;
    std::vector<std::uint64_t> pre;
    std::vector<Complex> t1(dd), t2(dd), S(dd);
    for (std::uint64_t x = 0; x < n; ++x) {
        M0.basis->preimage_cells(x, pre);
        const Complex* Hx = H.values.data() + x * dd;
        for (std::uint64_t k = 0; k < dd; ++k) S[k] = -Hx[k];
        const double inv_bc = 1.0 / static_cast<double>(pre.size());
        for (std::uint64_t y : pre) {
            const Complex* My = M0.values.data() + y * dd;
            const Complex* Hy = H.values.data() + y * dd;
            // t1 = H(y) M0(y); t2 = M0(y)^* t1.
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    Complex acc(0.0, 0.0);
                    for (int k = 0; k < d; ++k) acc += Hy[i * d + k] * My[k * d + j];
                    t1[i * d + j] = acc;
                }
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    Complex acc(0.0, 0.0);
                    for (int k = 0; k < d; ++k) acc += std::conj(My[k * d + i]) * t1[k * d + j];
                    t2[i * d + j] = acc;
                }
            for (std::uint64_t k = 0; k < dd; ++k) S[k] += inv_bc * t2[k];
        }
        res = std::max(res, hermitian_opnorm(S.data(), d));
    }
    return res;
}

double isometry_gap(const StepFunction& m0, const StepFunction& h, const StepFunction& f) {
    require_same_layout(m0, h);
    require_same_layout(m0, f);
    require_real_nonneg(h, "h");
    BasisPtr fine = make_basis(m0.system(), m0.resolution() + 1);
    const StepFunction m0f = refine(m0, fine);
    const StepFunction hf = refine(h, fine);
    const StepFunction fr = compose_r_pow(f, 1, fine);
    const MeasureVector mu_fine = canonical_measure(fine);
    const MeasureVector mu = coarsen_measure(mu_fine, m0.basis);
    double s_norm = 0.0;
    for (std::uint64_t c = 0; c < fine->size(); ++c)
        s_norm += std::norm(m0f.values[c]) * std::norm(fr.values[c]) * hf.values[c].real() *
                  mu_fine.mass[c];
    double f_norm = 0.0;
    for (std::uint64_t c = 0; c < m0.size(); ++c)
        f_norm += std::norm(f.values[c]) * h.values[c].real() * mu.mass[c];
    return s_norm - f_norm;
}

} // namespace solenoid
