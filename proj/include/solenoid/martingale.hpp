#pragma once

#include "solenoid/transfer.hpp"

namespace solenoid {

// Filter/eigenfunction/measure triple at one base resolution: everything
// needed to evaluate the path-space measure family omega_n and to lift step
// functions into martingales.
struct OmegaFamily {
    StepFunction m0;
    StepFunction h;  // real >= 0
    MeasureVector mu; // strongly invariant base measure
};

OmegaFamily make_omega_family(StepFunction m0, StepFunction h, MeasureVector mu);

// Martingale representation of a projective-limit function, truncated at
// depth K: levels (xi_0 .. xi_K) all live at one shared work resolution
// >= base + K so that compositions with r^n stay exact; m0, h, mu stay at
// base resolution. Compatible when R_{m0}(xi_{n+1} h) = xi_n h per level.
struct MartingaleFn {
    StepFunction m0;
    StepFunction h;
    MeasureVector mu;
    std::vector<StepFunction> levels;

    int depth() const { return static_cast<int>(levels.size()) - 1; }
    int base_resolution() const { return m0.resolution(); }
    int work_resolution() const { return levels.front().resolution(); }
};

MartingaleFn make_martingale(StepFunction m0, StepFunction h, MeasureVector mu,
                             std::vector<StepFunction> levels);

// Mass refinement with cell-constant density against the canonical measure:
// fine[c] = canonical_fine[c] * mu[ancestor]/canonical_base[ancestor].
// Exact inverse of coarsen_measure for such measures; identity when mu is
// canonical.
MeasureVector refine_with_density(const MeasureVector& mu, const BasisPtr& fine);

// omega_n(f) = integral of R_{m0}^n(f h) d mu; f at any resolution >= base
// (m0, h, mu are refined exactly). Complex-linear in f; real on real f.
Complex omega(const OmegaFamily& fam, const StepFunction& f, int n);

// |omega_{n+1}(f o r) - omega_n(f)|, the projective-consistency residual.
double omega_compat_residual(const OmegaFamily& fam, const StepFunction& f, int n);

// |omega_n(|m0|^2 o r^n * f o r) - omega_n(f)|: the Radon-Nikodym identity
// for the shift on the projective limit.
double radon_nikodym_residual(const OmegaFamily& fam, const StepFunction& f, int n);

// Martingale generated by xi placed at level n (K >= n): levels j < n are
// R^{n-j}(xi h)/h, level n is xi, levels j > n are xi o r^{j-n}. Cells with
// h = 0 take value 0.
MartingaleFn lift_to_martingale(const OmegaFamily& fam, const StepFunction& xi, int n, int K);

// max_n ||R_{m0}(xi_{n+1} h) - xi_n h||_inf over n < K.
double martingale_compat_residual(const MartingaleFn& m);

// E_n of the level-(n+k) component: R^k(xi_{n+k} h)/h; equals xi_n for
// compatible martingales.
StepFunction cond_expect(const MartingaleFn& m, int n, int k);

// U (xi_n) = (m0 o r^n) xi_{n+1}; depth drops by one.
MartingaleFn apply_U(const MartingaleFn& m);

// U* (xi_n) = xi_{n-1}/(m0 o r^{n-1}) on cells where the denominator is
// nonzero (0 elsewhere); level 0 becomes R0(conj(m0) xi_0 h)/h. Depth grows
// by one (levels are refined one step if needed).
MartingaleFn apply_U_star(const MartingaleFn& m);

// pi(g): level n multiplied by g o r^n.
MartingaleFn apply_pi(const StepFunction& g, const MartingaleFn& m);

// f -> f o rhat: drop the front level. Inverse prepends R(xi_0 h)/h.
MartingaleFn compose_rhat(const MartingaleFn& m);
MartingaleFn compose_rhat_inv(const MartingaleFn& m);

// Truncated solenoid inner product: integral R^K(conj(xi^a_K) xi^b_K h) dmu.
Complex inner_product(const MartingaleFn& a, const MartingaleFn& b);

// v_n = integral R^n(|xi_n|^2 h) dmu for n = 0..K; nondecreasing for
// compatible martingales, constant from level n on for lifts.
std::vector<double> norm_sequence(const MartingaleFn& m);

// All levels equal within tol (the shift-invariant functions).
bool is_cocycle(const MartingaleFn& m, double tol);

// h0 with R_{m0} h0 = h0 (within tol) and |h0| dominated by a multiple of h
// maps to the constant-level martingale h0/h.
MartingaleFn harmonic_to_cocycle(const StepFunction& m0, const StepFunction& h0,
                                 const StepFunction& h, int K, double tol);

// Inverse direction: h0 = xi_0 * h at the work resolution.
StepFunction cocycle_to_harmonic(const MartingaleFn& c);

// Residual of the intertwining relation m0 * f = m0' * (f o rhat) on the
// cocycle f, plus the mixed-operator harmonicity residual
// ||R0(conj(m0') m0 h0) - h0||_inf with h0 = xi_0 h.
double intertwine_residual(const StepFunction& m0, const StepFunction& m0p,
                           const MartingaleFn& cocycle);

// Finite-lattice check of the shift/dilation covariance on exponentials:
// max over j in [jmin, jmax) of |e^{i 2 pi k 2^-j} - e^{i 2 pi (k/2) 2^-(j-1)}|
// (shift applied to the weighted basis vector); exactly 0 for dyadic k.
double shift_dilation_check(double k, int jmin, int jmax);

} // namespace solenoid
