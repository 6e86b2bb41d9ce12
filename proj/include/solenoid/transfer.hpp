#pragma once

#include "solenoid/step_function.hpp"

namespace solenoid {

// Perron eigendata of R_W: R_W h = lambda0 h (sup-normalized), nu R_W =
// lambda0 nu with nu(h) = 1; residual = ||R_W h - lambda0 h||_inf at exit.
struct PerronData {
    double lambda0;
    StepFunction h;
    MeasureVector nu;
    int iterations;
    double residual;
};

// Square-matrix-valued step function: dim x dim row-major block per cell.
struct MatrixStepFunction {
    BasisPtr basis;
    int dim;
    std::vector<Complex> values;
};

MatrixStepFunction matrix_step_from_values(BasisPtr basis, int dim, std::vector<Complex> values);

// (R_W f)(x) = sum over preimages y of W(y) f(y); W real >= 0, shared layout.
// Exact for step data: preimages of a cell's points fill same-level cells.
StepFunction ruelle_apply(const StepFunction& W, const StepFunction& f);

// Branch-normalized transfer (R0 g)(x) = (1/#r^-1(x)) sum g(y).
StepFunction transfer_normalized(const StepFunction& g);

// R_{m0} f = R0(|m0|^2 f), the filter-weighted normalized transfer operator.
StepFunction ruelle_m0(const StepFunction& m0, const StepFunction& f);

// The weight realizing R_{m0} as R_W: W(y) = |m0(y)|^2 / #r^-1(r(y)).
// Subshifts need resolution >= 2 (the denominator reads the second symbol).
StepFunction weight_from_filter(const StepFunction& m0);

// Adjoint gather on mass vectors: out[p] = W[p] * sum of nu over target
// cells of p (the transpose of ruelle_apply in the cell basis).
std::vector<double> adjoint_apply(const StepFunction& W, const BasisPtr& basis,
                                  const std::vector<double>& nu);

PerronData solve_perron(const StepFunction& W, double tol = 1e-12, int maxit = 10000);

// max over same-level indicators f of |mu(f) - mu(R0-average of f)|, the
// exact cell form of strong invariance.
double strong_invariance_residual(const MeasureVector& mu);

// max over one-level-coarser indicators f of |mu(f o r) - mu(f)|; both sides
// are exact in cell arithmetic at that level.
double invariance_residual(const MeasureVector& mu);

// d(mu) = h d(nu), cellwise.
MeasureVector invariant_from_eigen(const MeasureVector& nu, const StepFunction& h);

// ||R_{m0} h - h||_inf.
double prf_residual(const StepFunction& m0, const StepFunction& h);

// max over cells of the operator norm of (1/#r^-1) sum M0*(y)H(y)M0(y) -
// H(x); H must be Hermitian PSD per cell within psd_tol.
double matrix_prf_residual(const MatrixStepFunction& M0, const MatrixStepFunction& H,
                           double psd_tol = 1e-10);

// ||S f||^2 - ||f||^2 in L^2(h dmu) for (S f)(x) = m0(x) f(r(x)), with mu
// the canonical strongly invariant measure one level finer.
double isometry_gap(const StepFunction& m0, const StepFunction& h, const StepFunction& f);

// Serial reference kernels; bitwise-identical results to the parallel ones.
namespace reference {
StepFunction ruelle_apply(const StepFunction& W, const StepFunction& f);
StepFunction transfer_normalized(const StepFunction& g);
std::vector<double> adjoint_apply(const StepFunction& W, const BasisPtr& basis,
                                  const std::vector<double>& nu);
} // namespace reference

} // namespace solenoid
