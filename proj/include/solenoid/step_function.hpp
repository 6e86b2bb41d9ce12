#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "solenoid/basis.hpp"

namespace solenoid {

using Complex = std::complex<double>;

using BasisPtr = std::shared_ptr<const CellBasis>;

BasisPtr make_basis(SystemSpec sys, int resolution);

// Piecewise-constant complex function at one resolution, one value per cell
// in canonical ascending cell order.
struct StepFunction {
    BasisPtr basis;
    std::vector<Complex> values;

    const SystemSpec& system() const { return basis->system(); }
    int resolution() const { return basis->resolution(); }
    std::uint64_t size() const { return basis->size(); }
};

// Nonnegative mass per cell at one resolution.
struct MeasureVector {
    BasisPtr basis;
    std::vector<double> mass;

    const SystemSpec& system() const { return basis->system(); }
    int resolution() const { return basis->resolution(); }
    double total_mass() const;
};

StepFunction const_step(BasisPtr basis, Complex value);
StepFunction step_from_values(BasisPtr basis, std::vector<Complex> values);
MeasureVector measure_from_mass(BasisPtr basis, std::vector<double> mass);

void require_same_layout(const StepFunction& a, const StepFunction& b);

// Exact value replication onto a finer basis of the same system.
StepFunction refine(const StepFunction& f, const BasisPtr& finer);

// Exact inverse of refine: throws ResolutionMismatch if f is not constant on
// the children of some coarser cell.
StepFunction coarsen(const StepFunction& f, const BasisPtr& coarser);

// f o r^m represented exactly on `fine` (resolution >= m + f.resolution()).
StepFunction compose_r_pow(const StepFunction& f, int m, const BasisPtr& fine);

// Children-sum pushdown of mass to a coarser basis.
MeasureVector coarsen_measure(const MeasureVector& mu, const BasisPtr& coarser);

// The canonical strongly invariant reference measure at this resolution:
// circle N^-L per cell, IFS uniform Bernoulli, subshift the stationary Markov
// measure with P(s,t) = p(t)/(n(t)p(s)) where n(t) = #preimage symbols of t
// and p solves p = A diag(1/n) p (total mass 1).
MeasureVector canonical_measure(const BasisPtr& basis);

Complex integrate(const StepFunction& f, const MeasureVector& mu);
double sup_norm(const StepFunction& f);
Complex evaluate(const StepFunction& f, const PointCode& p);

// Pointwise helpers (shared layout enforced).
StepFunction pointwise_mul(const StepFunction& a, const StepFunction& b);
StepFunction conj_fn(const StepFunction& f);
StepFunction abs2_fn(const StepFunction& f);
StepFunction lin_comb(Complex ca, const StepFunction& a, Complex cb, const StepFunction& b);
double max_abs_diff(const StepFunction& a, const StepFunction& b);

// True when every value has |imag| <= tol and real part >= -tol.
bool is_nonnegative_real(const StepFunction& f, double tol);

} // namespace solenoid
