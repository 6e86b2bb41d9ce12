#pragma once

#include <map>
#include <variant>
#include <vector>

#include "solenoid/transfer.hpp"

namespace solenoid {

// Trigonometric low-pass filter m0(x) = sum_n a_n e^{-i 2 pi n x} for an
// N-fold circle map; the coefficient support is finite.
struct FilterCoeffs {
    int N = 2;
    std::map<int, Complex> a;
};

// 1-periodic by construction.
Complex m0_eval(const FilterCoeffs& c, double x);

FilterCoeffs haar_coeffs();

// Ideal half-band filter sqrt(2) chi_[-1/4,1/4) periodized, as a level-L
// step function on the doubling map; level >= 2 resolves the band edges
// exactly (cells are half-open, matching the half-open band).
StepFunction shannon_step(int level);

// m0 sampled at cell midpoints as a level-L step function on CircleMapN{N}.
StepFunction step_from_coeffs(const FilterCoeffs& c, int level);

// Filters enter either as coefficients or as a native circle step function.
using FilterSpec = std::variant<FilterCoeffs, StepFunction>;

int filter_arity(const FilterSpec& m0);
Complex filter_eval(const FilterSpec& m0, double x);
StepFunction filter_step(const FilterSpec& m0, int level);

// Low-pass normalization defect ||R_{m0} 1 - 1||_inf at the given level.
double qmf_residual(const FilterCoeffs& c, int level);
double qmf_residual(const StepFunction& m0_step);

// Uniform frequency samples x_i = -T + 2T i / M, i = 0..M-1.
struct FreqGrid {
    double T = 0.0;
    std::int64_t M = 0;
};

FreqGrid make_grid(double T, std::int64_t M);
double grid_point(const FreqGrid& g, std::int64_t i);

// Truncated scaling-function transform phihat(x) = prod_{k=1..K}
// m0(x / N^k) / sqrt(N) on a frequency grid; phihat(0) = 1 whenever
// m0(0) = sqrt(N).
struct ScalingApprox {
    FreqGrid grid;
    std::vector<Complex> values;
    int K = 0;
};

ScalingApprox cascade_product(const FilterSpec& m0, int K, const FreqGrid& grid);

// max_i |phihat(x_i) - m0(x_i/N)/sqrt(N) * phihat(x_i/N)| with linear
// interpolation for off-grid x_i/N; exact up to rounding when x_i/N lands
// on the grid.
double scaling_residual(const ScalingApprox& s, const FilterSpec& m0);

// | omega_n(|xi|^2) - int_R |xi(x/N^n) phihat(x)|^2 dx | with h the
// harmonic weight of the pair, omega_n over Haar measure, and midpoint
// quadrature with quad_M points on [-T, T]. T must cover the phihat tail;
// phihat is the depth-K product. QuadratureUnderresolved when doubling
// quad_M moves the quadrature by more than 10 * tol.
double embed_isometry_residual(const FilterSpec& m0, const StepFunction& h,
                               const StepFunction& xi, int n, std::int64_t quad_M, double T,
                               double tol = 1e-8, int K = 30);

} // namespace solenoid
