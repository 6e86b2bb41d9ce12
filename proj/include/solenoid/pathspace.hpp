#pragma once

#include <cstdint>
#include <utility>

#include "solenoid/martingale.hpp"
#include "solenoid/rng.hpp"

namespace solenoid {

// Branch choices along an inverse orbit, oldest first.
using BranchWord = std::vector<int>;

// Unnormalized path-space measure P_x on branch sequences: cylinder mass
// W(z_1)...W(z_n) h(z_n) along z_j = tau_{w_j}(z_{j-1}), z_0 = x. Total mass
// h(x) when sum_k W(tau_k z)h(tau_k z) = h(z) holds.
struct PathMeasure {
    StepFunction W;
    StepFunction h;
    PointCode x;
};

// Validates layouts (W weight, h real >= 0, x locatable in the shared
// basis); the harmonicity identity is measured by consistency_residual, not
// enforced here.
PathMeasure make_path_measure(StepFunction W, StepFunction h, PointCode x);

double cylinder_mass(const PathMeasure& P, const BranchWord& w);

// |sum_k mass(w + k) - mass(w)|: the Kolmogorov consistency defect.
double consistency_residual(const PathMeasure& P, const BranchWord& w);

// p_k(z) = W(tau_k z) h(tau_k z) / h(z); ZeroMass when h(z) = 0.
std::vector<double> transition_kernel(const PathMeasure& P, const PointCode& z);

// A sampled inverse orbit: branch word plus the visited cells in the basis
// of P.W (z_0 = cell of x first). Cell indices stay exact for walks of any
// length; exact PointCodes for the visited prefix come from psi_inv.
struct PathSample {
    BranchWord word;
    std::vector<std::uint64_t> cells;
};

// Draw n steps from the normalized kernel q_k/sum(q), q_k = W h (tau_k z).
// ZeroMass if h(x) = 0, DeadEnd if every branch weight vanishes.
PathSample sample_path(const PathMeasure& P, int n, SplitMix64& rng);
PathSample sample_path(const PathMeasure& P, int n, std::uint64_t seed);

// Cell representatives of a sample's visited cells as PointCodes.
std::vector<PointCode> visited_points(const PathMeasure& P, const PathSample& s);

// Branch index k with tau_k(r(x)) = x.
int branch_digit(const SystemSpec& sys, const PointCode& x);

// prefix = (x_0 .. x_n) with r(x_{j+1}) = x_j -> (x_0, branch digits);
// inverse rebuilds the orbit. NotAnOrbit when the relation fails.
std::pair<PointCode, BranchWord> psi(const SystemSpec& sys,
                                     const std::vector<PointCode>& prefix);
std::vector<PointCode> psi_inv(const SystemSpec& sys, const PointCode& x, const BranchWord& w);

// Exact disintegration defect |sum_x mu(x) int_Omega f(z_n) dP_x - omega_n(f)|
// by full enumeration of depth-n branch words from every base cell.
double disintegration_exact(const OmegaFamily& fam, const StepFunction& f, int n);

struct DisintegrationStats {
    Complex estimate;
    double std_error;
    Complex omega_value;
    double residual;
    long long samples;
};

// Monte Carlo for the same quantity: x ~ mu, path ~ normalized kernel,
// averaging h(x) f(z_n); per-path RNG substreams keyed by path index make
// the result independent of thread count.
DisintegrationStats disintegration_mc(const OmegaFamily& fam, const StepFunction& f, int n,
                                      long long samples, std::uint64_t seed);

struct ConvergenceStats {
    long long paths;
    int steps;
    double epsilon;
    double failure_fraction;     // paths whose late fluctuation exceeds epsilon
    double max_late_fluctuation; // largest fluctuation past the midpoint
};

// Samples inverse orbits started from mu-random cells and tracks the ratio
// (h0/h)(z_j) at n_checkpoints evenly spaced steps; a path fails when the
// ratio still moves by more than epsilon after the midpoint checkpoint.
ConvergenceStats cocycle_convergence(const StepFunction& W, const StepFunction& h,
                                     const MeasureVector& mu, const StepFunction& h0, int steps,
                                     int n_checkpoints, long long paths, std::uint64_t seed,
                                     double epsilon = 1e-3);

} // namespace solenoid
