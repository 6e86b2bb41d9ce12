#pragma once

#include <string>
#include <vector>

#include "solenoid/io.hpp"
#include "solenoid/pathspace.hpp"
#include "solenoid/rng.hpp"

// Path of the built CLI binary, forwarded by the test runner's --cli-path=
// argument; empty when the runner was started without it.
extern std::string g_cli_path;

namespace th {

using namespace solenoid;

inline SystemSpec golden_mean() { return SystemSpec::subshift({{1, 1}, {1, 0}}); }
inline SystemSpec full_shift(int k) {
    return SystemSpec::subshift(
        std::vector<std::vector<int>>(k, std::vector<int>(k, 1)));
}
inline SystemSpec cantor() { return SystemSpec::ifs(3, {0, 2}); }

inline StepFunction random_step(const BasisPtr& basis, SplitMix64& rng) {
    StepFunction f = const_step(basis, Complex(0.0, 0.0));
    for (Complex& v : f.values) {
        const double re = rng.next_double(-1.0, 1.0);
        v = Complex(re, rng.next_double(-1.0, 1.0));
    }
    return f;
}

inline StepFunction random_real_step(const BasisPtr& basis, SplitMix64& rng, double lo,
                                     double hi) {
    StepFunction f = const_step(basis, Complex(0.0, 0.0));
    for (Complex& v : f.values) v = Complex(rng.next_double(lo, hi), 0.0);
    return f;
}

// Step function of ambient cell midpoints, the collocation of x -> x.
inline StepFunction coordinate_step(const BasisPtr& basis) {
    StepFunction f = const_step(basis, Complex(0.0, 0.0));
    for (std::uint64_t c = 0; c < basis->size(); ++c)
        f.values[c] = Complex(basis->cell_coordinate(c), 0.0);
    return f;
}

} // namespace th
