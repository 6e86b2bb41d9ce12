#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "solenoid/parallel.hpp"
#include "solenoid/rng.hpp"
#include "solenoid/transfer.hpp"

using namespace solenoid;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F> double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_ms();
        fn();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    const int resolution = argc > 1 ? std::atoi(argv[1]) : 21;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 5;

    BasisPtr basis = make_basis(SystemSpec::circle(2), resolution);
    SplitMix64 rng(7);
    StepFunction W = const_step(basis, Complex(0.0, 0.0));
    StepFunction f = const_step(basis, Complex(0.0, 0.0));
    for (std::uint64_t c = 0; c < basis->size(); ++c) {
        W.values[c] = Complex(rng.next_double(0.0, 1.0), 0.0);
        f.values[c] = Complex(rng.next_double(-1.0, 1.0), rng.next_double(-1.0, 1.0));
    }
    std::vector<double> nu(basis->size());
    for (double& v : nu) v = rng.next_double(0.0, 1.0);

    std::printf("cells=%llu threads=%d reps=%d (best-of timing, ms)\n",
                static_cast<unsigned long long>(basis->size()), effective_threads(), reps);
    std::printf("%-20s %12s %12s %8s %12s\n", "kernel", "serial", "parallel", "speedup",
                "max|delta|");

    {
        StepFunction a = reference::ruelle_apply(W, f);
        StepFunction b = ruelle_apply(W, f);
        const double ts = time_best_of(reps, [&] { a = reference::ruelle_apply(W, f); });
        const double tp = time_best_of(reps, [&] { b = ruelle_apply(W, f); });
        std::printf("%-20s %12.3f %12.3f %8.2f %12.3e\n", "ruelle_apply", ts, tp, ts / tp,
                    max_abs_diff(a, b));
    }
    {
        StepFunction a = reference::transfer_normalized(f);
        StepFunction b = transfer_normalized(f);
        const double ts = time_best_of(reps, [&] { a = reference::transfer_normalized(f); });
        const double tp = time_best_of(reps, [&] { b = transfer_normalized(f); });
        std::printf("%-20s %12.3f %12.3f %8.2f %12.3e\n", "transfer_normalized", ts, tp,
                    ts / tp, max_abs_diff(a, b));
    }
    {
        std::vector<double> a = reference::adjoint_apply(W, basis, nu);
        std::vector<double> b = adjoint_apply(W, basis, nu);
        const double ts = time_best_of(reps, [&] { a = reference::adjoint_apply(W, basis, nu); });
        const double tp = time_best_of(reps, [&] { b = adjoint_apply(W, basis, nu); });
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
        std::printf("%-20s %12.3f %12.3f %8.2f %12.3e\n", "adjoint_apply", ts, tp, ts / tp, d);
    }
    return 0;
}
