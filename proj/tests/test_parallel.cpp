#include <doctest.h>

#include <cstdlib>
#include <string>

#include "helpers.hpp"
#include "solenoid/parallel.hpp"

using namespace solenoid;

namespace {

struct ThreadCapGuard {
    explicit ThreadCapGuard(const char* value) {
        setenv("SOLENOID_KIT_THREADS", value, 1);
    }
    ~ThreadCapGuard() { unsetenv("SOLENOID_KIT_THREADS"); }
};

} // namespace

TEST_CASE("the thread cap follows the environment") {
    {
        ThreadCapGuard cap("1");
        CHECK(effective_threads() == 1);
    }
    {
        ThreadCapGuard cap("2");
        CHECK(effective_threads() <= 2);
        CHECK(effective_threads() >= 1);
    }
    CHECK(effective_threads() >= 1);
}

TEST_CASE("parallel transfer kernels match the serial reference bitwise") {
    SplitMix64 rng(701);
    for (const SystemSpec& sys : {SystemSpec::circle(2), th::golden_mean(), th::cantor()}) {
        const BasisPtr basis = make_basis(sys, 8);
        const StepFunction W = th::random_real_step(basis, rng, 0.0, 1.0);
        const StepFunction f = th::random_step(basis, rng);
        std::vector<double> nu(basis->size());
        for (double& v : nu) v = rng.next_double(0.0, 1.0);

        for (const char* cap : {"1", "4"}) {
            ThreadCapGuard guard(cap);
            CHECK(max_abs_diff(ruelle_apply(W, f), reference::ruelle_apply(W, f)) == 0.0);
            CHECK(max_abs_diff(transfer_normalized(f), reference::transfer_normalized(f)) ==
                  0.0);
            const std::vector<double> a = adjoint_apply(W, basis, nu);
            const std::vector<double> b = reference::adjoint_apply(W, basis, nu);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
        }
    }
}

TEST_CASE("sampling results do not depend on the thread count") {
    const StepFunction m0 = step_from_coeffs(haar_coeffs(), 3);
    const OmegaFamily fam = make_omega_family(
        m0, const_step(m0.basis, Complex(1.0, 0.0)), canonical_measure(m0.basis));
    const StepFunction f = th::coordinate_step(m0.basis);

    DisintegrationStats mc1{}, mc4{};
    {
        ThreadCapGuard cap("1");
        mc1 = disintegration_mc(fam, f, 2, 20000, 13);
    }
    {
        ThreadCapGuard cap("4");
        mc4 = disintegration_mc(fam, f, 2, 20000, 13);
    }
    CHECK(mc1.estimate == mc4.estimate);
    CHECK(mc1.std_error == mc4.std_error);
    CHECK(mc1.residual == mc4.residual);

    const BasisPtr basis = m0.basis;
    StepFunction h0 = const_step(basis, Complex(0.0, 0.0));
    for (std::uint64_t c = 0; c < basis->size() / 2; ++c) h0.values[c] = Complex(1.0, 0.0);
    const StepFunction h = const_step(basis, Complex(1.0, 0.0));
    const MeasureVector mu = canonical_measure(basis);
    const StepFunction W = const_step(basis, Complex(0.5, 0.0));

    ConvergenceStats cv1{}, cv4{};
    {
        ThreadCapGuard cap("1");
        cv1 = cocycle_convergence(W, h, mu, h0, 48, 6, 500, 17);
    }
    {
        ThreadCapGuard cap("4");
        cv4 = cocycle_convergence(W, h, mu, h0, 48, 6, 500, 17);
    }
    CHECK(cv1.failure_fraction == cv4.failure_fraction);
    CHECK(cv1.max_late_fluctuation == cv4.max_late_fluctuation);
    CHECK(cv1.paths == cv4.paths);
}
