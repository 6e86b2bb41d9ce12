#pragma once

namespace solenoid {

// Worker count for OpenMP kernels: min(omp_get_max_threads(), SOLENOID_KIT_THREADS).
// Reads the environment on every call so tests can change the cap at runtime.
// Returns 1 when built without OpenMP.
int effective_threads();

} // namespace solenoid
