#include "solenoid/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace solenoid {

int effective_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* cap = std::getenv("SOLENOID_KIT_THREADS")) {
        try {
            int c = std::stoi(cap);
            if (c >= 1 && c < n) n = c;
        } catch (...) {
            // Malformed cap: ignore, keep the OpenMP default.
        }
    }
    return n;
#else
    return 1;
#endif
}

} // namespace solenoid
