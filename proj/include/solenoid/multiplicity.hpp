#pragma once

#include <cstdint>
#include <vector>

#include "solenoid/step_function.hpp"

namespace solenoid {

// Infinity sentinel for multiplicity values; arithmetic saturates on it.
inline constexpr std::uint64_t kInfiniteMultiplicity = ~std::uint64_t{0};

// Cellwise multiplicity count in N union {infinity}.
struct MultFn {
    BasisPtr basis;
    std::vector<std::uint64_t> values;

    const SystemSpec& system() const { return basis->system(); }
    int resolution() const { return basis->resolution(); }
    std::uint64_t size() const { return basis->size(); }
};

MultFn mult_from_values(BasisPtr basis, std::vector<std::uint64_t> values);

// a + b with saturation at the infinity sentinel.
std::uint64_t mult_add(std::uint64_t a, std::uint64_t b);

// Pullback count under r: out[c] = sum of m over the preimage cells of c at
// the same resolution (the cell transcription of m'(x) = sum_{r(y)=x} m(y)).
MultFn induced_multiplicity(const MultFn& m);

// induced(m) - m cellwise; the detail-space count. NegativeDetail when a
// cell has induced < m (m cannot arise from a nested resolution subspace);
// infinity - infinity is resolved to 0, the minimal admissible count.
MultFn detail_multiplicity(const MultFn& m);

} // namespace solenoid
