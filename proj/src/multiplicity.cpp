#include "solenoid/multiplicity.hpp"

#include <string>

namespace solenoid {

MultFn mult_from_values(BasisPtr basis, std::vector<std::uint64_t> values) {
    if (values.size() != basis->size())
        throw ResolutionMismatch("value array length does not match cell count");
    return MultFn{std::move(basis), std::move(values)};
}

std::uint64_t mult_add(std::uint64_t a, std::uint64_t b) {
    if (a == kInfiniteMultiplicity || b == kInfiniteMultiplicity) return kInfiniteMultiplicity;
    const std::uint64_t s = a + b;
    return (s < a || s == kInfiniteMultiplicity) ? kInfiniteMultiplicity : s;
}

MultFn induced_multiplicity(const MultFn& m) {
    MultFn out{m.basis, std::vector<std::uint64_t>(m.size(), 0)};
    std::vector<std::uint64_t> pre;
    for (std::uint64_t c = 0; c < m.size(); ++c) {
        m.basis->preimage_cells(c, pre);
        std::uint64_t acc = 0;
        for (std::uint64_t q : pre) acc = mult_add(acc, m.values[q]);
        out.values[c] = acc;
    }
    return out;
}

MultFn detail_multiplicity(const MultFn& m) {
    MultFn induced = induced_multiplicity(m);
    for (std::uint64_t c = 0; c < m.size(); ++c) {
        const std::uint64_t mv = m.values[c];
        std::uint64_t& iv = induced.values[c];
        if (iv == kInfiniteMultiplicity) {
            iv = (mv == kInfiniteMultiplicity) ? 0 : kInfiniteMultiplicity;
        } else if (mv > iv) {
            throw NegativeDetail("cell " + std::to_string(c) +
                                 " has induced multiplicity below its own count");
        } else {
            iv -= mv;
        }
    }
    return induced;
}

} // namespace solenoid
