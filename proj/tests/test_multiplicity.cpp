#include <doctest.h>

#include <map>

#include "helpers.hpp"

using namespace solenoid;

TEST_CASE("constant counts on full shifts") {
    // doubling map, m = 1: every cell has two preimage cells
    const BasisPtr c2 = make_basis(SystemSpec::circle(2), 4);
    const MultFn one = mult_from_values(c2, std::vector<std::uint64_t>(c2->size(), 1));
    const MultFn ind = induced_multiplicity(one);
    const MultFn det = detail_multiplicity(one);
    for (std::uint64_t c = 0; c < c2->size(); ++c) {
        CHECK(ind.values[c] == 2);
        CHECK(det.values[c] == 1);
    }
    // N-fold analogues: detail = N - 1
    for (int N : {3, 5}) {
        const BasisPtr b = make_basis(SystemSpec::circle(N), 2);
        const MultFn m = mult_from_values(b, std::vector<std::uint64_t>(b->size(), 1));
        for (std::uint64_t c = 0; c < b->size(); ++c)
            CHECK(detail_multiplicity(m).values[c] == static_cast<std::uint64_t>(N) - 1);
    }
}

TEST_CASE("golden mean counts against a word-enumeration oracle") {
    const BasisPtr basis = make_basis(th::golden_mean(), 3);
    // m depends only on the leading symbol: 2 on 0-words, 1 on 1-words
    std::vector<std::uint64_t> mv(basis->size());
    for (std::uint64_t c = 0; c < basis->size(); ++c)
        mv[c] = basis->word_of(c).front() == 0 ? 2 : 1;
    const MultFn m = mult_from_values(basis, mv);
    const MultFn ind = induced_multiplicity(m);

    // oracle: walk every admissible 4-word u, credit m(u_0..u_2) to (u_1..u_3)
    const SystemSpec sys = th::golden_mean();
    std::vector<std::uint64_t> oracle(basis->size(), 0);
    for (std::uint64_t c = 0; c < basis->size(); ++c) {
        const SymbolWord w = basis->word_of(c);
        for (int s : sys.prefixes(w.front())) {
            SymbolWord u{s};
            u.insert(u.end(), w.begin(), w.end() - 1);
            oracle[c] += mv[basis->index_of(u)];
        }
    }
    for (std::uint64_t c = 0; c < basis->size(); ++c) {
        CHECK(ind.values[c] == oracle[c]);
        // leading 0 gets both symbols' counts, leading 1 only the 2 from 0
        const std::uint64_t expect = basis->word_of(c).front() == 0 ? 3 : 2;
        CHECK(ind.values[c] == expect);
        CHECK(detail_multiplicity(m).values[c] == 1);
    }
}

TEST_CASE("induced counts are additive and monotone") {
    SplitMix64 rng(401);
    for (const SystemSpec& sys : {SystemSpec::circle(2), th::golden_mean(), th::cantor()}) {
        const BasisPtr basis = make_basis(sys, 4);
        std::vector<std::uint64_t> av(basis->size()), bv(basis->size());
        for (std::uint64_t c = 0; c < basis->size(); ++c) {
            av[c] = rng.next_u64() % 7;
            bv[c] = rng.next_u64() % 7;
        }
        const MultFn a = mult_from_values(basis, av);
        const MultFn b = mult_from_values(basis, bv);
        std::vector<std::uint64_t> sv(basis->size());
        for (std::uint64_t c = 0; c < basis->size(); ++c) sv[c] = av[c] + bv[c];
        const MultFn s = mult_from_values(basis, sv);
        const MultFn ia = induced_multiplicity(a), ib = induced_multiplicity(b),
                     is = induced_multiplicity(s);
        for (std::uint64_t c = 0; c < basis->size(); ++c) {
            CHECK(is.values[c] == ia.values[c] + ib.values[c]);
            CHECK(is.values[c] >= ia.values[c]);
        }
    }
}

TEST_CASE("counts are conserved against the canonical measure") {
    // sum induced * mu / branch-count equals sum m * mu; for the golden mean
    // with m = (2 on 0-words, 1 on 1-words) both sides are 5/3.
    const BasisPtr basis = make_basis(th::golden_mean(), 1);
    const MultFn m = mult_from_values(basis, {2, 1});
    const MultFn ind = induced_multiplicity(m);
    const MeasureVector mu = canonical_measure(basis);

    std::vector<std::uint64_t> pre;
    double lhs = 0.0, rhs = 0.0;
    for (std::uint64_t c = 0; c < basis->size(); ++c) {
        basis->preimage_cells(c, pre);
        lhs += static_cast<double>(ind.values[c]) * mu.mass[c] /
               static_cast<double>(pre.size());
        rhs += static_cast<double>(m.values[c]) * mu.mass[c];
    }
    CHECK(std::abs(lhs - 5.0 / 3.0) <= 1e-14);
    CHECK(std::abs(rhs - 5.0 / 3.0) <= 1e-14);

    // the same identity for random counts on the doubling map
    SplitMix64 rng(409);
    const BasisPtr c2 = make_basis(SystemSpec::circle(2), 5);
    std::vector<std::uint64_t> rv(c2->size());
    for (auto& v : rv) v = rng.next_u64() % 9;
    const MultFn rm = mult_from_values(c2, rv);
    const MultFn rind = induced_multiplicity(rm);
    const MeasureVector mu2 = canonical_measure(c2);
    double l2 = 0.0, r2 = 0.0;
    for (std::uint64_t c = 0; c < c2->size(); ++c) {
        l2 += static_cast<double>(rind.values[c]) * mu2.mass[c] / 2.0;
        r2 += static_cast<double>(rm.values[c]) * mu2.mass[c];
    }
    CHECK(std::abs(l2 - r2) <= 1e-12);
}

TEST_CASE("negative detail spaces are rejected") {
    const BasisPtr basis = make_basis(th::golden_mean(), 1);
    // induced(m) = (m0+m1, m0): m = (0, 5) gives induced (5, 0) < m at cell 1
    const MultFn m = mult_from_values(basis, {0, 5});
    CHECK_THROWS_AS(detail_multiplicity(m), NegativeDetail);
}

TEST_CASE("infinite counts saturate") {
    CHECK(mult_add(kInfiniteMultiplicity, 3) == kInfiniteMultiplicity);
    CHECK(mult_add(3, kInfiniteMultiplicity) == kInfiniteMultiplicity);
    CHECK(mult_add(kInfiniteMultiplicity, kInfiniteMultiplicity) == kInfiniteMultiplicity);
    CHECK(mult_add(kInfiniteMultiplicity - 1, 1) == kInfiniteMultiplicity);
    CHECK(mult_add(kInfiniteMultiplicity - 5, 3) == kInfiniteMultiplicity - 2);
    CHECK(mult_add(2, 3) == 5);

    const BasisPtr c2 = make_basis(SystemSpec::circle(2), 3);
    std::vector<std::uint64_t> v(c2->size(), kInfiniteMultiplicity);
    const MultFn inf = mult_from_values(c2, v);
    const MultFn ind = induced_multiplicity(inf);
    const MultFn det = detail_multiplicity(inf);
    for (std::uint64_t c = 0; c < c2->size(); ++c) {
        CHECK(ind.values[c] == kInfiniteMultiplicity);
        CHECK(det.values[c] == 0); // minimal admissible resolution of inf - inf
    }
    v[0] = 1; // finite cell under an infinite partner keeps an infinite sum
    const MultFn mixed = mult_from_values(c2, v);
    CHECK(induced_multiplicity(mixed).values[0] == kInfiniteMultiplicity);
    CHECK(detail_multiplicity(mixed).values[0] == kInfiniteMultiplicity);
}

TEST_CASE("multiplicity functions round-trip through JSON") {
    const BasisPtr basis = make_basis(th::golden_mean(), 2);
    const MultFn m = mult_from_values(basis, {2, kInfiniteMultiplicity, 0});
    const Json j = mult_to_json(m);
    CHECK(j["values"][1] == "inf");
    const MultFn back = mult_from_json(m.system(), j);
    CHECK(back.system() == m.system());
    CHECK(back.resolution() == m.resolution());
    CHECK(back.values == m.values);
}
