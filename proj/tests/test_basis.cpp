#include <doctest.h>

#include <algorithm>
#include <map>

#include "helpers.hpp"

using namespace solenoid;

namespace {

// Independent preimage-cell oracle: walk point preimages of the cell's left
// representative and locate them.
std::vector<std::uint64_t> preimage_cells_oracle(const CellBasis& B, std::uint64_t cell) {
    const SystemSpec& sys = B.system();
    PointCode rep;
    if (sys.is_circle())
        rep = CellIndex{B.resolution(), cell};
    else
        rep = B.word_of(cell);
    std::vector<std::uint64_t> out;
    for (const PointCode& y : preimages(sys, rep)) out.push_back(B.locate(y));
    return out;
}

} // namespace

TEST_CASE("preimage cells agree with point preimages on every cell") {
    const SystemSpec systems[] = {SystemSpec::circle(2), SystemSpec::circle(3),
                                  th::golden_mean(), th::full_shift(3), th::cantor()};
    for (const SystemSpec& sys : systems) {
        for (int res = sys.is_subshift() ? 1 : 0; res <= 5; ++res) {
            const CellBasis B(sys, res);
            std::vector<std::uint64_t> pre;
            for (std::uint64_t c = 0; c < B.size(); ++c) {
                B.preimage_cells(c, pre);
                CHECK(pre == preimage_cells_oracle(B, c));
                CHECK(static_cast<int>(pre.size()) == B.branch_count(c));
            }
        }
    }
}

TEST_CASE("target cells are the transpose of preimage cells") {
    const SystemSpec systems[] = {SystemSpec::circle(3), th::golden_mean(), th::cantor()};
    for (const SystemSpec& sys : systems) {
        const CellBasis B(sys, 4);
        // multiset of (p, q) pairs must match both ways
        std::map<std::pair<std::uint64_t, std::uint64_t>, int> fwd, bwd;
        std::vector<std::uint64_t> tmp;
        for (std::uint64_t p = 0; p < B.size(); ++p) {
            B.preimage_cells(p, tmp);
            for (std::uint64_t q : tmp) fwd[{p, q}]++;
        }
        for (std::uint64_t q = 0; q < B.size(); ++q) {
            B.target_cells(q, tmp);
            for (std::uint64_t p : tmp) bwd[{p, q}]++;
        }
        CHECK(fwd == bwd);
    }
}

TEST_CASE("locate maps points to the cells containing them") {
    const SystemSpec c2 = SystemSpec::circle(2);
    const CellBasis B(c2, 3);
    CHECK(B.locate(CellIndex{3, 5}) == 5);
    CHECK(B.locate(CellIndex{5, 21}) == 5);  // finer point inside cell 5
    CHECK(B.locate(CellIndex{1, 1}) == 4);   // coarser: 1/2 = cell 4 of 8
    CHECK(B.locate(CellIndex{0, 0}) == 0);

    const SystemSpec gm = th::golden_mean();
    const CellBasis S(gm, 2);
    CHECK(S.locate(SymbolWord{0, 1, 0, 0}) == S.index_of(SymbolWord{0, 1}));
    CHECK_THROWS_AS(S.locate(SymbolWord{0}), ResolutionMismatch);
}

TEST_CASE("word table round trips and stays lexicographic") {
    const CellBasis S(th::golden_mean(), 4);
    // golden-mean cylinder count follows the Fibonacci recursion
    CHECK(S.size() == 8);
    SymbolWord prev;
    for (std::uint64_t c = 0; c < S.size(); ++c) {
        const SymbolWord w = S.word_of(c);
        CHECK(S.index_of(w) == c);
        if (c > 0) CHECK(std::lexicographical_compare(prev.begin(), prev.end(),
                                                      w.begin(), w.end()));
        prev = w;
    }
    CHECK_THROWS_AS(S.index_of(SymbolWord{1, 1, 0, 0}), InvalidWord);
}

TEST_CASE("ancestor and shift ancestor read subwords") {
    const SystemSpec c2 = SystemSpec::circle(2);
    const CellBasis fine(c2, 6), coarse(c2, 2);
    for (std::uint64_t c = 0; c < fine.size(); ++c) {
        CHECK(fine.ancestor_in(coarse, c) == c / 16); // drop 4 base-2 digits
        // f o r^m: ancestor of the shifted cell
        const std::uint64_t shifted = fine.shift_ancestor(coarse, c, 3);
        CHECK(shifted == (c % 8) / 2); // (c mod 2^(6-3)) div 2^(6-3-2)
    }

    const CellBasis S(th::golden_mean(), 4), S2(th::golden_mean(), 2);
    for (std::uint64_t c = 0; c < S.size(); ++c) {
        const SymbolWord w = S.word_of(c);
        CHECK(S.ancestor_in(S2, c) == S2.index_of(SymbolWord(w.begin(), w.begin() + 2)));
        CHECK(S.shift_ancestor(S2, c, 1) ==
              S2.index_of(SymbolWord(w.begin() + 1, w.begin() + 3)));
    }
}

TEST_CASE("cell coordinates are cylinder midpoints") {
    const CellBasis B(SystemSpec::circle(4), 2);
    CHECK(B.cell_coordinate(0) == 0.5 / 16);
    CHECK(B.cell_coordinate(15) == 15.5 / 16);

    const CellBasis C(th::cantor(), 2);
    CHECK(C.cell_coordinate(0) == coordinate(th::cantor(), SymbolWord{0, 0}));
    CHECK(C.word_of(3) == SymbolWord{2, 2});
}

TEST_CASE("subshift bases need resolution >= 1") {
    CHECK_THROWS_AS(CellBasis(th::golden_mean(), 0), LevelOutOfRange);
    CHECK_NOTHROW(CellBasis(SystemSpec::circle(2), 0));
    CHECK_NOTHROW(CellBasis(th::cantor(), 0));
}

TEST_CASE("resolution-zero bases fold all branches onto the single cell") {
    const CellBasis B(th::cantor(), 0);
    REQUIRE(B.size() == 1);
    std::vector<std::uint64_t> pre;
    B.preimage_cells(0, pre);
    CHECK(pre == std::vector<std::uint64_t>{0, 0});
    B.target_cells(0, pre);
    CHECK(pre == std::vector<std::uint64_t>{0, 0});
}

TEST_CASE("refine and coarsen are exact inverses on step data") {
    SplitMix64 rng(5);
    const SystemSpec systems[] = {SystemSpec::circle(3), th::golden_mean(), th::cantor()};
    for (const SystemSpec& sys : systems) {
        const BasisPtr coarse = make_basis(sys, 2);
        const BasisPtr fine = make_basis(sys, 5);
        const StepFunction f = th::random_step(coarse, rng);
        const StepFunction g = refine(f, fine);
        CHECK(max_abs_diff(coarsen(g, coarse), f) == 0.0);
        // transfer of refined step data commutes with refinement bitwise
        const StepFunction W = th::random_real_step(coarse, rng, 0.0, 1.0);
        const StepFunction lhs = ruelle_apply(refine(W, fine), g);
        const StepFunction rhs = refine(ruelle_apply(W, f), fine);
        CHECK(max_abs_diff(lhs, rhs) == 0.0);
    }
    const BasisPtr b2 = make_basis(SystemSpec::circle(2), 2);
    const BasisPtr b3 = make_basis(SystemSpec::circle(2), 3);
    StepFunction f = const_step(b3, Complex(0.0, 0.0));
    f.values[0] = Complex(1.0, 0.0); // not constant on the first coarse cell
    CHECK_THROWS_AS(coarsen(f, b2), ResolutionMismatch);
}
