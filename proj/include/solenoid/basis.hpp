#pragma once

#include <cstdint>
#include <vector>

#include "solenoid/system.hpp"

namespace solenoid {

// Indexed partition of the space at one resolution: circle level-L cells
// [j/N^L, (j+1)/N^L), IFS depth-d cylinders over the digit set, subshift
// depth-d admissible words in lexicographic order. Immutable after
// construction; safe to share across threads.
//
// All cross-cell relations below are exact index arithmetic, which is what
// keeps transfer-operator identities exact for step-function data:
// preimages of a cell's interior points stay interior to the listed cells.
class CellBasis {
public:
    CellBasis(SystemSpec sys, int resolution);

    const SystemSpec& system() const { return sys_; }
    int resolution() const { return res_; }
    std::uint64_t size() const { return size_; }

    // Branch count at points of this cell (constant except for subshifts,
    // where it is the preimage-symbol count of the leading symbol).
    int branch_count(std::uint64_t cell) const;

    // Same-resolution cells containing the r-preimages of this cell's
    // points, one entry per branch in ascending branch order (entries can
    // repeat at resolution 0).
    std::vector<std::uint64_t> preimage_cells(std::uint64_t cell) const;
    void preimage_cells(std::uint64_t cell, std::vector<std::uint64_t>& out) const;

    // Adjoint relation: cells j such that `cell` appears in
    // preimage_cells(j), with multiplicity, ascending.
    std::vector<std::uint64_t> target_cells(std::uint64_t cell) const;
    void target_cells(std::uint64_t cell, std::vector<std::uint64_t>& out) const;

    // Cell containing a point; exact (points are finite-resolution codes).
    std::uint64_t locate(const PointCode& p) const;

    // Index of this cell's coarse ancestor; `coarser` must be the same
    // system at resolution <= this one.
    std::uint64_t ancestor_in(const CellBasis& coarser, std::uint64_t cell) const;

    // Value of f(r^m x) on `cell` as an index into a coarser basis `f_basis`
    // (resolution L_f), requires m + L_f <= resolution. Exact: r^m maps this
    // cell onto a union of cells refining the returned one.
    std::uint64_t shift_ancestor(const CellBasis& f_basis, std::uint64_t cell, int m) const;

    // Word of a cell (subshift/IFS only; IFS words use digit values).
    SymbolWord word_of(std::uint64_t cell) const;
    std::uint64_t index_of(const SymbolWord& w) const;

    // Ambient midpoint of the cell, for plotting.
    double cell_coordinate(std::uint64_t cell) const;

    bool uniform() const { return !sys_.is_subshift(); }
    // Symbols per position (N, #digits, or K); for uniform systems the cell
    // index is the base-`arity` reading of the branch word.
    int arity() const { return arity_; }

private:
    void check_cell(std::uint64_t cell) const;
    std::uint64_t upow_arity(int e) const;

    SystemSpec sys_;
    int res_ = 0;
    int arity_ = 0;
    std::uint64_t size_ = 0;
    // Subshift word table, flat with stride res_, lex sorted.
    std::vector<int> words_;
    std::vector<int> digit_pos_; // IFS: digit value -> sorted position, -1 invalid
};

} // namespace solenoid
