#include "solenoid/basis.hpp"

#include <algorithm>

namespace solenoid {

namespace {
constexpr std::uint64_t kMaxCells = std::uint64_t(1) << 26;
}

CellBasis::CellBasis(SystemSpec sys, int resolution) : sys_(std::move(sys)), res_(resolution) {
    if (res_ < 0) throw LevelOutOfRange("resolution must be >= 0");
    arity_ = sys_.alphabet_size();
    if (!sys_.is_subshift()) {
        size_ = upow(static_cast<std::uint64_t>(arity_), res_);
        if (size_ > kMaxCells) throw LevelOutOfRange("resolution too deep: cell count cap exceeded");
        if (sys_.is_ifs()) {
            digit_pos_.assign(sys_.ifs_spec().scale, -1);
            const auto& ds = sys_.ifs_spec().digits;
            for (int i = 0; i < static_cast<int>(ds.size()); ++i) digit_pos_[ds[i]] = i;
        }
        return;
    }
    if (res_ < 1) throw LevelOutOfRange("subshift bases need resolution >= 1");
    // Lex-ordered admissible words, built by extending on the right so the
    // order is preserved level by level.
    std::vector<int> cur;
    for (int s = 0; s < arity_; ++s) cur.push_back(s);
    std::uint64_t count = static_cast<std::uint64_t>(arity_);
    for (int d = 2; d <= res_; ++d) {
        std::vector<int> next;
        std::uint64_t ncount = 0;
        for (std::uint64_t w = 0; w < count; ++w)
            ncount += sys_.successors(cur[w * (d - 1) + (d - 2)]).size();
        if (ncount > kMaxCells) throw LevelOutOfRange("resolution too deep: cell count cap exceeded");
        next.reserve(ncount * d);
        for (std::uint64_t w = 0; w < count; ++w) {
            const int* base = cur.data() + w * (d - 1);
            for (int t : sys_.successors(base[d - 2])) {
                next.insert(next.end(), base, base + (d - 1));
                next.push_back(t);
            }
        }
        cur = std::move(next);
        count = ncount;
    }
    words_ = std::move(cur);
    size_ = count;
}

void CellBasis::check_cell(std::uint64_t cell) const {
    if (cell >= size_) throw InvalidPoint("cell index out of range for this basis");
}

std::uint64_t CellBasis::upow_arity(int e) const {
    return upow(static_cast<std::uint64_t>(arity_), e);
}

int CellBasis::branch_count(std::uint64_t cell) const {
    check_cell(cell);
    if (!sys_.is_subshift()) return arity_;
    return static_cast<int>(sys_.prefixes(words_[cell * res_]).size());
}

void CellBasis::preimage_cells(std::uint64_t cell, std::vector<std::uint64_t>& out) const {
    check_cell(cell);
    out.clear();
    if (!sys_.is_subshift()) {
        // Preimage of cell j under x -> arity*x mod 1 at the same level:
        // prepend branch digit k, drop the last digit: (j + k*B^L) div B.
        const std::uint64_t M = size_;
        for (int k = 0; k < arity_; ++k)
            out.push_back((cell + static_cast<std::uint64_t>(k) * M) /
                          static_cast<std::uint64_t>(arity_));
        return;
    }
    const int* w = words_.data() + cell * res_;
    SymbolWord pre(static_cast<std::size_t>(res_));
    std::copy(w, w + res_ - 1, pre.begin() + 1);
    for (int y : sys_.prefixes(w[0])) {
        pre[0] = y;
        out.push_back(index_of(pre));
    }
}

std::vector<std::uint64_t> CellBasis::preimage_cells(std::uint64_t cell) const {
    std::vector<std::uint64_t> out;
    preimage_cells(cell, out);
    return out;
}

void CellBasis::target_cells(std::uint64_t cell, std::vector<std::uint64_t>& out) const {
    check_cell(cell);
    out.clear();
    if (!sys_.is_subshift()) {
        if (res_ == 0) {
            out.assign(static_cast<std::size_t>(arity_), 0);
            return;
        }
        // Drop the leading digit, append every trailing digit.
        const std::uint64_t stem = (cell % upow_arity(res_ - 1)) * static_cast<std::uint64_t>(arity_);
        for (int t = 0; t < arity_; ++t) out.push_back(stem + static_cast<std::uint64_t>(t));
        return;
    }
    const int* w = words_.data() + cell * res_;
    SymbolWord tgt(static_cast<std::size_t>(res_));
    std::copy(w + 1, w + res_, tgt.begin());
    for (int t : sys_.successors(w[res_ - 1])) {
        tgt[res_ - 1] = t;
        out.push_back(index_of(tgt));
    }
}

std::vector<std::uint64_t> CellBasis::target_cells(std::uint64_t cell) const {
    std::vector<std::uint64_t> out;
    target_cells(cell, out);
    return out;
}

std::uint64_t CellBasis::locate(const PointCode& p) const {
    validate_point(sys_, p);
    if (sys_.is_circle()) {
        const auto& c = std::get<CellIndex>(p);
        if (c.level >= res_) return c.index / upow_arity(c.level - res_);
        return c.index * upow_arity(res_ - c.level);
    }
    const auto& w = std::get<SymbolWord>(p);
    if (static_cast<int>(w.size()) < res_)
        throw ResolutionMismatch("point code is coarser than the basis");
    if (sys_.is_ifs()) {
        std::uint64_t idx = 0;
        for (int i = 0; i < res_; ++i)
            idx = idx * static_cast<std::uint64_t>(arity_) +
                  static_cast<std::uint64_t>(digit_pos_[w[i]]);
        return idx;
    }
    return index_of(SymbolWord(w.begin(), w.begin() + res_));
}

std::uint64_t CellBasis::ancestor_in(const CellBasis& coarser, std::uint64_t cell) const {
    check_cell(cell);
    if (coarser.sys_ != sys_) throw DimensionMismatch("bases belong to different systems");
    if (coarser.res_ > res_) throw ResolutionMismatch("ancestor basis must be coarser");
    if (!sys_.is_subshift()) return cell / upow_arity(res_ - coarser.res_);
    return coarser.index_of(
        SymbolWord(words_.begin() + cell * res_, words_.begin() + cell * res_ + coarser.res_));
}

std::uint64_t CellBasis::shift_ancestor(const CellBasis& f_basis, std::uint64_t cell, int m) const {
    check_cell(cell);
    if (f_basis.sys_ != sys_) throw DimensionMismatch("bases belong to different systems");
    if (m < 0 || m + f_basis.res_ > res_)
        throw ResolutionMismatch("composition with r^m needs resolution >= m + coarse resolution");
    if (!sys_.is_subshift()) {
        // Digits m+1 .. m+L_f of the cell index.
        const std::uint64_t tail = cell % upow_arity(res_ - m);
        return tail / upow_arity(res_ - m - f_basis.res_);
    }
    return f_basis.index_of(SymbolWord(words_.begin() + cell * res_ + m,
                                       words_.begin() + cell * res_ + m + f_basis.res_));
}

SymbolWord CellBasis::word_of(std::uint64_t cell) const {
    check_cell(cell);
    if (sys_.is_circle()) throw InvalidPoint("circle cells have no symbol word");
    if (sys_.is_subshift())
        return SymbolWord(words_.begin() + cell * res_, words_.begin() + (cell + 1) * res_);
    SymbolWord w(static_cast<std::size_t>(res_));
    std::uint64_t rem = cell;
    for (int i = res_ - 1; i >= 0; --i) {
        w[i] = sys_.ifs_spec().digits[rem % static_cast<std::uint64_t>(arity_)];
        rem /= static_cast<std::uint64_t>(arity_);
    }
    return w;
}

std::uint64_t CellBasis::index_of(const SymbolWord& w) const {
    if (static_cast<int>(w.size()) != res_)
        throw ResolutionMismatch("word length does not match basis resolution");
    validate_point(sys_, PointCode(w));
    if (sys_.is_ifs()) {
        std::uint64_t idx = 0;
        for (int d : w)
            idx = idx * static_cast<std::uint64_t>(arity_) +
                  static_cast<std::uint64_t>(digit_pos_[d]);
        return idx;
    }
    if (!sys_.is_subshift()) throw InvalidPoint("circle cells have no symbol word");
    // Binary search in the lex-sorted flat table.
    std::uint64_t lo = 0, hi = size_;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        const int* m = words_.data() + mid * res_;
        if (std::lexicographical_compare(m, m + res_, w.data(), w.data() + res_))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == size_ || !std::equal(w.begin(), w.end(), words_.begin() + lo * res_))
        throw InvalidWord("word not present in this basis");
    return lo;
}

double CellBasis::cell_coordinate(std::uint64_t cell) const {
    check_cell(cell);
    if (sys_.is_circle())
        return (static_cast<double>(cell) + 0.5) / static_cast<double>(size_);
    return coordinate(sys_, PointCode(word_of(cell)));
}

} // namespace solenoid
