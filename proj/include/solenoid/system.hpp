#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "solenoid/errors.hpp"

namespace solenoid {

// r(x) = N x mod 1 on [0,1).
struct CircleMapN {
    int N;
};

// One-sided subshift over symbols 0..K-1 with 0/1 transition matrix A;
// a word (w1..wd) is admissible when A[wi][wi+1] = 1 for consecutive symbols,
// and r drops the first symbol. Every column of A must contain a 1 (r onto).
struct SubshiftSFT {
    std::vector<std::vector<int>> A;
};

// Affine iterated function system on [0,1]: branches tau_b(x) = (x+b)/scale
// for b in `digits`; points are digit words (most significant first) and r
// drops the first digit.
struct AffineIFS {
    int scale;
    std::vector<int> digits;
};

class SystemSpec {
public:
    static SystemSpec circle(int N);
    static SystemSpec subshift(std::vector<std::vector<int>> A);
    static SystemSpec ifs(int scale, std::vector<int> digits);

    bool is_circle() const { return std::holds_alternative<CircleMapN>(v_); }
    bool is_subshift() const { return std::holds_alternative<SubshiftSFT>(v_); }
    bool is_ifs() const { return std::holds_alternative<AffineIFS>(v_); }

    const CircleMapN& circle_spec() const { return std::get<CircleMapN>(v_); }
    const SubshiftSFT& subshift_spec() const { return std::get<SubshiftSFT>(v_); }
    const AffineIFS& ifs_spec() const { return std::get<AffineIFS>(v_); }

    // Symbols per position: N, K, or #digits.
    int alphabet_size() const;

    // Subshift helpers (precomputed at construction).
    // prefixes(s): ascending symbols y with A[y][s] = 1 (preimage first symbols).
    // successors(s): ascending symbols t with A[s][t] = 1 (admissible extensions).
    const std::vector<int>& prefixes(int symbol) const { return prefixes_[symbol]; }
    const std::vector<int>& successors(int symbol) const { return successors_[symbol]; }

    bool operator==(const SystemSpec& o) const { return v_ == o.v_; }
    bool operator!=(const SystemSpec& o) const { return !(v_ == o.v_); }

private:
    SystemSpec() = default;
    std::variant<CircleMapN, SubshiftSFT, AffineIFS> v_;
    std::vector<std::vector<int>> prefixes_;
    std::vector<std::vector<int>> successors_;
};

bool operator==(const CircleMapN& a, const CircleMapN& b);
bool operator==(const SubshiftSFT& a, const SubshiftSFT& b);
bool operator==(const AffineIFS& a, const AffineIFS& b);

// A point is a finite-resolution representative: for the circle the exact
// rational index/N^level; for words the depth-d cylinder (w1..wd).
struct CellIndex {
    int level;
    std::uint64_t index;

    // representational equality; use points_equal for same-point-at-other-level
    bool operator==(const CellIndex&) const = default;
};
using SymbolWord = std::vector<int>;
using PointCode = std::variant<CellIndex, SymbolWord>;

struct StructureFlags {
    bool onto;
    bool aperiodic;
    int max_branches;
};

// N^e with overflow guard.
std::uint64_t upow(std::uint64_t base, int exp);

void validate_point(const SystemSpec& sys, const PointCode& p);

// r(p). Circle: (N j mod N^L) / N^L at the same level; words: drop the first
// symbol (EmptyWord on length 0).
PointCode forward(const SystemSpec& sys, const PointCode& p);

// Number of inverse branches at p (constant for circle/IFS; for subshifts
// the column count of the leading symbol).
int branch_count(const SystemSpec& sys, const PointCode& p);

// tau_k(p), one level / symbol deeper; forward(branch(k,p)) == p exactly.
// Branch order is ascending (digit / admissible prefix symbol).
PointCode branch(const SystemSpec& sys, int k, const PointCode& p);

// All y with r(y) = p, in ascending branch order.
std::vector<PointCode> preimages(const SystemSpec& sys, const PointCode& p);

StructureFlags structure_flags(const SystemSpec& sys);

// Value equality: circle codes compare as rationals (trailing-zero levels
// stripped), words compare exactly.
bool points_equal(const SystemSpec& sys, const PointCode& a, const PointCode& b);

// Numeric value of the point: circle j/N^L exactly; words map to the ambient
// midpoint of their cylinder (IFS: sum w_i scale^-i + scale^-d/2, so branch
// walks telescope as the affine maps applied to this value; subshift: base-K
// embedding plus a half cell). The walk z -> tau_b(z) satisfies
// coordinate(branch(b,z)) = (coordinate(z)+offset_b)/base exactly.
double coordinate(const SystemSpec& sys, const PointCode& p);

} // namespace solenoid
