#include "solenoid/system.hpp"

#include <algorithm>
#include <limits>

namespace solenoid {

bool operator==(const CircleMapN& a, const CircleMapN& b) { return a.N == b.N; }
bool operator==(const SubshiftSFT& a, const SubshiftSFT& b) { return a.A == b.A; }
bool operator==(const AffineIFS& a, const AffineIFS& b) {
    return a.scale == b.scale && a.digits == b.digits;
}

std::uint64_t upow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw LevelOutOfRange("resolution overflows 64-bit cell index");
        r *= base;
    }
    return r;
}

SystemSpec SystemSpec::circle(int N) {
    if (N < 2) throw InvalidSpec("circle map needs N >= 2");
    SystemSpec s;
    s.v_ = CircleMapN{N};
    return s;
}

SystemSpec SystemSpec::subshift(std::vector<std::vector<int>> A) {
    const int K = static_cast<int>(A.size());
    if (K < 1) throw InvalidSpec("transition matrix is empty");
    for (const auto& row : A) {
        if (static_cast<int>(row.size()) != K)
            throw InvalidSpec("transition matrix is not square");
        for (int e : row)
            if (e != 0 && e != 1) throw InvalidSpec("transition matrix entries must be 0 or 1");
    }
    SystemSpec s;
    s.prefixes_.resize(K);
    s.successors_.resize(K);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
            if (A[i][j] == 1) {
                s.prefixes_[j].push_back(i);
                s.successors_[i].push_back(j);
            }
    for (int j = 0; j < K; ++j)
        if (s.prefixes_[j].empty())
            throw InvalidSpec("transition matrix column " + std::to_string(j) +
                              " has no 1: shift is not onto");
    s.v_ = SubshiftSFT{std::move(A)};
    return s;
}

SystemSpec SystemSpec::ifs(int scale, std::vector<int> digits) {
    if (scale < 2) throw InvalidSpec("IFS scale must be >= 2");
    if (digits.empty()) throw InvalidSpec("IFS needs at least one digit");
    auto sorted = digits;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidSpec("IFS digits must be distinct");
    for (int d : digits)
        if (d < 0 || d >= scale) throw InvalidSpec("IFS digit out of [0, scale)");
    if (digits != sorted) digits = std::move(sorted);
    SystemSpec s;
    s.v_ = AffineIFS{scale, std::move(digits)};
    return s;
}

int SystemSpec::alphabet_size() const {
    if (is_circle()) return circle_spec().N;
    if (is_subshift()) return static_cast<int>(subshift_spec().A.size());
    return static_cast<int>(ifs_spec().digits.size());
}

namespace {

const CellIndex& as_cell(const PointCode& p) {
    if (!std::holds_alternative<CellIndex>(p))
        throw InvalidPoint("expected a circle cell code, got a symbol word");
    return std::get<CellIndex>(p);
}

const SymbolWord& as_word(const PointCode& p) {
    if (!std::holds_alternative<SymbolWord>(p))
        throw InvalidPoint("expected a symbol word, got a circle cell code");
    return std::get<SymbolWord>(p);
}

} // namespace

void validate_point(const SystemSpec& sys, const PointCode& p) {
    if (sys.is_circle()) {
        const auto& c = as_cell(p);
        if (c.level < 0) throw InvalidPoint("negative resolution level");
        const std::uint64_t M = upow(static_cast<std::uint64_t>(sys.circle_spec().N), c.level);
        if (c.index >= M) throw InvalidPoint("cell index exceeds N^level");
        return;
    }
    const auto& w = as_word(p);
    if (sys.is_ifs()) {
        // IFS words carry digit values, e.g. (0,2,2) for digits {0,2}.
        const auto& digits = sys.ifs_spec().digits;
        for (int d : w)
            if (!std::binary_search(digits.begin(), digits.end(), d))
                throw InvalidPoint("word entry is not one of the IFS digits");
        return;
    }
    const int K = sys.alphabet_size();
    for (int s : w)
        if (s < 0 || s >= K) throw InvalidPoint("symbol out of alphabet range");
    const auto& A = sys.subshift_spec().A;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (A[w[i]][w[i + 1]] != 1) throw InvalidWord("inadmissible transition in word");
}

PointCode forward(const SystemSpec& sys, const PointCode& p) {
    validate_point(sys, p);
    if (sys.is_circle()) {
        const auto& c = as_cell(p);
        const std::uint64_t M = upow(static_cast<std::uint64_t>(sys.circle_spec().N), c.level);
        const std::uint64_t N = static_cast<std::uint64_t>(sys.circle_spec().N);
        return CellIndex{c.level, (c.index * N) % M};
    }
    const auto& w = as_word(p);
    if (w.empty()) throw EmptyWord("cannot shift the empty word");
    return SymbolWord(w.begin() + 1, w.end());
}

int branch_count(const SystemSpec& sys, const PointCode& p) {
    validate_point(sys, p);
    if (sys.is_circle()) return sys.circle_spec().N;
    if (sys.is_ifs()) return static_cast<int>(sys.ifs_spec().digits.size());
    const auto& w = as_word(p);
    if (w.empty()) throw EmptyWord("branch count of the empty word is undefined");
    return static_cast<int>(sys.prefixes(w.front()).size());
}

PointCode branch(const SystemSpec& sys, int k, const PointCode& p) {
    const int bc = branch_count(sys, p);
    if (k < 0 || k >= bc) throw BranchOutOfRange("branch index " + std::to_string(k) +
                                                 " not in [0, " + std::to_string(bc) + ")");
    if (sys.is_circle()) {
        // tau_k(j / N^L) = (j + k N^L) / N^(L+1).
        const auto& c = as_cell(p);
        const std::uint64_t M = upow(static_cast<std::uint64_t>(sys.circle_spec().N), c.level);
        upow(static_cast<std::uint64_t>(sys.circle_spec().N), c.level + 1);
        return CellIndex{c.level + 1, c.index + static_cast<std::uint64_t>(k) * M};
    }
    const auto& w = as_word(p);
    SymbolWord out;
    out.reserve(w.size() + 1);
    if (sys.is_subshift())
        out.push_back(sys.prefixes(w.front())[k]);
    else
        out.push_back(sys.ifs_spec().digits[k]);
    out.insert(out.end(), w.begin(), w.end());
    return out;
}

std::vector<PointCode> preimages(const SystemSpec& sys, const PointCode& p) {
    const int bc = branch_count(sys, p);
    std::vector<PointCode> out;
    out.reserve(bc);
    for (int k = 0; k < bc; ++k) out.push_back(branch(sys, k, p));
    return out;
}

StructureFlags structure_flags(const SystemSpec& sys) {
    if (!sys.is_subshift()) {
        const int b = sys.alphabet_size();
        return StructureFlags{true, true, b};
    }
    const auto& A = sys.subshift_spec().A;
    const int K = static_cast<int>(A.size());
    int maxb = 0;
    for (int j = 0; j < K; ++j)
        maxb = std::max(maxb, static_cast<int>(sys.prefixes(j).size()));
    // Primitive iff some boolean power is strictly positive; Wielandt bounds
    // the exponent by K^2, so the loop below is exhaustive.
    std::vector<std::vector<int>> P = A;
    bool aperiodic = false;
    for (int p = 1; p <= K * K && !aperiodic; ++p) {
        bool allpos = true;
        for (int i = 0; i < K && allpos; ++i)
            for (int j = 0; j < K && allpos; ++j)
                if (P[i][j] == 0) allpos = false;
        if (allpos) {
            aperiodic = true;
            break;
        }
        std::vector<std::vector<int>> Q(K, std::vector<int>(K, 0));
        for (int i = 0; i < K; ++i)
            for (int l = 0; l < K; ++l)
                if (P[i][l])
                    for (int j = 0; j < K; ++j)
                        if (A[l][j]) Q[i][j] = 1;
        P = std::move(Q);
    }
    return StructureFlags{true, aperiodic, maxb};
}

bool points_equal(const SystemSpec& sys, const PointCode& a, const PointCode& b) {
    validate_point(sys, a);
    validate_point(sys, b);
    if (!sys.is_circle()) return as_word(a) == as_word(b);
    // Compare j1/N^L1 = j2/N^L2 by stripping trailing base-N zeros.
    const std::uint64_t N = static_cast<std::uint64_t>(sys.circle_spec().N);
    auto normalize = [N](CellIndex c) {
        while (c.level > 0 && c.index % N == 0) {
            c.index /= N;
            --c.level;
        }
        return c;
    };
    const CellIndex na = normalize(as_cell(a));
    const CellIndex nb = normalize(as_cell(b));
    return na.level == nb.level && na.index == nb.index;
}

double coordinate(const SystemSpec& sys, const PointCode& p) {
    validate_point(sys, p);
    if (sys.is_circle()) {
        const auto& c = as_cell(p);
        const double M = static_cast<double>(
            upow(static_cast<std::uint64_t>(sys.circle_spec().N), c.level));
        return static_cast<double>(c.index) / M;
    }
    // Backward Horner: x = (x' + digit)/base at each prepended symbol, so
    // branch walks telescope bitwise.
    const auto& w = as_word(p);
    const double base =
        static_cast<double>(sys.is_ifs() ? sys.ifs_spec().scale : sys.alphabet_size());
    double x = 0.5;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        x = (x + static_cast<double>(*it)) / base;
    return x;
}

} // namespace solenoid
