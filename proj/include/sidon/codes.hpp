#pragma once

// Lattice codes in Z^n built from difference sets and B_h sets, the finite
// code over Z_v, and syndrome decoding.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sidon/geometry.hpp"
#include "sidon/group.hpp"
#include "sidon/matrix.hpp"
#include "sidon/quotient.hpp"
#include "sidon/sets.hpp"

namespace sidon {

struct CodeSource {
    std::string kind = "explicit";  // difference-set | bh-set | perfect-a1 | perfect-a2 | tiling-s2 | explicit
    std::vector<std::int64_t> group_factors;
    std::vector<GroupElement> elements;
    std::optional<std::int64_t> h;
    std::optional<std::int64_t> r;
};

/// Full-rank sublattice of Z^n given by basis rows. The quotient Z^n / L is
/// computed once at construction.
class LatticeCode {
public:
    LatticeCode(IntegerMatrix basis, CodeSource source = {})
        : basis_(std::move(basis)), source_(std::move(source)), quotient_(quotient_group(basis_)) {
        det_abs_ = abs(determinant(basis_));
    }

    std::size_t n() const { return basis_.cols(); }
    const IntegerMatrix& basis() const { return basis_; }
    const BigInt& det_abs() const { return det_abs_; }
    const CodeSource& source() const { return source_; }
    const Quotient& quotient() const { return quotient_; }
    IntegerMatrix hnf() const { return hermite_normal_form(basis_); }

    bool same_lattice(const LatticeCode& other) const { return n() == other.n() && hnf() == other.hnf(); }

private:
    IntegerMatrix basis_;
    CodeSource source_;
    Quotient quotient_;
    BigInt det_abs_;
};

/// Kernel of x -> sum_i x_i g_i (Z^n -> G) for the set {0 = g_0, g_1, ..., g_n},
/// after sorting the set ascending and translating its first element to 0.
/// The quotient is the subgroup the set generates.
inline LatticeCode kernel_lattice(const AbelianGroup& g, std::vector<GroupElement> elems,
                                  std::string kind = "difference-set") {
    elems = detail::sorted_distinct(g, std::move(elems));
    require(elems.size() >= 2, ErrorCode::InvalidArgument, "need at least two elements to build a lattice");
    const GroupElement base = elems.front();
    for (auto& e : elems) e = g.sub(e, base);
    std::sort(elems.begin(), elems.end());

    const std::size_t n = elems.size() - 1;
    const std::size_t s = g.rank();
    IntegerMatrix lattice;
    if (s == 0) {
        lattice = IntegerMatrix::identity(n);
    } else {
        IntegerMatrix rel(n + s, s);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < s; ++j) rel(i, j) = elems[i + 1].coords[j];
        for (std::size_t j = 0; j < s; ++j) rel(n + j, j) = g.factors()[j];
        auto snf = smith_normal_form(rel);
        std::size_t rank = 0;
        while (rank < s && snf.diagonal(rank, rank) != 0) ++rank;
        IntegerMatrix gens(n + s - rank, n);
        for (std::size_t r = rank; r < n + s; ++r)
            for (std::size_t j = 0; j < n; ++j) gens(r - rank, j) = snf.left(r, j);
        lattice = hermite_normal_form(gens);
    }
    CodeSource src{std::move(kind), g.factors(), elems, std::nullopt, std::nullopt};
    return LatticeCode(std::move(lattice), std::move(src));
}

/// As kernel_lattice, but the set must generate G, so that Z^n / L is G.
inline LatticeCode lattice_from_set(const AbelianGroup& g, std::vector<GroupElement> elems,
                                    std::string kind = "difference-set") {
    LatticeCode code = kernel_lattice(g, std::move(elems), std::move(kind));
    require(code.det_abs() == g.order(), ErrorCode::NotGenerating,
            "set generates a subgroup of order " + code.det_abs().str() + ", not the whole group");
    return code;
}

inline LatticeCode lattice_from_set(const DifferenceSet& d) { return lattice_from_set(d.group, d.elements); }

inline LatticeCode lattice_from_set(const BhSet& b) {
    LatticeCode code = lattice_from_set(b.group, b.elements, "bh-set");
    CodeSource src = code.source();
    src.h = b.h;
    return LatticeCode(code.basis(), src);
}

inline LatticeCode kernel_lattice(const BhSet& b) {
    LatticeCode code = kernel_lattice(b.group, b.elements, "bh-set");
    CodeSource src = code.source();
    src.h = b.h;
    return LatticeCode(code.basis(), src);
}

namespace detail {

inline std::vector<std::int64_t> normalized_residues(const DifferenceSet& d) {
    require(d.group.is_cyclic(), ErrorCode::NotCyclic, "cyclic group required");
    auto set = residues(d.elements);
    std::sort(set.begin(), set.end());
    require(set.size() >= 2 && set[0] == 0 && set[1] == 1, ErrorCode::NotNormalized,
            "set must be normalized to start with 0, 1");
    return set;
}

} // namespace detail

/// Rows (v, 0, ..., 0) and (-d_i, e_i) for i = 2..n.
inline IntegerMatrix generator_matrix_cyclic(const DifferenceSet& d) {
    const auto set = detail::normalized_residues(d);
    const std::size_t n = set.size() - 1;
    IntegerMatrix b(n, n);
    b(0, 0) = d.group.order();
    for (std::size_t i = 1; i < n; ++i) {
        b(i, 0) = -set[i + 1];
        b(i, i) = 1;
    }
    return b;
}

/// B^{-T}: generator matrix of the dual lattice.
inline RationalMatrix dual_basis(const IntegerMatrix& b) { return rational_inverse(to_rational(b)).transpose(); }

/// Membership through the dual basis: x in L iff x B^{-1} is integral.
inline bool lattice_contains(const IntegerMatrix& basis, std::span<const std::int64_t> x) {
    const RationalMatrix inv = rational_inverse(to_rational(basis));
    require(x.size() == inv.rows(), ErrorCode::DimensionMismatch, "vector length does not match lattice dimension");
    for (std::size_t j = 0; j < inv.cols(); ++j) {
        Rational c = 0;
        for (std::size_t i = 0; i < x.size(); ++i) c += Rational(x[i]) * inv(i, j);
        if (denominator(c) != 1) return false;
    }
    return true;
}

/// The set {[f_{i,0}]} read back from Z^n / L: zero plus the cosets of the
/// unit vectors. May contain repeats when L is not independent.
inline Witness extract_set(const LatticeCode& code) {
    const auto& q = code.quotient();
    Witness w{q.group(), {q.group().zero()}};
    for (std::size_t j = 0; j < code.n(); ++j) w.elements.push_back(q.unit_image(j));
    return w;
}

/// Length-n code over Z_v with parity-check row H; codewords satisfy H x = 0.
struct FiniteCode {
    std::int64_t v = 0;
    std::int64_t n = 0;
    std::vector<std::int64_t> parity_row;
    std::vector<std::int64_t> d_elements;  // underlying set, zero first

    BigInt codeword_count() const { return ipow(BigInt(v), static_cast<unsigned>(n - 1)); }
};

inline FiniteCode finite_code(const DifferenceSet& d) {
    const auto set = detail::normalized_residues(d);
    FiniteCode c;
    c.v = d.group.order();
    c.n = static_cast<std::int64_t>(set.size()) - 1;
    c.parity_row.assign(set.begin() + 1, set.end());
    c.d_elements = set;
    return c;
}

/// Finite code for a cyclic set containing 0 whose smallest nonzero element
/// is a unit; the set is rescaled by that unit's inverse, which leaves the
/// lattice unchanged and makes the first parity entry 1.
inline FiniteCode finite_code_from_set(std::int64_t v, std::vector<std::int64_t> set) {
    std::sort(set.begin(), set.end());
    require(set.size() >= 2 && set[0] == 0, ErrorCode::NotNormalized, "set must contain 0 as its smallest element");
    const std::int64_t inv = modular_inverse(set[1], v);
    FiniteCode c;
    c.v = v;
    c.n = static_cast<std::int64_t>(set.size()) - 1;
    for (auto x : set) c.d_elements.push_back(mul_mod(x, inv, v));
    c.parity_row.assign(c.d_elements.begin() + 1, c.d_elements.end());
    return c;
}

inline std::int64_t syndrome(const FiniteCode& code, std::span<const std::int64_t> y) {
    require(static_cast<std::int64_t>(y.size()) == code.n, ErrorCode::DimensionMismatch,
            "word length does not match code length");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s = floor_mod(s + mul_mod(code.parity_row[i], floor_mod(y[i], code.v), code.v), code.v);
    return s;
}

/// Systematic encoding: positions 2..n carry the information symbols and
/// position 1 is solved from H x = 0.
inline std::vector<std::int64_t> encode(const FiniteCode& code, std::span<const std::int64_t> info) {
    require(static_cast<std::int64_t>(info.size()) == code.n - 1, ErrorCode::DimensionMismatch,
            "information length must be n - 1");
    std::vector<std::int64_t> x(static_cast<std::size_t>(code.n), 0);
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < info.size(); ++i) {
        require(info[i] >= 0 && info[i] < code.v, ErrorCode::InvalidArgument, "information symbol out of range");
        x[i + 1] = info[i];
        acc = floor_mod(acc + mul_mod(code.parity_row[i + 1], info[i], code.v), code.v);
    }
    x[0] = mul_mod(floor_mod(-acc, code.v), modular_inverse(code.parity_row[0], code.v), code.v);
    return x;
}

enum class DecodeStatus { Corrected, Detected };

struct Decoded {
    DecodeStatus status = DecodeStatus::Corrected;
    std::vector<std::int64_t> codeword;  // empty when detected
    ZnPoint error;
};

/// Single-error correction for codes from planar difference sets: the
/// syndrome equals d_i - d_j for exactly one pair, and f_{i,j} (coordinate 0
/// dropped) is subtracted.
inline Decoded decode_radius1(const FiniteCode& code, std::span<const std::int64_t> y) {
    const std::int64_t s = syndrome(code, y);
    Decoded out;
    out.error.assign(static_cast<std::size_t>(code.n), 0);
    out.codeword.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out.codeword[i] = floor_mod(y[i], code.v);
    if (s == 0) return out;
    const auto& d = code.d_elements;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (i == j || floor_mod(d[i] - d[j], code.v) != s) continue;
            if (i > 0) out.error[i - 1] += 1;
            if (j > 0) out.error[j - 1] -= 1;
            for (std::size_t t = 0; t < y.size(); ++t)
                out.codeword[t] = floor_mod(out.codeword[t] - out.error[t], code.v);
            return out;
        }
    return {DecodeStatus::Detected, {}, {}};
}

/// Map from syndrome to the unique shape point carrying it. Syndromes are
/// sum_i x_i g_i for generators g_i of a finite abelian group.
class SyndromeTable {
public:
    /// Throws SyndromeCollision if two shape points share a syndrome.
    SyndromeTable(AbelianGroup group, std::vector<GroupElement> generators, const Shape& shape,
                  const Limits& limits = default_limits())
        : group_(std::move(group)), generators_(std::move(generators)), shape_(shape) {
        require(static_cast<std::int64_t>(generators_.size()) == shape.n, ErrorCode::DimensionMismatch,
                "shape dimension must equal the number of generators");
        for (const auto& x : shape_points(shape, limits)) {
            const std::int64_t key = group_.encode(syndrome_of(x));
            auto [it, inserted] = entries_.emplace(key, x);
            if (!inserted) fail(ErrorCode::SyndromeCollision, "syndrome collision inside the shape");
        }
    }

    const Shape& shape() const { return shape_; }
    const AbelianGroup& group() const { return group_; }
    std::size_t size() const { return entries_.size(); }

    GroupElement syndrome_of(std::span<const std::int64_t> y) const {
        require(y.size() == generators_.size(), ErrorCode::DimensionMismatch, "word length does not match table");
        GroupElement s = group_.zero();
        for (std::size_t i = 0; i < y.size(); ++i) s = group_.add(s, group_.scale(generators_[i], y[i]));
        return s;
    }

    const ZnPoint* lookup(const GroupElement& syndrome) const {
        auto it = entries_.find(group_.encode(syndrome));
        return it == entries_.end() ? nullptr : &it->second;
    }

private:
    AbelianGroup group_;
    std::vector<GroupElement> generators_;
    Shape shape_;
    std::unordered_map<std::int64_t, ZnPoint> entries_;
};

inline SyndromeTable build_syndrome_table(const AbelianGroup& g, const std::vector<GroupElement>& elems,
                                          std::int64_t r_plus, std::int64_t r_minus) {
    auto sorted = detail::sorted_distinct(g, elems);
    require(!sorted.empty() && sorted.front() == g.zero(), ErrorCode::NotNormalized, "set must contain zero");
    std::vector<GroupElement> gens(sorted.begin() + 1, sorted.end());
    const auto n = static_cast<std::int64_t>(gens.size());
    return SyndromeTable(g, std::move(gens), Shape(n, r_plus, r_minus));
}

inline SyndromeTable build_syndrome_table(const BhSet& b, std::int64_t r_plus, std::int64_t r_minus) {
    return build_syndrome_table(b.group, b.elements, r_plus, r_minus);
}

inline SyndromeTable build_syndrome_table(const FiniteCode& code, std::int64_t r_plus, std::int64_t r_minus) {
    AbelianGroup g = AbelianGroup::cyclic(code.v);
    return SyndromeTable(g, cyclic_elements(g, code.parity_row), Shape(code.n, r_plus, r_minus));
}

inline SyndromeTable build_syndrome_table(const LatticeCode& code, std::int64_t r_plus, std::int64_t r_minus) {
    std::vector<GroupElement> gens;
    for (std::size_t j = 0; j < code.n(); ++j) gens.push_back(code.quotient().unit_image(j));
    return SyndromeTable(code.quotient().group(), std::move(gens),
                         Shape(static_cast<std::int64_t>(code.n()), r_plus, r_minus));
}

/// Subtracts table[syndrome(y)]; Detected when the syndrome is outside the
/// table (the error exceeds the design shape).
inline Decoded decode_radius_r(const SyndromeTable& table, std::span<const std::int64_t> y) {
    const ZnPoint* e = table.lookup(table.syndrome_of(y));
    if (!e) return {DecodeStatus::Detected, {}, {}};
    Decoded out{DecodeStatus::Corrected, std::vector<std::int64_t>(y.begin(), y.end()), *e};
    for (std::size_t i = 0; i < y.size(); ++i) out.codeword[i] -= (*e)[i];
    return out;
}

inline Decoded decode_radius_r(const SyndromeTable& table, const FiniteCode& code, std::span<const std::int64_t> y) {
    require(static_cast<std::int64_t>(y.size()) == code.n, ErrorCode::DimensionMismatch,
            "word length does not match code length");
    Decoded out = decode_radius_r(table, y);
    for (auto& c : out.codeword) c = floor_mod(c, code.v);
    return out;
}

/// Sublattice of A_1 spanned by (-2r-1, 2r+1), as Z^1 basis (2r+1).
inline LatticeCode perfect_code_A1(std::int64_t r) {
    require(r >= 0, ErrorCode::InvalidArgument, "radius must be nonnegative");
    return LatticeCode(IntegerMatrix{{2 * r + 1}}, CodeSource{"perfect-a1", {}, {}, std::nullopt, r});
}

/// r-perfect code in A_2 spanned by (-2r-1, r, r+1) and (-r-1, 2r+1, -r).
/// The commonly quoted second vector (-r-1, 2r+1, r) has coordinate sum 2r,
/// so it is not in A_2; with the sign of the last coordinate flipped the
/// lattice has index 3r^2+3r+1 = |S_2(r)| and tiles.
inline LatticeCode perfect_code_A2(std::int64_t r) {
    require(r >= 0, ErrorCode::InvalidArgument, "radius must be nonnegative");
    return LatticeCode(IntegerMatrix{{r, r + 1}, {2 * r + 1, -r}}, CodeSource{"perfect-a2", {}, {}, std::nullopt, r});
}

/// Lattice spanned by (r+1, r+1) and (0, 3r+3); tiles Z^2 with S_2(r+1, r).
inline LatticeCode tiling_lattice_S2(std::int64_t r) {
    require(r >= 0, ErrorCode::InvalidArgument, "radius must be nonnegative");
    return LatticeCode(IntegerMatrix{{r + 1, r + 1}, {0, 3 * r + 3}}, CodeSource{"tiling-s2", {}, {}, std::nullopt, r});
}

} // namespace sidon
