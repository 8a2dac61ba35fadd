#pragma once

// Certifiers (cover profiles, packing, perfectness, tiling), the lower and
// upper bounds for B_h parameters, and the conjecture experiments.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sidon/codes.hpp"
#include "sidon/geometry.hpp"
#include "sidon/search.hpp"

namespace sidon {

struct CoverReport {
    std::int64_t r = 0;
    std::optional<std::int64_t> i;  // nullopt: nonuniform
    std::optional<std::int64_t> j;  // nullopt: nonuniform; 0 when there are no non-lattice cosets
    bool is_cover = false;
    std::optional<GroupElement> witness;  // first coset whose count differs
};

namespace detail {

inline void require_enumerable(const LatticeCode& code, const Limits& limits) {
    require(code.det_abs() <= limits.max_enumeration, ErrorCode::EnumerationTooLarge,
            "quotient order " + code.det_abs().str() + " exceeds the enumeration guard");
}

// Number of shape points landing in each coset, indexed by encoded coset.
inline std::vector<std::int64_t> coset_counts(const LatticeCode& code, const Shape& shape, const Limits& limits) {
    require_enumerable(code, limits);
    require(static_cast<std::size_t>(shape.n) == code.n(), ErrorCode::DimensionMismatch,
            "shape dimension differs from lattice dimension");
    const auto& q = code.quotient();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(q.group().order()), 0);
    for (const auto& x : shape_points(shape, limits)) ++counts[static_cast<std::size_t>(q.group().encode(q.map(x)))];
    return counts;
}

} // namespace detail

/// (r, i, j) profile: i = radius-r balls covering a lattice point, j = balls
/// covering a non-lattice point. Counted in Z^n / L: a point y is covered by
/// the ball around y - s for every ball point s in the coset of y.
inline CoverReport check_cover(const LatticeCode& code, std::int64_t r, const Limits& limits = default_limits()) {
    const auto counts = detail::coset_counts(code, Shape::ball(static_cast<std::int64_t>(code.n()), r), limits);
    CoverReport rep;
    rep.r = r;
    rep.i = counts[0];
    if (counts.size() == 1) {
        rep.j = 0;
    } else {
        rep.j = counts[1];
        for (std::size_t c = 2; c < counts.size(); ++c)
            if (counts[c] != *rep.j) {
                rep.witness = code.quotient().group().decode(static_cast<std::int64_t>(c));
                rep.j.reset();
                break;
            }
    }
    rep.is_cover = rep.i.has_value() && rep.j.has_value();
    return rep;
}

/// Translates of the shape by lattice vectors are pairwise disjoint, i.e.
/// all shape points have distinct syndromes.
inline bool check_packing(const LatticeCode& code, const Shape& shape, const Limits& limits = default_limits()) {
    if (shape_size(shape) > code.det_abs()) return false;
    for (auto c : detail::coset_counts(code, shape, limits))
        if (c > 1) return false;
    return true;
}

inline bool check_tiling(const LatticeCode& code, const Shape& shape, const Limits& limits = default_limits()) {
    return shape_size(shape) == code.det_abs() && check_packing(code, shape, limits);
}

inline bool check_perfect(const LatticeCode& code, std::int64_t r, const Limits& limits = default_limits()) {
    return check_tiling(code, Shape::ball(static_cast<std::int64_t>(code.n()), r), limits);
}

// ---------------------------------------------------------------------------
// Bounds

struct BoundReport {
    std::string formula_id;  // phi_k | f_h | phi_h | h_k
    std::map<std::string, std::int64_t> inputs;
    std::optional<Rational> exact;
    // lower <= true value <= upper; equal to exact when the value is rational
    Rational lower;
    Rational upper;
    bool is_lower_bound = true;  // phi bounds bound from below, f_h and h_k from above
    unsigned precision_digits = 0;

    /// Strict comparison that is certain despite the enclosure: for lower
    /// bounds, x > value; for upper bounds, x < value.
    bool strictly_respected_by(const Rational& x) const { return is_lower_bound ? x > upper : x < lower; }
};

namespace detail {

inline std::int64_t ceil_half(std::int64_t h) { return (h + 1) / 2; }
inline std::int64_t floor_half(std::int64_t h) { return h / 2; }

constexpr unsigned kRootDigits = 10;

// Enclosure of x^(1/k) with width 10^-kRootDigits.
inline std::pair<Rational, Rational> root_enclosure(const Rational& x, unsigned k) {
    const BigInt scale = ipow(BigInt(10), kRootDigits);
    const BigInt scaled = numerator(x) * ipow(scale, k) / denominator(x);
    const BigInt s = nth_root_floor(scaled, k);
    Rational lo(s, scale);
    if (ipow(s, k) * denominator(x) == numerator(x) * ipow(scale, k)) return {lo, lo};
    return {lo, Rational(s + 1, scale)};
}

inline BoundReport exact_bound(std::string id, std::map<std::string, std::int64_t> inputs, Rational value) {
    BoundReport b;
    b.formula_id = std::move(id);
    b.inputs = std::move(inputs);
    b.exact = value;
    b.lower = value;
    b.upper = value;
    return b;
}

} // namespace detail

/// phi(h, k) > (k - ceil(h/2))^h / (ceil(h/2)! floor(h/2)!), for k >= ceil(h/2).
inline BoundReport bound_phi_k(std::int64_t h, std::int64_t k) {
    require(h >= 1, ErrorCode::PreconditionViolated, "bound_phi_k requires h >= 1");
    const std::int64_t c = detail::ceil_half(h), f = detail::floor_half(h);
    require(k >= c, ErrorCode::PreconditionViolated, "bound_phi_k requires k >= ceil(h/2)");
    Rational value(ipow(BigInt(k - c), static_cast<unsigned>(h)),
                   factorial(static_cast<unsigned>(c)) * factorial(static_cast<unsigned>(f)));
    return detail::exact_bound("phi_k", {{"h", h}, {"k", k}}, value);
}

/// phi(h, k) > (h - 2n + 2)^n / n! * C(2n, n) / 2^n with n = k - 1, for k >= 2, h >= 2k - 4.
inline BoundReport bound_phi_h(std::int64_t h, std::int64_t k) {
    require(h >= 1 && k >= 2, ErrorCode::PreconditionViolated, "bound_phi_h requires h >= 1 and k >= 2");
    require(h >= 2 * k - 4, ErrorCode::PreconditionViolated, "bound_phi_h requires h >= 2k - 4");
    const std::int64_t n = k - 1;
    const unsigned un = static_cast<unsigned>(n);
    Rational value(ipow(BigInt(h - 2 * n + 2), un) * binomial(2 * n, n), factorial(un) * ipow(BigInt(2), un));
    return detail::exact_bound("phi_h", {{"h", h}, {"k", k}}, value);
}

/// f_h(v) < (v * floor(h/2)! ceil(h/2)!)^(1/h) + ceil(h/2), for large v.
inline BoundReport bound_f_h(std::int64_t h, std::int64_t v) {
    require(h >= 1 && v >= 1, ErrorCode::PreconditionViolated, "bound_f_h requires h >= 1 and v >= 1");
    const std::int64_t c = detail::ceil_half(h), f = detail::floor_half(h);
    Rational radicand(BigInt(v) * factorial(static_cast<unsigned>(c)) * factorial(static_cast<unsigned>(f)));
    auto [lo, hi] = detail::root_enclosure(radicand, static_cast<unsigned>(h));
    BoundReport b;
    b.formula_id = "f_h";
    b.inputs = {{"h", h}, {"v", v}};
    b.lower = lo + c;
    b.upper = hi + c;
    if (lo == hi) b.exact = b.lower;
    b.is_lower_bound = false;
    b.precision_digits = detail::kRootDigits;
    return b;
}

/// h_k(v) < 2 (v (n!)^3 / (2n)!)^(1/n) + 2n - 2 with n = k - 1, for large v.
inline BoundReport bound_h_k(std::int64_t k, std::int64_t v) {
    require(k >= 2 && v >= 1, ErrorCode::PreconditionViolated, "bound_h_k requires k >= 2 and v >= 1");
    const std::int64_t n = k - 1;
    const unsigned un = static_cast<unsigned>(n);
    Rational radicand(BigInt(v) * ipow(factorial(un), 3), factorial(2 * un));
    auto [lo, hi] = detail::root_enclosure(radicand, un);
    BoundReport b;
    b.formula_id = "h_k";
    b.inputs = {{"k", k}, {"v", v}};
    b.lower = 2 * lo + (2 * n - 2);
    b.upper = 2 * hi + (2 * n - 2);
    if (lo == hi) b.exact = b.lower;
    b.is_lower_bound = false;
    b.precision_digits = detail::kRootDigits;
    return b;
}

// ---------------------------------------------------------------------------
// Periods and experiments

/// Smallest t >= 1 with t f_{i,j} in L: the order of [f_{i,j}] in Z^n / L.
inline std::int64_t period_along(const LatticeCode& code, std::size_t i, std::size_t j) {
    const std::size_t n = code.n();
    const ZnPoint x = drop0(AnPoint::unit_step(n, i, j));
    const auto& q = code.quotient();
    return q.group().element_order(q.map(x));
}

struct PpcRow {
    std::int64_t n = 0;
    bool prime_power = false;  // n = 1 counts as a prime power
    bool found = false;
    bool exhaustive = false;
    std::uint64_t nodes = 0;
    std::vector<std::int64_t> set;

    // Only exhaustive rows can confirm or contradict the conjecture.
    bool agrees() const { return !exhaustive || found == prime_power; }
};

struct PpcTable {
    std::vector<PpcRow> rows;

    bool consistent() const {
        for (const auto& r : rows)
            if (!r.agrees()) return false;
        return true;
    }
};

inline PpcTable experiment_ppc(std::int64_t n_max, const SearchOptions& opt = {}) {
    PpcTable table;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        auto rep = search_planar(n, opt);
        PpcRow row;
        row.n = n;
        row.prime_power = n == 1 || as_prime_power(n).has_value();
        row.found = rep.found.has_value();
        row.exhaustive = rep.exhaustive;
        row.nodes = rep.nodes_explored;
        if (rep.found) row.set = residues(rep.found->elements);
        table.rows.push_back(std::move(row));
    }
    return table;
}

struct CyclicityRow {
    std::string label;
    std::int64_t n = 0;
    BigInt det;
    bool perfect = false;
    bool in_scope = false;  // 1-perfect, index n^2+n+1
    std::vector<std::int64_t> quotient_factors;
    bool cyclic = false;
    std::int64_t max_period = 0;
    bool full_period = false;  // some f_{i,j} has period n^2+n+1
};

/// For every 1-perfect code in the list, compares cyclicity of Z^n / L with
/// the existence of a direction f_{i,j} of period n^2+n+1. The two must agree;
/// a disagreement throws.
inline std::vector<CyclicityRow> experiment_cyclicity(const std::vector<std::pair<std::string, LatticeCode>>& codes,
                                                      const Limits& limits = default_limits()) {
    std::vector<CyclicityRow> rows;
    for (const auto& [label, code] : codes) {
        CyclicityRow row;
        row.label = label;
        row.n = static_cast<std::int64_t>(code.n());
        row.det = code.det_abs();
        row.quotient_factors = code.quotient().group().factors();
        row.cyclic = code.quotient().group().is_cyclic();
        row.perfect = check_perfect(code, 1, limits);
        const std::int64_t target = row.n * row.n + row.n + 1;
        row.in_scope = row.perfect && row.det == target;
        for (std::size_t i = 0; i <= code.n(); ++i)
            for (std::size_t j = 0; j <= code.n(); ++j) {
                if (i == j) continue;
                row.max_period = std::max(row.max_period, period_along(code, i, j));
            }
        row.full_period = row.max_period == target;
        if (row.in_scope && row.cyclic != row.full_period)
            throw std::logic_error("cyclicity and full-period criteria disagree for " + label);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace sidon
