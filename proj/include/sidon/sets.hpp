#pragma once

// Difference sets and B_h sets: brute-force verifiers, the Singer and
// Bose-Chowla constructions, and canonical forms under equivalence.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "sidon/error.hpp"
#include "sidon/finite_field.hpp"
#include "sidon/group.hpp"

namespace sidon {

struct DifferenceSetParams {
    std::int64_t v = 0;
    std::int64_t k = 0;
    std::int64_t lambda = 0;

    bool operator==(const DifferenceSetParams&) const = default;
};

struct DifferenceSet {
    AbelianGroup group;
    std::vector<GroupElement> elements;  // sorted, distinct
    DifferenceSetParams params;

    std::int64_t order() const { return params.k - params.lambda; }
};

/// A set of elements together with the group holding it.
struct Witness {
    AbelianGroup group;
    std::vector<GroupElement> elements;
};

struct BhSet {
    AbelianGroup group;
    std::int64_t h = 1;
    std::vector<GroupElement> elements;  // sorted, first element is zero
};

inline std::vector<GroupElement> cyclic_elements(const AbelianGroup& g, const std::vector<std::int64_t>& values) {
    std::vector<GroupElement> out;
    out.reserve(values.size());
    for (auto x : values) out.push_back(g.element({x}));
    return out;
}

/// Cyclic-group elements as plain residues.
inline std::vector<std::int64_t> residues(const std::vector<GroupElement>& elems) {
    std::vector<std::int64_t> out;
    for (const auto& e : elems) {
        require(e.coords.size() <= 1, ErrorCode::NotCyclic, "element is not from a cyclic group");
        out.push_back(e.coords.empty() ? 0 : e.coords[0]);
    }
    return out;
}

namespace detail {

inline std::vector<GroupElement> sorted_distinct(const AbelianGroup& g, std::vector<GroupElement> elems) {
    for (const auto& e : elems)
        require(g.contains(e), ErrorCode::InvalidArgument, "element does not belong to the group");
    std::sort(elems.begin(), elems.end());
    require(std::adjacent_find(elems.begin(), elems.end()) == elems.end(), ErrorCode::DuplicateElement,
            "set contains a repeated element");
    return elems;
}

} // namespace detail

/// Counts d_i - d_j over all ordered pairs; returns (v, k, lambda) iff every
/// nonzero element occurs equally often.
inline std::optional<DifferenceSetParams> verify_difference_set(const AbelianGroup& g,
                                                                std::vector<GroupElement> elems) {
    elems = detail::sorted_distinct(g, std::move(elems));
    const std::int64_t v = g.order();
    std::vector<std::int64_t> count(static_cast<std::size_t>(v), 0);
    for (const auto& a : elems)
        for (const auto& b : elems)
            if (&a != &b) ++count[static_cast<std::size_t>(g.encode(g.sub(a, b)))];
    if (v == 1) return DifferenceSetParams{1, static_cast<std::int64_t>(elems.size()), static_cast<std::int64_t>(elems.size())};
    const std::int64_t lambda = count[1];
    for (std::int64_t x = 1; x < v; ++x)
        if (count[static_cast<std::size_t>(x)] != lambda) return std::nullopt;
    return DifferenceSetParams{v, static_cast<std::int64_t>(elems.size()), lambda};
}

inline DifferenceSet make_difference_set(const AbelianGroup& g, std::vector<GroupElement> elems) {
    elems = detail::sorted_distinct(g, std::move(elems));
    auto params = verify_difference_set(g, elems);
    require(params.has_value(), ErrorCode::InvalidArgument, "set is not a difference set");
    return {g, std::move(elems), *params};
}

/// True iff all C(k+h-1, h) sums of h elements taken with repetition are
/// pairwise distinct.
inline bool verify_bh(const AbelianGroup& g, std::vector<GroupElement> elems, std::int64_t h) {
    require(h >= 1, ErrorCode::InvalidArgument, "h must be at least 1");
    elems = detail::sorted_distinct(g, std::move(elems));
    std::unordered_set<std::int64_t> seen;
    std::vector<std::size_t> idx(static_cast<std::size_t>(h), 0);
    const std::size_t k = elems.size();
    if (k == 0) return true;
    while (true) {
        GroupElement s = g.zero();
        for (auto i : idx) s = g.add(s, elems[i]);
        if (!seen.insert(g.encode(s)).second) return false;
        // next nondecreasing index tuple
        std::size_t pos = idx.size();
        while (pos > 0 && idx[pos - 1] == k - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < idx.size(); ++j) idx[j] = idx[pos - 1];
    }
    return true;
}

/// Translates so the set contains zero (shift by its smallest element).
inline BhSet make_bh_set(const AbelianGroup& g, std::vector<GroupElement> elems, std::int64_t h) {
    elems = detail::sorted_distinct(g, std::move(elems));
    if (!elems.empty()) {
        const GroupElement base = elems.front();
        for (auto& e : elems) e = g.sub(e, base);
        std::sort(elems.begin(), elems.end());
    }
    require(verify_bh(g, elems, h), ErrorCode::InvalidArgument, "set is not a B_" + std::to_string(h) + " set");
    return {g, h, std::move(elems)};
}

/// {z d + g : d in D} in Z_v.
inline std::vector<std::int64_t> affine_image(const std::vector<std::int64_t>& set, std::int64_t z, std::int64_t shift,
                                              std::int64_t v) {
    std::vector<std::int64_t> out;
    out.reserve(set.size());
    for (auto d : set) out.push_back(floor_mod(mul_mod(z, d, v) + shift, v));
    std::sort(out.begin(), out.end());
    return out;
}

/// Canonical representative of the equivalence class {z D + g : gcd(z, v) = 1}
/// in a cyclic group: the lexicographically smallest image containing 0 and 1
/// (or containing 0 if no image contains both).
inline DifferenceSet normalize_equivalence(const DifferenceSet& d) {
    require(d.group.is_cyclic(), ErrorCode::NotCyclic, "equivalence normalization is defined for cyclic groups only");
    const std::int64_t v = d.group.order();
    if (v == 1 || d.elements.empty()) return d;
    const auto set = residues(d.elements);
    std::optional<std::vector<std::int64_t>> best, best_fallback;
    for (std::int64_t z = 1; z < v; ++z) {
        if (std::gcd(z, v) != 1) continue;
        for (auto di : set) {
            const std::int64_t shift = floor_mod(-mul_mod(z, di, v), v);
            auto img = affine_image(set, z, shift, v);
            bool has_one = std::binary_search(img.begin(), img.end(), std::int64_t{1});
            auto& slot = has_one ? best : best_fallback;
            if (!slot || img < *slot) slot = std::move(img);
        }
    }
    const auto& chosen = best ? *best : *best_fallback;
    return {d.group, cyclic_elements(d.group, chosen), d.params};
}

/// Planar difference set of order q in Z_{q^2+q+1}: the exponents a mod v
/// with theta^a in the GF(q)-span of {1, theta}, theta primitive in GF(q^3).
inline DifferenceSet singer(std::int64_t q, const Limits& limits = default_limits()) {
    auto pp = as_prime_power(q);
    require(pp.has_value(), ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
    FiniteField field(pp->prime, 3 * pp->exponent, limits);
    const std::int64_t v = q * q + q + 1;
    const auto sub = field.subfield(pp->exponent);
    const FieldElement theta = field.primitive();
    std::set<std::int64_t> exps;
    for (auto alpha : sub)
        for (auto beta : sub) {
            FieldElement x = field.add(alpha, field.mul(beta, theta));
            if (x.value == 0) continue;
            exps.insert(field.dlog(x) % v);
        }
    AbelianGroup g = AbelianGroup::cyclic(v);
    DifferenceSet d = make_difference_set(g, cyclic_elements(g, {exps.begin(), exps.end()}));
    require(d.params == DifferenceSetParams{v, q + 1, 1}, ErrorCode::InvalidArgument,
            "Singer construction produced unexpected parameters");
    return normalize_equivalence(d);
}

/// B_h set of size q in Z_{q^h - 1}: {dlog(theta + c) : c in GF(q)} with
/// theta primitive in GF(q^h), translated so the minimum is 0.
/// For h = 1 the construction degenerates (theta lies in GF(q)); the whole
/// group Z_q is returned instead, which is a B_1 set of size q.
inline BhSet bose_chowla(std::int64_t q, std::int64_t h, const Limits& limits = default_limits()) {
    auto pp = as_prime_power(q);
    require(pp.has_value(), ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
    require(h >= 1, ErrorCode::InvalidArgument, "h must be at least 1");
    if (h == 1) {
        AbelianGroup g = AbelianGroup::cyclic(q);
        std::vector<std::int64_t> all(static_cast<std::size_t>(q));
        std::iota(all.begin(), all.end(), 0);
        return make_bh_set(g, cyclic_elements(g, all), 1);
    }
    FiniteField field(pp->prime, static_cast<unsigned>(h) * pp->exponent, limits);
    const std::int64_t v = static_cast<std::int64_t>(field.size()) - 1;
    const FieldElement theta = field.primitive();
    std::vector<std::int64_t> logs;
    for (auto c : field.subfield(pp->exponent)) logs.push_back(field.dlog(field.add(theta, c)));
    AbelianGroup g = AbelianGroup::cyclic(v);
    return make_bh_set(g, cyclic_elements(g, logs), h);
}

} // namespace sidon
