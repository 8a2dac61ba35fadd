#pragma once

// Finite abelian groups Z_{m_1} x ... x Z_{m_s} in invariant-factor form
// (m_i | m_{i+1}, m_i >= 2).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sidon/error.hpp"
#include "sidon/integer.hpp"
#include "sidon/matrix.hpp"

namespace sidon {

struct GroupElement {
    std::vector<std::int64_t> coords;

    auto operator<=>(const GroupElement&) const = default;
};

class AbelianGroup {
public:
    /// Trivial group.
    AbelianGroup() = default;

    /// Accepts any list of positive factors and normalizes it through the
    /// Smith form of diag(factors); unit factors are dropped.
    static AbelianGroup make(std::span<const std::int64_t> factors) {
        for (auto f : factors)
            require(f >= 1, ErrorCode::InvalidArgument, "group factors must be positive");
        AbelianGroup g;
        if (factors.empty()) return g;
        IntegerMatrix diag(factors.size(), factors.size());
        for (std::size_t i = 0; i < factors.size(); ++i) diag(i, i) = factors[i];
        for (const auto& d : smith_normal_form(diag).invariants())
            if (d > 1) g.factors_.push_back(to_int64(d));
        g.finish();
        return g;
    }

    static AbelianGroup make(std::initializer_list<std::int64_t> factors) {
        return make(std::span<const std::int64_t>(factors.begin(), factors.size()));
    }

    static AbelianGroup cyclic(std::int64_t v) { return make({v}); }

    const std::vector<std::int64_t>& factors() const { return factors_; }
    std::int64_t order() const { return order_; }
    std::size_t rank() const { return factors_.size(); }
    bool is_cyclic() const { return factors_.size() <= 1; }

    GroupElement zero() const { return {std::vector<std::int64_t>(rank(), 0)}; }

    /// Reduces arbitrary integer coordinates into the group.
    GroupElement element(std::span<const std::int64_t> coords) const {
        require(coords.size() == rank(), ErrorCode::DimensionMismatch,
                "element has " + std::to_string(coords.size()) + " coordinates, group rank is " +
                    std::to_string(rank()));
        GroupElement e{std::vector<std::int64_t>(coords.begin(), coords.end())};
        for (std::size_t i = 0; i < rank(); ++i) e.coords[i] = floor_mod(e.coords[i], factors_[i]);
        return e;
    }

    GroupElement element(std::initializer_list<std::int64_t> coords) const {
        return element(std::span<const std::int64_t>(coords.begin(), coords.size()));
    }

    bool contains(const GroupElement& e) const {
        if (e.coords.size() != rank()) return false;
        for (std::size_t i = 0; i < rank(); ++i)
            if (e.coords[i] < 0 || e.coords[i] >= factors_[i]) return false;
        return true;
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        check(a);
        check(b);
        GroupElement r = a;
        for (std::size_t i = 0; i < rank(); ++i) {
            r.coords[i] += b.coords[i];
            if (r.coords[i] >= factors_[i]) r.coords[i] -= factors_[i];
        }
        return r;
    }

    GroupElement neg(const GroupElement& a) const {
        check(a);
        GroupElement r = a;
        for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = r.coords[i] == 0 ? 0 : factors_[i] - r.coords[i];
        return r;
    }

    GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }

    /// z-fold sum of a; negative z scales the negation.
    GroupElement scale(const GroupElement& a, std::int64_t z) const {
        check(a);
        GroupElement r = a;
        for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = mul_mod(a.coords[i], floor_mod(z, factors_[i]), factors_[i]);
        return r;
    }

    std::int64_t element_order(const GroupElement& a) const {
        check(a);
        std::int64_t ord = 1;
        for (std::size_t i = 0; i < rank(); ++i) {
            std::int64_t m = factors_[i];
            ord = std::lcm(ord, m / std::gcd(a.coords[i], m));
        }
        return ord;
    }

    /// Mixed-radix index in [0, order); the first coordinate is most
    /// significant so index order agrees with lexicographic order.
    std::int64_t encode(const GroupElement& a) const {
        check(a);
        std::int64_t idx = 0;
        for (std::size_t i = 0; i < rank(); ++i) idx = idx * factors_[i] + a.coords[i];
        return idx;
    }

    GroupElement decode(std::int64_t idx) const {
        require(idx >= 0 && idx < order_, ErrorCode::InvalidArgument, "element index out of range");
        GroupElement e = zero();
        for (std::size_t i = rank(); i-- > 0;) {
            e.coords[i] = idx % factors_[i];
            idx /= factors_[i];
        }
        return e;
    }

    std::string to_string() const {
        if (factors_.empty()) return "Z_1";
        std::string s;
        for (std::size_t i = 0; i < rank(); ++i) s += (i ? " x Z_" : "Z_") + std::to_string(factors_[i]);
        return s;
    }

    bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }

private:
    void finish() {
        order_ = 1;
        for (auto f : factors_) order_ *= f;
    }

    void check(const GroupElement& a) const {
        require(a.coords.size() == rank(), ErrorCode::DimensionMismatch, "element does not belong to group");
    }

    std::vector<std::int64_t> factors_;
    std::int64_t order_ = 1;
};

/// Every abelian group of order v, one per invariant-factor chain, sorted by
/// rank then lexicographically by factors (so the cyclic group comes first).
inline std::vector<AbelianGroup> abelian_groups_of_order(std::int64_t v) {
    require(v >= 1, ErrorCode::InvalidArgument, "group order must be positive");
    std::vector<std::vector<std::int64_t>> chains;
    std::vector<std::int64_t> chain;
    auto extend = [&](auto&& self, std::int64_t rest, std::int64_t last) -> void {
        if (rest == 1) {
            chains.push_back(chain);
            return;
        }
        for (auto d : divisors(rest)) {
            if (d < 2 || d % last != 0) continue;
            // every later factor is a multiple of d
            if (d != rest && (rest / d) % d != 0) continue;
            chain.push_back(d);
            self(self, rest / d, d);
            chain.pop_back();
        }
    };
    extend(extend, v, 1);
    std::sort(chains.begin(), chains.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<AbelianGroup> groups;
    for (const auto& c : chains) groups.push_back(AbelianGroup::make(c));
    return groups;
}

/// Precomputed index arithmetic for the hot loops of the searchers.
class GroupTable {
public:
    explicit GroupTable(const AbelianGroup& g) : group_(g), order_(g.order()) {
        require(order_ <= (std::int64_t{1} << 13), ErrorCode::EnumerationTooLarge,
                "group too large for a full addition table");
        add_.resize(static_cast<std::size_t>(order_ * order_));
        std::vector<GroupElement> elems;
        for (std::int64_t i = 0; i < order_; ++i) elems.push_back(g.decode(i));
        for (std::int64_t i = 0; i < order_; ++i)
            for (std::int64_t j = 0; j < order_; ++j)
                add_[static_cast<std::size_t>(i * order_ + j)] =
                    static_cast<std::int32_t>(g.encode(g.add(elems[i], elems[j])));
        neg_.resize(static_cast<std::size_t>(order_));
        for (std::int64_t i = 0; i < order_; ++i)
            neg_[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(g.encode(g.neg(elems[i])));
    }

    const AbelianGroup& group() const { return group_; }
    std::int64_t order() const { return order_; }
    std::int32_t add(std::int32_t a, std::int32_t b) const { return add_[static_cast<std::size_t>(a * order_ + b)]; }
    std::int32_t neg(std::int32_t a) const { return neg_[static_cast<std::size_t>(a)]; }
    std::int32_t sub(std::int32_t a, std::int32_t b) const { return add(a, neg(b)); }

private:
    AbelianGroup group_;
    std::int64_t order_;
    std::vector<std::int32_t> add_;
    std::vector<std::int32_t> neg_;
};

} // namespace sidon
