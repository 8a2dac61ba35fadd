#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sidon/group.hpp"
#include "sidon/matrix.hpp"

namespace sidon {

/// The finite group Z^n / L for a full-rank lattice L (rows of a basis),
/// together with the homomorphism sending a vector to its coset.
///
/// With U * B * V = D in Smith form, x lies in L iff (x V)_i = 0 mod d_i,
/// so the coset of x is read off the columns of V whose invariant exceeds 1.
class Quotient {
public:
    Quotient(AbelianGroup group, std::vector<std::vector<std::int64_t>> columns, std::size_t dimension)
        : group_(std::move(group)), columns_(std::move(columns)), dimension_(dimension) {}

    const AbelianGroup& group() const { return group_; }
    std::size_t dimension() const { return dimension_; }

    GroupElement map(std::span<const std::int64_t> x) const {
        check_length(x.size());
        GroupElement e = group_.zero();
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            const std::int64_t m = group_.factors()[i];
            __int128 acc = 0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                acc += static_cast<__int128>(floor_mod(x[j], m)) * columns_[i][j];
                acc %= m;
            }
            e.coords[i] = static_cast<std::int64_t>(acc);
        }
        return e;
    }

    GroupElement map(std::initializer_list<std::int64_t> x) const {
        return map(std::span<const std::int64_t>(x.begin(), x.size()));
    }

    GroupElement map(const std::vector<BigInt>& x) const {
        check_length(x.size());
        GroupElement e = group_.zero();
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            const BigInt m = group_.factors()[i];
            BigInt acc = 0;
            for (std::size_t j = 0; j < x.size(); ++j) acc += x[j] * columns_[i][j];
            e.coords[i] = floor_mod(acc, m).convert_to<std::int64_t>();
        }
        return e;
    }

    /// Image of the unit vector e_j.
    GroupElement unit_image(std::size_t j) const {
        GroupElement e = group_.zero();
        for (std::size_t i = 0; i < columns_.size(); ++i) e.coords[i] = columns_[i][j];
        return e;
    }

private:
    void check_length(std::size_t len) const {
        require(len == dimension_, ErrorCode::DimensionMismatch, "vector length does not match lattice dimension");
    }

    AbelianGroup group_;
    // columns_[i][j] = V(j, c_i) mod d_{c_i}
    std::vector<std::vector<std::int64_t>> columns_;
    std::size_t dimension_;
};

inline Quotient quotient_group(const IntegerMatrix& basis) {
    require(basis.square(), ErrorCode::DimensionMismatch, "lattice basis must be n x n");
    const std::size_t n = basis.cols();
    auto snf = smith_normal_form(basis);
    std::vector<std::int64_t> factors;
    std::vector<std::vector<std::int64_t>> columns;
    for (std::size_t i = 0; i < n; ++i) {
        const BigInt& d = snf.diagonal(i, i);
        if (d == 0) fail(ErrorCode::RankDeficient, "basis is rank deficient; quotient is infinite");
        if (d == 1) continue;
        std::int64_t m = to_int64(d);
        factors.push_back(m);
        std::vector<std::int64_t> col(n);
        for (std::size_t j = 0; j < n; ++j) col[j] = floor_mod(snf.right(j, i), d).convert_to<std::int64_t>();
        columns.push_back(std::move(col));
    }
    AbelianGroup g = AbelianGroup::make(factors);
    // Smith invariants already form a divisibility chain, so make() keeps them.
    return Quotient(std::move(g), std::move(columns), n);
}

} // namespace sidon
