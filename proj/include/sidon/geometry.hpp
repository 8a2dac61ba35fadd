#pragma once

// The spaces (A_n, d) and (Z^n, d_a), the isometry between them, the shapes
// S_n(r+, r-) and the volume formulas for balls.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sidon/config.hpp"
#include "sidon/error.hpp"
#include "sidon/integer.hpp"

namespace sidon {

/// Point of A_n: n+1 integer coordinates summing to zero.
class AnPoint {
public:
    explicit AnPoint(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {
        require(!coords_.empty(), ErrorCode::InvalidArgument, "A_n point needs at least one coordinate");
        require(std::accumulate(coords_.begin(), coords_.end(), std::int64_t{0}) == 0,
                ErrorCode::InvalidArgument, "A_n coordinates must sum to zero");
    }

    const std::vector<std::int64_t>& coords() const { return coords_; }
    std::size_t dimension() const { return coords_.size() - 1; }

    /// f_{i,j}: +1 at i, -1 at j (i != j), in A_n.
    static AnPoint unit_step(std::size_t n, std::size_t i, std::size_t j) {
        require(i <= n && j <= n && i != j, ErrorCode::InvalidArgument, "f_{i,j} needs distinct indices in [0, n]");
        std::vector<std::int64_t> c(n + 1, 0);
        c[i] = 1;
        c[j] = -1;
        return AnPoint(std::move(c));
    }

    bool operator==(const AnPoint&) const = default;

private:
    std::vector<std::int64_t> coords_;
};

using ZnPoint = std::vector<std::int64_t>;

inline std::int64_t metric_d(const AnPoint& x, const AnPoint& y) {
    require(x.coords().size() == y.coords().size(), ErrorCode::DimensionMismatch, "points of different dimension");
    std::int64_t l1 = 0;
    for (std::size_t i = 0; i < x.coords().size(); ++i) l1 += std::abs(x.coords()[i] - y.coords()[i]);
    return l1 / 2;
}

inline std::int64_t metric_da(std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
    require(x.size() == y.size(), ErrorCode::DimensionMismatch, "points of different dimension");
    std::int64_t up = 0, down = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t t = x[i] - y[i];
        if (t > 0)
            up += t;
        else
            down -= t;
    }
    return std::max(up, down);
}

inline ZnPoint drop0(const AnPoint& x) { return ZnPoint(x.coords().begin() + 1, x.coords().end()); }

inline AnPoint lift0(std::span<const std::int64_t> x) {
    std::vector<std::int64_t> c;
    c.reserve(x.size() + 1);
    c.push_back(-std::accumulate(x.begin(), x.end(), std::int64_t{0}));
    c.insert(c.end(), x.begin(), x.end());
    return AnPoint(std::move(c));
}

/// S_n(r+, r-): integer vectors whose positive coordinates sum to at most r+
/// and whose negative coordinates sum to at least -r-.
struct Shape {
    std::int64_t n = 0;
    std::int64_t r_plus = 0;
    std::int64_t r_minus = 0;

    Shape() = default;
    Shape(std::int64_t dim, std::int64_t plus, std::int64_t minus) : n(dim), r_plus(plus), r_minus(minus) {
        require(n >= 0 && r_plus >= 0 && r_minus >= 0, ErrorCode::InvalidArgument,
                "shape parameters must be nonnegative");
    }

    static Shape ball(std::int64_t dim, std::int64_t r) { return Shape(dim, r, r); }

    std::int64_t h() const { return r_plus + r_minus; }

    bool contains(std::span<const std::int64_t> x) const {
        if (static_cast<std::int64_t>(x.size()) != n) return false;
        std::int64_t up = 0, down = 0;
        for (auto c : x) (c > 0 ? up : down) += std::abs(c);
        return up <= r_plus && down <= r_minus;
    }

    bool operator==(const Shape&) const = default;
};

/// Closed-form count: sum over the number m of positive coordinates of
/// C(n,m) C(r+,m) C(r- + n - m, n - m).
inline BigInt shape_size(const Shape& s) {
    BigInt total = 0;
    for (std::int64_t m = 0; m <= std::min(s.n, s.r_plus); ++m)
        total += binomial(s.n, m) * binomial(s.r_plus, m) * binomial(s.r_minus + s.n - m, s.n - m);
    return total;
}

/// Lexicographically sorted points of the shape. Throws if the shape is
/// larger than the enumeration guard.
inline std::vector<ZnPoint> shape_points(const Shape& s, const Limits& limits = default_limits()) {
    const BigInt size = shape_size(s);
    require(size <= limits.max_enumeration, ErrorCode::EnumerationTooLarge,
            "shape has " + size.str() + " points, above the enumeration guard");
    std::vector<ZnPoint> out;
    out.reserve(size.convert_to<std::size_t>());
    ZnPoint cur(static_cast<std::size_t>(s.n), 0);
    auto fill = [&](auto&& self, std::size_t pos, std::int64_t up_left, std::int64_t down_left) -> void {
        if (pos == cur.size()) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t c = -down_left; c <= up_left; ++c) {
            cur[pos] = c;
            self(self, pos + 1, c > 0 ? up_left - c : up_left, c < 0 ? down_left + c : down_left);
        }
        cur[pos] = 0;
    };
    fill(fill, 0, s.r_plus, s.r_minus);
    return out;
}

/// Volume of the convex hull of the radius-r ball: r^n / n! * C(2n, n).
inline Rational vol_convex(std::int64_t n, std::int64_t r) {
    require(n >= 1 && r >= 0, ErrorCode::InvalidArgument, "vol_convex needs n >= 1, r >= 0");
    return Rational(ipow(BigInt(r), static_cast<unsigned>(n)) * binomial(2 * n, n), factorial(static_cast<unsigned>(n)));
}

/// Volume of the union of unit cubes centred on the ball's points.
inline BigInt vol_cubical(std::int64_t n, std::int64_t r) { return shape_size(Shape::ball(n, r)); }

inline Rational efficiency_ratio(std::int64_t n, std::int64_t r) {
    return vol_convex(n, r) / Rational(vol_cubical(n, r));
}

} // namespace sidon
