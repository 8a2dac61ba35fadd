#pragma once

// Random generators and brute-force oracles shared by the unit tests. The
// oracles deliberately avoid the library's own algorithms.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "sidon.hpp"

namespace testing_support {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
    }

    std::vector<std::int64_t> vec(std::size_t n, std::int64_t lo, std::int64_t hi) {
        std::vector<std::int64_t> v(n);
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }

    sidon::IntegerMatrix matrix(std::size_t rows, std::size_t cols, std::int64_t bound) {
        sidon::IntegerMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(-bound, bound);
        return m;
    }

    // Random point of A_n: n free coordinates, the first one balances the sum.
    sidon::AnPoint an_point(std::size_t n, std::int64_t bound) {
        auto tail = vec(n, -bound, bound);
        std::vector<std::int64_t> c{-std::accumulate(tail.begin(), tail.end(), std::int64_t{0})};
        c.insert(c.end(), tail.begin(), tail.end());
        return sidon::AnPoint(std::move(c));
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

// Cofactor expansion; only for tiny matrices.
inline std::int64_t det_oracle(const std::vector<std::vector<std::int64_t>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    std::int64_t total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<std::int64_t>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<std::int64_t> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        const std::int64_t term = m[0][c] * det_oracle(minor);
        total += (c % 2 == 0) ? term : -term;
    }
    return total;
}

inline std::vector<std::vector<std::int64_t>> to_rows(const sidon::IntegerMatrix& b) {
    std::vector<std::vector<std::int64_t>> rows(b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (const auto& x : b.row(i)) rows[i].push_back(sidon::to_int64(x));
    return rows;
}

// x in the row lattice of B iff x * adj(B) is divisible by det(B) (Cramer).
inline bool member_oracle(const sidon::IntegerMatrix& basis, const std::vector<std::int64_t>& x) {
    const auto rows = to_rows(basis);
    const std::size_t n = rows.size();
    const std::int64_t det = det_oracle(rows);
    for (std::size_t j = 0; j < n; ++j) {
        // coefficient j: det of B with row j replaced by x
        auto m = rows;
        m[j] = x;
        if (det_oracle(m) % det != 0) return false;
    }
    return true;
}

// Shape size by scanning the box [-r-, r+]^n.
inline std::int64_t shape_count_oracle(std::int64_t n, std::int64_t rp, std::int64_t rm) {
    std::vector<std::int64_t> x(static_cast<std::size_t>(n), -rm);
    std::int64_t count = 0;
    while (true) {
        std::int64_t up = 0, down = 0;
        for (auto c : x) (c > 0 ? up : down) += c;
        if (up <= rp && -down <= rm) ++count;
        std::size_t i = 0;
        while (i < x.size() && x[i] == rp) x[i++] = -rm;
        if (i == x.size()) break;
        ++x[i];
    }
    return count;
}

// Difference multiplicities of a subset of Z_v.
inline std::map<std::int64_t, std::int64_t> difference_counts(const std::vector<std::int64_t>& d, std::int64_t v) {
    std::map<std::int64_t, std::int64_t> counts;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            if (i != j) ++counts[((d[i] - d[j]) % v + v) % v];
    return counts;
}

inline bool is_planar_oracle(const std::vector<std::int64_t>& d, std::int64_t v) {
    auto counts = difference_counts(d, v);
    if (static_cast<std::int64_t>(counts.size()) != v - 1) return false;
    for (const auto& [x, c] : counts)
        if (c != 1) return false;
    return true;
}

// Sets of h-fold sums with repetition, via dynamic programming over counts.
inline bool bh_oracle(const std::vector<std::int64_t>& b, std::int64_t h, std::int64_t v) {
    std::map<std::int64_t, int> seen;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(h), 0);
    const auto k = static_cast<std::int64_t>(b.size());
    // all nondecreasing index tuples, enumerated as base-k counters filtered by order
    std::int64_t total = 1;
    for (std::int64_t i = 0; i < h; ++i) total *= k;
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t c = code, s = 0, prev = -1;
        bool sorted = true;
        for (std::int64_t i = 0; i < h; ++i) {
            const std::int64_t t = c % k;
            c /= k;
            if (t < prev) sorted = false;
            prev = t;
            s += b[static_cast<std::size_t>(t)];
        }
        if (!sorted) continue;
        if (++seen[((s % v) + v) % v] > 1) return false;
    }
    return true;
}

} // namespace testing_support
