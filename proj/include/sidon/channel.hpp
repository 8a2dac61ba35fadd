#pragma once

// Asymmetric insertion/deletion channel on Z^n (or Z_v^n): an error vector
// with positive part summing to at most r+ (insertions) and negative part to
// at most r- (deletions) is added to the transmitted word.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "sidon/codes.hpp"
#include "sidon/geometry.hpp"

namespace sidon {

/// SplitMix64 used as a counter-based generator: the i-th output is
/// mix(seed + i * 0x9e3779b97f4a7c15), so streams are reproducible from
/// (seed, position) alone.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    /// Uniform in [0, bound), rejection sampling on the top of the range.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

enum class ErrorMode { UniformInShape, Overload };

struct ChannelConfig {
    std::int64_t r_plus = 0;
    std::int64_t r_minus = 0;
    ErrorMode mode = ErrorMode::UniformInShape;
    std::int64_t extra = 0;  // overload only
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
    unsigned threads = 1;
};

struct TrialStats {
    std::int64_t trials = 0;
    std::int64_t corrected = 0;
    std::int64_t detected = 0;
    std::int64_t miscorrected = 0;

    TrialStats& operator+=(const TrialStats& o) {
        trials += o.trials;
        corrected += o.corrected;
        detected += o.detected;
        miscorrected += o.miscorrected;
        return *this;
    }

    bool operator==(const TrialStats&) const = default;
};

/// The error patterns of one channel configuration, drawn uniformly.
/// Uniform mode: all of S_n(r+, r-), zero included. Overload mode:
/// S_n(r+ + extra, r- + extra) minus S_n(r+, r-).
class ErrorSampler {
public:
    ErrorSampler(std::int64_t n, const ChannelConfig& cfg, const Limits& limits = default_limits()) {
        require(cfg.r_plus >= 0 && cfg.r_minus >= 0 && cfg.trials >= 0, ErrorCode::InvalidArgument,
                "channel radii and trial count must be nonnegative");
        const Shape inner(n, cfg.r_plus, cfg.r_minus);
        if (cfg.mode == ErrorMode::UniformInShape) {
            patterns_ = shape_points(inner, limits);
        } else {
            require(cfg.extra >= 1, ErrorCode::InvalidArgument, "overload mode needs extra >= 1");
            for (auto& p : shape_points(Shape(n, cfg.r_plus + cfg.extra, cfg.r_minus + cfg.extra), limits))
                if (!inner.contains(p)) patterns_.push_back(std::move(p));
        }
        require(!patterns_.empty(), ErrorCode::InvalidArgument, "overload error set is empty");
    }

    const std::vector<ZnPoint>& patterns() const { return patterns_; }
    const ZnPoint& draw(SplitMix64& rng) const { return patterns_[rng.below(patterns_.size())]; }

private:
    std::vector<ZnPoint> patterns_;
};

/// y = x + e, reduced mod v when v > 0.
inline std::pair<std::vector<std::int64_t>, ZnPoint> apply_errors(std::span<const std::int64_t> x,
                                                                  const ErrorSampler& sampler, SplitMix64& rng,
                                                                  std::int64_t v = 0) {
    const ZnPoint& e = sampler.draw(rng);
    require(e.size() == x.size(), ErrorCode::DimensionMismatch, "error dimension differs from word length");
    std::vector<std::int64_t> y(x.begin(), x.end());
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += e[i];
        if (v > 0) y[i] = floor_mod(y[i], v);
    }
    return {std::move(y), e};
}

namespace detail {

constexpr std::int64_t kShardTrials = 1024;

inline std::uint64_t shard_seed(std::uint64_t seed, std::int64_t shard) {
    return SplitMix64::mix(seed ^ SplitMix64::mix(static_cast<std::uint64_t>(shard) + 0x632be59bd9b4e019ull));
}

// Trials are cut into fixed-size shards with derived seeds, so the totals do
// not depend on the thread count.
template <typename Trial>
TrialStats run_sharded(const ChannelConfig& cfg, Trial trial) {
    const std::int64_t shards = (cfg.trials + kShardTrials - 1) / kShardTrials;
    std::vector<TrialStats> per_shard(static_cast<std::size_t>(shards));
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (std::int64_t s; (s = next.fetch_add(1)) < shards;) {
            SplitMix64 rng(shard_seed(cfg.seed, s));
            const std::int64_t count = std::min(kShardTrials, cfg.trials - s * kShardTrials);
            TrialStats& st = per_shard[static_cast<std::size_t>(s)];
            for (std::int64_t t = 0; t < count; ++t) {
                ++st.trials;
                switch (trial(rng)) {
                case 0: ++st.corrected; break;
                case 1: ++st.detected; break;
                default: ++st.miscorrected; break;
                }
            }
        }
    };
    const unsigned threads = std::max(1u, cfg.threads);
    if (threads == 1 || shards <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    TrialStats total;
    for (const auto& s : per_shard) total += s;
    return total;
}

inline void check_radii(const SyndromeTable& table, const ChannelConfig& cfg, std::int64_t n) {
    require(table.shape().n == n, ErrorCode::DimensionMismatch, "table dimension differs from code length");
    if (cfg.mode == ErrorMode::UniformInShape)
        require(table.shape().r_plus >= cfg.r_plus && table.shape().r_minus >= cfg.r_minus,
                ErrorCode::InvalidArgument, "channel radii exceed the decoding table's shape");
}

} // namespace detail

/// Random codeword (uniform information symbols), channel, syndrome decode,
/// classification. Deterministic for a fixed seed.
inline TrialStats run_simulation(const FiniteCode& code, const SyndromeTable& table, const ChannelConfig& cfg,
                                 const Limits& limits = default_limits()) {
    detail::check_radii(table, cfg, code.n);
    if (cfg.trials == 0) return {};
    const ErrorSampler sampler(code.n, cfg, limits);
    return detail::run_sharded(cfg, [&](SplitMix64& rng) {
        std::vector<std::int64_t> info(static_cast<std::size_t>(code.n - 1));
        for (auto& s : info) s = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(code.v)));
        const auto x = encode(code, info);
        const auto [y, e] = apply_errors(x, sampler, rng, code.v);
        const Decoded d = decode_radius_r(table, code, y);
        if (d.status == DecodeStatus::Detected) return 1;
        return d.codeword == x ? 0 : 2;
    });
}

/// Lattice variant: codewords are xi * B with xi uniform in [-8, 8]^n.
inline TrialStats run_simulation(const LatticeCode& code, const SyndromeTable& table, const ChannelConfig& cfg,
                                 const Limits& limits = default_limits()) {
    const auto n = static_cast<std::int64_t>(code.n());
    detail::check_radii(table, cfg, n);
    if (cfg.trials == 0) return {};
    const ErrorSampler sampler(n, cfg, limits);
    std::vector<std::vector<std::int64_t>> basis(code.n());
    for (std::size_t i = 0; i < code.n(); ++i)
        for (const auto& b : code.basis().row(i)) basis[i].push_back(to_int64(b));
    return detail::run_sharded(cfg, [&](SplitMix64& rng) {
        std::vector<std::int64_t> x(code.n(), 0);
        for (std::size_t i = 0; i < code.n(); ++i) {
            const auto xi = static_cast<std::int64_t>(rng.below(17)) - 8;
            for (std::size_t j = 0; j < code.n(); ++j) x[j] += xi * basis[i][j];
        }
        const auto [y, e] = apply_errors(x, sampler, rng);
        const Decoded d = decode_radius_r(table, y);
        if (d.status == DecodeStatus::Detected) return 1;
        return d.codeword == x ? 0 : 2;
    });
}

} // namespace sidon
