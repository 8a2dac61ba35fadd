#pragma once

// Exhaustive backtracking for planar difference sets and B_h sets.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sidon/group.hpp"
#include "sidon/sets.hpp"

namespace sidon {

struct SearchOptions {
    std::uint64_t max_nodes = 0;  // 0 = unlimited
    double timeout_s = 0;         // 0 = unlimited
    unsigned threads = 1;
};

enum class SearchStatus { Found, ExhaustiveAbsent, BudgetExhausted };

struct SearchReport {
    std::string kind;
    std::map<std::string, std::int64_t> parameters;
    std::optional<Witness> found;
    std::uint64_t nodes_explored = 0;
    // true: the verdict covers the whole normalized search space
    bool exhaustive = false;
    std::optional<std::int64_t> phi;  // min-group searches only

    SearchStatus status() const {
        if (found) return SearchStatus::Found;
        return exhaustive ? SearchStatus::ExhaustiveAbsent : SearchStatus::BudgetExhausted;
    }
};

namespace detail {

class Budget {
public:
    explicit Budget(const SearchOptions& opt)
        : max_nodes_(opt.max_nodes),
          deadline_(opt.timeout_s > 0 ? std::chrono::steady_clock::now() +
                                            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                std::chrono::duration<double>(opt.timeout_s))
                                      : std::chrono::steady_clock::time_point::max()) {}

    // Returns false once the budget is spent.
    bool tick() {
        auto n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (max_nodes_ != 0 && n > max_nodes_) {
            exhausted_.store(true, std::memory_order_relaxed);
            return false;
        }
        if ((n & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline_) {
            exhausted_.store(true, std::memory_order_relaxed);
            return false;
        }
        return !exhausted_.load(std::memory_order_relaxed);
    }

    std::uint64_t nodes() const { return std::min<std::uint64_t>(nodes_.load(), max_nodes_ ? max_nodes_ : ~0ull); }
    bool exhausted() const { return exhausted_.load(); }

private:
    std::uint64_t max_nodes_;
    std::chrono::steady_clock::time_point deadline_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> exhausted_{false};
};

// Depth-first search for a planar set in Z_v extending a prefix, candidates
// strictly increasing, each new element rejected as soon as one of its
// differences repeats.
class PlanarSearcher {
public:
    PlanarSearcher(std::int64_t v, std::int64_t k, Budget& budget, const std::atomic<std::int64_t>* stop_above,
                   std::int64_t branch)
        : v_(v), k_(k), used_(static_cast<std::size_t>(v), 0), budget_(budget), stop_above_(stop_above),
          branch_(branch) {}

    bool try_add(std::int64_t c) {
        std::size_t marked = 0;
        bool ok = true;
        for (auto d : set_) {
            for (std::int64_t diff : {floor_mod(c - d, v_), floor_mod(d - c, v_)}) {
                if (used_[static_cast<std::size_t>(diff)]) {
                    ok = false;
                    break;
                }
                used_[static_cast<std::size_t>(diff)] = 1;
                trail_.push_back(diff);
                ++marked;
            }
            if (!ok) break;
        }
        if (!ok) {
            for (std::size_t i = 0; i < marked; ++i) {
                used_[static_cast<std::size_t>(trail_.back())] = 0;
                trail_.pop_back();
            }
            return false;
        }
        set_.push_back(c);
        marks_.push_back(marked);
        return true;
    }

    void pop() {
        for (std::size_t i = 0; i < marks_.back(); ++i) {
            used_[static_cast<std::size_t>(trail_.back())] = 0;
            trail_.pop_back();
        }
        marks_.pop_back();
        set_.pop_back();
    }

    // true: found (set_ holds it); false: subtree exhausted or aborted
    bool run() {
        if (static_cast<std::int64_t>(set_.size()) == k_) return true;
        const std::int64_t remaining = k_ - static_cast<std::int64_t>(set_.size());
        for (std::int64_t c = set_.back() + 1; c <= v_ - remaining; ++c) {
            if (!budget_.tick()) {
                aborted_ = true;
                return false;
            }
            if (stop_above_ && stop_above_->load(std::memory_order_relaxed) < branch_) {
                aborted_ = true;
                return false;
            }
            if (!try_add(c)) continue;
            if (run()) return true;
            if (aborted_) return false;
            pop();
        }
        return false;
    }

    const std::vector<std::int64_t>& set() const { return set_; }
    bool aborted() const { return aborted_; }

private:
    std::int64_t v_, k_;
    std::vector<char> used_;
    std::vector<std::int64_t> set_;
    std::vector<std::int64_t> trail_;
    std::vector<std::size_t> marks_;
    Budget& budget_;
    const std::atomic<std::int64_t>* stop_above_;
    std::int64_t branch_;
    bool aborted_ = false;
};

} // namespace detail

/// Planar difference sets of order n in Z_{n^2+n+1}, normalized to contain
/// {0, 1}. Branches on the third element are distributed over the worker
/// threads; the reported set is the lexicographically first one.
inline SearchReport search_planar(std::int64_t n, const SearchOptions& opt = {}) {
    require(n >= 1, ErrorCode::InvalidArgument, "order n must be at least 1");
    const std::int64_t v = n * n + n + 1;
    const std::int64_t k = n + 1;
    SearchReport report;
    report.kind = "planar";
    report.parameters = {{"n", n}, {"v", v}, {"k", k}};
    detail::Budget budget(opt);
    AbelianGroup g = AbelianGroup::cyclic(v);

    if (k == 2) {
        budget.tick();
        report.found = Witness{g, cyclic_elements(g, {0, 1})};
        report.exhaustive = true;
        report.nodes_explored = budget.nodes();
        return report;
    }

    const std::int64_t branches = v - (k - 2) - 2 + 1;  // third element in [2, v - (k - 2)]
    std::atomic<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
    std::atomic<std::int64_t> next{0};
    std::vector<std::vector<std::int64_t>> results(static_cast<std::size_t>(std::max<std::int64_t>(branches, 0)));
    std::atomic<bool> any_aborted{false};

    auto worker = [&] {
        while (true) {
            std::int64_t b = next.fetch_add(1);
            if (b >= branches) return;
            if (b > best.load()) continue;
            detail::PlanarSearcher s(v, k, budget, &best, b);
            s.try_add(0);
            s.try_add(1);
            if (!budget.tick()) {
                any_aborted = true;
                return;
            }
            if (!s.try_add(2 + b)) continue;
            if (s.run()) {
                results[static_cast<std::size_t>(b)] = s.set();
                std::int64_t cur = best.load();
                while (b < cur && !best.compare_exchange_weak(cur, b)) {
                }
            } else if (s.aborted() && budget.exhausted()) {
                any_aborted = true;
            }
        }
    };
    const unsigned threads = std::max(1u, opt.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    report.nodes_explored = budget.nodes();
    const std::int64_t b = best.load();
    if (b != std::numeric_limits<std::int64_t>::max()) {
        report.found = Witness{g, cyclic_elements(g, results[static_cast<std::size_t>(b)])};
        report.exhaustive = true;
    } else {
        report.exhaustive = !any_aborted && !budget.exhausted();
    }
    return report;
}

namespace detail {

// Incremental B_h search inside one group, b_0 = 0 fixed, later elements in
// increasing index order. levels_[u] holds the sums of u elements (with
// repetition, zero included) of the current set; only the h-level must stay
// collision-free.
class BhSearcher {
public:
    BhSearcher(const GroupTable& table, std::int64_t h, std::int64_t k, Budget& budget)
        : t_(table), h_(h), k_(k), used_(static_cast<std::size_t>(table.order()), 0), budget_(budget) {
        std::vector<std::vector<std::int32_t>> levels(static_cast<std::size_t>(h + 1), std::vector<std::int32_t>{0});
        stack_.push_back(std::move(levels));
        used_[0] = 1;
        set_.push_back(0);
    }

    bool run() {
        if (static_cast<std::int64_t>(set_.size()) == k_) return true;
        const std::int64_t remaining = k_ - static_cast<std::int64_t>(set_.size());
        for (std::int64_t c = set_.back() + 1; c <= t_.order() - remaining; ++c) {
            if (!budget_.tick()) {
                aborted_ = true;
                return false;
            }
            if (!try_add(static_cast<std::int32_t>(c))) continue;
            if (run()) return true;
            if (aborted_) return false;
            pop();
        }
        return false;
    }

    const std::vector<std::int32_t>& set() const { return set_; }
    bool aborted() const { return aborted_; }

private:
    bool try_add(std::int32_t c) {
        const auto& levels = stack_.back();
        std::vector<std::int32_t> multiples(static_cast<std::size_t>(h_ + 1), 0);
        for (std::int64_t t = 1; t <= h_; ++t) multiples[static_cast<std::size_t>(t)] = t_.add(multiples[static_cast<std::size_t>(t - 1)], c);

        std::vector<std::int32_t> fresh;
        bool ok = true;
        for (std::int64_t t = 1; t <= h_ && ok; ++t)
            for (auto s : levels[static_cast<std::size_t>(h_ - t)]) {
                std::int32_t x = t_.add(multiples[static_cast<std::size_t>(t)], s);
                if (used_[static_cast<std::size_t>(x)]) {
                    ok = false;
                    break;
                }
                used_[static_cast<std::size_t>(x)] = 1;
                fresh.push_back(x);
            }
        if (!ok) {
            for (auto x : fresh) used_[static_cast<std::size_t>(x)] = 0;
            return false;
        }

        std::vector<std::vector<std::int32_t>> next(levels.size());
        for (std::int64_t u = 0; u <= h_; ++u)
            for (std::int64_t t = 0; t <= u; ++t)
                for (auto s : levels[static_cast<std::size_t>(u - t)])
                    next[static_cast<std::size_t>(u)].push_back(t_.add(multiples[static_cast<std::size_t>(t)], s));
        stack_.push_back(std::move(next));
        fresh_.push_back(std::move(fresh));
        set_.push_back(c);
        return true;
    }

    void pop() {
        for (auto x : fresh_.back()) used_[static_cast<std::size_t>(x)] = 0;
        fresh_.pop_back();
        stack_.pop_back();
        set_.pop_back();
    }

    const GroupTable& t_;
    std::int64_t h_, k_;
    std::vector<char> used_;
    std::vector<std::vector<std::vector<std::int32_t>>> stack_;
    std::vector<std::vector<std::int32_t>> fresh_;
    std::vector<std::int32_t> set_;
    Budget& budget_;
    bool aborted_ = false;
};

inline std::optional<Witness> run_bh_search(const AbelianGroup& g, std::int64_t h, std::int64_t k, Budget& budget,
                                            bool& aborted) {
    aborted = false;
    if (k <= 0) return Witness{g, {}};
    if (k > g.order()) return std::nullopt;
    GroupTable table(g);
    BhSearcher s(table, h, k, budget);
    if (s.run()) {
        Witness w{g, {}};
        for (auto x : s.set()) w.elements.push_back(g.decode(x));
        return w;
    }
    aborted = s.aborted();
    return std::nullopt;
}

} // namespace detail

/// Exhaustive B_h search of size k inside one group, with b_0 = 0.
inline SearchReport search_bh_in_group(const AbelianGroup& g, std::int64_t h, std::int64_t k,
                                       const SearchOptions& opt = {}) {
    require(h >= 1 && k >= 1, ErrorCode::InvalidArgument, "need h >= 1 and k >= 1");
    SearchReport report;
    report.kind = "bh-in-group";
    report.parameters = {{"h", h}, {"k", k}, {"v", g.order()}};
    detail::Budget budget(opt);
    bool aborted = false;
    report.found = detail::run_bh_search(g, h, k, budget, aborted);
    report.nodes_explored = budget.nodes();
    report.exhaustive = report.found.has_value() || !aborted;
    return report;
}

/// Smallest order v in [k, v_max] of an abelian group (any invariant-factor
/// decomposition) holding a B_h set of size k.
inline SearchReport search_min_group(std::int64_t h, std::int64_t k, std::int64_t v_max,
                                     const SearchOptions& opt = {}) {
    require(h >= 1 && k >= 1, ErrorCode::InvalidArgument, "need h >= 1 and k >= 1");
    SearchReport report;
    report.kind = "min-group";
    report.parameters = {{"h", h}, {"k", k}, {"v_max", v_max}};
    detail::Budget budget(opt);
    report.exhaustive = true;
    for (std::int64_t v = k; v <= v_max; ++v) {
        for (const auto& g : abelian_groups_of_order(v)) {
            bool aborted = false;
            auto w = detail::run_bh_search(g, h, k, budget, aborted);
            if (w) {
                report.found = std::move(w);
                report.phi = v;
                report.nodes_explored = budget.nodes();
                return report;
            }
            if (aborted) {
                report.exhaustive = false;
                report.nodes_explored = budget.nodes();
                return report;
            }
        }
    }
    report.nodes_explored = budget.nodes();
    return report;
}

} // namespace sidon
