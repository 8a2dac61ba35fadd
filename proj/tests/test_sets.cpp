#include <gtest/gtest.h>

#include "support.hpp"

using namespace sidon;
using testing_support::Gen;

namespace {

std::vector<GroupElement> cyc(const AbelianGroup& g, std::vector<std::int64_t> xs) { return cyclic_elements(g, xs); }

// Equivalence-class membership by brute force over all z and shifts.
bool equivalent(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, std::int64_t v) {
    auto target = b;
    std::sort(target.begin(), target.end());
    for (std::int64_t z = 1; z < v; ++z) {
        if (std::gcd(z, v) != 1) continue;
        for (std::int64_t s = 0; s < v; ++s) {
            std::vector<std::int64_t> img;
            for (auto x : a) img.push_back(((z * x + s) % v + v) % v);
            std::sort(img.begin(), img.end());
            if (img == target) return true;
        }
    }
    return false;
}

} // namespace

TEST(DifferenceSet, Verify) {
    auto z4 = AbelianGroup::cyclic(4);
    auto p = verify_difference_set(z4, cyc(z4, {0, 1, 2}));
    ASSERT_TRUE(p);
    EXPECT_EQ(*p, (DifferenceSetParams{4, 3, 2}));

    auto z13 = AbelianGroup::cyclic(13);
    EXPECT_EQ(verify_difference_set(z13, cyc(z13, {0, 1, 3, 9})), (DifferenceSetParams{13, 4, 1}));

    auto z7 = AbelianGroup::cyclic(7);
    EXPECT_FALSE(verify_difference_set(z7, cyc(z7, {0, 1, 2})));

    auto g = AbelianGroup::make({2, 6});
    std::vector<GroupElement> all;
    for (std::int64_t i = 0; i < g.order(); ++i) all.push_back(g.decode(i));
    EXPECT_EQ(verify_difference_set(g, all), (DifferenceSetParams{12, 12, 12}));

    EXPECT_THROW(verify_difference_set(z7, cyc(z7, {0, 1, 8})), Error);  // 8 == 1 in Z_7
}

TEST(BhSet, Verify) {
    auto z7 = AbelianGroup::cyclic(7);
    EXPECT_TRUE(verify_bh(z7, cyc(z7, {0, 1, 3}), 2));
    EXPECT_FALSE(verify_bh(z7, cyc(z7, {0, 1, 2}), 2));
    auto z3 = AbelianGroup::cyclic(3);
    EXPECT_TRUE(verify_bh(z3, cyc(z3, {1, 2}), 2));
    EXPECT_THROW(verify_bh(z3, cyc(z3, {1}), 0), Error);
}

TEST(Singer, Examples) {
    auto d2 = singer(2);
    EXPECT_EQ(residues(d2.elements), (std::vector<std::int64_t>{0, 1, 3}));
    auto d3 = singer(3);
    EXPECT_EQ(residues(d3.elements), (std::vector<std::int64_t>{0, 1, 3, 9}));
    EXPECT_TRUE(equivalent(residues(d3.elements), {0, 1, 3, 9}, 13));
    try {
        singer(6);
        FAIL() << "expected NotPrimePower";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPrimePower);
    }
}

TEST(Singer, ParametersProperty) {
    for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
        auto d = singer(q);
        const std::int64_t v = q * q + q + 1;
        EXPECT_EQ(d.params, (DifferenceSetParams{v, q + 1, 1})) << q;
        EXPECT_TRUE(testing_support::is_planar_oracle(residues(d.elements), v)) << q;
        EXPECT_EQ(d.order(), q);
    }
}

TEST(BoseChowla, Examples) {
    auto b = bose_chowla(2, 2);
    EXPECT_EQ(b.group, AbelianGroup::cyclic(3));
    EXPECT_EQ(residues(b.elements), (std::vector<std::int64_t>{0, 1}));
    auto b3 = bose_chowla(2, 3);
    EXPECT_EQ(b3.group.order(), 7);
    EXPECT_EQ(b3.elements.size(), 2u);
    auto b32 = bose_chowla(3, 2);
    EXPECT_EQ(b32.group.order(), 8);
    EXPECT_EQ(b32.elements.size(), 3u);
    // deterministic choice of field and primitive element
    EXPECT_EQ(residues(bose_chowla(2, 4).elements), (std::vector<std::int64_t>{0, 3}));
    EXPECT_THROW(bose_chowla(6, 2), Error);
}

TEST(BoseChowla, IsBhProperty) {
    for (std::int64_t q : {2, 3, 4, 5})
        for (std::int64_t h = 1; h <= 4; ++h) {
            if (std::pow(double(q), double(h)) > 65536) continue;
            auto b = bose_chowla(q, h);
            EXPECT_EQ(static_cast<std::int64_t>(b.elements.size()), q);
            EXPECT_EQ(b.elements.front(), b.group.zero());
            EXPECT_TRUE(verify_bh(b.group, b.elements, h));
            EXPECT_TRUE(testing_support::bh_oracle(residues(b.elements), h, b.group.order())) << q << "," << h;
            // downward closure
            for (std::int64_t hh = 1; hh <= h; ++hh) EXPECT_TRUE(verify_bh(b.group, b.elements, hh));
        }
}

TEST(BhSet, DownwardClosureOnRandomSetsProperty) {
    Gen gen(404);
    for (int t = 0; t < 300; ++t) {
        const std::int64_t v = gen.uniform(5, 60);
        auto g = AbelianGroup::cyclic(v);
        std::set<std::int64_t> s{0};
        const auto k = gen.uniform(2, 5);
        while (static_cast<std::int64_t>(s.size()) < std::min(k, v)) s.insert(gen.uniform(0, v - 1));
        std::vector<std::int64_t> set(s.begin(), s.end());
        for (std::int64_t h = 1; h <= 4; ++h) {
            const bool bh = verify_bh(g, cyc(g, set), h);
            ASSERT_EQ(bh, testing_support::bh_oracle(set, h, v));
            if (bh) {
                for (std::int64_t hh = 1; hh < h; ++hh) ASSERT_TRUE(verify_bh(g, cyc(g, set), hh));
            }
        }
    }
}

TEST(Normalize, Examples) {
    auto z13 = AbelianGroup::cyclic(13);
    auto d = make_difference_set(z13, cyc(z13, {0, 1, 3, 9}));
    EXPECT_EQ(residues(normalize_equivalence(d).elements), (std::vector<std::int64_t>{0, 1, 3, 9}));
    auto shifted = make_difference_set(z13, cyc(z13, {1, 2, 4, 10}));
    EXPECT_EQ(residues(normalize_equivalence(shifted).elements), (std::vector<std::int64_t>{0, 1, 3, 9}));
    auto z3 = AbelianGroup::cyclic(3);
    EXPECT_EQ(residues(normalize_equivalence(make_difference_set(z3, cyc(z3, {0, 1}))).elements),
              (std::vector<std::int64_t>{0, 1}));
    auto g = AbelianGroup::make({2, 2});
    EXPECT_THROW(normalize_equivalence(make_difference_set(g, {g.zero()})), Error);
}

TEST(Normalize, OrbitInvarianceProperty) {
    Gen gen(8);
    for (std::int64_t q : {2, 3, 4, 5, 7}) {
        auto d = singer(q);
        const std::int64_t v = d.group.order();
        const auto canon = normalize_equivalence(d);
        EXPECT_EQ(residues(normalize_equivalence(canon).elements), residues(canon.elements));
        for (int t = 0; t < 10; ++t) {
            std::int64_t z;
            do z = gen.uniform(1, v - 1);
            while (std::gcd(z, v) != 1);
            const std::int64_t s = gen.uniform(0, v - 1);
            auto img = affine_image(residues(d.elements), z, s, v);
            auto moved = make_difference_set(d.group, cyc(d.group, img));
            EXPECT_EQ(residues(normalize_equivalence(moved).elements), residues(canon.elements));
        }
    }
}

TEST(SearchPlanar, Examples) {
    auto r1 = search_planar(1);
    ASSERT_TRUE(r1.found);
    EXPECT_EQ(residues(r1.found->elements), (std::vector<std::int64_t>{0, 1}));
    auto r2 = search_planar(2);
    ASSERT_TRUE(r2.found);
    EXPECT_EQ(residues(r2.found->elements), (std::vector<std::int64_t>{0, 1, 3}));
    auto r6 = search_planar(6);
    EXPECT_FALSE(r6.found);
    EXPECT_TRUE(r6.exhaustive);
    EXPECT_EQ(r6.status(), SearchStatus::ExhaustiveAbsent);
}

TEST(SearchPlanar, OutputsVerifyProperty) {
    for (std::int64_t n : {1, 2, 3, 4, 5, 7}) {
        auto rep = search_planar(n);
        ASSERT_TRUE(rep.found) << n;
        const std::int64_t v = n * n + n + 1;
        const auto set = residues(rep.found->elements);
        EXPECT_EQ(verify_difference_set(rep.found->group, rep.found->elements), (DifferenceSetParams{v, n + 1, 1}));
        // planar difference sets are exactly B_2 sets of size k in order k(k-1)+1
        EXPECT_TRUE(verify_bh(rep.found->group, rep.found->elements, 2));
        EXPECT_TRUE(testing_support::is_planar_oracle(set, v));
    }
}

TEST(SearchPlanar, BudgetAndThreads) {
    auto capped = search_planar(7, {5, 0, 1});
    EXPECT_EQ(capped.status(), SearchStatus::BudgetExhausted);
    auto one = search_planar(6, {0, 0, 1});
    auto many = search_planar(6, {0, 0, 3});
    EXPECT_EQ(one.status(), many.status());
    auto f1 = search_planar(5, {0, 0, 1}), f3 = search_planar(5, {0, 0, 3});
    ASSERT_TRUE(f1.found && f3.found);
    EXPECT_EQ(f1.found->elements, f3.found->elements);
}

TEST(SearchMinGroup, Examples) {
    auto r = search_min_group(2, 4, 20);
    ASSERT_TRUE(r.found);
    EXPECT_EQ(r.phi, 13);
    EXPECT_EQ(r.found->group.order(), 13);
    EXPECT_TRUE(equivalent(residues(r.found->elements), {0, 1, 3, 9}, 13));
    EXPECT_EQ(search_min_group(2, 3, 10).phi, 7);
    for (std::int64_t k = 1; k <= 6; ++k) EXPECT_EQ(search_min_group(1, k, k).phi, k);
    auto none = search_min_group(2, 4, 12);
    EXPECT_FALSE(none.found);
    EXPECT_TRUE(none.exhaustive);
}

TEST(SearchMinGroup, NoncyclicWitnessesVerify) {
    // phi(2,3) over all abelian groups; any witness must verify in its own group
    for (std::int64_t h = 1; h <= 3; ++h)
        for (std::int64_t k = 2; k <= 4; ++k) {
            auto r = search_min_group(h, k, 60);
            ASSERT_TRUE(r.found) << h << "," << k;
            EXPECT_TRUE(verify_bh(r.found->group, r.found->elements, h));
            // nothing smaller exists, checked group by group
            for (std::int64_t v = k; v < *r.phi; ++v)
                for (const auto& g : abelian_groups_of_order(v)) EXPECT_FALSE(search_bh_in_group(g, h, k).found);
        }
}
