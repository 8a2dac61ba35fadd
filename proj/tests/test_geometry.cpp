#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace sidon;
using testing_support::Gen;

TEST(AnPoint, RejectsNonzeroSum) {
    EXPECT_THROW(AnPoint({1, 1}), Error);
    EXPECT_NO_THROW(AnPoint({-3, 1, 2}));
    EXPECT_EQ(AnPoint::unit_step(3, 2, 0).coords(), (std::vector<std::int64_t>{-1, 0, 1, 0}));
    EXPECT_THROW(AnPoint::unit_step(3, 1, 1), Error);
}

TEST(Metric, Examples) {
    const AnPoint o({0, 0, 0});
    EXPECT_EQ(metric_d(o, o), 0);
    EXPECT_EQ(metric_d(o, AnPoint({-3, 1, 2})), 3);
    for (std::size_t i = 0; i <= 2; ++i)
        for (std::size_t j = 0; j <= 2; ++j)
            if (i != j) { EXPECT_EQ(metric_d(o, AnPoint::unit_step(2, i, j)), 1); }
    const std::vector<std::int64_t> z{0, 0}, p{-2, 3};
    EXPECT_EQ(metric_da(z, z), 0);
    EXPECT_EQ(metric_da(z, p), 3);
    EXPECT_EQ(drop0(AnPoint({-3, 1, 2})), (ZnPoint{1, 2}));
    EXPECT_EQ(lift0(std::vector<std::int64_t>{1, 2}), AnPoint({-3, 1, 2}));
}

TEST(Metric, IsometryAndAxiomsProperty) {
    Gen gen(31);
    for (std::size_t n = 1; n <= 8; ++n)
        for (int t = 0; t < 1500; ++t) {
            auto x = gen.an_point(n, 6), y = gen.an_point(n, 6), z = gen.an_point(n, 6);
            const std::int64_t dxy = metric_d(x, y);
            ASSERT_EQ(dxy, metric_da(drop0(x), drop0(y)));
            ASSERT_EQ(lift0(drop0(x)), x);
            ASSERT_EQ(dxy, metric_d(y, x));
            ASSERT_EQ(dxy == 0, x == y);
            ASSERT_LE(metric_d(x, z), dxy + metric_d(y, z));
        }
}

TEST(Shape, Sizes) {
    EXPECT_EQ(shape_size(Shape(2, 1, 1)), 7);
    EXPECT_EQ(shape_size(Shape(3, 2, 2)), 55);
    EXPECT_EQ(shape_size(Shape(2, 2, 1)), 12);
    for (std::int64_t n = 0; n <= 6; ++n) EXPECT_EQ(shape_size(Shape(n, 0, 0)), 1);
    for (std::int64_t n = 1; n <= 50; ++n) EXPECT_EQ(shape_size(Shape::ball(n, 1)), n * n + n + 1);
    EXPECT_THROW(Shape(2, -1, 0), Error);
}

TEST(Shape, Points) {
    auto line = shape_points(Shape::ball(1, 3));
    ASSERT_EQ(line.size(), 7u);
    for (std::int64_t i = 0; i < 7; ++i) EXPECT_EQ(line[static_cast<std::size_t>(i)], (ZnPoint{i - 3}));

    auto hex = shape_points(Shape::ball(2, 1));
    std::set<ZnPoint> got(hex.begin(), hex.end());
    std::set<ZnPoint> want{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};
    EXPECT_EQ(got, want);

    Limits tight;
    tight.max_enumeration = 10;
    EXPECT_THROW(shape_points(Shape::ball(3, 1), tight), Error);
}

TEST(Shape, EnumerationMatchesOracleProperty) {
    for (std::int64_t n = 1; n <= 5; ++n)
        for (std::int64_t a = 0; a <= 3; ++a)
            for (std::int64_t b = 0; b <= 3; ++b) {
                const Shape s(n, a, b);
                const auto pts = shape_points(s);
                const std::int64_t oracle = testing_support::shape_count_oracle(n, a, b);
                ASSERT_EQ(shape_size(s), oracle);
                ASSERT_EQ(static_cast<std::int64_t>(pts.size()), oracle);
                ASSERT_TRUE(std::is_sorted(pts.begin(), pts.end()));
                ASSERT_EQ(std::adjacent_find(pts.begin(), pts.end()), pts.end());
                for (const auto& p : pts) ASSERT_TRUE(s.contains(p));
                // swapping r+ and r- negates the point set
                ASSERT_EQ(shape_size(s), shape_size(Shape(n, b, a)));
                std::set<ZnPoint> mirrored;
                for (auto p : shape_points(Shape(n, b, a))) {
                    for (auto& c : p) c = -c;
                    mirrored.insert(p);
                }
                ASSERT_EQ(mirrored, std::set<ZnPoint>(pts.begin(), pts.end()));
            }
}

TEST(Volume, Examples) {
    for (std::int64_t r = 0; r <= 5; ++r) EXPECT_EQ(vol_convex(1, r), 2 * r);
    EXPECT_EQ(vol_convex(2, 1), 3);
    EXPECT_EQ(vol_convex(3, 1), Rational(10, 3));
    EXPECT_EQ(vol_cubical(2, 1), 7);
    EXPECT_EQ(vol_cubical(3, 2), 55);
    EXPECT_EQ(vol_cubical(4, 0), 1);
    EXPECT_EQ(efficiency_ratio(3, 1), Rational(10, 39));
    for (std::int64_t r = 1; r <= 5; ++r) EXPECT_EQ(efficiency_ratio(1, r), Rational(2 * r, 2 * r + 1));
    EXPECT_GT(efficiency_ratio(3, 50), efficiency_ratio(3, 5));
    const Rational at100 = Rational(vol_cubical(3, 100)) / vol_convex(3, 100);
    EXPECT_LT(abs(at100 - 1), Rational(1, 20));
}
