#include <gtest/gtest.h>

#include "sidon/serialize.hpp"
#include "support.hpp"

using namespace sidon;
using sidon::io::json;

TEST(Json, BigIntegers) {
    EXPECT_TRUE(io::big_to_json(BigInt(1) << 53).is_number_integer());
    const BigInt big = (BigInt(1) << 53) + 1;
    const json j = io::big_to_json(big);
    ASSERT_TRUE(j.is_string());
    EXPECT_EQ(io::big_from_json(j), big);
    EXPECT_EQ(io::big_from_json(json(-12)), -12);
    EXPECT_EQ(io::big_from_json(json("-99999999999999999999")), BigInt("-99999999999999999999"));
    EXPECT_THROW(io::big_from_json(json("12x")), Error);
    EXPECT_THROW(io::big_from_json(json(1.5)), Error);
}

TEST(Json, SetRoundTrip) {
    auto d = singer(4);
    json j = io::to_json(d);
    EXPECT_EQ(j["schema"], "sidon-lattice/1");
    EXPECT_EQ(j["params"]["v"], 21);
    auto doc = io::set_from_json(json::parse(j.dump()));
    EXPECT_EQ(doc.group, d.group);
    EXPECT_EQ(doc.elements, d.elements);

    auto g = AbelianGroup::make({2, 6});
    BhSet b{g, 2, {g.zero(), g.element({1, 0}), g.element({0, 1})}};
    auto back = io::set_from_json(io::to_json(b));
    EXPECT_EQ(back.type, "bh-set");
    EXPECT_EQ(back.h, 2);
    EXPECT_EQ(back.elements, b.elements);

    EXPECT_THROW(io::set_from_json(json{{"group", {2, 6}}, {"elements", {1, 2}}}), Error);
    EXPECT_THROW(io::set_from_json(json{{"elements", {1, 2}}}), Error);
}

TEST(Json, CodeRoundTrip) {
    std::vector<LatticeCode> codes{lattice_from_set(singer(3)), perfect_code_A2(2), tiling_lattice_S2(1),
                                   perfect_code_A1(0), kernel_lattice(bose_chowla(2, 4))};
    for (const auto& code : codes) {
        json j = json::parse(io::to_json(code).dump());
        auto back = io::code_from_json(j);
        EXPECT_EQ(back.basis(), code.basis());
        EXPECT_EQ(back.source().kind, code.source().kind);
        EXPECT_EQ(back.source().r, code.source().r);
        auto fc = io::finite_code_from_json(j);
        EXPECT_EQ(fc.has_value(), !j["parity_row"].is_null() && code.det_abs() > 1);
        if (fc) {
            // every basis row is a codeword of the finite code
            for (std::size_t i = 0; i < code.n(); ++i) {
                std::vector<std::int64_t> row;
                for (const auto& x : code.basis().row(i)) row.push_back(to_int64(x));
                EXPECT_EQ(syndrome(*fc, row), 0);
            }
        }
    }
    auto singer13 = io::to_json(lattice_from_set(singer(3)));
    EXPECT_EQ(singer13["parity_row"], json({1, 3, 9}));
    EXPECT_EQ(singer13["v"], 13);
    EXPECT_TRUE(io::to_json(tiling_lattice_S2(1))["parity_row"].is_null());
}

TEST(Json, CodeValidation) {
    json j = io::to_json(perfect_code_A2(1));
    j["v"] = 8;
    EXPECT_THROW(io::code_from_json(j), Error);
    j = io::to_json(perfect_code_A2(1));
    j["basis"] = json::array({json::array({1, 2})});
    EXPECT_THROW(io::code_from_json(j), Error);
    j = io::to_json(perfect_code_A2(1));
    j["basis"] = json::array({json::array({1, 2}), json::array({2, 4})});
    j.erase("v");
    EXPECT_THROW(io::code_from_json(j), Error);
    j = io::to_json(lattice_from_set(singer(3)));
    j["parity_row"] = json::array({1, 3, 8});
    EXPECT_THROW(io::finite_code_from_json(j), Error);
}

TEST(Json, Reports) {
    auto rep = io::to_json(search_planar(6));
    EXPECT_EQ(rep["status"], "exhaustive-absent");
    EXPECT_TRUE(rep["found"].is_null());
    auto b = io::to_json(bound_f_h(2, 8));
    EXPECT_EQ(b["direction"], "upper");
    EXPECT_TRUE(b["exact"].is_null());
    ChannelConfig cfg{1, 1, ErrorMode::Overload, 2, 5, 10, 1};
    auto s = io::to_json(TrialStats{10, 4, 3, 3}, cfg);
    EXPECT_EQ(s["config"]["mode"], "overload");
    EXPECT_EQ(s["config"]["extra"], 2);
    EXPECT_EQ(s["miscorrected"], 3);
}
