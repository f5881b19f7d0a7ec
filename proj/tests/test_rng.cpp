#include <doctest.h>

#include <cmath>

#include "asymbell/rng.hpp"

using asymbell::Philox;

// Known-answer vectors for Philox4x32-10 from the reference distribution.
TEST_CASE("philox4x32-10 known answers") {
    {
        const auto out = Philox::block(0, 0, 0);
        CHECK(out[0] == 0x6627e8d5u);
        CHECK(out[1] == 0xe169c58du);
        CHECK(out[2] == 0xbc57ac4cu);
        CHECK(out[3] == 0x9b00dbd8u);
    }
    {
        const auto out = Philox::block(0xffffffffffffffffull, 0xffffffffffffffffull,
                                       0xffffffffffffffffull);
        CHECK(out[0] == 0x408f276du);
        CHECK(out[1] == 0x41c83b0eu);
        CHECK(out[2] == 0xa20bc7c6u);
        CHECK(out[3] == 0x6d5451fdu);
    }
    {
        const auto out = Philox::block(0x299f31d0a4093822ull, 0x0370734413198a2eull,
                                       0x85a308d3243f6a88ull);
        CHECK(out[0] == 0xd16cfe09u);
        CHECK(out[1] == 0x94fdccebu);
        CHECK(out[2] == 0x5001e420u);
        CHECK(out[3] == 0x24126ea1u);
    }
}

TEST_CASE("sequential output matches stateless blocks") {
    Philox rng(42, 7);
    const auto b0 = Philox::block(42, 7, 0);
    const auto b1 = Philox::block(42, 7, 1);
    for (int i = 0; i < 4; ++i) CHECK(rng.next_u32() == b0[static_cast<std::size_t>(i)]);
    for (int i = 0; i < 4; ++i) CHECK(rng.next_u32() == b1[static_cast<std::size_t>(i)]);
}

TEST_CASE("streams are reproducible and distinct") {
    Philox a(123, 5), b(123, 5), c(123, 6);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64(), vb = b.next_u64(), vc = c.next_u64();
        all_equal = all_equal && va == vb;
        any_diff = any_diff || va != vc;
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("uniform doubles land in [0,1) with sane mean") {
    Philox rng(2024);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / 20000 - 0.5) < 0.02);
}

TEST_CASE("gaussians have sane moments") {
    Philox rng(99);
    double sum = 0.0, sq = 0.0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) {
        const double g = rng.next_gaussian();
        sum += g;
        sq += g * g;
    }
    CHECK(std::abs(sum / trials) < 0.05);
    CHECK(std::abs(sq / trials - 1.0) < 0.05);
}

TEST_CASE("next_below stays in range and covers values") {
    Philox rng(5);
    bool seen[7] = {};
    for (int i = 0; i < 1000; ++i) {
        const auto v = rng.next_below(7);
        REQUIRE(v < 7);
        seen[v] = true;
    }
    for (bool s : seen) CHECK(s);
}
