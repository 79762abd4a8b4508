// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"
#include "rns/error.hpp"
#include "rns/moduli.hpp"

#include <doctest.h>

#include <algorithm>
#include <optional>
#include <vector>

using rns::Nat;

namespace
{

std::vector<Nat> gen(unsigned bits, unsigned count)
{
    const auto g = rns::find_moduli({bits, count});
    return {g.set.moduli().begin(), g.set.moduli().end()};
}

std::vector<Nat> nats(std::initializer_list<unsigned long> xs)
{
    return {xs.begin(), xs.end()};
}

std::vector<Nat> moduli_of(const rns::ModuliSet& s)
{
    return {s.moduli().begin(), s.moduli().end()};
}

}  // namespace

TEST_CASE("find_moduli worked examples")
{
    CHECK(gen(32, 3) == nats({1626, 1627, 1625}));
    CHECK(gen(32, 4) == nats({256, 257, 255, 259}));
    CHECK(gen(32, 6) == nats({42, 43, 41, 47, 37, 53}));
    CHECK(gen(16, 6) == nats({8, 9, 7, 11, 5, 13}));
    CHECK(gen(12, 6) == nats({4, 5, 3, 7, 11, 13}));
    CHECK(gen(6, 3) == nats({6, 7, 5}));
    // 256*257*255 = 16776960 < 2^24 - 1, so the centre must move up once.
    CHECK(gen(24, 3) == nats({258, 259, 257}));
    CHECK(gen(32, 5) == nats({86, 87, 85, 83, 89}));
}

TEST_CASE("find_moduli trace intermediates")
{
    SUBCASE("N=32 n=5")
    {
        const auto g = rns::find_moduli({32, 5});
        CHECK(g.trace.x == 85);
        CHECK(g.trace.center == 86);
        REQUIRE(g.trace.extras.size() == 2);
        CHECK(g.trace.extras[0].k == 6754);
        CHECK(g.trace.extras[0].k_root == 83);
        CHECK(g.trace.extras[0].chosen == 83);
        CHECK(g.trace.extras[1].k == 82);
        CHECK(g.trace.extras[1].k_root == 82);
        CHECK(g.trace.extras[1].chosen == 89);
    }
    SUBCASE("N=32 n=6")
    {
        const auto g = rns::find_moduli({32, 6});
        CHECK(g.trace.x == 41);
        CHECK(g.trace.center == 42);
        REQUIRE(g.trace.extras.size() == 3);
        CHECK(g.trace.extras[0].k == 58005);
        CHECK(g.trace.extras[0].k_root == 39);
        CHECK(g.trace.extras[0].chosen == 47);
        CHECK(g.trace.extras[1].k == 1235);
        CHECK(g.trace.extras[1].k_root == 36);
        CHECK(g.trace.extras[1].chosen == 37);
        CHECK(g.trace.extras[2].k == 34);
        CHECK(g.trace.extras[2].k_root == 34);
        CHECK(g.trace.extras[2].chosen == 53);
    }
    SUBCASE("N=32 n=4")
    {
        const auto g = rns::find_moduli({32, 4});
        CHECK(g.trace.x == 256);
        REQUIRE(g.trace.extras.size() == 1);
        CHECK(g.trace.extras[0].k == 257);
        CHECK(g.trace.extras[0].k_root == 257);
        CHECK(g.trace.extras[0].chosen == 259);
    }
    SUBCASE("k = 1 is floored at 2")
    {
        const auto g = rns::find_moduli({12, 6});
        REQUIRE(g.trace.extras.size() == 3);
        CHECK(g.trace.extras[2].k == 1);
        CHECK(g.trace.extras[2].chosen == 13);
    }
    SUBCASE("increment loop moves the centre by two")
    {
        const auto g = rns::find_moduli({6, 3});
        CHECK(g.trace.x == 4);
        CHECK(g.trace.center == 6);
        CHECK(g.trace.extras.empty());
    }
}

TEST_CASE("find_moduli rejects bad requests with distinct failures")
{
    auto kind_of = [](rns::GenerationRequest r) {
        try
        {
            rns::find_moduli(r);
        }
        catch (const rns::GenerationError& e)
        {
            return e.kind();
        }
        FAIL("expected GenerationError");
        return rns::GenerationFailure::BitsTooSmall;
    };
    CHECK(kind_of({32, 2}) == rns::GenerationFailure::CardinalityTooSmall);
    CHECK(kind_of({1, 3}) == rns::GenerationFailure::BitsTooSmall);
    CHECK(kind_of({4, 7}) == rns::GenerationFailure::ModulusTooSmall);
    CHECK_THROWS_AS(rns::find_moduli({4, 7}), rns::ValidationError);
}

TEST_CASE("generated sets are valid, sized, centred and deterministic")
{
    for (unsigned bits = 4; bits <= 64; ++bits)
        for (unsigned count = 3; count <= 6; ++count)
        {
            CAPTURE(bits);
            CAPTURE(count);
            std::optional<rns::Generated> generated;
            try
            {
                generated = rns::find_moduli({bits, count});
            }
            catch (const rns::GenerationError& e)
            {
                CHECK(e.kind() == rns::GenerationFailure::ModulusTooSmall);
                continue;
            }
            const rns::Generated& g = *generated;
            CHECK(rns::validate(g.set, bits).ok());
            CHECK(g.set.size() == count);
            CHECK(g.trace.center % 2 == 0);
            CHECK(g.trace.center >= g.trace.x);
            CHECK(g.set[0] == g.trace.center);
            CHECK(g.set[1] == g.trace.center + 1);
            CHECK(g.set[2] == g.trace.center - 1);
            CHECK(rns::gcd(g.trace.center - 1, g.trace.center + 1) == 1);
            CHECK(g.trace.extras.size() == count - 3);
            for (const auto& e : g.trace.extras)
                CHECK(e.chosen >= std::max(e.k_root, Nat{2}));

            const auto again = rns::find_moduli({bits, count});
            CHECK(again.set == g.set);
            CHECK(again.trace.x == g.trace.x);
            CHECK(again.trace.center == g.trace.center);
        }
}

TEST_CASE("each appended modulus is the smallest admissible one")
{
    for (unsigned bits = 4; bits <= 40; ++bits)
        for (unsigned count = 4; count <= 6; ++count)
        {
            std::optional<rns::Generated> generated;
            try
            {
                generated = rns::find_moduli({bits, count});
            }
            catch (const rns::GenerationError&)
            {
                continue;
            }
            const rns::Generated& g = *generated;
            std::vector<oracle::u64> so_far;
            for (std::size_t i = 0; i < 3; ++i)
                so_far.push_back(g.set[i].convert_to<oracle::u64>());
            for (const auto& e : g.trace.extras)
            {
                const auto floor = std::max<oracle::u64>(e.k_root.convert_to<oracle::u64>(), 2);
                const auto chosen = e.chosen.convert_to<oracle::u64>();
                for (oracle::u64 c = floor; c < chosen; ++c)
                    CHECK_FALSE(oracle::coprime_to_all_by_scan(c, so_far));
                CHECK(oracle::coprime_to_all_by_scan(chosen, so_far));
                so_far.push_back(chosen);
            }
        }
}

TEST_CASE("baseline families")
{
    CHECK(moduli_of(rns::baseline(rns::Family::SM1, 24)) == nats({512, 513, 511}));
    CHECK(moduli_of(rns::baseline(rns::Family::SM2, 16)) == nats({64, 63, 31}));
    CHECK(moduli_of(rns::baseline(rns::Family::SM3, 16)) == nats({257, 17, 15}));
    CHECK(moduli_of(rns::baseline(rns::Family::SM2, 32)) == nats({4096, 4095, 2047}));
    CHECK(moduli_of(rns::baseline(rns::Family::SM2, 6)) == nats({8, 7, 3}));
    CHECK(moduli_of(rns::baseline(rns::Family::SM3, 6)) == nats({17, 5, 3}));
    CHECK(moduli_of(rns::baseline(rns::Family::SM1, 2)) == nats({4, 5, 3}));
    CHECK_THROWS_AS(rns::baseline(rns::Family::SM1, 1), rns::ValidationError);
    CHECK_THROWS_AS(rns::baseline(rns::Family::Proposed, 8), rns::ValidationError);

    // n = 11 falls short for SM2 at 32 bits; n = 12 is the first member that covers it.
    CHECK(Nat{2048} * 2047 * 1023 < rns::all_ones(32));
}

TEST_CASE("baseline picks the smallest covering member")
{
    for (const auto fam : {rns::Family::SM1, rns::Family::SM2, rns::Family::SM3})
        for (unsigned bits = 2; bits <= 64; ++bits)
        {
            const auto set = rns::baseline(fam, bits);
            CHECK(rns::validate(set, bits).ok());
            // Rebuild the previous family member and check it is unusable.
            const Nat p = (fam == rns::Family::SM3 ? set[1] - 1 : set[0]) / 2;
            std::vector<Nat> prev;
            if (fam == rns::Family::SM1)
                prev = {p, p + 1, p - 1};
            else if (fam == rns::Family::SM2)
                prev = {p, p - 1, p / 2 - 1};
            else
                prev = {p * p + 1, p + 1, p - 1};
            CHECK_FALSE(rns::validate(prev, bits).ok());
        }
}

TEST_CASE("bit_cost")
{
    CHECK(rns::bit_cost(rns::ModuliSet{nats({42, 43, 41})}) == 18);
    CHECK(rns::bit_cost(rns::ModuliSet{nats({2048, 2049, 2047})}) == 35);
    CHECK(rns::bit_cost(rns::ModuliSet{nats({2})}) == 2);
    CHECK(rns::bit_cost(rns::ModuliSet{nats({512, 513, 511})}) == 29);
}

TEST_CASE("proposed triple never costs more than SM1")
{
    for (unsigned bits = 4; bits <= 64; ++bits)
    {
        CAPTURE(bits);
        CHECK(rns::bit_cost(rns::find_moduli({bits, 3}).set) <= rns::bit_cost(rns::baseline(rns::Family::SM1, bits)));
    }
}

TEST_CASE("validate reports each check separately")
{
    const auto short_range = rns::validate(nats({256, 257, 255}), 24);
    CHECK(short_range.moduli_ok());
    CHECK(short_range.coprime_ok());
    CHECK_FALSE(short_range.range_ok());
    CHECK(short_range.shortfall == 255);

    CHECK(rns::validate(nats({8, 9, 7}), 6).ok());
    CHECK(rns::validate(nats({8, 9, 7}), 6).describe().empty());

    const auto shared = rns::validate(nats({6, 9, 5}), 4);
    CHECK(shared.range_ok());
    REQUIRE(shared.not_coprime.size() == 1);
    CHECK(shared.not_coprime[0].a == 6);
    CHECK(shared.not_coprime[0].b == 9);
    CHECK(shared.not_coprime[0].gcd == 3);
    CHECK(shared.describe() == "moduli 6 and 9 are not coprime (gcd 3)");

    const auto tiny = rns::validate(nats({1, 5}), 2);
    CHECK_FALSE(tiny.moduli_ok());
}

TEST_CASE("ModuliSet construction")
{
    CHECK_THROWS_AS(rns::ModuliSet(nats({6, 9, 5})), rns::ValidationError);
    CHECK_THROWS_AS(rns::ModuliSet(nats({1, 5})), rns::ValidationError);
    CHECK_THROWS_AS(rns::ModuliSet(std::vector<Nat>{}), rns::ValidationError);
    const rns::ModuliSet s{nats({9, 8, 7})};
    CHECK(s.dynamic_range() == 504);
    CHECK(s.sorted() == nats({7, 8, 9}));
    CHECK(s.to_string() == "9,8,7");
}

TEST_CASE("scheme names")
{
    for (const auto& s : {rns::SchemeId::proposed(3), rns::SchemeId::proposed(6), rns::SchemeId::sm1(),
                          rns::SchemeId::sm2(), rns::SchemeId::sm3()})
        CHECK(rns::SchemeId::parse(s.name()) == s);
    CHECK_FALSE(rns::SchemeId::parse("proposed2"));
    CHECK_FALSE(rns::SchemeId::parse("proposed"));
    CHECK_FALSE(rns::SchemeId::parse("proposed3x"));
    CHECK_FALSE(rns::SchemeId::parse("sm4"));
}
