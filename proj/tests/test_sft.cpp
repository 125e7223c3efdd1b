#include <doctest.h>

#include <cmath>
#include <random>

#include "domsplit/error.hpp"
#include "domsplit/sft.hpp"
#include "oracles.hpp"
#include "test_shifts.hpp"

using namespace domsplit;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("build_shift computes the closing constant") {
    CHECK(ShiftSpace::build(fixtures::kFull2).closing_constant() == 0);
    const auto golden = ShiftSpace::build(fixtures::kGolden);
    CHECK(golden.closing_constant() == 1);
    CHECK(golden.connector(2, 2) == std::vector<Symbol>{1});
    CHECK(golden.connector(2, 1).empty());
    CHECK(ShiftSpace::build(fixtures::kRing4).connector(2, 2) == std::vector<Symbol>{3, 4, 1});
}

TEST_CASE("closing constant matches brute-force connector search") {
    for (const auto& q : fixtures::test_shifts()) {
        const auto s = ShiftSpace::build(q);
        int ell = 0;
        const int m = static_cast<int>(q.size());
        for (int a = 1; a <= m; ++a)
            for (int b = 1; b <= m; ++b) {
                const int len = oracle::connector_length(q, a, b);
                CHECK(static_cast<int>(s.connector(a, b).size()) == len);
                ell = std::max(ell, len);
            }
        CHECK(s.closing_constant() == ell);
    }
}

TEST_CASE("connector is lexicographically smallest among shortest") {
    // 1 -> {2,3} -> 4 -> 1: both 2 and 3 give length-2 connectors from 1 to 1... via 4.
    const TransitionMatrix q{{0, 1, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 1}, {1, 0, 0, 0}};
    const auto s = ShiftSpace::build(q);
    CHECK(s.connector(1, 1) == std::vector<Symbol>{2, 4});
}

TEST_CASE("build_shift rejects bad matrices") {
    CHECK(code_of([] { ShiftSpace::build({{1, 0}, {0, 1}}); }) == ErrorCode::NonTransitive);
    CHECK(code_of([] { ShiftSpace::build({}); }) == ErrorCode::EmptyAlphabet);
    CHECK(code_of([] { ShiftSpace::build({{1, 2}, {1, 1}}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { ShiftSpace::build({{1, 1}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("admissibility") {
    const auto golden = ShiftSpace::build(fixtures::kGolden);
    CHECK_FALSE(is_admissible(Word({2, 2}, 0), golden));
    CHECK(is_admissible(Word({1, 2, 1, 1}, 0), golden));
    CHECK(is_admissible(CyclicWord({2, 1}), golden));
    CHECK_FALSE(is_admissible(CyclicWord({2}), golden));
    CHECK(code_of([&] { is_admissible(Word({1, 3}, 0), golden); }) == ErrorCode::SymbolOutOfRange);
    CHECK(code_of([&] { is_admissible(CyclicWord({0}), golden); }) == ErrorCode::SymbolOutOfRange);
}

TEST_CASE("close_word examples") {
    const auto golden = ShiftSpace::build(fixtures::kGolden);
    CHECK(close_word(Word({1, 2}, 0), golden) == CyclicWord({1, 2}));
    CHECK(close_word(Word({2}, 0), golden) == CyclicWord({2, 1}));
    const auto full = ShiftSpace::build(fixtures::kFull2);
    CHECK(close_word(Word({2, 2, 1, 2}, 1), full) == CyclicWord({2, 2, 1, 2}));
    CHECK(code_of([&] { close_word(Word({2, 2}, 0), golden); }) == ErrorCode::InadmissibleWindow);
}

TEST_CASE("close_word is admissible and short on every admissible word up to length 8") {
    for (const auto& q : fixtures::test_shifts()) {
        const auto s = ShiftSpace::build(q);
        const int m = static_cast<int>(q.size());
        for (int len = 1; len <= 8; ++len) {
            for (const auto& w : oracle::all_sequences(m, len)) {
                if (!oracle::linear_ok(q, w)) continue;
                const auto c = close_word(Word(w, 0), s);
                CHECK(oracle::cyclic_ok(q, c.symbols()));
                CHECK(c.period() <= w.size() + static_cast<std::size_t>(s.closing_constant()));
                CHECK(std::equal(w.begin(), w.end(), c.symbols().begin()));
            }
        }
    }
}

TEST_CASE("enumerate_periodic counts equal trace(Q^n)") {
    const auto golden = ShiftSpace::build(fixtures::kGolden);
    CHECK(enumerate_periodic(golden, 1) == std::vector<CyclicWord>{CyclicWord({1})});
    CHECK(enumerate_periodic(golden, 3).size() == 4);
    CHECK(enumerate_periodic(ShiftSpace::build(fixtures::kFull2), 2).size() == 4);
    for (const auto& q : fixtures::test_shifts()) {
        const auto s = ShiftSpace::build(q);
        for (int n = 1; n <= 12; ++n) {
            const auto words = enumerate_periodic(s, n);
            CHECK(words.size() == oracle::trace_power(q, n));
            CHECK(s.periodic_count(n) == oracle::trace_power(q, n));
            CHECK(std::is_sorted(words.begin(), words.end()));
        }
    }
}

TEST_CASE("enumerate_periodic matches brute force and partitions by leading symbol") {
    const auto q = fixtures::kCycle3;
    const auto s = ShiftSpace::build(q);
    for (int n = 1; n <= 7; ++n) {
        std::vector<CyclicWord> expected;
        for (const auto& w : oracle::all_sequences(3, n))
            if (oracle::cyclic_ok(q, w)) expected.emplace_back(w);
        CHECK(enumerate_periodic(s, n) == expected);
        std::vector<CyclicWord> joined;
        for (Symbol lead = 1; lead <= 3; ++lead) {
            auto part = enumerate_periodic_from(s, n, lead);
            joined.insert(joined.end(), part.begin(), part.end());
        }
        CHECK(joined == expected);
    }
}

TEST_CASE("enumerate_periodic refuses beyond the cap") {
    const auto full = ShiftSpace::build(fixtures::kFull2);
    CHECK(code_of([&] { enumerate_periodic(full, 20, 1000); }) == ErrorCode::PeriodTooLarge);
    CHECK(code_of([&] { enumerate_periodic_upto(full, 10, 1000); }) == ErrorCode::PeriodTooLarge);
    CHECK(code_of([&] { enumerate_periodic(full, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("shift_distance examples") {
    const Word a = Word::centered({1, 2, 1, 1, 2, 1, 2, 2, 1, 1, 2});
    auto d = shift_distance(a, a);
    CHECK(d.truncated);
    CHECK(d.value == doctest::Approx(std::exp(-6.0)));

    Word b = Word::centered({1, 2, 1, 1, 2, 2, 2, 2, 1, 1, 2});
    d = shift_distance(a, b);
    CHECK_FALSE(d.truncated);
    CHECK(d.value == 1.0);

    // Agree on |n| <= 2, differ at n = 3.
    Word c = Word::centered({1, 2, 1, 1, 2, 1, 2, 2, 2, 1, 2});
    d = shift_distance(a, c);
    CHECK(d.agreement == 3);
    CHECK(d.value == doctest::Approx(std::exp(-3.0)));

    CHECK(code_of([&] { shift_distance(Word({1, 1}, -3), a); }) == ErrorCode::DisjointRanges);
}

TEST_CASE("shift_distance is a symmetric ultrametric on overlapping windows") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> sym(1, 2);
    for (int trial = 0; trial < 500; ++trial) {
        auto draw = [&] {
            std::vector<Symbol> s(9);
            for (auto& v : s) v = sym(rng);
            return Word::centered(s);
        };
        const Word x = draw(), y = draw(), z = draw();
        CHECK(shift_distance(x, y).value == shift_distance(y, x).value);
        CHECK(shift_distance(x, z).value <=
              std::max(shift_distance(x, y).value, shift_distance(y, z).value));
    }
}

TEST_CASE("random windows are admissible and reproducible") {
    const auto golden = ShiftSpace::build(fixtures::kGolden);
    std::mt19937_64 r1(5), r2(5);
    for (int i = 0; i < 50; ++i) {
        const Word w = random_window(golden, 12, r1);
        CHECK(w.size() == 25);
        CHECK(w.radius() == 12);
        CHECK(is_admissible(w, golden));
        CHECK(w == random_window(golden, 12, r2));
    }
}

TEST_CASE("symbol parsing and slicing") {
    CHECK(parse_symbols("1, 2,3") == std::vector<Symbol>{1, 2, 3});
    CHECK(code_of([] { parse_symbols("1,,2"); }) == ErrorCode::ConfigParse);
    const Word w = Word::centered({1, 2, 3, 4, 5});
    const Word s = w.slice(-1, 2);
    CHECK(s.at(-1) == 2);
    CHECK(s.at(2) == 5);
    CHECK(CyclicWord({1, 2, 3}).rotated(1) == CyclicWord({2, 3, 1}));
    CHECK(CyclicWord({1, 2, 3}).at(-1) == 3);
}
