#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <s2v/digits.hpp>
#include <s2v/errors.hpp>
#include <s2v/integer.hpp>
#include <s2v/residue.hpp>
#include <s2v/stirling.hpp>
#include <s2v/stirling5.hpp>

#include "oracles.hpp"

using s2v::Integer;
using s2v::Residue;
using s2v::Valuation;
using s2v::vp;

TEST_CASE("binary digit functions") {
    CHECK(s2v::s2_digits(0) == 0);
    CHECK(s2v::s2_digits(7) == 3);
    for (unsigned t = 0; t < 60; ++t) CHECK(s2v::s2_digits(std::uint64_t(1) << t) == 1);
    CHECK(s2v::u_index(4) == 0);
    CHECK(s2v::u_index(1) == 1);
    CHECK(s2v::u_index(7) == 3);
    CHECK(s2v::u_index(11) == 2);  // 1011
    for (std::uint64_t k = 1; k <= 1000000; ++k) {
        CAPTURE(k);
        CHECK(s2v::digit_step_identity(k));
        CHECK(s2v::s2_digits(k) >= 1);
        CHECK((s2v::u_index(k) == 0) == (k % 2 == 0));
    }
}

TEST_CASE("digit profile") {
    const auto p = s2v::digit_profile(11);  // 1101 LSB-first
    CHECK(p.bits == std::vector<bool>{true, true, false, true});
    CHECK(p.s2 == 3);
    CHECK(p.u == 2);
    const auto q = s2v::digit_profile(7);  // all stored digits one
    CHECK(q.u == q.bits.size());
    CHECK(s2v::digit_profile(0).bits.empty());
}

TEST_CASE("residue construction, reduction, and truncation") {
    CHECK(Residue(Integer(300), 8).value() == 44);
    CHECK(Residue(Integer(-1), 5).value() == 31);  // floor reduction
    CHECK(Residue(Integer(64), 6).zero());
    CHECK(Residue(Integer(96), 5).value() == 0);
    const Residue r(Integer(0b1101000), 7);
    CHECK(r.precision() == 7);
    CHECK(r.v2() == 3);
    CHECK_THROWS_AS(Residue(Integer(0), 4).v2(), s2v::PreconditionViolation);
    CHECK(r.truncate(4) == Residue(Integer(0b1000), 4));
    CHECK(r.truncate(7) == r);
    CHECK_THROWS_AS(r.truncate(8), s2v::PreconditionViolation);  // no invention
    CHECK_THROWS_AS(Residue(Integer(1), 0), s2v::PreconditionViolation);
}

TEST_CASE("word and big modular exponentiation agree on overlap") {
    oracles::SplitMix64 rng(0x70773);
    for (int round = 0; round < 3000; ++round) {
        const unsigned M = 1 + static_cast<unsigned>(rng.below(64));
        const std::uint64_t base = rng.below(2) ? 3 : 5;
        const Integer exp(static_cast<unsigned long>(rng.below(1u << 20)));
        const std::uint64_t word = s2v::detail::pow2mod_word(base, exp, M);
        const Integer big = s2v::detail::pow2mod_big(
            Integer(static_cast<unsigned long>(base)), exp, M);
        CAPTURE(M);
        CAPTURE(base);
        CHECK(Integer(static_cast<unsigned long>(word)) == big);
    }
}

TEST_CASE("numerator residues match the documented congruences") {
    CHECK(s2v::s5_numerator_mod(std::uint64_t(12), 7).value() == 64);
    CHECK(s2v::s5_numerator_mod(std::uint64_t(15), 7).value() == 64);
    CHECK(s2v::s5_numerator_mod(std::uint64_t(28), 8).zero());
}

TEST_CASE("numerator equals 24 S(n,5) for small n, both overloads") {
    s2v::StirlingRowPair rows(5);
    for (std::uint64_t n = 1; n <= 120; ++n) {
        rows.advance_to(n);
        const Integer truth = 24 * rows.at(5);
        for (unsigned M : {1u, 2u, 3u, 7u, 31u, 64u, 80u, 130u}) {
            Integer want;
            mpz_fdiv_r_2exp(want.get_mpz_t(), truth.get_mpz_t(), M);
            CAPTURE(n);
            CAPTURE(M);
            CHECK(s2v::s5_numerator_mod(n, M).value() == want);
            CHECK(s2v::s5_numerator_mod(Integer(static_cast<unsigned long>(n)), M).value() == want);
        }
    }
}

TEST_CASE("numerator is periodic with period 2^(M-2)") {
    CHECK(s2v::numerator_period(7) == 32);
    CHECK(s2v::numerator_period(8) == 64);
    CHECK(s2v::numerator_period(10) == 256);
    CHECK_THROWS_AS(s2v::numerator_period(2), s2v::PreconditionViolation);
    // checked mode sweeps two full periods itself
    CHECK(s2v::numerator_period(7, true) == 32);

    oracles::SplitMix64 rng(0x9e110);
    for (unsigned M = 3; M <= 12; ++M) {
        const Integer period = s2v::numerator_period(M);
        for (int round = 0; round < 50; ++round) {
            const Integer n = Integer(static_cast<unsigned long>(
                                  M + rng.below(1u << 16)));
            CAPTURE(M);
            CHECK(s2v::s5_numerator_mod(n, M) ==
                  s2v::s5_numerator_mod(n + period, M));
        }
    }
}

TEST_CASE("fast-path valuation equals the exact oracle for n <= 2000") {
    s2v::StirlingRowPair rows(5);
    for (std::uint64_t n = 5; n <= 2000; ++n) {
        rows.advance_to(n);
        CAPTURE(n);
        CHECK(s2v::v2_stirling5(n) == vp(rows.at(5), 2));
    }
}

TEST_CASE("fast-path golden values and conventions") {
    CHECK(s2v::v2_stirling5(std::uint64_t(28)) == Valuation(6));
    CHECK(s2v::v2_stirling5(std::uint64_t(31)) == Valuation(7));
    CHECK(s2v::v2_stirling5(std::uint64_t(412)) == Valuation(7));
    CHECK(s2v::v2_stirling5(std::uint64_t(61)) == Valuation(std::uint64_t(0)));
    for (std::uint64_t n = 0; n < 5; ++n)
        CHECK(s2v::v2_stirling5(n) == Valuation::infinity());
    // n = 4(32j+1) rows against the exact oracle
    s2v::StirlingRowPair rows(5);
    for (std::uint64_t j = 0; j <= 100; ++j) {
        const std::uint64_t n = 4 * (32 * j + 1);
        rows.advance_to(n);
        CAPTURE(n);
        CHECK(s2v::v2_stirling5(n) == vp(rows.at(5), 2));
    }
}

TEST_CASE("fast path handles astronomically large n") {
    const Integer big = (Integer(1) << 128) + 28;
    CHECK(s2v::v2_stirling5(big) == Valuation(6));
    const Integer huge = (Integer(1) << 200) + 31;
    CHECK(s2v::v2_stirling5(huge) == Valuation(7));
}

TEST_CASE("precision cap surfaces as an error, never a wrong answer") {
    CHECK_THROWS_AS(s2v::v2_stirling5(std::uint64_t(156), 8),
                    s2v::PrecisionExceeded);
    try {
        s2v::v2_stirling5(std::uint64_t(156), 8);
    } catch (const s2v::PrecisionExceeded& e) {
        CHECK(e.cap() == 8);
        CHECK(std::string(e.what()).find("2^8") != std::string::npos);
    }
    CHECK(s2v::v2_stirling5(std::uint64_t(156), 16) == Valuation(11));
    CHECK_THROWS_AS(s2v::v2_stirling5(std::uint64_t(9), 4),
                    s2v::PreconditionViolation);
}

TEST_CASE("lifted-exponent valuation formula") {
    for (unsigned m = 1; m <= 10; ++m) {
        CHECK(s2v::lte_valuation(2, 1, +1, m, 1) == m + 2);  // base 5
        CHECK(s2v::lte_valuation(2, 1, -1, m, 1) == m + 2);  // base 3
    }
    CHECK(s2v::lte_valuation(3, 3, +1, 2, 5, true) == 5);  // v2(25^20 - 1)
    // modest grid against exact big-integer valuations
    Integer power;
    for (unsigned N = 2; N <= 5; ++N)
        for (std::uint64_t r : {1, 3, 5})
            for (int sign : {+1, -1})
                for (unsigned m = 1; m <= 4; ++m)
                    for (std::uint64_t i : {1, 3, 5}) {
                        const Integer base =
                            (Integer(1) << N) * static_cast<unsigned long>(r) + sign;
                        mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(),
                                   (1ul << m) * i);
                        power -= 1;
                        CAPTURE(N);
                        CAPTURE(m);
                        CHECK(vp(power, 2) ==
                              Valuation(s2v::lte_valuation(N, r, sign, m, i)));
                    }
    CHECK_THROWS_AS(s2v::lte_valuation(1, 1, +1, 1, 1), s2v::PreconditionViolation);
    CHECK_THROWS_AS(s2v::lte_valuation(2, 2, +1, 1, 1), s2v::PreconditionViolation);
    CHECK_THROWS_AS(s2v::lte_valuation(2, 1, +1, 0, 1), s2v::PreconditionViolation);
    CHECK_THROWS_AS(s2v::lte_valuation(2, 1, +1, 1, 2), s2v::PreconditionViolation);
    CHECK_THROWS_AS(s2v::lte_valuation(2, 1, 0, 1, 1), s2v::PreconditionViolation);
}

TEST_CASE("low rows have valuation zero") {
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        CAPTURE(n);
        CHECK(s2v::v2_stirling5(4 * n + 1) == Valuation(std::uint64_t(0)));
        CHECK(s2v::v2_stirling5(4 * n + 2) == Valuation(std::uint64_t(0)));
    }
}
