#include <doctest.h>

#include "nmcode/amd.hpp"

using namespace nmcode;

TEST_CASE("encode matches hand computation in GF(4)") {
    AmdCode c = make_amd(2, 2); // one block, tag = m*r + r^3
    // m = 01 (block value 1), r = alpha: tag = alpha + alpha^3 = alpha + 1
    uint64_t cw = amd_encode(c, 1, 2);
    CHECK((cw & 3) == 1);           // message bits
    CHECK(((cw >> 2) & 3) == 2);    // r = alpha
    CHECK(((cw >> 4) & 3) == 3);    // tag = alpha + 1
    // all-zero case
    CHECK(amd_encode(c, 0, 0) == 0);
}

TEST_CASE("correctness: decode composes to identity") {
    for (auto [k, u] : {std::pair<uint32_t, uint32_t>{1, 1},
                        {2, 2},
                        {1, 2},
                        {3, 3},
                        {4, 2},
                        {6, 3},
                        {0, 2}}) {
        AmdCode c = make_amd(k, u);
        for (uint64_t m = 0; m < (1ull << k); ++m)
            for (uint32_t r = 0; r < c.tag_field.q(); ++r) {
                auto dec = amd_decode(c, amd_encode(c, m, r));
                REQUIRE(dec);
                CHECK(*dec == m);
            }
    }
}

TEST_CASE("tag flip is caught") {
    AmdCode c = make_amd(3, 3);
    uint64_t cw = amd_encode(c, 5, 4);
    CHECK(!amd_decode(c, cw ^ (1ull << (c.k + c.u)))); // flip one tag bit
}

TEST_CASE("failure bound values") {
    // (k/u + 1)/2^u at the classical parameter points
    CHECK(amd_failure_bound(make_amd(3, 3)) == Rational(1, 4));  // (1+1)/8
    CHECK(amd_failure_bound(make_amd(2, 2)) == Rational(1, 2));  // (1+1)/4
    CHECK(amd_failure_bound(make_amd(4, 4)) == Rational(1, 8));  // (1+1)/16
    // d = 2 is even, so the exponent pads to 5 and the bound is (d+2)/2^u
    CHECK(amd_failure_bound(make_amd(6, 3)) == Rational(1, 2));
    // k = u: d = 1, bound 2/2^u
    CHECK(amd_failure_bound(make_amd(5, 5)) == Rational(2, 32));
    // the one-bit instance k=1, u=2 also has d = 1, so the attainable bound
    // is (d+1)/2^u = 1/2 (the formula with fractional k/u would give 3/8,
    // which no 4-encodings-per-message scheme can meet)
    CHECK(amd_failure_bound(make_amd(1, 2)) == Rational(1, 2));
    // degenerate zero-message code: tag r^3, bound 2/q
    CHECK(amd_failure_bound(make_amd(0, 2)) == Rational(1, 2));
    CHECK(amd_failure_bound(make_amd(0, 4)) == Rational(2, 16));
}

TEST_CASE("exhaustive oracle stays within the bound") {
    // vacuous case: k = u = 1 has bound 1
    AmdCode c11 = make_amd(1, 1);
    AmdOracleReport r11 = amd_exhaustive_oracle(c11);
    CHECK(r11.max_not_bot <= Rational::one());
    CHECK(r11.max_not_bot <= amd_failure_bound(c11));

    // the flagship (3,3) instance achieves its bound exactly
    AmdCode c33 = make_amd(3, 3);
    AmdOracleReport r33 = amd_exhaustive_oracle(c33);
    CHECK(r33.max_not_bot == Rational(1, 4));
    CHECK(r33.max_wrong_message <= r33.max_not_bot);

    // message-only offsets are detected with probability >= 1 - bound
    CHECK(r33.max_message_only <= amd_failure_bound(c33));

    // (1,2): measured exactly 1/2, witnessing that 3/8 is not attainable
    AmdCode c12 = make_amd(1, 2);
    AmdOracleReport r12 = amd_exhaustive_oracle(c12);
    CHECK(r12.max_not_bot == Rational(1, 2));
    CHECK(r12.max_not_bot <= amd_failure_bound(c12));

    // every constructible code within the sweep limit respects its bound
    for (auto [k, u] : {std::pair<uint32_t, uint32_t>{2, 2}, {4, 2}, {2, 4}, {0, 4}, {6, 3}}) {
        AmdCode c = make_amd(k, u);
        AmdOracleReport rep = amd_exhaustive_oracle(c);
        CHECK(rep.max_not_bot <= amd_failure_bound(c));
        CHECK(rep.max_wrong_message <= rep.max_not_bot);
    }

    CHECK_THROWS(amd_exhaustive_oracle(make_amd(10, 8)));
}

TEST_CASE("oracle csv") {
    AmdCode c = make_amd(1, 1);
    std::string csv = amd_oracle_csv(c);
    CHECK(csv.rfind("delta,failure_rate\n", 0) == 0);
    // one row per nonzero offset
    size_t rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == (1u << c.codeword_bits()));
}

TEST_CASE("q-ary amd") {
    FieldSpec f16 = gf(4);
    AmdCodeQ c = make_amd_q(f16, 1);
    CHECK(c.exponent == 3);
    CHECK(c.delta == Rational(2, 16));
    for (uint32_t m = 0; m < 16; ++m)
        for (uint32_t r = 0; r < 16; ++r) {
            auto dec = amd_decode_q(c, amd_encode_q(c, {m}, r));
            REQUIRE(dec);
            CHECK((*dec)[0] == m);
        }
    // exhaustive sweep over offsets for the q-ary code
    Rational worst;
    for (uint32_t d0 = 0; d0 < 16; ++d0)
        for (uint32_t d1 = 0; d1 < 16; ++d1)
            for (uint32_t d2 = 0; d2 < 16; ++d2) {
                if (!d0 && !d1 && !d2) continue;
                for (uint32_t m = 0; m < 16; ++m) {
                    uint32_t hits = 0;
                    for (uint32_t r = 0; r < 16; ++r) {
                        FieldVector cw = amd_encode_q(c, {m}, r);
                        cw[0] ^= d0;
                        cw[1] ^= d1;
                        cw[2] ^= d2;
                        if (amd_decode_q(c, cw)) ++hits;
                    }
                    Rational p(hits, 16);
                    if (worst < p) worst = p;
                }
            }
    CHECK(worst <= c.delta);
    CHECK(worst == Rational(2, 16)); // quadratic failure polynomial: two roots

    // zero-message q-ary code (tag r^3 only) still detects offsets
    AmdCodeQ c0 = make_amd_q(f16, 0);
    CHECK(c0.delta == Rational(2, 16));
    Rational worst0;
    for (uint32_t d0 = 0; d0 < 16; ++d0)
        for (uint32_t d1 = 0; d1 < 16; ++d1) {
            if (!d0 && !d1) continue;
            uint32_t hits = 0;
            for (uint32_t r = 0; r < 16; ++r) {
                FieldVector cw = amd_encode_q(c0, {}, r);
                cw[0] ^= d0;
                cw[1] ^= d1;
                if (amd_decode_q(c0, cw)) ++hits;
            }
            Rational p(hits, 16);
            if (worst0 < p) worst0 = p;
        }
    CHECK(worst0 <= c0.delta);
}
