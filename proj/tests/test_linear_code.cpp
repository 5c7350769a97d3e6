#include <doctest.h>

#include <map>
#include <set>

#include "nmcode/linear_code.hpp"
#include "nmcode/rng.hpp"

using namespace nmcode;

TEST_CASE("hamming codes") {
    LinearCode h3 = hamming_code(3);
    CHECK(h3.n == 7);
    CHECK(h3.k == 4);
    REQUIRE(h3.min_distance);
    CHECK(*h3.min_distance == 3);
    REQUIRE(h3.dual_distance);
    CHECK(*h3.dual_distance == 4); // simplex distance 2^(h-1)

    // parity-check columns are the h-bit values 1..n in order
    for (size_t col = 0; col < h3.n; ++col) {
        uint32_t v = 0;
        for (size_t row = 0; row < 3; ++row) v = (v << 1) | h3.parity_check.at(row, col);
        CHECK(v == col + 1);
    }

    LinearCode h5 = hamming_code(5);
    CHECK(h5.n == 31);
    CHECK(h5.k == 26);
    CHECK(*h5.min_distance == 3);
    CHECK(*h5.dual_distance == 16);

    CHECK_THROWS(hamming_code(1));
}

TEST_CASE("dual code") {
    LinearCode h3 = hamming_code(3);
    LinearCode simplex = dual_code(h3);
    CHECK(simplex.n == 7);
    CHECK(simplex.k == 3);
    CHECK(*simplex.min_distance == 4);

    // dual of dual spans the original row space
    LinearCode back = dual_code(simplex);
    FieldMatrix probe = h3.generator;
    for (size_t r = 0; r < back.generator.rows; ++r) {
        probe.rows += 1;
        for (size_t c = 0; c < back.generator.cols; ++c)
            probe.data.push_back(back.generator.at(r, c));
    }
    CHECK(mat_rank(probe) == h3.k);

    // dual of the full space is the zero code
    LinearCode full = code_from_generator(mat_identity(gf(1), 4), "full");
    LinearCode zero = dual_code(full);
    CHECK(zero.k == 0);
}

TEST_CASE("min_distance examples") {
    FieldSpec f = gf(1);
    FieldMatrix rep = mat_zero(f, 1, 5);
    for (size_t c = 0; c < 5; ++c) rep.at(0, c) = 1;
    LinearCode repetition = code_from_generator(rep, "repetition");
    CHECK(*repetition.min_distance == 5);
}

TEST_CASE("reed-solomon is MDS at desk scale") {
    FieldSpec f16 = gf(4);
    LinearCode rs = reed_solomon_code(f16, 5, 3);
    REQUIRE(rs.min_distance);
    CHECK(*rs.min_distance == 3); // n - k + 1, by exhaustive sweep
    REQUIRE(rs.dual_distance);
    CHECK(*rs.dual_distance == 4); // k + 1, by exhaustive sweep on the dual

    LinearCode rs_nk = reed_solomon_code(f16, 4, 4);
    CHECK(*rs_nk.min_distance == 1);

    CHECK_THROWS(reed_solomon_code(f16, 17, 2));

    // more MDS instances
    for (size_t k = 1; k <= 4; ++k) {
        LinearCode c = reed_solomon_code(f16, 6, k);
        CHECK(*c.min_distance == 6 - k + 1);
    }
    // over GF(8), with evaluation at 0 when n = q
    FieldSpec f8 = gf(3);
    LinearCode rs8 = reed_solomon_code(f8, 8, 2);
    CHECK(*rs8.min_distance == 7);
}

TEST_CASE("coset labeling against an exhaustive table") {
    LinearCode h3 = hamming_code(3);
    FieldMatrix ghat = extend_to_full_rank(h3.generator, 3, 11);
    FieldMatrix ghat_rows = mat_zero(h3.field, 3, 7);
    for (size_t r = 0; r < 3; ++r)
        for (size_t c = 0; c < 7; ++c) ghat_rows.at(r, c) = ghat.at(4 + r, c);

    CosetLabeler lab = make_coset_labeler(h3, ghat_rows);

    // all-zero word lies in the zero coset
    FieldVector zero = vec_zero(h3.field, 7);
    CHECK(lab.label(zero) == vec_zero(h3.field, 3));

    // a ghat row indexed by a unit vector labels as that unit vector
    for (size_t i = 0; i < 3; ++i) {
        FieldVector row = ghat_rows.row(i);
        FieldVector m = lab.label(row);
        for (size_t j = 0; j < 3; ++j) CHECK(m[j] == (i == j ? 1u : 0u));
    }

    // full 2^7 coset table: label(codeword + m*ghat) == m for every word
    std::map<uint64_t, uint64_t> table;
    for (uint64_t mi = 0; mi < 8; ++mi)
        for (uint64_t ri = 0; ri < 16; ++ri) {
            FieldVector m{h3.field, {static_cast<uint32_t>(mi & 1),
                                     static_cast<uint32_t>((mi >> 1) & 1),
                                     static_cast<uint32_t>((mi >> 2) & 1)}};
            FieldVector r{h3.field, {static_cast<uint32_t>(ri & 1),
                                     static_cast<uint32_t>((ri >> 1) & 1),
                                     static_cast<uint32_t>((ri >> 2) & 1),
                                     static_cast<uint32_t>((ri >> 3) & 1)}};
            FieldVector x = vec_add(mat_vec_mul(h3.generator, r), mat_vec_mul(ghat_rows, m));
            uint64_t key = 0;
            for (size_t j = 0; j < 7; ++j) key |= static_cast<uint64_t>(x[j]) << j;
            table[key] = mi;
        }
    CHECK(table.size() == 128); // cosets partition the space
    for (const auto& [key, mi] : table) {
        FieldVector x = vec_zero(h3.field, 7);
        for (size_t j = 0; j < 7; ++j) x[j] = (key >> j) & 1;
        FieldVector m = coset_syndrome_decode(h3, x, ghat_rows);
        uint64_t got = m[0] | (m[1] << 1) | (m[2] << 2);
        CHECK(got == mi);
    }
}

TEST_CASE("reed-muller pair parameters") {
    LinearCode rm24 = reed_muller_code(2, 4);
    CHECK(rm24.n == 16);
    CHECK(rm24.k == 11);
    CHECK(*rm24.min_distance == 4);
    LinearCode rm14 = reed_muller_code(1, 4);
    CHECK(rm14.k == 5);
    CHECK(*rm14.min_distance == 8);
    CHECK(*rm14.dual_distance == 4); // dual of RM(1,4) is RM(2,4)
}

TEST_CASE("serialization header names the construction") {
    LinearCode h3 = hamming_code(3);
    std::string text = code_to_text(h3);
    CHECK(text.find("hamming h=3") != std::string::npos);
    CHECK(text.find("d=3") != std::string::npos);
}
