#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmcode/linear_code.hpp"
#include "nmcode/rational.hpp"

namespace nmcode {

// Coset wiretap II code: messages are the cosets of the randomness code C in
// F_q^n. Encoding is [R m] [G; ghat]; decoding identifies the coset and is
// total. Leakage tolerance rho = (ddual(C) - 1)/n with exact secrecy
// (epsilon = 0) for constructed instances; epsilon is kept in the type so the
// audit harness can also consume synthetic imperfect codes.
struct CosetWtCode {
    LinearCode c;        // randomness code, dimension n - ell
    FieldMatrix ghat;    // ell appended rows, [G; ghat] full rank
    CosetLabeler labeler;
    size_t n = 0;
    size_t ell = 0;
    Rational rho;
    Rational epsilon; // 0 for coset constructions
};

CosetWtCode wt_build(const LinearCode& c, uint64_t seed);

FieldVector wt_encode(const CosetWtCode& w, const FieldVector& m, const FieldVector& big_r);
FieldVector wt_decode(const CosetWtCode& w, const FieldVector& x);

// Exact maximum statistical distance of eavesdropped views over all message
// pairs and all reading sets of size 1..max_set_size, by enumerating the
// encoder randomness. Falls back with an error when infeasible unless
// monte_carlo_sets > 0, in which case that many (set, pair) combinations are
// sampled per size.
struct PrivacyRow {
    std::vector<uint32_t> set;
    uint64_t m0 = 0, m1 = 0; // packed messages
    Rational sd;
};
struct PrivacyReport {
    Rational max_sd;
    std::vector<Rational> max_sd_by_size; // index s-1 for |S| = s
    PrivacyRow witness;                   // a row attaining max_sd
    std::vector<PrivacyRow> rows;         // populated when collect_rows
    bool exact = true;
};
PrivacyReport wt_verify_privacy(const CosetWtCode& w, size_t max_set_size,
                                bool collect_rows = false, uint64_t monte_carlo_sets = 0,
                                uint64_t seed = 0);

std::string privacy_report_csv(const PrivacyReport& rep);
std::string wt_to_text(const CosetWtCode& w);

} // namespace nmcode
