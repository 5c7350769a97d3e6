#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nmcode/linear_code.hpp"

namespace nmcode {

// Linear error-correcting secret sharing realized as a nested binary code
// pair C (subcode, r rows) inside Cbar (ell + r rows): messages are the
// cosets of C in Cbar. Both defining parameters are measured, never assumed:
// d is the exhaustive minimum distance of Cbar and t the largest tau with
// every tau codeword positions uniform for every message.
struct LecssCode {
    LinearCode outer;     // Cbar, generator rows: r subcode rows then ell message rows
    size_t ell = 0;       // message bits
    size_t r = 0;         // randomness bits
    size_t d = 0;         // verified distance of Cbar
    size_t t = 0;         // verified uniformity
    bool t_matches_dual_distance = true; // cross-oracle flag
    FieldMatrix label_map; // n x ell, valid on Cbar

    size_t n() const { return outer.n; }
};

// First r rows of the stacked generator span the subcode C, the remaining
// ell rows carry the message.
LecssCode lecss_from_generator(const FieldMatrix& stacked, size_t ell, size_t r);

// Random full-rank (ell+r) x n binary generator, verified; deterministic per
// seed; throws "rank failure" after bounded retries.
LecssCode lecss_build_random(size_t n, size_t ell, size_t r, uint64_t seed);

uint64_t lecss_encode(const LecssCode& l, uint64_t m, uint64_t big_r);
std::optional<uint64_t> lecss_decode(const LecssCode& l, uint64_t x); // nullopt = bot

// (d, t) by exhaustive sweep; also used internally by the constructors.
struct LecssVerification {
    size_t d = 0;
    size_t t = 0;
    bool t_matches_dual_distance = true;
};
LecssVerification lecss_verify(const LecssCode& l);

std::string lecss_to_text(const LecssCode& l);

} // namespace nmcode
