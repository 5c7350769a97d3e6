#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmcode/field.hpp"
#include "nmcode/rational.hpp"

namespace nmcode {

// Algebraic manipulation detection via the polynomial tag
//   f(m, r) = r^e + sum_{i=1..d} m_i r^i   over GF(2^u),
// with the message split into d = ceil(k/u) blocks of u bits (the last block
// zero-padded). The exponent e is d+2 when d is odd and d+3 otherwise, so it
// is never divisible by the characteristic; the detection failure bound is
// (e-1)/2^u. For u | k and odd d this is the classical (k/u+1)/2^u profile.
//
// Codewords are (m, r, tag): k + 2u bits, message bits stored verbatim.
struct AmdCode {
    uint32_t k = 0;       // message bits
    uint32_t u = 1;       // tag field degree
    uint32_t d = 0;       // message blocks
    uint32_t exponent = 3;
    FieldSpec tag_field;
    Rational delta;       // claimed tamper-detection failure bound

    uint32_t codeword_bits() const { return k + 2 * u; }
};

AmdCode make_amd(uint32_t k, uint32_t u);

// r must lie in [0, 2^u).
uint64_t amd_encode(const AmdCode& code, uint64_t m, uint32_t r);
std::optional<uint64_t> amd_decode(const AmdCode& code, uint64_t x);
Rational amd_failure_bound(const AmdCode& code);

// Exhaustive sweep over (m, nonzero offset, r). Reports both tampering
// events: decode != bot (tamper detection) and decode outside {m, bot}
// (manipulation detection proper); the offset is held fixed while r varies.
struct AmdOracleReport {
    Rational max_not_bot;       // max Pr[decode != bot]
    Rational max_wrong_message; // max Pr[decode not in {m, bot}]
    uint64_t worst_delta = 0;   // offset attaining max_not_bot
    uint64_t worst_message = 0;
    // max over offsets touching only message bits (tag and r untouched)
    Rational max_message_only;
};
AmdOracleReport amd_exhaustive_oracle(const AmdCode& code);

// CSV rows "delta,failure_rate" for every nonzero offset (worst message).
std::string amd_oracle_csv(const AmdCode& code);

// q-ary variant used over wires: message is d symbols of F_q, codeword is
// d+2 symbols (m, r, tag); same tag polynomial and bound (e-1)/q.
struct AmdCodeQ {
    FieldSpec field;
    uint32_t d = 0;
    uint32_t exponent = 3;
    Rational delta;

    uint32_t codeword_symbols() const { return d + 2; }
};

AmdCodeQ make_amd_q(const FieldSpec& field, uint32_t d);
FieldVector amd_encode_q(const AmdCodeQ& code, const std::vector<uint32_t>& m, uint32_t r);
std::optional<std::vector<uint32_t>> amd_decode_q(const AmdCodeQ& code, const FieldVector& x);

} // namespace nmcode
