#include "nmcode/amd.hpp"

#include <sstream>
#include <stdexcept>

namespace nmcode {

namespace {

uint32_t tag_of(const AmdCode& c, uint64_t m, uint32_t r) {
    uint32_t t = gf_pow(c.tag_field, r, c.exponent);
    const uint64_t block_mask = (c.u == 64) ? ~0ull : ((1ull << c.u) - 1);
    for (uint32_t i = 0; i < c.d; ++i) {
        uint32_t mi = static_cast<uint32_t>((m >> (i * c.u)) & block_mask);
        t ^= gf_mul(c.tag_field, mi, gf_pow(c.tag_field, r, i + 1));
    }
    return t;
}

} // namespace

AmdCode make_amd(uint32_t k, uint32_t u) {
    if (u < 1 || u > 16) throw std::invalid_argument("make_amd: u must be 1..16");
    if (k > 40) throw std::invalid_argument("make_amd: message too long for desk scale");
    AmdCode c;
    c.k = k;
    c.u = u;
    c.d = (k + u - 1) / u;
    c.exponent = (c.d % 2 == 1) ? c.d + 2 : c.d + 3;
    c.tag_field = gf(u);
    c.delta = Rational(c.exponent - 1, 1ull << u);
    return c;
}

uint64_t amd_encode(const AmdCode& code, uint64_t m, uint32_t r) {
    if (code.k < 64 && (m >> code.k) != 0)
        throw std::invalid_argument("amd_encode: message out of range");
    if (r > code.tag_field.mask()) throw std::invalid_argument("amd_encode: r out of range");
    uint64_t t = tag_of(code, m, r);
    return m | (static_cast<uint64_t>(r) << code.k) | (t << (code.k + code.u));
}

std::optional<uint64_t> amd_decode(const AmdCode& code, uint64_t x) {
    if (code.codeword_bits() < 64 && (x >> code.codeword_bits()) != 0)
        throw std::invalid_argument("amd_decode: codeword out of range");
    const uint64_t m = x & ((code.k == 64) ? ~0ull : ((1ull << code.k) - 1));
    const uint32_t r = static_cast<uint32_t>((x >> code.k) & code.tag_field.mask());
    const uint32_t t = static_cast<uint32_t>((x >> (code.k + code.u)) & code.tag_field.mask());
    if (t != tag_of(code, m, r)) return std::nullopt;
    return m;
}

Rational amd_failure_bound(const AmdCode& code) { return code.delta; }

AmdOracleReport amd_exhaustive_oracle(const AmdCode& code) {
    const uint32_t nbits = code.codeword_bits();
    if (2 * code.k + 3 * code.u > 26)
        throw std::invalid_argument("amd_exhaustive_oracle: parameter space too large");
    const uint64_t messages = 1ull << code.k;
    const uint64_t offsets = 1ull << nbits;
    const uint32_t rs = code.tag_field.q();

    AmdOracleReport rep;
    for (uint64_t delta = 1; delta < offsets; ++delta) {
        const bool message_only = (delta >> code.k) == 0;
        for (uint64_t m = 0; m < messages; ++m) {
            uint32_t not_bot = 0, wrong = 0;
            for (uint32_t r = 0; r < rs; ++r) {
                auto dec = amd_decode(code, amd_encode(code, m, r) ^ delta);
                if (dec) {
                    ++not_bot;
                    if (*dec != m) ++wrong;
                }
            }
            Rational p_not_bot(not_bot, rs), p_wrong(wrong, rs);
            if (rep.max_not_bot < p_not_bot) {
                rep.max_not_bot = p_not_bot;
                rep.worst_delta = delta;
                rep.worst_message = m;
            }
            if (rep.max_wrong_message < p_wrong) rep.max_wrong_message = p_wrong;
            if (message_only && rep.max_message_only < p_not_bot) rep.max_message_only = p_not_bot;
        }
    }
    return rep;
}

std::string amd_oracle_csv(const AmdCode& code) {
    const uint32_t nbits = code.codeword_bits();
    if (2 * code.k + 3 * code.u > 26)
        throw std::invalid_argument("amd_oracle_csv: parameter space too large");
    const uint64_t messages = 1ull << code.k;
    const uint64_t offsets = 1ull << nbits;
    const uint32_t rs = code.tag_field.q();
    std::ostringstream os;
    os << "delta,failure_rate\n";
    for (uint64_t delta = 1; delta < offsets; ++delta) {
        Rational worst;
        for (uint64_t m = 0; m < messages; ++m) {
            uint32_t not_bot = 0;
            for (uint32_t r = 0; r < rs; ++r)
                if (amd_decode(code, amd_encode(code, m, r) ^ delta)) ++not_bot;
            Rational p(not_bot, rs);
            if (worst < p) worst = p;
        }
        os << delta << "," << worst.str() << "\n";
    }
    return os.str();
}

AmdCodeQ make_amd_q(const FieldSpec& field, uint32_t d) {
    AmdCodeQ c;
    c.field = field;
    c.d = d;
    c.exponent = (d % 2 == 1) ? d + 2 : d + 3;
    c.delta = Rational(c.exponent - 1, field.q());
    return c;
}

FieldVector amd_encode_q(const AmdCodeQ& code, const std::vector<uint32_t>& m, uint32_t r) {
    if (m.size() != code.d) throw std::invalid_argument("amd_encode_q: wrong message length");
    FieldVector out = vec_zero(code.field, code.codeword_symbols());
    uint32_t t = gf_pow(code.field, r, code.exponent);
    for (uint32_t i = 0; i < code.d; ++i) {
        if (m[i] > code.field.mask()) throw std::invalid_argument("amd_encode_q: symbol out of range");
        out[i] = m[i];
        t ^= gf_mul(code.field, m[i], gf_pow(code.field, r, i + 1));
    }
    out[code.d] = r & code.field.mask();
    out[code.d + 1] = t;
    return out;
}

std::optional<std::vector<uint32_t>> amd_decode_q(const AmdCodeQ& code, const FieldVector& x) {
    if (x.size() != code.codeword_symbols())
        throw std::invalid_argument("amd_decode_q: wrong length");
    std::vector<uint32_t> m(x.elems.begin(), x.elems.begin() + code.d);
    const uint32_t r = x[code.d];
    uint32_t t = gf_pow(code.field, r, code.exponent);
    for (uint32_t i = 0; i < code.d; ++i)
        t ^= gf_mul(code.field, m[i], gf_pow(code.field, r, i + 1));
    if (t != x[code.d + 1]) return std::nullopt;
    return m;
}

} // namespace nmcode
