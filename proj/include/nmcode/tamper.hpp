#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmcode/field.hpp"
#include "nmcode/rng.hpp"

namespace nmcode {

// Bitwise tampering with leakage: the adversary reads the positions in
// s_read, looks the value up in a table, and applies the selected vector of
// per-bit actions to the positions in s_write. Everything outside s_write is
// copied through.
enum class BitAction : uint8_t { Set0 = 0, Set1 = 1, Keep = 2, Flip = 3 };

struct TamperFunction {
    size_t n = 0;
    std::vector<uint32_t> s_read;  // sorted, in range
    std::vector<uint32_t> s_write; // sorted, in range
    // table[alpha] = action vector over s_write, for every read value alpha
    std::vector<std::vector<BitAction>> table;

    size_t read_bits() const { return s_read.size(); }
};

void validate(const TamperFunction& f);

// Read value of x on s_read; bit j of the result is position s_read[j].
uint64_t read_value(const TamperFunction& f, uint64_t x);

uint64_t tamper_apply(const TamperFunction& f, uint64_t x);

// Full action vector over all n positions for read value alpha (Keep outside
// s_write).
std::vector<BitAction> action_vector(const TamperFunction& f, uint64_t alpha);

// Difference action: Delta g(x) = g(x) XOR x taken per position. Swaps
// {Set0,Set1} with {Keep,Flip}; involutive.
BitAction difference_action(BitAction a);
std::vector<BitAction> difference_function(const TamperFunction& f, uint64_t alpha);

enum class SampleMode { Uniform, Structured };

// Draws an adversary with |s_read| = floor(n*rho_r), |s_write| = floor(n*rho_w).
// Uniform: uniform sets and i.i.d. uniform table entries. Structured: cycles
// through named strategies (all-Set0, all-Set1, all-Flip, copy-read-to-write,
// majority-threshold). Deterministic per seed.
TamperFunction tamper_sample(size_t n, double rho_r, double rho_w, SampleMode mode, uint64_t seed);

// Same with explicit set sizes.
TamperFunction tamper_sample_sizes(size_t n, size_t read_size, size_t write_size, SampleMode mode,
                                   uint64_t seed);

// log2 of the family-size upper bound
//   |F| <= C(n, nr) * C(n, nw) * (4^nw)^(2^nr),
// with nr = n*rho_r, nw = n*rho_w (must be integral).
long double family_size_bound_log2(size_t n, double rho_r, double rho_w);

// The attack that turns a leakage gap into a strong-non-malleability gap:
// keep the codeword when the read value lies in distinguisher_set, otherwise
// flip position 0.
TamperFunction privacy_breaker(const std::vector<uint64_t>& distinguisher_set,
                               const std::vector<uint32_t>& s_read, size_t n);

std::string tamper_to_text(const TamperFunction& f);
TamperFunction tamper_from_text(const std::string& text);
uint64_t tamper_digest(const TamperFunction& f);

// ---- q-ary add/overwrite family (per-symbol actions on all n positions) ----

struct QaryAction {
    enum class Kind : uint8_t { Add = 0, Overwrite = 1 } kind = Kind::Add;
    uint32_t value = 0;
};

struct AoTamperFunction {
    FieldSpec field;
    size_t n = 0;
    std::vector<uint32_t> s_read; // sorted
    // table[alpha] indexed by the mixed-radix read value (digit j = position
    // s_read[j], base q); each entry has one action per position.
    std::vector<std::vector<QaryAction>> table;
};

void validate(const AoTamperFunction& f);
uint64_t ao_read_value(const AoTamperFunction& f, const FieldVector& x);
FieldVector ao_apply(const AoTamperFunction& f, const FieldVector& x);
AoTamperFunction ao_sample(const FieldSpec& field, size_t n, size_t read_size, SampleMode mode,
                           uint64_t seed);
std::string ao_to_text(const AoTamperFunction& f);
uint64_t ao_digest(const AoTamperFunction& f);

// A TamperFunction with S_w = [n] equivalent to this q=2 AO function.
TamperFunction ao_to_bit(const AoTamperFunction& f);

} // namespace nmcode
