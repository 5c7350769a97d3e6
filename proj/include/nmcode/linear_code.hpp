#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nmcode/field.hpp"

namespace nmcode {

// Linear [n, k] code over GF(2^w) with generator and parity-check matrices.
// Distances are found by exhaustive codeword sweep (never by bound formulas)
// and cached eagerly at construction, so shared instances stay immutable.
struct LinearCode {
    FieldSpec field;
    size_t n = 0;
    size_t k = 0;
    FieldMatrix generator;    // k x n, full rank
    FieldMatrix parity_check; // (n-k) x n, G H^T = 0
    std::optional<size_t> min_distance;
    std::optional<size_t> dual_distance;
    std::string construction; // human-readable tag for serialization
};

// Builds a code from a full-rank generator; derives H as a nullspace basis
// and sweeps both distances when the sizes are feasible.
LinearCode code_from_generator(const FieldMatrix& g, const std::string& construction);

// [2^h-1, 2^h-1-h, 3] Hamming code; parity-check columns are all nonzero
// h-bit values in lexicographic (numeric) order.
LinearCode hamming_code(uint32_t h);

LinearCode dual_code(const LinearCode& c);

// Exhaustive minimum Hamming weight over nonzero codewords. Sweeps q^k
// codewords; throws "use smaller code" above 2^26.
size_t min_distance(const LinearCode& c);

// [n, k] Reed-Solomon code over GF(2^w): Vandermonde generator on evaluation
// points (1, a, a^2, ...), with 0 prepended when n == q.
LinearCode reed_solomon_code(const FieldSpec& field, size_t n, size_t k);

// Binary Reed-Muller code RM(r, m) of length 2^m: generator rows are the
// evaluations of all monomials of degree <= r.
LinearCode reed_muller_code(uint32_t r, uint32_t m);

// Coset label of x with respect to C under the labeling rows ghat: the unique
// m with x in (row span of C.generator) + m * ghat. Requires [G; ghat] square
// full rank; total on all of F_q^n.
struct CosetLabeler {
    FieldMatrix label_map; // n x l, label(x) = x * label_map
    FieldVector label(const FieldVector& x) const;
};
CosetLabeler make_coset_labeler(const LinearCode& c, const FieldMatrix& ghat);
FieldVector coset_syndrome_decode(const LinearCode& c, const FieldVector& x, const FieldMatrix& ghat);

std::string code_to_text(const LinearCode& c);

} // namespace nmcode
