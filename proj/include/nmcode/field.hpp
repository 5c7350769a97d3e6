#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nmcode/rng.hpp"

namespace nmcode {

// Binary extension field GF(2^w), w <= 16. Elements are w-bit integers in
// polynomial basis; arithmetic reduces modulo a fixed irreducible polynomial.
struct FieldSpec {
    uint32_t w = 1;
    uint32_t modulus = 0b11; // degree-w irreducible, bit i = coefficient of x^i

    uint32_t q() const { return 1u << w; }
    uint32_t mask() const { return (1u << w) - 1; }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.w == b.w && a.modulus == b.modulus;
    }
};

// Field with the table modulus for the given degree (verified irreducible).
FieldSpec gf(uint32_t w);

bool poly_is_irreducible(uint32_t poly, uint32_t degree);

uint32_t gf_add(const FieldSpec& f, uint32_t a, uint32_t b);
uint32_t gf_mul(const FieldSpec& f, uint32_t a, uint32_t b);
uint32_t gf_pow(const FieldSpec& f, uint32_t a, uint64_t e);
uint32_t gf_inv(const FieldSpec& f, uint32_t a); // throws on a == 0

// Horner evaluation of coeffs[0] + coeffs[1] x + ... at x.
uint32_t poly_eval(const FieldSpec& f, const std::vector<uint32_t>& coeffs, uint32_t x);

struct FieldVector {
    FieldSpec field;
    std::vector<uint32_t> elems;

    size_t size() const { return elems.size(); }
    uint32_t operator[](size_t i) const { return elems[i]; }
    uint32_t& operator[](size_t i) { return elems[i]; }

    friend bool operator==(const FieldVector& a, const FieldVector& b) {
        return a.field == b.field && a.elems == b.elems;
    }
};

FieldVector vec_zero(const FieldSpec& f, size_t n);
FieldVector vec_add(const FieldVector& a, const FieldVector& b);

struct FieldMatrix {
    FieldSpec field;
    size_t rows = 0;
    size_t cols = 0;
    std::vector<uint32_t> data; // row-major

    uint32_t at(size_t r, size_t c) const { return data[r * cols + c]; }
    uint32_t& at(size_t r, size_t c) { return data[r * cols + c]; }
    FieldVector row(size_t r) const;

    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
        return a.field == b.field && a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
};

FieldMatrix mat_zero(const FieldSpec& f, size_t rows, size_t cols);
FieldMatrix mat_identity(const FieldSpec& f, size_t n);

// Row-vector-times-matrix convention, fixed repo-wide: v has M.rows entries
// and the product v * M has M.cols entries.
FieldVector mat_vec_mul(const FieldMatrix& m, const FieldVector& v);

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix mat_transpose(const FieldMatrix& m);
FieldMatrix mat_stack(const FieldMatrix& top, const FieldMatrix& bottom);

size_t mat_rank(FieldMatrix m);
// Reduced row echelon form (in place); returns pivot columns.
std::vector<size_t> mat_rref(FieldMatrix& m);
// Basis of { x : M x^T = 0 }, one vector per row, deterministic order.
FieldMatrix mat_nullspace(const FieldMatrix& m);
std::optional<FieldMatrix> mat_inverse(const FieldMatrix& m);

// Appends `extra_rows` random rows to G, keeping full row rank. Deterministic
// per seed; throws if G is rank-deficient or rows + extra_rows > cols.
FieldMatrix extend_to_full_rank(const FieldMatrix& g, size_t extra_rows, uint64_t seed);

// Text format: first line "w rows cols", then one line per row with
// space-separated hex elements.
std::string mat_to_text(const FieldMatrix& m);
FieldMatrix mat_from_text(const std::string& text);

} // namespace nmcode
