#include "nmcode/field.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace nmcode {

namespace {

// One irreducible (in fact primitive) polynomial per degree, so that every
// codeword byte is reproducible across builds.
constexpr std::array<uint32_t, 17> kModuli = {
    0,       // unused
    0x3,     // x + 1
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11D,   // x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1100B, // x^16 + x^12 + x^3 + x + 1
};

int poly_degree(uint32_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

// Carry-less multiply then reduce modulo `mod` of degree `w`.
uint32_t clmul_reduce(uint32_t a, uint32_t b, uint32_t mod, uint32_t w) {
    uint64_t acc = 0;
    uint64_t aa = a;
    while (b) {
        if (b & 1) acc ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    for (int bit = poly_degree(static_cast<uint32_t>(acc >> 32)) + 32; bit >= static_cast<int>(w);
         --bit) {
        if (acc >> bit & 1) acc ^= static_cast<uint64_t>(mod) << (bit - w);
    }
    return static_cast<uint32_t>(acc);
}

// Remainder of polynomial division a mod b over GF(2).
uint32_t poly_mod(uint64_t a, uint32_t b) {
    int db = poly_degree(b);
    for (int bit = 63; bit >= db; --bit) {
        if (a >> bit & 1) a ^= static_cast<uint64_t>(b) << (bit - db);
    }
    return static_cast<uint32_t>(a);
}

} // namespace

bool poly_is_irreducible(uint32_t poly, uint32_t degree) {
    if (poly_degree(poly) != static_cast<int>(degree) || degree == 0) return false;
    // Trial division by every polynomial of degree 1 .. degree/2.
    for (uint32_t d = 1; 2 * d <= degree; ++d) {
        for (uint32_t low = 0; low < (1u << d); ++low) {
            uint32_t divisor = (1u << d) | low;
            if (poly_mod(poly, divisor) == 0) return false;
        }
    }
    return true;
}

FieldSpec gf(uint32_t w) {
    if (w < 1 || w > 16) throw std::invalid_argument("gf: extension degree must be in 1..16");
    FieldSpec f{w, kModuli[w]};
    if (!poly_is_irreducible(f.modulus, w)) throw std::logic_error("gf: modulus table corrupt");
    return f;
}

uint32_t gf_add(const FieldSpec& f, uint32_t a, uint32_t b) { return (a ^ b) & f.mask(); }

uint32_t gf_mul(const FieldSpec& f, uint32_t a, uint32_t b) {
    return clmul_reduce(a & f.mask(), b & f.mask(), f.modulus, f.w);
}

uint32_t gf_pow(const FieldSpec& f, uint32_t a, uint64_t e) {
    uint32_t acc = 1;
    uint32_t base = a & f.mask();
    while (e) {
        if (e & 1) acc = gf_mul(f, acc, base);
        base = gf_mul(f, base, base);
        e >>= 1;
    }
    return acc;
}

uint32_t gf_inv(const FieldSpec& f, uint32_t a) {
    if ((a & f.mask()) == 0) throw std::invalid_argument("gf_inv: non-invertible");
    return gf_pow(f, a, f.q() - 2);
}

uint32_t poly_eval(const FieldSpec& f, const std::vector<uint32_t>& coeffs, uint32_t x) {
    uint32_t acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = gf_add(f, gf_mul(f, acc, x), coeffs[i]);
    return acc;
}

FieldVector vec_zero(const FieldSpec& f, size_t n) { return FieldVector{f, std::vector<uint32_t>(n, 0)}; }

FieldVector vec_add(const FieldVector& a, const FieldVector& b) {
    if (!(a.field == b.field) || a.size() != b.size())
        throw std::invalid_argument("vec_add: mismatched operands");
    FieldVector out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] ^= b[i];
    return out;
}

FieldVector FieldMatrix::row(size_t r) const {
    FieldVector v{field, {}};
    v.elems.assign(data.begin() + r * cols, data.begin() + (r + 1) * cols);
    return v;
}

FieldMatrix mat_zero(const FieldSpec& f, size_t rows, size_t cols) {
    return FieldMatrix{f, rows, cols, std::vector<uint32_t>(rows * cols, 0)};
}

FieldMatrix mat_identity(const FieldSpec& f, size_t n) {
    FieldMatrix m = mat_zero(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FieldVector mat_vec_mul(const FieldMatrix& m, const FieldVector& v) {
    if (v.size() != m.rows) throw std::invalid_argument("mat_vec_mul: dimension mismatch");
    FieldVector out = vec_zero(m.field, m.cols);
    for (size_t r = 0; r < m.rows; ++r) {
        uint32_t s = v[r];
        if (s == 0) continue;
        if (s == 1) {
            for (size_t c = 0; c < m.cols; ++c) out[c] ^= m.at(r, c);
        } else {
            for (size_t c = 0; c < m.cols; ++c) out[c] ^= gf_mul(m.field, s, m.at(r, c));
        }
    }
    return out;
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols != b.rows || !(a.field == b.field))
        throw std::invalid_argument("mat_mul: dimension mismatch");
    FieldMatrix out = mat_zero(a.field, a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < a.cols; ++k) {
            uint32_t s = a.at(i, k);
            if (s == 0) continue;
            for (size_t j = 0; j < b.cols; ++j) out.at(i, j) ^= gf_mul(a.field, s, b.at(k, j));
        }
    return out;
}

FieldMatrix mat_transpose(const FieldMatrix& m) {
    FieldMatrix out = mat_zero(m.field, m.cols, m.rows);
    for (size_t r = 0; r < m.rows; ++r)
        for (size_t c = 0; c < m.cols; ++c) out.at(c, r) = m.at(r, c);
    return out;
}

FieldMatrix mat_stack(const FieldMatrix& top, const FieldMatrix& bottom) {
    if (top.cols != bottom.cols || !(top.field == bottom.field))
        throw std::invalid_argument("mat_stack: dimension mismatch");
    FieldMatrix out = top;
    out.rows += bottom.rows;
    out.data.insert(out.data.end(), bottom.data.begin(), bottom.data.end());
    return out;
}

std::vector<size_t> mat_rref(FieldMatrix& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t sel = r;
        while (sel < m.rows && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows) continue;
        for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        uint32_t inv = gf_inv(m.field, m.at(r, c));
        if (inv != 1)
            for (size_t j = 0; j < m.cols; ++j) m.at(r, j) = gf_mul(m.field, inv, m.at(r, j));
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            uint32_t s = m.at(i, c);
            for (size_t j = 0; j < m.cols; ++j)
                m.at(i, j) ^= gf_mul(m.field, s, m.at(r, j));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t mat_rank(FieldMatrix m) { return mat_rref(m).size(); }

FieldMatrix mat_nullspace(const FieldMatrix& m) {
    FieldMatrix red = m;
    std::vector<size_t> pivots = mat_rref(red);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : pivots) is_pivot[c] = true;

    FieldMatrix basis = mat_zero(m.field, 0, m.cols);
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        FieldVector v = vec_zero(m.field, m.cols);
        v[free] = 1;
        for (size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = red.at(p, free);
        basis.rows += 1;
        basis.data.insert(basis.data.end(), v.elems.begin(), v.elems.end());
    }
    return basis;
}

std::optional<FieldMatrix> mat_inverse(const FieldMatrix& m) {
    if (m.rows != m.cols) return std::nullopt;
    FieldMatrix aug = mat_zero(m.field, m.rows, 2 * m.cols);
    for (size_t r = 0; r < m.rows; ++r) {
        for (size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols + r) = 1;
    }
    std::vector<size_t> pivots = mat_rref(aug);
    for (size_t i = 0; i < pivots.size(); ++i)
        if (pivots[i] != i) return std::nullopt;
    if (pivots.size() != m.rows) return std::nullopt;
    FieldMatrix inv = mat_zero(m.field, m.rows, m.cols);
    for (size_t r = 0; r < m.rows; ++r)
        for (size_t c = 0; c < m.cols; ++c) inv.at(r, c) = aug.at(r, m.cols + c);
    return inv;
}

FieldMatrix extend_to_full_rank(const FieldMatrix& g, size_t extra_rows, uint64_t seed) {
    if (mat_rank(g) != g.rows)
        throw std::invalid_argument("extend_to_full_rank: input rows not independent");
    if (g.rows + extra_rows > g.cols)
        throw std::invalid_argument("extend_to_full_rank: rank deficit, extension impossible");
    FieldMatrix out = g;
    Rng rng = Rng(seed).child(0x657874); // "ext"
    size_t attempts = 0;
    while (out.rows < g.rows + extra_rows) {
        FieldVector cand = vec_zero(g.field, g.cols);
        for (size_t c = 0; c < g.cols; ++c)
            cand[c] = static_cast<uint32_t>(rng.below(g.field.q()));
        FieldMatrix trial = out;
        trial.rows += 1;
        trial.data.insert(trial.data.end(), cand.elems.begin(), cand.elems.end());
        if (mat_rank(trial) == trial.rows) out = std::move(trial);
        if (++attempts > 4096 * (extra_rows + 1))
            throw std::runtime_error("extend_to_full_rank: no extension found");
    }
    return out;
}

std::string mat_to_text(const FieldMatrix& m) {
    std::ostringstream os;
    os << m.field.w << " " << m.rows << " " << m.cols << "\n";
    os << std::hex;
    for (size_t r = 0; r < m.rows; ++r) {
        for (size_t c = 0; c < m.cols; ++c) {
            if (c) os << " ";
            os << m.at(r, c);
        }
        os << "\n";
    }
    return os.str();
}

FieldMatrix mat_from_text(const std::string& text) {
    std::istringstream is(text);
    uint32_t w;
    size_t rows, cols;
    if (!(is >> w >> rows >> cols)) throw std::invalid_argument("mat_from_text: bad header");
    FieldMatrix m = mat_zero(gf(w), rows, cols);
    is >> std::hex;
    for (size_t i = 0; i < rows * cols; ++i) {
        if (!(is >> m.data[i])) throw std::invalid_argument("mat_from_text: truncated data");
        if (m.data[i] > m.field.mask()) throw std::invalid_argument("mat_from_text: element out of range");
    }
    return m;
}

} // namespace nmcode
