#include "nmcode/linear_code.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace nmcode {

namespace {

constexpr uint64_t kSweepLimit = 1ull << 26;

uint64_t pow_u64(uint64_t b, uint64_t e) {
    uint64_t acc = 1;
    while (e--) acc *= b;
    return acc;
}

// Gray-code weight sweep for binary codes: visits all 2^k - 1 nonzero
// codewords with one row XOR per step.
size_t sweep_binary(const FieldMatrix& g) {
    std::vector<uint64_t> rows(g.rows, 0);
    for (size_t r = 0; r < g.rows; ++r)
        for (size_t c = 0; c < g.cols; ++c)
            if (g.at(r, c)) rows[r] |= 1ull << c;
    uint64_t cw = 0;
    size_t best = g.cols + 1;
    const uint64_t total = 1ull << g.rows;
    for (uint64_t i = 1; i < total; ++i) {
        cw ^= rows[std::countr_zero(i)];
        size_t wt = static_cast<size_t>(std::popcount(cw));
        if (wt < best) best = wt;
    }
    return best;
}

// Odometer sweep for q-ary codes; incremental update on the changed digit.
size_t sweep_qary(const FieldMatrix& g) {
    const FieldSpec f = g.field;
    std::vector<uint32_t> digits(g.rows, 0);
    FieldVector cw = vec_zero(f, g.cols);
    size_t best = g.cols + 1;
    const uint64_t total = pow_u64(f.q(), g.rows);
    for (uint64_t i = 1; i < total; ++i) {
        size_t pos = 0;
        while (digits[pos] == f.mask()) {
            digits[pos] = 0;
            ++pos;
        }
        // adding 1 to digit `pos` changes the codeword by scaled row diffs
        uint32_t old = digits[pos];
        digits[pos] = old + 1;
        for (size_t c = 0; c < g.cols; ++c) {
            uint32_t rc = g.at(pos, c);
            cw[c] ^= gf_mul(f, rc, old) ^ gf_mul(f, rc, old + 1);
        }
        // carried digits were reset from q-1 to 0
        for (size_t p = 0; p < pos; ++p)
            for (size_t c = 0; c < g.cols; ++c)
                cw[c] ^= gf_mul(f, g.at(p, c), f.mask());
        size_t wt = 0;
        for (size_t c = 0; c < g.cols; ++c) wt += cw[c] != 0;
        if (wt < best) best = wt;
    }
    return best;
}

bool sweep_feasible(const FieldSpec& f, size_t k) {
    if (k == 0) return true;
    long double size = 1;
    for (size_t i = 0; i < k; ++i) {
        size *= f.q();
        if (size > static_cast<long double>(kSweepLimit)) return false;
    }
    return true;
}

} // namespace

size_t min_distance(const LinearCode& c) {
    if (c.min_distance) return *c.min_distance;
    if (c.k == 0) return c.n + 1; // zero code: no nonzero codeword
    if (!sweep_feasible(c.field, c.k))
        throw std::runtime_error("min_distance: use smaller code (sweep over q^k infeasible)");
    return c.field.w == 1 ? sweep_binary(c.generator) : sweep_qary(c.generator);
}

LinearCode code_from_generator(const FieldMatrix& g, const std::string& construction) {
    if (mat_rank(g) != g.rows)
        throw std::invalid_argument("code_from_generator: generator not full rank");
    LinearCode c;
    c.field = g.field;
    c.n = g.cols;
    c.k = g.rows;
    c.generator = g;
    c.parity_check = mat_nullspace(g);
    c.construction = construction;

    // G H^T = 0 is checked at construction, always.
    FieldMatrix prod = mat_mul(c.generator, mat_transpose(c.parity_check));
    for (uint32_t v : prod.data)
        if (v) throw std::logic_error("code_from_generator: G H^T != 0");

    if (c.k > 0 && sweep_feasible(c.field, c.k))
        c.min_distance = c.field.w == 1 ? sweep_binary(c.generator) : sweep_qary(c.generator);
    if (c.n - c.k > 0 && sweep_feasible(c.field, c.n - c.k))
        c.dual_distance =
            c.field.w == 1 ? sweep_binary(c.parity_check) : sweep_qary(c.parity_check);
    return c;
}

LinearCode hamming_code(uint32_t h) {
    if (h < 2) throw std::invalid_argument("hamming_code: h must be >= 2");
    const FieldSpec f = gf(1);
    const size_t n = (1u << h) - 1;
    FieldMatrix hmat = mat_zero(f, h, n);
    for (size_t col = 0; col < n; ++col) {
        uint32_t v = static_cast<uint32_t>(col + 1);
        for (uint32_t row = 0; row < h; ++row)
            hmat.at(row, col) = (v >> (h - 1 - row)) & 1; // column reads as the binary string of col+1
    }
    FieldMatrix g = mat_nullspace(hmat);
    LinearCode c = code_from_generator(g, "hamming h=" + std::to_string(h));
    // keep the column-ordered parity check (same row space as the recomputed
    // nullspace basis, so G H^T = 0 still holds)
    FieldMatrix prod = mat_mul(c.generator, mat_transpose(hmat));
    for (uint32_t v : prod.data)
        if (v) throw std::logic_error("hamming_code: parity check mismatch");
    c.parity_check = hmat;
    return c;
}

LinearCode dual_code(const LinearCode& c) {
    FieldMatrix g = c.parity_check;
    mat_rref(g);
    if (g.rows == 0) {
        // dual of the full space: the [n, 0] zero code
        LinearCode z;
        z.field = c.field;
        z.n = c.n;
        z.k = 0;
        z.generator = mat_zero(c.field, 0, c.n);
        z.parity_check = mat_identity(c.field, c.n);
        z.construction = "dual of " + c.construction;
        return z;
    }
    return code_from_generator(g, "dual of " + c.construction);
}

LinearCode reed_solomon_code(const FieldSpec& field, size_t n, size_t k) {
    if (n > field.q()) throw std::invalid_argument("reed_solomon_code: n > q");
    if (k > n) throw std::invalid_argument("reed_solomon_code: k > n");
    std::vector<uint32_t> points;
    if (n == field.q()) points.push_back(0);
    uint32_t alpha = 2; // the polynomial-basis generator x
    uint32_t p = 1;
    while (points.size() < n) {
        points.push_back(p);
        p = gf_mul(field, p, alpha);
    }
    FieldMatrix g = mat_zero(field, k, n);
    for (size_t r = 0; r < k; ++r)
        for (size_t c = 0; c < n; ++c) g.at(r, c) = gf_pow(field, points[c], r);
    return code_from_generator(g, "rs n=" + std::to_string(n) + " k=" + std::to_string(k));
}

LinearCode reed_muller_code(uint32_t r, uint32_t m) {
    if (m < 1 || m > 5 || r > m) throw std::invalid_argument("reed_muller_code: bad parameters");
    const size_t n = 1u << m;
    const FieldSpec f = gf(1);
    // rows: monomials grouped by degree 0, 1, ..., r; within a degree,
    // variable subsets in increasing numeric order
    std::vector<uint32_t> monomials;
    for (uint32_t deg = 0; deg <= r; ++deg)
        for (uint32_t s = 0; s < n; ++s)
            if (static_cast<uint32_t>(std::popcount(s)) == deg) monomials.push_back(s);
    FieldMatrix g = mat_zero(f, monomials.size(), n);
    for (size_t row = 0; row < monomials.size(); ++row)
        for (size_t x = 0; x < n; ++x)
            g.at(row, x) = ((x & monomials[row]) == monomials[row]) ? 1 : 0;
    return code_from_generator(g, "rm r=" + std::to_string(r) + " m=" + std::to_string(m));
}

FieldVector CosetLabeler::label(const FieldVector& x) const { return mat_vec_mul(label_map, x); }

CosetLabeler make_coset_labeler(const LinearCode& c, const FieldMatrix& ghat) {
    FieldMatrix stacked = mat_stack(c.generator, ghat);
    if (stacked.rows != stacked.cols)
        throw std::invalid_argument("make_coset_labeler: [G; ghat] must be square");
    auto inv = mat_inverse(stacked);
    if (!inv) throw std::invalid_argument("make_coset_labeler: [G; ghat] not full rank");
    // x = [R m] [G; ghat]  =>  [R m] = x inv; keep the m columns.
    CosetLabeler lab;
    lab.label_map = mat_zero(c.field, c.n, ghat.rows);
    for (size_t r = 0; r < c.n; ++r)
        for (size_t j = 0; j < ghat.rows; ++j)
            lab.label_map.at(r, j) = inv->at(r, c.generator.rows + j);
    return lab;
}

FieldVector coset_syndrome_decode(const LinearCode& c, const FieldVector& x,
                                  const FieldMatrix& ghat) {
    if (x.size() != c.n) throw std::invalid_argument("coset_syndrome_decode: wrong length");
    return make_coset_labeler(c, ghat).label(x);
}

std::string code_to_text(const LinearCode& c) {
    std::ostringstream os;
    os << "code " << c.construction << " n=" << c.n << " k=" << c.k;
    if (c.min_distance) os << " d=" << *c.min_distance;
    if (c.dual_distance) os << " ddual=" << *c.dual_distance;
    os << "\n" << mat_to_text(c.generator);
    return os.str();
}

} // namespace nmcode
