#include "nmcode/lecss.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "nmcode/rng.hpp"

namespace nmcode {

namespace {

std::vector<uint64_t> pack_rows(const FieldMatrix& m) {
    std::vector<uint64_t> rows(m.rows, 0);
    for (size_t r = 0; r < m.rows; ++r)
        for (size_t c = 0; c < m.cols; ++c)
            if (m.at(r, c)) rows[r] |= 1ull << c;
    return rows;
}

uint64_t apply_rows(const std::vector<uint64_t>& rows, uint64_t coeffs) {
    uint64_t acc = 0;
    while (coeffs) {
        int i = std::countr_zero(coeffs);
        acc ^= rows[i];
        coeffs &= coeffs - 1;
    }
    return acc;
}

} // namespace

LecssCode lecss_from_generator(const FieldMatrix& stacked, size_t ell, size_t r) {
    if (stacked.field.w != 1) throw std::invalid_argument("lecss: binary only");
    if (stacked.rows != ell + r) throw std::invalid_argument("lecss: row count mismatch");
    if (ell + r > stacked.cols) throw std::invalid_argument("lecss: ell + r > n");
    if (ell + r > 24) throw std::invalid_argument("lecss: 2^(ell+r) not enumerable");
    if (stacked.cols > 64) throw std::invalid_argument("lecss: n > 64");

    LecssCode l;
    l.outer = code_from_generator(stacked, "lecss");
    l.ell = ell;
    l.r = r;

    // coset label map: extend the stacked generator to an invertible square
    // matrix, then read the message coordinates off the inverse
    FieldMatrix full = extend_to_full_rank(stacked, stacked.cols - stacked.rows, 0x6c6373);
    auto inv = mat_inverse(full);
    if (!inv) throw std::logic_error("lecss: extension not invertible");
    l.label_map = mat_zero(stacked.field, stacked.cols, ell);
    for (size_t row = 0; row < stacked.cols; ++row)
        for (size_t j = 0; j < ell; ++j) l.label_map.at(row, j) = inv->at(row, r + j);

    LecssVerification v = lecss_verify(l);
    l.d = v.d;
    l.t = v.t;
    l.t_matches_dual_distance = v.t_matches_dual_distance;
    return l;
}

LecssCode lecss_build_random(size_t n, size_t ell, size_t r, uint64_t seed) {
    if (ell + r > n) throw std::invalid_argument("lecss_build_random: ell + r > n");
    Rng rng = Rng(seed).child(0x6c656373); // "lecs"
    const FieldSpec f = gf(1);
    for (int attempt = 0; attempt < 256; ++attempt) {
        FieldMatrix g = mat_zero(f, ell + r, n);
        for (auto& v : g.data) v = static_cast<uint32_t>(rng.coin());
        if (mat_rank(g) != g.rows) continue;
        return lecss_from_generator(g, ell, r);
    }
    throw std::runtime_error("lecss_build_random: rank failure after bounded retries");
}

uint64_t lecss_encode(const LecssCode& l, uint64_t m, uint64_t big_r) {
    if (l.ell < 64 && (m >> l.ell) != 0) throw std::invalid_argument("lecss_encode: bad message");
    if (l.r < 64 && (big_r >> l.r) != 0) throw std::invalid_argument("lecss_encode: bad randomness");
    auto rows = pack_rows(l.outer.generator);
    return apply_rows(rows, big_r | (m << l.r)); // [R m] ordering: subcode rows first
}

std::optional<uint64_t> lecss_decode(const LecssCode& l, uint64_t x) {
    // membership in Cbar via the parity check
    auto hrows = pack_rows(l.outer.parity_check);
    for (uint64_t h : hrows)
        if (std::popcount(x & h) & 1) return std::nullopt;
    auto cols = pack_rows(mat_transpose(l.label_map));
    uint64_t m = 0;
    for (size_t j = 0; j < l.ell; ++j)
        m |= static_cast<uint64_t>(std::popcount(x & cols[j]) & 1) << j;
    return m;
}

LecssVerification lecss_verify(const LecssCode& l) {
    LecssVerification v;
    v.d = l.outer.min_distance ? *l.outer.min_distance
                               : min_distance(l.outer); // throws when infeasible

    // t-uniformity, verified directly on the codeword ensemble of the zero
    // message (every other message's ensemble is a constant shift of it, and
    // shifts preserve projection uniformity).
    const size_t n = l.n();
    if (l.r == 0) {
        v.t = 0;
        return v;
    }
    FieldMatrix sub = mat_zero(l.outer.field, l.r, n);
    for (size_t row = 0; row < l.r; ++row)
        for (size_t c = 0; c < n; ++c) sub.at(row, c) = l.outer.generator.at(row, c);
    auto rows = pack_rows(sub);
    std::vector<uint64_t> cws(1ull << l.r);
    for (uint64_t ri = 0; ri < cws.size(); ++ri) cws[ri] = apply_rows(rows, ri);

    size_t t = 0;
    for (size_t tau = 1; tau <= l.r && tau <= n; ++tau) {
        std::vector<uint32_t> set(tau);
        for (size_t i = 0; i < tau; ++i) set[i] = static_cast<uint32_t>(i);
        bool all_uniform = true;
        while (all_uniform) {
            std::vector<uint64_t> counts(1ull << tau, 0);
            for (uint64_t cw : cws) {
                uint64_t key = 0;
                for (size_t j = 0; j < tau; ++j) key |= ((cw >> set[j]) & 1) << j;
                ++counts[key];
            }
            const uint64_t expect = cws.size() >> tau;
            for (uint64_t c : counts)
                if (c != expect) {
                    all_uniform = false;
                    break;
                }
            // advance lexicographic combination
            size_t i = tau;
            bool more = false;
            while (i-- > 0) {
                if (set[i] < n - (tau - i)) {
                    ++set[i];
                    for (size_t j = i + 1; j < tau; ++j) set[j] = set[j - 1] + 1;
                    more = true;
                    break;
                }
            }
            if (!more) break;
        }
        if (!all_uniform) break;
        t = tau;
    }
    v.t = t;

    // cross-oracle: t should equal the dual distance of the subcode minus one
    LinearCode subcode = code_from_generator(sub, "lecss subcode");
    if (subcode.dual_distance) v.t_matches_dual_distance = (v.t == *subcode.dual_distance - 1);
    return v;
}

std::string lecss_to_text(const LecssCode& l) {
    std::ostringstream os;
    os << "lecss ell=" << l.ell << " r=" << l.r << "\n";
    os << mat_to_text(l.outer.generator);
    os << "(d,t) verified: d=" << l.d << " t=" << l.t << "\n";
    return os.str();
}

} // namespace nmcode
