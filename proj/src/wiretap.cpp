#include "nmcode/wiretap.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "nmcode/rng.hpp"

namespace nmcode {

namespace {

uint64_t pow_u64(uint64_t b, uint64_t e) {
    uint64_t acc = 1;
    while (e--) acc *= b;
    return acc;
}

uint64_t pack(const FieldVector& v, uint32_t w) {
    uint64_t out = 0;
    for (size_t i = 0; i < v.size(); ++i) out |= static_cast<uint64_t>(v[i]) << (i * w);
    return out;
}

FieldVector unpack_msg(const FieldSpec& f, uint64_t packed, size_t len) {
    FieldVector v = vec_zero(f, len);
    for (size_t i = 0; i < len; ++i) v[i] = static_cast<uint32_t>((packed >> (i * f.w)) & f.mask());
    return v;
}

// next k-combination of {0..n-1} in lexicographic order; false when done
bool next_combination(std::vector<uint32_t>& c, uint32_t n) {
    const size_t k = c.size();
    for (size_t i = k; i-- > 0;) {
        if (c[i] < n - (k - i)) {
            ++c[i];
            for (size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

CosetWtCode wt_build(const LinearCode& c, uint64_t seed) {
    if (c.n <= c.k)
        throw std::invalid_argument("wt_build: degenerate code, no message space (ell = 0)");
    if (!c.dual_distance)
        throw std::invalid_argument("wt_build: dual distance not computable for this size");
    CosetWtCode w;
    w.c = c;
    w.n = c.n;
    w.ell = c.n - c.k;
    FieldMatrix full = extend_to_full_rank(c.generator, w.ell, seed);
    w.ghat = mat_zero(c.field, w.ell, c.n);
    for (size_t r = 0; r < w.ell; ++r)
        for (size_t col = 0; col < c.n; ++col) w.ghat.at(r, col) = full.at(c.k + r, col);
    w.labeler = make_coset_labeler(c, w.ghat);
    w.rho = Rational(*c.dual_distance - 1, c.n);
    w.epsilon = Rational::zero();

    // Rate never exceeds 1 - rho: ell/n <= 1 - (ddual-1)/n.
    if (!(Rational(w.ell, w.n) <= Rational::abs_diff(Rational::one(), w.rho)))
        throw std::logic_error("wt_build: rate exceeds 1 - rho");
    return w;
}

FieldVector wt_encode(const CosetWtCode& w, const FieldVector& m, const FieldVector& big_r) {
    if (m.size() != w.ell || big_r.size() != w.n - w.ell)
        throw std::invalid_argument("wt_encode: length mismatch");
    FieldVector x = mat_vec_mul(w.c.generator, big_r);
    return vec_add(x, mat_vec_mul(w.ghat, m));
}

FieldVector wt_decode(const CosetWtCode& w, const FieldVector& x) {
    if (x.size() != w.n) throw std::invalid_argument("wt_decode: length mismatch");
    return w.labeler.label(x);
}

PrivacyReport wt_verify_privacy(const CosetWtCode& w, size_t max_set_size, bool collect_rows,
                                uint64_t monte_carlo_sets, uint64_t seed) {
    const FieldSpec f = w.c.field;
    const size_t rdim = w.n - w.ell;
    const uint64_t r_count = pow_u64(f.q(), rdim);
    const uint64_t msg_count = pow_u64(f.q(), w.ell);
    if (r_count > (1ull << 24) || msg_count > (1ull << 10))
        throw std::runtime_error(
            "wt_verify_privacy: enumeration infeasible; use the Monte Carlo mode");

    // All randomness-code codewords once; views are their projections plus a
    // per-message constant shift.
    std::vector<FieldVector> cws;
    cws.reserve(r_count);
    for (uint64_t ri = 0; ri < r_count; ++ri)
        cws.push_back(mat_vec_mul(w.c.generator, unpack_msg(f, ri, rdim)));

    PrivacyReport rep;
    rep.max_sd_by_size.assign(max_set_size, Rational::zero());
    rep.exact = monte_carlo_sets == 0;
    Rng set_rng = Rng(seed).child(0x777470);

    for (size_t s = 1; s <= max_set_size; ++s) {
        if (s > w.n) break;
        std::vector<uint32_t> set(s);
        for (size_t i = 0; i < s; ++i) set[i] = static_cast<uint32_t>(i);
        uint64_t sampled = 0;
        while (true) {
            if (monte_carlo_sets) {
                if (sampled++ >= monte_carlo_sets) break;
                set = set_rng.subset(static_cast<uint32_t>(w.n), static_cast<uint32_t>(s));
            }
            // view histogram of the zero message on this set
            std::map<uint64_t, uint64_t> base;
            for (const auto& cw : cws) {
                uint64_t key = 0;
                for (size_t j = 0; j < s; ++j)
                    key |= static_cast<uint64_t>(cw[set[j]]) << (j * f.w);
                ++base[key];
            }
            for (uint64_t ma = 0; ma < msg_count; ++ma) {
                FieldVector sha = mat_vec_mul(w.ghat, unpack_msg(f, ma, w.ell));
                uint64_t ka = 0;
                for (size_t j = 0; j < s; ++j)
                    ka |= static_cast<uint64_t>(sha[set[j]]) << (j * f.w);
                for (uint64_t mb = ma + 1; mb < msg_count; ++mb) {
                    FieldVector shb = mat_vec_mul(w.ghat, unpack_msg(f, mb, w.ell));
                    uint64_t kb = 0;
                    for (size_t j = 0; j < s; ++j)
                        kb |= static_cast<uint64_t>(shb[set[j]]) << (j * f.w);
                    // SD of the two shifted histograms: both are `base`
                    // translated by ka resp. kb, so compare base against its
                    // own translate by d = ka + kb. Keys present on one side
                    // only contribute twice (once per direction).
                    const uint64_t d = ka ^ kb;
                    uint64_t l1 = 0;
                    for (const auto& [key, cnt] : base) {
                        auto it = base.find(key ^ d);
                        if (it == base.end())
                            l1 += 2 * cnt;
                        else
                            l1 += cnt > it->second ? cnt - it->second : it->second - cnt;
                    }
                    Rational sd(l1, 2 * r_count);
                    if (rep.max_sd < sd || (rep.witness.set.empty() && sd == rep.max_sd)) {
                        rep.max_sd = sd;
                        rep.witness = PrivacyRow{set, ma, mb, sd};
                    }
                    if (rep.max_sd_by_size[s - 1] < sd) rep.max_sd_by_size[s - 1] = sd;
                    if (collect_rows) rep.rows.push_back(PrivacyRow{set, ma, mb, sd});
                }
            }
            if (!monte_carlo_sets && !next_combination(set, static_cast<uint32_t>(w.n))) break;
        }
    }
    return rep;
}

std::string privacy_report_csv(const PrivacyReport& rep) {
    std::ostringstream os;
    os << "set,m0,m1,sd\n";
    for (const auto& row : rep.rows) {
        for (size_t i = 0; i < row.set.size(); ++i) os << (i ? " " : "") << row.set[i];
        os << "," << row.m0 << "," << row.m1 << "," << row.sd.str() << "\n";
    }
    return os.str();
}

std::string wt_to_text(const CosetWtCode& w) {
    std::ostringstream os;
    os << "wiretap coset ell=" << w.ell << " rho=" << w.rho.str() << "\n";
    os << code_to_text(w.c);
    os << "ghat\n" << mat_to_text(w.ghat);
    return os.str();
}

} // namespace nmcode
