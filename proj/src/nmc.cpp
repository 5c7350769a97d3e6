#include "nmcode/nmc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nmcode {

namespace {

uint64_t word_mask(size_t n) { return n >= 64 ? ~0ull : (1ull << n) - 1; }

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
        acc ^= rows[std::countr_zero(coeffs)];
        coeffs &= coeffs - 1;
    }
    return acc;
}

uint64_t parity_fold(uint64_t x) { return std::popcount(x) & 1; }

// Byte-sliced linear map {0,1}^n -> {0,1}^l given the n-bit column masks of
// each output bit.
struct LinearMap {
    size_t nbytes = 0;
    std::vector<std::array<uint32_t, 256>> tab;

    static LinearMap build(const std::vector<uint64_t>& cols, size_t n) {
        LinearMap lm;
        lm.nbytes = (n + 7) / 8;
        lm.tab.assign(lm.nbytes, {});
        for (size_t b = 0; b < lm.nbytes; ++b)
            for (uint32_t v = 0; v < 256; ++v) {
                uint64_t word = static_cast<uint64_t>(v) << (8 * b);
                uint32_t acc = 0;
                for (size_t j = 0; j < cols.size(); ++j)
                    acc |= static_cast<uint32_t>(parity_fold(word & cols[j])) << j;
                lm.tab[b][v] = acc;
            }
        return lm;
    }
    uint32_t apply(uint64_t x) const {
        uint32_t acc = 0;
        for (size_t b = 0; b < nbytes; ++b) acc ^= tab[b][(x >> (8 * b)) & 0xff];
        return acc;
    }
};

// Everything the hot loops need, precomputed once per code.
struct Kernel {
    size_t n = 0, ell = 0, rdim = 0, k = 0;
    std::vector<uint64_t> rand_rows; // outer randomness rows
    std::vector<uint64_t> msg_rows;  // rows carrying the inner codeword
    LinearMap label;                 // codeword -> inner word (valid on the code)
    bool has_membership = false;     // construction 1 rejects words outside Cbar
    LinearMap syndrome;
    std::vector<Outcome> inner_out;  // inner word -> outcome

    Outcome decode(uint64_t x) const {
        if (has_membership && syndrome.apply(x) != 0) return Outcome::bot();
        return inner_out[label.apply(x)];
    }
};

Kernel build_kernel(const NmCode& code) {
    Kernel kn;
    kn.n = code.n;
    kn.k = code.k;
    if (code.construction == 2) {
        kn.ell = code.wt.ell;
        kn.rdim = code.n - code.wt.ell;
        kn.rand_rows = pack_rows(code.wt.c.generator);
        kn.msg_rows = pack_rows(code.wt.ghat);
        kn.label = LinearMap::build(pack_rows(mat_transpose(code.wt.labeler.label_map)), code.n);
    } else {
        kn.ell = code.lecss.ell;
        kn.rdim = code.lecss.r;
        auto all = pack_rows(code.lecss.outer.generator);
        kn.rand_rows.assign(all.begin(), all.begin() + kn.rdim);
        kn.msg_rows.assign(all.begin() + kn.rdim, all.end());
        kn.label = LinearMap::build(pack_rows(mat_transpose(code.lecss.label_map)), code.n);
        kn.has_membership = true;
        kn.syndrome = LinearMap::build(pack_rows(code.lecss.outer.parity_check), code.n);
    }
    kn.inner_out.resize(1ull << kn.ell);
    for (uint64_t w = 0; w < kn.inner_out.size(); ++w) {
        auto dec = amd_decode(code.amd, w);
        kn.inner_out[w] = dec ? Outcome::message(*dec) : Outcome::bot();
    }
    return kn;
}

// Per-read-value tampering masks: apply(x) = ((x & keep) | set1) ^ flip.
struct CompiledTamper {
    std::vector<uint32_t> read_pos;
    struct Row {
        uint64_t and_m, or_m, xor_m;
        size_t overwrites_outside_read; // n_ow over the complement of S_r
    };
    std::vector<Row> rows;

    uint64_t alpha(uint64_t x) const {
        uint64_t a = 0;
        for (size_t j = 0; j < read_pos.size(); ++j) a |= ((x >> read_pos[j]) & 1) << j;
        return a;
    }
    uint64_t apply(uint64_t x, uint64_t a) const {
        const Row& r = rows[a];
        return ((x & r.and_m) | r.or_m) ^ r.xor_m;
    }
};

CompiledTamper compile_tamper(const TamperFunction& f) {
    validate(f);
    CompiledTamper ct;
    ct.read_pos = f.s_read;
    uint64_t in_read = 0;
    for (uint32_t i : f.s_read) in_read |= 1ull << i;
    const uint64_t full = word_mask(f.n);
    ct.rows.resize(f.table.size());
    for (uint64_t a = 0; a < f.table.size(); ++a) {
        auto acts = action_vector(f, a);
        CompiledTamper::Row row{full, 0, 0, 0};
        for (size_t i = 0; i < f.n; ++i) {
            const uint64_t bit = 1ull << i;
            switch (acts[i]) {
            case BitAction::Set0: row.and_m &= ~bit; break;
            case BitAction::Set1:
                row.and_m &= ~bit;
                row.or_m |= bit;
                break;
            case BitAction::Keep: break;
            case BitAction::Flip: row.xor_m |= bit; break;
            }
            if ((acts[i] == BitAction::Set0 || acts[i] == BitAction::Set1) && !(in_read & bit))
                ++row.overwrites_outside_read;
        }
        ct.rows[a] = row;
    }
    return ct;
}

uint64_t apply_bit_action(BitAction a, uint64_t bit) {
    switch (a) {
    case BitAction::Set0: return 0;
    case BitAction::Set1: return 1;
    case BitAction::Keep: return bit;
    default: return bit ^ 1;
    }
}

size_t outcome_index(const Outcome& o) {
    switch (o.tag) {
    case Outcome::Tag::Bot: return 0;
    case Outcome::Tag::SameStar: return 1;
    default: return 2 + o.msg;
    }
}

OutcomeDistribution from_counters(const std::vector<uint64_t>& counters, uint64_t total,
                                  OutcomeDistribution::Mode mode) {
    OutcomeDistribution d;
    d.mode = mode;
    d.total = total;
    if (counters[0]) d.counts[Outcome::bot()] = counters[0];
    if (counters[1]) d.counts[Outcome::same_star()] = counters[1];
    for (size_t i = 2; i < counters.size(); ++i)
        if (counters[i]) d.counts[Outcome::message(i - 2)] = counters[i];
    return d;
}

uint64_t gray(uint64_t i) { return i ^ (i >> 1); }

std::string hex_digest(uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

} // namespace

size_t resolve_threads(size_t requested) {
    if (requested) return requested;
    if (const char* env = std::getenv("NMCODE_THREADS")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<size_t>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

NmCode make_construction2(const CosetWtCode& wt, const AmdCode& amd, size_t read_budget,
                          size_t write_budget) {
    if (wt.c.field.w != 1) throw std::invalid_argument("make_construction2: binary codes only");
    if (wt.ell != amd.codeword_bits())
        throw std::invalid_argument(
            "make_construction2: AMD output length must equal the wiretap message length");
    NmCode code;
    code.construction = 2;
    code.amd = amd;
    code.wt = wt;
    code.k = amd.k;
    code.n = wt.n;
    code.inner_randomness_bits = wt.n - wt.ell;
    code.claimed_security = wt.epsilon + wt.epsilon + amd.delta;
    code.claimed_security_value = code.claimed_security.value();

    Regime reg;
    reg.read_budget = read_budget;
    reg.write_budget = write_budget;
    // rho >= (1 + rho_r)/2
    reg.within_primary = Rational(code.n + read_budget, 2 * code.n) <= wt.rho;
    // rho_w < (1 - rho_r)/2 and rho >= rho_r + rho_w
    reg.within_small_write = (2 * write_budget < code.n - read_budget) &&
                             Rational(read_budget + write_budget, code.n) <= wt.rho;
    reg.guaranteed = reg.within_primary || reg.within_small_write;
    std::ostringstream os;
    os << "c2 rho=" << wt.rho.str() << " rho_r=" << read_budget << "/" << code.n
       << " rho_w=" << write_budget << "/" << code.n
       << (reg.within_primary ? " [rho >= (1+rho_r)/2]"
           : reg.within_small_write ? " [rho >= rho_r+rho_w, small write]"
                                    : " [bound not guaranteed]");
    reg.description = os.str();
    code.regime = reg;
    return code;
}

NmCode make_construction1(const LecssCode& lecss, const AmdCode& amd, size_t read_budget,
                          size_t write_budget) {
    if (lecss.ell != amd.codeword_bits())
        throw std::invalid_argument(
            "make_construction1: AMD output length must equal the LECSS message length");
    NmCode code;
    code.construction = 1;
    code.amd = amd;
    code.lecss = lecss;
    code.k = amd.k;
    code.n = lecss.n();
    code.inner_randomness_bits = lecss.r;
    code.claimed_security = amd.delta;
    code.claimed_security_value =
        std::max(amd.delta.value(), c1_case_bound(code.n, lecss.t, lecss.d, read_budget));

    Regime reg;
    reg.read_budget = read_budget;
    reg.write_budget = write_budget;
    const bool t_ok = lecss.t > read_budget;
    reg.within_primary = t_ok && 4 * lecss.d > code.n - read_budget;
    reg.within_small_write =
        t_ok && (2 * write_budget < code.n - read_budget) && (2 * lecss.d > write_budget);
    reg.guaranteed = reg.within_primary || reg.within_small_write;
    std::ostringstream os;
    os << "c1 t=" << lecss.t << " d=" << lecss.d << " rho_r=" << read_budget << "/" << code.n
       << " rho_w=" << write_budget << "/" << code.n
       << (reg.within_primary ? " [t > nr, d > n(1-rho_r)/4]"
           : reg.within_small_write ? " [t > nr, d > n rho_w/2, small write]"
                                    : " [bound not guaranteed]");
    reg.description = os.str();
    code.regime = reg;
    return code;
}

NmCode make_hamming_family(uint32_t h, size_t read_budget, size_t write_budget, uint64_t seed) {
    if (h < 3) throw std::invalid_argument("make_hamming_family: h must be >= 3");
    CosetWtCode wt = wt_build(hamming_code(h), seed);
    const uint32_t u = (h - 1) / 2;
    const uint32_t k = h - 2 * u;
    return make_construction2(wt, make_amd(k, u), read_budget, write_budget);
}

uint64_t nm_encode(const NmCode& code, uint64_t m, uint32_t r_amd, uint64_t big_r) {
    if (code.k < 64 && (m >> code.k)) throw std::invalid_argument("nm_encode: message out of range");
    if (big_r >> code.inner_randomness_bits)
        throw std::invalid_argument("nm_encode: randomness out of range");
    const uint64_t inner = amd_encode(code.amd, m, r_amd);
    if (code.construction == 2) {
        auto g = pack_rows(code.wt.c.generator);
        auto gh = pack_rows(code.wt.ghat);
        return apply_rows(g, big_r) ^ apply_rows(gh, inner);
    }
    return lecss_encode(code.lecss, inner, big_r);
}

Outcome nm_decode(const NmCode& code, uint64_t x) {
    if (x >> code.n) throw std::invalid_argument("nm_decode: word out of range");
    uint64_t inner;
    if (code.construction == 2) {
        auto cols = pack_rows(mat_transpose(code.wt.labeler.label_map));
        inner = 0;
        for (size_t j = 0; j < cols.size(); ++j) inner |= parity_fold(x & cols[j]) << j;
    } else {
        auto dec = lecss_decode(code.lecss, x);
        if (!dec) return Outcome::bot();
        inner = *dec;
    }
    auto dec = amd_decode(code.amd, inner);
    return dec ? Outcome::message(*dec) : Outcome::bot();
}

BitScheme to_bit_scheme(const NmCode& code) {
    BitScheme s;
    s.k = code.k;
    s.n = code.n;
    s.randomness = code.randomness_count();
    const uint32_t u = code.amd.u;
    auto kn = std::make_shared<Kernel>(build_kernel(code));
    AmdCode amd = code.amd;
    s.encode = [kn, amd, u](uint64_t m, uint64_t r) {
        const uint64_t inner = amd_encode(amd, m, static_cast<uint32_t>(r & ((1ull << u) - 1)));
        return apply_rows(kn->rand_rows, r >> u) ^ apply_rows(kn->msg_rows, inner);
    };
    s.decode = [kn](uint64_t x) { return kn->decode(x); };
    return s;
}

namespace {

OutcomeDistribution run_experiment(const BitScheme& scheme, const TamperFunction& f, uint64_t m,
                                   const ExperimentOptions& opt, bool strong) {
    validate(f);
    if (f.n != scheme.n) throw std::invalid_argument("experiment: length mismatch");
    if (scheme.k < 64 && (m >> scheme.k)) throw std::invalid_argument("experiment: bad message");
    OutcomeDistribution dist;
    if (!opt.monte_carlo) {
        if (scheme.randomness > (1ull << 26))
            throw std::runtime_error("experiment: randomness space too large for exact "
                                     "enumeration; use the Monte Carlo mode");
        dist.mode = OutcomeDistribution::Mode::Exact;
        for (uint64_t r = 0; r < scheme.randomness; ++r) {
            uint64_t x = scheme.encode(m, r);
            uint64_t tx = tamper_apply(f, x);
            if (strong && tx == x)
                dist.add(Outcome::same_star());
            else
                dist.add(scheme.decode(tx));
        }
    } else {
        if (opt.samples == 0) throw std::invalid_argument("experiment: samples required");
        dist.mode = OutcomeDistribution::Mode::Empirical;
        Rng rng = Rng(opt.seed).child(0x657870); // "exp"
        for (uint64_t i = 0; i < opt.samples; ++i) {
            uint64_t r = rng.below(scheme.randomness);
            uint64_t x = scheme.encode(m, r);
            uint64_t tx = tamper_apply(f, x);
            if (strong && tx == x)
                dist.add(Outcome::same_star());
            else
                dist.add(scheme.decode(tx));
        }
    }
    return dist;
}

} // namespace

OutcomeDistribution tamper_experiment(const BitScheme& scheme, const TamperFunction& f, uint64_t m,
                                      const ExperimentOptions& opt) {
    return run_experiment(scheme, f, m, opt, false);
}

OutcomeDistribution strong_experiment(const BitScheme& scheme, const TamperFunction& f, uint64_t m,
                                      const ExperimentOptions& opt) {
    return run_experiment(scheme, f, m, opt, true);
}

OutcomeDistribution simulator_c2(const NmCode& code, const TamperFunction& f) {
    if (code.construction != 2) throw std::invalid_argument("simulator_c2: wrong construction");
    if (f.n != code.n) throw std::invalid_argument("simulator_c2: length mismatch");
    const Kernel kn = build_kernel(code);
    const CompiledTamper ct = compile_tamper(f);

    // case 1 iff at most half of the unread positions are overwritten
    std::vector<bool> case1(ct.rows.size());
    const size_t unread = code.n - f.s_read.size();
    for (uint64_t a = 0; a < ct.rows.size(); ++a)
        case1[a] = 2 * ct.rows[a].overwrites_outside_read <= unread;

    std::vector<uint64_t> counters(2 + (1ull << code.k), 0);
    const uint64_t total = 1ull << kn.rdim;
    uint64_t y = 0; // WTenc(0) at R = 0
    for (uint64_t i = 0;; ++i) {
        const uint64_t a = ct.alpha(y);
        const uint64_t ty = ct.apply(y, a);
        if (case1[a]) {
            // same* iff the difference word lies in the randomness code,
            // i.e. the tampered word still decodes to the same inner word
            ++counters[kn.label.apply(ty ^ y) == 0 ? 1 : 0];
        } else {
            ++counters[outcome_index(kn.decode(ty))];
        }
        if (i + 1 == total) break;
        y ^= kn.rand_rows[std::countr_zero(i + 1)];
    }
    return from_counters(counters, total, OutcomeDistribution::Mode::Exact);
}

OutcomeDistribution simulator_c1(const NmCode& code, const TamperFunction& f) {
    if (code.construction != 1) throw std::invalid_argument("simulator_c1: wrong construction");
    if (f.n != code.n) throw std::invalid_argument("simulator_c1: length mismatch");
    const size_t sr = f.s_read.size();
    const size_t t = code.lecss.t;
    if (t <= sr) throw std::invalid_argument("simulator_c1: outside regime (t <= |S_r|)");
    const size_t tau = t - sr;
    const size_t unread = code.n - sr;
    const size_t d_bound = code.n - t; // case-4 threshold

    struct Sub {
        std::vector<uint64_t> counters;
        size_t log2_total;
    };
    std::vector<Sub> subs;
    size_t max_log = 0;

    for (uint64_t a = 0; a < (1ull << sr); ++a) {
        auto acts = action_vector(f, a);
        uint64_t in_read = 0;
        for (uint32_t i : f.s_read) in_read |= 1ull << i;
        size_t n_ow = 0;
        for (size_t i = 0; i < code.n; ++i)
            if (!((in_read >> i) & 1) &&
                (acts[i] == BitAction::Set0 || acts[i] == BitAction::Set1))
                ++n_ow;

        Sub sub;
        sub.counters.assign(2 + (1ull << code.k), 0);
        if (n_ow <= tau) {
            // case 1: same* iff the difference word decodes to the zero label
            uint64_t base = 0;
            std::vector<uint32_t> free_pos;
            for (size_t i = 0; i < code.n; ++i) {
                const bool read_i = (in_read >> i) & 1;
                BitAction da = difference_action(acts[i]);
                if (read_i) {
                    uint64_t xi = 0;
                    for (size_t j = 0; j < sr; ++j)
                        if (f.s_read[j] == i) xi = (a >> j) & 1;
                    base |= apply_bit_action(da, xi) << i;
                } else if (da == BitAction::Set0 || da == BitAction::Set1) {
                    base |= apply_bit_action(da, 0) << i;
                } else {
                    free_pos.push_back(static_cast<uint32_t>(i)); // tracks a uniform bit
                }
            }
            sub.log2_total = free_pos.size();
            for (uint64_t u = 0; u < (1ull << free_pos.size()); ++u) {
                uint64_t z = base;
                for (size_t j = 0; j < free_pos.size(); ++j)
                    z |= ((u >> j) & 1) << free_pos[j];
                auto dec = lecss_decode(code.lecss, z);
                ++sub.counters[(dec && *dec == 0) ? 1 : 0];
            }
        } else if (2 * n_ow <= unread || n_ow < d_bound) {
            // cases 2 and 3: detection; point mass on bot
            sub.log2_total = 0;
            sub.counters[0] = 1;
        } else {
            // case 4: decode of the tampered word, message-independent
            uint64_t base = 0;
            std::vector<uint32_t> free_pos;
            for (size_t i = 0; i < code.n; ++i) {
                const bool read_i = (in_read >> i) & 1;
                if (read_i) {
                    uint64_t xi = 0;
                    for (size_t j = 0; j < sr; ++j)
                        if (f.s_read[j] == i) xi = (a >> j) & 1;
                    base |= apply_bit_action(acts[i], xi) << i;
                } else if (acts[i] == BitAction::Set0 || acts[i] == BitAction::Set1) {
                    base |= apply_bit_action(acts[i], 0) << i;
                } else {
                    free_pos.push_back(static_cast<uint32_t>(i));
                }
            }
            sub.log2_total = free_pos.size();
            for (uint64_t u = 0; u < (1ull << free_pos.size()); ++u) {
                uint64_t x = base;
                for (size_t j = 0; j < free_pos.size(); ++j) {
                    uint64_t bit = (u >> j) & 1;
                    // Keep and Flip of a uniform bit are both uniform
                    x |= bit << free_pos[j];
                }
                ++sub.counters[outcome_index(nm_decode(code, x))];
            }
        }
        max_log = std::max(max_log, sub.log2_total);
        subs.push_back(std::move(sub));
    }

    // average over read values with uniform weight 1/2^{|S_r|}
    std::vector<uint64_t> merged(2 + (1ull << code.k), 0);
    for (const auto& sub : subs) {
        const uint64_t scale = 1ull << (max_log - sub.log2_total);
        for (size_t i = 0; i < merged.size(); ++i) merged[i] += sub.counters[i] * scale;
    }
    return from_counters(merged, (1ull << sr) << max_log, OutcomeDistribution::Mode::Exact);
}

OutcomeDistribution simulate(const NmCode& code, const TamperFunction& f) {
    return code.construction == 2 ? simulator_c2(code, f) : simulator_c1(code, f);
}

OutcomeDistribution tamper_experiment_fast(const NmCode& code, const TamperFunction& f, uint64_t m,
                                           size_t threads) {
    validate(f);
    if (f.n != code.n) throw std::invalid_argument("tamper_experiment_fast: length mismatch");
    const Kernel kn = build_kernel(code);
    const CompiledTamper ct = compile_tamper(f);
    const uint64_t r_total = 1ull << kn.rdim;
    const uint32_t amd_q = code.amd.tag_field.q();

    const size_t nthreads = std::min<size_t>(resolve_threads(threads), 8);
    std::vector<std::vector<uint64_t>> all_counters(nthreads);
    auto work = [&](size_t ti) {
        std::vector<uint64_t>& counters = all_counters[ti];
        counters.assign(2 + (1ull << code.k), 0);
        const uint64_t lo = r_total * ti / nthreads;
        const uint64_t hi = r_total * (ti + 1) / nthreads;
        if (lo == hi) return;
        for (uint32_t r_amd = 0; r_amd < amd_q; ++r_amd) {
            const uint64_t base = apply_rows(kn.msg_rows, amd_encode(code.amd, m, r_amd));
            uint64_t c = apply_rows(kn.rand_rows, gray(lo));
            for (uint64_t i = lo;; ++i) {
                const uint64_t x = c ^ base;
                const uint64_t tx = ct.apply(x, ct.alpha(x));
                ++counters[outcome_index(kn.decode(tx))];
                if (i + 1 == hi) break;
                c ^= kn.rand_rows[std::countr_zero(i + 1)];
            }
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (size_t ti = 0; ti < nthreads; ++ti) pool.emplace_back(work, ti);
        for (auto& th : pool) th.join();
    }
    std::vector<uint64_t> merged(2 + (1ull << code.k), 0);
    for (const auto& cnt : all_counters)
        for (size_t i = 0; i < cnt.size() && i < merged.size(); ++i) merged[i] += cnt[i];
    return from_counters(merged, r_total * amd_q, OutcomeDistribution::Mode::Exact);
}

std::vector<C1CaseMass> c1_case_masses(const NmCode& code, const TamperFunction& f) {
    if (code.construction != 1) throw std::invalid_argument("c1_case_masses: construction 1 only");
    validate(f);
    const size_t sr = f.s_read.size();
    const size_t t = code.lecss.t;
    if (t <= sr) throw std::invalid_argument("c1_case_masses: outside regime (t <= |S_r|)");
    const size_t tau = t - sr;
    const size_t unread = code.n - sr;
    uint64_t in_read = 0;
    for (uint32_t i : f.s_read) in_read |= 1ull << i;

    std::vector<C1CaseMass> out;
    for (uint64_t a = 0; a < (1ull << sr); ++a) {
        auto acts = action_vector(f, a);
        size_t n_ow = 0;
        for (size_t i = 0; i < code.n; ++i)
            if (!((in_read >> i) & 1) &&
                (acts[i] == BitAction::Set0 || acts[i] == BitAction::Set1))
                ++n_ow;
        int case_id;
        if (n_ow <= tau)
            case_id = 1;
        else if (2 * n_ow <= unread)
            case_id = 2;
        else if (n_ow < code.n - t)
            case_id = 3;
        else
            case_id = 4;
        if (case_id != 2 && case_id != 3) continue;

        // masks for the word whose decodability is the failure event
        std::vector<BitAction> probe = acts;
        if (case_id == 2)
            for (auto& act : probe) act = difference_action(act);
        for (uint64_t m = 0; m < (1ull << code.k); ++m) {
            uint64_t hit = 0, bucket = 0;
            for (uint32_t r_amd = 0; r_amd < code.amd.tag_field.q(); ++r_amd)
                for (uint64_t br = 0; br < (1ull << code.inner_randomness_bits); ++br) {
                    uint64_t x = nm_encode(code, m, r_amd, br);
                    if (read_value(f, x) != a) continue;
                    ++bucket;
                    uint64_t z = 0;
                    for (size_t i = 0; i < code.n; ++i)
                        z |= apply_bit_action(probe[i], (x >> i) & 1) << i;
                    if (lecss_decode(code.lecss, z)) ++hit;
                }
            if (bucket)
                out.push_back(C1CaseMass{a, case_id, m, Rational(hit, bucket)});
        }
    }
    return out;
}

double c1_case_bound(size_t n, size_t t, size_t d, size_t read_size) {
    if (t <= read_size) return HUGE_VAL;
    const long double tau = static_cast<long double>(t - read_size);
    const long double nn = static_cast<long double>(n);
    const long double base =
        static_cast<long double>(d) / nn - (1.0L - static_cast<long double>(read_size) / nn) / 4.0L;
    long double term1 = exp2l(-tau);
    if (base <= 0) return HUGE_VAL;
    long double term2 = powl(tau / (nn * base * base), tau / 2.0L);
    return static_cast<double>(term1 + term2);
}

AuditReport nm_security_audit(const NmCode& code, const AuditOptions& opt) {
    AuditReport rep;
    {
        std::ostringstream os;
        os << "construction " << code.construction << " k=" << code.k << " n=" << code.n
           << " amd(k=" << code.amd.k << ",u=" << code.amd.u << ")";
        rep.code_params = os.str();
    }
    rep.regime = code.regime;
    rep.claimed_bound = code.construction == 2 ? code.claimed_security.value()
                                               : code.claimed_security_value;
    rep.claimed_bound_fraction = code.claimed_security.str();
    rep.mode = opt.monte_carlo ? "montecarlo" : "exact";
    rep.seed = opt.seed;
    rep.samples = opt.monte_carlo ? opt.samples : 0;
    if (!code.regime.guaranteed)
        rep.notes.push_back("bound not guaranteed for the declared budgets");

    Rng root = Rng(opt.seed).child(0x6175646974); // "audit"
    Rational worst;
    const uint64_t msg_count = 1ull << code.k;
    BitScheme slow = to_bit_scheme(code);

    for (uint64_t i = 0; i < opt.adversaries; ++i) {
        TamperFunction f = tamper_sample_sizes(code.n, code.regime.read_budget,
                                               code.regime.write_budget, opt.sample_mode,
                                               root.child(i).next());
        AdversaryAudit aa;
        aa.f_digest = hex_digest(tamper_digest(f));
        Rational adv_worst;
        std::string df_bytes;
        for (uint64_t m = 0; m < msg_count; ++m) {
            // the simulator is rebuilt per message and must not depend on it
            OutcomeDistribution df = simulate(code, f);
            if (m == 0)
                df_bytes = df.bytes();
            else if (df.bytes() != df_bytes)
                rep.simulator_message_independent = false;

            OutcomeDistribution tm;
            if (!opt.monte_carlo) {
                tm = tamper_experiment_fast(code, f, m, opt.threads);
            } else {
                ExperimentOptions eo;
                eo.monte_carlo = true;
                eo.samples = opt.samples;
                eo.seed = root.child(i).child(m + 1).next();
                tm = tamper_experiment(slow, f, m, eo);
                aa.half_width = std::max(aa.half_width, sd_half_width(tm));
            }
            Rational sd = statistical_distance(tm, patch(df, m), opt.monte_carlo);
            if (adv_worst < sd) {
                adv_worst = sd;
                aa.worst_m = m;
            }
        }
        aa.max_sd = adv_worst.value();
        aa.max_sd_fraction = adv_worst.str();
        rep.per_adversary.push_back(aa);
        if (worst < adv_worst) {
            worst = adv_worst;
            rep.max_sd = adv_worst.value();
            rep.max_sd_fraction = adv_worst.str();
        }
    }
    double slack = 0.0;
    for (const auto& aa : rep.per_adversary) slack = std::max(slack, aa.half_width);
    rep.bound_respected = rep.max_sd <= rep.claimed_bound + slack;
    if (!rep.simulator_message_independent)
        rep.notes.push_back("simulator distribution varied across messages");
    return rep;
}

BoundsVerdict capacity_bound(double rho_r, double rho_w) {
    if (rho_r < 0 || rho_r > 1 || rho_w < 0 || rho_w > 1)
        throw std::invalid_argument("capacity_bound: parameters must lie in [0,1]");
    BoundsVerdict v;
    v.value = 1.0 - rho_r;
    v.fraction = "1 - rho_r";
    if (rho_r <= rho_w) {
        v.verdict = "capacity (upper and lower bounds match)";
        v.guaranteed = true;
    } else {
        v.verdict = "achievable rate; upper bound unknown for rho_r > rho_w";
        v.guaranteed = false;
    }
    return v;
}

BoundsVerdict c2_security_bound(const Rational& epsilon, const Rational& delta) {
    BoundsVerdict v;
    Rational b = epsilon + epsilon + delta;
    v.value = b.value();
    v.fraction = b.str();
    v.verdict = "2 epsilon + delta";
    return v;
}

BoundsVerdict c1_security_bound(size_t n, size_t t, size_t d, size_t read_size,
                                const Rational& delta) {
    BoundsVerdict v;
    double expr = c1_case_bound(n, t, d, read_size);
    v.value = std::max(delta.value(), expr);
    v.fraction = "max{" + delta.str() + ", case bound}";
    if (t <= read_size) {
        v.verdict = "outside regime: t <= n rho_r";
        v.guaranteed = false;
    } else if (4 * d <= n - read_size) {
        v.verdict = "outside regime: d <= n(1-rho_r)/4";
        v.guaranteed = false;
    } else {
        v.verdict = "max{delta, case-bound expression}";
        v.guaranteed = true;
    }
    return v;
}

BoundsVerdict regime_verdict(int construction, double rho, double rho_r, double rho_w) {
    BoundsVerdict v;
    v.value = rho;
    if (construction != 2) throw std::invalid_argument("regime_verdict: construction 2 only");
    if (rho >= (1.0 + rho_r) / 2.0 - 1e-12) {
        v.verdict = "primary regime: rho >= (1+rho_r)/2";
        v.guaranteed = true;
    } else if (rho_w < (1.0 - rho_r) / 2.0 && rho >= rho_r + rho_w - 1e-12) {
        v.verdict = "small-write regime: rho_w < (1-rho_r)/2 and rho >= rho_r+rho_w";
        v.guaranteed = true;
    } else {
        v.verdict = "outside guaranteed regimes";
        v.guaranteed = false;
    }
    return v;
}

} // namespace nmcode
