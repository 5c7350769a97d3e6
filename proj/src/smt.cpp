#include "nmcode/smt.hpp"

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

// Packed q-ary words: wire i occupies bits [i*w, (i+1)*w). Addition over
// GF(2^w) is XOR, so whole transcripts add with one machine op.
struct QKernel {
    FieldSpec field;
    size_t n = 0, ell = 0, rdim = 0;
    uint64_t r_total = 0;
    std::vector<std::vector<uint64_t>> rand_rows; // [row][digit] scaled packed rows
    std::vector<std::vector<uint64_t>> msg_rows;
    std::vector<std::vector<uint32_t>> label_tab; // [pos][symbol] -> packed label
    std::vector<Outcome> inner_out;               // packed inner word -> outcome

    uint64_t pack(const FieldVector& v) const {
        uint64_t out = 0;
        for (size_t i = 0; i < v.size(); ++i) out |= static_cast<uint64_t>(v[i]) << (i * field.w);
        return out;
    }
    uint64_t randomness_word(uint64_t index) const {
        uint64_t acc = 0;
        for (size_t row = 0; row < rdim; ++row) {
            acc ^= rand_rows[row][index & field.mask()];
            index >>= field.w;
        }
        return acc;
    }
    uint64_t inner_word(uint64_t packed_inner) const {
        uint64_t acc = 0;
        for (size_t row = 0; row < ell; ++row)
            acc ^= msg_rows[row][(packed_inner >> (row * field.w)) & field.mask()];
        return acc;
    }
    uint32_t label(uint64_t x) const {
        uint32_t acc = 0;
        for (size_t i = 0; i < n; ++i) acc ^= label_tab[i][(x >> (i * field.w)) & field.mask()];
        return acc;
    }
    Outcome decode(uint64_t x) const { return inner_out[label(x)]; }
};

QKernel build_qkernel(const SmtProtocol& p) {
    QKernel kn;
    kn.field = p.field;
    kn.n = p.n_wires;
    kn.ell = p.wt.ell;
    kn.rdim = kn.n - kn.ell;
    kn.r_total = pow_u64(p.field.q(), kn.rdim);
    auto scale_rows = [&](const FieldMatrix& m) {
        std::vector<std::vector<uint64_t>> out(m.rows);
        for (size_t r = 0; r < m.rows; ++r) {
            out[r].resize(p.field.q());
            for (uint32_t s = 0; s < p.field.q(); ++s) {
                uint64_t word = 0;
                for (size_t c = 0; c < m.cols; ++c)
                    word |= static_cast<uint64_t>(gf_mul(p.field, s, m.at(r, c)))
                            << (c * p.field.w);
                out[r][s] = word;
            }
        }
        return out;
    };
    kn.rand_rows = scale_rows(p.wt.c.generator);
    kn.msg_rows = scale_rows(p.wt.ghat);
    kn.label_tab.assign(kn.n, std::vector<uint32_t>(p.field.q(), 0));
    for (size_t i = 0; i < kn.n; ++i)
        for (uint32_t s = 0; s < p.field.q(); ++s) {
            uint32_t acc = 0;
            for (size_t j = 0; j < kn.ell; ++j)
                acc |= gf_mul(p.field, s, p.wt.labeler.label_map.at(i, j)) << (j * p.field.w);
            kn.label_tab[i][s] = acc;
        }
    kn.inner_out.resize(pow_u64(p.field.q(), kn.ell));
    for (uint64_t w = 0; w < kn.inner_out.size(); ++w) {
        FieldVector iv = vec_zero(p.field, kn.ell);
        for (size_t j = 0; j < kn.ell; ++j)
            iv[j] = static_cast<uint32_t>((w >> (j * p.field.w)) & p.field.mask());
        auto dec = amd_decode_q(p.amd, iv);
        if (!dec) {
            kn.inner_out[w] = Outcome::bot();
        } else {
            uint64_t m = 0;
            for (size_t j = 0; j < dec->size(); ++j)
                m |= static_cast<uint64_t>((*dec)[j]) << (j * p.field.w);
            kn.inner_out[w] = Outcome::message(m);
        }
    }
    return kn;
}

struct CompiledAo {
    std::vector<uint32_t> read_pos;
    uint32_t w = 0, qmask = 0;
    struct Row {
        uint64_t add_keep_mask; // slots surviving (Add positions)
        uint64_t add_vals;      // packed offsets on Add positions
        uint64_t ow_vals;       // packed constants on Overwrite positions
        size_t overwrites_outside_read;
    };
    std::vector<Row> rows;

    uint64_t alpha(uint64_t x) const {
        uint64_t a = 0;
        for (size_t j = read_pos.size(); j-- > 0;)
            a = a * (qmask + 1) + ((x >> (read_pos[j] * w)) & qmask);
        return a;
    }
    uint64_t apply(uint64_t x, uint64_t a) const {
        const Row& r = rows[a];
        return ((x & r.add_keep_mask) ^ r.add_vals) | r.ow_vals;
    }
};

CompiledAo compile_ao(const AoTamperFunction& f) {
    validate(f);
    CompiledAo ca;
    ca.read_pos = f.s_read;
    ca.w = f.field.w;
    ca.qmask = f.field.mask();
    ca.rows.resize(f.table.size());
    std::vector<bool> in_read(f.n, false);
    for (uint32_t i : f.s_read) in_read[i] = true;
    for (uint64_t a = 0; a < f.table.size(); ++a) {
        CompiledAo::Row row{0, 0, 0, 0};
        for (size_t i = 0; i < f.n; ++i) {
            const uint64_t slot = static_cast<uint64_t>(ca.qmask) << (i * ca.w);
            const auto& act = f.table[a][i];
            if (act.kind == QaryAction::Kind::Add) {
                row.add_keep_mask |= slot;
                row.add_vals |= static_cast<uint64_t>(act.value) << (i * ca.w);
            } else {
                row.ow_vals |= static_cast<uint64_t>(act.value) << (i * ca.w);
                if (!in_read[i]) ++row.overwrites_outside_read;
            }
        }
        ca.rows[a] = row;
    }
    return ca;
}

uint64_t pack_msg(const FieldSpec& f, const std::vector<uint32_t>& m) {
    uint64_t out = 0;
    for (size_t i = 0; i < m.size(); ++i) out |= static_cast<uint64_t>(m[i]) << (i * f.w);
    return out;
}

} // namespace

SmtProtocol smt_build(const FieldSpec& field, size_t n, size_t t, size_t msg_symbols,
                      uint64_t seed) {
    if (n * field.w > 64) throw std::invalid_argument("smt_build: transcript exceeds 64 bits");
    if (t >= n) throw std::invalid_argument("smt_build: t must be < n");
    const size_t ell = msg_symbols + 2; // AMD adds randomness and tag symbols
    if (ell >= n) throw std::invalid_argument("smt_build: message too long for n wires");
    LinearCode c = reed_solomon_code(field, n, n - ell);
    CosetWtCode wt = wt_build(c, seed);
    // regime: rho = (ddual-1)/n must reach (1 + t/n)/2
    Rational rho = wt.rho;
    Rational need(n + t, 2 * n);
    if (rho < need) {
        std::ostringstream os;
        os << "smt_build: regime unsatisfiable: rho = " << rho.str() << " < (1 + t/n)/2 = "
           << need.str();
        throw std::invalid_argument(os.str());
    }
    SmtProtocol p;
    p.field = field;
    p.n_wires = n;
    p.t = t;
    p.msg_symbols = msg_symbols;
    p.wt = wt;
    p.amd = make_amd_q(field, static_cast<uint32_t>(msg_symbols));
    p.epsilon = wt.epsilon;
    p.delta = p.amd.delta;
    p.regime.read_budget = t;
    p.regime.write_budget = n;
    p.regime.within_primary = true;
    p.regime.guaranteed = true;
    std::ostringstream os;
    os << "smt rho=" << rho.str() << " >= (1+t/n)/2 = " << need.str();
    p.regime.description = os.str();
    return p;
}

uint64_t smt_pack(const SmtProtocol& p, const FieldVector& wires) {
    uint64_t out = 0;
    for (size_t i = 0; i < wires.size(); ++i)
        out |= static_cast<uint64_t>(wires[i]) << (i * p.field.w);
    return out;
}

FieldVector smt_unpack(const SmtProtocol& p, uint64_t packed) {
    FieldVector v = vec_zero(p.field, p.n_wires);
    for (size_t i = 0; i < p.n_wires; ++i)
        v[i] = static_cast<uint32_t>((packed >> (i * p.field.w)) & p.field.mask());
    return v;
}

FieldVector smt_encode(const SmtProtocol& p, const std::vector<uint32_t>& m, uint32_t r_amd,
                       uint64_t big_r_index) {
    FieldVector inner = amd_encode_q(p.amd, m, r_amd);
    FieldVector big_r = vec_zero(p.field, p.n_wires - p.wt.ell);
    for (size_t i = 0; i < big_r.size(); ++i) {
        big_r[i] = static_cast<uint32_t>(big_r_index % p.field.q());
        big_r_index /= p.field.q();
    }
    return wt_encode(p.wt, inner, big_r);
}

Outcome smt_decode(const SmtProtocol& p, const FieldVector& wires) {
    FieldVector inner = wt_decode(p.wt, wires);
    auto dec = amd_decode_q(p.amd, inner);
    if (!dec) return Outcome::bot();
    return Outcome::message(pack_msg(p.field, *dec));
}

SessionLog smt_transmit(const SmtProtocol& p, const std::vector<uint32_t>& m,
                        const AoTamperFunction& adversary, uint64_t seed) {
    if (adversary.s_read.size() > p.t)
        throw std::invalid_argument("smt_transmit: adversary exceeds the read budget");
    if (adversary.n != p.n_wires) throw std::invalid_argument("smt_transmit: wire count mismatch");
    Rng rng = Rng(seed).child(0x736d74); // "smt"
    const uint32_t r_amd = static_cast<uint32_t>(rng.below(p.field.q()));
    const uint64_t big_r = rng.below(pow_u64(p.field.q(), p.n_wires - p.wt.ell));
    SessionLog log;
    log.seed = seed;
    log.message = pack_msg(p.field, m);
    log.adversary = ao_to_text(adversary);
    FieldVector sent = smt_encode(p, m, r_amd, big_r);
    FieldVector received = ao_apply(adversary, sent);
    log.sent = sent.elems;
    log.received = received.elems;
    log.outcome = smt_decode(p, received);
    return log;
}

SecrecyReport smt_secrecy_audit(const SmtProtocol& p, size_t wire_set_size) {
    if (wire_set_size > p.t)
        throw std::invalid_argument("smt_secrecy_audit: set size exceeds the wire budget");
    SecrecyReport rep;
    const QKernel kn = build_qkernel(p);
    const uint64_t msgs = pow_u64(p.field.q(), p.msg_symbols);

    // enumerate wire sets of the exact size
    std::vector<uint32_t> set(wire_set_size);
    for (size_t i = 0; i < wire_set_size; ++i) set[i] = static_cast<uint32_t>(i);
    if (wire_set_size == 0) return rep;
    while (true) {
        // view histograms per message over the packed set values
        std::map<uint64_t, uint64_t> base;
        for (uint64_t ri = 0; ri < kn.r_total; ++ri) {
            uint64_t y = kn.randomness_word(ri);
            uint64_t key = 0;
            for (size_t j = 0; j < set.size(); ++j)
                key |= ((y >> (set[j] * p.field.w)) & p.field.mask()) << (j * p.field.w);
            ++base[key];
        }
        const uint64_t view_space = pow_u64(p.field.q(), wire_set_size);
        if (base.size() != view_space)
            rep.views_uniform = false;
        else
            for (const auto& [key, cnt] : base)
                if (cnt * view_space != kn.r_total) rep.views_uniform = false;

        // full view histogram of a message: the base histogram shifted by the
        // projection of every encoded inner word (AMD randomness included)
        auto view_histogram = [&](uint64_t m_packed) {
            std::vector<uint32_t> mv(p.msg_symbols);
            for (size_t j = 0; j < p.msg_symbols; ++j)
                mv[j] = static_cast<uint32_t>((m_packed >> (j * p.field.w)) & p.field.mask());
            std::map<uint64_t, uint64_t> h;
            for (uint32_t r_amd = 0; r_amd < p.field.q(); ++r_amd) {
                uint64_t word = kn.inner_word(kn.pack(amd_encode_q(p.amd, mv, r_amd)));
                uint64_t shift = 0;
                for (size_t j = 0; j < set.size(); ++j)
                    shift |= ((word >> (set[j] * p.field.w)) & p.field.mask()) << (j * p.field.w);
                for (const auto& [key, cnt] : base) h[key ^ shift] += cnt;
            }
            return h;
        };
        for (uint64_t ma = 0; ma < msgs && msgs > 1; ++ma) {
            auto ha = view_histogram(ma);
            for (uint64_t mb = ma + 1; mb < msgs; ++mb) {
                auto hb = view_histogram(mb);
                uint64_t l1 = 0;
                for (const auto& [key, cnt] : ha) {
                    auto it = hb.find(key);
                    uint64_t cb = it == hb.end() ? 0 : it->second;
                    l1 += cnt > cb ? cnt - cb : cb - cnt;
                }
                for (const auto& [key, cnt] : hb)
                    if (ha.find(key) == ha.end()) l1 += cnt;
                Rational sd(l1, 2 * kn.r_total * p.field.q());
                if (rep.max_sd < sd) {
                    rep.max_sd = sd;
                    rep.witness_set = set;
                }
            }
        }
        // next combination
        size_t i = wire_set_size;
        bool more = false;
        while (i-- > 0) {
            if (set[i] < p.n_wires - (wire_set_size - i)) {
                ++set[i];
                for (size_t j = i + 1; j < wire_set_size; ++j) set[j] = set[j - 1] + 1;
                more = true;
                break;
            }
        }
        if (!more) break;
    }
    return rep;
}

OutcomeDistribution smt_simulator(const SmtProtocol& p, const AoTamperFunction& f) {
    if (f.n != p.n_wires) throw std::invalid_argument("smt_simulator: wire count mismatch");
    const QKernel kn = build_qkernel(p);
    const CompiledAo ca = compile_ao(f);
    const size_t unread = p.n_wires - f.s_read.size();
    std::vector<bool> case1(ca.rows.size());
    for (uint64_t a = 0; a < ca.rows.size(); ++a)
        case1[a] = 2 * ca.rows[a].overwrites_outside_read <= unread;

    OutcomeDistribution dist;
    dist.mode = OutcomeDistribution::Mode::Exact;
    for (uint64_t ri = 0; ri < kn.r_total; ++ri) {
        const uint64_t y = kn.randomness_word(ri); // WTenc of the zero inner word
        const uint64_t a = ca.alpha(y);
        const uint64_t ty = ca.apply(y, a);
        if (case1[a]) {
            // same* iff the difference word lies in the randomness code
            dist.add(kn.label(ty ^ y) == 0 ? Outcome::same_star() : Outcome::bot());
        } else {
            dist.add(kn.decode(ty));
        }
    }
    return dist;
}

OutcomeDistribution smt_tamper_experiment(const SmtProtocol& p, const AoTamperFunction& f,
                                          const std::vector<uint32_t>& m,
                                          const ExperimentOptions& opt) {
    if (f.n != p.n_wires) throw std::invalid_argument("smt_tamper_experiment: wire mismatch");
    const QKernel kn = build_qkernel(p);
    const CompiledAo ca = compile_ao(f);
    // one encoded base word per AMD randomness value
    std::vector<uint64_t> bases(p.field.q());
    for (uint32_t r_amd = 0; r_amd < p.field.q(); ++r_amd)
        bases[r_amd] = kn.inner_word(kn.pack(amd_encode_q(p.amd, m, r_amd)));
    // flat counters over the small outcome space (bot, same*, messages)
    std::vector<uint64_t> counters(2 + kn.inner_out.size(), 0);
    auto run_one = [&](uint32_t r_amd, uint64_t ri) {
        const uint64_t x = kn.randomness_word(ri) ^ bases[r_amd];
        const uint64_t tx = ca.apply(x, ca.alpha(x));
        Outcome o = kn.decode(tx);
        ++counters[o.tag == Outcome::Tag::Bot ? 0 : 2 + o.msg];
    };
    OutcomeDistribution dist;
    if (!opt.monte_carlo) {
        dist.mode = OutcomeDistribution::Mode::Exact;
        for (uint32_t r_amd = 0; r_amd < p.field.q(); ++r_amd)
            for (uint64_t ri = 0; ri < kn.r_total; ++ri) run_one(r_amd, ri);
    } else {
        if (opt.samples == 0) throw std::invalid_argument("smt_tamper_experiment: samples required");
        dist.mode = OutcomeDistribution::Mode::Empirical;
        Rng rng = Rng(opt.seed).child(0x716578); // "qex"
        for (uint64_t i = 0; i < opt.samples; ++i)
            run_one(static_cast<uint32_t>(rng.below(p.field.q())), rng.below(kn.r_total));
    }
    if (counters[0]) dist.counts[Outcome::bot()] = counters[0];
    for (size_t i = 2; i < counters.size(); ++i)
        if (counters[i]) dist.counts[Outcome::message(i - 2)] = counters[i];
    for (const auto& [o, c] : dist.counts) dist.total += c;
    return dist;
}

AuditReport smt_nm_audit(const SmtProtocol& p, const AuditOptions& opt) {
    AuditReport rep;
    {
        std::ostringstream os;
        os << "smt q=" << p.field.q() << " n=" << p.n_wires << " t=" << p.t
           << " msg_symbols=" << p.msg_symbols;
        rep.code_params = os.str();
    }
    rep.regime = p.regime;
    Rational claimed = p.epsilon + p.epsilon + p.delta;
    rep.claimed_bound = claimed.value();
    rep.claimed_bound_fraction = claimed.str();
    rep.mode = opt.monte_carlo ? "montecarlo" : "exact";
    rep.seed = opt.seed;
    rep.samples = opt.monte_carlo ? opt.samples : 0;

    Rng root = Rng(opt.seed).child(0x736d746175); // "smtau"
    const uint64_t msgs = pow_u64(p.field.q(), p.msg_symbols);
    Rational worst;
    for (uint64_t i = 0; i < opt.adversaries; ++i) {
        AoTamperFunction f =
            ao_sample(p.field, p.n_wires, p.t, opt.sample_mode, root.child(i).next());
        AdversaryAudit aa;
        aa.f_digest = std::to_string(ao_digest(f));
        Rational adv_worst;
        std::string df_bytes;
        for (uint64_t mp = 0; mp < msgs; ++mp) {
            std::vector<uint32_t> m(p.msg_symbols);
            for (size_t j = 0; j < p.msg_symbols; ++j)
                m[j] = static_cast<uint32_t>((mp >> (j * p.field.w)) & p.field.mask());
            OutcomeDistribution df = smt_simulator(p, f);
            if (mp == 0)
                df_bytes = df.bytes();
            else if (df.bytes() != df_bytes)
                rep.simulator_message_independent = false;
            ExperimentOptions eo;
            eo.monte_carlo = opt.monte_carlo;
            eo.samples = opt.samples;
            eo.seed = root.child(i).child(mp + 1).next();
            OutcomeDistribution tm = smt_tamper_experiment(p, f, m, eo);
            if (opt.monte_carlo) aa.half_width = std::max(aa.half_width, sd_half_width(tm));
            Rational sd = statistical_distance(tm, patch(df, mp), opt.monte_carlo);
            if (adv_worst < sd) {
                adv_worst = sd;
                aa.worst_m = mp;
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
    return rep;
}

AwtpSession awtp_session(const NmCode& code, const TamperFunction& adversary, uint64_t m,
                         uint64_t seed) {
    validate(adversary);
    if (adversary.s_read.size() > code.regime.read_budget)
        throw std::invalid_argument("awtp_session: adversary exceeds the read budget");
    Rng rng = Rng(seed).child(0x61777470); // "awtp"
    const uint32_t r_amd = static_cast<uint32_t>(rng.below(code.amd.tag_field.q()));
    const uint64_t big_r = rng.below(1ull << code.inner_randomness_bits);
    AwtpSession s;
    s.log.seed = seed;
    s.log.message = m;
    s.log.adversary = tamper_to_text(adversary);
    uint64_t x = nm_encode(code, m, r_amd, big_r);
    uint64_t tx = tamper_apply(adversary, x);
    for (size_t i = 0; i < code.n; ++i) s.log.sent.push_back((x >> i) & 1);
    for (size_t i = 0; i < code.n; ++i) s.log.received.push_back((tx >> i) & 1);
    s.log.outcome = nm_decode(code, tx);

    if (code.construction == 2) {
        try {
            PrivacyReport priv = wt_verify_privacy(code.wt, code.regime.read_budget);
            s.secrecy_sd = priv.max_sd;
            s.secrecy_ok = priv.max_sd <= code.wt.epsilon;
        } catch (const std::runtime_error&) {
            // enumeration infeasible: coset codes are exactly private up to
            // ddual - 1 read positions
            s.secrecy_sd = Rational::zero();
            s.secrecy_ok = code.regime.read_budget + 1 <= *code.wt.c.dual_distance;
        }
        // rate k/n at most (1 - rho_r)/2 for the wiretap composition
        s.rate_ok = 2 * code.k <= code.n - code.regime.read_budget;
    } else {
        // uniformity of any read set within the verified t
        s.secrecy_ok = code.lecss.t >= code.regime.read_budget;
        s.secrecy_sd = Rational::zero();
        s.rate_ok = true;
    }
    s.nm_regime_ok = code.regime.guaranteed;
    return s;
}

} // namespace nmcode
