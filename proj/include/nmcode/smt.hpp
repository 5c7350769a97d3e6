#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmcode/amd.hpp"
#include "nmcode/nmc.hpp"
#include "nmcode/tamper.hpp"
#include "nmcode/wiretap.hpp"

namespace nmcode {

// One-round secure message transmission over n wires, each carrying one F_q
// symbol. The codec is the q-ary wiretap-coset + AMD composition; the
// adversary reads up to t wires and applies per-wire add/overwrite actions
// chosen from the read values. Reliability is non-malleability, which is why
// n <= 2t is admissible here.
struct SmtProtocol {
    FieldSpec field;
    size_t n_wires = 0;
    size_t t = 0;            // corrupted-wire budget
    size_t msg_symbols = 0;  // message length in field symbols
    CosetWtCode wt;          // over F_q, message length msg_symbols + 2
    AmdCodeQ amd;
    Rational epsilon;        // secrecy parameter (0 for coset codes)
    Rational delta;          // AMD tamper-detection bound
    Regime regime;
};

// Builds the protocol from an RS coset code C = RS[n, n - (msg_symbols + 2)].
// Rejects parameter sets violating rho >= (1 + t/n)/2, naming the inequality.
SmtProtocol smt_build(const FieldSpec& field, size_t n, size_t t, size_t msg_symbols,
                      uint64_t seed);

// Transcript symbols packed w bits per wire, wire 0 in the low slot.
uint64_t smt_pack(const SmtProtocol& p, const FieldVector& wires);
FieldVector smt_unpack(const SmtProtocol& p, uint64_t packed);

FieldVector smt_encode(const SmtProtocol& p, const std::vector<uint32_t>& m, uint32_t r_amd,
                       uint64_t big_r_index);
Outcome smt_decode(const SmtProtocol& p, const FieldVector& wires);

struct SessionLog {
    uint64_t message = 0; // packed symbols
    std::string adversary;
    std::vector<uint32_t> sent;
    std::vector<uint32_t> received;
    Outcome outcome;
    uint64_t seed = 0;
};

// One protocol session with seeded encoder randomness; replays bit-exactly
// from the same seed. Throws if the adversary reads more than t wires.
SessionLog smt_transmit(const SmtProtocol& p, const std::vector<uint32_t>& m,
                        const AoTamperFunction& adversary, uint64_t seed);

// Exact max statistical distance of the adversary view (the read wire values)
// over all message pairs and wire sets of the given size.
struct SecrecyReport {
    Rational max_sd;
    bool views_uniform = true; // every audited view is exactly uniform
    std::vector<uint32_t> witness_set;
};
SecrecyReport smt_secrecy_audit(const SmtProtocol& p, size_t wire_set_size);

// Non-malleability audit against sampled add/overwrite adversaries, using the
// q-ary simulator (adds play the non-overwrite role, overwrites the
// overwrite role).
AuditReport smt_nm_audit(const SmtProtocol& p, const AuditOptions& opt);

OutcomeDistribution smt_simulator(const SmtProtocol& p, const AoTamperFunction& f);
OutcomeDistribution smt_tamper_experiment(const SmtProtocol& p, const AoTamperFunction& f,
                                          const std::vector<uint32_t>& m,
                                          const ExperimentOptions& opt = {});

// Active wiretap II session on a binary code: one tampering session plus the
// secrecy and rate verdicts for the declared read budget.
struct AwtpSession {
    SessionLog log;
    bool secrecy_ok = false;
    Rational secrecy_sd;
    bool rate_ok = false; // k/n <= (1 - rho_r)/2 for construction 2
    bool nm_regime_ok = false;
};
AwtpSession awtp_session(const NmCode& code, const TamperFunction& adversary, uint64_t m,
                         uint64_t seed);

} // namespace nmcode
