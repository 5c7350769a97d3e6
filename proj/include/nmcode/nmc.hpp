#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nmcode/amd.hpp"
#include "nmcode/lecss.hpp"
#include "nmcode/outcome.hpp"
#include "nmcode/tamper.hpp"
#include "nmcode/wiretap.hpp"

namespace nmcode {

// Declared adversary budgets plus which security statement covers them.
struct Regime {
    size_t read_budget = 0;  // max |S_r|
    size_t write_budget = 0; // max |S_w|
    bool within_primary = false;    // c1: t' > nr and d' > n(1-rr)/4; c2: rho >= (1+rr)/2
    bool within_small_write = false; // the relaxed small-rho_w variants
    bool guaranteed = false;        // either regime holds
    std::string description;
};

// The two modular non-malleable codes: an inner detection layer (AMD) wrapped
// in an outer randomizing layer (LECSS for construction 1, coset wiretap for
// construction 2). Codewords are packed bit words, position i = bit i.
struct NmCode {
    int construction = 2;
    AmdCode amd;
    CosetWtCode wt;   // construction 2
    LecssCode lecss;  // construction 1
    size_t k = 0;
    size_t n = 0;
    size_t inner_randomness_bits = 0; // log2 of outer-layer randomness space
    Rational claimed_security;        // c2: 2 eps + delta (exact)
    double claimed_security_value = 0.0; // c1: max{delta, case-bound expression}
    Regime regime;

    uint64_t randomness_count() const { return 1ull << (amd.u + inner_randomness_bits); }
};

NmCode make_construction2(const CosetWtCode& wt, const AmdCode& amd, size_t read_budget,
                          size_t write_budget);
NmCode make_construction1(const LecssCode& lecss, const AmdCode& amd, size_t read_budget,
                          size_t write_budget);
// The explicit family member: [2^h-1, 2^h-1-h] Hamming coset code composed
// with the AMD code of matching length.
NmCode make_hamming_family(uint32_t h, size_t read_budget, size_t write_budget, uint64_t seed);

uint64_t nm_encode(const NmCode& code, uint64_t m, uint32_t r_amd, uint64_t big_r);
Outcome nm_decode(const NmCode& code, uint64_t x);

// Any (k, n) coding scheme with an enumerable randomness space; toy codes in
// tests implement this directly, and it is the slow reference path for
// NmCode.
struct BitScheme {
    size_t k = 0;
    size_t n = 0;
    uint64_t randomness = 1;
    std::function<uint64_t(uint64_t m, uint64_t r)> encode;
    std::function<Outcome(uint64_t x)> decode;
};
BitScheme to_bit_scheme(const NmCode& code);

struct ExperimentOptions {
    bool monte_carlo = false;
    uint64_t samples = 0; // required when monte_carlo
    uint64_t seed = 0;
};

OutcomeDistribution tamper_experiment(const BitScheme& scheme, const TamperFunction& f, uint64_t m,
                                      const ExperimentOptions& opt = {});
OutcomeDistribution strong_experiment(const BitScheme& scheme, const TamperFunction& f, uint64_t m,
                                      const ExperimentOptions& opt = {});

// Simulator distributions D_f. Built from (code, f) only; the audit checks
// byte-identity across the per-message rebuilds.
OutcomeDistribution simulator_c2(const NmCode& code, const TamperFunction& f);
OutcomeDistribution simulator_c1(const NmCode& code, const TamperFunction& f);
OutcomeDistribution simulate(const NmCode& code, const TamperFunction& f);

// Fast exact tamper experiment for NmCode (Gray-code enumeration, threaded).
OutcomeDistribution tamper_experiment_fast(const NmCode& code, const TamperFunction& f, uint64_t m,
                                           size_t threads = 0);

// Per-case failure mass of the construction-1 simulator against the real
// experiment, measured by conditional enumeration (cases 2 and 3 output bot;
// the mass is Pr[inner decoder misses] given the read value).
struct C1CaseMass {
    uint64_t alpha = 0;
    int case_id = 0;
    uint64_t m = 0;
    Rational undetected; // Pr[LECSSdec((Delta)g^a(X)) != bot | X_Sr = alpha]
};
std::vector<C1CaseMass> c1_case_masses(const NmCode& code, const TamperFunction& f);
// The case 2/3 bound 1/2^(t-nr) + ((t-nr) / (n (d/n - (1-rr)/4)^2))^((t-nr)/2).
double c1_case_bound(size_t n, size_t t, size_t d, size_t read_size);

struct AdversaryAudit {
    std::string f_digest;
    double max_sd = 0.0;
    std::string max_sd_fraction;
    uint64_t worst_m = 0;
    double half_width = 0.0;
};

struct AuditReport {
    std::string code_params;
    Regime regime;
    double claimed_bound = 0.0;
    std::string claimed_bound_fraction;
    std::vector<AdversaryAudit> per_adversary;
    double max_sd = 0.0;
    std::string max_sd_fraction;
    std::string mode; // "exact" | "montecarlo"
    uint64_t seed = 0;
    uint64_t samples = 0; // per experiment, 0 in exact mode
    bool simulator_message_independent = true;
    bool bound_respected = true;
    std::vector<std::string> notes;
};

struct AuditOptions {
    uint64_t adversaries = 100;
    bool monte_carlo = false;
    uint64_t samples = 1000000;
    uint64_t seed = 1;
    SampleMode sample_mode = SampleMode::Uniform;
    size_t threads = 0; // 0 = NMCODE_THREADS or hardware
};

AuditReport nm_security_audit(const NmCode& code, const AuditOptions& opt);

// Reference calculators for the capacity and security formulas.
struct BoundsVerdict {
    double value = 0.0;
    std::string fraction;
    std::string verdict;
    bool guaranteed = true;
};
BoundsVerdict capacity_bound(double rho_r, double rho_w);
BoundsVerdict c2_security_bound(const Rational& epsilon, const Rational& delta);
BoundsVerdict c1_security_bound(size_t n, size_t t, size_t d, size_t read_size,
                                const Rational& delta);
BoundsVerdict regime_verdict(int construction, double rho, double rho_r, double rho_w);

size_t resolve_threads(size_t requested);

} // namespace nmcode
