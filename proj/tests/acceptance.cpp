// Acceptance suite: one check per criterion, each printing PASS or FAIL with
// the measured values. The process exit status is the number of failures.
//
// Two checks are known to fail by design of their targets, not by defect of
// the implementation; each prints the measurement and the reason:
//  - 1b asserts a one-bit detection bound of 0.375, but every coding scheme
//    with four encodings per message fails detection with probability >= 1/2
//    (tamper any codeword onto another codeword of the same message), and the
//    polynomial construction meets that floor exactly;
//  - 7 asserts a double-log family-size inequality at n = 16..128 whose
//    dominant slack term log2(2n) only drops below n/10 near n = 90, so the
//    small-n grid points cannot satisfy it (n = 128 does).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "nmcode/lecss.hpp"
#include "nmcode/nmc.hpp"
#include "nmcode/report.hpp"
#include "nmcode/smt.hpp"

using namespace nmcode;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void criterion1_amd_bound() {
    auto t0 = Clock::now();
    AmdCode c33 = make_amd(3, 3);
    AmdOracleReport r33 = amd_exhaustive_oracle(c33);
    double el = seconds_since(t0);
    report("1a amd (3,3) <= 0.25",
           r33.max_not_bot <= Rational(1, 4) && el < 1.0,
           "measured " + r33.max_not_bot.str() + ", " + std::to_string(el) + " s");

    t0 = Clock::now();
    AmdCode c12 = make_amd(1, 2);
    AmdOracleReport r12 = amd_exhaustive_oracle(c12);
    el = seconds_since(t0);
    bool pass = r12.max_not_bot <= Rational(3, 8) && el < 1.0;
    std::string detail = "measured " + r12.max_not_bot.str() + " vs target 3/8, " +
                         std::to_string(el) + " s";
    if (!pass)
        detail += " -- unattainable: with 2^u = 4 encodings per message, mapping one "
                  "same-message codeword onto another is never detected, so the true "
                  "floor is 2/4; the (k/u+1)/2^u profile requires u | k";
    report("1b amd (1,2) <= 0.375", pass, detail);
}

void criterion2_wiretap() {
    auto t0 = Clock::now();
    CosetWtCode w = wt_build(hamming_code(3), 1);
    PrivacyReport inside = wt_verify_privacy(w, 3);
    PrivacyReport beyond = wt_verify_privacy(w, 4);
    double el = seconds_since(t0);
    bool zeros = inside.max_sd == Rational::zero();
    bool witness = beyond.max_sd_by_size[3] > Rational::zero();
    report("2 wiretap [7,4] perfect secrecy",
           zeros && witness && el < 10.0,
           "max SD " + inside.max_sd.str() + " for |S|<=3; witness SD " +
               beyond.max_sd_by_size[3].str() + " at |S|=4; " + std::to_string(el) + " s");
}

AuditReport criterion3_family(bool& pass_out) {
    auto t0 = Clock::now();
    NmCode code = make_hamming_family(5, 5, 10, 1);
    AuditOptions opt;
    opt.adversaries = 50;
    opt.monte_carlo = false;
    opt.seed = 20260810;
    AuditReport rep = nm_security_audit(code, opt);
    double el = seconds_since(t0);
    bool pass = rep.max_sd <= 0.375 && code.regime.within_small_write;
    pass_out = pass;
    report("3 explicit family h=5 exact audit", pass,
           "max SD " + rep.max_sd_fraction + " over 50 adversaries (target 0.375, proven "
           "bound " + rep.claimed_bound_fraction + "), " + std::to_string(el) + " s");
    return rep;
}

void criterion4_simulator_independence(const AuditReport& family_rep) {
    // the audits rebuild D_f for every message and compare bytes; re-check on
    // fresh toys as well
    bool ok = family_rep.simulator_message_independent;
    CosetWtCode wt = wt_build(reed_muller_code(2, 4), 5);
    NmCode c2 = make_construction2(wt, make_amd(1, 2), 2, 4);
    LecssCode lec = lecss_from_generator(reed_muller_code(2, 4).generator, 6, 5);
    NmCode c1 = make_construction1(lec, make_amd(2, 2), 1, 16);
    for (uint64_t seed = 0; seed < 10 && ok; ++seed) {
        TamperFunction f2 = tamper_sample_sizes(16, 2, 4, SampleMode::Uniform, seed);
        std::string b = simulator_c2(c2, f2).bytes();
        for (uint64_t m = 0; m < 2; ++m) ok = ok && simulator_c2(c2, f2).bytes() == b;
        TamperFunction f1 = tamper_sample_sizes(16, 1, 16, SampleMode::Uniform, seed);
        std::string b1 = simulator_c1(c1, f1).bytes();
        for (uint64_t m = 0; m < 4; ++m) ok = ok && simulator_c1(c1, f1).bytes() == b1;
    }
    report("4 simulator message independence", ok,
           ok ? "byte-identical D_f across all message triggers"
              : "simulator bytes varied across messages");
}

void criterion5_privacy_breaker() {
    BitScheme toy;
    toy.k = 1;
    toy.n = 1;
    toy.randomness = 1;
    toy.encode = [](uint64_t m, uint64_t) { return m; };
    toy.decode = [](uint64_t x) { return Outcome::message(x); };
    TamperFunction atk = privacy_breaker({0}, {0}, 1);
    Rational p0 = strong_experiment(toy, atk, 0).prob(Outcome::same_star());
    Rational p1 = strong_experiment(toy, atk, 1).prob(Outcome::same_star());
    Rational gap = Rational::abs_diff(p0, p1);
    report("5 privacy-breaker reenactment", gap == Rational::one(),
           "|Pr[same*|m0] - Pr[same*|m1]| = " + gap.str());
}

void criterion6_construction1() {
    auto t0 = Clock::now();
    LinearCode rm2 = reed_muller_code(2, 4);
    LecssCode lec = lecss_from_generator(rm2.generator, 6, 5); // d = 4, t = 3 verified
    NmCode code = make_construction1(lec, make_amd(2, 2), 1, 16);
    const double bound = c1_case_bound(code.n, lec.t, lec.d, 1);
    bool pass = code.regime.within_primary;
    size_t measured = 0;
    double worst = 0.0;
    double worst_adv_time = 0.0;
    for (uint64_t i = 0; i < 50; ++i) {
        auto ta = Clock::now();
        TamperFunction f = tamper_sample_sizes(16, 1, 16, SampleMode::Uniform, 7000 + i);
        for (const auto& cm : c1_case_masses(code, f)) {
            ++measured;
            worst = std::max(worst, cm.undetected.value());
            if (cm.undetected.value() > bound) pass = false;
        }
        worst_adv_time = std::max(worst_adv_time, seconds_since(ta));
    }
    if (measured == 0 || worst_adv_time >= 60.0) pass = false;
    report("6 construction 1 case 2-3 mass", pass,
           std::to_string(measured) + " conditional masses, worst " + std::to_string(worst) +
               " <= bound " + std::to_string(bound) + " (t'=3, d'=4, n=16); " +
               std::to_string(seconds_since(t0)) + " s total, worst adversary " +
               std::to_string(worst_adv_time) + " s");
}

void criterion7_family_size() {
    bool all = true;
    std::string rows;
    for (size_t n : {16, 32, 64, 128}) {
        for (double rho_r : {0.125, 0.25}) {
            long double ll = log2l(family_size_bound_log2(n, rho_r, 1.0));
            double target = static_cast<double>(n) * (rho_r + 0.1);
            bool ok = static_cast<double>(ll) <= target;
            all = all && ok;
            char buf[96];
            std::snprintf(buf, sizeof buf, " [n=%zu r=%.3f: %.2f %s %.2f]", n, rho_r,
                          static_cast<double>(ll), ok ? "<=" : ">", target);
            rows += buf;
        }
    }
    std::string detail = "loglog2 of the bound vs n(rho_r + 0.1):" + rows;
    if (!all)
        detail += " -- the slack term log2(2 n rho_w) exceeds n/10 below n ~ 90, so the "
                  "inequality is asymptotic; it holds at every tested n >= 128";
    report("7 family-size inequality on the stated grid", all, detail);
}

AuditReport criterion8_smt(bool& pass_out) {
    auto t0 = Clock::now();
    SmtProtocol p = smt_build(gf(4), 5, 1, 0, 3);
    SecrecyReport sec = smt_secrecy_audit(p, 1);
    AuditOptions opt;
    opt.adversaries = 500;
    opt.monte_carlo = true;
    opt.samples = 1000000;
    opt.seed = 424242;
    AuditReport rep = smt_nm_audit(p, opt);
    double el = seconds_since(t0);
    bool pass = sec.max_sd == Rational::zero() && rep.max_sd <= p.delta.value() + 0.01 &&
                rep.simulator_message_independent;
    pass_out = rep.simulator_message_independent;
    report("8 nm-smt gf(16) n=5 t=1", pass,
           "secrecy SD " + sec.max_sd.str() + " at |S|=1; nm max SD " + rep.max_sd_fraction +
               " over 500 adversaries x 1e6 samples vs delta + 0.01 = " +
               std::to_string(p.delta.value() + 0.01) + "; " + std::to_string(el) + " s");
    return rep;
}

void criterion9_capacity_formulas() {
    bool ok = true;
    ok = ok && capacity_bound(0.25, 1.0).value == 0.75;
    ok = ok && capacity_bound(0.125, 0.5).value == 0.875;
    ok = ok && !capacity_bound(0.5, 0.25).guaranteed; // upper bound open
    ok = ok && c2_security_bound(Rational::zero(), Rational(3, 8)).value == 0.375;
    // every constructed coset instance respects rate <= 1 - rho (checked at
    // construction; re-asserted here)
    for (uint32_t h : {3u, 4u, 5u}) {
        CosetWtCode w = wt_build(hamming_code(h), 1);
        ok = ok && Rational(w.ell, w.n) <= Rational::abs_diff(Rational::one(), w.rho);
    }
    CosetWtCode rs = wt_build(reed_solomon_code(gf(4), 5, 3), 1);
    ok = ok && Rational(rs.ell, rs.n) <= Rational::abs_diff(Rational::one(), rs.rho);
    report("9 capacity values as calculators + rate assertions", ok,
           "capacity(0.25) = 0.75; c2(0, 3/8) = 0.375; rates within 1 - rho");
}

void criterion10_determinism() {
    NmCode code = make_hamming_family(3, 0, 7, 1);
    AuditOptions opt;
    opt.adversaries = 6;
    opt.monte_carlo = true;
    opt.samples = 50000;
    opt.seed = 77;
    std::string a = audit_report_json(nm_security_audit(code, opt));
    std::string b = audit_report_json(nm_security_audit(code, opt));

    SmtProtocol p = smt_build(gf(4), 5, 1, 0, 3);
    AuditOptions sopt;
    sopt.adversaries = 5;
    sopt.monte_carlo = true;
    sopt.samples = 50000;
    sopt.seed = 78;
    std::string c = audit_report_json(smt_nm_audit(p, sopt));
    std::string d = audit_report_json(smt_nm_audit(p, sopt));

    AuditOptions eopt;
    eopt.adversaries = 3;
    eopt.seed = 79;
    CosetWtCode wt = wt_build(reed_muller_code(2, 4), 5);
    NmCode toy = make_construction2(wt, make_amd(1, 2), 2, 4);
    std::string e = audit_report_json(nm_security_audit(toy, eopt));
    std::string f = audit_report_json(nm_security_audit(toy, eopt));

    report("10 determinism of audit reports", a == b && c == d && e == f,
           "byte-identical JSON across re-runs (montecarlo and exact)");
}

} // namespace

int main() {
    criterion1_amd_bound();
    criterion2_wiretap();
    bool fam_ok = false, smt_ok = false;
    AuditReport fam = criterion3_family(fam_ok);
    criterion4_simulator_independence(fam);
    criterion5_privacy_breaker();
    criterion6_construction1();
    criterion7_family_size();
    criterion8_smt(smt_ok);
    criterion9_capacity_formulas();
    criterion10_determinism();
    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
