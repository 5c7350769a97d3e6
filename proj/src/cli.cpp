#include "nmcode/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nmcode/lecss.hpp"
#include "nmcode/nmc.hpp"
#include "nmcode/report.hpp"
#include "nmcode/smt.hpp"

namespace nmcode {

namespace {

struct RunConfig {
    int construction = 2;
    uint32_t h = 5;
    uint32_t k = 1;
    uint32_t u = 2;
    size_t n = 16;
    size_t ell = 2;
    size_t r = 3;
    size_t t = 1;
    size_t msg_symbols = 0;
    double rho_r = 0.0;
    double rho_w = 1.0;
    double eps = 0.0;
    double delta = 0.0;
    uint64_t adversaries = 100;
    std::string lecss_kind = "random";
    std::string mode = "exact";
    uint64_t seed = 1;
    uint64_t samples = 1000000;
    size_t max_set = 3;
    std::string out;
    std::string config_path;
    std::string query; // for `bounds`
};

// JSON config merged under command-line flags: a key supplies a value only
// when the flag was not given; unknown keys are rejected by name.
void merge_config(CLI::App& app, const RunConfig&, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return; // empty = all defaults
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        CLI::Option* opt = nullptr;
        try {
            opt = app.get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            throw CLI::ValidationError("--config", "unknown key: " + key);
        }
        if (opt->count() == 0) {
            std::string sval = value.is_string() ? value.get<std::string>() : value.dump();
            opt->add_result(sval);
            opt->run_callback();
        }
    }
}

void emit(const RunConfig& cfg, const std::string& content) {
    if (cfg.out.empty())
        std::cout << content;
    else
        write_file(cfg.out, content);
}

NmCode build_code(const RunConfig& cfg) {
    if (cfg.construction == 2) {
        const size_t n = (1u << cfg.h) - 1;
        return make_hamming_family(cfg.h, static_cast<size_t>(cfg.rho_r * n),
                                   static_cast<size_t>(cfg.rho_w * n), cfg.seed);
    }
    // construction 1: random search, or the Reed-Muller nested pair, which is
    // the only small instance known to sit inside the primary regime
    LecssCode lec = cfg.lecss_kind == "rm"
                        ? lecss_from_generator(reed_muller_code(2, 4).generator, 6, 5)
                        : lecss_build_random(cfg.n, cfg.ell, cfg.r, cfg.seed);
    AmdCode amd = cfg.lecss_kind == "rm" ? make_amd(2, 2) : make_amd(cfg.k, cfg.u);
    if (amd.codeword_bits() != lec.ell)
        throw std::invalid_argument("construction 1: need ell = k + 2u");
    size_t rb = static_cast<size_t>(cfg.rho_r * lec.n());
    size_t wb = static_cast<size_t>(cfg.rho_w * lec.n());
    return make_construction1(lec, amd, rb, wb);
}

int cmd_code_build(const RunConfig& cfg) {
    NmCode code = build_code(cfg);
    std::ostringstream os;
    if (code.construction == 2) {
        os << "nmcode construction=2 k=" << code.k << " n=" << code.n
           << " claimed=" << code.claimed_security.str() << "\n";
        os << wt_to_text(code.wt);
    } else {
        os << "nmcode construction=1 k=" << code.k << " n=" << code.n << "\n";
        os << lecss_to_text(code.lecss);
    }
    emit(cfg, os.str());
    return 0;
}

int cmd_amd_audit(const RunConfig& cfg) {
    AmdCode code = make_amd(cfg.k, cfg.u);
    AmdOracleReport rep = amd_exhaustive_oracle(code);
    std::ostringstream os;
    os << "amd k=" << cfg.k << " u=" << cfg.u << " bound=" << amd_failure_bound(code).str()
       << " measured_not_bot=" << rep.max_not_bot.str()
       << " measured_wrong_message=" << rep.max_wrong_message.str() << "\n";
    std::cout << os.str();
    if (!cfg.out.empty()) write_file(cfg.out, amd_oracle_csv(code));
    return rep.max_not_bot <= amd_failure_bound(code) ? 0 : 1;
}

int cmd_wt_audit(const RunConfig& cfg) {
    CosetWtCode wt = wt_build(hamming_code(cfg.h), cfg.seed);
    PrivacyReport rep = wt_verify_privacy(wt, cfg.max_set, !cfg.out.empty());
    std::cout << "wt h=" << cfg.h << " rho=" << wt.rho.str()
              << " max_sd=" << rep.max_sd.str() << " (sets up to " << cfg.max_set << ")\n";
    if (!cfg.out.empty()) write_file(cfg.out, privacy_report_csv(rep));
    const size_t tolerated = static_cast<size_t>(wt.rho.num * wt.n / wt.rho.den);
    bool ok = cfg.max_set > tolerated || rep.max_sd == wt.epsilon;
    return ok ? 0 : 1;
}

int cmd_lecss_verify(const RunConfig& cfg) {
    LecssCode lec = lecss_build_random(cfg.n, cfg.ell, cfg.r, cfg.seed);
    std::cout << "lecss n=" << cfg.n << " ell=" << cfg.ell << " r=" << cfg.r << " d=" << lec.d
              << " t=" << lec.t
              << (lec.t_matches_dual_distance ? "" : " [t != dual distance - 1]") << "\n";
    if (!cfg.out.empty()) write_file(cfg.out, lecss_to_text(lec));
    return 0;
}

int cmd_nm_audit(const RunConfig& cfg) {
    NmCode code = build_code(cfg);
    AuditOptions opt;
    opt.adversaries = cfg.adversaries;
    opt.monte_carlo = cfg.mode == "montecarlo";
    opt.samples = cfg.samples;
    opt.seed = cfg.seed;
    AuditReport rep = nm_security_audit(code, opt);
    emit(cfg, audit_report_json(rep));
    return rep.bound_respected && rep.simulator_message_independent ? 0 : 1;
}

int cmd_smt_run(const RunConfig& cfg) {
    SmtProtocol p = smt_build(gf(4), cfg.n, cfg.t, cfg.msg_symbols, cfg.seed);
    SecrecyReport sec = smt_secrecy_audit(p, cfg.t);
    AuditOptions opt;
    opt.adversaries = cfg.adversaries;
    opt.monte_carlo = cfg.mode == "montecarlo";
    opt.samples = cfg.samples;
    opt.seed = cfg.seed;
    AuditReport rep = smt_nm_audit(p, opt);
    rep.notes.push_back("secrecy max_sd=" + sec.max_sd.str() + " at set size " +
                        std::to_string(cfg.t) + "; adversary view = read wire values");
    emit(cfg, audit_report_json(rep));
    bool ok = rep.bound_respected && rep.simulator_message_independent &&
              sec.max_sd <= p.epsilon;
    return ok ? 0 : 1;
}

int cmd_bounds(const RunConfig& cfg) {
    std::ostringstream os;
    if (cfg.query == "capacity") {
        BoundsVerdict v = capacity_bound(cfg.rho_r, cfg.rho_w);
        os << v.value << "\n";
    } else if (cfg.query == "c2") {
        auto round_rat = [](double x) {
            return Rational(static_cast<uint64_t>(x * 1024 + 0.5), 1024);
        };
        BoundsVerdict v = c2_security_bound(round_rat(cfg.eps), round_rat(cfg.delta));
        os << v.value << " (" << v.verdict << ")\n";
    } else if (cfg.query == "c1") {
        BoundsVerdict v = c1_security_bound(cfg.n, cfg.t, cfg.r, static_cast<size_t>(cfg.rho_r * cfg.n),
                                            Rational(static_cast<uint64_t>(cfg.delta * 1024 + 0.5), 1024));
        os << v.value << " (" << v.verdict << ")\n";
    } else if (cfg.query == "regime") {
        BoundsVerdict v = regime_verdict(2, cfg.eps, cfg.rho_r, cfg.rho_w);
        os << v.verdict << "\n";
    } else {
        throw std::invalid_argument("bounds: unknown query " + cfg.query);
    }
    std::cout << os.str();
    if (!cfg.out.empty()) write_file(cfg.out, os.str());
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"non-malleable codes for read/write-limited bitwise tampering"};
    app.require_subcommand(1);
    // --h is a domain flag (code length parameter), so help is --help only
    app.set_help_flag("--help", "print help");

    auto subcmd = [](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* s = parent->add_subcommand(name, desc);
        s->set_help_flag("--help", "print help");
        return s;
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "global seed");
        sub->add_option("--out", cfg.out, "output path");
        sub->add_option("--config", cfg.config_path, "JSON config file");
    };

    CLI::App* code = subcmd(&app, "code", "build a code and serialize it");
    CLI::App* code_build = subcmd(code, "build", "");
    code_build->add_option("--construction", cfg.construction)->check(CLI::IsMember({1, 2}));
    code_build->add_option("--h", cfg.h);
    code_build->add_option("--n", cfg.n);
    code_build->add_option("--ell", cfg.ell);
    code_build->add_option("--r", cfg.r);
    code_build->add_option("--k", cfg.k);
    code_build->add_option("--u", cfg.u);
    code_build->add_option("--rho-r", cfg.rho_r);
    code_build->add_option("--rho-w", cfg.rho_w);
    code_build->add_option("--lecss", cfg.lecss_kind)->check(CLI::IsMember({"random", "rm"}));
    add_common(code_build);

    CLI::App* amd = subcmd(&app, "amd", "algebraic manipulation detection");
    CLI::App* amd_audit = subcmd(amd, "audit", "exhaustive failure oracle");
    amd_audit->add_option("--k", cfg.k);
    amd_audit->add_option("--u", cfg.u);
    add_common(amd_audit);

    CLI::App* wt = subcmd(&app, "wt", "wiretap coset codes");
    CLI::App* wt_audit = subcmd(wt, "audit", "exact privacy verification");
    wt_audit->add_option("--h", cfg.h);
    wt_audit->add_option("--max-set", cfg.max_set);
    add_common(wt_audit);

    CLI::App* lecss = subcmd(&app, "lecss", "error-correcting secret sharing");
    CLI::App* lecss_verify = subcmd(lecss, "verify", "measure (d, t)");
    lecss_verify->add_option("--n", cfg.n);
    lecss_verify->add_option("--ell", cfg.ell);
    lecss_verify->add_option("--r", cfg.r);
    add_common(lecss_verify);

    CLI::App* nm = subcmd(&app, "nm", "non-malleability audits");
    CLI::App* nm_audit = subcmd(nm, "audit", "simulator vs experiment");
    nm_audit->add_option("--construction", cfg.construction)->check(CLI::IsMember({1, 2}));
    nm_audit->add_option("--h", cfg.h);
    nm_audit->add_option("--n", cfg.n);
    nm_audit->add_option("--ell", cfg.ell);
    nm_audit->add_option("--r", cfg.r);
    nm_audit->add_option("--k", cfg.k);
    nm_audit->add_option("--u", cfg.u);
    nm_audit->add_option("--rho-r", cfg.rho_r);
    nm_audit->add_option("--rho-w", cfg.rho_w);
    nm_audit->add_option("--lecss", cfg.lecss_kind)->check(CLI::IsMember({"random", "rm"}));
    nm_audit->add_option("--adversaries", cfg.adversaries);
    nm_audit->add_option("--mode", cfg.mode)->check(CLI::IsMember({"exact", "montecarlo"}));
    nm_audit->add_option("--samples", cfg.samples);
    add_common(nm_audit);

    CLI::App* smt = subcmd(&app, "smt", "secure message transmission");
    CLI::App* smt_run = subcmd(smt, "run", "secrecy + non-malleability audits");
    smt_run->add_option("--n", cfg.n);
    smt_run->add_option("--t", cfg.t);
    smt_run->add_option("--msg-symbols", cfg.msg_symbols);
    smt_run->add_option("--adversaries", cfg.adversaries);
    smt_run->add_option("--mode", cfg.mode)->check(CLI::IsMember({"exact", "montecarlo"}));
    smt_run->add_option("--samples", cfg.samples);
    add_common(smt_run);

    CLI::App* bounds = subcmd(&app, "bounds", "reference calculators");
    bounds->add_option("query", cfg.query)->required();
    bounds->add_option("--rho-r", cfg.rho_r);
    bounds->add_option("--rho-w", cfg.rho_w);
    bounds->add_option("--rho", cfg.eps); // rho for regime queries
    bounds->add_option("--eps", cfg.eps);
    bounds->add_option("--delta", cfg.delta);
    bounds->add_option("--n", cfg.n);
    bounds->add_option("--t", cfg.t);
    bounds->add_option("--d", cfg.r);
    add_common(bounds);

    try {
        app.parse(argc, argv);
        CLI::App* active = app.get_subcommands().front();
        if (!cfg.config_path.empty()) {
            CLI::App* leaf = active->get_subcommands().empty()
                                 ? active
                                 : active->get_subcommands().front();
            merge_config(*leaf, cfg, cfg.config_path);
        }
        if (active->get_name() == "code") return cmd_code_build(cfg);
        if (active->get_name() == "amd") return cmd_amd_audit(cfg);
        if (active->get_name() == "wt") return cmd_wt_audit(cfg);
        if (active->get_name() == "lecss") return cmd_lecss_verify(cfg);
        if (active->get_name() == "nm") return cmd_nm_audit(cfg);
        if (active->get_name() == "smt") return cmd_smt_run(cfg);
        if (active->get_name() == "bounds") return cmd_bounds(cfg);
        std::cerr << "no command\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace nmcode
