#include "nmcode/report.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace nmcode {

namespace {

nlohmann::ordered_json regime_json(const Regime& r) {
    nlohmann::ordered_json j;
    j["read_budget"] = r.read_budget;
    j["write_budget"] = r.write_budget;
    j["within_primary"] = r.within_primary;
    j["within_small_write"] = r.within_small_write;
    j["guaranteed"] = r.guaranteed;
    j["description"] = r.description;
    return j;
}

} // namespace

std::string audit_report_json(const AuditReport& rep) {
    nlohmann::ordered_json j;
    j["code_params"] = rep.code_params;
    j["regime"] = regime_json(rep.regime);
    j["claimed_bound"] = rep.claimed_bound;
    j["claimed_bound_fraction"] = rep.claimed_bound_fraction;
    nlohmann::ordered_json adv = nlohmann::ordered_json::array();
    for (const auto& a : rep.per_adversary) {
        nlohmann::ordered_json e;
        e["f_digest"] = a.f_digest;
        e["max_sd"] = a.max_sd;
        e["max_sd_fraction"] = a.max_sd_fraction;
        e["worst_m"] = a.worst_m;
        if (a.half_width > 0) e["half_width"] = a.half_width;
        adv.push_back(e);
    }
    j["per_adversary"] = adv;
    j["max_sd"] = rep.max_sd;
    j["max_sd_fraction"] = rep.max_sd_fraction;
    j["mode"] = rep.mode;
    j["seed"] = rep.seed;
    j["samples"] = rep.samples;
    j["simulator_message_independent"] = rep.simulator_message_independent;
    j["bound_respected"] = rep.bound_respected;
    j["notes"] = rep.notes;
    return j.dump(2) + "\n";
}

std::string session_log_json(const SessionLog& log) {
    nlohmann::ordered_json j;
    j["message"] = log.message;
    j["adversary"] = log.adversary;
    j["sent"] = log.sent;
    j["received"] = log.received;
    j["outcome"] = log.outcome.str();
    j["seed"] = log.seed;
    return j.dump(2) + "\n";
}

std::string secrecy_report_json(const SecrecyReport& rep, size_t set_size) {
    nlohmann::ordered_json j;
    j["set_size"] = set_size;
    j["max_sd"] = rep.max_sd.value();
    j["max_sd_fraction"] = rep.max_sd.str();
    j["views_uniform"] = rep.views_uniform;
    j["witness_set"] = rep.witness_set;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << content;
    if (!os) throw std::runtime_error("failed while writing " + path);
}

} // namespace nmcode
