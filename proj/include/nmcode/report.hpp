#pragma once

#include <string>

#include "nmcode/nmc.hpp"
#include "nmcode/smt.hpp"
#include "nmcode/wiretap.hpp"

namespace nmcode {

// Reports serialize with a fixed field order so identical inputs yield
// byte-identical files.
std::string audit_report_json(const AuditReport& rep);
std::string session_log_json(const SessionLog& log);
std::string secrecy_report_json(const SecrecyReport& rep, size_t set_size);

void write_file(const std::string& path, const std::string& content);

} // namespace nmcode
