#pragma once

#include <string>

#include "json.hpp"

#include "cac/channel.hpp"
#include "cac/code.hpp"
#include "cac/constructions.hpp"
#include "cac/optimality.hpp"

namespace cac {

// All files use one canonical rendering: two-space indent, insertion-ordered
// keys, trailing newline.  parse -> emit is byte-identical.
using ordered_json = nlohmann::ordered_json;

std::string canonical_dump(const ordered_json& j);

// Codes are stored with sorted codewords and sorted elements; equi-difference
// generators ride along keyed by codeword position.
ordered_json code_to_json(const Code& code);
Code code_from_json(const ordered_json& j);

ordered_json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const ordered_json& j);

ordered_json report_to_json(const GuaranteeReport& report, const std::string& code_ref);

ordered_json sdr_report_to_json(const SdrConditionReport& report);
ordered_json wp_report_to_json(const WpConditionReport& report);

// Throw std::runtime_error with the offending path on I/O or parse failure.
ordered_json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const ordered_json& j);

}  // namespace cac
