#pragma once

#include <cstdint>
#include <string>

#include "indep/brute.hpp"
#include "indep/report.hpp"

namespace indep {

enum class Format { table, json, csv };

Format parse_format(const std::string& name);

/// Counts are emitted as decimal strings; key order and class order are
/// fixed, so output is byte-stable. Timing metadata only when requested.
std::string render_json(const CensusReport& report, bool with_timing = false);
std::string render_csv(const CensusReport& report);
std::string render_text(const CensusReport& report, bool with_timing = false);
std::string render(const CensusReport& report, Format format, bool with_timing = false);

/// Pair classes of the uniform n-point space grouped by intersection size,
/// with size factorizations and pattern labels per row.
std::string render_pair_table(std::int64_t n);

std::string render_verification(const VerificationReport& report, Format format);

/// "{0,1,2}"
std::string format_event(const Event& e);

}  // namespace indep
