#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mixprof/montecarlo.hpp"
#include "mixprof/profile_point.hpp"
#include "mixprof/verify.hpp"

namespace mixprof {

// Header carried by every emitted file so a run can be regenerated from its
// output alone.
struct RunRecord {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::string build_id;
    std::string mode;  // "float" or "exact"
    std::optional<std::uint64_t> seed;
};

// Round-trip-exact decimal formatting for binary64.
std::string format_full(double v);

std::string profile_table_csv(const RunRecord& record, const std::vector<ProfilePoint>& rows);
std::string profile_table_json(const RunRecord& record, const std::vector<ProfilePoint>& rows);

std::string histogram_csv(const RunRecord& record, const Histogram& hist,
                          const std::string& footer);
std::string histogram_json(const RunRecord& record, const Histogram& hist,
                           const std::string& footer);

std::string verification_report_json(const std::string& suite,
                                     const std::vector<CheckResult>& results);

}  // namespace mixprof
