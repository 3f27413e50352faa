#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace lamina::cli {

inline constexpr const char* kCsvVersion = "lamina-scan-csv/1";

json scan_angle(const Angle& alpha, const RunConfig& cfg);
// Evaluates every angle on a pool of cfg.jobs workers; records come back in
// input order whatever the completion order.
json scan(const std::vector<Angle>& family, const RunConfig& cfg);
std::string scan_csv(const json& report);

}  // namespace lamina::cli
