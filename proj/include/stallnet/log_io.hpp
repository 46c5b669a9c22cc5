#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "stallnet/trajectory.hpp"

namespace stallnet {

// JSON Lines log format, version 1 (see docs/FORMATS.md):
//   line 1   metadata record with fixed key order
//   line 2+  one improvement event per line: {"evals":N,"fitness":F,"x":[...]}
// Doubles are printed as shortest round-trip decimals, so write -> read -> write
// is byte identical.
inline constexpr int kLogFormatVersion = 1;
inline constexpr std::string_view kGeneratorName = "xoshiro256++";

std::string serialize_log(const TrajectoryLog& log);
void write_log(const TrajectoryLog& log, std::ostream& out);
void write_log_file(const TrajectoryLog& log, const std::filesystem::path& path);

TrajectoryLog parse_log(std::istream& in);
TrajectoryLog read_log_file(const std::filesystem::path& path);

}  // namespace stallnet
