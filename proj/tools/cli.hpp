#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace galent::cli {

inline constexpr int kReportSchemaVersion = 1;

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kInternalFailure = 1;
inline constexpr int kPreconditionFailure = 2;

// Runs one invocation; `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace galent::cli
