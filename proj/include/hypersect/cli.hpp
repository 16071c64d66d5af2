#pragma once

#include "hypersect/report.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hypersect::cli {

/// Everything needed to re-execute a command. `params` holds the
/// command-specific flags by long name, exactly as given.
struct RunConfig {
    std::string command;
    std::string surface;  // kind:params form; empty when the command takes none
    QuadratureConfig quad;
    std::map<std::string, std::string> params;
    std::string format = "json";
    std::string output;
};

Json to_json(const RunConfig& cfg);
/// Key-value lines that `--config` reads back into the same RunConfig.
std::string to_key_values(const RunConfig& cfg);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFails = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypersect::cli
