#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace pscat::cli {

// Everything needed to reproduce one run.  Parameters are kept as the
// strings given on the command line (defaults filled in), so a config
// survives a JSON round trip exactly.
struct ExperimentConfig {
    std::string subcommand;  // "limit psi" style for nested commands
    std::map<std::string, std::string> params;
    std::uint64_t master_seed = 0;
    std::string output;  // empty: stdout
    std::string format = "csv";

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

std::string serialize(const ExperimentConfig& config);
ExperimentConfig parse_config(const std::string& text);

// Runs a parsed config.  Thread count does not affect the output.
void execute(const ExperimentConfig& config, unsigned threads, std::ostream& out);

// Full command line entry point: 0 success, 1 validation error, 2 accuracy
// not met.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace pscat::cli
