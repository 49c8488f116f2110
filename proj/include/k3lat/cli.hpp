#pragma once

// Subcommand handlers and the argument front end. Every handler is a pure
// function of a canonical inputs object, which is what makes replay work.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "k3lat/json_io.hpp"
#include "k3lat/zarhin.hpp"

namespace k3lat::cli {

using io::json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kScanCeilingEnv = "K3LAT_SCAN_CEILING";

enum ExitCode : int { kOk = 0, kInvalid = 1, kCertificateOnly = 2, kInternal = 3 };

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct CommandResult {
    json outputs;
    std::vector<NamedCheck> checks;
    int exit_code = kOk;
    std::optional<Table> table;  // CSV rendering, when the command has one
};

// Runs a subcommand on canonical inputs (as stored in a manifest).
CommandResult execute(const std::string& command, const json& inputs);

json make_manifest(const std::string& command, const json& inputs, const CommandResult& r);
std::string render_json(const json& j);
std::string render_csv(const Table& t);

// argv without the program name. `env_ceiling` is the value of the scan
// ceiling variable, if set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_ceiling = std::nullopt);

} // namespace k3lat::cli
