#pragma once

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace loscov::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_numerical = 3,
    exit_infeasible = 4,
    exit_oracle = 5,
};

struct Context {
    nlohmann::json config;
    std::filesystem::path out_dir;
    unsigned threads = 1;
    std::vector<std::string> argv;
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;
};

// Each command writes its CSVs plus manifest.json into ctx.out_dir and
// returns the process exit code.
int cmd_blocking(const Context& ctx);
int cmd_assoc(const Context& ctx);
int cmd_regular(const Context& ctx);
int cmd_joint(const Context& ctx);
int cmd_validate(const Context& ctx);

/// Full command line front end (argument parsing included).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loscov::cli
