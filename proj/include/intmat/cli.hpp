#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "intmat/rng.hpp"

namespace intmat::cli {

enum class Command { Estimate, Exact, Fit, MdsVerify, MdsGenerate, Lcd, Compress, Charfunc, Smallball, NormalVector };
enum class OutputFormat { Human, Json, Csv };

struct RunConfig {
    Command command = Command::Estimate;
    Seed seed;
    unsigned threads = 1;
    OutputFormat format = OutputFormat::Human;
    std::optional<std::filesystem::path> output_path;
};

// Exit status: 0 success (including negative verdicts), 1 usage / domain /
// validation error, 2 budget exceeded or generation failure.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace intmat::cli
