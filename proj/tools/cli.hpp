#pragma once

// seneca-lab command-line front end. The entry point and the file readers
// and writers are exposed so tests can drive them in-process.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "seneca/grid.hpp"
#include "seneca/sample.hpp"

namespace seneca::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,
    exit_input = 3,
    exit_numeric = 4,
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Runs one command line (args excludes the program name) and returns the
/// process exit code. Diagnostics go to `err`; stdout-bound output to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CountsTable {
    std::vector<std::string> labels;  // aligned with counts.counts()
    SampleCounts counts;
};

/// Reads a `label,count` CSV with header, or a headerless column of counts
/// (labels are then "1", "2", ... by line). Throws InputError naming the
/// file, line and column of the first problem.
CountsTable read_counts(const std::filesystem::path& path);
CountsTable parse_counts(std::string_view text, const std::string& source);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Built-in grids: "table1" (n = 10) and "table2" (n = 20). Throws
/// UsageError for other names.
GridConfig preset(const std::string& name);

/// Grid config from a JSON document mirroring GridConfig's fields. Throws
/// UsageError on unknown keys, wrong types or an invalid config.
GridConfig parse_grid_config(std::string_view json_text);

std::string sha256_hex(const std::filesystem::path& path);

}  // namespace seneca::cli
