#ifndef RFP_CLI_HPP
#define RFP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "rfp/validation.hpp"

namespace rfp::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< runtime error or failed check
inline constexpr int kExitUsage = 2;    ///< bad flags or invalid inputs

enum class OutputFormat { Table, Csv, Json };

/// Entry point behind the rfpcmp binary. `args` excludes the program name.
/// Reports go to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The `validate` subcommand with explicit options.
int validate(const ValidationOptions& options, OutputFormat format,
             std::ostream& out, std::ostream& err);

}  // namespace rfp::cli

#endif  // RFP_CLI_HPP
