#pragma once

#include <string>
#include <vector>

#include "lzs/app/config.hpp"
#include "lzs/app/export.hpp"

namespace lzs::app {

enum class Command { Sweep, Ft, Darkstate, Lzcheck };

struct RunReport {
  std::vector<std::string> files;     // written, in order
  std::vector<std::string> messages;  // one-line summaries for the console
};

/// Executes one subcommand and writes its files under config.output.dir.
/// Output bytes depend only on the config, never on the worker count.
RunReport run(Command command, const RunConfig& config);

/// Metadata lines shared by every file a run writes.
Header provenance(const RunConfig& config, const std::string& kind);

/// Exit status for an exception escaping run(): 1 config, 2 numeric, 3 I/O.
int exit_code_for(const std::exception& error);

}  // namespace lzs::app
