/*
 * cli.hpp
 * -------
 * Command-line driver. run() parses one command (program name excluded),
 * writes the result to `out` and diagnostics to `err`, and returns the
 * process exit code: 0 on success, 2 on usage errors, 3 on domain errors,
 * 4 when an evaluation certificate or resource bound fails.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace charop::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace charop::cli
