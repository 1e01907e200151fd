#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "invlim/config.hpp"

namespace invlim::cli {

inline constexpr int kPass = 0;
inline constexpr int kFalsified = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kIndeterminate = 3;

/// Runs one command; writes line-delimited JSON records (or CSV) to out and
/// diagnostics to err. Returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// argv front end: `invlim <command> [--config file] [--key value ...]`.
/// Flags override config keys of the same name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace invlim::cli
