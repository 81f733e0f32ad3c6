// cli.hpp — qsync command-line front end

#pragma once

#include <map>
#include <string>
#include <vector>

namespace qsync::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationError = 1,
    kVerificationFailure = 2,
    kIoError = 3,
};

// Flat "key = value" config file; '#' starts a comment.
// Throws std::invalid_argument on malformed lines and qsync::IoError when the
// file cannot be read.
std::map<std::string, std::string> read_config(const std::string& path);

// Full argv including the program name. Returns one of ExitCode.
int parse_and_dispatch(int argc, const char* const* argv);
int parse_and_dispatch(const std::vector<std::string>& args);

} // namespace qsync::cli
