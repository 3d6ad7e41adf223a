#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rankedge/core_matrix.hpp"
#include "rankedge/error.hpp"

namespace rankedge {

// Process exit code for each error kind.
int exit_code(ErrorKind kind);

// Matrix from a CSV file (one row per line) or a JSON array of rows.
ScoreMatrix read_matrix(const std::string& path);
// Sequence from a JSON array or from numbers separated by commas/whitespace.
std::vector<double> read_sequence(const std::string& path);

// Reads "key = value" / "key value" lines (# starts a comment) and appends
// "--key value" for every key not already given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args, const std::string& config_path);

// Full command-line entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rankedge
