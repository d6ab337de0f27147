#pragma once

#include <map>
#include <string>
#include <vector>

namespace qfgcpe::cli {

/// Parses a comma-separated `key=value` list ("lambda=1" or "K=1,a=-1,b=0")
/// into named parameters. Malformed pairs and non-numeric values raise
/// std::invalid_argument with a message naming the offending token.
std::map<std::string, double> parse_params(const std::string& text);

/// Parses a numeric grid given either as "start:end:step" or as a comma
/// separated list.
std::vector<double> parse_grid(const std::string& text);

/// Entry point shared by the binary and the tests. Exit codes:
///   0  success, output written
///   1  computation error (divergence / non-convergence)
///   2  usage error (unknown flag, bad params, missing required flag)
/// All output is buffered and emitted atomically to --out (default stdout).
int run(int argc, const char* const* argv);

} // namespace qfgcpe::cli
