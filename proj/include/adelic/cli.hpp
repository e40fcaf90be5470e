#pragma once

// Batch command-line front end. Every subcommand writes one JSON document to
// `out`; failures write {"error": {"kind", "detail"}} to `err`.
//
// Exit status: 0 success, 1 a verification identity failed, 2 bad arguments
// or a domain error, 3 numeric non-convergence.

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace adelic::cli {

/// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "2", "2.5-1i", "0.5+14.13i". Throws InvalidArgument otherwise.
std::complex<double> parse_complex(const std::string &text);

/// Comma-separated list of complex numbers.
std::vector<std::complex<double>> parse_complex_list(const std::string &text);

} // namespace adelic::cli
