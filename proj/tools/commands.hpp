#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace semilin::cli {

// exit codes
inline constexpr int kOk = 0;
inline constexpr int kFail = 1;      // check failed, or synthesize found no invariant
inline constexpr int kBadInput = 2;  // parse errors, malformed files, wrong instance kind
inline constexpr int kUnknown = 3;   // decide could not settle the instance

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// SEMILIN_CORPUS when set, else the bundled corpus directory
std::string corpus_dir();

}  // namespace semilin::cli
