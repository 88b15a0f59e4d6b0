#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O or malformed input files
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCheckFailed = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main(int argc, char** argv);

}  // namespace qot::cli
