#pragma once

#include <ostream>

namespace nsflow::cli {

// Exit codes.
inline constexpr int kSuccess = 0;
inline constexpr int kInfeasibleOrDisagreement = 1;
inline constexpr int kInputError = 2;
inline constexpr int kGuardTripped = 3;

// Entry point of the `nsflow` tool. Subcommands:
//   solve-maxflow <file> [--algo simplex|reduction|ek] [--leaving first|last]
//                        [--trace <path>] [--json] [--cut] [--flow-out <path>]
//   solve-mcfp <file> [--leaving first|last] [--json] [--flow-out <path>]
//   verify <file> --flow <flowfile>
//   gen --seed N [--nodes N] [--edges M] [--maxcap C] [--zero-prob P] [-o <file>]
//   check-cycling --trace <path>
//   bench --seeds A..B [--leaving first|last] [--nodes N] [--edges M] [--maxcap C]
//         [--zero-prob P]
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nsflow::cli
