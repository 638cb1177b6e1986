#pragma once

#include <string>
#include <string_view>

#include "nsflow/network.hpp"

// DIMACS-style text formats. Files use 1-based vertex ids; everything in
// memory is 0-based.
//
//   max flow:   p max <n> <m> / n <id> s / n <id> t / a <tail> <head> <cap>
//   min cost:   p min <n> <m> / n <id> <demand> / a <tail> <head> <low> <cap> <cost>
//
// The min-cost node value is the demand d(v) = inflow - outflow, so a supply
// vertex carries a negative number. Lines starting with `c` and blank lines
// are ignored. Errors are FlowError with the 1-based line number as index.
namespace nsflow::dimacs {

MfpNetwork parse_max(std::string_view text);
std::string write_max(const MfpNetwork& net);

McfpNetwork parse_min(std::string_view text);
std::string write_min(const McfpNetwork& net);

enum class ProblemKind { kMax, kMin };

// Kind named by the first problem line; throws kParseError if there is none.
ProblemKind detect_kind(std::string_view text);

// Edge flow files: `f <arc> <value>` with 1-based arc numbers in file order.
// Arcs not listed carry zero.
Flow parse_flow(std::string_view text, EdgeId edge_count);
std::string write_flow(const Flow& f);

std::string read_file(const std::string& path);

}  // namespace nsflow::dimacs
