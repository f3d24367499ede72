#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "forge/algobank.hpp"
#include "forge/hypergraph.hpp"
#include "forge/profile.hpp"

namespace forge {

// WPPL-lite, one statement per line, '#' starts a comment:
//
//   program := { line }
//   line    := [ stmt ] [ '#' text ]
//   stmt    := input | assign | branch
//   input   := 'input' NAME [ attrs ]
//   assign  := NAME '=' NAME '(' [ NAME { ',' NAME } ] ')' [ attrs ]
//   branch  := 'branch' '(' NAME ')' '{' 'probs' ':' NUM { ',' NUM } '}' '->' NAME { ',' NAME }
//   attrs   := '[' attr { ',' attr } ']'
//   attr    := ( 'bytes' | 'size' ) '=' INT
//
// Every assignment becomes a vertex whose algorithm is the called op; its
// level is the longest def-use chain from the inputs. Each operand produced
// by another assignment becomes an edge carrying that operand's declared
// bytes. A branch attaches a control vector to the named vertex; its labels
// must be exactly that vertex's consumers.
HyperGraph scan_program(std::string_view text, const AlgoBank& bank);

// Per ALFU: mean and population variance of its per-level vertex count,
// counting 0 on levels where it is absent.
std::map<std::string, UnitStats> unit_statistics(const HyperGraph& g);

ComplexityProfile extract_profile(const HyperGraph& g, const AlgoBank& bank);

// Per-level sorted (in-degree, out-degree) sequences, hashed. Two graphs with
// different values are certainly not isomorphic.
std::uint64_t structure_hash(const HyperGraph& g);

struct CloneOptions {
  std::uint64_t seed = 0;
  double tolerance = 0.05;
  // Clones colliding with any of these structure hashes are re-seeded.
  std::span<const HyperGraph> sources{};
  int max_attempts = 16;
};

// Builds a new graph whose extracted profile matches `target` within
// tolerance on every table row and matrix cell (cells that are zero must be
// reproduced exactly). Throws InfeasibleTarget naming the level or cell.
HyperGraph synthesize_clone(const ComplexityProfile& target, const AlgoBank& bank, const CloneOptions& options);

struct ProfileDiff {
  bool within = true;
  double worst_row_error = 0.0;   // relative
  double worst_cell_error = 0.0;  // relative; absolute on zero cells
  std::string worst_location;
};

// Compares an extracted profile to a target under the clone tolerance rule.
ProfileDiff compare_profiles(const ComplexityProfile& got, const ComplexityProfile& target, double tolerance);

}  // namespace forge
