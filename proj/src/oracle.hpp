#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "embedding.hpp"
#include "instance.hpp"
#include "reductions.hpp"

namespace atomemb {

// Hard caps on the exhaustive search; hitting any of them yields an explicit
// Overflow verdict, never a guess.
struct OracleLimits {
  std::size_t max_systems_per_graph = 200000;
  std::uint64_t max_combinations = 5'000'000;  // search tree nodes
  std::chrono::milliseconds time_budget{60'000};
};

enum class OracleVerdict { Positive, Negative, Overflow };

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::Negative;
  std::uint64_t nodes = 0;  // search tree nodes visited
  // Chosen genus-0 rotation systems, one per searched graph, when Positive.
  std::vector<RotationSystem> witness;

  bool positive() const { return verdict == OracleVerdict::Positive; }
  bool overflow() const { return verdict == OracleVerdict::Overflow; }
};

// Exhaustive ground truth: searches genus-0 rotation systems of every local
// graph for a combination where each pipe's two virtual rotations are
// opposite under the correspondence of original G edges.
OracleResult oracle_decide(const Instance& inst, const OracleLimits& limits = {});

// Same search over vertex links: spherical link embeddings with opposite
// rotations at the two ends of every H edge.
OracleResult neuwirth_check(const Polyhedron& p, const OracleLimits& limits = {});

}  // namespace atomemb
