#pragma once

#include <optional>
#include <string>
#include <vector>

#include "instance.hpp"
#include "operations.hpp"

namespace atomemb {

enum class Reason {
  Positive,
  NonplanarLocal,          // detail: atom
  IncompatibleRotations,   // detail: pipe
  ToroidalMismatch,        // detail: component's lowest atom
  UnsatTwoSat,
};

struct DecideStats {
  std::size_t ops = 0;           // elementary operations after preprocessing
  std::uint64_t initial_phi = 0; // potential right after preprocessing
  std::size_t initial_n_ge3 = 0;
  std::uint64_t budget = 0;      // 64 * (initial_phi + initial_n_ge3)
  std::size_t iterations = 0;    // main-loop iterations (one per Delta level)
  std::vector<std::uint64_t> phi_after_iteration;
};

struct Decision {
  bool embeddable = false;
  Reason reason = Reason::Positive;
  std::string detail;
  DecideStats stats;
};

// Suppress every pipe of degree < 3, then split disconnected local graphs,
// to fixpoint (the hooks).
Instance preprocess(Instance inst, RewriteTrace* trace = nullptr);

// Subroutines operate on a normal instance with Delta >= 4. A missing
// instance in the result means the subroutine proved non-embeddability.
struct StepResult {
  std::optional<Instance> inst;
  Reason reason = Reason::Positive;
  std::string detail;
};

StepResult subroutine1(Instance inst, RewriteTrace* trace = nullptr);
StepResult subroutine2(Instance inst, RewriteTrace* trace = nullptr);

// N0-N2 audit for the given degree bound.
bool is_nice(const Instance& inst, std::size_t d);

// Embeddability of one toroidal component (atoms of one H-cycle): every
// G-cycle must cross the same number of pipes.
bool decide_toroidal(const Instance& inst, const std::vector<VertexId>& atoms);

// Subcubic postprocessing: deletes local cut edges and encloses one side of
// every proper 2-edge-cut to fixpoint; non-toroidal local graphs come out as
// cycles, p-paths, or subdivided 3-connected graphs.
Instance postprocess_subcubic(Instance inst, RewriteTrace* trace = nullptr);

Decision decide(const Instance& inst, RewriteTrace* trace = nullptr);

}  // namespace atomemb
