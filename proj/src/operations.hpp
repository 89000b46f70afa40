#pragma once

#include <optional>
#include <string>
#include <vector>

#include "instance.hpp"

namespace atomemb {

struct OpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One applied rewrite. Parameters are recorded in instance-level terms
// (G-vertex ids, pipe ids, original G-edge ids) so a trace can be replayed
// against the initial instance; hook-generated entries are marked auto and
// are regenerated on replay rather than applied.
struct TraceEntry {
  std::string op;  // suppress/split/detach/enclose/stretch-ordinary/...
  bool auto_hook = false;
  std::vector<std::uint32_t> vertex_params;  // G vertices
  std::vector<std::uint32_t> pipe_params;    // pipes / atoms, op-dependent
  std::vector<std::uint32_t> edge_params;    // G edges
  std::vector<std::string> cut_params;       // enclose cut: "v:<gv>" / "p:<pipe>"
  std::vector<std::uint32_t> created_atoms, created_pipes;
  std::vector<std::uint32_t> created_vertices, created_edges;
};

struct RewriteTrace {
  std::vector<TraceEntry> entries;
  std::size_t op_count() const;  // non-auto entries
};

std::string trace_to_jsonl(const RewriteTrace& t);
RewriteTrace trace_from_jsonl(const std::string& text);
// Reapplies the non-auto entries (with hooks) to a copy of `initial`.
Instance replay_trace(const Instance& initial, const RewriteTrace& t);

// ---- the seven rewrites ---------------------------------------------------
// Each takes the instance by value, applies the rewrite, runs the hooks
// (unless run_hooks_after is false), and returns the result. Precondition
// violations throw OpError and never partially mutate the result.

// Removes a pipe with |phi^-1[rho]| <= 2, splicing new ordinary endpoints in.
Instance suppress(Instance inst, EdgeId pipe, RewriteTrace* trace = nullptr,
                  bool run_hooks_after = true);

// Splits an atom whose local graph is disconnected into one atom per
// component; pipes follow their virtual vertex.
Instance split(Instance inst, VertexId atom, RewriteTrace* trace = nullptr,
               bool run_hooks_after = true);

// Replaces an ordinary vertex all of whose bridges are p-paths with a pole
// at it by one leaf per incident edge.
Instance detach(Instance inst, VertexId g_vertex, RewriteTrace* trace = nullptr,
                bool run_hooks_after = true);

// Moves a bridge of `cut` in the local graph of lg.atom into a fresh atom
// behind a fresh pipe. The bridge must have nonempty interior.
Instance enclose(Instance inst, const LocalGraph& lg,
                 const std::vector<VertexId>& cut_local, const Bridge& bridge,
                 RewriteTrace* trace = nullptr, bool run_hooks_after = true,
                 VertexId* new_atom = nullptr, EdgeId* new_pipe = nullptr);

// Splits an ordinary vertex: edges in `g_edges` move to a fresh neighbour u'
// joined to u. Requires 0 < |g_edges| < deg(u).
Instance stretch_ordinary(Instance inst, VertexId g_vertex,
                          const std::vector<EdgeId>& g_edges,
                          RewriteTrace* trace = nullptr,
                          bool run_hooks_after = true);

// Splits a pipe: edges in `g_edges` (a proper nonempty subset of its fiber)
// move onto a fresh parallel pipe; a fresh two-vertex G component with one
// edge through each pipe keeps both virtual vertices adjacent.
Instance stretch_virtual(Instance inst, EdgeId pipe,
                         const std::vector<EdgeId>& g_edges,
                         RewriteTrace* trace = nullptr,
                         bool run_hooks_after = true,
                         EdgeId* new_pipe = nullptr);

// Merges the two endpoints of a pipe that is the only pipe between its
// atoms, when both local graphs are p-stars centered at the pipe's virtual
// vertices or one is a p-path with the pipe at a pole, the virtual vertices
// having maximum local degree.
Instance contract(Instance inst, EdgeId pipe, RewriteTrace* trace = nullptr,
                  bool run_hooks_after = true);

// Deletes a cut edge of a subcubic local graph. For an ordinary-virtual
// edge the pipe (fiber size 2 or 3) is suppressed and the surviving stub is
// rejoined to the far endpoint.
Instance delete_edge(Instance inst, VertexId atom, EdgeId g_edge,
                     RewriteTrace* trace = nullptr, bool run_hooks_after = true);

// Suppress every pipe of degree < 3 (ascending id, to fixpoint), then split
// every atom with a disconnected local graph, repeating until stable.
Instance run_hooks(Instance inst, RewriteTrace* trace = nullptr);

}  // namespace atomemb
