#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "multigraph.hpp"

namespace atomemb {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Image of a G-edge under the simplicial map: a pipe (H-edge) for cross-atom
// edges, the common atom (H-vertex) otherwise.
struct EdgeImage {
  bool is_pipe = false;
  std::uint32_t id = 0;

  static EdgeImage pipe(EdgeId p) { return {true, p.value}; }
  static EdgeImage atom(VertexId a) { return {false, a.value}; }
  EdgeId pipe_id() const { return EdgeId{id}; }
  VertexId atom_id() const { return VertexId{id}; }
  bool operator==(const EdgeImage&) const = default;
};

// A simplicial map phi: G -> H. H's vertices are atoms, H's edges pipes.
// Names are serialization sugar: entities created by rewrites have none and
// receive generated names on output.
struct Instance {
  Multigraph g;
  Multigraph h;
  std::unordered_map<std::uint32_t, VertexId> vertex_atom;  // V(G) -> atom
  std::unordered_map<std::uint32_t, EdgeImage> edge_image;  // E(G) -> pipe/atom

  std::unordered_map<std::uint32_t, std::string> atom_names, pipe_names;
  std::unordered_map<std::uint32_t, std::string> gvertex_names, gedge_names;

  VertexId atom_of(VertexId gv) const { return vertex_atom.at(gv.value); }
  EdgeImage image_of(EdgeId ge) const { return edge_image.at(ge.value); }

  std::vector<EdgeId> pipe_edges(EdgeId pipe) const;  // ascending G-edge ids
  std::size_t pipe_degree(EdgeId pipe) const { return pipe_edges(pipe).size(); }
};

// Per-atom local graph: ordinary vertices are the fiber of the atom, virtual
// vertices stand in for incident pipes.
struct LocalGraph {
  VertexId atom;
  Multigraph graph;
  std::unordered_map<std::uint32_t, VertexId> local_of_g_vertex;
  std::unordered_map<std::uint32_t, VertexId> local_of_pipe;
  std::unordered_map<std::uint32_t, VertexId> g_vertex_of_local;  // ordinary only
  std::unordered_map<std::uint32_t, EdgeId> pipe_of_local;        // virtual only
  std::unordered_map<std::uint32_t, EdgeId> g_edge_of_local;      // e -> ē
  std::unordered_map<std::uint32_t, EdgeId> local_of_g_edge;

  bool is_virtual(VertexId local) const { return pipe_of_local.count(local.value) != 0; }
  EdgeId original(EdgeId local) const { return g_edge_of_local.at(local.value); }
};

std::vector<std::string> validate(const Instance& inst);  // empty = ok
LocalGraph local_graph(const Instance& inst, VertexId atom);
bool is_normal(const Instance& inst);

// Components of H (as ascending atom lists) that are toroidal: the component
// is a cycle and every local graph is a p-path whose poles are the two
// virtual vertices.
std::vector<std::vector<VertexId>> toroidal_components(const Instance& inst);
// Atoms not in any toroidal component (V*(H)), ascending.
std::vector<VertexId> nontoroidal_atoms(const Instance& inst);

std::size_t delta(const Instance& inst);  // 2 when V*(H) is empty

struct PotentialEntry {
  VertexId atom;
  VertexId local_vertex;
  std::size_t deg = 0;
  int xi = 3;
  int sigma = 1;
  std::uint64_t contribution = 0;
};

struct PotentialReport {
  std::uint64_t phi = 0;
  std::size_t n = 0;        // |V(𝒢)|
  std::size_t n_ge3 = 0;    // vertices of degree >= 3
  std::vector<PotentialEntry> entries;
};

PotentialReport potential(const Instance& inst);

// ---- JSON (bit-exact external contract) -----------------------------------

Instance parse_instance(const std::string& json_text);   // throws ParseError
std::string instance_to_json(const Instance& inst);      // 2-space indent + '\n'

}  // namespace atomemb
