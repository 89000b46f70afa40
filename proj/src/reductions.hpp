#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "instance.hpp"

namespace atomemb {

// Clustered-planarity input: a simple graph plus a rooted cluster tree
// (nodes = regions bounded by the disjoint closed curves, tree edges =
// curves), with every graph vertex assigned to a region.
struct ClusteredInstance {
  Multigraph g;     // simple, loopless
  Multigraph tree;  // nodes + one edge per curve (child-parent)
  VertexId root;
  std::unordered_map<std::uint32_t, VertexId> node_of_vertex;  // V(g) -> node
  std::unordered_map<std::uint32_t, std::string> node_names, vertex_names;
};

std::vector<std::string> validate(const ClusteredInstance& ci);  // empty = ok
ClusteredInstance parse_clustered(const std::string& json_text);
std::string clustered_to_json(const ClusteredInstance& ci);

// 2-polyhedron: a loopless multigraph with a set of facet cycles covering
// every edge at least once.
struct Polyhedron {
  Multigraph h;
  std::vector<std::vector<EdgeId>> facets;  // cyclic edge sequences
  std::unordered_map<std::uint32_t, std::string> atom_names, pipe_names;
};

std::vector<std::string> validate(const Polyhedron& p);  // empty = ok
Polyhedron parse_polyhedron(const std::string& json_text);
std::string polyhedron_to_json(const Polyhedron& p);

// The facet's vertex sequence: facet edge i joins vertices i and i+1 (mod k).
// Throws GraphError when the edge list is not a cycle of h.
std::vector<VertexId> facet_vertices(const Multigraph& h,
                                     const std::vector<EdgeId>& facet);

// Link of v: one vertex per edge of H at v, one link edge per facet that
// passes through v (joining the two facet edges meeting at v).
struct LinkGraph {
  Multigraph graph;
  std::unordered_map<std::uint32_t, EdgeId> h_edge_of_local;
  std::unordered_map<std::uint32_t, VertexId> local_of_h_edge;
  // link edge -> index of the facet that contributed it (a cycle facet
  // passes an H edge once, so the index identifies the visit).
  std::unordered_map<std::uint32_t, std::size_t> facet_of_edge;
};

LinkGraph link_graph(const Polyhedron& p, VertexId v);

// H = the cluster tree; every graph edge is subdivided along the tree path
// between its endpoints' regions, one piece per crossed curve.
Instance from_cplanarity(const ClusteredInstance& ci);

// H unchanged; G = one disjoint cycle per facet.
Instance from_thickenability(const Polyhedron& p);

// P(phi): H doubled, one vertical edge per G-vertex, a bigon facet per
// intra-atom edge and a 4-cycle facet per cross-pipe edge.
Polyhedron to_thickenability(const Instance& inst);

}  // namespace atomemb
