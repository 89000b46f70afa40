#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ids.hpp"

namespace atomemb {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Undirected multigraph with stable ids. Parallel edges are first-class;
// loops are permitted at this level (suppressed graphs need them) and are
// rejected where the instance model forbids them.
class Multigraph {
 public:
  VertexId add_vertex();
  // Inserts a vertex with a caller-chosen id (used to build subgraphs that
  // share ids with their parent). The id must not collide with a live or
  // previously removed vertex unless it is past the current counter.
  void add_vertex_with_id(VertexId v);
  EdgeId add_edge(VertexId u, VertexId v);
  void add_edge_with_id(EdgeId e, VertexId u, VertexId v);

  void remove_edge(EdgeId e);
  void remove_vertex(VertexId v);  // removes incident edges too
  // Moves an existing edge onto new endpoints, keeping its id.
  void reattach(EdgeId e, VertexId u, VertexId v);

  bool has_vertex(VertexId v) const;
  bool has_edge(EdgeId e) const;

  std::pair<VertexId, VertexId> ends(EdgeId e) const;
  VertexId other_end(EdgeId e, VertexId v) const;
  bool is_loop(EdgeId e) const;

  std::size_t degree(VertexId v) const;  // a loop contributes 2
  // Incident edges in ascending id order; a loop appears once.
  std::vector<EdgeId> incident_edges(VertexId v) const;

  std::vector<VertexId> vertices() const;  // ascending id
  std::vector<EdgeId> edges() const;       // ascending id
  std::size_t vertex_count() const { return n_vertices_; }
  std::size_t edge_count() const { return n_edges_; }

  std::uint32_t vertex_id_bound() const { return (std::uint32_t)vrec_.size(); }
  std::uint32_t edge_id_bound() const { return (std::uint32_t)erec_.size(); }

  bool connected() const;  // vacuously true when empty
  // Connected components as vertex lists (each ascending, listed by lowest id).
  std::vector<std::vector<VertexId>> components() const;
  bool is_cycle() const;  // connected, nonempty, every degree == 2, loopless

 private:
  struct VRec {
    bool alive = false;
    std::vector<EdgeId> incident;  // kept sorted; loops listed once
  };
  struct ERec {
    bool alive = false;
    VertexId a, b;
  };
  std::vector<VRec> vrec_;
  std::vector<ERec> erec_;
  std::size_t n_vertices_ = 0;
  std::size_t n_edges_ = 0;

  const VRec& vat(VertexId v) const;
  const ERec& eat(EdgeId e) const;
};

// ---- derived structures -------------------------------------------------

// Result of suppressing every degree-2 vertex. Vertices keep their parent
// ids; each new edge remembers the path of parent edges it replaced, listed
// from ends(e).first to ends(e).second. Loops appear for leaf-block cycles.
struct SuppressedGraph {
  Multigraph graph;
  std::unordered_map<EdgeId, std::vector<EdgeId>> path_edges;
  std::unordered_map<EdgeId, std::vector<VertexId>> path_vertices;  // incl. endpoints
};

// Requires a connected graph that is not a cycle and has at least one edge
// or is a single vertex.
SuppressedGraph suppressed_graph(const Multigraph& g);

// A V'-bridge: interior vertices (possibly empty) plus all edges with at
// least one interior endpoint, or a single edge/loop spanned by V'.
struct Bridge {
  std::vector<VertexId> interior;  // ascending
  std::vector<EdgeId> edges;       // ascending
};

std::vector<Bridge> bridges(const Multigraph& g, const std::vector<VertexId>& cut);
// The bridge as an id-preserving subgraph (cut vertices included).
Multigraph bridge_subgraph(const Multigraph& g, const Bridge& b,
                           const std::vector<VertexId>& cut);
std::size_t bridge_degree(const Multigraph& g, const Bridge& b, VertexId v);
// deg_B(u), deg_B(v) in {1, deg(u)-1} x {1, deg(v)-1}.
bool is_separable_bridge(const Multigraph& g, const Bridge& b, VertexId u, VertexId v);

// ---- cuts (defined through the suppressed graph) ------------------------
// All three return empty sets for cycles and throw on disconnected input.

std::vector<VertexId> proper_cut_vertices(const Multigraph& g);
std::vector<std::pair<VertexId, VertexId>> proper_two_cuts(const Multigraph& g);
std::vector<std::pair<EdgeId, EdgeId>> proper_two_edge_cuts(const Multigraph& g);

// A minimal 2-edge-cut of g (not g-minus), oriented for Enclose: `outside`
// holds the endpoint of each cut edge on the kept side, the bridge is the
// {outside...}-bridge containing the other side. Candidates are ordered by
// (e, f) ascending.
struct TwoEdgeCutSide {
  EdgeId e, f;               // edges of g, terminal edges of suppressed paths
  VertexId outside_e, outside_f;
  Bridge enclosed;           // bridge of the outside vertices holding the rest
};
std::vector<TwoEdgeCutSide> two_edge_cut_sides(const Multigraph& g);

// ---- shape classification ------------------------------------------------

struct Shape {
  enum Kind { Cycle, PPath, PStar, Subdivided3Connected, Other } kind = Other;
  // PPath: the two poles (pole_a < pole_b); PStar: the center.
  VertexId pole_a, pole_b, center;
};

Shape classify_shape(const Multigraph& g);  // requires connected, nonempty
// Is g a p-path admitting v as a pole? (Cycles admit any vertex.)
bool is_ppath_with_pole(const Multigraph& g, VertexId v);
bool is_pstar_center(const Multigraph& g, VertexId v);

}  // namespace atomemb
